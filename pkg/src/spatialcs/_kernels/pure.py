"""Pure-Python kernels.

These are the reference implementations of the hot inner loops. The compiled
twin in ``_fastcore.pyx`` must match them exactly, including every operation
count, so that results and reported tallies do not depend on which backend
happens to be importable. ``tests/test_backends.py`` enforces the equivalence.

All tables are dense: ``leq`` is an (n, n) uint8/bool matrix with
``leq[a][b] == 1`` iff a is below b, and ``join``/``meet``/``impl`` are
(n, n) int32 matrices of element indices.
"""

from __future__ import annotations

import numpy as np

NAME = "pure"


def heyting_table(leq, join, meet, top):
    """Full implication table: out[c][d] = meet of {e | c join e is above d}."""
    n = join.shape[0]
    lq = leq.tolist()
    jn = join.tolist()
    mt = meet.tolist()
    out = [[0] * n for _ in range(n)]
    for c in range(n):
        jc = jn[c]
        row = out[c]
        for d in range(n):
            above_d = lq[d]
            acc = top
            for e in range(n):
                if above_d[jc[e]]:
                    acc = mt[acc][e]
            row[d] = acc
    return np.array(out, dtype=np.int32)


def distributivity_witness(join, meet):
    """First triple (a, b, c) violating a join (b meet c) == (a join b) meet (a join c)."""
    jn = join.tolist()
    mt = meet.tolist()
    n = len(jn)
    for a in range(n):
        ja = jn[a]
        for b in range(n):
            mb = mt[b]
            jab = ja[b]
            for c in range(n):
                if ja[mb[c]] != mt[jab][ja[c]]:
                    return (a, b, c)
    return None


def oracle_scan(join, leq, bottom, order, prev_below, cands, elem_irr,
                check_s2, accumulate, leaf_cap):
    """Enumerate join-preserving self-maps from images of join-irreducibles.

    ``order`` lists the irreducible elements in some linear extension of the
    lattice order; ``prev_below[p]`` holds the earlier positions whose
    irreducible sits below ``order[p]``; ``cands[p]`` is the allowed image set
    for position p (always containing bottom); ``elem_irr[c]`` lists the
    positions of the irreducibles below element c.

    Each monotone assignment over the irreducibles is completed to a full
    table by joining, then optionally checked against the binary-join axiom
    (needed only on non-distributive lattices). Kept tables are folded into a
    pointwise-join accumulator when ``accumulate`` is set.

    Returns ``(acc_or_None, enumerated, kept, capped)``.
    """
    n = join.shape[0]
    k = len(order)
    jn = join.tolist()
    lq = leq.tolist()
    g = [0] * k
    f = [0] * n
    acc = [bottom] * n if accumulate else None
    enumerated = 0
    kept = 0
    capped = False

    def take_leaf():
        nonlocal kept
        for c in range(n):
            v = bottom
            for p in elem_irr[c]:
                v = jn[v][g[p]]
            f[c] = v
        if check_s2:
            for c in range(n):
                fc = f[c]
                jc = jn[c]
                jfc = jn[fc]
                for d in range(c + 1, n):
                    if f[jc[d]] != jfc[f[d]]:
                        return
        kept += 1
        if accumulate:
            for c in range(n):
                acc[c] = jn[acc[c]][f[c]]

    def rec(p):
        nonlocal enumerated, capped
        if p == k:
            enumerated += 1
            if leaf_cap and enumerated > leaf_cap:
                capped = True
                return
            take_leaf()
            return
        lb = bottom
        for q in prev_below[p]:
            lb = jn[lb][g[q]]
        above_lb = lq[lb]
        for x in cands[p]:
            if above_lb[x]:
                g[p] = x
                rec(p + 1)
                if capped:
                    return

    if k == 0:
        # No irreducibles only happens on the one-point lattice.
        enumerated = 1
        kept = 1
        if accumulate:
            acc = [bottom] * n
    else:
        rec(0)

    acc_arr = np.array(acc, dtype=np.int32) if accumulate and not capped else None
    return acc_arr, enumerated, kept, capped


def delta_combine(tab_j, tab_k, join, meet, impl, leq, variant, top):
    """One divide-and-conquer combination step for the group-space recursion.

    Produces the combined table at every element, scanning the candidate set
    of the requested variant and meet-folding the terms. Returns
    ``(table, joins, meets, implications, candidates)``.
    """
    n = join.shape[0]
    jn = join.tolist()
    mt = meet.tolist()
    lq = leq.tolist()
    im = impl.tolist() if impl is not None else None
    tj = [int(x) for x in tab_j]
    tk = [int(x) for x in tab_k]
    out = [0] * n
    joins = meets = impls = cand = 0
    for c in range(n):
        acc = top
        if variant == 1:
            above_c_of = lq[c]
            for a in range(n):
                ja = jn[a]
                tja = tj[a]
                for b in range(n):
                    if above_c_of[ja[b]]:
                        term = jn[tja][tk[b]]
                        acc = mt[acc][term]
                        joins += 1
                        meets += 1
                        cand += 1
        elif variant == 2:
            for a in range(n):
                term = jn[tj[a]][tk[im[a][c]]]
                acc = mt[acc][term]
                joins += 1
                meets += 1
                impls += 1
                cand += 1
        else:
            for a in range(n):
                if lq[a][c]:
                    term = jn[tj[a]][tk[im[a][c]]]
                    acc = mt[acc][term]
                    joins += 1
                    meets += 1
                    impls += 1
                    cand += 1
        out[c] = acc
    return np.array(out, dtype=np.int32), joins, meets, impls, cand
