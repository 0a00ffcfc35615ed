# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels.

Semantics and operation counts must match the pure-Python twin in ``pure.py``
exactly; see that module for the contract and ``tests/test_backends.py`` for
the enforcement. Ragged inputs arrive flattened (values + offsets) — the
dispatcher in ``__init__.py`` does the flattening.
"""

import numpy as np

NAME = "compiled"


def heyting_table(object leq_arr, object join_arr, object meet_arr, int top):
    cdef const unsigned char[:, ::1] leq = leq_arr
    cdef const int[:, ::1] join = join_arr
    cdef const int[:, ::1] meet = meet_arr
    cdef int n = join.shape[0]
    out_arr = np.zeros((n, n), dtype=np.int32)
    cdef int[:, ::1] out = out_arr
    cdef int c, d, e, acc
    for c in range(n):
        for d in range(n):
            acc = top
            for e in range(n):
                if leq[d, join[c, e]]:
                    acc = meet[acc, e]
            out[c, d] = acc
    return out_arr


def distributivity_witness(object join_arr, object meet_arr):
    cdef const int[:, ::1] join = join_arr
    cdef const int[:, ::1] meet = meet_arr
    cdef int n = join.shape[0]
    cdef int a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if join[a, meet[b, c]] != meet[join[a, b], join[a, c]]:
                    return (a, b, c)
    return None


def oracle_scan(object join_arr, object leq_arr, int bottom,
                object order_arr,
                object pb_flat_arr, object pb_off_arr,
                object cand_flat_arr, object cand_off_arr,
                object ei_flat_arr, object ei_off_arr,
                bint check_s2, bint accumulate, long long leaf_cap):
    cdef const int[:, ::1] join = join_arr
    cdef const unsigned char[:, ::1] leq = leq_arr
    cdef const int[::1] order = order_arr
    cdef const int[::1] pb_flat = pb_flat_arr
    cdef const int[::1] pb_off = pb_off_arr
    cdef const int[::1] cand_flat = cand_flat_arr
    cdef const int[::1] cand_off = cand_off_arr
    cdef const int[::1] ei_flat = ei_flat_arr
    cdef const int[::1] ei_off = ei_off_arr

    cdef int n = join.shape[0]
    cdef int k = order.shape[0]
    cdef long long enumerated = 0, kept = 0
    cdef bint capped = False

    if k == 0:
        if accumulate:
            return np.full(n, bottom, dtype=np.int32), 1, 1, False
        return None, 1, 1, False

    g_arr = np.zeros(k, dtype=np.int32)
    it_arr = np.zeros(k, dtype=np.int32)
    lb_arr = np.zeros(k, dtype=np.int32)
    f_arr = np.zeros(n, dtype=np.int32)
    acc_arr = np.full(n, bottom, dtype=np.int32)
    cdef int[::1] g = g_arr
    cdef int[::1] it = it_arr
    cdef int[::1] lb = lb_arr
    cdef int[::1] f = f_arr
    cdef int[::1] acc = acc_arr

    cdef int pos = 0, x, c, d, v, t, fc, ok
    it[0] = cand_off[0] - 1
    lb[0] = bottom

    while pos >= 0:
        it[pos] += 1
        if it[pos] >= cand_off[pos + 1]:
            pos -= 1
            continue
        x = cand_flat[it[pos]]
        if not leq[lb[pos], x]:
            continue
        g[pos] = x
        if pos == k - 1:
            enumerated += 1
            if leaf_cap and enumerated > leaf_cap:
                capped = True
                break
            # complete the assignment to a full table
            for c in range(n):
                v = bottom
                for t in range(ei_off[c], ei_off[c + 1]):
                    v = join[v, g[ei_flat[t]]]
                f[c] = v
            ok = 1
            if check_s2:
                for c in range(n):
                    fc = f[c]
                    for d in range(c + 1, n):
                        if f[join[c, d]] != join[fc, f[d]]:
                            ok = 0
                            break
                    if not ok:
                        break
            if ok:
                kept += 1
                if accumulate:
                    for c in range(n):
                        acc[c] = join[acc[c], f[c]]
            continue
        pos += 1
        v = bottom
        for t in range(pb_off[pos], pb_off[pos + 1]):
            v = join[v, g[pb_flat[t]]]
        lb[pos] = v
        it[pos] = cand_off[pos] - 1

    if accumulate and not capped:
        return acc_arr, enumerated, kept, capped
    return None, enumerated, kept, capped


def delta_combine(object tab_j_arr, object tab_k_arr, object join_arr,
                  object meet_arr, object impl_arr, object leq_arr,
                  int variant, int top):
    cdef const int[::1] tj = tab_j_arr
    cdef const int[::1] tk = tab_k_arr
    cdef const int[:, ::1] join = join_arr
    cdef const int[:, ::1] meet = meet_arr
    cdef const int[:, ::1] impl = impl_arr
    cdef const unsigned char[:, ::1] leq = leq_arr
    cdef int n = join.shape[0]
    out_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef long long joins = 0, meets = 0, impls = 0, cand = 0
    cdef int c, a, b, acc, term
    for c in range(n):
        acc = top
        if variant == 1:
            for a in range(n):
                for b in range(n):
                    if leq[c, join[a, b]]:
                        term = join[tj[a], tk[b]]
                        acc = meet[acc, term]
                        joins += 1
                        meets += 1
                        cand += 1
        elif variant == 2:
            for a in range(n):
                term = join[tj[a], tk[impl[a, c]]]
                acc = meet[acc, term]
                joins += 1
                meets += 1
                impls += 1
                cand += 1
        else:
            for a in range(n):
                if leq[a, c]:
                    term = join[tj[a], tk[impl[a, c]]]
                    acc = meet[acc, term]
                    joins += 1
                    meets += 1
                    impls += 1
                    cand += 1
        out[c] = acc
    return out_arr, joins, meets, impls, cand
