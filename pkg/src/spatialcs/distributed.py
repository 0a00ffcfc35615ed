"""Distributed spaces of agent groups, their projections, and witnesses.

The distributed space of a group is the greatest space function sitting
pointwise below every member's space function, i.e. the meet of the group in
the (complete) lattice of space functions. Two routes compute it:

* a brute-force oracle that enumerates candidate space functions and joins
  the ones below every agent pointwise, valid on any finite lattice; and
* three divide-and-conquer recursions over a halving of the group, valid on
  distributive lattices, that meet-fold combinations of the two halves over
  variant-specific candidate sets.

The oracle is the ground truth the recursions are tested against; the
recursions are polynomial in the lattice size where the oracle is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .errors import EnumerationCapError, FrameRequiredError
from .lattice import ElementRef, Lattice
from .scs import (SCS, SpaceFunction, canonical_group, lambda_top)

OP_KEYS = ("joins", "meets", "implications", "recursive_calls", "meet_candidates")


@dataclass(frozen=True)
class DeltaResult:
    """A fully tabulated distributed-space function plus computation tallies."""

    group: tuple[str, ...]
    function: SpaceFunction
    algorithm: str
    op_counts: dict[str, int]

    @property
    def table(self) -> tuple[int, ...]:
        return self.function.table


def _fresh_counts(**extra) -> dict[str, int]:
    counts = {key: 0 for key in OP_KEYS}
    counts.update(extra)
    return counts


def delta_empty(scs: SCS) -> SpaceFunction:
    """Distributed space of the empty group: the empty (top) space."""
    return lambda_top(scs.lattice)


def _oracle_inputs(scs: SCS, members, max_irreducibles, max_assignments):
    lattice = scs.lattice
    irr = lattice.irreducibles
    k = len(irr)
    if k > max_irreducibles:
        raise EnumerationCapError(
            f"{k} join-irreducibles exceed the cap of {max_irreducibles}")
    lm = lattice.leq_m
    mm = lattice.meet_m
    tables = [scs.agents[a].table for a in members]
    bounds = []
    for j in irr:
        b = lattice.top
        for table in tables:
            b = int(mm[b, table[j]])
        bounds.append(b)
    cands = [np.flatnonzero(lm[:, b]).tolist() for b in bounds]
    size = 1
    for c in cands:
        size *= len(c)
        if size > max_assignments:
            raise EnumerationCapError(
                f"candidate assignments exceed the cap of {max_assignments}")
    prev_below = [[q for q in range(p) if lm[irr[q], irr[p]]] for p in range(k)]
    return list(irr), prev_below, cands


def delta_oracle(scs: SCS, group: Iterable[str],
                 max_irreducibles: int = 10,
                 max_assignments: int = 4_000_000) -> DeltaResult:
    """Brute-force distributed space: join of every space function below the
    group's agents pointwise.

    Candidate functions are generated from images of the join-irreducibles
    (every other image is forced by join preservation); an image at an
    irreducible never exceeds the meet of the agent values there, which prunes
    the walk without changing the enumerated set. Works on non-distributive
    lattices too, where each completion is checked for join preservation.
    """
    members = canonical_group(scs, group, allow_empty=False)
    lattice = scs.lattice
    order, prev_below, cands = _oracle_inputs(
        scs, members, max_irreducibles, max_assignments)
    elem_irr = [list(ps) for ps in lattice.irr_below]
    acc, enumerated, kept, capped = _kernels.oracle_scan(
        lattice.join_m, lattice.leq_m, lattice.bottom,
        order, prev_below, cands, elem_irr,
        not lattice.distributive, True, max_assignments)
    if capped:
        raise EnumerationCapError(
            f"enumeration exceeded the cap of {max_assignments}")
    counts = _fresh_counts(functions_enumerated=int(enumerated),
                           functions_kept=int(kept))
    counts["joins"] = lattice.n * int(kept)
    table = tuple(int(x) for x in acc)
    return DeltaResult(members, SpaceFunction(lattice, table), "oracle", counts)


def _require_frame(lattice: Lattice) -> None:
    if not lattice.distributive:
        raise FrameRequiredError(
            "the divide-and-conquer algorithms need a distributive lattice "
            f"(witness triple {lattice.distributivity_witness}); use the oracle")


def delta_part(scs: SCS, group: Iterable[str], c: ElementRef,
               variant: int = 3) -> int:
    """Distributed-space value at a single element via the chosen recursion.

    The group is split into halves (the first half holds floor(m/2) members
    of the canonically sorted group) and the two sub-results are combined over
    the variant's candidate set:

    * variant 1 meets joins over all pairs (a, b) whose join is above c,
    * variant 2 meets joins of a and (a implies c) over every a,
    * variant 3 restricts variant 2 to a below c.

    Evaluations are memoized per (group slice, element).
    """
    if variant not in (1, 2, 3):
        raise ValueError(f"variant must be 1, 2, or 3, not {variant!r}")
    members = canonical_group(scs, group, allow_empty=False)
    lattice = scs.lattice
    _require_frame(lattice)
    value, _ = _part_eval(scs, members, lattice.index(c), variant)
    return value


def _part_eval(scs, members, c, variant):
    """Lazy memoized recursion; returns (value, op_counts)."""
    lattice = scs.lattice
    n = lattice.n
    jm = lattice.join_m
    mm = lattice.meet_m
    im = lattice.impl_m
    lm = lattice.leq_m
    tables = [scs.agents[a].table for a in members]
    counts = _fresh_counts()
    memo: dict[tuple[int, int, int], int] = {}

    def eval_slice(lo, hi, elem):
        key = (lo, hi, elem)
        hit = memo.get(key)
        if hit is not None:
            return hit
        counts["recursive_calls"] += 1
        if hi - lo == 1:
            value = tables[lo][elem]
        else:
            mid = lo + (hi - lo) // 2
            acc = lattice.top
            if variant == 1:
                for a in range(n):
                    for b in range(n):
                        if lm[elem, jm[a, b]]:
                            term = jm[eval_slice(lo, mid, a), eval_slice(mid, hi, b)]
                            acc = mm[acc, term]
                            counts["joins"] += 1
                            counts["meets"] += 1
                            counts["meet_candidates"] += 1
            elif variant == 2:
                for a in range(n):
                    term = jm[eval_slice(lo, mid, a),
                              eval_slice(mid, hi, im[a, elem])]
                    acc = mm[acc, term]
                    counts["joins"] += 1
                    counts["meets"] += 1
                    counts["implications"] += 1
                    counts["meet_candidates"] += 1
            else:
                for a in range(n):
                    if lm[a, elem]:
                        term = jm[eval_slice(lo, mid, a),
                                  eval_slice(mid, hi, im[a, elem])]
                        acc = mm[acc, term]
                        counts["joins"] += 1
                        counts["meets"] += 1
                        counts["implications"] += 1
                        counts["meet_candidates"] += 1
            value = int(acc)
        memo[key] = int(value)
        return int(value)

    return eval_slice(0, len(members), c), counts


def delta_table(scs: SCS, group: Iterable[str], variant: int = 3) -> DeltaResult:
    """Full distributed-space table via the chosen recursion.

    Sub-tables are computed bottom-up over the halving tree of the sorted
    group, so each (group slice, element) pair is evaluated exactly once —
    the table analogue of the memoized single-element recursion.
    """
    if variant not in (1, 2, 3):
        raise ValueError(f"variant must be 1, 2, or 3, not {variant!r}")
    members = canonical_group(scs, group, allow_empty=False)
    lattice = scs.lattice
    _require_frame(lattice)
    n = lattice.n
    counts = _fresh_counts()

    def slice_table(lo, hi):
        counts["recursive_calls"] += n
        if hi - lo == 1:
            return np.asarray(scs.agents[members[lo]].table, dtype=np.int32)
        mid = lo + (hi - lo) // 2
        tab_j = slice_table(lo, mid)
        tab_k = slice_table(mid, hi)
        out, joins, meets, impls, cand = _kernels.delta_combine(
            tab_j, tab_k, lattice.join_m, lattice.meet_m, lattice.impl_m,
            lattice.leq_m, variant, lattice.top)
        counts["joins"] += int(joins)
        counts["meets"] += int(meets)
        counts["implications"] += int(impls)
        counts["meet_candidates"] += int(cand)
        return out

    table = tuple(int(x) for x in slice_table(0, len(members)))
    return DeltaResult(members, SpaceFunction(lattice, table),
                       f"part{variant}", counts)


def delta_function(scs: SCS, group: Iterable[str],
                   max_irreducibles: int = 10,
                   max_assignments: int = 4_000_000) -> SpaceFunction:
    """Distributed space by the best applicable route: the empty group gets
    the top space, distributive lattices the variant-3 recursion, anything
    else the oracle."""
    members = canonical_group(scs, group)
    if not members:
        return delta_empty(scs)
    if scs.lattice.distributive:
        return delta_table(scs, members, variant=3).function
    return delta_oracle(scs, members, max_irreducibles, max_assignments).function


def agent_projection(scs: SCS, agent: str, c: ElementRef) -> int:
    """Join of everything the agent's space maps below c: the information the
    agent holds in c."""
    lattice = scs.lattice
    ci = lattice.index(c)
    lm = lattice.leq_m
    jm = lattice.join_m
    table = scs.space(agent).table
    acc = lattice.bottom
    for e in range(lattice.n):
        if lm[table[e], ci]:
            acc = int(jm[acc, e])
    return acc


def join_projection(scs: SCS, group: Iterable[str], c: ElementRef) -> int:
    """Join of the members' agent projections; bottom for the empty group."""
    members = canonical_group(scs, group)
    lattice = scs.lattice
    jm = lattice.join_m
    acc = lattice.bottom
    for agent in members:
        acc = int(jm[acc, agent_projection(scs, agent, c)])
    return acc


def group_projection(scs: SCS, group: Iterable[str], c: ElementRef,
                     delta_source: Optional[DeltaResult] = None) -> int:
    """Join of everything the group's distributed space maps below c.

    Forms a Galois connection with the distributed space: the distributed
    value of e sits below c exactly when e sits below this projection of c.
    """
    members = canonical_group(scs, group)
    lattice = scs.lattice
    if delta_source is not None:
        if delta_source.group != members:
            raise ValueError(
                f"delta source is for group {delta_source.group}, not {members}")
        table = delta_source.table
    else:
        table = delta_function(scs, members).table
    ci = lattice.index(c)
    lm = lattice.leq_m
    jm = lattice.join_m
    acc = lattice.bottom
    for e in range(lattice.n):
        if lm[table[e], ci]:
            acc = int(jm[acc, e])
    return acc


def finite_witness(scs: SCS, group: Iterable[str], c: ElementRef,
                   e: ElementRef) -> Optional[tuple[str, ...]]:
    """Smallest subgroup whose distributed space still derives e from c.

    Subsets are searched in increasing cardinality, lexicographically within
    a size, so the returned witness is deterministic. Returns None when even
    the full group fails (then no subgroup can succeed, by anti-monotonicity
    of distributed spaces in the group).
    """
    members = canonical_group(scs, group)
    lattice = scs.lattice
    ci = lattice.index(c)
    ei = lattice.index(e)
    lm = lattice.leq_m

    cache: dict[tuple[str, ...], tuple[int, ...]] = {}

    def table_for(subset):
        hit = cache.get(subset)
        if hit is None:
            hit = delta_function(scs, subset).table
            cache[subset] = hit
        return hit

    if not lm[table_for(members)[ei], ci]:
        return None
    for size in range(len(members) + 1):
        for subset in combinations(members, size):
            if lm[table_for(subset)[ei], ci]:
                return subset
    return members  # unreachable: the full group qualified above


def count_space_functions(lattice: Lattice,
                          max_irreducibles: int = 10,
                          max_assignments: int = 4_000_000) -> int:
    """Exact number of space functions on the lattice, by enumerating images
    of the join-irreducibles (guarded: the count can be factorial)."""
    irr = lattice.irreducibles
    k = len(irr)
    if k > max_irreducibles:
        raise EnumerationCapError(
            f"{k} join-irreducibles exceed the cap of {max_irreducibles}")
    if lattice.n ** k > max_assignments:
        raise EnumerationCapError(
            f"{lattice.n}^{k} candidate assignments exceed the cap of {max_assignments}")
    lm = lattice.leq_m
    cands = [list(range(lattice.n))] * k
    prev_below = [[q for q in range(p) if lm[irr[q], irr[p]]] for p in range(k)]
    elem_irr = [list(ps) for ps in lattice.irr_below]
    _, _, kept, capped = _kernels.oracle_scan(
        lattice.join_m, lattice.leq_m, lattice.bottom,
        list(irr), prev_below, cands, elem_irr,
        not lattice.distributive, False, max_assignments)
    if capped:
        raise EnumerationCapError(
            f"enumeration exceeded the cap of {max_assignments}")
    return int(kept)
