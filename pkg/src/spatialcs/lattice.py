"""Finite complete lattices with precomputed join/meet/implication tables.

Elements are opaque string identifiers; internally they become dense indices
0..n-1 in declaration order so that every binary operation is a table lookup.
A successfully built :class:`Lattice` is immutable and safe to share across
threads; failed builds return a :class:`ValidationReport` instead of a
partially initialised object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels
from .errors import FrameRequiredError, UnknownElementError

ElementRef = Union[int, str]


@dataclass(frozen=True)
class Violation:
    """One failed structural rule together with the elements that witness it."""

    rule: str
    witness: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{v.rule}: {', '.join(v.witness)}" for v in self.violations]
        return "; ".join(lines)


class Lattice:
    """Immutable finite lattice over named elements.

    ``leq_m[a, b]`` answers a below-or-equal b; ``join_m``/``meet_m`` hold the
    binary least upper / greatest lower bounds; ``impl_m`` holds Heyting
    implication and is present only when the lattice is distributive.
    """

    __slots__ = ("names", "_index", "leq_m", "join_m", "meet_m", "impl_m",
                 "bottom", "top", "distributive", "distributivity_witness",
                 "irreducibles", "irr_below", "covers", "heights")

    def __init__(self, names, leq_m, join_m, meet_m, impl_m, bottom, top,
                 distributive, distributivity_witness, irreducibles,
                 irr_below, covers, heights):
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}
        self.leq_m = leq_m
        self.join_m = join_m
        self.meet_m = meet_m
        self.impl_m = impl_m
        self.bottom = bottom
        self.top = top
        self.distributive = distributive
        self.distributivity_witness = distributivity_witness
        self.irreducibles = irreducibles
        self.irr_below = irr_below
        self.covers = covers
        self.heights = heights

    @property
    def n(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"Lattice({self.n} elements, bottom={self.names[self.bottom]!r}, top={self.names[self.top]!r})"

    def index(self, ref: ElementRef) -> int:
        """Dense index of an element given by name or index."""
        if isinstance(ref, str):
            try:
                return self._index[ref]
            except KeyError:
                raise UnknownElementError(ref) from None
        i = int(ref)
        if not 0 <= i < self.n:
            raise UnknownElementError(ref)
        return i

    def name(self, i: int) -> str:
        return self.names[i]

    def same_carrier(self, other: "Lattice") -> bool:
        return self is other or (self.names == other.names
                                 and np.array_equal(self.leq_m, other.leq_m))

    def downset(self, c: ElementRef) -> list[int]:
        """Every element below or equal to c, ascending by index."""
        return np.flatnonzero(self.leq_m[:, self.index(c)]).tolist()

    def upset(self, c: ElementRef) -> list[int]:
        return np.flatnonzero(self.leq_m[self.index(c), :]).tolist()


def leq(lattice: Lattice, a: ElementRef, b: ElementRef) -> bool:
    """Entailment order: True iff a is below or equal to b."""
    return bool(lattice.leq_m[lattice.index(a), lattice.index(b)])


def join(lattice: Lattice, elems: Iterable[ElementRef]) -> int:
    """Least upper bound of a finite set; the empty join is bottom."""
    acc = lattice.bottom
    jm = lattice.join_m
    for e in elems:
        acc = int(jm[acc, lattice.index(e)])
    return acc


def meet(lattice: Lattice, elems: Iterable[ElementRef]) -> int:
    """Greatest lower bound of a finite set; the empty meet is top."""
    acc = lattice.top
    mm = lattice.meet_m
    for e in elems:
        acc = int(mm[acc, lattice.index(e)])
    return acc


def is_distributive(lattice: Lattice) -> bool:
    """True iff joins distribute over meets for all triples.

    On failure, the offending triple is kept on ``lattice.distributivity_witness``.
    """
    return lattice.distributive


def heyting_implies(lattice: Lattice, c: ElementRef, d: ElementRef) -> int:
    """Weakest element whose join with c is above d. Needs distributivity."""
    if not lattice.distributive:
        raise FrameRequiredError(
            "Heyting implication needs a distributive lattice; "
            f"witness triple {lattice.distributivity_witness}")
    return int(lattice.impl_m[lattice.index(c), lattice.index(d)])


def _closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure (Warshall on boolean rows)."""
    n = adj.shape[0]
    closed = adj.copy()
    closed[np.diag_indices(n)] = True
    for k in range(n):
        closed |= closed[:, k:k + 1] & closed[k:k + 1, :]
    return closed


def _bound_tables(names, leq_m):
    """Binary lub/glb tables, or the violations that prevent them."""
    n = len(names)
    violations = []
    join_m = np.zeros((n, n), dtype=np.int32)
    meet_m = np.zeros((n, n), dtype=np.int32)
    row_id = {leq_m[i, :].tobytes(): i for i in range(n)}
    col_id = {leq_m[:, i].tobytes(): i for i in range(n)}

    def minimal_of(idxs):
        return [x for x in idxs if not any(leq_m[y, x] and y != x for y in idxs)]

    def maximal_of(idxs):
        return [x for x in idxs if not any(leq_m[x, y] and y != x for y in idxs)]

    for i in range(n):
        for j in range(i, n):
            above = leq_m[i, :] & leq_m[j, :]
            u = row_id.get(above.tobytes())
            if u is None:
                idxs = np.flatnonzero(above).tolist()
                if not idxs:
                    violations.append(Violation("no-upper-bound", (names[i], names[j])))
                else:
                    cands = minimal_of(idxs)
                    violations.append(Violation(
                        "ambiguous-lub",
                        (names[i], names[j]) + tuple(names[x] for x in cands)))
            else:
                join_m[i, j] = join_m[j, i] = u
            below = leq_m[:, i] & leq_m[:, j]
            l = col_id.get(below.tobytes())
            if l is None:
                idxs = np.flatnonzero(below).tolist()
                if not idxs:
                    violations.append(Violation("no-lower-bound", (names[i], names[j])))
                else:
                    cands = maximal_of(idxs)
                    violations.append(Violation(
                        "ambiguous-glb",
                        (names[i], names[j]) + tuple(names[x] for x in cands)))
            else:
                meet_m[i, j] = meet_m[j, i] = l
    return join_m, meet_m, violations


def build_lattice(elements: Sequence[str],
                  order_pairs: Iterable[Sequence[str]]) -> Lattice | ValidationReport:
    """Build a lattice from element names and generating order pairs.

    ``order_pairs`` lists (lower, upper) pairs; the builder takes the
    reflexive-transitive closure, so covering relations suffice. The result is
    a :class:`Lattice` when the closure is a partial order and every pair of
    elements has a unique least upper and greatest lower bound, otherwise a
    :class:`ValidationReport` describing every violated rule.
    """
    violations = []
    names = tuple(elements)
    if not names:
        return ValidationReport((Violation("empty-lattice", ()),))
    seen = set()
    for name in names:
        if name in seen:
            violations.append(Violation("duplicate-element", (name,)))
        seen.add(name)
    pairs = [tuple(p) for p in order_pairs]
    for a, b in pairs:
        for x in (a, b):
            if x not in seen:
                violations.append(Violation("unknown-element", (x,)))
    if violations:
        return ValidationReport(tuple(violations))

    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    adj = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        adj[index[a], index[b]] = True
    leq_m = _closure(adj)

    sym = leq_m & leq_m.T
    sym[np.diag_indices(n)] = False
    if sym.any():
        for i, j in zip(*np.where(sym)):
            if i < j:
                violations.append(Violation("antisymmetry", (names[i], names[j])))
        return ValidationReport(tuple(violations))

    join_m, meet_m, bound_violations = _bound_tables(names, leq_m)
    if bound_violations:
        return ValidationReport(tuple(bound_violations))

    bottom = int(np.flatnonzero(leq_m.all(axis=1))[0])
    top = int(np.flatnonzero(leq_m.all(axis=0))[0])

    lt = leq_m.copy()
    lt[np.diag_indices(n)] = False
    covers = lt & ~(lt @ lt)

    # join-irreducible: exactly one lower cover; listed in a linear extension
    # of the lattice order (ascending by downset size, then index)
    below_counts = leq_m.sum(axis=0)
    irr = [i for i in range(n) if covers[:, i].sum() == 1]
    irr.sort(key=lambda i: (int(below_counts[i]), i))
    irreducibles = tuple(irr)
    irr_below = tuple(
        tuple(p for p, j in enumerate(irreducibles) if leq_m[j, c])
        for c in range(n))

    heights = np.zeros(n, dtype=np.int32)
    for c in sorted(range(n), key=lambda i: int(below_counts[i])):
        lower = np.flatnonzero(covers[:, c])
        if lower.size:
            heights[c] = 1 + max(int(heights[x]) for x in lower)

    witness_idx = _kernels.distributivity_witness(join_m, meet_m)
    distributive = witness_idx is None
    witness = None if distributive else tuple(names[x] for x in witness_idx)
    impl_m = None
    if distributive:
        impl_m = _kernels.heyting_table(leq_m.view(np.uint8), join_m, meet_m, top)
        impl_m.flags.writeable = False

    for arr in (leq_m, join_m, meet_m, covers, heights):
        arr.flags.writeable = False
    return Lattice(names, leq_m, join_m, meet_m, impl_m, bottom, top,
                   distributive, witness, irreducibles, irr_below, covers,
                   heights)
