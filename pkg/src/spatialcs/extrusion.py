"""Extrusion functions: right inverses of space functions.

A space function admits a right inverse exactly when it is surjective. Two
canonical constructions exist: the join of each preimage (which preserves
meets) and, when the space function itself preserves meets, the meet of each
preimage (which preserves joins). Extrusion functions are deliberately not
required to be space functions themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (ExtrusionLawError, NotMeetPreservingError,
                     NotSurjectiveError)
from .lattice import ElementRef
from .scs import SCS, SpaceFunction, _normalize_table


@dataclass(frozen=True)
class ExtrusionFunction:
    """A verified right inverse of a specific space function."""

    space: SpaceFunction
    table: tuple[int, ...]
    method: str  # sup_preimage | inf_preimage | external

    @property
    def lattice(self):
        return self.space.lattice

    def __call__(self, c: ElementRef) -> int:
        return self.table[self.lattice.index(c)]

    def as_dict(self) -> dict[str, str]:
        names = self.lattice.names
        return {names[i]: names[v] for i, v in enumerate(self.table)}


def is_surjective(f: SpaceFunction) -> tuple[bool, Optional[int]]:
    """Whether every element has a preimage; returns one unreached element
    otherwise."""
    reached = set(f.table)
    for c in range(f.lattice.n):
        if c not in reached:
            return False, c
    return True, None


def has_right_inverse_precheck(f: SpaceFunction) -> bool:
    """Cheap necessary condition: a map that does not fix top has no right
    inverse. Passing says nothing — surjectivity is the full criterion."""
    return f.table[f.lattice.top] == f.lattice.top


def preserves_meets(f: SpaceFunction) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether f preserves binary meets and top (the empty meet).

    The witness is the offending pair, or the empty tuple when top itself is
    moved.
    """
    lattice = f.lattice
    if f.table[lattice.top] != lattice.top:
        return False, ()
    mm = lattice.meet_m
    table = f.table
    for a in range(lattice.n):
        for b in range(a + 1, lattice.n):
            if table[mm[a, b]] != mm[table[a], table[b]]:
                return False, (a, b)
    return True, None


def _verify_right_inverse(f: SpaceFunction, table: Sequence[int]) -> None:
    for c in range(f.lattice.n):
        if f.table[table[c]] != c:
            raise ExtrusionLawError(f.lattice.names[c])


def extrusion_sup(f: SpaceFunction) -> ExtrusionFunction:
    """Right inverse mapping each element to the join of its preimage.

    Needs surjectivity; the result preserves binary meets and top, which is
    re-checked along with the right-inverse law itself.
    """
    lattice = f.lattice
    ok, missing = is_surjective(f)
    if not ok:
        raise NotSurjectiveError(lattice.names[missing])
    jm = lattice.join_m
    table = []
    for c in range(lattice.n):
        acc = lattice.bottom
        for e in range(lattice.n):
            if f.table[e] == c:
                acc = int(jm[acc, e])
        table.append(acc)
    _verify_right_inverse(f, table)
    ext = ExtrusionFunction(f, tuple(table), "sup_preimage")
    ok, witness = preserves_meets(SpaceFunction(lattice, ext.table))
    if not ok:
        raise AssertionError(f"sup-preimage inverse lost meet preservation at {witness}")
    return ext


def extrusion_inf(f: SpaceFunction) -> ExtrusionFunction:
    """Right inverse mapping each element to the meet of its preimage.

    Needs surjectivity and meet preservation of f; the result preserves
    binary joins and bottom, which is re-checked along with the right-inverse
    law itself.
    """
    lattice = f.lattice
    ok, missing = is_surjective(f)
    if not ok:
        raise NotSurjectiveError(lattice.names[missing])
    ok, witness = preserves_meets(f)
    if not ok:
        raise NotMeetPreservingError(
            tuple(lattice.names[x] for x in witness) if witness else "top")
    mm = lattice.meet_m
    table = []
    for c in range(lattice.n):
        acc = lattice.top
        for e in range(lattice.n):
            if f.table[e] == c:
                acc = int(mm[acc, e])
        table.append(acc)
    _verify_right_inverse(f, table)
    jm = lattice.join_m
    if table[lattice.bottom] != lattice.bottom:
        raise AssertionError("inf-preimage inverse moved bottom")
    for a in range(lattice.n):
        for b in range(a + 1, lattice.n):
            if table[jm[a, b]] != jm[table[a], table[b]]:
                raise AssertionError(
                    f"inf-preimage inverse lost join preservation at ({a}, {b})")
    return ExtrusionFunction(f, tuple(table), "inf_preimage")


def external_extrusion(f: SpaceFunction, raw_table) -> ExtrusionFunction:
    """Wrap a user-supplied table as an extrusion function, verifying only the
    right-inverse law (arbitrary preimage choices are legitimate)."""
    table = _normalize_table(f.lattice, raw_table)
    _verify_right_inverse(f, table)
    return ExtrusionFunction(f, table, "external")


def verify_extrusion_law(scs: SCS, agent: str, ext: ExtrusionFunction,
                         c: ElementRef, d: ElementRef) -> bool:
    """Check the interaction law at one point: placing d via extrusion inside
    agent's space alongside c equals the agent's view of c joined with d."""
    f = scs.space(agent)
    if ext.space != f:
        raise ExtrusionLawError(
            f"extrusion was derived for a different map than agent {agent!r}")
    lattice = scs.lattice
    jm = lattice.join_m
    ci = lattice.index(c)
    di = lattice.index(d)
    lhs = f.table[jm[ci, ext.table[di]]]
    rhs = int(jm[f.table[ci], di])
    return lhs == rhs
