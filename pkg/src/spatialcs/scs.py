"""Space functions and spatial constraint systems.

A space function is a self-map on a lattice that fixes bottom and preserves
binary joins; on a finite lattice this forces monotonicity and continuity.
An :class:`SCS` bundles one validated space function per agent over a shared
lattice. Everything here is immutable after construction and safe for
concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (CarrierMismatchError, EnumerationCapError,
                     UnknownAgentError, UnknownElementError)
from .lattice import ElementRef, Lattice, ValidationReport, Violation

RawTable = Union[Sequence[ElementRef], Mapping[str, str]]


@dataclass(frozen=True)
class SpaceFunction:
    """A validated join-preserving self-map given by its full value table."""

    lattice: Lattice
    table: tuple[int, ...]

    def __call__(self, c: ElementRef) -> int:
        return self.table[self.lattice.index(c)]

    def as_dict(self) -> dict[str, str]:
        names = self.lattice.names
        return {names[i]: names[v] for i, v in enumerate(self.table)}


@dataclass(frozen=True)
class SCS:
    """A lattice together with an agent-indexed family of space functions."""

    lattice: Lattice
    agents: dict[str, SpaceFunction]

    @property
    def agent_ids(self) -> tuple[str, ...]:
        return tuple(self.agents)

    def space(self, agent: str) -> SpaceFunction:
        try:
            return self.agents[agent]
        except KeyError:
            raise UnknownAgentError(agent) from None


def _normalize_table(lattice: Lattice, raw: RawTable) -> tuple[int, ...]:
    """Coerce a raw mapping or sequence into a total index table."""
    n = lattice.n
    if isinstance(raw, Mapping):
        table = [-1] * n
        for src, dst in raw.items():
            table[lattice.index(src)] = lattice.index(dst)
        missing = [lattice.names[i] for i, v in enumerate(table) if v < 0]
        if missing:
            raise UnknownElementError(f"table is not total; missing {missing}")
        return tuple(table)
    vals = [lattice.index(v) for v in raw]
    if len(vals) != n:
        raise UnknownElementError(
            f"table has {len(vals)} entries for a {n}-element lattice")
    return tuple(vals)


def check_space_axioms(lattice: Lattice, raw_table: RawTable) -> ValidationReport:
    """Report every violation of bottom preservation (S.1) and binary-join
    preservation (S.2) in a candidate table.

    Checking binary joins suffices: every finite join is generated by the
    empty join (bottom) and binary ones.
    """
    table = _normalize_table(lattice, raw_table)
    names = lattice.names
    jm = lattice.join_m
    violations = []
    if table[lattice.bottom] != lattice.bottom:
        violations.append(Violation(
            "S.1", (names[lattice.bottom], names[table[lattice.bottom]])))
    n = lattice.n
    for c in range(n):
        for d in range(c + 1, n):
            got = table[jm[c, d]]
            want = jm[table[c], table[d]]
            if got != want:
                violations.append(Violation("S.2", (names[c], names[d])))
    return ValidationReport(tuple(violations))


def space_function(lattice: Lattice, raw_table: RawTable) -> SpaceFunction | ValidationReport:
    """Validate a raw table and wrap it as a :class:`SpaceFunction`."""
    report = check_space_axioms(lattice, raw_table)
    if not report.ok:
        return report
    return SpaceFunction(lattice, _normalize_table(lattice, raw_table))


def build_scs(lattice: Lattice,
              agent_tables: Mapping[str, RawTable]) -> SCS | ValidationReport:
    """Validate every agent table and assemble the constraint system.

    Violations are aggregated across agents, with the agent id prepended to
    each witness.
    """
    if not agent_tables:
        return ValidationReport((Violation("no-agents", ()),))
    violations = []
    functions = {}
    for agent, raw in agent_tables.items():
        report = check_space_axioms(lattice, raw)
        if report.ok:
            functions[agent] = SpaceFunction(lattice, _normalize_table(lattice, raw))
        else:
            violations.extend(
                Violation(v.rule, (agent,) + v.witness) for v in report.violations)
    if violations:
        return ValidationReport(tuple(violations))
    return SCS(lattice, functions)


def apply_space(scs: SCS, agent: str, c: ElementRef) -> int:
    """Value of agent's space function at c."""
    return scs.space(agent)(c)


def canonical_group(scs: SCS, group: Iterable[str], allow_empty: bool = True) -> tuple[str, ...]:
    """Sorted duplicate-free tuple of agent ids, validated against the scs."""
    members = sorted(set(group))
    for m in members:
        if m not in scs.agents:
            raise UnknownAgentError(m)
    if not members and not allow_empty:
        raise ValueError("group must not be empty")
    return tuple(members)


def _require_same_carrier(f: SpaceFunction, g: SpaceFunction) -> None:
    if not f.lattice.same_carrier(g.lattice):
        raise CarrierMismatchError("functions live over different lattices")


def fn_leq(f: SpaceFunction, g: SpaceFunction) -> bool:
    """Pointwise order on space functions: f below g at every element."""
    _require_same_carrier(f, g)
    lm = f.lattice.leq_m
    return all(lm[a, b] for a, b in zip(f.table, g.table))


def fn_join(f: SpaceFunction, g: SpaceFunction) -> SpaceFunction:
    """Pointwise join; the result is again a space function."""
    _require_same_carrier(f, g)
    jm = f.lattice.join_m
    return SpaceFunction(f.lattice,
                         tuple(int(jm[a, b]) for a, b in zip(f.table, g.table)))


def lambda_bot(lattice: Lattice) -> SpaceFunction:
    """The constant-bottom map: the largest space, holding no information."""
    return SpaceFunction(lattice, (lattice.bottom,) * lattice.n)


def lambda_top(lattice: Lattice) -> SpaceFunction:
    """The empty space: bottom at bottom, top everywhere else."""
    table = tuple(lattice.bottom if c == lattice.bottom else lattice.top
                  for c in range(lattice.n))
    return SpaceFunction(lattice, table)


def _monotone_irr_assignments(lattice: Lattice,
                              bounds: Sequence[int] | None) -> Iterator[list[int]]:
    """Yield monotone assignments of images to the join-irreducibles.

    ``bounds[p]`` caps the image of irreducible position p from above; None
    means no cap. Assignments are yielded in lexicographic candidate order.
    """
    irr = lattice.irreducibles
    k = len(irr)
    lm = lattice.leq_m
    jm = lattice.join_m
    prev_below = [
        [q for q in range(p) if lm[irr[q], irr[p]]] for p in range(k)]
    cands = []
    for p in range(k):
        if bounds is None:
            cands.append(list(range(lattice.n)))
        else:
            cands.append([x for x in range(lattice.n) if lm[x, bounds[p]]])
    g = [0] * k

    def rec(p):
        if p == k:
            yield g
            return
        lb = lattice.bottom
        for q in prev_below[p]:
            lb = jm[lb, g[q]]
        for x in cands[p]:
            if lm[lb, x]:
                g[p] = x
                yield from rec(p + 1)

    yield from rec(0)


def _complete_from_irreducibles(lattice: Lattice, g: Sequence[int]) -> tuple[int, ...]:
    """Extend irreducible images to a full table by joining below each element."""
    jm = lattice.join_m
    out = []
    for c in range(lattice.n):
        v = lattice.bottom
        for p in lattice.irr_below[c]:
            v = jm[v, g[p]]
        out.append(int(v))
    return tuple(out)


def enumerate_space_functions(lattice: Lattice,
                              max_irreducibles: int = 10,
                              max_assignments: int = 4_000_000) -> Iterator[SpaceFunction]:
    """Yield every space function on the lattice.

    A space function is determined by its images on the join-irreducibles, so
    the walk assigns those monotonically and completes by joins; on
    non-distributive lattices each completion is additionally checked for
    binary-join preservation. Guarded because the count can be factorial in
    the lattice size.
    """
    k = len(lattice.irreducibles)
    if k > max_irreducibles:
        raise EnumerationCapError(
            f"{k} join-irreducibles exceed the cap of {max_irreducibles}")
    if lattice.n ** k > max_assignments:
        raise EnumerationCapError(
            f"{lattice.n}^{k} candidate assignments exceed the cap of {max_assignments}")
    if k == 0:
        yield SpaceFunction(lattice, (lattice.bottom,) * lattice.n)
        return
    jm = lattice.join_m
    for g in _monotone_irr_assignments(lattice, None):
        table = _complete_from_irreducibles(lattice, g)
        if not lattice.distributive:
            ok = True
            for c in range(lattice.n):
                for d in range(c + 1, lattice.n):
                    if table[jm[c, d]] != jm[table[c], table[d]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
        yield SpaceFunction(lattice, table)
