"""Canonical example systems: the four-element diamond with its two agents,
powerset lattices, the non-distributive five-element witnesses, and event
lattices compiled from partition-based knowledge models."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .lattice import Lattice, build_lattice
from .scs import SCS, build_scs


def _must(built):
    if not isinstance(built, (Lattice, SCS)):
        raise AssertionError(f"builtin instance failed validation: {built.summary()}")
    return built


def m2_scs() -> SCS:
    """The running four-element diamond: two incomparable middle elements,
    agent 1 swapping them and agent 2 collapsing one into top."""
    lattice = _must(build_lattice(
        ["bot", "p", "np", "top"],
        [("bot", "p"), ("bot", "np"), ("p", "top"), ("np", "top")]))
    return _must(build_scs(lattice, {
        "1": {"bot": "bot", "p": "np", "np": "p", "top": "top"},
        "2": {"bot": "bot", "p": "top", "np": "np", "top": "top"},
    }))


def subset_name(items: Iterable[str]) -> str:
    return "{" + ",".join(items) + "}"


def powerset_lattice(k: int) -> Lattice:
    """Subsets of {1..k} ordered by inclusion; join is union. Distributive."""
    if not 0 <= k <= 6:
        raise ValueError(f"k must be between 0 and 6, not {k}")
    ground = [str(i) for i in range(1, k + 1)]
    subsets = []
    for size in range(k + 1):
        subsets.extend(combinations(ground, size))
    names = [subset_name(s) for s in subsets]
    pairs = []
    for s in subsets:
        rest = [g for g in ground if g not in s]
        for extra in rest:
            bigger = tuple(sorted(s + (extra,), key=ground.index))
            pairs.append((subset_name(s), subset_name(bigger)))
    return _must(build_lattice(names, pairs))


def m3_lattice() -> Lattice:
    """Five-element diamond with three incomparable atoms; not distributive."""
    return _must(build_lattice(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"),
         ("a", "top"), ("b", "top"), ("c", "top")]))


def n5_lattice() -> Lattice:
    """Five-element pentagon; the other minimal non-distributive lattice."""
    return _must(build_lattice(
        ["bot", "a", "c", "b", "top"],
        [("bot", "a"), ("a", "c"), ("c", "top"), ("bot", "b"), ("b", "top")]))


@dataclass(frozen=True)
class AumannModel:
    """Finite state set with one information partition per agent."""

    states: tuple[str, ...]
    partitions: dict[str, tuple[frozenset[str], ...]]

    def __post_init__(self):
        if not self.states:
            raise ValueError("state set must not be empty")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate states")
        universe = set(self.states)
        for agent, blocks in self.partitions.items():
            seen: set[str] = set()
            for block in blocks:
                if not block:
                    raise ValueError(f"agent {agent!r} has an empty block")
                if block & seen:
                    raise ValueError(f"agent {agent!r} has overlapping blocks")
                if not block <= universe:
                    raise ValueError(f"agent {agent!r} references unknown states")
                seen |= block
            if seen != universe:
                raise ValueError(f"agent {agent!r} partition does not cover all states")

    def cell(self, agent: str, state: str) -> frozenset[str]:
        for block in self.partitions[agent]:
            if state in block:
                return block
        raise KeyError(state)


def aumann_model(states: Sequence[str],
                 partitions: Mapping[str, Sequence[Sequence[str]]]) -> AumannModel:
    return AumannModel(
        tuple(states),
        {agent: tuple(frozenset(block) for block in blocks)
         for agent, blocks in partitions.items()})


def _event_name(model: AumannModel, event: frozenset[str]) -> str:
    return subset_name([s for s in model.states if s in event])


def knowledge(model: AumannModel, agent: str, event: frozenset[str]) -> frozenset[str]:
    """States whose partition cell for the agent lies inside the event."""
    if agent not in model.partitions:
        raise KeyError(agent)
    return frozenset(s for s in model.states if model.cell(agent, s) <= event)


def distributed_knowledge(model: AumannModel, group: Iterable[str],
                          event: Iterable[str]) -> frozenset[str]:
    """States whose intersected cells across the group lie inside the event.

    Computed directly from the partitions; the empty group intersects nothing,
    so its cells are the full state set.
    """
    members = sorted(set(group))
    for agent in members:
        if agent not in model.partitions:
            raise KeyError(agent)
    ev = frozenset(event)
    out = []
    for s in model.states:
        cell = set(model.states)
        for agent in members:
            cell &= model.cell(agent, s)
        if cell <= ev:
            out.append(s)
    return frozenset(out)


def aumann_scs(model: AumannModel, max_states: int = 6) -> SCS:
    """Compile the model into a constraint system over its event lattice.

    Events are ordered by reverse inclusion: a larger event carries less
    information, intersection is the join, union is the meet, the full state
    set is bottom and the empty event is top. Each agent's space function is
    its knowledge operator, which preserves intersections and fixes the full
    set, hence is a valid space function. Guarded because the lattice has
    2^|states| elements.
    """
    if len(model.states) > max_states:
        raise ValueError(
            f"{len(model.states)} states would make a {2 ** len(model.states)}-element lattice")
    states = model.states
    events = []
    for size in range(len(states), -1, -1):
        for combo in combinations(states, size):
            events.append(frozenset(combo))
    names = {event: _event_name(model, event) for event in events}
    # covering pairs of the reverse-inclusion order: removing one state moves up
    pairs = []
    for event in events:
        for s in event:
            pairs.append((names[event], names[event - {s}]))
    lattice = _must(build_lattice([names[e] for e in events], pairs))
    tables = {}
    for agent in model.partitions:
        tables[agent] = {names[e]: names[knowledge(model, agent, e)] for e in events}
    return _must(build_scs(lattice, tables))


def event_index(scs_or_lattice, model: AumannModel, event: Iterable[str]) -> int:
    """Lattice index of an event given as a state collection."""
    lattice = scs_or_lattice.lattice if isinstance(scs_or_lattice, SCS) else scs_or_lattice
    return lattice.index(_event_name(model, frozenset(event)))
