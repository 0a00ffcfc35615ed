"""Seeded random instances for benchmarks and batch testing.

Distributive lattices come from down-set lattices of random small posets;
space functions come from random monotone assignments on the
join-irreducibles completed by joins, which always yields a valid space
function on distributive lattices and is rejection-sampled elsewhere.
"""

from __future__ import annotations

from random import Random
from typing import Sequence

from .instances import aumann_model, AumannModel, subset_name
from .lattice import Lattice, build_lattice
from .scs import SCS, SpaceFunction, build_scs, _complete_from_irreducibles


def random_poset(k: int, rng: Random, edge_prob: float = 0.4) -> list[list[bool]]:
    """Transitively closed random order on 0..k-1 (acyclic by construction)."""
    leq = [[i == j for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < edge_prob:
                leq[i][j] = True
    for m in range(k):
        for i in range(k):
            if leq[i][m]:
                for j in range(k):
                    if leq[m][j]:
                        leq[i][j] = True
    return leq


def downset_lattice(poset_leq: Sequence[Sequence[bool]]) -> Lattice:
    """Lattice of down-closed subsets of a poset, ordered by inclusion.

    Always distributive; every distributive lattice arises this way.
    """
    k = len(poset_leq)
    ground = [f"x{i}" for i in range(k)]
    downsets = []
    for mask in range(1 << k):
        closed = True
        for j in range(k):
            if mask >> j & 1:
                for i in range(k):
                    if poset_leq[i][j] and not mask >> i & 1:
                        closed = False
                        break
            if not closed:
                break
        if closed:
            downsets.append(mask)
    downsets.sort(key=lambda m: (bin(m).count("1"), m))

    def name(mask):
        return subset_name([ground[i] for i in range(k) if mask >> i & 1])

    names = [name(m) for m in downsets]
    present = set(downsets)
    pairs = []
    for m in downsets:
        for i in range(k):
            if not m >> i & 1 and (m | 1 << i) in present:
                pairs.append((name(m), name(m | 1 << i)))
    built = build_lattice(names, pairs)
    if isinstance(built, Lattice):
        return built
    raise AssertionError(f"down-set lattice failed validation: {built.summary()}")


def random_distributive_lattice(rng: Random, max_ground: int = 4) -> Lattice:
    k = rng.randint(1, max_ground)
    return downset_lattice(random_poset(k, rng))


def random_space_function(lattice: Lattice, rng: Random,
                          max_tries: int = 1000) -> SpaceFunction:
    """Random valid space function via monotone irreducible images.

    Each irreducible gets a uniform image from the up-set of the join of the
    images already fixed below it; completion by joins then satisfies both
    axioms on distributive lattices and is re-checked (and resampled) on
    non-distributive ones.
    """
    irr = lattice.irreducibles
    k = len(irr)
    lm = lattice.leq_m
    jm = lattice.join_m
    prev_below = [[q for q in range(p) if lm[irr[q], irr[p]]] for p in range(k)]
    for _ in range(max_tries):
        g = [0] * k
        for p in range(k):
            lb = lattice.bottom
            for q in prev_below[p]:
                lb = jm[lb, g[q]]
            choices = [x for x in range(lattice.n) if lm[lb, x]]
            g[p] = rng.choice(choices)
        table = _complete_from_irreducibles(lattice, g)
        if lattice.distributive:
            return SpaceFunction(lattice, table)
        ok = True
        for c in range(lattice.n):
            for d in range(c + 1, lattice.n):
                if table[jm[c, d]] != jm[table[c], table[d]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return SpaceFunction(lattice, table)
    raise RuntimeError("failed to sample a valid space function")


def random_scs(lattice: Lattice, agent_count: int, rng: Random,
               prefix: str = "g") -> SCS:
    tables = {}
    for i in range(1, agent_count + 1):
        tables[f"{prefix}{i}"] = random_space_function(lattice, rng).as_dict()
    built = build_scs(lattice, tables)
    if isinstance(built, SCS):
        return built
    raise AssertionError(f"random scs failed validation: {built.summary()}")


def random_partition(states: Sequence[str], rng: Random,
                     min_blocks: int = 1) -> list[list[str]]:
    """Random set partition: each state joins an existing block or opens one."""
    shuffled = list(states)
    rng.shuffle(shuffled)
    blocks: list[list[str]] = []
    for s in shuffled:
        spots = len(blocks) + 1
        pick = rng.randrange(spots)
        if pick == len(blocks):
            blocks.append([s])
        else:
            blocks[pick].append(s)
    while len(blocks) < min(min_blocks, len(states)):
        big = max(range(len(blocks)), key=lambda i: len(blocks[i]))
        if len(blocks[big]) == 1:
            break
        mover = blocks[big].pop()
        blocks.append([mover])
    order = {s: i for i, s in enumerate(states)}
    blocks = [sorted(b, key=order.get) for b in blocks]
    blocks.sort(key=lambda b: order[b[0]])
    return blocks


def random_aumann_model(rng: Random, max_states: int = 5,
                        max_agents: int = 3) -> AumannModel:
    n_states = rng.randint(2, max_states)
    n_agents = rng.randint(1, max_agents)
    states = [f"s{i}" for i in range(1, n_states + 1)]
    partitions = {}
    for a in range(1, n_agents + 1):
        partitions[str(a)] = random_partition(states, rng)
    return aumann_model(states, partitions)
