"""Shared helpers: independent brute-force oracles the package code never uses."""

from __future__ import annotations

from itertools import product

import pytest

from spatialcs import Lattice


def brute_space_function_tables(lattice: Lattice) -> list[tuple[int, ...]]:
    """All space-function tables by filtering the full n^n map space.

    Independent of the package's irreducible-based enumeration: checks bottom
    preservation and binary-join preservation directly against the tables.
    """
    n = lattice.n
    jm = lattice.join_m.tolist()
    bottom = lattice.bottom
    out = []
    for table in product(range(n), repeat=n):
        if table[bottom] != bottom:
            continue
        ok = True
        for c in range(n):
            for d in range(c + 1, n):
                if table[jm[c][d]] != jm[table[c]][table[d]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(table)
    return out


def brute_heyting(lattice: Lattice, c: int, d: int) -> int:
    """Meet of every e whose join with c dominates d, scanned directly."""
    lm = lattice.leq_m.tolist()
    jm = lattice.join_m.tolist()
    mm = lattice.meet_m.tolist()
    acc = lattice.top
    for e in range(lattice.n):
        if lm[d][jm[c][e]]:
            acc = mm[acc][e]
    return acc


@pytest.fixture
def m2():
    from spatialcs import m2_scs

    return m2_scs()
