"""Compare the compiled kernel backend against the pure-Python fallback.

Runs identical workloads on both backends (results are checked to match) and
prints wall-clock times with speedups. The heavy oracle workload is where the
compiled core earns its keep; pass --heavy to include the largest case.

Usage:  python benchmarks/bench_backends.py [--heavy] [--repeat N]
"""

from __future__ import annotations

import argparse
from random import Random
from time import perf_counter

from spatialcs import (build_scs, count_space_functions, delta_oracle,
                       delta_table, lambda_top, powerset_lattice)
from spatialcs._kernels import available_backends, use_backend
from spatialcs.generate import random_scs


def loose_scs(k, agents):
    # constant-top agents give the oracle the loosest possible bounds
    lat = powerset_lattice(k)
    table = lambda_top(lat).as_dict()
    scs = build_scs(lat, {str(i): table for i in range(1, agents + 1)})
    return scs


def coatom_scs(k, agents):
    # each atom maps to its complement co-atom: bounds of size 2^(k-1) per atom
    lat = powerset_lattice(k)
    ground = [str(i) for i in range(1, k + 1)]
    table = {}
    for name in lat.names:
        inner = set(name[1:-1].split(",")) if name != "{}" else set()
        if not inner:
            image = set()
        elif len(inner) == 1:
            image = set(ground) - inner
        else:  # union of two distinct co-atoms is everything
            image = set(ground)
        table[name] = "{" + ",".join(g for g in ground if g in image) + "}"
    scs = build_scs(lat, {str(i): table for i in range(1, agents + 1)})
    return scs


def workloads(heavy):
    out = []

    def oracle_case(name, scs, cap):
        group = list(scs.agents)
        out.append((name, lambda: delta_oracle(scs, group, max_assignments=cap).table))

    oracle_case("oracle B4 loose m=2", loose_scs(4, 2), 10_000_000)
    oracle_case("oracle B5 co-atom m=2", coatom_scs(5, 2), 10_000_000)
    if heavy:
        # 32^5 = 33.5M assignments: minutes on the pure backend
        oracle_case("oracle B5 loose m=2", loose_scs(5, 2), 100_000_000)

    scs6 = random_scs(powerset_lattice(6), 8, Random(5))
    group6 = list(scs6.agents)

    def recursions():
        return tuple(delta_table(scs6, group6, variant=v).table for v in (1, 2, 3))

    out.append(("delta_table B6 m=8 v1-3", recursions))

    lat4 = powerset_lattice(4)
    out.append(("count functions B4", lambda: count_space_functions(lat4)))

    def build_big():
        return powerset_lattice(6).impl_m[0, 0]

    out.append(("build B6 (impl+distrib)", build_big))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true",
                        help="include the 33M-assignment oracle case")
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend unavailable; nothing to compare")
        return

    print(f"{'workload':<28} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    for name, fn in workloads(args.heavy):
        times = {}
        results = {}
        for backend in ("pure", "compiled"):
            use_backend(backend)
            best = float("inf")
            for _ in range(args.repeat):
                t0 = perf_counter()
                results[backend] = fn()
                best = min(best, perf_counter() - t0)
            times[backend] = best
        assert results["pure"] == results["compiled"], f"backend mismatch in {name}"
        speedup = times["pure"] / times["compiled"] if times["compiled"] else float("inf")
        print(f"{name:<28} {times['pure']:>9.3f}s {times['compiled']:>9.3f}s {speedup:>8.1f}x")
    use_backend("compiled")


if __name__ == "__main__":
    main()
