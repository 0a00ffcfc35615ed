"""Command-line front end.

One loader serves every subcommand: plain lattice files, lattice+agents
files, and partition-model files (which are compiled to their event-lattice
system on load). Exit codes are uniform: 0 success, 1 input or schema error,
2 property or precondition failure.
"""

from __future__ import annotations

import argparse
import sys
from random import Random

from . import _kernels
from .distributed import (DeltaResult, delta_oracle, delta_part, delta_table,
                          agent_projection, group_projection, join_projection)
from .errors import (EnumerationCapError, FrameRequiredError,
                     NotMeetPreservingError, NotSurjectiveError, SchemaError,
                     UnknownAgentError, UnknownElementError)
from .extrusion import extrusion_inf, extrusion_sup
from .generate import random_space_function
from .instances import aumann_scs
from .lattice import Lattice, ValidationReport, build_lattice
from .modelio import (ParsedModel, delta_result_to_obj, dumps_canonical,
                      extrusion_to_obj, load_model_file, scs_to_obj)
from .scs import SCS, build_scs

DOT_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliFailure(1, f"{self.prog}: {message}")


def _load(path: str) -> ParsedModel:
    try:
        return load_model_file(path)
    except SchemaError as exc:
        raise CliFailure(1, f"schema error: {exc}") from exc
    except OSError as exc:
        raise CliFailure(1, f"cannot read {path}: {exc.strerror}") from exc


def _build(parsed: ParsedModel) -> tuple[Lattice, SCS | None]:
    """Structurally validate a parsed model; partition models are compiled."""
    if parsed.kind == "aumann":
        try:
            scs = aumann_scs(parsed.aumann)
        except ValueError as exc:
            raise CliFailure(2, str(exc)) from exc
        return scs.lattice, scs
    built = build_lattice(parsed.elements, parsed.order)
    if isinstance(built, ValidationReport):
        raise CliFailure(2, f"invalid lattice: {built.summary()}")
    if parsed.agents is None:
        return built, None
    system = build_scs(built, parsed.agents)
    if isinstance(system, ValidationReport):
        raise CliFailure(2, f"invalid space functions: {system.summary()}")
    return built, system


def _need_scs(lattice: Lattice, scs: SCS | None) -> SCS:
    if scs is None:
        raise CliFailure(1, "this command needs a model with agents")
    return scs


def _group(scs: SCS, arg: str) -> tuple[str, ...]:
    members = [m for m in (part.strip() for part in arg.split(",")) if m]
    if not members:
        raise CliFailure(1, "--group must list at least one agent id")
    unknown = [m for m in members if m not in scs.agents]
    if unknown:
        raise CliFailure(1, f"unknown agent(s): {', '.join(unknown)}")
    return tuple(sorted(set(members)))


def _element(lattice: Lattice, name: str) -> int:
    try:
        return lattice.index(name)
    except UnknownElementError:
        raise CliFailure(1, f"unknown element {name!r}") from None


def cmd_check(args) -> int:
    parsed = _load(args.path)
    report = {"lattice": "ok", "distributive": None, "agents": {}}
    failed = False
    if parsed.kind == "aumann":
        lattice, scs = _build(parsed)
    else:
        built = build_lattice(parsed.elements, parsed.order)
        if isinstance(built, ValidationReport):
            if args.json:
                obj = {"lattice": {"ok": False, "violations": [
                    {"rule": v.rule, "witness": list(v.witness)}
                    for v in built.violations]}}
                print(dumps_canonical(obj), end="")
            else:
                print(f"lattice: invalid ({built.summary()})")
            return 2
        lattice = built
        scs = None
        if parsed.agents is not None:
            system = build_scs(lattice, parsed.agents)
            if isinstance(system, ValidationReport):
                for v in system.violations:
                    agent = v.witness[0]
                    report["agents"].setdefault(agent, []).append(
                        {"rule": v.rule, "witness": list(v.witness[1:])})
                failed = True
            else:
                scs = system

    dist = lattice.distributive
    if not dist:
        failed = True
    if args.json:
        obj = {
            "lattice": {"ok": True, "elements": lattice.n,
                        "bottom": lattice.names[lattice.bottom],
                        "top": lattice.names[lattice.top]},
            "distributive": {"ok": dist,
                             "witness": (None if dist else
                                         list(lattice.distributivity_witness))},
            "agents": {agent: (report["agents"].get(agent) or "ok")
                       for agent in (scs.agents if scs else report["agents"])},
        }
        print(dumps_canonical(obj), end="")
    else:
        print(f"lattice: ok ({lattice.n} elements, "
              f"bottom={lattice.names[lattice.bottom]}, top={lattice.names[lattice.top]})")
        if dist:
            print("distributive: yes")
        else:
            print(f"distributive: no, witness {lattice.distributivity_witness}")
        if scs is not None:
            for agent in scs.agents:
                print(f"agent {agent}: ok")
        for agent, violations in report["agents"].items():
            for v in violations:
                print(f"agent {agent}: {v['rule']} violation at ({', '.join(v['witness'])})")
    return 2 if failed else 0


def _compute_delta(scs: SCS, group, alg: str, cap: int | None) -> DeltaResult:
    kwargs = {}
    if cap is not None:
        kwargs["max_assignments"] = cap
    try:
        if alg == "oracle":
            return delta_oracle(scs, group, **kwargs)
        return delta_table(scs, group, variant=int(alg[-1]))
    except FrameRequiredError as exc:
        raise CliFailure(2, f"{exc} (try --alg oracle)") from exc
    except EnumerationCapError as exc:
        raise CliFailure(2, str(exc)) from exc


def cmd_delta(args) -> int:
    lattice, scs = _build(_load(args.path))
    scs = _need_scs(lattice, scs)
    group = _group(scs, args.group)
    if args.at is not None:
        ci = _element(lattice, args.at)
        if args.alg == "oracle":
            result = _compute_delta(scs, group, "oracle", args.cap)
            value, counts = result.table[ci], result.op_counts
        else:
            try:
                value = delta_part(scs, group, ci, variant=int(args.alg[-1]))
            except FrameRequiredError as exc:
                raise CliFailure(2, f"{exc} (try --alg oracle)") from exc
            counts = None
        if args.json:
            obj = {"group": list(group), "algorithm": args.alg,
                   "at": args.at, "value": lattice.names[value]}
            if counts is not None:
                obj["op_counts"] = dict(counts)
            print(dumps_canonical(obj), end="")
        else:
            print(lattice.names[value])
        return 0
    result = _compute_delta(scs, group, args.alg, args.cap)
    if args.json:
        print(dumps_canonical(delta_result_to_obj(result)), end="")
    else:
        print(f"distributed space of group {{{','.join(group)}}} ({result.algorithm})")
        for i, v in enumerate(result.table):
            print(f"  {lattice.names[i]} -> {lattice.names[v]}")
        print("op counts: " + ", ".join(
            f"{key}={value}" for key, value in sorted(result.op_counts.items())))
    return 0


def cmd_project(args) -> int:
    lattice, scs = _build(_load(args.path))
    scs = _need_scs(lattice, scs)
    group = _group(scs, args.group)
    ci = _element(lattice, args.at)
    if args.kind == "agent":
        if len(group) != 1:
            raise CliFailure(1, "--kind agent needs a singleton --group")
        value = agent_projection(scs, group[0], ci)
    elif args.kind == "join":
        value = join_projection(scs, group, ci)
    else:
        try:
            value = group_projection(scs, group, ci)
        except EnumerationCapError as exc:
            raise CliFailure(2, str(exc)) from exc
    if args.json:
        print(dumps_canonical({"kind": args.kind, "group": list(group),
                               "at": args.at, "value": lattice.names[value]}), end="")
    else:
        print(lattice.names[value])
    return 0


def cmd_extrude(args) -> int:
    lattice, scs = _build(_load(args.path))
    scs = _need_scs(lattice, scs)
    if args.agent not in scs.agents:
        raise CliFailure(1, f"unknown agent {args.agent!r}")
    f = scs.agents[args.agent]
    try:
        ext = extrusion_sup(f) if args.method == "sup" else extrusion_inf(f)
    except NotSurjectiveError as exc:
        raise CliFailure(2, f"not surjective, witness {exc.witness}") from exc
    except NotMeetPreservingError as exc:
        raise CliFailure(2, f"not meet-preserving, witness {exc.witness}") from exc
    if args.json:
        print(dumps_canonical(extrusion_to_obj(ext)), end="")
    else:
        print(f"extrusion for agent {args.agent} ({ext.method})")
        for i, v in enumerate(ext.table):
            print(f"  {lattice.names[i]} -> {lattice.names[v]}")
        print(f"right-inverse law: verified at all {lattice.n} elements")
    return 0


def cmd_bench(args) -> int:
    lattice, scs = _build(_load(args.path))
    if args.random_agents:
        rng = Random(args.seed)
        tables = {f"g{i}": random_space_function(lattice, rng).as_dict()
                  for i in range(1, args.random_agents + 1)}
        built = build_scs(lattice, tables)
        assert isinstance(built, SCS)
        scs = built
    scs = _need_scs(lattice, scs)
    group = _group(scs, args.group) if args.group else tuple(sorted(scs.agents))
    results: dict[str, DeltaResult] = {}
    for variant in (1, 2, 3):
        try:
            results[f"part{variant}"] = delta_table(scs, group, variant=variant)
        except FrameRequiredError as exc:
            raise CliFailure(2, f"{exc}") from exc
    oracle_note = None
    try:
        results["oracle"] = delta_oracle(
            scs, group, max_assignments=args.cap or 4_000_000)
    except EnumerationCapError as exc:
        oracle_note = str(exc)
    tables = {name: res.table for name, res in results.items()}
    reference = tables["part3"]
    agree = all(t == reference for t in tables.values())
    if args.json:
        obj = {"group": list(group), "agreement": agree,
               "algorithms": {name: delta_result_to_obj(res)
                              for name, res in results.items()}}
        if oracle_note:
            obj["oracle_skipped"] = oracle_note
        print(dumps_canonical(obj), end="")
    else:
        print(f"group {{{','.join(group)}}} on {lattice.n} elements, backend {_kernels.backend_name()}")
        header = f"{'algorithm':<10} {'joins':>10} {'meets':>10} {'impls':>10} {'calls':>10} {'candidates':>12}"
        print(header)
        for name, res in results.items():
            c = res.op_counts
            print(f"{name:<10} {c['joins']:>10} {c['meets']:>10} "
                  f"{c['implications']:>10} {c['recursive_calls']:>10} {c['meet_candidates']:>12}")
        if oracle_note:
            print(f"oracle skipped: {oracle_note}")
        print(f"agreement: {'ok' if agree else 'MISMATCH'}")
    return 0 if agree else 2


def cmd_export_dot(args) -> int:
    lattice, scs = _build(_load(args.path))
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box, style=rounded];"]
    by_height: dict[int, list[str]] = {}
    for i, name in enumerate(lattice.names):
        by_height.setdefault(int(lattice.heights[i]), []).append(name)
    for height in sorted(by_height):
        row = " ".join(f'"{name}";' for name in by_height[height])
        lines.append(f"  {{ rank=same; {row} }}")
    rows, cols = lattice.covers.nonzero()
    for i, j in sorted(zip(rows.tolist(), cols.tolist())):
        lines.append(f'  "{lattice.names[i]}" -> "{lattice.names[j]}";')
    if scs is not None:
        for idx, (agent, f) in enumerate(scs.agents.items()):
            color = DOT_COLORS[idx % len(DOT_COLORS)]
            for i, v in enumerate(f.table):
                lines.append(
                    f'  "{lattice.names[i]}" -> "{lattice.names[v]}" '
                    f'[label="{agent}", color="{color}", style=dashed, constraint=false];')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_aumann_compile(args) -> int:
    parsed = _load(args.path)
    if parsed.kind != "aumann":
        raise CliFailure(1, "aumann-compile needs a partition-model file")
    try:
        scs = aumann_scs(parsed.aumann)
    except ValueError as exc:
        raise CliFailure(2, str(exc)) from exc
    text = dumps_canonical(scs_to_obj(scs))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="spatialcs",
                     description="Finite spatial-constraint-system toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("path", help="model file (lattice, lattice+agents, or aumann)")
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check, help="validate a model file")
    p.add_argument("--json", action="store_true")

    p = add("delta", cmd_delta, help="compute a distributed-space table or value")
    p.add_argument("--group", required=True, help="comma-separated agent ids")
    p.add_argument("--alg", choices=("oracle", "part1", "part2", "part3"),
                   default="part3")
    p.add_argument("--at", help="evaluate at a single element")
    p.add_argument("--cap", type=int, help="oracle enumeration cap")
    p.add_argument("--json", action="store_true")

    p = add("project", cmd_project, help="agent, join, or group projection")
    p.add_argument("--group", required=True)
    p.add_argument("--kind", choices=("agent", "join", "group"), required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--json", action="store_true")

    p = add("extrude", cmd_extrude, help="derive an extrusion (right inverse)")
    p.add_argument("--agent", required=True)
    p.add_argument("--method", choices=("sup", "inf"), default="sup")
    p.add_argument("--json", action="store_true")

    p = add("bench", cmd_bench, help="compare the recursion variants and the oracle")
    p.add_argument("--group")
    p.add_argument("--random-agents", type=int, metavar="M",
                   help="generate M seeded agents on the file's lattice")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, help="oracle enumeration cap")
    p.add_argument("--json", action="store_true")

    p = add("export-dot", cmd_export_dot, help="emit a Hasse diagram in DOT")
    p.add_argument("-o", "--output")

    p = add("aumann-compile", cmd_aumann_compile,
            help="compile a partition model to a lattice+agents file")
    p.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except CliFailure as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except (UnknownElementError, UnknownAgentError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
