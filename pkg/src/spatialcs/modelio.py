"""File-based model input and canonical JSON output.

Input schemas (unknown fields are rejected):

* lattice / scs files::

    {"lattice": {"elements": ["bot", ...], "order": [["bot", "p"], ...]},
     "agents": {"1": {"bot": "bot", ...}, ...}}

  ``agents`` is optional; every agent table must be total.

* partition-model files::

    {"aumann": {"states": ["s1", ...],
                "partitions": {"1": [["s1", "s2"], ["s3"]], ...}}}

All emitters sort keys, so output bytes are deterministic for a fixed input
and seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .distributed import DeltaResult
from .errors import SchemaError
from .extrusion import ExtrusionFunction
from .instances import AumannModel, aumann_model
from .lattice import Lattice
from .scs import SCS


@dataclass(frozen=True)
class ParsedModel:
    """Schema-validated file contents, not yet structurally validated."""

    elements: Optional[list[str]] = None
    order: Optional[list[tuple[str, str]]] = None
    agents: Optional[dict[str, dict[str, str]]] = None
    aumann: Optional[AumannModel] = None

    @property
    def kind(self) -> str:
        return "aumann" if self.aumann is not None else "scs"


def _expect_keys(obj: dict, allowed: set[str], required: set[str], where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"unknown field(s) {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"missing field(s) {sorted(missing)} in {where}")


def _string_list(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise SchemaError(f"{where} must be a list of strings")
    return value


def parse_model(obj: Any) -> ParsedModel:
    """Validate the JSON object shape of a model file."""
    if not isinstance(obj, dict):
        raise SchemaError("model file must hold a JSON object")
    if "aumann" in obj:
        _expect_keys(obj, {"aumann"}, {"aumann"}, "model file")
        am = obj["aumann"]
        if not isinstance(am, dict):
            raise SchemaError("'aumann' must be an object")
        _expect_keys(am, {"states", "partitions"}, {"states", "partitions"}, "'aumann'")
        states = _string_list(am["states"], "'states'")
        parts = am["partitions"]
        if not isinstance(parts, dict):
            raise SchemaError("'partitions' must map agent ids to block lists")
        partitions = {}
        for agent, blocks in parts.items():
            if not isinstance(blocks, list):
                raise SchemaError(f"partition of agent {agent!r} must be a list of blocks")
            partitions[agent] = [
                _string_list(b, f"block of agent {agent!r}") for b in blocks]
        try:
            model = aumann_model(states, partitions)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        return ParsedModel(aumann=model)

    _expect_keys(obj, {"lattice", "agents"}, {"lattice"}, "model file")
    lat = obj["lattice"]
    if not isinstance(lat, dict):
        raise SchemaError("'lattice' must be an object")
    _expect_keys(lat, {"elements", "order"}, {"elements", "order"}, "'lattice'")
    elements = _string_list(lat["elements"], "'elements'")
    if not elements:
        raise SchemaError("'elements' must not be empty")
    order = []
    for pair in lat["order"]:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)):
            raise SchemaError("'order' entries must be [lower, upper] string pairs")
        order.append((pair[0], pair[1]))
    agents = None
    if "agents" in obj:
        raw_agents = obj["agents"]
        if not isinstance(raw_agents, dict):
            raise SchemaError("'agents' must map agent ids to element tables")
        known = set(elements)
        agents = {}
        for agent, table in raw_agents.items():
            if not isinstance(table, dict):
                raise SchemaError(f"table of agent {agent!r} must be an object")
            for src, dst in table.items():
                if not isinstance(dst, str):
                    raise SchemaError(f"table of agent {agent!r} must map strings to strings")
                if src not in known:
                    raise SchemaError(f"agent {agent!r} maps unknown element {src!r}")
                if dst not in known:
                    raise SchemaError(f"agent {agent!r} targets unknown element {dst!r}")
            missing = [e for e in elements if e not in table]
            if missing:
                raise SchemaError(
                    f"table of agent {agent!r} is not total; missing {missing[0]!r}")
            agents[agent] = dict(table)
    return ParsedModel(elements=elements, order=order, agents=agents)


def parse_model_text(text: str) -> ParsedModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc.msg}",
                          line=exc.lineno, column=exc.colno) from exc
    return parse_model(obj)


def load_model_file(path: str) -> ParsedModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model_text(fh.read())


def _cover_pairs(lattice: Lattice) -> list[list[str]]:
    pairs = []
    rows, cols = np.where(lattice.covers)
    for i, j in zip(rows.tolist(), cols.tolist()):
        pairs.append([lattice.names[i], lattice.names[j]])
    pairs.sort()
    return pairs


def lattice_to_obj(lattice: Lattice) -> dict:
    return {"lattice": {"elements": list(lattice.names),
                        "order": _cover_pairs(lattice)}}


def scs_to_obj(scs: SCS) -> dict:
    obj = lattice_to_obj(scs.lattice)
    obj["agents"] = {agent: f.as_dict() for agent, f in scs.agents.items()}
    return obj


def aumann_to_obj(model: AumannModel) -> dict:
    return {"aumann": {
        "states": list(model.states),
        "partitions": {agent: [sorted(b, key=model.states.index) for b in blocks]
                       for agent, blocks in model.partitions.items()}}}


def delta_result_to_obj(result: DeltaResult) -> dict:
    return {"group": list(result.group),
            "algorithm": result.algorithm,
            "table": result.function.as_dict(),
            "op_counts": dict(result.op_counts)}


def extrusion_to_obj(ext: ExtrusionFunction) -> dict:
    return {"table": ext.as_dict(), "method": ext.method}


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
