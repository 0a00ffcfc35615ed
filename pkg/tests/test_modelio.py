import pytest

from spatialcs import SCS, Lattice, SchemaError, build_lattice, build_scs, m2_scs
from spatialcs.instances import aumann_scs
from spatialcs.modelio import (aumann_to_obj, dumps_canonical, lattice_to_obj,
                               parse_model, parse_model_text, scs_to_obj)


def rebuild(parsed):
    lattice = build_lattice(parsed.elements, parsed.order)
    assert isinstance(lattice, Lattice)
    if parsed.agents is None:
        return lattice, None
    scs = build_scs(lattice, parsed.agents)
    assert isinstance(scs, SCS)
    return lattice, scs


def test_scs_round_trip_preserves_tables():
    scs = m2_scs()
    parsed = parse_model(scs_to_obj(scs))
    lattice, reloaded = rebuild(parsed)
    assert lattice.names == scs.lattice.names
    assert (lattice.leq_m == scs.lattice.leq_m).all()
    assert (lattice.join_m == scs.lattice.join_m).all()
    assert (lattice.meet_m == scs.lattice.meet_m).all()
    for agent in scs.agents:
        assert reloaded.agents[agent].table == scs.agents[agent].table


def test_lattice_only_round_trip():
    scs = m2_scs()
    parsed = parse_model(lattice_to_obj(scs.lattice))
    lattice, agents = rebuild(parsed)
    assert agents is None
    assert lattice.names == scs.lattice.names


def test_aumann_round_trip():
    from spatialcs import aumann_model

    model = aumann_model(["s1", "s2", "s3"],
                         {"1": [["s1", "s2"], ["s3"]], "2": [["s1"], ["s2", "s3"]]})
    parsed = parse_model(aumann_to_obj(model))
    assert parsed.kind == "aumann"
    assert parsed.aumann == model
    direct = aumann_scs(model)
    via_file = aumann_scs(parsed.aumann)
    assert direct.lattice.names == via_file.lattice.names
    for agent in direct.agents:
        assert direct.agents[agent].table == via_file.agents[agent].table


def test_unknown_top_level_field_rejected():
    with pytest.raises(SchemaError):
        parse_model({"lattice": {"elements": ["a"], "order": []}, "extra": 1})


def test_unknown_lattice_field_rejected():
    with pytest.raises(SchemaError):
        parse_model({"lattice": {"elements": ["a"], "order": [], "covers": []}})


def test_partial_agent_table_names_missing_element():
    obj = {"lattice": {"elements": ["a", "b"], "order": [["a", "b"]]},
           "agents": {"1": {"a": "a"}}}
    with pytest.raises(SchemaError) as err:
        parse_model(obj)
    assert "'b'" in str(err.value)


def test_agent_table_with_unknown_element_rejected():
    obj = {"lattice": {"elements": ["a"], "order": []},
           "agents": {"1": {"a": "zz"}}}
    with pytest.raises(SchemaError):
        parse_model(obj)


def test_malformed_json_reports_position():
    with pytest.raises(SchemaError) as err:
        parse_model_text("{\n  broken\n}")
    assert err.value.line == 2


def test_order_pairs_must_be_string_pairs():
    with pytest.raises(SchemaError):
        parse_model({"lattice": {"elements": ["a"], "order": [["a"]]}})
    with pytest.raises(SchemaError):
        parse_model({"lattice": {"elements": ["a"], "order": [["a", 3]]}})
    with pytest.raises(SchemaError):
        parse_model({"lattice": {"elements": [], "order": []}})


def test_aumann_schema_checks():
    with pytest.raises(SchemaError):
        parse_model({"aumann": {"states": ["s1"]}})
    with pytest.raises(SchemaError):
        parse_model({"aumann": {"states": ["s1"], "partitions": {"1": [["s1"]]},
                                "extra": 1}})
    with pytest.raises(SchemaError):  # invalid partition surfaces as schema error
        parse_model({"aumann": {"states": ["s1", "s2"],
                                "partitions": {"1": [["s1"]]}}})


def test_dumps_canonical_is_deterministic():
    scs = m2_scs()
    a = dumps_canonical(scs_to_obj(scs))
    b = dumps_canonical(scs_to_obj(m2_scs()))
    assert a == b
    assert a.endswith("\n")
