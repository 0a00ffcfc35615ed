from itertools import combinations
from random import Random

import pytest

from spatialcs import (EnumerationCapError, FrameRequiredError, Lattice,
                       agent_projection, build_lattice, build_scs,
                       count_space_functions, delta_empty, delta_oracle,
                       delta_part, delta_table, enumerate_space_functions,
                       finite_witness, fn_leq, group_projection,
                       join_projection, lambda_top, m3_lattice, meet,
                       powerset_lattice)
from spatialcs.distributed import _part_eval
from spatialcs.generate import downset_lattice, random_poset, random_scs
from spatialcs.scs import SCS

from conftest import brute_space_function_tables

M2_GROUP_DELTA = {"bot": "bot", "p": "np", "np": "bot", "top": "np"}


def names_table(lattice, table):
    return {lattice.names[i]: lattice.names[v] for i, v in enumerate(table)}


def test_oracle_m2_table(m2):
    result = delta_oracle(m2, ["1", "2"])
    assert names_table(m2.lattice, result.table) == M2_GROUP_DELTA
    assert result.algorithm == "oracle"
    assert result.group == ("1", "2")
    assert result.op_counts["functions_kept"] >= 1


def test_oracle_singleton_is_agent(m2):
    for agent in m2.agents:
        result = delta_oracle(m2, [agent])
        assert result.table == m2.agents[agent].table


def test_oracle_is_pointwise_join_of_filtered_set(m2):
    # independent reconstruction from the brute-force function list
    lat = m2.lattice
    jm = lat.join_m.tolist()
    lm = lat.leq_m.tolist()
    tables = brute_space_function_tables(lat)
    agents = [m2.agents[a].table for a in ("1", "2")]
    below = [t for t in tables
             if all(lm[t[c]][a[c]] for a in agents for c in range(lat.n))]
    expected = [0] * lat.n
    for t in below:
        for c in range(lat.n):
            expected[c] = jm[expected[c]][t[c]]
    assert tuple(expected) == delta_oracle(m2, ["1", "2"]).table


def test_delta_empty_is_top_space(m2):
    fn = delta_empty(m2)
    assert fn.table == lambda_top(m2.lattice).table
    assert fn("bot") == m2.lattice.bottom
    assert m2.lattice.names[fn("p")] == "top"
    assert m2.lattice.names[fn("top")] == "top"


def test_delta_part_m2_values(m2):
    lat = m2.lattice
    assert lat.names[delta_part(m2, ["1", "2"], "np", variant=3)] == "bot"
    for variant in (1, 2, 3):
        assert lat.names[delta_part(m2, ["1"], "p", variant=variant)] == "np"
        for name, target in M2_GROUP_DELTA.items():
            assert lat.names[delta_part(m2, ["1", "2"], name, variant=variant)] == target


def test_delta_part_identity_agents():
    lat = powerset_lattice(2)
    identity = {name: name for name in lat.names}
    scs = build_scs(lat, {"1": identity, "2": identity})
    assert isinstance(scs, SCS)
    got = delta_part(scs, ["1", "2"], "{1,2}", variant=2)
    assert lat.names[got] == "{1,2}"
    result = delta_table(scs, ["1", "2"], variant=1)
    assert result.table == tuple(range(lat.n))


def test_delta_part_rejects_bad_input(m2):
    with pytest.raises(ValueError):
        delta_part(m2, ["1", "2"], "p", variant=4)
    with pytest.raises(ValueError):
        delta_part(m2, [], "p")
    rng = Random(1)
    nd = random_scs(m3_lattice(), 2, rng)
    with pytest.raises(FrameRequiredError):
        delta_part(nd, list(nd.agents), "a")


def test_delta_table_matches_group_golden_all_variants(m2):
    for variant in (1, 2, 3):
        result = delta_table(m2, ["1", "2"], variant=variant)
        assert names_table(m2.lattice, result.table) == M2_GROUP_DELTA
        assert result.algorithm == f"part{variant}"


def test_delta_table_singleton_base_case_counts(m2):
    n = m2.lattice.n
    counts = {}
    for variant in (1, 2, 3):
        result = delta_table(m2, ["1"], variant=variant)
        assert result.op_counts["recursive_calls"] == n
        assert result.op_counts["meet_candidates"] == 0
        assert result.table == m2.agents["1"].table
        counts[variant] = result.op_counts
    # base case only: the variants cannot differ
    assert counts[1] == counts[2] == counts[3]


def test_per_element_candidate_counts(m2):
    # variant 3 scans the down-set of the element, variant 2 the whole carrier
    lat = m2.lattice
    members = ("1", "2")
    for c in range(lat.n):
        _, c3 = _part_eval(m2, members, c, 3)
        _, c2 = _part_eval(m2, members, c, 2)
        assert c3["meet_candidates"] <= c2["meet_candidates"]
    _, counts = _part_eval(m2, members, lat.index("np"), 3)
    assert counts["meet_candidates"] == len(lat.downset("np"))


def test_variant_count_ordering_powerset():
    rng = Random(5)
    lat = powerset_lattice(3)
    scs = random_scs(lat, 3, rng)
    group = list(scs.agents)
    counts = {v: delta_table(scs, group, variant=v).op_counts for v in (1, 2, 3)}
    assert (counts[3]["meet_candidates"] <= counts[2]["meet_candidates"]
            <= counts[1]["meet_candidates"])


def test_oracle_on_non_distributive_is_pointwise_meet():
    rng = Random(17)
    m3 = m3_lattice()
    scs = random_scs(m3, 2, rng)
    result = delta_oracle(scs, list(scs.agents))
    fns = list(enumerate_space_functions(m3))
    below = [f for f in fns
             if all(fn_leq(f, scs.agents[a]) for a in scs.agents)]
    for f in below:
        assert fn_leq(f, result.function)
    for a in scs.agents:
        assert fn_leq(result.function, scs.agents[a])


def test_oracle_matches_brute_join_on_non_distributive():
    from spatialcs import n5_lattice

    rng = Random(8)
    for lat in (m3_lattice(), n5_lattice()):
        scs = random_scs(lat, 2, rng)
        jm = lat.join_m.tolist()
        lm = lat.leq_m.tolist()
        agents = [scs.agents[a].table for a in sorted(scs.agents)]
        expected = [0] * lat.n
        for t in brute_space_function_tables(lat):
            if all(lm[t[c]][a[c]] for a in agents for c in range(lat.n)):
                for c in range(lat.n):
                    expected[c] = jm[expected[c]][t[c]]
        assert tuple(expected) == delta_oracle(scs, list(scs.agents)).table


def test_oracle_maximality_small_distributive():
    rng = Random(23)
    for _ in range(5):
        lat = downset_lattice(random_poset(3, rng))
        scs = random_scs(lat, 2, rng)
        result = delta_oracle(scs, list(scs.agents))
        for f in enumerate_space_functions(lat):
            if all(fn_leq(f, scs.agents[a]) for a in scs.agents):
                assert fn_leq(f, result.function)


def test_agent_projection_values(m2):
    lat = m2.lattice
    assert lat.names[agent_projection(m2, "1", "np")] == "p"
    assert lat.names[agent_projection(m2, "2", "p")] == "bot"
    assert lat.names[agent_projection(m2, "1", "top")] == "top"
    assert lat.names[agent_projection(m2, "2", "top")] == "top"


def test_join_projection_values(m2):
    lat = m2.lattice
    d = meet(lat, [m2.agents["1"]("np"), m2.agents["2"]("np")])
    assert lat.names[d] == "bot"
    assert lat.names[join_projection(m2, ["1", "2"], d)] == "bot"
    assert not lat.leq_m[lat.index("np"), join_projection(m2, ["1", "2"], d)]
    assert lat.names[join_projection(m2, ["1"], "np")] == "p"
    assert join_projection(m2, [], "p") == lat.bottom


def test_group_projection_values(m2):
    lat = m2.lattice
    assert lat.names[group_projection(m2, ["1", "2"], "np")] == "top"
    assert lat.names[group_projection(m2, ["1"], "np")] == "p"
    assert lat.names[group_projection(m2, ["1", "2"], "top")] == "top"


def test_group_projection_source_mismatch(m2):
    source = delta_table(m2, ["1"], variant=3)
    result = delta_table(m2, ["1", "2"], variant=3)
    assert group_projection(m2, ["1", "2"], "np", delta_source=result) == lat_index(m2, "top")
    with pytest.raises(ValueError):
        group_projection(m2, ["1", "2"], "np", delta_source=source)


def lat_index(scs, name):
    return scs.lattice.index(name)


def test_galois_connection_m2(m2):
    lat = m2.lattice
    lm = lat.leq_m
    delta = delta_table(m2, ["1", "2"], variant=3).table
    pi = [group_projection(m2, ["1", "2"], c) for c in range(lat.n)]
    for c in range(lat.n):
        for e in range(lat.n):
            assert bool(lm[delta[e], c]) == bool(lm[e, pi[c]])


def test_group_anti_monotonicity(m2):
    lat = m2.lattice
    lm = lat.leq_m
    tables = {
        (): delta_empty(m2).table,
        ("1",): delta_table(m2, ["1"]).table,
        ("2",): delta_table(m2, ["2"]).table,
        ("1", "2"): delta_table(m2, ["1", "2"]).table,
    }
    for small, big in [((), ("1",)), ((), ("2",)), (("1",), ("1", "2")),
                       (("2",), ("1", "2"))]:
        for c in range(lat.n):
            assert lm[tables[big][c], tables[small][c]]


def test_compositionality_bounds(m2):
    # joining subgroup values dominates the full group's value
    lat = m2.lattice
    jm, lm, im = lat.join_m, lat.leq_m, lat.impl_m
    d1 = m2.agents["1"].table
    d2 = m2.agents["2"].table
    dI = delta_table(m2, ["1", "2"]).table
    for a in range(lat.n):
        for b in range(lat.n):
            assert lm[dI[jm[a, b]], jm[d1[a], d2[b]]]
        for c in range(lat.n):
            assert lm[dI[c], jm[d1[a], d2[im[a, c]]]]


def test_finite_witness_values(m2):
    assert finite_witness(m2, ["1", "2"], "bot", "np") == ("1", "2")
    assert finite_witness(m2, ["1", "2"], "np", "p") == ("1",)
    assert finite_witness(m2, ["1", "2"], "p", "bot") == ()
    # delta of the full group maps p to np, which bot does not dominate
    assert finite_witness(m2, ["1", "2"], "bot", "p") is None


def test_finite_witness_minimality(m2):
    lat = m2.lattice
    lm = lat.leq_m
    tables = {J: delta_oracle(m2, J).table if J else delta_empty(m2).table
              for size in range(3) for J in combinations(("1", "2"), size)}
    for c in range(lat.n):
        for e in range(lat.n):
            got = finite_witness(m2, ["1", "2"], c, e)
            if got is None:
                assert not lm[tables[("1", "2")][e], c]
                continue
            assert lm[tables[got][e], c]
            for size in range(len(got)):
                for smaller in combinations(("1", "2"), size):
                    assert not lm[tables[smaller][e], c]


def test_count_space_functions_values(m2):
    assert count_space_functions(m2.lattice) == 16
    two_chain = build_lattice(["b", "t"], [("b", "t")])
    assert isinstance(two_chain, Lattice)
    assert count_space_functions(two_chain) == 2
    one = build_lattice(["o"], [])
    assert count_space_functions(one) == 1


def test_enumeration_caps():
    tall = build_lattice([str(i) for i in range(13)],
                         [(str(i), str(i + 1)) for i in range(12)])
    assert isinstance(tall, Lattice)
    with pytest.raises(EnumerationCapError):
        count_space_functions(tall)  # 12 irreducibles > default cap
    wide = powerset_lattice(5)
    with pytest.raises(EnumerationCapError):
        count_space_functions(wide, max_assignments=1000)
    rng = Random(2)
    scs = random_scs(wide, 1, rng)
    with pytest.raises(EnumerationCapError):
        delta_oracle(scs, list(scs.agents), max_assignments=1)


def test_delta_results_pass_axioms(m2):
    from spatialcs import check_space_axioms

    for result in (delta_oracle(m2, ["1", "2"]), delta_table(m2, ["1", "2"])):
        assert check_space_axioms(m2.lattice, result.table).ok
