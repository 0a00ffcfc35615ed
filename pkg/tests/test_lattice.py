from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spatialcs import (FrameRequiredError, Lattice, UnknownElementError,
                       ValidationReport, build_lattice, heyting_implies,
                       is_distributive, join, leq, meet, m3_lattice,
                       n5_lattice, powerset_lattice)
from spatialcs.generate import downset_lattice, random_poset

from conftest import brute_heyting

M2_ELEMENTS = ["bot", "p", "np", "top"]
M2_ORDER = [("bot", "p"), ("bot", "np"), ("p", "top"), ("np", "top")]


def build_m2():
    built = build_lattice(M2_ELEMENTS, M2_ORDER)
    assert isinstance(built, Lattice)
    return built


def test_build_m2_tables():
    lat = build_m2()
    assert lat.names == ("bot", "p", "np", "top")
    assert lat.names[lat.bottom] == "bot"
    assert lat.names[lat.top] == "top"
    assert lat.names[join(lat, ["p", "np"])] == "top"
    assert lat.names[meet(lat, ["p", "np"])] == "bot"


def test_one_point_lattice():
    lat = build_lattice(["bot"], [])
    assert isinstance(lat, Lattice)
    assert lat.bottom == lat.top == 0


def test_hexagon_reports_ambiguous_lub():
    built = build_lattice(
        ["bot", "a", "b", "c", "d", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "c"), ("a", "d"),
         ("b", "c"), ("b", "d"), ("c", "top"), ("d", "top")])
    assert isinstance(built, ValidationReport)
    assert not built.ok
    lub_violations = [v for v in built.violations if v.rule == "ambiguous-lub"]
    assert lub_violations
    v = lub_violations[0]
    assert v.witness[:2] == ("a", "b")
    assert set(v.witness[2:]) == {"c", "d"}  # two minimal upper bounds


def test_cycle_reports_antisymmetry():
    built = build_lattice(["x", "y", "z"], [("x", "y"), ("y", "x"), ("x", "z")])
    assert isinstance(built, ValidationReport)
    assert any(v.rule == "antisymmetry" and set(v.witness) == {"x", "y"}
               for v in built.violations)


def test_duplicate_and_unknown_elements():
    built = build_lattice(["x", "x"], [])
    assert isinstance(built, ValidationReport)
    assert built.violations[0].rule == "duplicate-element"
    built = build_lattice(["x"], [("x", "y")])
    assert isinstance(built, ValidationReport)
    assert built.violations[0].rule == "unknown-element"
    assert built.violations[0].witness == ("y",)


def test_empty_fork_has_no_upper_bound():
    built = build_lattice(["a", "b"], [])
    assert isinstance(built, ValidationReport)
    assert any(v.rule == "no-upper-bound" for v in built.violations)


def test_join_meet_of_empty_set():
    lat = build_m2()
    assert join(lat, []) == lat.bottom
    assert meet(lat, []) == lat.top


def test_leq_queries():
    lat = build_m2()
    assert leq(lat, "bot", "p")
    assert not leq(lat, "p", "np")
    for name in lat.names:
        assert leq(lat, name, name)
    with pytest.raises(UnknownElementError):
        leq(lat, "p", "nope")
    with pytest.raises(UnknownElementError):
        join(lat, ["p", "ghost"])


def test_powerset_join_is_union():
    lat = powerset_lattice(3)
    assert lat.names[join(lat, ["{1}", "{2}"])] == "{1,2}"
    assert lat.names[meet(lat, ["{1,2}", "{2,3}"])] == "{2}"


def test_distributivity_verdicts():
    assert is_distributive(build_m2())
    assert is_distributive(build_lattice(["0", "1", "2"], [("0", "1"), ("1", "2")]))
    m3 = m3_lattice()
    assert not is_distributive(m3)
    assert set(m3.distributivity_witness) <= {"a", "b", "c"}
    assert not is_distributive(n5_lattice())


def test_m3_witness_is_genuine():
    m3 = m3_lattice()
    a, b, c = (m3.index(x) for x in m3.distributivity_witness)
    lhs = m3.join_m[a, m3.meet_m[b, c]]
    rhs = m3.meet_m[m3.join_m[a, b], m3.join_m[a, c]]
    assert lhs != rhs


def test_heyting_m2_values():
    lat = build_m2()
    assert lat.names[heyting_implies(lat, "p", "np")] == "np"
    assert lat.names[heyting_implies(lat, "p", "p")] == "bot"
    assert lat.names[heyting_implies(lat, "bot", "p")] == "p"


def test_heyting_requires_frame():
    with pytest.raises(FrameRequiredError):
        heyting_implies(m3_lattice(), "a", "b")


def test_heyting_matches_brute_scan():
    rng = Random(11)
    lattices = [build_m2(), powerset_lattice(3)]
    lattices += [downset_lattice(random_poset(4, rng)) for _ in range(5)]
    for lat in lattices:
        assert lat.distributive
        for c in range(lat.n):
            for d in range(lat.n):
                assert heyting_implies(lat, c, d) == brute_heyting(lat, c, d)


def test_heyting_identities_m2():
    lat = build_m2()
    jm, lm = lat.join_m, lat.leq_m
    for c in range(lat.n):
        for d in range(lat.n):
            e = heyting_implies(lat, c, d)
            assert jm[c, e] == jm[c, d]
            assert lm[e, d]
            assert (e == lat.bottom) == bool(lm[d, c])


def _check_bound_laws(lat):
    lm = lat.leq_m.tolist()
    for a in range(lat.n):
        for b in range(lat.n):
            u = int(lat.join_m[a, b])
            assert lm[a][u] and lm[b][u]
            for x in range(lat.n):
                if lm[a][x] and lm[b][x]:
                    assert lm[u][x]
            l = int(lat.meet_m[a, b])
            assert lm[l][a] and lm[l][b]
            for x in range(lat.n):
                if lm[x][a] and lm[x][b]:
                    assert lm[x][l]


def test_tables_are_least_bounds():
    for lat in (build_m2(), powerset_lattice(3), m3_lattice(), n5_lattice()):
        _check_bound_laws(lat)


def test_absorption():
    for lat in (build_m2(), m3_lattice(), powerset_lattice(2)):
        jm, mm = lat.join_m, lat.meet_m
        for a in range(lat.n):
            for b in range(lat.n):
                assert jm[a, mm[a, b]] == a
                assert mm[a, jm[a, b]] == a


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_downset_lattices_are_valid(seed):
    rng = Random(seed)
    lat = downset_lattice(random_poset(rng.randint(1, 4), rng))
    assert lat.distributive
    _check_bound_laws(lat)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_posets_build_or_report(seed):
    rng = Random(seed)
    k = rng.randint(1, 6)
    names = [f"e{i}" for i in range(k)]
    pairs = [(names[i], names[j]) for i in range(k) for j in range(k)
             if i != j and rng.random() < 0.3]
    built = build_lattice(names, pairs)
    if isinstance(built, Lattice):
        _check_bound_laws(built)
    else:
        assert not built.ok
        assert all(v.rule in {"antisymmetry", "no-upper-bound", "no-lower-bound",
                              "ambiguous-lub", "ambiguous-glb"}
                   for v in built.violations)
