import pytest
from hypothesis import given, strategies as st

from lexpref.core import FIRST, INCOMPARABLE, INDIFFERENT, SECOND
from lexpref.errors import SpecError
from lexpref.zoo import (ZOO_IDS, make_cobb_douglas, make_dominant, make_ex0, make_ex01,
                         make_lex_semiorder, make_leximax, make_lexicographic,
                         make_min_multiplicative, make_noncomparable_incomplete,
                         make_noncomparable_indifferent, make_pairwise_lex_ex2,
                         make_perfect_substitutes, make_special, make_utility_preference,
                         parse_oracle)

from brute import lex_by_definition


def test_lexicographic_examples():
    lex = make_lexicographic((1, 2, 3))
    assert lex.compare((1, 0, 0), (0, 9, 9)) is FIRST
    assert lex.compare((2, 3, 1), (2, 3, 5)) is SECOND
    assert make_lexicographic((2, 1)).compare((0, 1), (9, 0)) is FIRST


@pytest.mark.parametrize("order", [(), (1, 1), (0, 1), (1, 3)])
def test_lexicographic_bad_order(order):
    with pytest.raises(SpecError):
        make_lexicographic(order)


@given(st.permutations([1, 2, 3]), st.tuples(*[st.integers(0, 3)] * 3),
       st.tuples(*[st.integers(0, 3)] * 3))
def test_lexicographic_matches_definition(order, x, y):
    assert make_lexicographic(order).compare(x, y).value == lex_by_definition(order, x, y)


def test_leximax_examples():
    lm = make_leximax(2)
    assert lm.compare((4, 2), (1, 4)) is FIRST
    assert lm.compare((3, 4), (4, 2)) is FIRST
    assert make_leximax(3).compare((1, 2, 3), (3, 2, 1)) is INDIFFERENT
    with pytest.raises(SpecError):
        make_leximax(1)


def test_utility_preferences():
    dom = make_utility_preference("dominant", 2)
    assert dom.compare((0, 3, 0), (9, 2, 9)) is FIRST
    ps = make_utility_preference("perfsub", 2)
    assert ps.compare((1, 3), (3, 1)) is INDIFFERENT
    mm = make_utility_preference("minmul")
    assert mm.compare((4, 2, 2), (1, 2, 2)) is FIRST
    assert mm.compare((4, 0.5, 3), (1, 0.5, 3)) is INDIFFERENT
    cobb = make_utility_preference("cobb", 0.5)
    assert cobb.compare((1, 4), (2, 2)) is INDIFFERENT
    assert cobb.compare((1, 4.5), (2, 2)) is FIRST
    with pytest.raises(SpecError):
        make_utility_preference("cobb", 1.5)
    with pytest.raises(SpecError):
        make_utility_preference("nope")


def test_cobb_douglas_exact_indifference():
    # 1/3 powers: (8,1) and (1,... ) level sets compared in rationals
    cobb = make_cobb_douglas(1 / 3)
    assert cobb.compare((8, 1), (2, 2)) is INDIFFERENT
    assert cobb.compare((27, 1), (3, 3)) is INDIFFERENT


def test_ex2_rules():
    ex2 = make_pairwise_lex_ex2()
    assert ex2.compare((1, 0, 0), (0, 9, 9)) is FIRST
    assert ex2.compare((0, 6, 1), (0, 4, 8)) is FIRST
    assert ex2.compare((1, 5, 4), (1, 4, 7)) is SECOND
    assert ex2.compare((1, 3, 8), (1, 6, 4)) is FIRST
    assert ex2.compare((1, 3, 4), (1, 4, 3)) is INDIFFERENT


def test_ex0_rules_and_intransitivity():
    ex0 = make_ex0()
    assert ex0.compare((2, 1, 1), (0, 2, 2)) is FIRST
    assert ex0.compare((0.25, 2, 2), (2, 1, 1)) is FIRST
    # shared zero: sums
    assert ex0.compare((0, 3, 1), (0, 1, 2)) is FIRST
    a, b, c = (5, 0, 5), (0, 5, 5), (1, 0, 1)
    assert ex0.compare(a, b) is INDIFFERENT and ex0.compare(b, c) is INDIFFERENT
    assert ex0.compare(a, c) is FIRST
    assert not ex0.declared_transitive


def test_ex01_rules():
    ex01 = make_ex01()
    assert ex01.compare((1, 1, 0), (0, 2, 0)) is FIRST
    # shared zero in attribute 3, min over {1,2}: a positive min beats a zero min
    assert ex01.compare((0, 9, 0), (1, 1, 0)) is SECOND
    assert ex01.compare((1, 1, 0), (0, 2.5, 0)) is FIRST
    # no shared zero: total sums
    assert ex01.compare((1, 2, 3), (3, 3, 0)) is INDIFFERENT
    assert ex01.compare((1, 2, 3), (3, 2, 0)) is FIRST


def test_semiorder_cycle():
    o = make_lex_semiorder(1.0)
    a, b, c = (1, 3), (1.5, 2), (2.5, 1)
    assert o.compare(a, b) is FIRST
    assert o.compare(b, c) is FIRST
    assert o.compare(c, a) is FIRST
    assert o.compare((1, 2), (1.5, 2)) is SECOND
    with pytest.raises(SpecError):
        make_lex_semiorder(0)
    with pytest.raises(SpecError):
        make_lex_semiorder(1.0, (1, 2, 3))


def test_noncomparable_oracles():
    nci = make_noncomparable_indifferent(3)
    assert nci.compare((1, 2, 0), (2, 1, 0)) is INDIFFERENT
    assert nci.compare((2, 2, 0), (2, 1, 0)) is FIRST
    ncc = make_noncomparable_incomplete(3)
    assert ncc.compare((1, 2, 0), (2, 1, 0)) is INCOMPARABLE
    assert not ncc.declared_complete


@pytest.mark.parametrize("ident,name,dim", [
    ("lex:2,1,3", "lex:2,1,3", 3), ("leximax:3", "leximax:3", 3), ("ex2", "ex2", 3),
    ("dominant:1", "dominant:1", 3), ("dominant:2,n=4", "dominant:2,n=4", 4),
    ("perfsub:2", "perfsub:2", 2), ("minmul", "minmul", 3), ("ex0", "ex0", 3),
    ("ex01", "ex01", 3), ("cobb:0.5", "cobb:0.5", 2), ("semiorder:eps=1", "semiorder:eps=1", 2),
    ("semiorder:eps=0.5,order=2,1", "semiorder:eps=0.5,order=2,1", 2),
    ("ncindiff:3", "ncindiff:3", 3), ("ncincomplete:3", "ncincomplete:3", 3),
])
def test_parse_oracle_round_trip(ident, name, dim):
    o = parse_oracle(ident)
    assert o.name == name and o.dimension == dim
    assert parse_oracle(o.name).name == o.name


@pytest.mark.parametrize("ident", ["bogus", "lex:1,1", "lex:a", "leximax:x", "ex2:3", "cobb:2"])
def test_parse_oracle_errors(ident):
    with pytest.raises(SpecError):
        parse_oracle(ident)


def test_make_special_and_listing():
    assert make_special("semiorder", eps=2.0).name == "semiorder:eps=2"
    assert make_special("ncindiff", n=2).dimension == 2
    with pytest.raises(SpecError):
        make_special("nope")
    assert "ex2" in ZOO_IDS


def test_documented_instances_hold():
    # every attached probe must itself be true of its oracle
    lm = make_leximax(2)
    p = lm.probes["noncomp2"][0]
    assert lm.compare(p["x"], p["y"]) is FIRST and lm.compare(p["z"], p["w"]) is SECOND
    mm = make_min_multiplicative()
    p = mm.probes["independence"][0]
    assert mm.compare((p["xi"],) + p["fill"], (p["yi"],) + p["fill"]) is FIRST
    assert mm.compare((p["xi"],) + p["fill_alt"], (p["yi"],) + p["fill_alt"]) is INDIFFERENT
    ps = make_perfect_substitutes(3)
    assert len(ps.probes["imia"]) == 3
    assert make_dominant(1).probes == {}
