import pytest
from hypothesis import given, settings, strategies as st

from lexpref.core import (FIRST, INDIFFERENT, SECOND, Outcome, alternative, attribute_subset,
                          compare, embed, induce, sign_pattern, strict_sets, totally_different)
from lexpref.errors import DimensionError, SubsetError
from lexpref.zoo import all_zoo, make_dominant, make_lexicographic, make_pairwise_lex_ex2

levels = st.sampled_from([0.0, 0.5, 1.0, 2.0, 3.0, 4.0])


def points(n):
    return st.tuples(*[levels] * n)


def test_compare_examples():
    lex = make_lexicographic((1, 2, 3))
    assert compare(lex, (1, 0, 0), (0, 9, 9)) is FIRST
    assert compare(lex, (2, 3, 1), (2, 3, 1)) is INDIFFERENT
    assert compare(make_pairwise_lex_ex2(), (0, 6, 1), (0, 4, 8)) is FIRST


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionError):
        compare(make_lexicographic((1, 2)), (1, 2, 3), (1, 2))


def test_outcome_values_and_flip():
    assert [o.value for o in Outcome] == ["FirstStrict", "SecondStrict", "Indifferent",
                                          "Incomparable"]
    assert FIRST.flipped() is SECOND and INDIFFERENT.flipped() is INDIFFERENT


def test_alternative_rejects_negative():
    with pytest.raises(ValueError):
        alternative((1, -0.5))
    assert alternative([1, 2]) == (1.0, 2.0)


def test_totally_different_examples():
    assert totally_different((2, 1, 1), (0, 2, 2))
    assert not totally_different((1, 2), (1, 3))
    assert totally_different((4, 2), (1, 4))
    with pytest.raises(DimensionError):
        totally_different((1,), (1, 2))


def test_strict_sets_examples():
    assert strict_sets((0, 6, 1), (0, 4, 8)) == ({2}, {3}, {1})
    assert strict_sets((1, 1), (1, 1)) == (set(), set(), {1, 2})
    assert strict_sets((4, 2), (1, 4)) == ({1}, {2}, set())


def test_induce_examples():
    assert induce(make_lexicographic((1, 2, 3)), (2, 3)).compare((5, 1), (4, 9)) is FIRST
    assert induce(make_pairwise_lex_ex2(), (2, 3)).compare((6, 1), (4, 8)) is FIRST
    dom23 = induce(make_dominant(1), (2, 3))
    assert dom23.compare((0, 0), (7, 3)) is INDIFFERENT
    assert dom23.name == "dominant:1|{2,3}"


def test_induce_bad_subset():
    with pytest.raises(SubsetError):
        induce(make_lexicographic((1, 2, 3)), (0, 1))
    with pytest.raises(SubsetError):
        attribute_subset([], 3)
    with pytest.raises(SubsetError):
        attribute_subset([1, 1], 3)


def test_embed_fill():
    assert embed((6, 4), (2, 3), 3) == (0, 6, 4)
    assert embed((6, 4), (2, 3), 3, (1,)) == (1, 6, 4)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(all_zoo()), st.data())
def test_antisymmetry_and_reflexivity(oracle, data):
    x = data.draw(points(oracle.dimension))
    y = data.draw(points(oracle.dimension))
    assert oracle.compare(x, y) is oracle.compare(y, x).flipped()
    assert oracle.compare(x, x) is INDIFFERENT
    assert oracle.compare(x, y) is oracle.compare(x, y)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([o for o in all_zoo() if o.dimension == 3]),
       st.sampled_from([(1, 2), (1, 3), (2, 3)]), points(2), points(2))
def test_induced_delegation(oracle, s, a, b):
    assert induce(oracle, s).compare(a, b) is oracle.compare(embed(a, s, 3), embed(b, s, 3))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(all_zoo()), st.data())
def test_induce_full_set_is_identity(oracle, data):
    full = induce(oracle, range(1, oracle.dimension + 1))
    x = data.draw(points(oracle.dimension))
    y = data.draw(points(oracle.dimension))
    assert full.compare(x, y) is oracle.compare(x, y)


@given(points(4), points(4))
def test_strict_sets_partition(x, y):
    a, b, e = strict_sets(x, y)
    assert a | b | e == {1, 2, 3, 4}
    assert not (a & b or a & e or b & e)
    assert sign_pattern(x, y) == tuple(1 if i in a else -1 if i in b else 0 for i in (1, 2, 3, 4))
