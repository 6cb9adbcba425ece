import itertools

import pytest
from hypothesis import given, settings, strategies as st

from lexpref.choicedata import (DOMINANT, HIGHER, INCONSISTENT, LEX_CONSISTENT, LOWER,
                                AttributeSchema, ChoiceObservation, RespondentRecord, audit,
                                consistent_orders, detect_dominant_behavior, lex_consistency,
                                load_choices, parse_schema, simulate_lexicographic,
                                write_choices)
from lexpref.core import FIRST
from lexpref.errors import DimensionTooLarge, ParseError, SchemaMismatch
from lexpref.zoo import make_lexicographic

HEADER = "respondent_id,choice_set_id,alternative_id,chosen"


def record(rid, *choices):
    """choices: (chosen_alt, other_alt, ...) with the chosen one first."""
    return RespondentRecord(rid, tuple(ChoiceObservation(tuple(c), 0, str(k))
                                       for k, c in enumerate(choices)))


def write(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


# -- schema and loading

def test_parse_schema():
    s = parse_schema("# phones\nprice = lower\nstorage=higher\ncamera=HigherBetter\n")
    assert s.names == ("price", "storage", "camera")
    assert s.orientation == (LOWER, HIGHER, HIGHER)
    with pytest.raises(ParseError) as exc:
        parse_schema("a=higher\nb=sideways\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_schema("a=higher\na=lower\n")
    with pytest.raises(SchemaMismatch):
        AttributeSchema(("a",), ("Upward",))


def test_load_two_rows(tmp_path):
    p = write(tmp_path, f"{HEADER},a,b\nr1,1,1,1,2,1\nr1,1,2,0,1,9\n")
    recs = load_choices(p, parse_schema("a=higher\nb=higher"))
    assert len(recs) == 1 and len(recs[0].observations) == 1
    obs = recs[0].observations[0]
    assert obs.choice_set == ((2, 1), (1, 9)) and obs.chosen == 0


def test_load_smartphones_reflects_price(tmp_path):
    p = write(tmp_path, f"{HEADER},price,storage,camera\n"
                        "p,1,A,1,479.99,64,48\np,1,B,0,599.99,128,64\n")
    schema = parse_schema("price=lower\nstorage=higher\ncamera=higher")
    (rec,) = load_choices(p, schema)
    a, b = rec.observations[0].choice_set
    assert a == (pytest.approx(120.0), 64, 48)
    assert b == (0.0, 128, 64)
    assert min(a + b) >= 0


@pytest.mark.parametrize("body,line", [
    ("r1,1,1,1,-1,2\nr1,1,2,0,1,1\n", 2),
    ("r1,1,1,1,1,2\nr1,1,2,0,x,1\n", 3),
    ("r1,1,1,2,1,2\n", 2),
    ("r1,1,1,1,1\n", 2),
    ("r1,1,1,1,1,2\nr1,1,2,1,2,1\n", 2),
    ("r1,1,1,1,1,2\n", 2),
])
def test_load_parse_errors(tmp_path, body, line):
    p = write(tmp_path, f"{HEADER},a,b\n{body}")
    with pytest.raises(ParseError) as exc:
        load_choices(p, parse_schema("a=higher\nb=higher"))
    assert exc.value.line == line


def test_load_header_errors(tmp_path):
    schema = parse_schema("a=higher\nb=higher")
    with pytest.raises(ParseError):
        load_choices(write(tmp_path, ""), schema)
    with pytest.raises(ParseError):
        load_choices(write(tmp_path, "id,set,alt,chosen,a,b\n"), schema)
    with pytest.raises(SchemaMismatch):
        load_choices(write(tmp_path, f"{HEADER},a,c\n"), schema)


def test_load_empty_body(tmp_path):
    assert load_choices(write(tmp_path, f"{HEADER},a,b\n"), parse_schema("a=higher\nb=higher")) == []


def test_records_sorted_by_id(tmp_path):
    p = write(tmp_path, f"{HEADER},a\nz,1,1,1,2\nz,1,2,0,1\na,1,1,1,2\na,1,2,0,1\n")
    assert [r.id for r in load_choices(p, parse_schema("a=higher"))] == ["a", "z"]


# -- classification

def test_lex_consistent_single_order():
    rec = record("r", ((2, 1), (1, 9)), ((2, 5), (2, 4)))
    v = lex_consistency(rec)
    assert v.label == LEX_CONSISTENT and v.orders == ((1, 2),)


def test_inconsistent():
    rec = record("r", ((1, 2), (2, 1)), ((2, 1), (1, 2)))
    assert lex_consistency(rec).label == INCONSISTENT


def test_dominant_without_surviving_order():
    # attribute 3 always maximal, ties on 3 broken against every order
    rec = record("r", ((0, 0, 5), (9, 9, 1)),
                 ((1, 0, 5), (0, 1, 5)), ((0, 1, 5), (1, 0, 5)))
    v = lex_consistency(rec)
    assert v.label == DOMINANT and v.dominant == 3 and v.orders == ()
    assert v.to_dict()["class"] == "Dominant(3)"


def test_dominant_and_lex_ambiguous():
    rec = record("r", ((0, 0, 5), (9, 9, 1)), ((3, 0, 4), (0, 7, 2)))
    v = lex_consistency(rec)
    assert v.label == LEX_CONSISTENT and v.ambiguous and v.dominant == 3
    assert all(o[0] == 3 for o in v.orders)


def test_detect_dominant_behavior():
    assert detect_dominant_behavior(record("r", ((3, 0), (1, 5)), ((2, 0), (0, 9)))) == 1
    assert detect_dominant_behavior(record("r", ((3, 2), (3, 1)), ((5, 0), (1, 5)))) is None
    assert detect_dominant_behavior(record("r", ((3, 0), (1, 5)), ((0, 9), (2, 0)))) is None


def test_two_orders_when_attributes_never_discriminate():
    rec = record("r", ((3, 1, 1), (2, 5, 5)), ((2, 4, 4), (1, 9, 9)))
    v = lex_consistency(rec)
    assert v.orders == ((1, 2, 3), (1, 3, 2))


def test_duplicate_profile_is_not_a_violation():
    rec = record("r", ((2, 1), (2, 1), (1, 5)))
    assert consistent_orders(rec) == [(1, 2)]


def test_dimension_too_large():
    rec = record("r", (tuple(range(9)), tuple(range(9))[::-1]))
    with pytest.raises(DimensionTooLarge):
        consistent_orders(rec)


def test_audit_counts():
    recs = [record("c", ((1, 2), (2, 1)), ((2, 1), (1, 2))),
            record("a", ((2, 1), (1, 9))),
            record("b", ((0, 0, 5), (9, 9, 1)), ((1, 0, 5), (0, 1, 5)), ((0, 1, 5), (1, 0, 5)))]
    rep = audit(recs)
    assert [r.id for r in rep.respondents] == ["a", "b", "c"]
    s = rep.to_dict()["summary"]
    assert (s["lex_consistent"], s["dominant"], s["inconsistent"]) == (1, 1, 1)
    assert s["fraction_lex_consistent"] == pytest.approx(1 / 3, abs=1e-6)


def test_audit_empty():
    s = audit([]).to_dict()["summary"]
    assert s["respondents"] == 0 and s["fraction_lex_consistent"] == 0.0


# -- properties

@settings(max_examples=30, deadline=None)
@given(st.permutations([1, 2, 3, 4]), st.integers(0, 10_000))
def test_completeness_and_soundness(order, seed):
    recs = simulate_lexicographic(order, 3, 6, seed=seed)
    for rec in recs:
        v = lex_consistency(rec)
        assert v.label == LEX_CONSISTENT and tuple(order) in v.orders
        for sigma in v.orders:
            lex = make_lexicographic(sigma)
            for o in rec.observations:
                chosen = o.choice_set[o.chosen]
                assert all(lex.compare(chosen, a) is FIRST
                           for k, a in enumerate(o.choice_set) if k != o.chosen)


@settings(max_examples=15, deadline=None)
@given(st.permutations([1, 2, 3]), st.integers(0, 1000), st.integers(0, 2))
def test_orientation_invariance(tmp_path_factory, order, seed, col):
    tmp = tmp_path_factory.mktemp("orient")
    names = ("a", "b", "c")
    recs = simulate_lexicographic(order, 4, 5, seed=seed)
    write_choices(tmp / "up.csv", recs, names)
    top = 4.0
    flipped = [RespondentRecord(r.id, tuple(
        ChoiceObservation(tuple(tuple(top - v if k == col else v for k, v in enumerate(alt))
                                for alt in o.choice_set), o.chosen, o.set_id)
        for o in r.observations)) for r in recs]
    write_choices(tmp / "down.csv", flipped, names)
    up = parse_schema("a=higher\nb=higher\nc=higher")
    down = AttributeSchema(names, tuple(LOWER if k == col else HIGHER for k in range(3)))
    a = audit(load_choices(tmp / "up.csv", up), up).to_dict()
    b = audit(load_choices(tmp / "down.csv", down), down).to_dict()
    assert a == b


def test_simulation_is_deterministic(tmp_path):
    a = simulate_lexicographic((2, 1), 2, 3, seed=5)
    assert a == simulate_lexicographic((2, 1), 2, 3, seed=5)
    write_choices(tmp_path / "s.csv", a, ("x", "y"))
    assert load_choices(tmp_path / "s.csv", parse_schema("x=higher\ny=higher")) == a
