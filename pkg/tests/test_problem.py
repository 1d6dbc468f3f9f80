import json

import pytest
from hypothesis import given, settings

from eic.errors import ParseError, ValidationError
from eic.instances import clique3, cycle3, swap2
from eic.problem import (
    EicProblem,
    RequirementPair,
    from_side_info_digraph,
    is_single_unicast,
    parse,
    requirement_pairs,
    serialize,
    validate,
)

from strategies import digraphs, problems


def test_validate_clean_problem():
    assert validate(swap2()) == []


def test_validate_overlap():
    p = EicProblem.from_strings(has=["11", "10"], needs=["10", "01"])
    kinds = {(v.kind, v.location) for v in validate(p)}
    assert ("overlap", (0, 0)) in kinds


def test_validate_unsolvable_block():
    p = EicProblem.from_strings(has=["010", "100"], needs=["101", "010"])
    report = validate(p)
    assert [(v.kind, v.location) for v in report] == [("unsolvable", (2,))]


def test_requirement_pairs_order():
    assert requirement_pairs(swap2()) == [(0, 0), (1, 1)]
    p = EicProblem.from_strings(has=["001", "110"], needs=["110", "001"])
    assert requirement_pairs(p) == [RequirementPair(0, 0), RequirementPair(0, 1), RequirementPair(1, 2)]


def test_single_unicast_detection():
    assert is_single_unicast(swap2())
    shared = EicProblem.from_strings(has=["01", "01", "10"], needs=["10", "10", "01"])
    assert not is_single_unicast(shared)
    double = EicProblem.from_strings(has=["001", "110"], needs=["110", "001"])
    assert not is_single_unicast(double)


def test_from_side_info_digraph_examples():
    assert from_side_info_digraph(2, [(0, 1), (1, 0)]) == swap2()
    c3 = from_side_info_digraph(3, [(i, (i + 1) % 3) for i in range(3)])
    assert c3 == cycle3()
    assert c3.has.to_strings() == ["010", "001", "100"]
    assert from_side_info_digraph(3, [(i, j) for i in range(3) for j in range(3) if i != j]) == clique3()


def test_from_side_info_digraph_rejects_out_degree_zero():
    with pytest.raises(ValidationError) as err:
        from_side_info_digraph(3, [(0, 1), (1, 0)])
    assert err.value.violations[0].location == (2,)


def test_from_side_info_digraph_rejects_unheld_block():
    with pytest.raises(ValidationError, match="in-degree 0"):
        from_side_info_digraph(3, [(0, 1), (1, 0), (2, 0)])


def test_round_trip_swap2():
    text = serialize(swap2())
    assert text == '{"n":2,"m":2,"has":["01","10"],"needs":["10","01"]}'
    assert parse(text) == swap2()


def test_parse_rejects_overlap():
    text = json.dumps({"n": 2, "m": 2, "has": ["11", "10"], "needs": ["10", "01"]})
    with pytest.raises(ValidationError):
        parse(text)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"n": 2, "m": 2, "has": ["011", "10"], "needs": ["10", "01"]}, "has"),
        ({"n": 2, "m": 2, "has": ["01"], "needs": ["10", "01"]}, "has"),
        ({"n": 2, "m": 2, "has": ["01", "10"], "needs": ["1x", "01"]}, "needs"),
        ({"n": "2", "m": 2, "has": ["01", "10"], "needs": ["10", "01"]}, "n"),
    ],
)
def test_parse_errors_name_the_field(doc, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse(json.dumps(doc))


def test_parse_reports_json_position():
    with pytest.raises(ParseError, match="line 2"):
        parse('{"n": 2,\n "m": }')


@settings(max_examples=200)
@given(problems(max_n=5, max_m=5))
def test_serialize_parse_identity(p):
    assert parse(serialize(p)) == p
    assert len(requirement_pairs(p)) == sum(bin(r).count("1") for r in p.needs.rows)
    assert requirement_pairs(p) == sorted(requirement_pairs(p))


@settings(max_examples=200)
@given(digraphs(max_k=6))
def test_digraph_conversion_is_single_unicast(g):
    assert is_single_unicast(from_side_info_digraph(*g))
