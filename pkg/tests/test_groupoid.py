from __future__ import annotations

import pytest

from semiplanar import catalog
from semiplanar.groupoid import (ConflictingConstraint, EmptySubset, MalformedLine, PartialGroupoid,
                                 SpecError, UnknownElement, closure_pairs, from_spec,
                                 is_weak_subgroupoid, parse_spec, parse_specs, render_spec, restrict,
                                 spec_from_json, spec_to_json)

SQUARE = """Square with a top
|A|=4, A(without commas)={0abi}. Constraints:
a+b=i ; the only incomparable pair
Result for A=Square:  |Sub(A)| = 14, whence
sigma(A) = |Sub(A)|*2^(8-|A|) =  224.0000000000000000 .
"""


def test_parse_square_block():
    spec = parse_spec(SQUARE)
    assert spec.name == "Square"
    assert spec.elements == ("0", "a", "b", "i")
    assert spec.constraints == (("a", "+", "b", "i"),)
    assert spec.comments == ("the only incomparable pair",)
    assert spec.expected_sub == 14 and spec.expected_sigma == "224.0000000000000000"
    g = from_spec(spec)
    assert g.op(2, 1) == 3 and g.op(0, 1) is None


def test_at_sign_is_the_same_operation():
    spec = parse_spec("|A|=3, A(without commas)={abc}. Constraints:\na@b=c\n")
    assert from_spec(spec).op(0, 1) == 2


def test_unknown_element_reports_line():
    with pytest.raises(UnknownElement) as exc:
        parse_spec("name\n|A|=3, A(without commas)={abc}. Constraints:\na+b=c a+x=c\n")
    assert exc.value.char == "x" and exc.value.lineno == 3


def test_conflicting_constraint():
    with pytest.raises(ConflictingConstraint) as exc:
        parse_spec("|A|=3, A(without commas)={abc}. Constraints:\na+b=c\nb+a=a\n")
    assert exc.value.lineno == 3


def test_repeated_identical_constraint_is_kept_once():
    spec = parse_spec("|A|=3, A(without commas)={abc}. Constraints:\na+b=c b+a=c\n")
    assert len(spec.constraints) == 1


@pytest.mark.parametrize("bad", [
    "|A|=3, A(without commas)={abc}. Constraints:\na+b=c a+bc\n",
    "|A|=3, A(without commas)={aab}. Constraints:\n",
    "|A|=3, A(without commas)=abc. Constraints:\n",
    "a+b=c\n|A|=3, A(without commas)={abc}. Constraints:\n",
])
def test_malformed_lines(bad):
    with pytest.raises(MalformedLine):
        parse_spec(bad)


def test_no_element_line():
    with pytest.raises(SpecError):
        parse_spec("just prose\n")


def test_appendix_has_23_blocks_with_results():
    specs = parse_specs(catalog.appendix_text())
    assert len(specs) == 23
    assert all(s.expected_sub is not None and s.expected_sigma is not None for s in specs)
    names = [s.name for s in specs]
    assert "9-element up-fence & i; Case 1" in names


def test_render_round_trips_every_appendix_block():
    for spec in parse_specs(catalog.appendix_text()):
        again = parse_spec(render_spec(spec))
        assert again == spec


def test_json_round_trip_and_errors():
    spec = parse_spec(SQUARE)
    back = spec_from_json(spec_to_json(spec))
    assert back.elements == spec.elements and back.constraints == spec.constraints
    with pytest.raises(SpecError):
        spec_from_json('{"elements": ["a"], "constraints": [["a", "*", "a", "a"]]}')
    with pytest.raises(UnknownElement):
        spec_from_json('{"elements": ["a"], "constraints": [["a", "+", "a", "z"]]}')


def test_groupoid_normalises_keys_and_detects_conflicts():
    g = PartialGroupoid(3, {(2, 1): 0})
    assert g.ops == {(1, 2): 0} and g.op(2, 1) == 0
    with pytest.raises(ConflictingConstraint):
        PartialGroupoid(3, {(0, 1): 2, (1, 0): 1})
    with pytest.raises(ValueError):
        PartialGroupoid(2, {(0, 1): 5})


def test_restrict_keeps_closed_constraints_only():
    g = PartialGroupoid(4, {(0, 1): 2, (0, 3): 1, (2, 3): 3})
    r = restrict(g, [0, 1, 3])
    assert r.ops == {(0, 2): 1}
    assert is_weak_subgroupoid(r, g, [0, 1, 3])
    with pytest.raises(EmptySubset):
        restrict(g, [])


def test_weak_subgroupoid_detects_disagreement():
    big = PartialGroupoid(3, {(0, 1): 2})
    small = PartialGroupoid(2, {(0, 1): 1})
    assert not is_weak_subgroupoid(small, big, [0, 1])
    with pytest.raises(ValueError):
        is_weak_subgroupoid(small, big, [0, 0])


def test_closure_pairs_skip_trivial_results():
    g = PartialGroupoid(3, {(0, 1): 1, (0, 2): 1, (1, 1): 1})
    assert closure_pairs(g) == [(0b101, 0b010)]
