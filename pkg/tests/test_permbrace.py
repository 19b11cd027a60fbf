import pytest

from yangbaxter_hub.core.brace import enumerate_braces, validate_brace
from yangbaxter_hub.core.construct import enumerate_indecomposable
from yangbaxter_hub.core.exceptions import BoundExceededError, InvalidParameterError
from yangbaxter_hub.core.fixtures import get_fixture
from yangbaxter_hub.core.permbrace import (
    dehornoy_class_via_exponent,
    dehornoy_class_via_lcm,
    invariants,
    omega_closed_form_check,
    permutation_brace,
)
from yangbaxter_hub.core.solution import dehornoy_class_direct


@pytest.mark.parametrize(
    "name", ["size4-d8", "size8-uniconnected", "shift4", "trivial3", "dihedral6"]
)
def test_three_class_computations_agree(name):
    s, _ = get_fixture(name)
    d = dehornoy_class_direct(s)
    assert dehornoy_class_via_exponent(s) == d
    assert dehornoy_class_via_lcm(s) == d


def test_permutation_brace_is_a_brace(size8_uniconnected):
    pb = permutation_brace(size8_uniconnected)
    assert pb.brace.m == pb.group.order
    assert validate_brace(pb.brace).ok
    assert len(pb.generator_map) == 8


def test_addition_does_not_depend_on_traversal(size4_d8):
    base = permutation_brace(size4_d8).brace
    for seed in (1, 2, 3):
        assert permutation_brace(size4_d8, order_seed=seed).brace.add == base.add


def test_bound(size4_d8):
    with pytest.raises(BoundExceededError):
        permutation_brace(size4_d8, bound=4)


def test_closed_form_for_constructed_solutions():
    checked = 0
    for m in (4, 6):
        for b in enumerate_braces(m):
            for s in enumerate_indecomposable(b):
                assert omega_closed_form_check(s)
                checked += 1
    assert checked > 0


def test_closed_form_needs_provenance(size4_d8):
    with pytest.raises(InvalidParameterError):
        omega_closed_form_check(size4_d8)


def test_invariants_report(size4_d8):
    report = invariants(size4_d8)
    assert report["class_direct"] == report["class_exponent"] == report["class_lcm"] == 2
    assert report["additive_factors"] == (2, 2, 2)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["mnc12a", "mnc12b", "mnc21"])
def test_closed_form_on_larger_fixtures(name):
    s, _ = get_fixture(name)
    assert omega_closed_form_check(s)
    assert dehornoy_class_via_exponent(s) == dehornoy_class_direct(s)
