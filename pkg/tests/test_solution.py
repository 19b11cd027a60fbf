import random

import pytest

from yangbaxter_hub.core.exceptions import BoundExceededError, TableFormatError
from yangbaxter_hub.core.fixtures import get_fixture, list_fixtures
from yangbaxter_hub.core.perm import Permutation
from yangbaxter_hub.core.permbrace import invariants
from yangbaxter_hub.core.solution import (
    NOT_MULTIPERMUTATION,
    Solution,
    dehornoy_class_direct,
    is_indecomposable,
    is_uniconnected,
    isomorphic,
    multipermutation_level,
    omega,
    relabel,
    retraction,
    shift_solution,
    tau_variant_report,
    trivial_solution,
    validate,
)

FAST_FIXTURES = ["size4-d8", "size8-uniconnected", "shift4", "trivial3", "dihedral6"]
SLOW_FIXTURES = ["mnc12a", "mnc12b", "mnc21"]


def _check_expected(name):
    s, expected = get_fixture(name)
    assert validate(s).ok
    report = invariants(s)
    for key, value in expected.items():
        assert report[key] == value, key


@pytest.mark.parametrize("name", FAST_FIXTURES)
def test_fixture_invariants(name):
    _check_expected(name)


@pytest.mark.slow
@pytest.mark.parametrize("name", SLOW_FIXTURES)
def test_fixture_invariants_large(name):
    _check_expected(name)


@pytest.mark.parametrize(
    "name", FAST_FIXTURES + [pytest.param(n, marks=pytest.mark.slow) for n in SLOW_FIXTURES]
)
def test_fixture_validates_with_x_formula_only(name):
    s, _ = get_fixture(name)
    assert tau_variant_report(s.sigma) == {"x": True, "y": False}


def test_every_fixture_is_covered():
    names = {f.name for f in list_fixtures()}
    assert names == set(FAST_FIXTURES) | set(SLOW_FIXTURES)


class TestValidate:
    def test_trivial_and_shift_are_solutions(self):
        assert validate(trivial_solution(4)).ok
        assert validate(shift_solution(Permutation.parse_cycles(5, "(1 2)(3 4 5)"))).ok

    def test_degenerate_row(self):
        report = validate(Solution([[0, 0], [0, 1]]))
        assert not report.nondegenerate
        assert report.witnesses["nondegenerate"] == ("sigma", 0)
        assert not report.ok

    def test_bijective_rows_that_fail(self):
        # σ_0 = (1 2), σ_1 = id не удовлетворяет уравнению
        report = validate(Solution([[1, 0], [0, 1]]))
        assert not report.ok

    def test_short_row(self):
        with pytest.raises(TableFormatError) as info:
            Solution([[0, 1], [0]])
        assert info.value.row == 1

    def test_value_out_of_range(self):
        with pytest.raises(TableFormatError) as info:
            Solution([[0, 1], [5, 0]])
        assert (info.value.row, info.value.column) == (1, 0)

    def test_empty_table(self):
        with pytest.raises(TableFormatError):
            Solution([])


class TestStructure:
    def test_size4_is_not_multipermutation(self, size4_d8):
        assert is_indecomposable(size4_d8)
        assert not is_uniconnected(size4_d8)
        assert multipermutation_level(size4_d8) is NOT_MULTIPERMUTATION
        assert dehornoy_class_direct(size4_d8) == 2

    def test_size8_retraction_is_smaller_and_not_uniconnected(self, size8_uniconnected):
        assert is_uniconnected(size8_uniconnected)
        retracted, class_map = retraction(size8_uniconnected)
        assert retracted.n == 4
        assert len(class_map) == 8
        assert validate(retracted).ok
        assert not is_uniconnected(retracted)

    def test_shift_level_and_class(self):
        s = shift_solution(Permutation.parse_cycles(6, "(1 2 3)(4 5)"))
        assert multipermutation_level(s) == 1
        assert dehornoy_class_direct(s) == 6
        assert not is_indecomposable(s)

    def test_omega_base_cases(self, size4_d8):
        for x in range(4):
            assert omega(size4_d8, (x,)) == x
            for y in range(4):
                assert omega(size4_d8, (x, y)) == size4_d8.dot[x][y]

    def test_omega_at_class_returns_last_argument(self, size4_d8):
        d = dehornoy_class_direct(size4_d8)
        for x in range(4):
            for y in range(4):
                assert omega(size4_d8, (x,) * d + (y,)) == y


class TestIsomorphism:
    def test_relabeled_copy_is_isomorphic(self, size8_uniconnected):
        f = list(range(8))
        random.Random(3).shuffle(f)
        copy = relabel(size8_uniconnected, f)
        assert validate(copy).ok
        iso = isomorphic(size8_uniconnected, copy)
        assert iso is not None
        assert relabel(size8_uniconnected, iso) == copy

    def test_different_groups_are_not_isomorphic(self, size4_d8):
        shift, _ = get_fixture("shift4")
        assert isomorphic(size4_d8, shift) is None

    def test_bound(self, size4_d8):
        with pytest.raises(BoundExceededError):
            isomorphic(size4_d8, size4_d8, bound=2)
