import pytest

from yangbaxter_hub.core.census import (
    a_n,
    audit_entry,
    canonical_form,
    canonical_key,
    census_oracle,
    dihedral_class_check,
    enumerate_solutions,
    fingerprint,
    g_n,
    relabel_randomly,
    stream_census,
)
from yangbaxter_hub.core.exceptions import BoundExceededError, InvalidParameterError
from yangbaxter_hub.core.solution import Solution, isomorphic, validate
from yangbaxter_hub.infra.settings import settings


@pytest.fixture(scope="module")
def census4():
    return enumerate_solutions(4)


class TestCanonicalForm:
    @pytest.mark.parametrize("seed", [1, 2, 3, 4])
    def test_invariant_under_relabeling(self, size4_d8, seed):
        assert canonical_form(relabel_randomly(size4_d8, seed)) == canonical_form(size4_d8)

    @pytest.mark.parametrize("seed", [5, 6])
    def test_invariant_under_relabeling_size8(self, size8_uniconnected, seed):
        copy = relabel_randomly(size8_uniconnected, seed)
        assert fingerprint(copy) == fingerprint(size8_uniconnected)
        assert canonical_form(copy) == canonical_form(size8_uniconnected)

    def test_canonical_form_is_isomorphic_solution(self, size4_d8):
        canon = Solution(canonical_form(size4_d8))
        assert validate(canon).ok
        assert isomorphic(canon, size4_d8) is not None

    def test_key_format(self, size4_d8):
        key = canonical_key(size4_d8)
        assert key.count("/") == 3
        assert all(len(row.split()) == 4 for row in key.split("/"))


class TestCensus:
    @pytest.mark.parametrize("n, total", [(1, 1), (2, 2), (3, 5)])
    def test_small_totals(self, n, total):
        assert enumerate_solutions(n).total == total

    def test_size_three_has_one_indecomposable(self):
        assert enumerate_solutions(3).indecomposable == 1

    def test_size_four(self, census4):
        assert census4.total == 23
        assert census4.indecomposable == 5
        assert len(census4.per_solution) == 23
        assert census4.violations == []

    def test_size_four_dihedral_solutions(self, census4):
        dihedral = [
            info for _, info in census4.per_solution
            if info["indecomposable"] and info["group"] == "D8"
        ]
        assert len(dihedral) == 2
        assert sorted(info["class_direct"] for info in dihedral) == [2, 4]
        elementary = [info for info in dihedral if info["additive_factors"] == (2, 2, 2)]
        assert [info["class_direct"] for info in elementary] == [2]

    def test_representatives_are_canonical_and_sorted(self, census4):
        tables = [table for table, _ in census4.per_solution]
        assert tables == sorted(tables)
        for table in tables:
            assert canonical_form(Solution(table)) == table

    @pytest.mark.slow
    @pytest.mark.parametrize("n, total, indecomposable", [(5, 88, None), (6, 595, 10)])
    def test_larger_totals(self, n, total, indecomposable):
        report = enumerate_solutions(n)
        assert report.total == total
        if indecomposable is not None:
            assert report.indecomposable == indecomposable
        assert report.violations == []

    def test_stream_census_does_not_accumulate(self):
        seen = []
        report = stream_census(3, lambda table, info: seen.append(table))
        assert report.total == 5
        assert report.per_solution == []
        assert len(seen) == 5

    def test_oracle_agrees(self):
        assert len(census_oracle(3)) == enumerate_solutions(3).total

    @pytest.mark.slow
    def test_oracle_agrees_size_four(self, census4):
        assert len(census_oracle(4)) == census4.total

    def test_bounds(self):
        with pytest.raises(BoundExceededError):
            enumerate_solutions(7)
        with pytest.raises(BoundExceededError):
            enumerate_solutions(9, long=True)
        with pytest.raises(InvalidParameterError):
            enumerate_solutions(0)
        with pytest.raises(BoundExceededError):
            census_oracle(5)


class TestAudit:
    def test_bound_functions(self):
        assert a_n(6) == 8
        assert g_n(6) == 6
        with pytest.raises(InvalidParameterError):
            g_n(0)

    def test_audit_entry_reports_each_rule(self):
        info = {
            "class_direct": 4,
            "group_order": 6,
            "indecomposable": True,
            "uniconnected": True,
            "group_abelian": False,
            "group_cyclic": False,
        }
        violations, notes = audit_entry(3, 0, info)
        assert {v.rule for v in violations} == {"a_n", "size", "divides", "squarefree_size"}
        assert notes == []

    def test_class_disagreement(self):
        info = {
            "class_direct": 2,
            "class_exponent": 4,
            "class_lcm": 2,
            "group_order": 8,
            "indecomposable": False,
            "uniconnected": False,
            "group_abelian": False,
            "group_cyclic": False,
        }
        violations, _ = audit_entry(4, 7, info)
        assert [v.rule for v in violations] == ["class_agreement"]
        assert violations[0].index == 7


class TestDihedral:
    def test_order_four(self):
        report = dihedral_class_check(2, 1)
        assert report.covered
        assert not report.in_scope
        assert all(row.ok for row in report.rows)
        assert {row.cyclic for row in report.rows} == {True, False}

    def test_order_six(self):
        report = dihedral_class_check(1, 3)
        assert len(report.rows) == 1
        assert report.rows[0].solution_class == 6
        assert report.rows[0].ok

    @pytest.mark.slow
    def test_order_sixteen(self):
        report = dihedral_class_check(4, 1)
        assert report.in_scope
        assert report.covered
        assert [row for row in report.rows if not row.ok] == []
        assert all(row.expected == (16 if row.cyclic else 8) for row in report.rows)
        assert (2, 2, 2, 2) in [factors for factors, _ in report.skipped]

    def test_skipped_additive_types(self, monkeypatch):
        monkeypatch.setitem(settings._config, "holomorph_bound", 10)
        report = dihedral_class_check(1, 3)
        assert not report.covered
        assert report.rows == []
        assert [factors for factors, _ in report.skipped] == [(6,)]
        assert all(size > 10 for _, size in report.skipped)

    def test_even_m(self):
        with pytest.raises(InvalidParameterError):
            dihedral_class_check(2, 4)


@pytest.mark.slow
def test_size_six_census_has_one_dihedral_uniconnected_solution():
    report = enumerate_solutions(6)
    dihedral = [
        info for _, info in report.per_solution
        if info["indecomposable"] and info["group"] == "D6"
    ]
    assert len(dihedral) == 1
    assert dihedral[0]["uniconnected"]
