import pytest

from yangbaxter_hub.core.census import enumerate_solutions
from yangbaxter_hub.core.exceptions import IntegrityError
from yangbaxter_hub.core.perm import Permutation
from yangbaxter_hub.core.solution import Solution, shift_solution, trivial_solution
from yangbaxter_hub.infra.catalog import (
    CatalogRecord,
    brace_record,
    census_record,
    solution_hash,
    solution_record,
)


def test_empty_store(store):
    assert store.query() == []
    assert store.count("solution") == 0
    assert store.get("solution", "0" * 64) is None


def test_put_and_get(store, size4_d8):
    key = store.put(solution_record(size4_d8, {"group": "D8"}))
    assert key == solution_hash(size4_d8)
    record = store.get("solution", key)
    assert record.invariants == {"group": "D8"}
    assert (store.store_dir / "solution" / f"{key}.ybx").exists()


def test_hash_computed_when_missing(store, size4_d8):
    key = store.put(CatalogRecord("solution", 4, [size4_d8.sigma]))
    assert key == solution_hash(size4_d8)


def test_same_class_merges_invariants(store, size4_d8):
    key = store.put(solution_record(size4_d8, {"group": "D8"}))
    store.put(solution_record(size4_d8, {"class_direct": 2, "group": "ignored"}))
    record = store.get("solution", key)
    assert record.invariants == {"group": "D8", "class_direct": "2"}
    assert store.count("solution") == 1


def test_integrity_error(store):
    shift = shift_solution(Permutation([1, 2, 0]))
    key = store.put(solution_record(shift))
    forged = solution_record(trivial_solution(3))
    forged.canonical_hash = key
    with pytest.raises(IntegrityError):
        store.put(forged)


def test_query_filters(store, size4_d8, dihedral_brace):
    store.put(solution_record(size4_d8, {"indecomposable": True, "group": "D8"}))
    store.put(solution_record(trivial_solution(4), {"indecomposable": False, "group": "C1"}))
    store.put(brace_record(dihedral_brace, {"multiplicative": "D6"}))
    assert len(store.query("solution")) == 2
    assert len(store.query("solution", indecomposable=True)) == 1
    assert len(store.query(n=4)) == 2
    assert len(store.query(kind="brace", m=6)) == 1
    assert store.query("brace", name="sd:triv3,triv2,inv")[0].size == 6


def test_unreadable_records_are_skipped(store, size4_d8):
    store.put(solution_record(size4_d8))
    broken = store.store_dir / "solution" / "broken.ybx"
    broken.write_text("not a record\n", encoding="utf-8")
    assert store.count("solution") == 1


def test_census_query(store):
    report = enumerate_solutions(4)
    for table, info in report.per_solution:
        store.put(solution_record(Solution(table), info))
    store.put(census_record(report))
    assert store.count("solution") == 23
    assert len(store.query("solution", indecomposable="true", group="D8")) == 2
    census = store.query("census", n=4)
    assert census[0].invariants["total"] == "23"
