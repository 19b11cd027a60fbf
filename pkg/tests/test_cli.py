import io
import json

import pytest

from yangbaxter_hub.cli.interface import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, run
from yangbaxter_hub.core.solution import validate
from yangbaxter_hub.infra.catalog import parse_many, to_solution, verify_hash
from yangbaxter_hub.infra.store import StoreManager

SHIFT3 = "YBX/1 solution sha256\nn=3\n1 2 0\n1 2 0\n1 2 0\n"
NOT_A_SOLUTION = "YBX/1 solution sha256\nn=2\n1 0\n0 1\n"


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    """Логи пишутся во временный каталог."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestValidate:
    def test_valid_solution(self, workdir, capsys):
        code = run(["validate", _write(workdir / "s.ybx", SHIFT3)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "involutive non-degenerate: yes" in out
        assert "braid relation: yes" in out

    def test_invalid_solution(self, workdir, capsys):
        code = run(["validate", _write(workdir / "bad.ybx", NOT_A_SOLUTION)])
        assert code == EXIT_FAILURE
        assert ": no" in capsys.readouterr().out

    def test_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO(SHIFT3))
        assert run(["validate"]) == EXIT_OK
        assert "braid relation: yes" in capsys.readouterr().out

    def test_example_output_validates(self, monkeypatch, capsys):
        assert run(["examples", "--name", "dihedral6"]) == EXIT_OK
        monkeypatch.setattr("sys.stdin", io.StringIO(capsys.readouterr().out))
        assert run(["validate"]) == EXIT_OK

    def test_parse_error(self, workdir, capsys):
        code = run(["validate", _write(workdir / "x.ybx", "YBX/1 solution sha256\nn=2\n0 1\n1 x\n")])
        assert code == EXIT_USAGE
        assert "строке 4, столбце 3" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        assert run(["validate", "nowhere.ybx"]) == EXIT_USAGE


class TestInvariants:
    def test_json(self, workdir, capsys):
        run(["examples", "--name", "size4-d8"])
        text = capsys.readouterr().out
        code = run(["invariants", "--json", _write(workdir / "d8.ybx", text)])
        data = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert data["group"] == "D8"
        assert data["class_direct"] == 2
        assert data["mpl"] == "none"

    def test_table(self, workdir, capsys):
        assert run(["invariants", _write(workdir / "s.ybx", SHIFT3)]) == EXIT_OK
        assert "class_direct" in capsys.readouterr().out

    def test_rejects_non_solution(self, workdir):
        assert run(["invariants", _write(workdir / "bad.ybx", NOT_A_SOLUTION)]) == EXIT_FAILURE


class TestConstruct:
    def test_from_brace(self, capsys):
        assert run(["construct", "--brace", "sd:triv3,triv2,inv"]) == EXIT_OK
        records = parse_many(capsys.readouterr().out)
        s = to_solution(records[0])
        assert s.n == 6
        assert validate(s).ok
        assert records[0].invariants["group"] == "D6"

    def test_bad_orbit(self):
        assert run(["construct", "--brace", "sd:triv3,triv2,inv", "--a", "2"]) == EXIT_FAILURE

    def test_bad_spec(self):
        assert run(["construct", "--brace", "sd:triv3"]) == EXIT_USAGE

    def test_requires_input(self):
        assert run(["construct"]) == EXIT_USAGE


class TestEnumerate:
    def test_braces_json(self, capsys):
        assert run(["enumerate-braces", "--order", "4", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert len(data["braces"]) == 4
        assert data["skipped"] == []

    def test_braces_table(self, capsys):
        assert run(["enumerate-braces", "--order", "6"]) == EXIT_OK
        assert "Скобы порядка 6: 2" in capsys.readouterr().out

    def test_order_bound(self):
        assert run(["enumerate-braces", "--order", "40"]) == EXIT_USAGE

    def test_solutions_to_store(self, workdir, capsys):
        store_dir = str(workdir / "catalog")
        code = run(["enumerate-solutions", "--brace", "sd:triv3,triv2,inv", "--store", store_dir])
        assert code == EXIT_OK
        assert len(parse_many(capsys.readouterr().out)) == 1
        assert StoreManager(store_dir).count("solution") == 1


class TestCensus:
    def test_summary(self, capsys):
        assert run(["census", "--n", "3"]) == EXIT_OK
        assert "Решений размера 3: 5, неразложимых: 1" in capsys.readouterr().out

    def test_store_and_query(self, workdir):
        store_dir = str(workdir / "catalog")
        assert run(["census", "--n", "4", "--store", store_dir]) == EXIT_OK
        store = StoreManager(store_dir)
        assert store.count("solution") == 23
        assert len(store.query("solution", indecomposable="true", group="D8")) == 2
        assert store.count("census") == 1

    def test_store_from_environment(self, workdir, monkeypatch):
        monkeypatch.setenv("YBX_STORE_DIR", str(workdir / "env_catalog"))
        assert run(["census", "--n", "3", "--store"]) == EXIT_OK
        store = StoreManager(str(workdir / "env_catalog"))
        assert store.count("solution") == 5
        assert store.count("census") == 1

    def test_without_store_nothing_is_written(self, workdir, monkeypatch):
        monkeypatch.setenv("YBX_STORE_DIR", str(workdir / "env_catalog"))
        assert run(["census", "--n", "3"]) == EXIT_OK
        assert not (workdir / "env_catalog").exists()

    def test_long_run_stores_summary(self, workdir):
        store_dir = str(workdir / "catalog")
        assert run(["census", "--n", "3", "--long", "--store", store_dir]) == EXIT_OK
        assert run(["census", "--n", "4", "--long", "--store", store_dir]) == EXIT_OK
        store = StoreManager(store_dir)
        assert store.count("solution") == 5 + 23
        summaries = {record.size: record for record in store.query("census")}
        assert sorted(summaries) == [3, 4]
        assert summaries[4].invariants["total"] == "23"
        assert summaries[4].invariants["violations"] == "0"
        assert summaries[4].sections == []
        assert verify_hash(summaries[4])

    @pytest.mark.slow
    def test_long_run_size_five(self, workdir):
        store_dir = str(workdir / "catalog")
        assert run(["census", "--n", "5", "--long", "--store", store_dir]) == EXIT_OK
        store = StoreManager(store_dir)
        assert store.count("solution") == 88
        assert store.query("census", n=5)[0].invariants["total"] == "88"

    def test_bound(self):
        assert run(["census", "--n", "7"]) == EXIT_USAGE

    def test_check_conjectures(self, capsys):
        assert run(["check-conjectures", "--n", "4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "class_agreement" in out
        assert "dixon" in out

    def test_check_conjectures_json(self, capsys):
        assert run(["check-conjectures", "--n", "3", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["checked"] == 5
        assert data["violations"] == {}


class TestExamples:
    def test_list(self, capsys):
        assert run(["examples"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "size4-d8" in out
        assert "mnc21" in out

    def test_unknown(self, capsys):
        assert run(["examples", "--name", "nope"]) == EXIT_USAGE
        assert "Неизвестный пример 'nope'" in capsys.readouterr().out


def test_no_command():
    assert run([]) == EXIT_USAGE


def test_missing_required_argument():
    assert run(["census"]) == EXIT_USAGE
