"""Командный интерфейс приложения."""

import argparse
import json
import logging
import sys
from collections import Counter
from typing import Any, Dict, List, Optional

from prettytable import PrettyTable

from yangbaxter_hub.core.brace import (
    additive_invariant_factors,
    enumerate_braces_report,
    is_cyclic_brace,
    parse_brace_spec,
    socle,
    validate_brace,
)
from yangbaxter_hub.core.census import (
    a_n,
    audit_entry,
    enumerate_solutions,
    g_n,
    stream_census,
)
from yangbaxter_hub.core.construct import (
    IndecomposableDatum,
    build_indecomposable,
    build_solution,
    enumerate_indecomposable,
    transitive_cycle_base_representatives,
)
from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    BraceSpecError,
    CatalogParseError,
    ConstructionError,
    FixtureNotFoundError,
    FormatVersionError,
    IntegrityError,
    InternalConsistencyError,
    InvalidParameterError,
    NotHomomorphismError,
    TableFormatError,
)
from yangbaxter_hub.core.fixtures import get_fixture, list_fixtures
from yangbaxter_hub.core.perm import group_type_name
from yangbaxter_hub.core.permbrace import invariants
from yangbaxter_hub.core.solution import Solution, validate
from yangbaxter_hub.infra.catalog import (
    CatalogRecord,
    brace_record,
    census_record,
    format_value,
    parse_many,
    serialize,
    solution_record,
    to_brace,
    to_datum,
    to_solution,
)
from yangbaxter_hub.infra.settings import settings
from yangbaxter_hub.infra.store import StoreManager
from yangbaxter_hub.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Ошибки формата и параметров
USAGE_ERRORS = (
    TableFormatError,
    CatalogParseError,
    FormatVersionError,
    BoundExceededError,
    InvalidParameterError,
    BraceSpecError,
    FixtureNotFoundError,
    OSError,
)
# Математические ошибки
FAILURE_ERRORS = (
    ConstructionError,
    InternalConsistencyError,
    IntegrityError,
    NotHomomorphismError,
)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _read_records(path: str) -> List[CatalogRecord]:
    """Записи из файла или из stdin при path = '-'."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    return parse_many(text)


def _print_json(data: Any):
    print(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True, default=format_value))


def _invariants_table(info: Dict[str, Any]) -> PrettyTable:
    table = PrettyTable()
    table.field_names = ["Инвариант", "Значение"]
    table.align["Инвариант"] = "l"
    table.align["Значение"] = "r"
    for key, value in info.items():
        table.add_row([key, format_value(value)])
    return table


def _store(args) -> Optional[StoreManager]:
    """Хранилище из --store; без пути берется каталог из настроек (YBX_STORE_DIR)."""
    if args.store is None:
        return None
    return StoreManager(args.store or None)


def validate_command(args) -> int:
    """Обработка команды validate."""
    exit_code = EXIT_OK
    for record in _read_records(args.input):
        if record.kind == "brace":
            report = validate_brace(to_brace(record))
            print(f"brace axioms: {_yes(report.ok)}")
            if not report.ok:
                print(f"Свидетели: {report.witnesses}")
                exit_code = EXIT_FAILURE
            continue
        s = to_solution(record)
        report = validate(s)
        print(f"involutive non-degenerate: {_yes(report.involutive and report.nondegenerate)}")
        print(f"braid relation: {_yes(report.braid)}")
        if not report.ok:
            print(f"Свидетели: {report.witnesses}")
            exit_code = EXIT_FAILURE
    return exit_code


def invariants_command(args) -> int:
    """Обработка команды invariants."""
    results = []
    for record in _read_records(args.input):
        s = to_solution(record)
        if not validate(s).ok:
            print("Ошибка: таблица не является инволютивным невырожденным решением")
            return EXIT_FAILURE
        results.append(invariants(s))
    if args.json:
        _print_json(results if len(results) > 1 else results[0])
        return EXIT_OK
    for info in results:
        print(_invariants_table(info))
    return EXIT_OK


def _parse_generators(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidParameterError("k", text, "ожидается список чисел через запятую") from e


def construct_command(args) -> int:
    """Обработка команды construct."""
    if args.datum:
        records = _read_records(args.datum)
        s = build_solution(to_datum(records[0]))
    else:
        if not args.brace:
            print("Ошибка: нужен --brace или --datum")
            return EXIT_USAGE
        b = parse_brace_spec(args.brace)
        a = args.a
        if a is None:
            representatives = transitive_cycle_base_representatives(b)
            if not representatives:
                print("Ошибка: у скобы нет транзитивной базы циклов")
                return EXIT_FAILURE
            a = representatives[0]
        k = b.multiplicative_group().subgroup_closure(_parse_generators(args.k))
        s = build_indecomposable(IndecomposableDatum(b, a, k))
    record = solution_record(s, invariants(s))
    store = _store(args)
    if store is not None:
        store.put(record)
    sys.stdout.write(serialize(record))
    return EXIT_OK


def enumerate_braces_command(args) -> int:
    """Обработка команды enumerate-braces."""
    census = enumerate_braces_report(args.order)
    rows = []
    for i, b in enumerate(census.braces):
        rows.append({
            "index": i,
            "name": b.name,
            "additive": additive_invariant_factors(b),
            "multiplicative": group_type_name(b.multiplicative_group()),
            "socle": len(socle(b)),
            "cyclic": is_cyclic_brace(b),
        })
    store = _store(args)
    if store is not None:
        for b, row in zip(census.braces, rows):
            store.put(brace_record(b, {k: v for k, v in row.items() if k != "name"}))

    if args.json:
        _print_json({
            "order": args.order,
            "braces": rows,
            "skipped": [{"additive": f, "holomorph": size} for f, size in census.skipped],
        })
        return EXIT_OK

    table = PrettyTable()
    table.field_names = ["№", "Имя", "(B, +)", "(B, ∘)", "|Soc|", "Циклическая"]
    table.align["Имя"] = "l"
    for row in rows:
        table.add_row([
            row["index"],
            row["name"],
            format_value(row["additive"]),
            row["multiplicative"],
            row["socle"],
            _yes(row["cyclic"]),
        ])
    print(f"Скобы порядка {args.order}: {len(rows)}")
    print(table)
    for factors, size in census.skipped:
        print(f"Не покрыто: (B, +) = {format_value(factors)}, |Hol| ≥ {size}")
    return EXIT_OK


def enumerate_solutions_command(args) -> int:
    """Обработка команды enumerate-solutions."""
    b = parse_brace_spec(args.brace)
    solutions = enumerate_indecomposable(b)
    store = _store(args)
    records = [solution_record(s, invariants(s)) for s in solutions]
    if store is not None:
        for record in records:
            store.put(record)
    if args.json:
        _print_json([record.invariants for record in records])
        return EXIT_OK
    for record in records:
        sys.stdout.write(serialize(record))
    return EXIT_OK


def _census_summary(report) -> PrettyTable:
    total: Counter = Counter()
    indecomposable: Counter = Counter()
    for _, info in report.per_solution:
        total[info["group"]] += 1
        if info["indecomposable"]:
            indecomposable[info["group"]] += 1
    table = PrettyTable()
    table.field_names = ["𝒢", "Решений", "Неразложимых"]
    table.align["𝒢"] = "l"
    for group in sorted(total):
        table.add_row([group, total[group], indecomposable[group]])
    return table


def census_command(args) -> int:
    """Обработка команды census."""
    store = _store(args)
    if store is not None and args.long:
        def sink(table, info):
            store.put(solution_record(Solution(table), info))

        report = stream_census(args.n, sink)
    else:
        report = enumerate_solutions(args.n, long=args.long)
        if store is not None:
            for table, info in report.per_solution:
                store.put(solution_record(Solution(table), info))
    if store is not None:
        store.put(census_record(report))

    if args.json:
        _print_json({
            "n": report.n,
            "total": report.total,
            "indecomposable": report.indecomposable,
            "violations": len(report.violations),
        })
        return EXIT_OK
    print(f"Решений размера {report.n}: {report.total}, неразложимых: {report.indecomposable}")
    if report.per_solution:
        print(_census_summary(report))
    return EXIT_OK


RULES = (
    "a_n",
    "size",
    "abelian_g",
    "cyclic_g",
    "lambda_diagonal",
    "divides",
    "squarefree_size",
    "uniconnected_squarefree",
    "class_agreement",
)


def check_conjectures_command(args) -> int:
    """Обработка команды check-conjectures."""
    violations: Counter = Counter()
    notes: Counter = Counter()
    checked = 0
    witnesses = []

    def sink(table, info):
        nonlocal checked
        found, report_only = audit_entry(args.n, checked, info)
        checked += 1
        for v in found:
            violations[v.rule] += 1
            witnesses.append({"rule": v.rule, "table": table, "witness": v.witness})
        for note in report_only:
            notes[note.rule] += 1

    stream_census(args.n, sink, long=args.long)
    if args.json:
        _print_json({
            "n": args.n,
            "checked": checked,
            "a_n": a_n(args.n),
            "g_n": g_n(args.n),
            "violations": dict(violations),
            "witnesses": witnesses,
            "dixon_exceeded": notes["dixon"],
        })
    else:
        print(f"n = {args.n}: решений {checked}, a_n = {a_n(args.n)}, g(n) = {g_n(args.n)}")
        table = PrettyTable()
        table.field_names = ["Правило", "Нарушений"]
        table.align["Правило"] = "l"
        for rule in RULES:
            table.add_row([rule, violations[rule]])
        table.add_row(["dixon (справочно)", notes["dixon"]])
        print(table)
        for w in witnesses:
            print(f"Нарушение {w['rule']}: {w['witness']}")
    return EXIT_FAILURE if violations else EXIT_OK


def examples_command(args) -> int:
    """Обработка команды examples."""
    if args.name:
        s, expected = get_fixture(args.name)
        sys.stdout.write(serialize(solution_record(s, expected)))
        return EXIT_OK
    table = PrettyTable()
    table.field_names = ["Имя", "Описание"]
    table.align["Имя"] = "l"
    table.align["Описание"] = "l"
    for fixture in list_fixtures():
        table.add_row([fixture.name, fixture.description])
    print("Встроенные примеры:")
    print(table)
    return EXIT_OK


COMMANDS = {
    "validate": validate_command,
    "invariants": invariants_command,
    "construct": construct_command,
    "enumerate-braces": enumerate_braces_command,
    "enumerate-solutions": enumerate_solutions_command,
    "census": census_command,
    "check-conjectures": check_conjectures_command,
    "examples": examples_command,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybx",
        description="Решения уравнения Янга–Бакстера, левые скобы и класс Деорнуа",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--debug", action="store_true", help="Подробный лог в stderr")
    subparsers = parser.add_subparsers(dest="command", help="Доступные команды")

    def add_common(sub, store: bool = True):
        sub.add_argument("--json", action="store_true", help="Вывести результат в формате JSON")
        if store:
            sub.add_argument(
                "--store",
                nargs="?",
                const="",
                help="Сохранить записи в хранилище (без пути: каталог из настроек)",
            )

    # Команда validate
    validate_parser = subparsers.add_parser("validate", help="Проверить решение или скобу")
    validate_parser.add_argument("input", nargs="?", default="-", help="Файл YBX/1 или '-' для stdin")

    # Команда invariants
    invariants_parser = subparsers.add_parser("invariants", help="Инварианты решения")
    invariants_parser.add_argument("input", nargs="?", default="-", help="Файл YBX/1 или '-' для stdin")
    add_common(invariants_parser, store=False)

    # Команда construct
    construct_parser = subparsers.add_parser("construct", help="Построить решение по скобе")
    construct_parser.add_argument("--brace", help="Спецификация скобы (например, sd:triv3,triv2,inv)")
    construct_parser.add_argument("--a", type=int, help="Элемент с транзитивной орбитой")
    construct_parser.add_argument("--k", help="Образующие подгруппы K через запятую")
    construct_parser.add_argument("--datum", help="Файл YBX/1 с данными построения")
    add_common(construct_parser)

    # Команда enumerate-braces
    braces_parser = subparsers.add_parser("enumerate-braces", help="Все скобы порядка m")
    braces_parser.add_argument("--order", type=int, required=True, help="Порядок скобы")
    add_common(braces_parser)

    # Команда enumerate-solutions
    solutions_parser = subparsers.add_parser(
        "enumerate-solutions", help="Неразложимые решения над скобой"
    )
    solutions_parser.add_argument("--brace", required=True, help="Спецификация скобы")
    add_common(solutions_parser)

    # Команда census
    census_parser = subparsers.add_parser("census", help="Все решения размера n")
    census_parser.add_argument("--n", type=int, required=True, help="Размер")
    census_parser.add_argument("--long", action="store_true", help="Разрешить n до census_long_bound")
    add_common(census_parser)

    # Команда check-conjectures
    conj_parser = subparsers.add_parser("check-conjectures", help="Проверка границ класса")
    conj_parser.add_argument("--n", type=int, required=True, help="Размер")
    conj_parser.add_argument("--long", action="store_true", help="Разрешить n до census_long_bound")
    add_common(conj_parser, store=False)

    # Команда examples
    examples_parser = subparsers.add_parser("examples", help="Встроенные примеры")
    examples_parser.add_argument("--name", help="Имя примера")

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Разбор аргументов и выполнение команды; возвращает код выхода."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    level_name = "DEBUG" if args.debug else settings.get("log_level", "INFO")
    setup_logging(
        log_dir=settings.get_log_dir(),
        log_file=settings.get("log_file", "actions.log"),
        level=getattr(logging, str(level_name).upper(), logging.INFO),
        json_format=settings.get("log_format") == "json",
    )

    try:
        return COMMANDS[args.command](args)
    except USAGE_ERRORS as e:
        print(f"Ошибка: {e}")
        return EXIT_USAGE
    except FAILURE_ERRORS as e:
        print(f"Ошибка: {e}")
        return EXIT_FAILURE


def main():
    """Главная функция CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
