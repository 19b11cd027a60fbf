"""Текстовый формат YBX/1 для решений, скоб, данных построения и переборов.

Запись::

    YBX/1 <kind> sha256
    n=<int>            (m=<int> для скоб и данных)
    <строки таблиц, числа через пробел>
    --                 (разделитель таблиц)
    ==                 (начало инвариантов)
    key=value

Хэш считается по байтам канонической записи таблиц и зависит только от
класса изоморфизма решения или скобы.
"""

import hashlib
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from yangbaxter_hub.core.brace import Brace
from yangbaxter_hub.core.census import CensusReport, canonical_form
from yangbaxter_hub.core.construct import ConstructionDatum
from yangbaxter_hub.core.exceptions import CatalogParseError, FormatVersionError
from yangbaxter_hub.core.solution import NotMultipermutation, Solution

logger = logging.getLogger(__name__)

FORMAT_VERSION = "YBX/1"
HASH_NAME = "sha256"
KINDS = ("solution", "brace", "datum", "census")
HASH_KEY = "canonical_hash"

Rows = Tuple[Tuple[int, ...], ...]


@dataclass
class CatalogRecord:
    """Запись каталога; значения инвариантов хранятся строками в порядке вставки."""

    kind: str
    size: int
    sections: List[Rows]
    invariants: Dict[str, str] = field(default_factory=dict)
    canonical_hash: Optional[str] = None

    @property
    def size_key(self) -> str:
        return "n" if self.kind in ("solution", "census") else "m"


def format_value(value: Any) -> str:
    """Строковое значение инварианта: true/false, none, числа через запятую."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None or isinstance(value, NotMultipermutation):
        return "none"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(v) for v in value)
    return str(value)


# --- сериализация ----------------------------------------------------------


def _rows_text(rows: Rows) -> List[str]:
    return [" ".join(str(v) for v in row) for row in rows]


def _payload_lines(sections: Sequence[Rows]) -> List[str]:
    lines: List[str] = []
    for i, rows in enumerate(sections):
        if i:
            lines.append("--")
        lines.extend(_rows_text(rows))
    return lines


def serialize(record: CatalogRecord) -> str:
    """Текст записи; каждая строка заканчивается переводом строки."""
    lines = [f"{FORMAT_VERSION} {record.kind} {HASH_NAME}", f"{record.size_key}={record.size}"]
    lines.extend(_payload_lines(record.sections))
    if record.canonical_hash is not None or record.invariants:
        lines.append("==")
        if record.canonical_hash is not None:
            lines.append(f"{HASH_KEY}={record.canonical_hash}")
        lines.extend(f"{k}={v}" for k, v in record.invariants.items())
    return "\n".join(lines) + "\n"


def _parse_header(line: str):
    parts = line.split()
    if not parts:
        raise CatalogParseError(1, 1, "пустой заголовок")
    version = parts[0]
    if version != FORMAT_VERSION:
        if version.startswith("YBX/"):
            raise FormatVersionError(version, FORMAT_VERSION)
        raise CatalogParseError(1, 1, f"ожидается '{FORMAT_VERSION}'")
    if len(parts) != 3:
        raise CatalogParseError(1, len(version) + 2, "ожидается '<kind> <hash>' после версии")
    kind, hash_name = parts[1], parts[2]
    if kind not in KINDS:
        raise CatalogParseError(1, len(version) + 2, f"неизвестный вид записи '{kind}'")
    if hash_name != HASH_NAME:
        raise CatalogParseError(1, len(version) + len(kind) + 3, f"неподдерживаемый хэш '{hash_name}'")
    return kind


def _parse_row(line: str, number: int) -> Tuple[int, ...]:
    values = []
    column = 1
    for token in line.split(" "):
        if not token:
            raise CatalogParseError(number, column, "лишний пробел")
        if not token.isdigit():
            raise CatalogParseError(number, column, f"ожидается целое число, получено '{token}'")
        values.append(int(token))
        column += len(token) + 1
    return tuple(values)


def _check_square(rows: List[Tuple[int, ...]], first_line: int, size: int):
    if len(rows) != size:
        raise CatalogParseError(first_line + len(rows), 1, f"ожидалось {size} строк таблицы, найдено {len(rows)}")
    for i, row in enumerate(rows):
        number = first_line + i
        if len(row) != size:
            raise CatalogParseError(number, 1, f"строка таблицы {i} содержит {len(row)} чисел вместо {size}")
        for j, v in enumerate(row):
            if v >= size:
                column = sum(len(str(x)) + 1 for x in row[:j]) + 1
                raise CatalogParseError(number, column, f"значение {v} вне диапазона 0..{size - 1}")


def parse(text: str) -> CatalogRecord:
    """Запись по тексту.

    Raises:
        CatalogParseError: С номером строки и столбца
        FormatVersionError: Если версия формата отличается от YBX/1
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CatalogParseError(1, 1, "пустая запись")
    kind = _parse_header(lines[0])
    size_key = "n" if kind in ("solution", "census") else "m"
    if len(lines) < 2 or not lines[1].startswith(f"{size_key}="):
        raise CatalogParseError(2, 1, f"ожидается '{size_key}=<int>'")
    size_text = lines[1][len(size_key) + 1:]
    if not size_text.isdigit() or int(size_text) < 1:
        raise CatalogParseError(2, len(size_key) + 2, "размер должен быть положительным целым")
    size = int(size_text)

    sections: List[List[Tuple[int, ...]]] = [[]]
    starts = [3]
    position = 2
    while position < len(lines) and lines[position] != "==":
        line = lines[position]
        number = position + 1
        if line == "--":
            sections.append([])
            starts.append(number + 1)
        else:
            sections[-1].append(_parse_row(line, number))
        position += 1

    invariants: Dict[str, str] = {}
    canonical_hash = None
    for index in range(position + 1, len(lines)):
        line = lines[index]
        key, sep, value = line.partition("=")
        if not sep or not key:
            raise CatalogParseError(index + 1, 1, "ожидается 'key=value'")
        if key in invariants or (key == HASH_KEY and canonical_hash is not None):
            raise CatalogParseError(index + 1, 1, f"ключ '{key}' повторяется")
        if key == HASH_KEY:
            canonical_hash = value
        else:
            invariants[key] = value

    _check_sections(kind, size, sections, starts)
    if kind == "census" and sections == [[]]:
        sections = []
    return CatalogRecord(
        kind,
        size,
        [tuple(rows) for rows in sections],
        invariants,
        canonical_hash,
    )


def _check_sections(kind: str, size: int, sections: List[List[Tuple[int, ...]]], starts: List[int]):
    if kind == "solution":
        if len(sections) != 1:
            raise CatalogParseError(starts[1] - 1, 1, "у решения одна таблица")
        _check_square(sections[0], starts[0], size)
    elif kind == "brace":
        if len(sections) != 2:
            raise CatalogParseError(starts[-1], 1, "у скобы две таблицы: сложение и умножение")
        for rows, start in zip(sections, starts):
            _check_square(rows, start, size)
    elif kind == "datum":
        if len(sections) != 3:
            raise CatalogParseError(starts[-1], 1, "у данных построения три секции")
        for rows, start in zip(sections[:2], starts[:2]):
            _check_square(rows, start, size)
        for i, row in enumerate(sections[2]):
            if len(row) < 2 or any(v >= size for v in row):
                raise CatalogParseError(starts[2] + i, 1, "ожидается 'a k1 k2 ...' с элементами скобы")
    else:
        if sections == [[]]:
            return
        for rows, start in zip(sections, starts):
            _check_square(rows, start, size)


# --- канонические формы и хэш ---------------------------------------------


def digest(sections: Sequence[Rows]) -> str:
    """sha256 от текста таблиц (строки через перевод строки)."""
    payload = "\n".join(_payload_lines(sections)) + "\n"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _generating_tuples(b: Brace):
    """Кортежи наименьшей длины, порождающие (B, ∘)."""
    m = b.m
    for k in range(0, m + 1):
        found = False
        for gens in itertools.product(range(1, m), repeat=k):
            order = _word_order(b, gens)
            if len(order) == m:
                found = True
                yield order
        if found:
            return


def _word_order(b: Brace, gens: Sequence[int]) -> List[int]:
    order = [0]
    seen = {0}
    position = 0
    while position < len(order):
        x = order[position]
        position += 1
        for g in gens:
            y = b.mul[x][g]
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def canonical_brace_tables(b: Brace) -> Tuple[Rows, Rows]:
    """Минимальная пара (сложение, умножение) по нумерациям обхода от порождающих."""
    best = None
    for order in _generating_tuples(b):
        label = {x: i for i, x in enumerate(order)}
        add = tuple(tuple(label[b.add[x][y]] for y in order) for x in order)
        mul = tuple(tuple(label[b.mul[x][y]] for y in order) for x in order)
        if best is None or (add, mul) < best:
            best = (add, mul)
    return best


def solution_hash(s: Solution) -> str:
    return digest([canonical_form(s)])


def brace_hash(b: Brace) -> str:
    return digest(list(canonical_brace_tables(b)))


# --- записи предметных объектов --------------------------------------------


def solution_record(s: Solution, invariants: Optional[Dict[str, Any]] = None) -> CatalogRecord:
    """Запись решения с каноническим хэшем и инвариантами."""
    values = {k: format_value(v) for k, v in (invariants or {}).items()}
    return CatalogRecord("solution", s.n, [s.sigma], values, solution_hash(s))


def brace_record(b: Brace, invariants: Optional[Dict[str, Any]] = None) -> CatalogRecord:
    values = {"name": b.name} if b.name else {}
    values.update({k: format_value(v) for k, v in (invariants or {}).items()})
    return CatalogRecord("brace", b.m, [b.add, b.mul], values, brace_hash(b))


def datum_record(datum: ConstructionDatum) -> CatalogRecord:
    """Запись данных построения; хэш считается по записи как есть."""
    b = datum.brace
    families = tuple(
        (a,) + tuple(sorted(k))
        for a, ks in zip(datum.representatives, datum.families)
        for k in ks
    )
    sections = [b.add, b.mul, families]
    values = {"name": b.name} if b.name else {}
    return CatalogRecord("datum", b.m, sections, values, digest(sections))


def census_record(report: CensusReport) -> CatalogRecord:
    """Запись перебора.

    В потоковом режиме таблиц в отчете нет: запись хранит только итоги,
    а хэш считается по строке (n, total, indecomposable).
    """
    sections = [table for table, _ in report.per_solution]
    values = {
        "total": str(report.total),
        "indecomposable": str(report.indecomposable),
        "violations": str(len(report.violations)),
    }
    record = CatalogRecord("census", report.n, sections, values)
    record.canonical_hash = digest(canonical_payload(record))
    return record


def to_solution(record: CatalogRecord) -> Solution:
    if record.kind != "solution":
        raise CatalogParseError(1, 1, f"ожидалась запись solution, получена {record.kind}")
    return Solution(record.sections[0])


def to_brace(record: CatalogRecord) -> Brace:
    if record.kind not in ("brace", "datum"):
        raise CatalogParseError(1, 1, f"ожидалась запись brace, получена {record.kind}")
    return Brace(record.sections[0], record.sections[1], name=record.invariants.get("name"))


def to_datum(record: CatalogRecord) -> ConstructionDatum:
    if record.kind != "datum":
        raise CatalogParseError(1, 1, f"ожидалась запись datum, получена {record.kind}")
    b = to_brace(record)
    representatives: List[int] = []
    families: List[List[frozenset]] = []
    for row in record.sections[2]:
        a, k = row[0], frozenset(row[1:])
        if a not in representatives:
            representatives.append(a)
            families.append([])
        families[representatives.index(a)].append(k)
    return ConstructionDatum(b, representatives, families)


def verify_hash(record: CatalogRecord) -> bool:
    """Совпадает ли записанный хэш с вычисленным заново."""
    if record.canonical_hash is None:
        return True
    expected = digest(canonical_payload(record))
    if expected != record.canonical_hash:
        logger.warning("Hash mismatch for %s record: %s != %s", record.kind, record.canonical_hash, expected)
    return expected == record.canonical_hash


def _census_payload(record: CatalogRecord) -> List[Rows]:
    tables = [rows for rows in record.sections if rows]
    if tables:
        return tables
    try:
        summary = (
            record.size,
            int(record.invariants.get("total", 0)),
            int(record.invariants.get("indecomposable", 0)),
        )
    except ValueError as e:
        raise CatalogParseError(1, 1, f"итоги перебора должны быть целыми: {e}") from e
    return [(summary,)]


def canonical_payload(record: CatalogRecord) -> List[Rows]:
    """Таблицы записи в канонической нумерации (для решений и скоб)."""
    if record.kind == "solution":
        return [canonical_form(to_solution(record))]
    if record.kind == "brace":
        return list(canonical_brace_tables(to_brace(record)))
    if record.kind == "census":
        return _census_payload(record)
    return list(record.sections)


def parse_many(text: str) -> List[CatalogRecord]:
    """Несколько записей подряд; каждая начинается со строки заголовка.

    Номера строк в ошибках считаются от начала всего текста.
    """
    lines = text.split("\n")
    starts = [i for i, line in enumerate(lines) if line.startswith("YBX/")]
    if not starts or any(line.strip() for line in lines[: starts[0]]):
        raise CatalogParseError(1, 1, "ожидается заголовок записи")
    records = []
    for k, start in enumerate(starts):
        end = starts[k + 1] if k + 1 < len(starts) else len(lines)
        chunk = "\n".join(lines[start:end]).rstrip("\n") + "\n"
        try:
            records.append(parse(chunk))
        except CatalogParseError as e:
            raise CatalogParseError(e.line + start, e.column, e.reason) from e
    return records
