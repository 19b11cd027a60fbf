"""Перебор всех решений малого размера и проверка гипотез о классе.

Поиск заполняет σ-строки по одной. Тождество
σ_x∘σ_{σ_x⁻¹(y)} = σ_y∘σ_{σ_y⁻¹(x)} позволяет вывести недостающую строку,
когда три из четырех известны; заполненные пары проверяются сразу.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from yangbaxter_hub.core.brace import (
    Brace,
    additive_exponent,
    enumerate_braces_report,
    is_cyclic_brace,
)
from yangbaxter_hub.core.construct import (
    IndecomposableDatum,
    build_indecomposable,
    transitive_cycle_base_representatives,
)
from yangbaxter_hub.core.exceptions import BoundExceededError, InvalidParameterError
from yangbaxter_hub.core.perm import Permutation
from yangbaxter_hub.core.permbrace import invariants
from yangbaxter_hub.core.solution import (
    Solution,
    dehornoy_class_direct,
    isomorphic,
    relabel,
    validate,
)
from yangbaxter_hub.core.utils import is_squarefree, landau, max_distinct_part_product
from yangbaxter_hub.decorators import log_action
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)

Image = Tuple[int, ...]
Table = Tuple[Tuple[int, ...], ...]


def a_n(n: int) -> int:
    """Максимум произведения различных натуральных слагаемых n."""
    if n < 1:
        raise InvalidParameterError("n", n, "должно быть не меньше 1")
    return max_distinct_part_product(n)


def g_n(n: int) -> int:
    """Функция Ландау: максимальный порядок перестановки n точек."""
    if n < 1:
        raise InvalidParameterError("n", n, "должно быть не меньше 1")
    return landau(n)


# --- канонические формы ---------------------------------------------------


def _relabeled_table(sigma: Table, order: List[int]) -> Table:
    """Таблица после перенумерации: точка order[i] получает номер i."""
    label = {p: i for i, p in enumerate(order)}
    n = len(order)
    return tuple(
        tuple(label[sigma[order[i]][order[j]]] for j in range(n)) for i in range(n)
    )


def _point_classes(s: Solution) -> List[Tuple]:
    """Инварианты точек, сохраняемые изоморфизмами решений."""
    n, sigma = s.n, s.sigma
    result = []
    for x in range(n):
        perm = Permutation(sigma[x], check=False)
        same_row = sum(1 for y in range(n) if sigma[y] == sigma[x])
        fixed_by = sum(1 for y in range(n) if sigma[y][x] == x)
        result.append((perm.cycle_type(), same_row, fixed_by, sigma[x][x] == x))
    return result


def fingerprint(s: Solution) -> Tuple:
    """Быстрый инвариант класса изоморфизма для раскладки по корзинам."""
    return tuple(sorted(_point_classes(s)))


def _canonical_exhaustive(s: Solution) -> Table:
    classes = _point_classes(s)
    blocks: Dict[Tuple, List[int]] = {}
    for x in range(s.n):
        blocks.setdefault(classes[x], []).append(x)
    ordered = [blocks[key] for key in sorted(blocks)]
    best = None
    for parts in itertools.product(*[itertools.permutations(b) for b in ordered]):
        order = [p for part in parts for p in part]
        table = _relabeled_table(s.sigma, order)
        if best is None or table < best:
            best = table
    return best


def _canonical_search(s: Solution, budget: int) -> Table:
    """Минимум по нумерациям, порождаемым замыканием σ_p(q) от стартовых точек."""
    n, sigma = s.n, s.sigma
    best: List[Optional[Table]] = [None]
    nodes = [0]

    def close(order: List[int], labeled: set):
        changed = True
        while changed:
            changed = False
            size = len(order)
            for i in range(size):
                row = sigma[order[i]]
                for j in range(size):
                    p = row[order[j]]
                    if p not in labeled:
                        labeled.add(p)
                        order.append(p)
                        changed = True

    def branch(order: List[int], labeled: set):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BoundExceededError("узлов поиска канонической формы", nodes[0], budget)
        if len(order) == n:
            table = _relabeled_table(sigma, order)
            if best[0] is None or table < best[0]:
                best[0] = table
            return
        for start in range(n):
            if start in labeled:
                continue
            new_order, new_labeled = order + [start], labeled | {start}
            close(new_order, new_labeled)
            branch(new_order, new_labeled)

    branch([], set())
    return best[0]


def canonical_form(s: Solution) -> Table:
    """Каноническая σ-таблица класса изоморфизма.

    До canonical_exhaustive_max точек берется минимум по всем перенумерациям,
    сохраняющим упорядоченные классы инвариантов точек; дальше идет поиск по
    нумерациям замыкания с ограничением canonical_node_budget.
    """
    if s.n <= settings.get_bound("canonical_exhaustive_max"):
        return _canonical_exhaustive(s)
    return _canonical_search(s, settings.get_bound("canonical_node_budget"))


def canonical_key(s: Solution) -> str:
    """Строковый ключ канонической формы."""
    return "/".join(" ".join(str(v) for v in row) for row in canonical_form(s))


# --- перебор --------------------------------------------------------------


def _compose(p: Image, q: Image) -> Image:
    return tuple(p[j] for j in q)


def _invert(p: Image) -> Image:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _first_row_representatives(n: int) -> List[Image]:
    """По одной перестановке на пару (цикловой тип, длина цикла точки 0)."""
    seen = set()
    result = []
    for perm in itertools.permutations(range(n)):
        p = Permutation(perm, check=False)
        cycle_of_zero = next(len(c) for c in p.cycles(include_fixed=True) if 0 in c)
        key = (p.cycle_type(), cycle_of_zero)
        if key not in seen:
            seen.add(key)
            result.append(tuple(perm))
    return result


class _RowSearch:
    """Перебор σ-строк с выводом вынужденных строк."""

    def __init__(self, n: int, on_leaf: Callable[[Table], None]):
        self.n = n
        self.rows: List[Optional[Image]] = [None] * n
        self.inv: List[Optional[Image]] = [None] * n
        self.perms = [tuple(p) for p in itertools.permutations(range(n))]
        self.on_leaf = on_leaf
        self.nodes = 0

    def _set(self, x: int, row: Image, trail: List[int]):
        self.rows[x] = row
        self.inv[x] = _invert(row)
        trail.append(x)

    def _undo(self, trail: List[int]):
        for x in trail:
            self.rows[x] = None
            self.inv[x] = None

    def _close(self, trail: List[int]) -> bool:
        n, rows, inv = self.n, self.rows, self.inv
        changed = True
        while changed:
            changed = False
            for u in range(n):
                su = rows[u]
                if su is None:
                    continue
                for v in range(u + 1, n):
                    sv = rows[v]
                    if sv is None:
                        continue
                    z, w = inv[u][v], inv[v][u]
                    sz, sw = rows[z], rows[w]
                    if sz is not None and sw is not None:
                        if _compose(su, sz) != _compose(sv, sw):
                            return False
                    elif sz is not None:
                        self._set(w, _compose(inv[v], _compose(su, sz)), trail)
                        changed = True
                    elif sw is not None:
                        self._set(z, _compose(inv[u], _compose(sv, sw)), trail)
                        changed = True
        return True

    def _descend(self):
        self.nodes += 1
        x = next((p for p in range(self.n) if self.rows[p] is None), None)
        if x is None:
            self.on_leaf(tuple(self.rows))
            return
        for perm in self.perms:
            trail: List[int] = []
            self._set(x, perm, trail)
            if self._close(trail):
                self._descend()
            self._undo(trail)

    def run(self, first_rows: List[Image]):
        for first in first_rows:
            trail: List[int] = []
            self._set(0, first, trail)
            if self._close(trail):
                self._descend()
            self._undo(trail)
            logger.debug("First row %s done, %d nodes so far", first, self.nodes)


class _Deduplicator:
    """Представители классов изоморфизма по корзинам быстрых инвариантов."""

    def __init__(self, on_new: Optional[Callable[[Solution], None]] = None):
        self.buckets: Dict[Tuple, List[Solution]] = {}
        self.representatives: List[Solution] = []
        self.on_new = on_new

    def offer(self, s: Solution) -> bool:
        bucket = self.buckets.setdefault(fingerprint(s), [])
        for other in bucket:
            if isomorphic(s, other) is not None:
                return False
        bucket.append(s)
        self.representatives.append(s)
        if self.on_new is not None:
            self.on_new(s)
        return True


def _check_census_bound(n: int, long: bool, bound: Optional[int]):
    if n < 1:
        raise InvalidParameterError("n", n, "должно быть не меньше 1")
    key = "census_long_bound" if long else "census_bound"
    limit = bound if bound is not None else settings.get_bound(key)
    if n > limit:
        raise BoundExceededError("размера перебора решений", n, limit)


def search_solutions(n: int, on_new: Optional[Callable[[Solution], None]] = None) -> List[Solution]:
    """Представители всех классов изоморфизма решений размера n (без канонизации)."""
    dedup = _Deduplicator(on_new)

    def leaf(rows: Table):
        s = Solution(rows)
        if validate(s).ok:
            dedup.offer(s)

    search = _RowSearch(n, leaf)
    search.run(_first_row_representatives(n))
    logger.info("Size %d: %d classes, %d search nodes", n, len(dedup.representatives), search.nodes)
    return dedup.representatives


@dataclass
class Violation:
    """Нарушенная граница: правило, номер решения в отчете, детали."""

    rule: str
    index: int
    witness: Dict[str, Any]


@dataclass
class CensusReport:
    """Результат перебора размера n."""

    n: int
    total: int = 0
    indecomposable: int = 0
    per_solution: List[Tuple[Table, Dict[str, Any]]] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)
    notes: List[Violation] = field(default_factory=list)


@log_action(action="CENSUS", verbose=True)
def enumerate_solutions(
    n: int,
    long: bool = False,
    bound: Optional[int] = None,
    on_found: Optional[Callable[[Table, Dict[str, Any]], None]] = None,
) -> CensusReport:
    """Все решения размера n с точностью до изоморфизма.

    Args:
        n: Размер
        long: Разрешить размеры до census_long_bound
        bound: Явная граница размера
        on_found: Вызывается для каждого нового представителя (потоковый режим)

    Raises:
        BoundExceededError: Если n больше границы
    """
    _check_census_bound(n, long, bound)
    report = CensusReport(n)

    def record(s: Solution):
        canon = canonical_form(s)
        info = invariants(Solution(canon))
        if on_found is not None:
            on_found(canon, info)
            found, report_only = audit_entry(n, report.total, info)
            report.violations.extend(found)
            report.notes.extend(report_only)
        else:
            report.per_solution.append((canon, info))
        report.total += 1
        if info["indecomposable"]:
            report.indecomposable += 1

    search_solutions(n, on_new=record)
    if on_found is None:
        report.per_solution.sort(key=lambda item: item[0])
        report.violations, report.notes = _audit(report)
    return report


def stream_census(
    n: int, sink: Callable[[Table, Dict[str, Any]], None], long: bool = True
) -> CensusReport:
    """Перебор с передачей каждого представителя в sink без накопления в памяти."""
    return enumerate_solutions(n, long=long, on_found=sink)


def census_oracle(n: int) -> List[Solution]:
    """Независимый перебор без отсечений: все σ-таблицы, фильтр, затем дедупликация.

    Raises:
        BoundExceededError: Если n > 4
    """
    if n > 4:
        raise BoundExceededError("размера полного перебора таблиц", n, 4)
    perms = [tuple(p) for p in itertools.permutations(range(n))]
    dedup = _Deduplicator()
    for rows in itertools.product(perms, repeat=n):
        s = Solution(rows)
        if validate(s).ok:
            dedup.offer(s)
    return dedup.representatives


# --- проверка гипотез -----------------------------------------------------


def audit_entry(n: int, index: int, info: Dict[str, Any]) -> Tuple[List[Violation], List[Violation]]:
    violations: List[Violation] = []
    notes: List[Violation] = []
    d = info["class_direct"]
    group_order = info["group_order"]
    a, g = a_n(n), g_n(n)

    def fail(rule: str, **details):
        violations.append(Violation(rule, index, dict(details, d=d)))

    if d > a:
        fail("a_n", bound=a)
    if info["indecomposable"] and d > n:
        fail("size", bound=n)
    if group_order % d:
        fail("divides", group_order=group_order)
    if info["group_abelian"] and d > g:
        fail("abelian_g", bound=g)
    if info["group_cyclic"] and d > g:
        fail("cyclic_g", bound=g)
    if info.get("lambda_diagonal") and d > g:
        fail("lambda_diagonal", bound=g)
    if info["indecomposable"] and is_squarefree(n) and d != n:
        fail("squarefree_size", expected=n)
    if info["indecomposable"] and is_squarefree(group_order) and not info["uniconnected"]:
        fail("uniconnected_squarefree", group_order=group_order)
    classes = {d, info.get("class_exponent", d), info.get("class_lcm", d)} - {None}
    if len(classes) > 1:
        fail("class_agreement", classes=sorted(classes))
    dixon = 24 ** ((n - 1) / 3)
    if d > dixon:
        notes.append(Violation("dixon", index, {"d": d, "bound": dixon}))
    return violations, notes


def _audit(report: CensusReport) -> Tuple[List[Violation], List[Violation]]:
    violations: List[Violation] = []
    notes: List[Violation] = []
    for index, (_, info) in enumerate(report.per_solution):
        v, nts = audit_entry(report.n, index, info)
        violations.extend(v)
        notes.extend(nts)
    return violations, notes


def audit_conjectures(report: CensusReport) -> List[Violation]:
    """Все нарушенные границы для решений отчета (пустой список ожидается)."""
    violations, notes = _audit(report)
    for note in notes:
        logger.info("Report-only bound exceeded: %s", note)
    return violations


# --- диэдральные скобы ----------------------------------------------------


@dataclass
class DihedralRow:
    brace: Brace
    cyclic: bool
    expected: int
    exponent: int
    solution_class: Optional[int]

    @property
    def ok(self) -> bool:
        observed = {self.exponent} | ({self.solution_class} if self.solution_class else set())
        return observed == {self.expected}


@dataclass
class DihedralReport:
    n_exp: int
    m: int
    in_scope: bool
    rows: List[DihedralRow] = field(default_factory=list)
    skipped: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)

    @property
    def covered(self) -> bool:
        return bool(self.rows)


def dihedral_class_check(n_exp: int, m: int) -> DihedralReport:
    """Класс решений над скобами с диэдральной группой (B, ∘) порядка 2^n·m.

    Для каждой найденной скобы сравниваются ожидаемый класс (2^n·m для
    циклической скобы, 2^{n−1}·m иначе), экспонента (B, +) и класс
    униконнектного решения при его наличии.

    Raises:
        InvalidParameterError: Если m четно
    """
    if m % 2 == 0:
        raise InvalidParameterError("m", m, "должно быть нечетным")
    order = 2 ** n_exp * m
    census = enumerate_braces_report(order)
    report = DihedralReport(n_exp, m, in_scope=n_exp > 3, skipped=list(census.skipped))
    for b in census.braces:
        if not b.multiplicative_group().is_dihedral():
            continue
        cyclic = is_cyclic_brace(b)
        expected = order if cyclic else order // 2
        representatives = transitive_cycle_base_representatives(b)
        solution_class = None
        if representatives:
            s = build_indecomposable(IndecomposableDatum(b, representatives[0]))
            solution_class = dehornoy_class_direct(s)
        report.rows.append(DihedralRow(b, cyclic, expected, additive_exponent(b), solution_class))
    if not report.covered:
        logger.warning("No dihedral brace of order %d within bounds", order)
    return report


def relabel_randomly(s: Solution, seed: int) -> Solution:
    """Случайная перенумерация (для проверок инвариантности)."""
    f = list(range(s.n))
    random.Random(seed).shuffle(f)
    return relabel(s, f)
