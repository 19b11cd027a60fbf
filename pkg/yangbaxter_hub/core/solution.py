"""Инволютивные невырожденные решения уравнения Янга–Бакстера.

Решение хранится σ-таблицей: ``sigma[x][y] = σ_x(y)``. Правая часть
выводится по формуле ``τ_y(x) = σ⁻¹_{σ_x(y)}(x)``.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    InternalConsistencyError,
    TableFormatError,
)
from yangbaxter_hub.core.perm import Permutation, PermGroup, closure, group_type_name
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


class NotMultipermutation:
    """Маркер: ретракции стабилизируются на размере больше 1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotMultipermutation"

    def __str__(self) -> str:
        return "none"


NOT_MULTIPERMUTATION = NotMultipermutation()


def _as_table(rows: Sequence[Sequence[int]], n: int, what: str) -> Table:
    if len(rows) != n:
        raise TableFormatError(what, f"ожидалось {n} строк, получено {len(rows)}")
    table = []
    for x, row in enumerate(rows):
        row = tuple(int(v) for v in row)
        if len(row) != n:
            raise TableFormatError(what, f"длина строки {len(row)} вместо {n}", row=x)
        for y, v in enumerate(row):
            if not 0 <= v < n:
                raise TableFormatError(what, f"значение {v} вне диапазона", row=x, column=y)
        table.append(row)
    return tuple(table)


def _is_bijection(row: Sequence[int]) -> bool:
    return len(set(row)) == len(row)


class Solution:
    """σ-таблица решения с производными τ, точечной операцией и группой.

    Кэши (группа перестановок, таблица точечной операции) вычисляются
    один раз под блокировкой; дальше объект только читается.
    """

    def __init__(
        self,
        sigma: Sequence[Sequence[int]],
        tau: Optional[Sequence[Sequence[int]]] = None,
        provenance: Any = None,
    ):
        """Инициализация решения.

        Args:
            sigma: Таблица n×n, sigma[x][y] = σ_x(y)
            tau: Явная таблица tau[y][x] = τ_y(x); по умолчанию выводится
            provenance: Данные построения (если решение построено из скобы)

        Raises:
            TableFormatError: Если таблица не квадратная или значения вне диапазона
        """
        n = len(sigma)
        if n == 0:
            raise TableFormatError("σ", "пустая таблица")
        self._n = n
        self._sigma = _as_table(sigma, n, "σ")
        self._explicit_tau = tau is not None
        self._tau: Optional[Table] = _as_table(tau, n, "τ") if tau is not None else None
        self._sigma_inv: Optional[Table] = None
        self._group: Optional[PermGroup] = None
        self._lock = threading.Lock()
        self.provenance = provenance

    @classmethod
    def from_permutations(cls, perms: Sequence[Permutation], **kwargs) -> "Solution":
        return cls([p.image for p in perms], **kwargs)

    @classmethod
    def from_cycle_strings(cls, n: int, cycles: Sequence[str]) -> "Solution":
        """Решение по записям σ_1, …, σ_n циклами с единицы."""
        return cls([Permutation.parse_cycles(n, c).image for c in cycles])

    @property
    def n(self) -> int:
        return self._n

    @property
    def sigma(self) -> Table:
        return self._sigma

    @property
    def sigma_inverse(self) -> Optional[Table]:
        """Таблица σ_x⁻¹ или None, если какая-то строка не биективна."""
        if self._sigma_inv is None:
            if not all(_is_bijection(row) for row in self._sigma):
                return None
            inv = []
            for row in self._sigma:
                r = [0] * self._n
                for y, v in enumerate(row):
                    r[v] = y
                inv.append(tuple(r))
            self._sigma_inv = tuple(inv)
        return self._sigma_inv

    @property
    def tau(self) -> Optional[Table]:
        """Таблица tau[y][x] = τ_y(x)."""
        if self._tau is None:
            inv = self.sigma_inverse
            if inv is None:
                return None
            n, sigma = self._n, self._sigma
            self._tau = tuple(
                tuple(inv[sigma[x][y]][x] for x in range(n)) for y in range(n)
            )
        return self._tau

    @property
    def dot(self) -> Optional[Table]:
        """Точечная операция x·y = σ_x⁻¹(y) (каждая строка есть σ_x⁻¹)."""
        return self.sigma_inverse

    def sigma_perm(self, x: int) -> Permutation:
        return Permutation(self._sigma[x], check=False)

    def r(self, x: int, y: int) -> Tuple[int, int]:
        """r(x, y) = (σ_x(y), τ_y(x))."""
        return self._sigma[x][y], self.tau[y][x]

    def group(self) -> PermGroup:
        with self._lock:
            if self._group is None:
                perms = [Permutation(row) for row in self._sigma]
                self._group = closure(perms)
        return self._group

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Solution)
            and self._sigma == other._sigma
            and self.tau == other.tau
        )

    def __hash__(self) -> int:
        return hash(self._sigma)

    def __repr__(self) -> str:
        return f"Solution(n={self._n})"


@dataclass
class ValidationReport:
    """Результат проверки решения; witness указывает первое нарушение."""

    nondegenerate: bool
    involutive: bool
    braid: bool
    witnesses: Dict[str, Tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.nondegenerate and self.involutive and self.braid


def validate(s: Solution) -> ValidationReport:
    """Проверка невырожденности, инволютивности и соотношения кос.

    Args:
        s: Решение

    Returns:
        Отчет с булевыми флагами и свидетелями нарушений
    """
    n, sigma = s.n, s.sigma
    witnesses: Dict[str, Tuple] = {}

    for x, row in enumerate(sigma):
        if not _is_bijection(row):
            witnesses["nondegenerate"] = ("sigma", x)
            break
    tau = s.tau
    if tau is not None and "nondegenerate" not in witnesses:
        for y, row in enumerate(tau):
            if not _is_bijection(row):
                witnesses["nondegenerate"] = ("tau", y)
                break
    if tau is None:
        witnesses["involutive"] = ("undefined",)
        witnesses["braid"] = ("undefined",)
        return ValidationReport(False, False, False, witnesses)

    def r(x, y):
        return sigma[x][y], tau[y][x]

    for x in range(n):
        for y in range(n):
            if r(*r(x, y)) != (x, y):
                witnesses["involutive"] = (x, y)
                break
        if "involutive" in witnesses:
            break

    for x in range(n):
        for y in range(n):
            a1, b1 = r(x, y)
            for z in range(n):
                # (r×id)(id×r)(r×id)
                b2, c2 = r(b1, z)
                a3, b3 = r(a1, b2)
                left = (a3, b3, c2)
                # (id×r)(r×id)(id×r)
                q1, w1 = r(y, z)
                p2, q2 = r(x, q1)
                q3, w3 = r(q2, w1)
                right = (p2, q3, w3)
                if left != right:
                    witnesses["braid"] = (x, y, z)
                    break
            if "braid" in witnesses:
                break
        if "braid" in witnesses:
            break

    return ValidationReport(
        nondegenerate="nondegenerate" not in witnesses,
        involutive="involutive" not in witnesses,
        braid="braid" not in witnesses,
        witnesses=witnesses,
    )


def alternative_tau(s: Solution) -> Optional[Table]:
    """Вариант τ_y(x) = σ⁻¹_{σ_x(y)}(y)."""
    inv = s.sigma_inverse
    if inv is None:
        return None
    n, sigma = s.n, s.sigma
    return tuple(tuple(inv[sigma[x][y]][y] for x in range(n)) for y in range(n))


def tau_variant_report(sigma: Sequence[Sequence[int]]) -> Dict[str, bool]:
    """Какие варианты формулы τ дают корректное решение для σ-таблицы."""
    base = Solution(sigma)
    report = {"x": validate(base).ok}
    alt = alternative_tau(base)
    report["y"] = alt is not None and validate(Solution(sigma, tau=alt)).ok
    return report


def trivial_solution(n: int) -> Solution:
    """Тривиальное решение σ_x = id, то есть r(x, y) = (y, x)."""
    return Solution([tuple(range(n))] * n)


def shift_solution(gamma: Permutation) -> Solution:
    """Решение сдвига: σ_x = γ для всех x."""
    return Solution([gamma.image] * gamma.degree)


def relabel(s: Solution, f: Sequence[int]) -> Solution:
    """Перенос решения по биекции f: σ'_{f(x)}(f(y)) = f(σ_x(y))."""
    n = s.n
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            table[f[x]][f[y]] = f[s.sigma[x][y]]
    return Solution(table)


def permutation_group(s: Solution) -> PermGroup:
    """Группа 𝒢(X, r), порожденная всеми σ_x (кэшируется в решении)."""
    return s.group()


def is_indecomposable(s: Solution) -> bool:
    return permutation_group(s).is_transitive()


def is_uniconnected(s: Solution) -> bool:
    return permutation_group(s).is_regular()


def retraction(s: Solution) -> Tuple[Solution, Tuple[int, ...]]:
    """Ретракция: классы x ∼ y ⇔ σ_x = σ_y, σ_[x]([y]) = [σ_x(y)].

    Returns:
        Пара (решение на классах, отображение точки в номер класса);
        классы нумеруются в порядке наименьших представителей.
    """
    labels: Dict[Tuple[int, ...], int] = {}
    class_map = []
    representatives = []
    for x, row in enumerate(s.sigma):
        if row not in labels:
            labels[row] = len(labels)
            representatives.append(x)
        class_map.append(labels[row])
    k = len(labels)
    table = [
        [class_map[s.sigma[representatives[i]][representatives[j]]] for j in range(k)]
        for i in range(k)
    ]
    return Solution(table), tuple(class_map)


def multipermutation_level(s: Solution):
    """Число ретракций до одноточечного решения или NOT_MULTIPERMUTATION."""
    level = 0
    current = s
    while current.n > 1:
        retracted, _ = retraction(current)
        if retracted.n == current.n:
            return NOT_MULTIPERMUTATION
        current = retracted
        level += 1
    return level


def _point_invariants(s: Solution) -> List[Tuple]:
    group = permutation_group(s)
    orbit_size = {}
    for orbit in group.orbits():
        for point in orbit:
            orbit_size[point] = len(orbit)
    result = []
    for x in range(s.n):
        perm = s.sigma_perm(x)
        fixed_by = sum(1 for y in range(s.n) if s.sigma[y][x] == x)
        result.append((perm.cycle_type(), orbit_size[x], s.sigma[x][x] == x, fixed_by))
    return result


def isomorphic(s1: Solution, s2: Solution, bound: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """Изоморфизм решений f с σ'_{f(x)}(f(y)) = f(σ_x(y)) или None.

    Перебор с распространением: каждое новое соответствие x ↦ y вместе с
    уже назначенными точками вынуждает образы σ_x(c), σ_c(x) и обратных.

    Raises:
        BoundExceededError: Если размер больше границы изоморфизма
    """
    limit = bound if bound is not None else settings.get_bound("isomorphism_bound")
    if s1.n > limit:
        raise BoundExceededError("размера решения при проверке изоморфизма", s1.n, limit)
    if s1.n != s2.n:
        return None
    if permutation_group(s1).order != permutation_group(s2).order:
        return None
    inv1, inv2 = _point_invariants(s1), _point_invariants(s2)
    if sorted(inv1) != sorted(inv2):
        return None

    n = s1.n
    a, b = s1.sigma, s2.sigma
    ai, bi = s1.sigma_inverse, s2.sigma_inverse
    f = [-1] * n
    finv = [-1] * n
    assigned: List[int] = []

    def assign(x: int, y: int, trail: List[int]) -> bool:
        queue = [(x, y)]
        while queue:
            p, q = queue.pop()
            if f[p] == q:
                continue
            if f[p] != -1 or finv[q] != -1 or inv1[p] != inv2[q]:
                return False
            f[p], finv[q] = q, p
            trail.append(p)
            assigned.append(p)
            for c in assigned:
                fc = f[c]
                queue.append((a[p][c], b[q][fc]))
                queue.append((a[c][p], b[fc][q]))
                queue.append((ai[p][c], bi[q][fc]))
                queue.append((ai[c][p], bi[fc][q]))
        return True

    def undo(trail: List[int]):
        for p in reversed(trail):
            finv[f[p]] = -1
            f[p] = -1
            assigned.pop()

    order = sorted(range(n), key=lambda x: (inv1[x], x))

    def search() -> bool:
        x = next((p for p in order if f[p] == -1), None)
        if x is None:
            return True
        for y in range(n):
            if finv[y] != -1 or inv2[y] != inv1[x]:
                continue
            trail: List[int] = []
            if assign(x, y, trail) and search():
                return True
            undo(trail)
        return False

    if search():
        return tuple(f)
    return None


def omega(s: Solution, args: Sequence[int]) -> int:
    """Ω_k(x_1, …, x_k) по рекурсии Ω_k = Ω_{k−1}(x_1..x_{k−1})·Ω_{k−1}(x_1..x_{k−2}, x_k)."""
    dot = s.dot
    memo: Dict[Tuple[int, ...], int] = {}

    def rec(t: Tuple[int, ...]) -> int:
        if len(t) == 1:
            return t[0]
        if t not in memo:
            memo[t] = dot[rec(t[:-1])][rec(t[:-2] + t[-1:])]
        return memo[t]

    return rec(tuple(args))


def dehornoy_class_direct(s: Solution) -> int:
    """Класс Деорнуа: наименьшее d ≥ 1 с Ω_{d+1}(x, …, x, y) = y.

    Используется специализированная рекурсия d_{k+1}(x) = d_k(x)·d_k(x),
    g_{k+1}(x, y) = d_k(x)·g_k(x, y).

    Raises:
        InternalConsistencyError: Если поиск превысил порядок 𝒢
    """
    n, dot = s.n, s.dot
    cap = permutation_group(s).order
    diagonal = list(range(n))
    rows = [list(range(n)) for _ in range(n)]
    d = 0
    while True:
        d += 1
        rows = [[dot[diagonal[x]][v] for v in rows[x]] for x in range(n)]
        if all(rows[x][y] == y for x in range(n) for y in range(n)):
            return d
        diagonal = [dot[diagonal[x]][diagonal[x]] for x in range(n)]
        if d > cap:
            raise InternalConsistencyError("класс Деорнуа не делит |𝒢|", d)


def basic_invariants(s: Solution) -> Dict[str, Any]:
    """Инварианты, не требующие перестановочной скобы."""
    group = permutation_group(s)
    retracted, _ = retraction(s)
    return {
        "n": s.n,
        "indecomposable": group.is_transitive(),
        "uniconnected": group.is_regular(),
        "mpl": multipermutation_level(s),
        "group_order": group.order,
        "group": group_type_name(group),
        "group_abelian": group.is_abelian(),
        "group_cyclic": group.is_cyclic(),
        "retraction_size": retracted.n,
    }
