"""Конечные левые скобы: таблицы, семейства, произведения, перечисление.

Скоба хранится двумя таблицами Кэли над носителем {0, …, m−1}; элемент 0
является единицей и для сложения, и для умножения ∘.
"""

import itertools
import logging
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import isprime

from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    BraceSpecError,
    InternalConsistencyError,
    InvalidParameterError,
    NotHomomorphismError,
    SubgroupError,
    TableFormatError,
)
from yangbaxter_hub.core.perm import PermGroup, extend_homomorphism
from yangbaxter_hub.core.utils import abelian_invariants, invariant_factor_groups, lcm_all
from yangbaxter_hub.decorators import log_action, timing_decorator
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]
Action = List[Tuple[int, ...]]


def _square(rows: Sequence[Sequence[int]], what: str) -> Table:
    m = len(rows)
    if m == 0:
        raise TableFormatError(what, "пустая таблица")
    result = []
    for i, row in enumerate(rows):
        row = tuple(int(v) for v in row)
        if len(row) != m:
            raise TableFormatError(what, f"длина строки {len(row)} вместо {m}", row=i)
        for j, v in enumerate(row):
            if not 0 <= v < m:
                raise TableFormatError(what, f"значение {v} вне диапазона", row=i, column=j)
        result.append(row)
    return tuple(result)


def _row_inverse(table: Table) -> Optional[Tuple[int, ...]]:
    """Номера обратных элементов (по строке, содержащей 0)."""
    inv = []
    for row in table:
        try:
            inv.append(row.index(0))
        except ValueError:
            return None
    return tuple(inv)


class Brace:
    """Левая скоба (B, +, ∘) с общей единицей 0.

    Производные данные (обратные элементы, λ-таблица, группы в левом
    регулярном представлении) вычисляются лениво и далее только читаются.
    """

    def __init__(
        self,
        add: Sequence[Sequence[int]],
        mul: Sequence[Sequence[int]],
        name: Optional[str] = None,
        labels: Optional[Sequence[Tuple]] = None,
    ):
        """Инициализация скобы.

        Args:
            add: Таблица сложения
            mul: Таблица умножения ∘
            name: Обозначение (например, спецификация семейства)
            labels: Метки элементов (координаты в произведениях)

        Raises:
            TableFormatError: Если таблицы не квадратные или разных размеров
        """
        self._add = _square(add, "+")
        self._mul = _square(mul, "∘")
        if len(self._add) != len(self._mul):
            raise TableFormatError("∘", "размер не совпадает с таблицей +")
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self._neg: Optional[Tuple[int, ...]] = None
        self._mul_inv: Optional[Tuple[int, ...]] = None
        self._lam: Optional[Table] = None
        self._groups: Dict[str, PermGroup] = {}
        self._lock = threading.Lock()

    @property
    def m(self) -> int:
        return len(self._add)

    @property
    def add(self) -> Table:
        return self._add

    @property
    def mul(self) -> Table:
        return self._mul

    @property
    def neg(self) -> Tuple[int, ...]:
        """Противоположные элементы −a."""
        if self._neg is None:
            neg = _row_inverse(self._add)
            if neg is None:
                raise TableFormatError("+", "у элемента нет противоположного")
            self._neg = neg
        return self._neg

    @property
    def mul_inverse(self) -> Tuple[int, ...]:
        """Обратные элементы a⁻ относительно ∘."""
        if self._mul_inv is None:
            inv = _row_inverse(self._mul)
            if inv is None:
                raise TableFormatError("∘", "у элемента нет обратного")
            self._mul_inv = inv
        return self._mul_inv

    @property
    def lam(self) -> Table:
        """λ-таблица: lam[a][b] = −a + a∘b."""
        if self._lam is None:
            neg, add, mul = self.neg, self._add, self._mul
            self._lam = tuple(
                tuple(add[neg[a]][mul[a][b]] for b in range(self.m)) for a in range(self.m)
            )
        return self._lam

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg[b]]

    def multiple(self, k: int, a: int) -> int:
        """k·a в аддитивной группе (k ≥ 0)."""
        result = 0
        for _ in range(k):
            result = self._add[result][a]
        return result

    def _group(self, which: str) -> PermGroup:
        with self._lock:
            if which not in self._groups:
                table = self._add if which == "+" else self._mul
                self._groups[which] = PermGroup.from_table(table)
        return self._groups[which]

    def additive_group(self) -> PermGroup:
        return self._group("+")

    def multiplicative_group(self) -> PermGroup:
        """(B, ∘) в левом регулярном представлении; номера элементов совпадают."""
        return self._group("∘")

    def index_of_label(self, label: Tuple) -> int:
        if self.labels is None:
            raise InvalidParameterError("label", label, "у скобы нет меток элементов")
        return self.labels.index(tuple(label))

    def __eq__(self, other) -> bool:
        return isinstance(other, Brace) and self._add == other._add and self._mul == other._mul

    def __hash__(self) -> int:
        return hash((self._add, self._mul))

    def __repr__(self) -> str:
        return f"Brace({self.name or '?'}, m={self.m})"


@dataclass(frozen=True)
class BraceMorphism:
    """Отображение скоб, сохраняющее + и ∘."""

    source: Brace
    target: Brace
    map: Tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_automorphism(self) -> bool:
        return self.source == self.target and len(set(self.map)) == len(self.map)


@dataclass
class BraceReport:
    """Результат проверки аксиом скобы; witnesses хранят первое нарушение."""

    additive_group: bool
    multiplicative_group: bool
    brace_law: bool
    lambda_action: bool
    witnesses: Dict[str, Tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.additive_group
            and self.multiplicative_group
            and self.brace_law
            and self.lambda_action
        )


def _group_witness(table: Table, commutative: bool) -> Optional[Tuple]:
    m = len(table)
    if table[0] != tuple(range(m)) or any(table[a][0] != a for a in range(m)):
        return ("identity", 0)
    for a in range(m):
        if 0 not in table[a]:
            return ("inverse", a)
    for a in range(m):
        for b in range(m):
            if commutative and table[a][b] != table[b][a]:
                return ("commutative", a, b)
            ab = table[a][b]
            for c in range(m):
                if table[ab][c] != table[a][table[b][c]]:
                    return ("associative", a, b, c)
    return None


def validate_brace(b: Brace) -> BraceReport:
    """Исчерпывающая проверка аксиом левой скобы.

    Args:
        b: Скоба

    Returns:
        Отчет с флагами и свидетелями нарушений
    """
    witnesses: Dict[str, Tuple] = {}
    w = _group_witness(b.add, commutative=True)
    if w is not None:
        witnesses["additive_group"] = w
    w = _group_witness(b.mul, commutative=False)
    if w is not None:
        witnesses["multiplicative_group"] = w
    if witnesses:
        # без групповых аксиом λ и закон скобы не определены
        witnesses.setdefault("brace_law", ("undefined",))
        witnesses.setdefault("lambda_action", ("undefined",))
        return BraceReport(
            "additive_group" not in witnesses,
            "multiplicative_group" not in witnesses,
            False,
            False,
            witnesses,
        )

    m, add, mul = b.m, b.add, b.mul
    neg = b.neg
    for a in range(m):
        for x in range(m):
            for y in range(m):
                # a∘(x+y) = a∘x − a + a∘y
                if mul[a][add[x][y]] != add[add[mul[a][x]][neg[a]]][mul[a][y]]:
                    witnesses["brace_law"] = (a, x, y)
                    break
            if "brace_law" in witnesses:
                break
        if "brace_law" in witnesses:
            break

    lam = b.lam
    for a in range(m):
        if len(set(lam[a])) != m:
            witnesses["lambda_action"] = ("bijective", a)
            break
        for x in range(m):
            if lam[mul[a][x]] != tuple(lam[a][v] for v in lam[x]):
                witnesses["lambda_action"] = ("homomorphism", a, x)
                break
        if "lambda_action" in witnesses:
            break

    return BraceReport(
        True,
        True,
        "brace_law" not in witnesses,
        "lambda_action" not in witnesses,
        witnesses,
    )


# --- семейства ------------------------------------------------------------


def _abelian_tables(factors: Sequence[int]) -> Tuple[Table, List[Tuple[int, ...]]]:
    """Таблица сложения ℤ/d_1 × … × ℤ/d_k; первая координата старшая."""
    coords = list(itertools.product(*[range(d) for d in factors]))
    index = {c: i for i, c in enumerate(coords)}
    table = tuple(
        tuple(
            index[tuple((x + y) % d for x, y, d in zip(a, b, factors))] for b in coords
        )
        for a in coords
    )
    return table, coords


def trivial_brace(factors: Sequence[int]) -> Brace:
    """Тривиальная скоба (a∘b = a+b) на ℤ/d_1 × … × ℤ/d_k.

    Raises:
        InvalidParameterError: Если множители не положительны
    """
    factors = tuple(int(d) for d in factors)
    if not factors or any(d < 1 for d in factors):
        raise InvalidParameterError("factors", factors, "нужны положительные множители")
    table, coords = _abelian_tables(factors)
    name = "trivial:" + ",".join(str(d) for d in factors)
    labels = coords if len(factors) > 1 else None
    return Brace(table, table, name=name, labels=labels)


def cyclic_brace(p: int, n: int, t: int) -> Brace:
    """Скоба C(p, n, t) на ℤ/pⁿ: a∘b = a + b + pᵗab.

    Raises:
        InvalidParameterError: Если p не простое или t вне [1, n]
    """
    if not isprime(p):
        raise InvalidParameterError("p", p, "должно быть простым")
    if n < 1:
        raise InvalidParameterError("n", n, "должно быть не меньше 1")
    if not 1 <= t <= n:
        raise InvalidParameterError("t", t, f"должно лежать в [1, {n}]")
    m = p ** n
    shift = p ** t
    add = [[(a + b) % m for b in range(m)] for a in range(m)]
    mul = [[(a + b + shift * a * b) % m for b in range(m)] for a in range(m)]
    return Brace(add, mul, name=f"C:{p},{n},{t}")


def direct_product(b1: Brace, b2: Brace) -> Brace:
    """Прямое произведение; пара (x, y) имеет номер x·|B2| + y."""
    return semidirect_product(b1, b2, [tuple(range(b1.m))] * b2.m, name=_product_name("dp", b1, b2))


def _product_name(kind: str, b1: Brace, b2: Brace, alpha: str = None) -> str:
    parts = [b1.name or "?", b2.name or "?"] + ([alpha] if alpha else [])
    return f"{kind}:" + ",".join(parts)


def check_action(ap: Brace, aq: Brace, alpha: Action):
    """Проверка, что α: (aq, ∘) → Aut(ap) гомоморфизм в автоморфизмы скобы.

    Raises:
        NotHomomorphismError: С указанием нарушения и свидетеля
    """
    if len(alpha) != aq.m:
        raise NotHomomorphismError(f"ожидалось {aq.m} автоморфизмов", len(alpha))
    mp = ap.m
    for a, phi in enumerate(alpha):
        if sorted(phi) != list(range(mp)):
            raise NotHomomorphismError("α_a не биекция", a)
        for x in range(mp):
            for y in range(mp):
                if phi[ap.add[x][y]] != ap.add[phi[x]][phi[y]]:
                    raise NotHomomorphismError("α_a не сохраняет +", (a, x, y))
                if phi[ap.mul[x][y]] != ap.mul[phi[x]][phi[y]]:
                    raise NotHomomorphismError("α_a не сохраняет ∘", (a, x, y))
    for a in range(aq.m):
        for b in range(aq.m):
            composed = tuple(alpha[a][v] for v in alpha[b])
            if alpha[aq.mul[a][b]] != composed:
                raise NotHomomorphismError("α_{a∘b} ≠ α_a∘α_b", (a, b))


def semidirect_product(ap: Brace, aq: Brace, alpha: Action, name: Optional[str] = None) -> Brace:
    """Полупрямое произведение ap ⋊_α aq.

    (a₁, a₂) + (b₁, b₂) = (a₁ + b₁, a₂ + b₂),
    (a₁, a₂) ∘ (b₁, b₂) = (a₁ ∘ α_{a₂}(b₁), a₂ ∘ b₂).

    Args:
        ap: Левый сомножитель
        aq: Правый сомножитель
        alpha: Для каждого элемента aq таблица образов автоморфизма ap
        name: Обозначение результата

    Raises:
        NotHomomorphismError: Если α не гомоморфизм в автоморфизмы ap
    """
    check_action(ap, aq, alpha)
    mp, mq = ap.m, aq.m
    pairs = [(x, y) for x in range(mp) for y in range(mq)]
    add = [
        [ap.add[a1][b1] * mq + aq.add[a2][b2] for b1, b2 in pairs] for a1, a2 in pairs
    ]
    mul = [
        [ap.mul[a1][alpha[a2][b1]] * mq + aq.mul[a2][b2] for b1, b2 in pairs]
        for a1, a2 in pairs
    ]
    return Brace(add, mul, name=name or _product_name("sd", ap, aq), labels=pairs)


def _additive_map(ap: Brace, kind: str, k: int = 1) -> Tuple[int, ...]:
    if kind == "id":
        return tuple(range(ap.m))
    if kind == "inv":
        return ap.neg
    if kind == "mul":
        return tuple(ap.multiple(k % ap.m if ap.m > 1 else 0, x) for x in range(ap.m))
    raise InvalidParameterError("alpha", kind, "ожидается inv, id или mul<k>")


def _perm_power(phi: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    result = tuple(range(len(phi)))
    for _ in range(k):
        result = tuple(phi[v] for v in result)
    return result


def power_action(ap: Brace, aq: Brace, phi: Sequence[int]) -> Action:
    """α_a = φ^a, где a понимается как целое число (носитель ℤ/m).

    Корректно для aq = C(q, n, t), если порядок φ делит qᵗ.

    Raises:
        NotHomomorphismError: Если отображение не гомоморфизм
    """
    phi = tuple(phi)
    alpha = [_perm_power(phi, a) for a in range(aq.m)]
    check_action(ap, aq, alpha)
    return alpha


def generator_action(ap: Brace, aq: Brace, phi: Sequence[int]) -> Action:
    """α_{g^k} = φ^k для выделенной образующей g циклической группы (aq, ∘).

    Выделенная образующая: наименьший элемент порядка |aq|.

    Raises:
        NotHomomorphismError: Если (aq, ∘) не циклическая или φ^|aq| ≠ id
    """
    phi = tuple(phi)
    group = aq.multiplicative_group()
    generator = next((i for i in range(aq.m) if group.element_order(i) == aq.m), None)
    if generator is None:
        raise NotHomomorphismError("группа (aq, ∘) не циклическая")
    alpha: List[Optional[Tuple[int, ...]]] = [None] * aq.m
    element, power = 0, tuple(range(ap.m))
    for _ in range(aq.m):
        alpha[element] = power
        element = aq.mul[element][generator]
        power = tuple(phi[v] for v in power)
    check_action(ap, aq, alpha)
    return alpha


def build_action(ap: Brace, aq: Brace, spec: str) -> Action:
    """Действие по записи ``inv``, ``id`` или ``mul<k>``.

    Сначала пробуется α_a = φ^a, затем действие через образующую (aq, ∘).
    """
    if spec.startswith("mul"):
        try:
            phi = _additive_map(ap, "mul", int(spec[3:]))
        except ValueError as e:
            raise BraceSpecError(spec, "ожидается mul<k>") from e
    else:
        phi = _additive_map(ap, spec)
    try:
        return power_action(ap, aq, phi)
    except NotHomomorphismError as first:
        logger.debug("Power action rejected (%s), trying generator action", first)
        return generator_action(ap, aq, phi)


# --- λ, цоколь, порядки ---------------------------------------------------


def lambda_table(b: Brace) -> Table:
    return b.lam


def socle(b: Brace) -> FrozenSet[int]:
    """Soc(B) = {a : λ_a = id}."""
    identity = tuple(range(b.m))
    return frozenset(a for a in range(b.m) if b.lam[a] == identity)


def additive_order(b: Brace, x: int) -> int:
    k, v = 1, x
    while v != 0:
        v = b.add[v][x]
        k += 1
    return k


def multiplicative_order(b: Brace, x: int) -> int:
    k, v = 1, x
    while v != 0:
        v = b.mul[v][x]
        k += 1
    return k


def additive_exponent(b: Brace) -> int:
    return lcm_all(additive_order(b, x) for x in range(b.m))


def additive_invariant_factors(b: Brace) -> Tuple[int, ...]:
    """Инвариантные множители (B, +); (1,) для одноэлементной скобы."""
    factors = abelian_invariants(additive_order(b, x) for x in range(b.m))
    return tuple(factors) if factors else (1,)


def is_cyclic_brace(b: Brace) -> bool:
    """Скоба циклическая, если (B, +) циклическая."""
    return any(additive_order(b, x) == b.m for x in range(b.m))


def additive_sylow(b: Brace, p: int) -> FrozenSet[int]:
    """Силовская p-подгруппа (B, +)."""
    result = []
    for x in range(b.m):
        o = additive_order(b, x)
        while o % p == 0:
            o //= p
        if o == 1:
            result.append(x)
    return frozenset(result)


# --- идеалы и фактор ------------------------------------------------------


def _is_additive_subgroup(b: Brace, subset: FrozenSet[int]) -> bool:
    return 0 in subset and all(b.add[x][y] in subset for x in subset for y in subset)


def is_left_ideal(b: Brace, subset) -> bool:
    """Аддитивная подгруппа, инвариантная относительно всех λ_a."""
    subset = frozenset(subset)
    if not _is_additive_subgroup(b, subset):
        return False
    return all(b.lam[a][x] in subset for a in range(b.m) for x in subset)


def is_ideal(b: Brace, subset) -> bool:
    """Левый идеал, нормальный в (B, ∘)."""
    subset = frozenset(subset)
    if not is_left_ideal(b, subset):
        return False
    group = b.multiplicative_group()
    return group.is_normal(subset)


def quotient(b: Brace, ideal) -> Tuple[Brace, Tuple[int, ...]]:
    """Фактор-скоба по идеалу и отображение элемента в номер класса.

    Классы a∘I нумеруются по наименьшему представителю.

    Raises:
        SubgroupError: Если подмножество не идеал
    """
    ideal = frozenset(ideal)
    if not is_ideal(b, ideal):
        raise SubgroupError("подмножество не является идеалом скобы")
    class_of = [-1] * b.m
    representatives = []
    for a in range(b.m):
        if class_of[a] != -1:
            continue
        for s in ideal:
            class_of[b.mul[a][s]] = len(representatives)
        representatives.append(a)
    add = [[class_of[b.add[x][y]] for y in representatives] for x in representatives]
    mul = [[class_of[b.mul[x][y]] for y in representatives] for x in representatives]
    name = f"{b.name}/I" if b.name else None
    return Brace(add, mul, name=name), tuple(class_of)


def quotient_by_socle(b: Brace) -> Brace:
    return quotient(b, socle(b))[0]


# --- автоморфизмы и изоморфизм --------------------------------------------


def _mul_generators(b: Brace) -> List[int]:
    return b.multiplicative_group().minimal_generating_set()


def _element_profile(b: Brace, x: int) -> Tuple[int, int, bool]:
    identity = tuple(range(b.m))
    return (
        multiplicative_order(b, x),
        additive_order(b, x),
        b.lam[x] == identity,
    )


def _morphisms(b1: Brace, b2: Brace, first_only: bool, bound: Optional[int]) -> List[BraceMorphism]:
    limit = bound if bound is not None else settings.get_bound("subgroup_bound")
    if b1.m > limit:
        raise BoundExceededError("порядка скобы", b1.m, limit)
    if b1.m != b2.m:
        return []
    p1 = [_element_profile(b1, x) for x in range(b1.m)]
    p2 = [_element_profile(b2, x) for x in range(b2.m)]
    if sorted(p1) != sorted(p2):
        return []
    gens = _mul_generators(b1)
    if not gens:
        return [BraceMorphism(b1, b2, (0,))]
    candidates = [[y for y in range(b2.m) if p2[y] == p1[g]] for g in gens]
    result = []
    for images in itertools.product(*candidates):
        phi = extend_homomorphism(b1.mul, gens, b2.mul, images)
        if phi is None or len(set(phi)) != b1.m:
            continue
        if all(
            phi[b1.add[x][y]] == b2.add[phi[x]][phi[y]]
            for x in range(b1.m)
            for y in range(b1.m)
        ):
            result.append(BraceMorphism(b1, b2, tuple(phi)))
            if first_only:
                break
    return result


def automorphisms(b: Brace, bound: Optional[int] = None) -> List[BraceMorphism]:
    """Все автоморфизмы скобы (перебор образов ∘-образующих).

    Raises:
        BoundExceededError: Если порядок больше границы
    """
    return _morphisms(b, b, first_only=False, bound=bound)


def brace_isomorphic(b1: Brace, b2: Brace, bound: Optional[int] = None) -> Optional[BraceMorphism]:
    """Изоморфизм скоб или None."""
    found = _morphisms(b1, b2, first_only=True, bound=bound)
    return found[0] if found else None


def additive_automorphisms(b: Brace, limit: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Все автоморфизмы группы (B, +) как таблицы образов.

    Raises:
        BoundExceededError: Если автоморфизмов больше limit
    """
    group = b.additive_group()
    gens = group.minimal_generating_set()
    if not gens:
        return [(0,)]
    orders = [additive_order(b, x) for x in range(b.m)]
    candidates = [[y for y in range(b.m) if orders[y] == orders[g]] for g in gens]
    result = []
    for images in itertools.product(*candidates):
        phi = extend_homomorphism(b.add, gens, b.add, images)
        if phi is None or len(set(phi)) != b.m:
            continue
        result.append(tuple(phi))
        if limit is not None and len(result) > limit:
            raise BoundExceededError("числа автоморфизмов (B, +)", len(result), limit)
    return result


# --- перечисление ---------------------------------------------------------


@dataclass
class BraceCensus:
    """Результат перечисления: найденные скобы и пропущенные аддитивные типы."""

    m: int
    braces: List[Brace]
    skipped: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.skipped


def _semiregular_closure(gens: List[Tuple[int, ...]], m: int) -> Optional[Dict[int, Tuple[int, ...]]]:
    """Замыкание, если в нем никакой неединичный элемент не фиксирует 0."""
    identity = tuple(range(m))
    by_origin = {0: identity}
    queue = [identity]
    while queue:
        current = queue.pop()
        for g in gens:
            img = tuple(current[v] for v in g)
            known = by_origin.get(img[0])
            if known is None:
                by_origin[img[0]] = img
                queue.append(img)
            elif known != img:
                return None
    return by_origin


def _regular_subgroups(add: Table, auts: List[Tuple[int, ...]]) -> List[Dict[int, Tuple[int, ...]]]:
    """Регулярные подгруппы Hol(A), A задана таблицей сложения.

    Элементы голоморфа x ↦ a + M(x); на каждом уровне добавляется элемент,
    переводящий 0 в наименьшую еще не достигнутую точку.
    """
    m = len(add)
    found: Dict[FrozenSet[Tuple[int, ...]], Dict[int, Tuple[int, ...]]] = {}
    seen = set()

    def extend(elements: Dict[int, Tuple[int, ...]], gens: List[Tuple[int, ...]]):
        key = frozenset(elements.values())
        if key in seen:
            return
        seen.add(key)
        if len(elements) == m:
            found.setdefault(key, elements)
            return
        x = next(p for p in range(m) if p not in elements)
        for aut in auts:
            g = tuple(add[x][aut[y]] for y in range(m))
            closed = _semiregular_closure(gens + [g], m)
            if closed is not None:
                extend(closed, gens + [g])

    extend({0: tuple(range(m))}, [])
    return list(found.values())


def _canonical_mul(mul: Table, auts: List[Tuple[int, ...]]) -> Table:
    """Минимальная таблица ∘ по сопряжению автоморфизмами (A, +)."""
    m = len(mul)
    best = None
    for phi in auts:
        relabeled = [[0] * m for _ in range(m)]
        for a in range(m):
            for b in range(m):
                relabeled[phi[a]][phi[b]] = phi[mul[a][b]]
        candidate = tuple(tuple(row) for row in relabeled)
        if best is None or candidate < best:
            best = candidate
    return best


@timing_decorator
def braces_with_additive_group(factors: Sequence[int]) -> List[Brace]:
    """Все скобы с аддитивной группой ℤ/d_1 × … × ℤ/d_k с точностью до изоморфизма.

    Raises:
        BoundExceededError: Если голоморф больше holomorph_bound
    """
    base = trivial_brace(factors)
    bound = settings.get_bound("holomorph_bound")
    try:
        auts = additive_automorphisms(base, limit=bound // base.m)
    except BoundExceededError as e:
        raise BoundExceededError("порядка голоморфа Hol(A)", base.m * e.size, bound) from e
    subgroups = _regular_subgroups(base.add, auts)
    tables = set()
    for elements in subgroups:
        mul = tuple(elements[a] for a in range(base.m))
        tables.add(_canonical_mul(mul, auts))
    suffix = ",".join(str(d) for d in factors)
    braces = [
        Brace(base.add, mul, name=f"hol:{suffix}#{i}", labels=base.labels)
        for i, mul in enumerate(sorted(tables))
    ]
    logger.debug(
        "Additive type %s: %d regular subgroups, %d braces",
        factors, len(subgroups), len(braces),
    )
    return braces


@log_action(action="ENUMERATE_BRACES")
def enumerate_braces_report(m: int, bound: Optional[int] = None) -> BraceCensus:
    """Перечисление скоб порядка m с отчетом о пропущенных аддитивных типах.

    Raises:
        BoundExceededError: Если m больше brace_order_bound
    """
    limit = bound if bound is not None else settings.get_bound("brace_order_bound")
    if m > limit:
        raise BoundExceededError("порядка скобы при перечислении", m, limit)
    braces: List[Brace] = []
    skipped = []
    for factors in invariant_factor_groups(m):
        try:
            braces.extend(braces_with_additive_group(factors))
        except BoundExceededError as e:
            logger.warning("Additive type %s skipped: %s", factors, e)
            skipped.append((factors, e.size))
    logger.info("Order %d: %d braces, %d additive types skipped", m, len(braces), len(skipped))
    return BraceCensus(m, braces, skipped)


def enumerate_braces(m: int, bound: Optional[int] = None) -> List[Brace]:
    """Все скобы порядка m, попарно неизоморфные.

    Raises:
        BoundExceededError: Если порядок или голоморф больше границы
    """
    report = enumerate_braces_report(m, bound)
    if not report.complete:
        factors, size = report.skipped[0]
        raise BoundExceededError(
            f"голоморфа аддитивного типа {factors}", size, settings.get_bound("holomorph_bound")
        )
    return report.braces


def find_braces(
    m: int,
    additive: Optional[Sequence[int]] = None,
    multiplicative: Optional[Callable[[PermGroup], bool]] = None,
) -> List[Brace]:
    """Скобы порядка m с заданной аддитивной группой и свойством (B, ∘)."""
    if additive is not None:
        candidates = braces_with_additive_group(tuple(additive))
    else:
        candidates = enumerate_braces_report(m).braces
    if multiplicative is None:
        return candidates
    return [b for b in candidates if multiplicative(b.multiplicative_group())]


def brace_from_lambda(add: Table, lam: Sequence[Sequence[int]]) -> Brace:
    """Скоба по λ-отображению: a∘b = a + λ_a(b)."""
    m = len(add)
    mul = [[add[a][lam[a][b]] for b in range(m)] for a in range(m)]
    return Brace(add, mul)


def brute_force_braces(m: int) -> List[Brace]:
    """Все скобы порядка m перебором λ-отображений A → Aut(A) (без учета изоморфизма).

    Условие λ_{a + λ_a(b)} = λ_a ∘ λ_b проверяется для каждой таблицы.
    """
    result = []
    for factors in invariant_factor_groups(m):
        base = trivial_brace(factors)
        auts = additive_automorphisms(base)
        identity = tuple(range(m))
        for choice in itertools.product(auts, repeat=m - 1):
            lam = (identity,) + choice
            if all(
                lam[base.add[a][lam[a][b]]] == tuple(lam[a][v] for v in lam[b])
                for a in range(m)
                for b in range(m)
            ):
                result.append(brace_from_lambda(base.add, lam))
    return result


# --- разбор спецификаций --------------------------------------------------


def _parse_atom(atom: str) -> Brace:
    atom = atom.strip()
    try:
        if atom.startswith("triv"):
            return trivial_brace([int(atom[4:])])
        if atom.startswith("c"):
            p, n, t = (int(v) for v in atom[1:].split("."))
            return cyclic_brace(p, n, t)
        if atom.startswith("enum"):
            m, i = (int(v) for v in atom[4:].split("."))
            return _enumerated(m, i)
    except ValueError as e:
        raise BraceSpecError(atom, "некорректные числа в атоме") from e
    raise BraceSpecError(atom, "ожидается triv<k>, c<p>.<n>.<t> или enum<m>.<i>")


def _enumerated(m: int, i: int) -> Brace:
    braces = enumerate_braces_report(m).braces
    if not 0 <= i < len(braces):
        raise BraceSpecError(f"enum:{m},{i}", f"номер вне диапазона 0..{len(braces) - 1}")
    return braces[i]


def parse_brace_spec(spec: str) -> Brace:
    """Скоба по строке: ``trivial:<множители>``, ``C:p,n,t``, ``sd:L,R,ALPHA``,
    ``dp:L,R``, ``enum:m,i``.

    Raises:
        BraceSpecError: Если строка не соответствует грамматике
    """
    kind, sep, body = spec.partition(":")
    if not sep:
        raise BraceSpecError(spec, "нет префикса семейства")
    args = [a.strip() for a in body.split(",") if a.strip()]
    try:
        if kind == "trivial":
            brace = trivial_brace([int(a) for a in args])
        elif kind == "C":
            if len(args) != 3:
                raise BraceSpecError(spec, "ожидается C:p,n,t")
            brace = cyclic_brace(*(int(a) for a in args))
        elif kind == "sd":
            if len(args) != 3:
                raise BraceSpecError(spec, "ожидается sd:L,R,ALPHA")
            left, right = _parse_atom(args[0]), _parse_atom(args[1])
            alpha = build_action(left, right, args[2])
            brace = semidirect_product(left, right, alpha)
        elif kind == "dp":
            if len(args) != 2:
                raise BraceSpecError(spec, "ожидается dp:L,R")
            brace = direct_product(_parse_atom(args[0]), _parse_atom(args[1]))
        elif kind == "enum":
            if len(args) != 2:
                raise BraceSpecError(spec, "ожидается enum:m,i")
            brace = _enumerated(int(args[0]), int(args[1]))
        else:
            raise BraceSpecError(spec, f"неизвестное семейство '{kind}'")
    except ValueError as e:
        if isinstance(e, (BraceSpecError, BoundExceededError, InvalidParameterError)):
            raise
        raise BraceSpecError(spec, str(e)) from e
    except NotHomomorphismError as e:
        raise BraceSpecError(spec, str(e)) from e
    brace.name = spec
    report = validate_brace(brace)
    if not report.ok:
        raise InternalConsistencyError("построенная скоба не проходит проверку", report.witnesses)
    return brace
