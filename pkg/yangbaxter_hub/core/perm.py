"""Перестановки конечных множеств и движок малых групп.

Соглашение о композиции одно на весь пакет: ``(p∘q)(i) = p(q(i))``.
Точки нумеруются с нуля; запись циклами с единицы используется только
при выводе и при разборе примеров.
"""

import logging
import re
from collections import deque
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    DegreeMismatchError,
    SubgroupError,
    TableFormatError,
)
from yangbaxter_hub.core.utils import abelian_invariants, prime_factors
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)

Image = Tuple[int, ...]
Subgroup = FrozenSet[int]


def _compose(p: Image, q: Image) -> Image:
    return tuple([p[j] for j in q])


def _invert(p: Image) -> Image:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


class Permutation:
    """Биекция множества {0, …, n−1}, заданная таблицей образов."""

    __slots__ = ("_image",)

    def __init__(self, image: Sequence[int], check: bool = True):
        """Инициализация перестановки.

        Args:
            image: Образы точек 0..n−1
            check: Проверять ли биективность
        """
        image = tuple(int(v) for v in image)
        if check:
            if not image:
                raise TableFormatError("перестановки", "пустая таблица образов")
            if sorted(image) != list(range(len(image))):
                raise TableFormatError(
                    "перестановки", f"{list(image)} не является биекцией"
                )
        self._image = image

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(
        cls, n: int, cycles: Iterable[Sequence[int]], one_indexed: bool = True
    ) -> "Permutation":
        """Перестановка степени n по списку циклов."""
        image = list(range(n))
        shift = 1 if one_indexed else 0
        seen = set()
        for cycle in cycles:
            points = [c - shift for c in cycle]
            for point in points:
                if not 0 <= point < n or point in seen:
                    raise TableFormatError("циклов", f"точка {point + shift} вне диапазона или повторяется")
                seen.add(point)
            for k, point in enumerate(points):
                image[point] = points[(k + 1) % len(points)]
        return cls(image, check=False)

    @classmethod
    def parse_cycles(cls, n: int, text: str) -> "Permutation":
        """Разбор записи вида ``(1 3 2 4)(5,6)`` (точки с единицы)."""
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            points = [int(tok) for tok in re.split(r"[\s,;]+", body.strip()) if tok]
            if points:
                cycles.append(points)
        return cls.from_cycles(n, cycles, one_indexed=True)

    @property
    def degree(self) -> int:
        return len(self._image)

    @property
    def image(self) -> Image:
        return self._image

    def __call__(self, point: int) -> int:
        return self._image[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._image == other._image

    def __hash__(self) -> int:
        return hash(self._image)

    def __lt__(self, other: "Permutation") -> bool:
        return self._image < other._image

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycle_string()}, n={self.degree})"

    def compose(self, other: "Permutation") -> "Permutation":
        """Композиция self∘other."""
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return Permutation(_invert(self._image), check=False)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._image))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """Циклы перестановки (точки с нуля), начиная с наименьшей точки."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self._image[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self._image[point]
            if include_fixed or len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        """Длины всех циклов (включая неподвижные точки) по убыванию."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        result = 1
        for length in self.cycle_type():
            result = result * length // gcd(result, length)
        return result

    def to_cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)

    def to_image_string(self) -> str:
        return " ".join(str(v) for v in self._image)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Композиция (p∘q)(i) = p(q(i)).

    Raises:
        DegreeMismatchError: Если степени различаются
    """
    if p.degree != q.degree:
        raise DegreeMismatchError(p.degree, q.degree)
    return Permutation(_compose(p.image, q.image), check=False)


class MinimalNonCyclicType(NamedTuple):
    """Тип минимальной нециклической группы: a, b или c."""

    kind: str
    p: int
    q: Optional[int] = None
    n: Optional[int] = None


class CosetSpace:
    """Левые смежные классы g∘H подгруппы H в группе."""

    def __init__(self, group: "PermGroup", subgroup: Subgroup):
        self.group = group
        self.subgroup = frozenset(subgroup)
        buckets: Dict[FrozenSet[int], None] = {}
        for g in range(group.order):
            coset = frozenset(group.mul(g, h) for h in self.subgroup)
            buckets.setdefault(coset, None)
        ordered = sorted((tuple(sorted(c)) for c in buckets), key=lambda c: c[0])
        self.cosets: List[Tuple[int, ...]] = ordered
        self.representatives: List[int] = [c[0] for c in ordered]
        self._coset_of: Dict[int, int] = {}
        for idx, coset in enumerate(ordered):
            for element in coset:
                self._coset_of[element] = idx

    def __len__(self) -> int:
        return len(self.cosets)

    def coset_of(self, element: int) -> int:
        """Номер смежного класса, содержащего элемент."""
        return self._coset_of[element]


class PermGroup:
    """Полностью материализованная группа перестановок.

    Элементы хранятся в порядке обхода в ширину от тождественной
    перестановки; для каждого элемента известно слово в образующих.
    """

    def __init__(
        self,
        degree: int,
        images: List[Image],
        generators: List[int],
        words: List[Tuple[int, ...]],
    ):
        self._degree = degree
        self._images = images
        self._index = {img: i for i, img in enumerate(images)}
        self._generators = generators
        self._words = words
        self._table: Optional[List[List[int]]] = None
        self._inverses: Optional[List[int]] = None
        self._orders: Optional[List[int]] = None
        self._subgroups: Optional[List[Subgroup]] = None

    @classmethod
    def from_elements(cls, perms: Sequence[Image]) -> "PermGroup":
        """Группа с заданным порядком элементов (первый элемент тождественный).

        Raises:
            SubgroupError: Если набор не замкнут или не начинается с единицы
        """
        images = [tuple(p) for p in perms]
        degree = len(images[0])
        index = {img: i for i, img in enumerate(images)}
        if images[0] != tuple(range(degree)) or len(index) != len(images):
            raise SubgroupError("первый элемент должен быть единицей, элементы различны")
        gens = _greedy_generators(images, index)
        words: List[Optional[Tuple[int, ...]]] = [None] * len(images)
        words[0] = ()
        queue = deque([0])
        while queue:
            e = queue.popleft()
            for k, g in enumerate(gens):
                img = _compose(images[e], images[g])
                t = index.get(img)
                if t is None:
                    raise SubgroupError("набор не замкнут относительно композиции")
                if words[t] is None:
                    words[t] = words[e] + (k,)
                    queue.append(t)
        if any(w is None for w in words):
            raise SubgroupError("набор не порождается своими элементами")
        return cls(degree, images, gens, words)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]]) -> "PermGroup":
        """Левое регулярное представление группы по таблице Кэли.

        Элемент i группы переходит в перестановку x ↦ table[i][x], поэтому
        номера элементов совпадают с номерами строк таблицы.
        """
        return cls.from_elements([tuple(row) for row in table])

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def order(self) -> int:
        return len(self._images)

    def __len__(self) -> int:
        return len(self._images)

    @property
    def generators(self) -> List[int]:
        """Номера образующих элементов."""
        return list(self._generators)

    def image(self, i: int) -> Image:
        return self._images[i]

    def element(self, i: int) -> Permutation:
        return Permutation(self._images[i], check=False)

    @property
    def elements(self) -> List[Permutation]:
        return [Permutation(img, check=False) for img in self._images]

    def word(self, i: int) -> Tuple[int, ...]:
        """Слово элемента: номера образующих g_{w0}∘g_{w1}∘…"""
        return self._words[i]

    def evaluate_word(self, word: Sequence[int]) -> Permutation:
        img = tuple(range(self._degree))
        for k in word:
            img = _compose(img, self._images[self._generators[k]])
        return Permutation(img, check=False)

    def index_of(self, perm) -> Optional[int]:
        img = perm.image if isinstance(perm, Permutation) else tuple(perm)
        return self._index.get(img)

    def __contains__(self, perm) -> bool:
        return self.index_of(perm) is not None

    def mul(self, i: int, j: int) -> int:
        """Номер произведения e_i∘e_j."""
        if self._table is not None:
            return self._table[i][j]
        return self._index[_compose(self._images[i], self._images[j])]

    def _build_table(self) -> List[List[int]]:
        if self._table is None:
            index = self._index
            imgs = self._images
            self._table = [
                [index[_compose(a, b)] for b in imgs] for a in imgs
            ]
        return self._table

    @property
    def multiplication_table(self) -> List[List[int]]:
        return self._build_table()

    def inverse_index(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [self._index[_invert(img)] for img in self._images]
        return self._inverses[i]

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [
                Permutation(img, check=False).order() for img in self._images
            ]
        return self._orders[i]

    def order_profile(self) -> Tuple[int, ...]:
        return tuple(sorted(self.element_order(i) for i in range(self.order)))

    def conjugate(self, h: Iterable[int], g: int) -> Subgroup:
        """Сопряженная подгруппа g∘H∘g⁻¹."""
        g_inv = self.inverse_index(g)
        return frozenset(self.mul(self.mul(g, x), g_inv) for x in h)

    # --- орбиты -----------------------------------------------------------

    def orbits(self) -> List[Tuple[int, ...]]:
        """Разбиение {0..n−1} на орбиты, упорядоченные по наименьшей точке."""
        parent = list(range(self._degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self._generators:
            for point, target in enumerate(self._images[g]):
                a, b = find(point), find(target)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: Dict[int, List[int]] = {}
        for point in range(self._degree):
            groups.setdefault(find(point), []).append(point)
        return [tuple(v) for _, v in sorted(groups.items())]

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self._degree

    def stabilizer(self, point: int) -> Subgroup:
        return frozenset(i for i, img in enumerate(self._images) if img[point] == point)

    # --- подгруппы --------------------------------------------------------

    def _check_bound(self, bound: Optional[int]):
        limit = bound if bound is not None else settings.get_bound("subgroup_bound")
        if self.order > limit:
            raise BoundExceededError("порядка группы", self.order, limit)

    def subgroup_closure(self, indices: Iterable[int]) -> Subgroup:
        """Подгруппа, порожденная элементами с данными номерами."""
        gens = [g for g in set(indices) if g != 0]
        reached = {0}
        queue = deque([0])
        while queue:
            e = queue.popleft()
            for g in gens:
                t = self.mul(e, g)
                if t not in reached:
                    reached.add(t)
                    queue.append(t)
        return frozenset(reached)

    def cyclic_subgroup(self, i: int) -> Subgroup:
        return self.subgroup_closure([i])

    def subgroups(self, bound: Optional[int] = None) -> List[Subgroup]:
        """Все подгруппы, каждая ровно один раз.

        Перебор снизу вверх: циклические подгруппы, затем их соединения.

        Raises:
            BoundExceededError: Если порядок группы больше границы
        """
        self._check_bound(bound)
        if self._subgroups is not None:
            return list(self._subgroups)
        self._build_table()
        cyclic: Dict[Subgroup, int] = {}
        for i in range(self.order):
            cyclic.setdefault(self.cyclic_subgroup(i), i)
        generated: Dict[Subgroup, Tuple[int, ...]] = {
            c: ((g,) if g else ()) for c, g in cyclic.items()
        }
        frontier = list(generated)
        while frontier:
            fresh = []
            for h in frontier:
                for c, g in cyclic.items():
                    if g in h:
                        continue
                    gens = generated[h] + (g,)
                    joined = self.subgroup_closure(gens)
                    if joined not in generated:
                        generated[joined] = gens
                        fresh.append(joined)
            frontier = fresh
        result = sorted(generated, key=lambda s: (len(s), sorted(s)))
        self._subgroups = result
        logger.debug("Group of order %d has %d subgroups", self.order, len(result))
        return list(result)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        return 0 in subset and self.subgroup_closure(subset) == subset

    def is_normal(self, h: Iterable[int]) -> bool:
        h = frozenset(h)
        return all(self.conjugate(h, g) == h for g in self._generators)

    def core(self, h: Iterable[int]) -> Subgroup:
        """Ядро подгруппы: пересечение всех сопряженных x∘H∘x⁻¹."""
        result = frozenset(h)
        for g in range(self.order):
            result = result & self.conjugate(h, g)
        return result

    def coset_space(self, h: Iterable[int]) -> CosetSpace:
        h = frozenset(h)
        if not self.is_subgroup(h):
            raise SubgroupError("набор элементов не замкнут")
        return CosetSpace(self, h)

    def minimal_generating_set(self) -> List[int]:
        """Жадный детерминированный набор образующих."""
        return _greedy_generators(self._images, self._index)

    # --- распознаватели ---------------------------------------------------

    def is_abelian(self) -> bool:
        gens = self._generators
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))

    def is_dihedral(self) -> bool:
        """Диэдральная группа порядка 2k, k ≥ 2 (при k = 2 это группа Клейна)."""
        if self.order < 4 or self.order % 2:
            return False
        k = self.order // 2
        if k == 2:
            return not self.is_cyclic()
        for r in range(self.order):
            if self.element_order(r) != k:
                continue
            rotations = self.cyclic_subgroup(r)
            r_inv = self.inverse_index(r)
            for s in range(self.order):
                if s in rotations or self.element_order(s) != 2:
                    continue
                if self.mul(self.mul(s, r), s) == r_inv:
                    return True
            return False
        return False

    def is_generalized_dihedral(self, bound: Optional[int] = None) -> bool:
        """Dih(A): абелева подгруппа индекса 2 и инволюция вне нее, обращающая A."""
        if self.order % 2 or self.order < 2:
            return False
        half = self.order // 2
        for a in self.subgroups(bound):
            if len(a) != half:
                continue
            if any(self.mul(x, y) != self.mul(y, x) for x in a for y in a):
                continue
            for s in range(self.order):
                if s in a or self.element_order(s) != 2:
                    continue
                if all(self.mul(self.mul(s, x), s) == self.inverse_index(x) for x in a):
                    return True
        return False

    def is_generalized_quaternion(self) -> bool:
        """Нециклическая 2-группа с единственной инволюцией."""
        n = self.order
        if n < 8 or n & (n - 1):
            return False
        involutions = sum(1 for i in range(n) if self.element_order(i) == 2)
        return involutions == 1 and not self.is_cyclic()

    def is_quaternion(self) -> bool:
        return self.order == 8 and self.is_generalized_quaternion()

    def is_dedekind(self, bound: Optional[int] = None) -> bool:
        return all(self.is_normal(h) for h in self.subgroups(bound))

    def minimal_non_cyclic_type(self, bound: Optional[int] = None) -> Optional[MinimalNonCyclicType]:
        """Классификация минимальной нециклической группы или None."""
        if self.is_cyclic():
            return None
        for h in self.subgroups(bound):
            if len(h) == self.order:
                continue
            if not any(self.element_order(i) == len(h) for i in h):
                return None
        primes = prime_factors(self.order)
        if self.is_abelian():
            return MinimalNonCyclicType("a", primes[0])
        if self.is_quaternion():
            return MinimalNonCyclicType("b", 2)
        # тип c: нормальная силовская подгруппа порядка p и циклическая q-часть
        for p in primes:
            if self.order % (p * p) == 0:
                continue
            sylow = [i for i in range(self.order) if self.element_order(i) == p]
            if len(sylow) == p - 1 and len(primes) == 2:
                q = next(x for x in primes if x != p)
                n = 0
                rest = self.order // p
                while rest % q == 0:
                    rest //= q
                    n += 1
                return MinimalNonCyclicType("c", p, q, n)
        return None

    def is_minimal_non_cyclic(self, bound: Optional[int] = None) -> bool:
        return self.minimal_non_cyclic_type(bound) is not None


def _greedy_generators(images: List[Image], index: Dict[Image, int]) -> List[int]:
    """Образующие: на каждом шаге элемент наибольшего порядка вне подгруппы."""
    n = len(images)
    if n == 1:
        return []
    orders = [Permutation(img, check=False).order() for img in images]
    candidates = sorted(range(1, n), key=lambda i: (-orders[i], i))
    gens: List[int] = []
    reached = {0}
    for c in candidates:
        if c in reached:
            continue
        gens.append(c)
        queue = deque(reached)
        while queue:
            e = queue.popleft()
            for g in gens:
                t = index[_compose(images[e], images[g])]
                if t not in reached:
                    reached.add(t)
                    queue.append(t)
        if len(reached) == n:
            break
    return gens


def closure(generators: Sequence[Permutation], limit: Optional[int] = None) -> PermGroup:
    """Группа, порожденная перестановками, с сохранением слов.

    Обход в ширину от единицы; соседи перебираются по возрастанию номера
    образующей, поэтому порядок элементов детерминирован.

    Raises:
        DegreeMismatchError: Если степени различаются
        BoundExceededError: Если порядок превысил limit
    """
    if not generators:
        raise TableFormatError("образующих", "пустой список")
    degree = generators[0].degree
    gens: List[Image] = []
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatchError(degree, g.degree)
        if g.image not in gens:
            gens.append(g.image)
    identity = tuple(range(degree))
    images = [identity]
    index = {identity: 0}
    words: List[Tuple[int, ...]] = [()]
    position = 0
    while position < len(images):
        current = images[position]
        for k, g in enumerate(gens):
            img = _compose(current, g)
            if img not in index:
                index[img] = len(images)
                images.append(img)
                words.append(words[position] + (k,))
                if limit is not None and len(images) > limit:
                    raise BoundExceededError("порядка замыкания", len(images), limit)
        position += 1
    gen_indices = [index[g] for g in gens]
    return PermGroup(degree, images, gen_indices, words)


def extend_homomorphism(
    src_table: Sequence[Sequence[int]],
    src_gens: Sequence[int],
    dst_table: Sequence[Sequence[int]],
    images: Sequence[int],
) -> Optional[List[int]]:
    """Продолжает отображение образующих до гомоморфизма по таблицам Кэли.

    Обе группы заданы таблицами с единицей 0. Возвращает список образов
    всех элементов или None, если продолжение противоречиво.
    """
    phi: List[Optional[int]] = [None] * len(src_table)
    phi[0] = 0
    queue = deque([0])
    while queue:
        e = queue.popleft()
        pe = phi[e]
        row = src_table[e]
        dst_row = dst_table[pe]
        for s, img in zip(src_gens, images):
            t = row[s]
            v = dst_row[img]
            if phi[t] is None:
                phi[t] = v
                queue.append(t)
            elif phi[t] != v:
                return None
    if any(v is None for v in phi):
        return None
    return phi


def group_isomorphism(g1: PermGroup, g2: PermGroup, bound: Optional[int] = None) -> Optional[List[int]]:
    """Изоморфизм групп (номера элементов g1 → номера g2) или None.

    Перебор образов образующих с отсечением по порядкам элементов.
    """
    g1._check_bound(bound)
    g2._check_bound(bound)
    if g1.order != g2.order or g1.order_profile() != g2.order_profile():
        return None
    gens = g1.minimal_generating_set()
    if not gens:
        return [0]
    t1, t2 = g1.multiplication_table, g2.multiplication_table
    candidates = [
        [j for j in range(g2.order) if g2.element_order(j) == g1.element_order(g)]
        for g in gens
    ]

    def search(level: int, chosen: List[int]) -> Optional[List[int]]:
        if level == len(gens):
            phi = extend_homomorphism(t1, gens, t2, chosen)
            if phi is not None and len(set(phi)) == len(phi):
                return phi
            return None
        for c in candidates[level]:
            found = search(level + 1, chosen + [c])
            if found is not None:
                return found
        return None

    return search(0, [])


def group_isomorphic(g1: PermGroup, g2: PermGroup, bound: Optional[int] = None) -> bool:
    return group_isomorphism(g1, g2, bound) is not None


def group_type_name(g: PermGroup) -> str:
    """Краткое имя типа группы: C6, C2xC2, D8, Q8, MNC12, Dih12, G24."""
    n = g.order
    if g.is_cyclic():
        return f"C{n}"
    if g.is_abelian():
        orders = [g.element_order(i) for i in range(n)]
        return "x".join(f"C{f}" for f in abelian_invariants(orders))
    if g.is_generalized_quaternion():
        return f"Q{n}"
    if g.is_dihedral():
        return f"D{n}"
    try:
        if g.is_minimal_non_cyclic():
            return f"MNC{n}"
        if g.is_generalized_dihedral():
            return f"Dih{n}"
    except BoundExceededError:
        pass
    return f"G{n}"


def cyclic_group(n: int) -> PermGroup:
    """Циклическая группа порядка n, действующая сдвигами на n точках."""
    return closure([Permutation([(i + 1) % n for i in range(n)])])


def dihedral_group(k: int) -> PermGroup:
    """Диэдральная группа порядка 2k на k точках (k ≥ 3)."""
    rotation = Permutation([(i + 1) % k for i in range(k)])
    reflection = Permutation([(-i) % k for i in range(k)])
    return closure([rotation, reflection])


def quaternion_group() -> PermGroup:
    """Q8 в левом регулярном представлении на 8 точках."""
    # элементы ±1, ±i, ±j, ±k кодируются как (знак, единица) -> номер
    units = ["1", "i", "j", "k"]
    products = {
        ("1", u): (1, u) for u in units
    }
    products.update({(u, "1"): (1, u) for u in units})
    products.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    labels = [(s, u) for s in (1, -1) for u in units]
    position = {lab: i for i, lab in enumerate(labels)}

    def left(a):
        row = []
        for b in labels:
            sign, unit = products[(a[1], b[1])]
            row.append(position[(a[0] * b[0] * sign, unit)])
        return Permutation(row)

    return closure([left((1, "i")), left((1, "j"))])
