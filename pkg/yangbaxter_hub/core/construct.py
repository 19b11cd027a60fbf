"""Построение решений по левой скобе.

Точки решения: левые смежные классы x∘K подгрупп K ⊆ St(a) группы (B, ∘),
σ_{x∘K}(y∘K') = λ_x(a)∘y∘K'.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from yangbaxter_hub.core.brace import Brace, BraceMorphism, automorphisms, brace_isomorphic
from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    ConstructionError,
    InternalConsistencyError,
    InvalidParameterError,
)
from yangbaxter_hub.core.perm import CosetSpace
from yangbaxter_hub.core.permbrace import permutation_brace
from yangbaxter_hub.core.solution import Solution, isomorphic, validate
from yangbaxter_hub.decorators import log_action
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)

Subgroup = FrozenSet[int]
TRIVIAL: Subgroup = frozenset({0})


@dataclass
class ConstructionDatum:
    """Данные (B, I, {a_i}, {K_{i,j}}): families[i] содержит подгруппы для a_i."""

    brace: Brace
    representatives: List[int]
    families: List[List[Subgroup]]

    @property
    def size(self) -> int:
        return sum(self.brace.m // len(k) for ks in self.families for k in ks)


@dataclass
class IndecomposableDatum:
    """Данные (B, a, K) неразложимого решения."""

    brace: Brace
    a: int
    k: Subgroup = TRIVIAL

    def as_general(self) -> ConstructionDatum:
        return ConstructionDatum(self.brace, [self.a], [[frozenset(self.k)]])


@dataclass
class Provenance:
    """Происхождение точек построенного решения.

    families[f] = (номер представителя, подгруппа, пространство классов);
    points[p] = (семейство, представитель смежного класса).
    """

    brace: Brace
    representatives: List[int]
    families: List[Tuple[int, Subgroup, CosetSpace]] = field(default_factory=list)
    points: List[Tuple[int, int]] = field(default_factory=list)
    offsets: List[int] = field(default_factory=list)

    def family_representative(self, family: int) -> int:
        return self.representatives[self.families[family][0]]

    def point_of(self, family: int, element: int) -> int:
        """Номер точки, содержащей element∘K семейства family."""
        return self.offsets[family] + self.families[family][2].coset_of(element)


# --- орбиты и базы циклов -------------------------------------------------


def lambda_orbits(b: Brace) -> List[Tuple[int, ...]]:
    """Орбиты λ-действия, упорядоченные по наименьшему элементу."""
    seen = [False] * b.m
    orbits = []
    for x in range(b.m):
        if seen[x]:
            continue
        orbit = sorted({b.lam[a][x] for a in range(b.m)})
        for y in orbit:
            seen[y] = True
        orbits.append(tuple(orbit))
    return orbits


def additive_span(b: Brace, subset) -> FrozenSet[int]:
    """Аддитивная подгруппа, порожденная подмножеством."""
    gens = [x for x in set(subset) if x != 0]
    reached = {0}
    queue = [0]
    while queue:
        v = queue.pop()
        for g in gens:
            w = b.add[v][g]
            if w not in reached:
                reached.add(w)
                queue.append(w)
    return frozenset(reached)


def is_cycle_base(b: Brace, subset) -> bool:
    """λ-инвариантное подмножество, порождающее (B, +)."""
    subset = frozenset(subset)
    if any(b.lam[a][x] not in subset for a in range(b.m) for x in subset):
        return False
    return len(additive_span(b, subset)) == b.m


def is_transitive_cycle_base(b: Brace, subset) -> bool:
    subset = frozenset(subset)
    if not subset:
        return False
    x = min(subset)
    orbit = frozenset(b.lam[a][x] for a in range(b.m))
    return orbit == subset and is_cycle_base(b, subset)


def stabilizer_st(b: Brace, a: int) -> Subgroup:
    """St(a) = {x : λ_x(a) = a}, подгруппа (B, ∘)."""
    return frozenset(x for x in range(b.m) if b.lam[x][a] == a)


def transitive_cycle_base_representatives(b: Brace) -> List[int]:
    """Наименьшие элементы орбит, являющихся транзитивными базами циклов."""
    return [orbit[0] for orbit in lambda_orbits(b) if len(additive_span(b, orbit)) == b.m]


def minimal_cycle_base(b: Brace) -> List[Tuple[int, ...]]:
    """Жадная база циклов: орбиты по убыванию размера, пока не порождено (B, +)."""
    orbits = sorted(lambda_orbits(b), key=lambda o: (-len(o), o))
    chosen: List[Tuple[int, ...]] = []
    span = frozenset({0})
    for orbit in orbits:
        if len(span) == b.m:
            break
        extended = additive_span(b, set(span) | set(orbit))
        if len(extended) > len(span):
            chosen.append(orbit)
            span = extended
    return chosen


def core_free_subgroups(b: Brace, within: Optional[Subgroup] = None) -> List[Subgroup]:
    """Подгруппы (B, ∘) с тривиальным ядром, лежащие в within.

    Raises:
        BoundExceededError: Если порядок скобы больше subgroup_bound
    """
    group = b.multiplicative_group()
    result = []
    for h in group.subgroups():
        if within is not None and not h <= within:
            continue
        if group.core(h) == TRIVIAL:
            result.append(h)
    return result


# --- построение -----------------------------------------------------------


def _check_datum(datum: ConstructionDatum):
    b = datum.brace
    if len(datum.representatives) != len(datum.families):
        raise ConstructionError("число представителей не равно числу семейств")
    orbit_union = set()
    for a in datum.representatives:
        orbit_union.update(b.lam[x][a] for x in range(b.m))
    if len(additive_span(b, orbit_union)) != b.m:
        raise ConstructionError("объединение орбит не порождает (B, +)", tuple(datum.representatives))
    group = b.multiplicative_group()
    cores = frozenset(range(b.m))
    for a, ks in zip(datum.representatives, datum.families):
        if not ks:
            raise ConstructionError("пустое семейство подгрупп", a)
        st = stabilizer_st(b, a)
        for k in ks:
            if not group.is_subgroup(k):
                raise ConstructionError("K не подгруппа (B, ∘)", tuple(sorted(k)))
            if not k <= st:
                raise ConstructionError("K не лежит в St(a)", (a, tuple(sorted(k))))
            cores = cores & group.core(k)
    if cores != TRIVIAL:
        raise ConstructionError("пересечение ядер нетривиально", tuple(sorted(cores)))


def build_solution(datum: ConstructionDatum) -> Solution:
    """Решение X = ⋃ B/K_{i,j}, σ_{x∘K}(y∘K') = λ_x(a_i)∘y∘K'.

    Raises:
        ConstructionError: Если данные нарушают условия построения
        InternalConsistencyError: Если результат не прошел проверку
    """
    _check_datum(datum)
    b = datum.brace
    group = b.multiplicative_group()
    prov = Provenance(b, list(datum.representatives))
    for i, ks in enumerate(datum.families):
        for k in ks:
            space = group.coset_space(k)
            prov.offsets.append(len(prov.points))
            family = len(prov.families)
            prov.families.append((i, frozenset(k), space))
            prov.points.extend((family, rep) for rep in space.representatives)

    n = len(prov.points)
    sigma = []
    for family_x, x in prov.points:
        shift = b.lam[x][prov.family_representative(family_x)]
        sigma.append([prov.point_of(family_y, b.mul[shift][y]) for family_y, y in prov.points])
    s = Solution(sigma, provenance=prov)
    report = validate(s)
    if not report.ok:
        raise InternalConsistencyError("построенная таблица не является решением", report.witnesses)
    logger.debug("Built solution of size %d from brace of order %d", n, b.m)
    return s


def _check_indecomposable(datum: IndecomposableDatum):
    b = datum.brace
    orbit = frozenset(b.lam[x][datum.a] for x in range(b.m))
    if len(additive_span(b, orbit)) != b.m:
        raise ConstructionError("орбита a не является транзитивной базой циклов", datum.a)


def build_indecomposable(datum: IndecomposableDatum) -> Solution:
    """Неразложимое решение на B/K.

    Raises:
        ConstructionError: Если орбита a не порождает (B, +) или K не подходит
    """
    _check_indecomposable(datum)
    return build_solution(datum.as_general())


# --- критерий изоморфизма -------------------------------------------------


def bachi_equivalent(
    b: Brace,
    d1: IndecomposableDatum,
    d2: IndecomposableDatum,
    conjugator: str = "z",
    autos: Optional[List[BraceMorphism]] = None,
) -> bool:
    """Существуют z ∈ B и ψ ∈ Aut(B) с ψ(a₁) = λ_z(a₂) и ψ(K₁) сопряженной K₂.

    Args:
        b: Скоба
        d1: Первые данные
        d2: Вторые данные
        conjugator: "z" (ψ(K₁) = z∘K₂∘z⁻) или "any" (любой сопрягающий g)
        autos: Заранее вычисленные автоморфизмы скобы
    """
    if conjugator not in ("z", "any"):
        raise InvalidParameterError("conjugator", conjugator, "ожидается z или any")
    if len(d1.k) != len(d2.k):
        return False
    group = b.multiplicative_group()
    if autos is None:
        autos = automorphisms(b)
    k2 = frozenset(d2.k)
    conjugates = {g: group.conjugate(k2, g) for g in range(b.m)} if conjugator == "any" else None
    any_set = set(conjugates.values()) if conjugates is not None else None
    for psi in autos:
        target = psi(d1.a)
        image = frozenset(psi(x) for x in d1.k)
        for z in range(b.m):
            if b.lam[z][d2.a] != target:
                continue
            if conjugator == "z":
                if group.conjugate(k2, z) == image:
                    return True
            elif image in any_set:
                return True
    return False


def compare_bachi_readings(b: Brace) -> Dict[str, int]:
    """Сколько пар данных каждое прочтение критерия классифицирует так же, как изоморфизм решений."""
    data = indecomposable_data(b)
    autos = automorphisms(b)
    solutions = [build_indecomposable(d) for d in data]
    counts = {"total": 0, "z": 0, "any": 0}
    for i, d1 in enumerate(data):
        for j, d2 in enumerate(data):
            truth = isomorphic(solutions[i], solutions[j]) is not None
            counts["total"] += 1
            for reading in ("z", "any"):
                if bachi_equivalent(b, d1, d2, reading, autos) == truth:
                    counts[reading] += 1
    return counts


def indecomposable_data(b: Brace) -> List[IndecomposableDatum]:
    """Все пары (a, K): a представляет транзитивную базу циклов, K ⊆ St(a) без ядра."""
    data = []
    for a in transitive_cycle_base_representatives(b):
        for k in core_free_subgroups(b, stabilizer_st(b, a)):
            data.append(IndecomposableDatum(b, a, k))
    return data


@log_action(action="ENUMERATE_SOLUTIONS", verbose=True)
def enumerate_indecomposable(b: Brace, bound: Optional[int] = None) -> List[Solution]:
    """Все неразложимые решения с перестановочной скобой, изоморфной b.

    Raises:
        BoundExceededError: Если порядок скобы больше subgroup_bound
        InternalConsistencyError: Если перестановочная скоба результата не изоморфна b
    """
    limit = bound if bound is not None else settings.get_bound("subgroup_bound")
    if b.m > limit:
        raise BoundExceededError("порядка скобы", b.m, limit)
    iso_bound = settings.get_bound("isomorphism_bound")
    autos = automorphisms(b)
    accepted: List[Tuple[IndecomposableDatum, Solution]] = []
    for datum in indecomposable_data(b):
        equivalent = any(bachi_equivalent(b, datum, other, autos=autos) for other, _ in accepted)
        checkable = b.m // len(datum.k) <= iso_bound
        if equivalent and not checkable:
            continue
        s = build_indecomposable(datum)
        if checkable:
            twin = next((t for _, t in accepted if t.n == s.n and isomorphic(s, t) is not None), None)
            if twin is not None:
                if not equivalent:
                    logger.warning("Criterion missed an isomorphism for a=%d, |K|=%d", datum.a, len(datum.k))
                continue
            if equivalent:
                logger.warning(
                    "Criterion merged non-isomorphic solutions for a=%d, |K|=%d", datum.a, len(datum.k)
                )
        accepted.append((datum, s))

    for datum, s in accepted:
        pb = permutation_brace(s)
        if brace_isomorphic(pb.brace, b) is None:
            raise InternalConsistencyError("перестановочная скоба не изоморфна исходной", datum.a)
    logger.info("Brace %s: %d indecomposable solutions", b.name, len(accepted))
    return [s for _, s in accepted]


def decode_families(b: Brace, families: Sequence[Sequence[Sequence[int]]]) -> List[List[Subgroup]]:
    """Подгруппы по спискам образующих; пустой список дает тривиальную подгруппу.

    Raises:
        ConstructionError: Если семейств для орбиты больше max_families_per_orbit
    """
    cap = settings.get_bound("max_families_per_orbit")
    group = b.multiplicative_group()
    result = []
    for gens_list in families:
        if len(gens_list) > cap:
            raise ConstructionError(f"больше {cap} подгрупп для одной орбиты", len(gens_list))
        result.append([group.subgroup_closure(gens) for gens in gens_list] or [TRIVIAL])
    return result
