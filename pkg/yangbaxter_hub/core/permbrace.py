"""Перестановочная скоба решения и класс Деорнуа через экспоненту.

Сложение на 𝒢(X, r) восстанавливается по композиции:
a + σ_y = a∘σ_{a⁻¹(y)}. Обход в ширину от единицы дает каждому элементу
разложение в сумму образующих σ_x, по которому складывается вся таблица.
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from yangbaxter_hub.core.brace import (
    Brace,
    additive_exponent,
    additive_invariant_factors,
    additive_order,
    validate_brace,
)
from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    InternalConsistencyError,
    InvalidParameterError,
)
from yangbaxter_hub.core.perm import PermGroup
from yangbaxter_hub.core.solution import (
    Solution,
    basic_invariants,
    dehornoy_class_direct,
    omega,
    permutation_group,
)
from yangbaxter_hub.core.utils import lcm_all
from yangbaxter_hub.decorators import timing_decorator
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)


@dataclass
class PermutationBrace:
    """Скоба на элементах 𝒢(X, r); generator_map[x] = номер σ_x."""

    group: PermGroup
    brace: Brace
    generator_map: Tuple[int, ...]


def _verify(group: PermGroup, brace: Brace, generator_map: Tuple[int, ...], n: int):
    m = brace.m
    add = brace.add
    for a in range(m):
        for b in range(a + 1, m):
            if add[a][b] != add[b][a]:
                raise InternalConsistencyError("сложение не коммутативно", (a, b))
    neg = brace.neg
    mul = brace.mul
    for g in range(m):
        image = group.image(g)
        for x in range(n):
            # λ_g(σ_x) = σ_{g(x)}
            if add[neg[g]][mul[g][generator_map[x]]] != generator_map[image[x]]:
                raise InternalConsistencyError("λ_g(σ_x) ≠ σ_{g(x)}", (g, x))
    if m <= settings.get_bound("brace_verify_bound"):
        report = validate_brace(brace)
        if not report.ok:
            raise InternalConsistencyError("перестановочная скоба не проходит проверку", report.witnesses)


@timing_decorator
def permutation_brace(
    s: Solution, order_seed: Optional[int] = None, bound: Optional[int] = None
) -> PermutationBrace:
    """Перестановочная скоба (𝒢(X, r), +, ∘).

    Args:
        s: Решение
        order_seed: Если задан, порядок обхода точек перемешивается
        bound: Граница порядка 𝒢 (по умолчанию permbrace_bound)

    Raises:
        BoundExceededError: Если |𝒢| больше границы
        InternalConsistencyError: Если обход не покрыл группу или проверка не прошла
    """
    limit = bound if bound is not None else settings.get_bound("permbrace_bound")
    group = permutation_group(s)
    if group.order > limit:
        raise BoundExceededError("порядка перестановочной группы", group.order, limit)
    n, m = s.n, group.order
    generator_map = tuple(group.index_of(s.sigma[x]) for x in range(n))
    mul = group.multiplication_table
    inverse_images = [[0] * n for _ in range(m)]
    for a in range(m):
        for point, value in enumerate(group.image(a)):
            inverse_images[a][value] = point

    def plus_generator(a: int, y: int) -> int:
        return mul[a][generator_map[inverse_images[a][y]]]

    points = list(range(n))
    if order_seed is not None:
        random.Random(order_seed).shuffle(points)

    decomposition: List[Optional[Tuple[int, ...]]] = [None] * m
    decomposition[0] = ()
    queue = [0]
    position = 0
    while position < len(queue):
        a = queue[position]
        position += 1
        for y in points:
            b = plus_generator(a, y)
            if decomposition[b] is None:
                decomposition[b] = decomposition[a] + (y,)
                queue.append(b)
    if len(queue) != m:
        raise InternalConsistencyError(
            "суммы образующих не покрывают 𝒢", f"{len(queue)} из {m}"
        )

    add = []
    for a in range(m):
        row = []
        for b in range(m):
            v = a
            for y in decomposition[b]:
                v = plus_generator(v, y)
            row.append(v)
        add.append(row)

    brace = Brace(add, mul, name="perm")
    _verify(group, brace, generator_map, n)
    logger.debug("Permutation brace of order %d extracted", m)
    return PermutationBrace(group, brace, generator_map)


def dehornoy_class_via_exponent(s: Solution) -> int:
    """Класс как экспонента (𝒢, +)."""
    return additive_exponent(permutation_brace(s).brace)


def dehornoy_class_via_lcm(s: Solution) -> int:
    """Класс как НОК аддитивных порядков образующих σ_x."""
    pb = permutation_brace(s)
    return lcm_all(additive_order(pb.brace, g) for g in set(pb.generator_map))


def lambda_fixes_diagonal(pb: PermutationBrace) -> bool:
    """λ_a(a) = a для всех a."""
    lam = pb.brace.lam
    return all(lam[a][a] == a for a in range(pb.brace.m))


def omega_closed_form_check(s: Solution, max_n: Optional[int] = None) -> bool:
    """Сверка Ω_n(x, …, x, y) с формулой ((n−1)·λ_x(a))⁻ ∘ y ∘ K.

    Решение должно быть построено из скобы (нести provenance).

    Raises:
        InvalidParameterError: Если у решения нет данных построения
    """
    prov = s.provenance
    if prov is None:
        raise InvalidParameterError("provenance", None, "решение построено не из скобы")
    b = prov.brace
    top = max_n if max_n is not None else dehornoy_class_direct(s) + 1
    for n in range(1, top + 1):
        for p, (family_x, x) in enumerate(prov.points):
            a = prov.family_representative(family_x)
            base = b.lam[x][a]
            shifted = b.mul_inverse[b.multiple(n - 1, base)]
            for q, (family_y, y) in enumerate(prov.points):
                expected = prov.point_of(family_y, b.mul[shifted][y])
                if omega(s, (p,) * (n - 1) + (q,)) != expected:
                    logger.warning("Closed form mismatch at n=%d, x=%d, y=%d", n, p, q)
                    return False
    return True


def invariants(s: Solution) -> Dict[str, Any]:
    """Полный отчет инвариантов: базовые, три класса, множители (𝒢, +).

    Если 𝒢 больше permbrace_bound, классы через скобу не вычисляются.
    """
    report = basic_invariants(s)
    report["class_direct"] = dehornoy_class_direct(s)
    try:
        pb = permutation_brace(s)
    except BoundExceededError as e:
        logger.warning("Permutation brace skipped: %s", e)
        report["class_exponent"] = None
        report["class_lcm"] = None
        report["additive_factors"] = None
        report["lambda_diagonal"] = None
        return report
    report["class_exponent"] = additive_exponent(pb.brace)
    report["class_lcm"] = lcm_all(additive_order(pb.brace, g) for g in set(pb.generator_map))
    report["additive_factors"] = additive_invariant_factors(pb.brace)
    report["lambda_diagonal"] = lambda_fixes_diagonal(pb)
    return report
