"""
Вспомогательные теоретико-числовые функции.
"""

from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Tuple

from sympy import factorint
from sympy.utilities.iterables import partitions


def lcm_all(values: Iterable[int]) -> int:
    """НОК набора натуральных чисел (1 для пустого набора)."""
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def prime_factors(n: int) -> List[int]:
    """Различные простые делители числа по возрастанию."""
    return sorted(factorint(n))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def abelian_invariants(orders: Iterable[int]) -> List[int]:
    """
    Инвариантные множители абелевой группы по списку порядков ее элементов.

    Для каждого простого p число элементов, чей порядок делит p^k, равно
    p в степени Σ min(k, e_i); отсюда восстанавливаются показатели e_i.

    Args:
        orders: Порядки всех элементов группы.

    Returns:
        Инвариантные множители d_1 | d_2 | … по возрастанию (пусто для
        тривиальной группы).
    """
    orders = list(orders)
    exponents: Dict[int, List[int]] = {}
    for p, full in factorint(len(orders)).items():
        counts = [1]
        while counts[-1] < p ** full:
            k = len(counts)
            counts.append(sum(1 for o in orders if (p ** k) % o == 0))
        at_least = [_log(counts[k] // counts[k - 1], p) for k in range(1, len(counts))]
        parts = []
        for k, amount in enumerate(at_least):
            nxt = at_least[k + 1] if k + 1 < len(at_least) else 0
            parts.extend([k + 1] * (amount - nxt))
        exponents[p] = sorted(parts, reverse=True)
    depth = max((len(v) for v in exponents.values()), default=0)

    factors = []
    for i in range(depth):
        d = 1
        for p, parts in exponents.items():
            if i < len(parts):
                d *= p ** parts[i]
        factors.append(d)
    return sorted(factors)


def _log(value: int, p: int) -> int:
    e = 0
    while value > 1:
        value //= p
        e += 1
    return e


def invariant_factor_groups(m: int) -> List[Tuple[int, ...]]:
    """
    Все абелевы группы порядка m в форме инвариантных множителей.

    Порядок детерминирован: сначала циклическая группа, затем по
    возрастанию числа множителей.
    """
    per_prime = []
    for p, e in sorted(factorint(m).items()):
        options = []
        for part in partitions(e):
            exps = sorted((k for k, mult in part.items() for _ in range(mult)), reverse=True)
            options.append(exps)
        per_prime.append((p, options))

    groups = [[]]
    for p, options in per_prime:
        groups = [g + [(p, exps)] for g in groups for exps in options]

    result = []
    for combo in groups:
        depth = max((len(exps) for _, exps in combo), default=0)
        factors = []
        for i in range(depth):
            d = 1
            for p, exps in combo:
                if i < len(exps):
                    d *= p ** exps[i]
            factors.append(d)
        result.append(tuple(sorted(factors)) if factors else (1,))
    result.sort(key=lambda f: (len(f), f))
    return result


def max_distinct_part_product(n: int) -> int:
    """a_n: максимум произведения попарно различных частей разбиения n."""
    best = 0
    for part in partitions(n):
        if any(mult > 1 for mult in part.values()):
            continue
        product = 1
        for k in part:
            product *= k
        best = max(best, product)
    return best


def landau(n: int) -> int:
    """g(n): максимальный порядок перестановки n точек (функция Ландау)."""
    best = 1
    for part in partitions(n):
        best = max(best, lcm_all(part.keys()))
    return best
