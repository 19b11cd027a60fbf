"""
Встроенные примеры решений с ожидаемыми инвариантами.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

from yangbaxter_hub.core.brace import (
    Brace,
    build_action,
    find_braces,
    parse_brace_spec,
    semidirect_product,
    trivial_brace,
)
from yangbaxter_hub.core.construct import enumerate_indecomposable
from yangbaxter_hub.core.exceptions import FixtureNotFoundError
from yangbaxter_hub.core.perm import Permutation
from yangbaxter_hub.core.solution import (
    NOT_MULTIPERMUTATION,
    Solution,
    shift_solution,
    trivial_solution,
)


@dataclass(frozen=True)
class Fixture:
    """
    Именованный пример.

    Атрибуты:
        name: Имя примера.
        description: Краткое описание.
        build: Функция построения решения.
        expected: Ожидаемые значения ключей отчета инвариантов.
    """

    name: str
    description: str
    build: Callable[[], Solution]
    expected: Dict[str, Any]


def _size4_d8() -> Solution:
    return Solution.from_cycle_strings(4, ["(3 4)", "(1 3 2 4)", "(1 4 2 3)", "(1 2)"])


def _size8_uniconnected() -> Solution:
    a = "(1,2)(3,5)(4,7)(6,8)"
    b = "(1,6,4,3)(2,5,7,8)"
    c = "(1,3,4,6)(2,8,7,5)"
    d = "(1,7)(2,4)(3,8)(5,6)"
    return Solution.from_cycle_strings(8, [a, a, b, c, d, d, c, b])


def _mnc12b_brace() -> Brace:
    right = find_braces(4, additive=(2, 2), multiplicative=lambda g: g.is_cyclic())[0]
    left = trivial_brace([3])
    brace = semidirect_product(left, right, build_action(left, right, "inv"))
    brace.name = "mnc12b"
    return brace


def _first_over(brace_factory: Callable[[], Brace]) -> Callable[[], Solution]:
    def build() -> Solution:
        return enumerate_indecomposable(brace_factory())[0]

    return build


def _spec(spec: str) -> Callable[[], Brace]:
    return lambda: parse_brace_spec(spec)


# Реестр встроенных примеров
_FIXTURE_REGISTRY: Dict[str, Fixture] = {
    fixture.name: fixture
    for fixture in (
        Fixture(
            "size4-d8",
            "Неразложимое решение на 4 точках с группой D8",
            _size4_d8,
            {
                "n": 4,
                "indecomposable": True,
                "uniconnected": False,
                "group": "D8",
                "group_order": 8,
                "mpl": NOT_MULTIPERMUTATION,
                "class_direct": 2,
                "class_exponent": 2,
            },
        ),
        Fixture(
            "size8-uniconnected",
            "Униконнектное решение на 8 точках с неуниконнектной ретракцией",
            _size8_uniconnected,
            {"n": 8, "indecomposable": True, "uniconnected": True, "retraction_size": 4},
        ),
        Fixture(
            "shift4",
            "Решение-сдвиг по 4-циклу",
            lambda: shift_solution(Permutation([1, 2, 3, 0])),
            {
                "n": 4,
                "indecomposable": True,
                "uniconnected": True,
                "group": "C4",
                "mpl": 1,
                "class_direct": 4,
            },
        ),
        Fixture(
            "trivial3",
            "Тривиальное решение на 3 точках",
            lambda: trivial_solution(3),
            {
                "n": 3,
                "indecomposable": False,
                "group_order": 1,
                "mpl": 1,
                "class_direct": 1,
            },
        ),
        Fixture(
            "dihedral6",
            "Единственное неразложимое решение над скобой sd:triv3,triv2,inv",
            _first_over(_spec("sd:triv3,triv2,inv")),
            {
                "n": 6,
                "indecomposable": True,
                "uniconnected": True,
                "group": "D6",
                "class_direct": 6,
            },
        ),
        Fixture(
            "mnc12a",
            "Решение над sd:triv3,triv4,inv (циклическая (B, +))",
            _first_over(_spec("sd:triv3,triv4,inv")),
            {
                "n": 12,
                "uniconnected": True,
                "group": "MNC12",
                "class_direct": 12,
            },
        ),
        Fixture(
            "mnc12b",
            "Решение над ℤ/3 ⋊ скоба на ℤ/2 × ℤ/2 с циклической (B, ∘)",
            _first_over(_mnc12b_brace),
            {
                "n": 12,
                "uniconnected": True,
                "group": "MNC12",
                "class_direct": 6,
            },
        ),
        Fixture(
            "mnc21",
            "Решение над sd:triv7,triv3,mul2",
            _first_over(_spec("sd:triv7,triv3,mul2")),
            {
                "n": 21,
                "uniconnected": True,
                "group": "MNC21",
                "class_direct": 21,
            },
        ),
    )
}


def get_fixture(name: str) -> Tuple[Solution, Dict[str, Any]]:
    """
    Строит пример по имени.

    Аргументы:
        name: Имя примера (например, "size4-d8").

    Возвращает:
        Пара (решение, ожидаемые инварианты).

    Исключения:
        FixtureNotFoundError: Если пример с таким именем не найден.
    """
    name = name.strip().lower()
    if name not in _FIXTURE_REGISTRY:
        raise FixtureNotFoundError(name)
    fixture = _FIXTURE_REGISTRY[name]
    return fixture.build(), dict(fixture.expected)


def list_fixtures() -> List[Fixture]:
    """Возвращает все примеры в порядке регистрации."""
    return list(_FIXTURE_REGISTRY.values())
