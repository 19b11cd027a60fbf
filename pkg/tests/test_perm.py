import random

import pytest
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup

from yangbaxter_hub.core.exceptions import DegreeMismatchError, TableFormatError
from yangbaxter_hub.core.perm import (
    MinimalNonCyclicType,
    Permutation,
    PermGroup,
    closure,
    compose,
    cyclic_group,
    dihedral_group,
    group_isomorphic,
    group_type_name,
    quaternion_group,
)


def _random_perm(rng, n):
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(image)


class TestPermutation:
    def test_parse_cycles_one_indexed(self):
        p = Permutation.parse_cycles(4, "(1 3 2 4)")
        assert p.image == (2, 3, 1, 0)
        assert p.to_cycle_string() == "(1 3 2 4)"

    def test_parse_cycles_with_commas(self):
        p = Permutation.parse_cycles(8, "(1,2)(3,5)(4,7)(6,8)")
        assert p.order() == 2
        assert p.cycle_type() == (2, 2, 2, 2)

    def test_rejects_non_bijection(self):
        with pytest.raises(TableFormatError):
            Permutation([0, 0, 1])

    def test_rejects_repeated_cycle_point(self):
        with pytest.raises(TableFormatError):
            Permutation.from_cycles(3, [(1, 2), (2, 3)])

    def test_compose_applies_right_factor_first(self):
        p = Permutation([1, 2, 0])
        q = Permutation([1, 0, 2])
        assert compose(p, q).image == tuple(p(q(i)) for i in range(3))

    def test_compose_matches_sympy(self):
        rng = random.Random(7)
        for _ in range(20):
            p, q = _random_perm(rng, 6), _random_perm(rng, 6)
            # sympy применяет левый множитель первым
            expected = SymPermutation(list(q.image)) * SymPermutation(list(p.image))
            assert list(compose(p, q).image) == expected.array_form

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            compose(Permutation([0, 1]), Permutation([0, 1, 2]))

    def test_inverse_and_order(self):
        p = Permutation.parse_cycles(5, "(1 2 3)(4 5)")
        assert p.order() == 6
        assert compose(p, p.inverse()).is_identity()
        assert p.cycle_type() == (3, 2)

    def test_identity_cycle_string(self):
        assert Permutation.identity(3).to_cycle_string() == "()"


class TestPermGroup:
    def test_closure_order_matches_sympy(self):
        rng = random.Random(11)
        for _ in range(5):
            gens = [_random_perm(rng, 5) for _ in range(2)]
            group = closure(gens)
            oracle = PermutationGroup([SymPermutation(list(g.image)) for g in gens])
            assert group.order == oracle.order()

    def test_words_evaluate_to_elements(self):
        group = dihedral_group(5)
        for i in range(group.order):
            assert group.evaluate_word(group.word(i)) == group.element(i)

    def test_multiplication_table_consistent(self):
        group = quaternion_group()
        table = group.multiplication_table
        for i in range(group.order):
            for j in range(group.order):
                product = compose(group.element(i), group.element(j))
                assert group.index_of(product) == table[i][j]

    def test_from_table_keeps_row_indices(self):
        table = [[(a + b) % 4 for b in range(4)] for a in range(4)]
        group = PermGroup.from_table(table)
        assert group.mul(1, 3) == 0
        assert group.mul(2, 3) == 1
        assert group.is_cyclic()

    def test_orbits_and_regularity(self):
        group = closure([Permutation([1, 0, 2, 3]), Permutation([0, 1, 3, 2])])
        assert group.orbits() == [(0, 1), (2, 3)]
        assert not group.is_transitive()
        assert cyclic_group(5).is_regular()

    @pytest.mark.parametrize(
        "group, count",
        [(dihedral_group(3), 6), (dihedral_group(4), 10), (quaternion_group(), 6)],
    )
    def test_subgroup_counts(self, group, count):
        assert len(group.subgroups()) == count

    def test_normality_and_core(self):
        group = dihedral_group(3)
        order_two = next(i for i in range(group.order) if group.element_order(i) == 2)
        h = group.cyclic_subgroup(order_two)
        assert not group.is_normal(h)
        assert group.core(h) == frozenset({0})
        rotations = next(i for i in range(group.order) if group.element_order(i) == 3)
        assert group.is_normal(group.cyclic_subgroup(rotations))

    def test_coset_space(self):
        group = dihedral_group(4)
        h = group.cyclic_subgroup(next(i for i in range(8) if group.element_order(i) == 2))
        space = group.coset_space(h)
        assert len(space) == 4
        assert space.representatives[0] == 0
        assert all(space.coset_of(r) == k for k, r in enumerate(space.representatives))

    @pytest.mark.parametrize(
        "group, name",
        [
            (cyclic_group(6), "C6"),
            (dihedral_group(4), "D8"),
            (dihedral_group(3), "D6"),
            (quaternion_group(), "Q8"),
        ],
    )
    def test_group_type_name(self, group, name):
        assert group_type_name(group) == name

    def test_klein_group_name(self):
        group = closure([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])])
        assert group_type_name(group) == "C2xC2"

    def test_minimal_non_cyclic_types(self):
        assert quaternion_group().minimal_non_cyclic_type() == MinimalNonCyclicType("b", 2)
        klein = closure([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])])
        assert klein.minimal_non_cyclic_type().kind == "a"
        assert dihedral_group(3).minimal_non_cyclic_type() == MinimalNonCyclicType("c", 3, 2, 1)
        assert not dihedral_group(4).is_minimal_non_cyclic()
        assert not cyclic_group(6).is_minimal_non_cyclic()

    def test_recognizers(self):
        assert dihedral_group(4).is_dihedral()
        assert not quaternion_group().is_dihedral()
        assert quaternion_group().is_dedekind()
        assert not dihedral_group(4).is_dedekind()
        assert dihedral_group(6).is_generalized_dihedral()

    def test_isomorphism(self):
        assert group_isomorphic(dihedral_group(3), closure([
            Permutation([1, 0, 2]), Permutation([0, 2, 1])
        ]))
        assert not group_isomorphic(dihedral_group(4), quaternion_group())
