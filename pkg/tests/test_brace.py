import pytest

from yangbaxter_hub.core.brace import (
    Brace,
    additive_invariant_factors,
    automorphisms,
    brace_isomorphic,
    brute_force_braces,
    cyclic_brace,
    direct_product,
    enumerate_braces,
    enumerate_braces_report,
    find_braces,
    is_cyclic_brace,
    is_ideal,
    parse_brace_spec,
    quotient_by_socle,
    socle,
    trivial_brace,
    validate_brace,
)
from yangbaxter_hub.core.exceptions import (
    BoundExceededError,
    BraceSpecError,
    InvalidParameterError,
)
from yangbaxter_hub.core.perm import group_type_name


def _z4_relabeled() -> Brace:
    """(ℤ/4, +) и та же группа, перенумерованная перестановкой (1 2), как ∘."""
    tau = [0, 2, 1, 3]
    add = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    mul = [[tau[(tau[a] + tau[b]) % 4] for b in range(4)] for a in range(4)]
    return Brace(add, mul)


class TestFamilies:
    @pytest.mark.parametrize("factors", [[1], [5], [2, 2], [2, 4], [3, 3]])
    def test_trivial_brace_is_valid(self, factors):
        b = trivial_brace(factors)
        assert validate_brace(b).ok
        assert socle(b) == frozenset(range(b.m))

    @pytest.mark.parametrize("p, n, t", [(2, 2, 1), (2, 2, 2), (2, 3, 1), (3, 2, 1), (5, 1, 1)])
    def test_cyclic_family_is_valid(self, p, n, t):
        b = cyclic_brace(p, n, t)
        assert validate_brace(b).ok
        assert is_cyclic_brace(b)

    def test_cyclic_brace_with_klein_multiplicative_group(self):
        b = cyclic_brace(2, 2, 1)
        assert group_type_name(b.multiplicative_group()) == "C2xC2"
        assert group_type_name(b.additive_group()) == "C4"

    def test_cyclic_brace_parameters(self):
        with pytest.raises(InvalidParameterError):
            cyclic_brace(4, 1, 1)
        with pytest.raises(InvalidParameterError):
            cyclic_brace(2, 2, 3)

    def test_brace_law_failure_is_reported(self):
        report = validate_brace(_z4_relabeled())
        assert report.additive_group
        assert report.multiplicative_group
        assert not report.brace_law
        assert not report.ok

    def test_non_associative_multiplication(self):
        add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
        mul = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]
        report = validate_brace(Brace(add, mul))
        assert not report.multiplicative_group
        assert report.witnesses["multiplicative_group"][0] == "associative"

    def test_direct_product_of_trivial_braces(self):
        b = direct_product(trivial_brace([2]), trivial_brace([3]))
        assert validate_brace(b).ok
        assert brace_isomorphic(b, trivial_brace([6])) is not None


class TestSpecs:
    def test_dihedral_semidirect_product(self, dihedral_brace):
        assert dihedral_brace.m == 6
        assert dihedral_brace.name == "sd:triv3,triv2,inv"
        assert group_type_name(dihedral_brace.multiplicative_group()) == "D6"
        assert additive_invariant_factors(dihedral_brace) == (6,)

    def test_multiplication_action(self):
        b = parse_brace_spec("sd:triv7,triv3,mul2")
        assert b.m == 21
        assert group_type_name(b.multiplicative_group()) == "MNC21"

    def test_dp_matches_trivial(self):
        assert brace_isomorphic(parse_brace_spec("dp:triv2,triv3"), parse_brace_spec("trivial:6"))

    @pytest.mark.parametrize(
        "spec",
        ["triv3", "xx:1", "C:2,2", "sd:triv3,triv2", "sd:triv3,foo,inv", "sd:triv3,triv2,mulx"],
    )
    def test_bad_specs(self, spec):
        with pytest.raises(BraceSpecError):
            parse_brace_spec(spec)

    def test_bad_parameters_in_spec(self):
        with pytest.raises(InvalidParameterError):
            parse_brace_spec("C:4,1,1")

    def test_enum_index_out_of_range(self):
        with pytest.raises(BraceSpecError):
            parse_brace_spec("enum:4,9")


class TestStructure:
    def test_socle_and_quotient(self, dihedral_brace):
        soc = socle(dihedral_brace)
        assert len(soc) == 3
        assert is_ideal(dihedral_brace, soc)
        q = quotient_by_socle(dihedral_brace)
        assert q.m == 2
        assert validate_brace(q).ok

    def test_automorphisms_of_trivial_brace(self):
        assert len(automorphisms(trivial_brace([3]))) == 2
        assert len(automorphisms(trivial_brace([2, 2]))) == 6

    def test_automorphisms_are_bijective(self, dihedral_brace):
        autos = automorphisms(dihedral_brace)
        assert autos
        assert all(a.is_automorphism() for a in autos)

    def test_non_isomorphic_braces(self):
        assert brace_isomorphic(cyclic_brace(2, 2, 1), trivial_brace([4])) is None


class TestEnumeration:
    @pytest.mark.parametrize("m, count", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 1), (6, 2), (9, 4)])
    def test_brace_counts(self, m, count):
        assert len(enumerate_braces(m)) == count

    @pytest.mark.slow
    @pytest.mark.parametrize("m, count", [(8, 27), (12, 10)])
    def test_brace_counts_large(self, m, count):
        assert len(enumerate_braces(m)) == count

    @pytest.mark.parametrize("m", [2, 3, 4, 6])
    def test_brute_force_agrees(self, m):
        listed = enumerate_braces(m)
        classes = []
        for b in brute_force_braces(m):
            assert validate_brace(b).ok
            if not any(brace_isomorphic(b, c) for c in classes):
                classes.append(b)
        assert len(classes) == len(listed)
        for b in listed:
            assert any(brace_isomorphic(b, c) for c in classes)

    def test_enumerated_braces_pairwise_non_isomorphic(self):
        braces = enumerate_braces(4)
        for i, b1 in enumerate(braces):
            assert validate_brace(b1).ok
            for b2 in braces[i + 1:]:
                assert brace_isomorphic(b1, b2) is None

    def test_find_braces_by_groups(self):
        found = find_braces(4, additive=(2, 2), multiplicative=lambda g: g.is_cyclic())
        assert len(found) == 1
        assert group_type_name(found[0].multiplicative_group()) == "C4"

    def test_order_bound(self):
        with pytest.raises(BoundExceededError):
            enumerate_braces_report(40)
