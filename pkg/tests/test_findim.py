"""Finite groups, structure-constant Hopf algebras, duality."""

from fractions import Fraction

import pytest

from hopfkit.catalog import small_uq_hopf, taft_hopf
from hopfkit.findim import (
    FiniteGroup,
    character_group,
    character_ring,
    characters,
    commutator_subgroup,
    dual_hopf,
    duality_omega,
    from_presentation,
    function_algebra,
    group_algebra,
    grouplike_group,
    grouplikes,
    parse_group,
    pontryagin_check,
    quotient_group,
    structhopf_iso_check,
    vec_eq,
)
from hopfkit.scalar import ring_make

RQ = ring_make("base=rationals; params=")


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

def test_group_constructors():
    assert FiniteGroup.cyclic(6).exponent() == 6
    assert FiniteGroup.product([2, 3]).order == 6
    s3 = FiniteGroup.symmetric(3)
    assert s3.order == 6
    assert not s3.is_abelian()
    assert s3.exponent() == 6
    assert FiniteGroup.product([2, 2]).exponent() == 2


def test_group_table_validation():
    with pytest.raises(ValueError):
        FiniteGroup.build(["a", "b"], [[0, 1], [1, 1]])  # b has no inverse
    with pytest.raises(ValueError):
        FiniteGroup.build(["a", "b"], [[1, 0], [0, 0]])  # no identity row/col pair
    # a latin square that is not associative
    with pytest.raises(ValueError):
        FiniteGroup.build(
            ["e", "a", "b", "c", "d"],
            [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]])


def test_parse_group():
    assert parse_group("cyclic:5").order == 5
    assert parse_group("product:[2,4]").order == 8
    assert parse_group("sym:3").order == 6
    assert parse_group("table:[[0,1],[1,0]]").order == 2
    with pytest.raises(ValueError):
        parse_group("frobenius:20")


def test_commutator_and_quotient():
    s3 = FiniteGroup.symmetric(3)
    comm = commutator_subgroup(s3)
    assert len(comm) == 3  # the rotation subgroup
    Q, proj = quotient_group(s3, comm)
    assert Q.order == 2
    assert proj[s3.identity] == Q.identity
    # a subgroup generated by one transposition is not normal
    transposition = next(i for i in range(6)
                         if i != s3.identity and s3.mul(i, i) == s3.identity
                         and i not in comm)
    with pytest.raises(ValueError):
        quotient_group(s3, [s3.identity, transposition])


# ---------------------------------------------------------------------------
# Group algebras and function algebras
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:6", "sym:3"])
def test_group_and_function_algebra_axioms(spec):
    G = parse_group(spec)
    assert group_algebra(G, RQ).check_axioms() == []
    assert function_algebra(G, RQ).check_axioms() == []


def test_group_algebra_shape():
    s3 = FiniteGroup.symmetric(3)
    H = group_algebra(s3, RQ)
    assert H.is_cocommutative()
    assert not H.is_commutative()
    # counit of the sum of all group elements is the group order
    total = {i: RQ.one for i in range(6)}
    assert H.counit_vec(total) == RQ.scalar(6)
    # involution group: antipode is the identity
    z2 = group_algebra(FiniteGroup.product([2, 2]), RQ)
    assert all(z2.antipode[i] == z2.basis_vec(i) for i in range(4))


def test_function_algebra_shape():
    z2 = function_algebra(FiniteGroup.cyclic(2), RQ)
    assert z2.is_commutative() and z2.is_cocommutative()
    s3 = function_algebra(FiniteGroup.symmetric(3), RQ)
    assert s3.is_commutative()
    assert not s3.is_cocommutative()
    assert s3.unit == {i: RQ.one for i in range(6)}


# ---------------------------------------------------------------------------
# Duals
# ---------------------------------------------------------------------------

def test_dual_of_group_algebra_is_function_algebra():
    for spec in ["cyclic:2", "cyclic:4", "cyclic:6", "sym:3", "product:[2,2]",
                 "product:[2,4]", "cyclic:8"]:
        G = parse_group(spec)
        assert duality_omega(G, RQ) == [], spec


def test_double_dual_is_canonically_isomorphic():
    for spec in ["cyclic:4", "sym:3"]:
        H = group_algebra(parse_group(spec), RQ)
        dd = dual_hopf(dual_hopf(H))
        ident = [H.basis_vec(i) for i in range(H.dim)]
        assert structhopf_iso_check(H, dd, ident) == []


def test_dual_of_commutative_is_cocommutative():
    fn = function_algebra(FiniteGroup.symmetric(3), RQ)
    assert not fn.is_cocommutative()
    assert dual_hopf(fn).is_cocommutative()


def test_dual_basis_of_cyclic2_is_idempotent():
    H = dual_hopf(group_algebra(FiniteGroup.cyclic(2), RQ))
    for i in range(2):
        e = H.basis_vec(i)
        assert vec_eq(H.mul_vec(e, e), e)
    assert vec_eq(H.mul_vec(H.basis_vec(0), H.basis_vec(1)), {})
    assert H.unit == {0: RQ.one, 1: RQ.one}


def test_iso_check_rejects_non_bijective_map():
    H = group_algebra(FiniteGroup.cyclic(4), RQ)
    squash = [H.basis_vec((2 * i) % 4) for i in range(4)]
    failures = structhopf_iso_check(H, H, squash)
    assert any(f.check == "bijectivity" for f in failures)


# ---------------------------------------------------------------------------
# Characters and Pontryagin duality
# ---------------------------------------------------------------------------

def test_character_counts():
    _, chars = characters(FiniteGroup.symmetric(3))
    assert len(chars) == 2  # trivial and sign
    _, chars = characters(FiniteGroup.product([2, 2]))
    assert len(chars) == 4


def test_character_values_are_roots_of_unity():
    G = FiniteGroup.cyclic(5)
    ring = character_ring(5)
    chars = character_group(G, ring)[1]
    for ch in chars:
        for g in range(5):
            assert (ch[g] ** 5 - ring.one).is_zero()


@pytest.mark.parametrize("n", range(1, 9))
def test_pontryagin_cyclic(n):
    rep = pontryagin_check(FiniteGroup.cyclic(n))
    assert rep.failures == []
    assert rep.dual_group.order == n
    assert rep.dual_group.exponent() == FiniteGroup.cyclic(n).exponent()


def test_pontryagin_product_group():
    rep = pontryagin_check(FiniteGroup.product([2, 3]))
    assert rep.failures == []
    # the dual of Z/2 x Z/3 is cyclic of order 6
    assert rep.dual_group.order == 6
    assert rep.dual_group.exponent() == 6


def test_pontryagin_rejects_nonabelian():
    with pytest.raises(ValueError):
        pontryagin_check(FiniteGroup.symmetric(3))


# ---------------------------------------------------------------------------
# Materializing presentations
# ---------------------------------------------------------------------------

def test_from_presentation_sweedler():
    H = from_presentation(taft_hopf(2), 4)
    assert H.dim == 4
    assert H.check_axioms() == []
    assert not H.is_commutative()


def test_from_presentation_wrong_dimension():
    with pytest.raises(ValueError):
        from_presentation(taft_hopf(2), 5)


def test_from_presentation_small_uq():
    H = from_presentation(small_uq_hopf(4), 8)
    assert H.check_axioms() == []


def test_small_uq_antipode_not_involutive():
    H = from_presentation(small_uq_hopf(3), 27)
    s2 = [H.antipode_vec(H.antipode[i]) for i in range(H.dim)]
    assert not all(vec_eq(s2[i], H.basis_vec(i)) for i in range(H.dim))


# ---------------------------------------------------------------------------
# Group-likes
# ---------------------------------------------------------------------------

def test_grouplikes_of_group_algebra():
    H = group_algebra(FiniteGroup.symmetric(3), RQ)
    gl = grouplikes(H)
    assert len(gl) == 6
    assert grouplike_group(H, gl).order == 6


def test_grouplikes_of_function_algebra_are_characters():
    H = function_algebra(FiniteGroup.cyclic(2), RQ)
    gl = grouplikes(H)
    assert len(gl) == 2
    one = RQ.one
    assert {0: one, 1: one} in gl       # trivial character
    assert {0: one, 1: -one} in gl      # sign character
    assert grouplike_group(H, gl).order == 2


def test_grouplikes_of_sweedler():
    H = from_presentation(taft_hopf(2), 4)
    gl = grouplikes(H)
    labels = sorted(H.vec_str(v) for v in gl)
    assert labels == ["(1)*1", "(1)*g"]


def test_grouplike_group_requires_closure():
    H = group_algebra(FiniteGroup.cyclic(4), RQ)
    with pytest.raises(ValueError):
        grouplike_group(H, [H.basis_vec(0), H.basis_vec(1)])


def test_counit_scalar_value():
    H = group_algebra(FiniteGroup.cyclic(3), RQ)
    v = {0: RQ.scalar(Fraction(1, 2)), 2: RQ.scalar(3)}
    assert H.counit_vec(v) == RQ.scalar(Fraction(7, 2))
