"""Tests for cocycles, their cohomology, and twisted comodule algebras."""

from __future__ import annotations

import itertools

from hopfkit.catalog import taft_algebra, taft_struct
from hopfkit.comod import coinvariants, galois_beta, materialize
from hopfkit.findim import FiniteGroup
from hopfkit.galoisobj import (
    alternation,
    cocycle_failures,
    cocycle_mul,
    cocycle_ratio,
    h2_finite_abelian,
    is_coboundary,
    is_cocycle,
    normalize_cocycle,
    pair_cocycle,
    root_of_unity,
    taft_galois_object,
    taft_twist_algebra,
    torsion_units,
    trivial_cocycle,
    twist_scaling,
    twisted_group_algebra,
)
from hopfkit.scalar import ring_make

RATS = ring_make("base=rationals")


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------

def test_torsion_units_generate():
    for spec, want in [("base=rationals", 2), ("base=q", 2),
                       ("base=cyclotomic:4", 4), ("base=cyclotomic:6", 6),
                       ("base=cyclotomic:3", 6), ("base=cyclotomic:5", 10)]:
        R = ring_make(spec)
        L, gen = torsion_units(R)
        assert L == want
        assert (gen ** L - R.one).is_zero()
        for t in range(1, L):
            assert not (gen ** t - R.one).is_zero()


def test_root_of_unity_orders():
    R = ring_make("base=cyclotomic:12")
    for n in (1, 2, 3, 4, 6, 12):
        z = root_of_unity(R, n)
        assert (z ** n - R.one).is_zero()
        for t in range(1, n):
            assert not (z ** t - R.one).is_zero()


def test_root_of_unity_missing():
    try:
        root_of_unity(RATS, 3)
    except ValueError as e:
        assert "order 3" in str(e)
    else:
        raise AssertionError("expected ValueError")


# ---------------------------------------------------------------------------
# Cocycles and coboundaries
# ---------------------------------------------------------------------------

def test_klein_representative():
    G = FiniteGroup.product([2, 2])
    rep = h2_finite_abelian([2, 2])
    assert rep.factor_orders == (2,)
    assert rep.order == 2
    table = rep.representatives[(0, 1)]
    assert is_cocycle(G, table)
    assert is_coboundary(G, table) is None


def test_cyclic_cohomology_trivial():
    for n in range(1, 13):
        rep = h2_finite_abelian([n])
        assert rep.order == 1
        assert rep.factor_orders == ()


def test_rank_three_cohomology():
    rep = h2_finite_abelian([3, 3, 3])
    assert rep.factor_orders == (3, 3, 3)
    G = FiniteGroup.product([3, 3, 3])
    for table in rep.representatives.values():
        assert is_cocycle(G, table)
        assert is_coboundary(G, table) is None


def test_mixed_orders_cohomology():
    assert h2_finite_abelian([2, 6]).factor_orders == (2,)
    assert h2_finite_abelian([2, 3]).factor_orders == ()
    assert h2_finite_abelian([4, 4]).factor_orders == (4,)
    assert h2_finite_abelian([2, 4, 8]).factor_orders == (2, 2, 4)


def test_representative_powers():
    # the class of the (4, 4) representative has order four: its square
    # is still not a coboundary, its fourth power is
    G = FiniteGroup.product([4, 4])
    table = h2_finite_abelian([4, 4]).representatives[(0, 1)]
    square = cocycle_mul(table, table)
    fourth = cocycle_mul(square, square)
    assert is_coboundary(G, square) is None
    assert is_coboundary(G, fourth) is not None


def test_trivial_cocycle_is_coboundary():
    G = FiniteGroup.product([2, 2])
    mu = is_coboundary(G, trivial_cocycle(G, RATS))
    assert mu is not None


def test_coboundary_recovered():
    # build a coboundary from a chosen scaling and ask for it back
    G = FiniteGroup.cyclic(4)
    R = ring_make("base=cyclotomic:4")
    z = R.q(1)
    chosen = (R.one, z, z ** 3, R.one)
    table = tuple(
        tuple(chosen[g] * chosen[h] / chosen[G.mul(g, h)]
              for h in range(4))
        for g in range(4))
    assert is_cocycle(G, table)
    mu = is_coboundary(G, table)
    assert mu is not None
    for g in range(4):
        for h in range(4):
            gh = G.mul(g, h)
            assert (mu[g] * mu[h] - table[g][h] * mu[gh]).is_zero()


def test_coboundary_rejects_non_root_entries():
    G = FiniteGroup.cyclic(2)
    two = RATS.scalar(2)
    table = ((RATS.one, RATS.one), (RATS.one, two))
    try:
        is_coboundary(G, table)
    except ValueError as e:
        assert "not a root of unity" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_alternation_is_skew_and_invariant():
    G = FiniteGroup.product([2, 2])
    table = h2_finite_abelian([2, 2]).representatives[(0, 1)]
    b = alternation(G, table)
    for g in range(4):
        for h in range(4):
            assert (b[g][h] * b[h][g] - RATS.one).is_zero()
    # multiplying by a coboundary does not change the alternation
    chosen = (RATS.one, -RATS.one, RATS.one, -RATS.one)
    cob = tuple(
        tuple(chosen[g] * chosen[h] / chosen[G.mul(g, h)] for h in range(4))
        for g in range(4))
    assert alternation(G, cocycle_mul(table, cob)) == b


def test_square_form_over_the_rationals():
    # x^2 = -1 and x^2 = 1 are inequivalent twists of Z/2 over the
    # rationals; adjoining a fourth root of unity merges them
    G = FiniteGroup.cyclic(2)
    one = RATS.one
    minus = ((one, one), (one, -one))
    assert is_cocycle(G, minus)
    assert is_coboundary(G, minus) is None
    R4 = ring_make("base=cyclotomic:4")
    o = R4.one
    minus4 = ((o, o), (o, -o))
    mu = is_coboundary(G, minus4)
    assert mu is not None
    assert (mu[1] * mu[1] + o).is_zero()


def test_broken_cocycle_entry():
    G = FiniteGroup.product([2, 2])
    table = h2_finite_abelian([2, 2]).representatives[(0, 1)]
    rows = [list(r) for r in table]
    rows[3][3] = -rows[3][3]
    bad = tuple(tuple(r) for r in rows)
    failures = cocycle_failures(G, bad)
    assert failures
    assert failures[0].check == "cocycle identity"
    assert "residual" in failures[0].witness
    twisted = twisted_group_algebra(G, bad)
    assert twisted.carrier.check_algebra() != []


def test_normalize_cocycle():
    G = FiniteGroup.cyclic(3)
    R = ring_make("base=cyclotomic:3")
    z = R.q(1)
    scaled = tuple(tuple(z for _ in range(3)) for _ in range(3))
    fixed = normalize_cocycle(G, scaled)
    assert (fixed[0][0] - R.one).is_zero()


# ---------------------------------------------------------------------------
# Twisted group algebras
# ---------------------------------------------------------------------------

def test_twisted_algebra_is_galois():
    G = FiniteGroup.product([2, 2])
    table = h2_finite_abelian([2, 2]).representatives[(0, 1)]
    C = twisted_group_algebra(G, table)
    assert C.carrier.check_algebra() == []
    assert C.check() == []
    rep = galois_beta(C)
    assert rep.bijective
    assert rep.method == "monomial"
    assert len(coinvariants(C)) == 1


def test_twisted_algebra_requires_normalization():
    G = FiniteGroup.cyclic(3)
    R = ring_make("base=cyclotomic:3")
    z = R.q(1)
    bad = tuple(tuple(z for _ in range(3)) for _ in range(3))
    try:
        twisted_group_algebra(G, bad)
    except ValueError as e:
        assert "normalized" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_twist_scaling_gives_isomorphism():
    G = FiniteGroup.product([2, 2])
    t1 = h2_finite_abelian([2, 2]).representatives[(0, 1)]
    chosen = (RATS.one, -RATS.one, -RATS.one, RATS.one)
    cob = tuple(
        tuple(chosen[g] * chosen[h] / chosen[G.mul(g, h)] for h in range(4))
        for g in range(4))
    t2 = cocycle_mul(t1, cob)
    mu = twist_scaling(G, t1, t2)
    assert mu is not None
    # u_g -> mu(g) v_g carries the t1 twist onto the t2 twist
    for g in range(4):
        for h in range(4):
            gh = G.mul(g, h)
            assert (mu[g] * mu[h] * t2[g][h] - t1[g][h] * mu[gh]).is_zero()
    assert twist_scaling(G, trivial_cocycle(G, RATS), t1) is None


def test_klein_twist_rescales_to_quaternions():
    # over a ring with a fourth root of unity the twisted Klein algebra
    # is the quaternion algebra up to a diagonal rescaling; over the
    # rationals no rescaling works
    G = FiniteGroup.product([2, 2])
    quaternion_target = {0: 0, 1: 2, 2: 1, 3: 3}  # 1, i, j, k -> group index
    signs = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def search(ring):
        table = pair_cocycle([2, 2], 0, 1, ring)
        L, gen = torsion_units(ring)
        units = [gen ** t for t in range(L)]
        for scale in itertools.product(units, repeat=3):
            c = (ring.one,) + scale
            ok = True
            for (a, b), (sign, prod) in signs.items():
                ga, gb = quaternion_target[a], quaternion_target[b]
                lam = table[ga][gb]
                lhs = c[a] * c[b] * lam
                rhs = ring.scalar(sign) * c[prod]
                if not (lhs - rhs).is_zero():
                    ok = False
                    break
            if ok:
                return c
        return None

    assert search(ring_make("base=cyclotomic:4")) is not None
    assert search(RATS) is None


# ---------------------------------------------------------------------------
# Taft twists
# ---------------------------------------------------------------------------

def test_taft_twist_algebras():
    for N in (2, 3):
        for s in (0, 1):
            A = taft_twist_algebra(N, s)
            assert A.is_confluent()
            assert A.dimension() == N * N
    assert str(taft_twist_algebra(3, 1).nf(
        taft_twist_algebra(3, 1).free.gen("X") ** 3)) == "1"
    assert taft_twist_algebra(3, 0).nf(
        taft_twist_algebra(3, 0).free.gen("X") ** 3).is_zero()


def test_taft_galois_objects():
    for N, s in [(2, 0), (2, 1), (3, 1)]:
        C = taft_galois_object(N, s)
        assert C.check() == []
        M = materialize(C, N * N, taft_struct(N), taft_algebra(N).basis())
        assert M.check() == []
        rep = galois_beta(M)
        assert rep.bijective
        assert len(coinvariants(M)) == 1
