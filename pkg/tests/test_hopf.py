"""Hopf structure: axioms, antipode identities, convolution, pairings."""

import pytest

from hopfkit.catalog import (
    quantum_laurent_plane_hopf,
    sl2_classical_hopf,
    sl2q,
    sl2q_hopf,
    sl2q_pairing_entries,
    small_uq_hopf,
    taft_algebra,
    taft_hopf,
    uq_fundamental_rep,
    uq_sl2,
    uq_sl2_hopf,
)
from hopfkit.hopf import (
    HopfAlgebra,
    TensorElem,
    check_hopf_morphism,
    check_matrix_rep,
    convolve,
    dual_pairing_check,
    grouplike_closure_check,
    is_grouplike,
)
from hopfkit.ncalg import FreeAlgebra, PresentedAlgebra
from hopfkit.scalar import ring_make


# ---------------------------------------------------------------------------
# Axioms hold on every built-in Hopf algebra
# ---------------------------------------------------------------------------

HOPF_BUILDERS = [
    ("quantum SL(2)", sl2q_hopf),
    ("classical SL(2)", sl2_classical_hopf),
    ("quantum Laurent plane", quantum_laurent_plane_hopf),
    ("quantum enveloping sl2", uq_sl2_hopf),
    ("small quantum sl2, order 3", lambda: small_uq_hopf(3)),
    ("small quantum sl2, order 4", lambda: small_uq_hopf(4)),
    ("Taft dimension 4", lambda: taft_hopf(2)),
    ("Taft dimension 9", lambda: taft_hopf(3)),
]


@pytest.mark.parametrize("label,builder", HOPF_BUILDERS, ids=[b[0] for b in HOPF_BUILDERS])
def test_hopf_axioms(label, builder):
    h = builder()
    failures = h.check_axioms(spot_degree=4, spot_count=25, seed=7)
    assert not failures, "\n".join(map(str, failures))


def test_axiom_checker_catches_wrong_antipode():
    # the antipode of F is forced to -KF by the axiom; -1/q FK is the
    # near-miss that satisfies everything except the antipode law
    A = uq_sl2()
    F = A.free
    R = A.ring
    E, Fg, K, Kinv = F.gens()
    coproduct = {
        "K": [(K, K)], "Kinv": [(Kinv, Kinv)],
        "E": [(F.one, E), (E, K)], "F": [(Kinv, Fg), (Fg, F.one)],
    }
    counit = {"K": R.one, "Kinv": R.one, "E": R.zero, "F": R.zero}
    antipode = {"K": Kinv, "Kinv": K, "E": -E * Kinv, "F": -R.q(-1) * Fg * K}
    bad = HopfAlgebra(A, coproduct, counit, antipode)
    failures = bad.check_axioms(spot_count=0)
    assert any("antipode" in f.check for f in failures)


def test_bialgebra_without_antipode_is_caught():
    # Q[t] with t group-like: S(t) t = 1 would force a polynomial inverse
    # of t, which cannot exist; every candidate antipode must fail
    R = ring_make("base=rationals; params=")
    F = FreeAlgebra(R, ["t"])
    A = PresentedAlgebra(F, [], name="polynomial monoid bialgebra")
    t = F.gen("t")
    for candidate in [t, F.one, F.one - t, F.zero, t * t]:
        h = HopfAlgebra(A, {"t": [(t, t)]}, {"t": R.one}, {"t": candidate})
        failures = h.check_axioms(spot_count=0)
        assert any("antipode law" in f.check for f in failures), candidate


# ---------------------------------------------------------------------------
# Coproduct mechanics
# ---------------------------------------------------------------------------

def test_delta_of_product_is_product_of_deltas():
    h = sl2q_hopf()
    a, b = h.free.gen("a"), h.free.gen("b")
    assert h.delta(a * b) == h.delta(a) * h.delta(b)


def test_delta_n_agrees_with_either_splice_order():
    h = sl2q_hopf()
    b = h.free.gen("b")
    d = h.delta(b)
    left_first = d.splice(0, h.delta_word)
    right_first = d.splice(1, h.delta_word)
    assert left_first == right_first == h.delta_n(b, 3)
    four_a = h.delta_n(b, 3).splice(0, h.delta_word)
    four_b = h.delta_n(b, 3).splice(2, h.delta_word)
    assert four_a == four_b


def test_tensor_legs_are_normalized():
    h = uq_sl2_hopf()
    A = h.algebra
    F = h.free
    raw = {(F.word("K", "Kinv"), F.word("E")): A.ring.one}
    t = TensorElem.make((A, A), raw)
    assert t.terms == {((), F.word("E")): A.ring.one}


def test_sweedler_coproduct_of_product_term():
    # in the four-dimensional case: delta(gx) = g (x) gx + gx (x) 1
    h = taft_hopf(2)
    A = h.algebra
    g, x = h.free.gen("g"), h.free.gen("x")
    got = h.delta(g * x)
    expected = (TensorElem.of((A, A), g, A.nf(g * x))
                + TensorElem.of((A, A), A.nf(g * x), h.free.one))
    assert got == expected


# ---------------------------------------------------------------------------
# Antipode identities
# ---------------------------------------------------------------------------

def test_antipode_fixes_unit_and_counit():
    for _label, builder in HOPF_BUILDERS:
        h = builder()
        assert h.antipode(h.free.one) == h.free.one
        for name in h.free.names:
            g = h.free.gen(name)
            assert h.counit(h.antipode(g)) == h.counit(g)


def test_antipode_is_anti_comorphism():
    for builder in (uq_sl2_hopf, lambda: taft_hopf(3)):
        h = builder()
        for name in h.free.names:
            g = h.free.gen(name)
            lhs = h.delta(h.antipode(g))
            rhs = h.delta(g).apply(0, h.antipode_word).apply(1, h.antipode_word).flip()
            assert lhs == rhs


def test_antipode_squared_identity_on_commutative():
    h = sl2_classical_hopf()
    for name in h.free.names:
        g = h.free.gen(name)
        assert h.antipode(h.antipode(g)) == g


def test_antipode_square_is_conjugation_in_taft():
    h = taft_hopf(3)
    g, x = h.free.gen("g"), h.free.gen("x")
    s2 = h.antipode(h.antipode(x))
    conj = h.algebra.nf(g * x * g ** 2)  # g x g^-1 with g^-1 = g^2
    assert s2 == conj
    assert s2 != x  # S has order 2N > 2 here


def test_antipode_order_at_root_of_unity():
    # over the 2N-th cyclotomic field, S^2 scales b by q^2, a primitive
    # N-th root, so S^2 has order exactly N on the generators
    for N in (2, 3):
        R = ring_make(f"base=cyclotomic:{2 * N}; params=")
        h = sl2q_hopf(R)
        b = h.free.gen("b")
        x = b
        for k in range(1, N):
            x = h.antipode(h.antipode(x))
            assert x != b
        x = h.antipode(h.antipode(x))
        assert x == b


# ---------------------------------------------------------------------------
# Group-likes and convolution
# ---------------------------------------------------------------------------

def test_grouplikes_in_laurent_plane():
    h = quantum_laurent_plane_hopf()
    X, Xinv, Y = h.free.gens()
    assert is_grouplike(h, X)
    assert is_grouplike(h, Xinv)
    assert is_grouplike(h, X * X)
    assert not is_grouplike(h, Y)
    assert not is_grouplike(h, X + Y)


def test_grouplike_closure_taft():
    h = taft_hopf(3)
    g = h.free.gen("g")
    elems = [h.free.one, g, h.algebra.nf(g * g)]
    assert grouplike_closure_check(h, elems) == []
    # dropping g^2 breaks closure under products
    assert grouplike_closure_check(h, [h.free.one, g])


def test_convolution_antipode_inverts_identity():
    h = taft_hopf(3)
    words = h.algebra.basis()
    ident = {w: h.free.from_word(w) for w in words}
    anti = {w: h.antipode_word(w) for w in words}
    left = convolve(h, anti, ident)
    right = convolve(h, ident, anti)
    for w in words:
        expected = h.free.scalar_poly(h.counit_word(w))
        assert left[w] == expected
        assert right[w] == expected


def test_convolution_out_of_table_is_hard_error():
    # delta(x) involves the words 1 and g, so a table holding only x
    # cannot be convolved; silence here would hide systematic gaps
    h = taft_hopf(3)
    x = h.free.word("x")
    with pytest.raises(KeyError):
        convolve(h, {x: h.free.from_word(x)}, {x: h.free.from_word(x)})


# ---------------------------------------------------------------------------
# Morphisms and representations
# ---------------------------------------------------------------------------

def test_projection_to_small_quotient_is_hopf_morphism():
    R3 = ring_make("base=cyclotomic:3; params=")
    big = uq_sl2_hopf(R3)
    small = small_uq_hopf(3)
    K = small.free.gen("K")
    images = {
        "E": small.free.gen("E"),
        "F": small.free.gen("F"),
        "K": K,
        "Kinv": small.algebra.nf(K * K),
    }
    assert check_hopf_morphism(big, small, images) == []


def test_hopf_morphism_detects_bad_images():
    R3 = ring_make("base=cyclotomic:3; params=")
    big = uq_sl2_hopf(R3)
    small = small_uq_hopf(3)
    K = small.free.gen("K")
    images = {
        "E": small.free.gen("F"),  # swapped
        "F": small.free.gen("E"),
        "K": K,
        "Kinv": small.algebra.nf(K * K),
    }
    assert check_hopf_morphism(big, small, images)


def test_fundamental_rep_satisfies_relations():
    A = uq_sl2()
    assert check_matrix_rep(A, uq_fundamental_rep()) == []


def test_broken_rep_is_detected():
    A = uq_sl2()
    rep = uq_fundamental_rep()
    R = A.ring
    rep = dict(rep)
    rep["K"] = [[R.q(1), R.zero], [R.zero, R.q(1)]]  # no longer inverts Kinv
    assert check_matrix_rep(A, rep)


def test_dual_pairing_matrix_coefficients():
    failures = dual_pairing_check(
        sl2q_hopf(), uq_sl2_hopf(), uq_fundamental_rep(),
        sl2q_pairing_entries(), max_len=3)
    assert failures == []


def test_dual_pairing_detects_wrong_entry_assignment():
    entries = {"a": (0, 0), "b": (1, 0), "c": (0, 1), "d": (1, 1)}  # b,c swapped
    failures = dual_pairing_check(
        sl2q_hopf(), uq_sl2_hopf(), uq_fundamental_rep(), entries, max_len=2)
    assert failures
