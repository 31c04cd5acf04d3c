"""Tests for comodule algebras, gradings, and the Galois map."""

from __future__ import annotations

from hopfkit.catalog import (
    hopf_self_coaction,
    laurent_module_extension,
    matrix_graded,
    matrix_module_extension,
    quantum_laurent_plane_hopf,
    quantum_plane,
    quantum_plane_coaction,
    quaternion_algebra,
    quaternion_graded,
    sl2q_hopf,
    small_uq_struct,
    taft_algebra,
    taft_hopf,
    taft_struct,
    trivial_hopf,
    truncated_polynomial_graded,
)
from hopfkit.comod import (
    Coaction,
    GradedAlgebra,
    ModuleExtension,
    StructCoaction,
    check_comodule,
    coaction_from_action,
    coaction_to_grading,
    coinvariants,
    fiber_at,
    galois_beta,
    galois_beta_module,
    grading_to_coaction,
    homogeneous_coinvariants,
    invariants_basis,
    materialize,
    projector_check,
    quotient_coaction,
    self_coaction,
    strong_grading_check,
    trivial_extension_check,
)
from hopfkit.findim import (
    FiniteGroup,
    function_algebra,
    group_algebra,
    vec_eq,
)
from hopfkit.hopf import TensorElem
from hopfkit.scalar import ring_make


RATS = ring_make("base=rationals")


# ---------------------------------------------------------------------------
# Presented coactions
# ---------------------------------------------------------------------------

def test_quantum_plane_coaction_passes():
    assert check_comodule(quantum_plane_coaction()) == []


def test_taft_self_coaction_passes():
    assert check_comodule(hopf_self_coaction(taft_hopf(3))) == []


def test_sl2q_self_coaction_passes():
    assert check_comodule(hopf_self_coaction(sl2q_hopf()), spot_count=5) == []


def test_swapped_legs_break_quantum_plane_coaction():
    # transforming by rows instead of columns still respects the
    # q-commutation relation but is no longer coassociative
    A = quantum_plane()
    h = sl2q_hopf()
    X, Y = A.free.gens()
    a, b, c, d = (h.free.gen(n) for n in "abcd")
    legs = (A, h.algebra)
    bad = Coaction(A, h, {
        "X": TensorElem.of(legs, X, a) + TensorElem.of(legs, Y, b),
        "Y": TensorElem.of(legs, X, c) + TensorElem.of(legs, Y, d),
    })
    failures = bad.check()
    assert any(f.check == "coaction coassociativity" for f in failures)
    witness = next(f for f in failures if f.check == "coaction coassociativity")
    assert "residual" in witness.witness


def test_dropped_term_breaks_quantum_plane_relation():
    # forgetting the second column term makes delta fail the relation
    A = quantum_plane()
    h = sl2q_hopf()
    X, Y = A.free.gens()
    a, b, c, d = (h.free.gen(n) for n in "abcd")
    legs = (A, h.algebra)
    bad = Coaction(A, h, {
        "X": TensorElem.of(legs, X, a) + TensorElem.of(legs, Y, c),
        "Y": TensorElem.of(legs, Y, d),
    })
    failures = bad.check()
    assert any(f.check == "coaction respects relation" for f in failures)


def test_missing_generator_rejected():
    A = quantum_plane()
    h = sl2q_hopf()
    X = A.free.gen("X")
    a = h.free.gen("a")
    legs = (A, h.algebra)
    try:
        Coaction(A, h, {"X": TensorElem.of(legs, X, a)})
    except ValueError as e:
        assert "Y" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_quantum_plane_coinvariants_are_scalars():
    basis = coinvariants(quantum_plane_coaction(), degree=4)
    assert [str(p) for p in basis] == ["1"]


def test_taft_self_coinvariants_are_scalars():
    basis = coinvariants(hopf_self_coaction(taft_hopf(3)), degree=4)
    assert [str(p) for p in basis] == ["1"]


# ---------------------------------------------------------------------------
# Structure-constant coactions
# ---------------------------------------------------------------------------

def test_struct_self_coaction_passes():
    assert self_coaction(taft_struct(2)).check() == []


def test_struct_broken_comul_fails():
    H = taft_struct(2)
    delta = list(H.comul)
    # drop one term from one comultiplication row
    row = next(i for i, r in enumerate(delta) if len(r) > 1)
    delta[row] = delta[row][1:]
    bad = StructCoaction(H, H, delta)
    assert bad.check() != []


def test_struct_coinvariants_of_self_coaction():
    basis = coinvariants(self_coaction(taft_struct(2)))
    assert len(basis) == 1
    (vec,) = basis
    assert vec_eq(vec, taft_struct(2).unit)


# ---------------------------------------------------------------------------
# Materialization
# ---------------------------------------------------------------------------

def test_materialized_taft_self_coaction_matches_comul():
    h = taft_hopf(3)
    H = taft_struct(3)
    words = taft_algebra(3).basis()
    C = materialize(hopf_self_coaction(h), 9, H, words)
    assert C.check() == []
    for i in range(9):
        got = {(j, k): c for j, k, c in C.delta[i]}
        want = {(j, k): c for j, k, c in H.comul[i]}
        assert got == want


def test_materialize_dimension_mismatch():
    h = taft_hopf(3)
    words = taft_algebra(3).basis()
    try:
        materialize(hopf_self_coaction(h), 8, taft_struct(3), words)
    except ValueError as e:
        assert "expected 8" in str(e)
    else:
        raise AssertionError("expected ValueError")


# ---------------------------------------------------------------------------
# Gradings
# ---------------------------------------------------------------------------

def test_quaternion_grading_round_trip():
    ga = quaternion_graded()
    back = coaction_to_grading(grading_to_coaction(ga))
    assert back.degree == ga.degree
    assert back.group.table == ga.group.table


def test_matrix_grading_round_trip():
    for N in (2, 3):
        ga = matrix_graded(N)
        back = coaction_to_grading(grading_to_coaction(ga))
        assert back.degree == ga.degree


def test_quaternion_components():
    ga = quaternion_graded()
    labels = ga.algebra.labels
    by_degree = {g: [labels[i] for i in ga.component(g)]
                 for g in range(ga.group.order)}
    assert sorted(by_degree.values()) == [["1"], ["i"], ["j"], ["k"]]


def test_inhomogeneous_degree_rejected():
    A = quaternion_algebra()
    G = FiniteGroup.product([2, 2])
    try:
        GradedAlgebra.build(A, G, (0, 0, 1, 2))
    except ValueError as e:
        assert "homogeneous" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_unit_degree_rejected():
    A = quaternion_algebra()
    G = FiniteGroup.product([2, 2])
    try:
        GradedAlgebra.build(A, G, (1, 2, 1, 2))
    except ValueError as e:
        assert "unit" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_grading_projectors():
    for ga in (quaternion_graded(), matrix_graded(2), matrix_graded(3),
               truncated_polynomial_graded(3)):
        assert projector_check(grading_to_coaction(ga)) == []


def test_strong_gradings():
    for ga in (quaternion_graded(), matrix_graded(2), matrix_graded(3)):
        assert strong_grading_check(ga) == (True, None)


def test_truncated_polynomial_grading_not_strong():
    ok, witness = strong_grading_check(truncated_polynomial_graded(3))
    assert not ok
    assert witness == ("g1", "g2")


def test_coaction_to_grading_rejects_non_group_target():
    try:
        coaction_to_grading(self_coaction(taft_struct(2)))
    except ValueError as e:
        assert "group algebra" in str(e)
    else:
        raise AssertionError("expected ValueError")


# ---------------------------------------------------------------------------
# The Galois map over the base field
# ---------------------------------------------------------------------------

def test_quaternion_beta_bijective():
    rep = galois_beta(grading_to_coaction(quaternion_graded()))
    assert rep.bijective
    assert rep.method == "monomial"


def test_truncated_polynomial_beta_not_bijective():
    rep = galois_beta(grading_to_coaction(truncated_polynomial_graded(3)))
    assert not rep.bijective


def test_matrix_grading_beta_structural_failure():
    rep = galois_beta(grading_to_coaction(matrix_graded(2)))
    assert not rep.bijective
    assert rep.method == "structural"
    assert "dim A = 4" in rep.structural_failure


def test_trivial_coaction_beta_not_bijective():
    H = group_algebra(FiniteGroup.cyclic(2), RATS)
    one = RATS.one
    C = StructCoaction(H, H, tuple(((i, 0, one),) for i in range(2)))
    assert C.check() == []
    rep = galois_beta(C)
    assert not rep.bijective
    assert rep.method == "support"


def test_self_coaction_beta_sweedler():
    rep = galois_beta(self_coaction(taft_struct(2)))
    assert rep.bijective
    assert rep.method == "exact"
    assert rep.rank == 16


def test_trivial_extension_finite_catalog():
    G2 = FiniteGroup.cyclic(2)
    G6 = FiniteGroup.cyclic(6)
    S3 = FiniteGroup.symmetric(3)
    hopfs = [
        group_algebra(G2, RATS),
        group_algebra(G6, RATS),
        group_algebra(S3, RATS),
        function_algebra(G2, RATS),
        function_algebra(S3, RATS),
        taft_struct(2),
        taft_struct(3),
        small_uq_struct(4),
    ]
    for H in hopfs:
        assert trivial_extension_check(H) == []


# ---------------------------------------------------------------------------
# The Galois map over a commutative coinvariant ring
# ---------------------------------------------------------------------------

def test_laurent_extension_beta():
    E = laurent_module_extension(3)
    rep = galois_beta_module(E)
    assert rep.bijective
    assert rep.method == "determinant"
    # the determinant is a single Laurent monomial x^9, a unit
    assert len(rep.det.terms) == 1
    ((word, _),) = rep.det.terms.items()
    assert len(word) == 9


def test_laurent_fiber_is_cyclic_group_algebra():
    E = laurent_module_extension(3)

    def chi(b):
        # evaluate x -> 1 by summing the coefficients
        total = E.target.ring.zero
        for c in b.terms.values():
            total = total + c
        return total

    C = fiber_at(E, chi)
    assert C.check() == []
    model = group_algebra(FiniteGroup.cyclic(3), E.target.ring)
    assert tuple(tuple(sorted(v.items())) for row in C.carrier.mul for v in row) \
        == tuple(tuple(sorted(v.items())) for row in model.mul for v in row)


def test_matrix_extension_beta():
    E = matrix_module_extension(3)
    rep = galois_beta_module(E)
    assert rep.bijective
    assert rep.method == "determinant"


def test_module_rank_mismatch_structural():
    E = laurent_module_extension(3)
    bad = ModuleExtension(
        target=taft_struct(2), module_labels=E.module_labels,
        product=E.product, unit=E.unit, delta=E.delta,
        bzero=E.bzero, bone=E.bone, is_unit=E.is_unit)
    rep = galois_beta_module(bad)
    assert not rep.bijective
    assert rep.method == "structural"


# ---------------------------------------------------------------------------
# Group actions and invariants
# ---------------------------------------------------------------------------

def test_translation_action_invariants_match_coinvariants():
    # the right translation action on functions on a group: the fixed
    # functions are the constants, and they agree with the coinvariants
    # of the associated coaction
    G = FiniteGroup.symmetric(3)
    O = function_algebra(G, RATS)
    n = G.order
    action = []
    for g in range(n):
        mats = []
        for h in range(n):
            mats.append({G.mul(h, G.inv(g)): RATS.one})
        action.append(mats)
    C = coaction_from_action(O, G, action, O)
    assert C.check() == []
    inv = invariants_basis(O, action)
    coinv = coinvariants(C)
    assert len(inv) == 1 and len(coinv) == 1

    def normalized(v):
        lead = min(v)
        c = v[lead]
        return tuple(sorted((i, x / c) for i, x in v.items()))

    assert normalized(inv[0]) == normalized(coinv[0])
    # the fixed vector is the sum of all point masses
    assert normalized(inv[0]) == tuple((i, RATS.one) for i in range(n))


def test_translation_by_wrong_side_fails_coassociativity():
    G = FiniteGroup.symmetric(3)
    O = function_algebra(G, RATS)
    n = G.order
    action = []
    for g in range(n):
        mats = []
        for h in range(n):
            mats.append({G.mul(G.inv(g), h): RATS.one})
        action.append(mats)
    C = coaction_from_action(O, G, action, O)
    failures = C.check()
    assert any(f.check == "coaction coassociativity" for f in failures)


# ---------------------------------------------------------------------------
# Quotient coactions and homogeneous coinvariants
# ---------------------------------------------------------------------------

def _laurent_projection():
    h = sl2q_hopf()
    lp = quantum_laurent_plane_hopf()
    images = {
        "a": lp.algebra.element("X"),
        "b": lp.algebra.element("Y"),
        "c": lp.algebra.zero,
        "d": lp.algebra.element("Xinv"),
    }
    return h, lp, images


def test_quotient_coaction_passes():
    h, lp, images = _laurent_projection()
    C = quotient_coaction(h, lp, images)
    assert C.check(spot_count=10) == []


def test_quotient_coaction_rejects_non_morphism():
    h, lp, images = _laurent_projection()
    bad = dict(images)
    bad["b"], bad["c"] = bad["c"], bad["b"]
    try:
        quotient_coaction(h, lp, bad)
    except ValueError as e:
        assert "morphism" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_homogeneous_coinvariants_of_torus_projection():
    # only the scalars are coinvariant: the lone degree-2 candidate is
    # the quantum determinant, which is 1
    h, lp, images = _laurent_projection()
    basis = homogeneous_coinvariants(h, lp, images, degree=2)
    assert [str(p) for p in basis] == ["1"]


def test_homogeneous_coinvariants_of_identity():
    h = sl2q_hopf()
    ident = {g: h.algebra.element(g) for g in "abcd"}
    basis = homogeneous_coinvariants(h, h, ident, degree=2)
    assert [str(p) for p in basis] == ["1"]


def test_homogeneous_coinvariants_of_counit():
    h = sl2q_hopf()
    tr = trivial_hopf()
    images = {"a": tr.algebra.one, "d": tr.algebra.one,
              "b": tr.algebra.zero, "c": tr.algebra.zero}
    basis = homogeneous_coinvariants(h, tr, images, degree=2)
    assert len(basis) == len(h.algebra.basis(max_weight=2))
