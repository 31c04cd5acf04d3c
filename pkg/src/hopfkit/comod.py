"""Comodule algebras: coactions, coinvariants, gradings, and the Galois map.

Two carrier representations are supported and most operations dispatch
on the type:
  - Coaction: a presented algebra A coacted on by a presented Hopf
    algebra H; the coaction is stored on generators as TensorElem values
    in A (x) H and extended multiplicatively.
  - StructCoaction: a structure-constant algebra A coacted on by a
    StructHopf H; the coaction is a sparse matrix delta[i] -> list of
    (j, k, Scalar) triples meaning delta(e_i) = sum c e_j (x) f_k.

Checking a coaction verifies that delta is an algebra morphism on the
defining relations (or all basis pairs), plus coassociativity and
counitarity on generators (or all basis elements); morphism propagation
extends generator-level identities to the whole algebra, and random
monomial spot checks guard the implementation.

The Galois map beta(a (x) a') = (a (x) 1) delta(a') is decided exactly:
over the base field as a matrix rank computation (with a monomial fast
path and an optional mod-p invertibility certificate for large
matrices), and over a commutative coinvariant base ring B as a
determinant-is-a-unit test on the B-valued matrix, with A a free
B-module on an explicit basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Union

from .findim import (
    FiniteGroup,
    StructAlgebra,
    StructHopf,
    Vec,
    _tadd,
    group_algebra,
    vec_eq,
    vec_scale,
)
from .hopf import CheckFailure, HopfAlgebra, TensorElem, _extend_map, check_hopf_morphism
from .linalg import kernel_basis, modp_invertibility_certificate, rank
from .ncalg import NcPoly, PresentedAlgebra
from .scalar import Ring, Scalar

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# Presented coactions
# ---------------------------------------------------------------------------

class Coaction:
    """A coaction of a presented Hopf algebra on a presented algebra."""

    def __init__(self, carrier: PresentedAlgebra, target: HopfAlgebra,
                 delta_gens: Mapping[str, TensorElem], name: str = ""):
        if carrier.ring != target.ring:
            raise ValueError("carrier and target must share a scalar ring")
        self.carrier = carrier
        self.target = target
        self.name = name
        self.legs = (carrier, target.algebra)
        self._delta_gen = {}
        for gname in carrier.free.names:
            if gname not in delta_gens:
                raise ValueError(f"coaction missing generator {gname}")
            val = delta_gens[gname]
            if not isinstance(val, TensorElem):
                raise ValueError("coaction values must be TensorElem")
            self._delta_gen[carrier.free.index[gname]] = TensorElem.make(
                self.legs, val.terms)
        self._delta_cache: dict[Word, TensorElem] = {
            (): TensorElem.unit(self.legs)}

    def __repr__(self):
        return f"Coaction({self.name or self.carrier!r})"

    def delta_word(self, w: Word) -> TensorElem:
        cached = self._delta_cache.get(w)
        if cached is not None:
            return cached
        acc = self.delta_word(w[:-1]) * self._delta_gen[w[-1]]
        self._delta_cache[w] = acc
        return acc

    def delta(self, x: NcPoly) -> TensorElem:
        acc = TensorElem.zero(self.legs)
        for w, c in self.carrier.nf(x).terms.items():
            acc = acc + self.delta_word(w).scale(c)
        return acc

    def check(self, spot_degree: int = 4, spot_count: int = 25,
              seed: int = 0) -> list[CheckFailure]:
        failures = []
        carrier, target = self.carrier, self.target
        for lhs, rhs in carrier.rws.rules:
            diff = self.delta_word(lhs) - self.delta(rhs)
            if not diff.is_zero():
                failures.append(CheckFailure(
                    "coaction respects relation",
                    f"{carrier.free.word_str(lhs)}: residual {diff}"))

        def check_word(w: Word, label: str) -> None:
            d = self.delta_word(w)
            lhs = d.splice(0, self.delta_word)
            rhs = d.splice(1, target.delta_word)
            diff = lhs - rhs
            if not diff.is_zero():
                failures.append(CheckFailure(
                    "coaction coassociativity", f"{label}: residual {diff}"))
            back = d.contract(1, target.counit_word)
            orig = TensorElem.make((carrier,), {(w,): carrier.ring.one})
            diff = back - orig
            if not diff.is_zero():
                failures.append(CheckFailure(
                    "coaction counitarity", f"{label}: residual {diff}"))

        for name in carrier.free.names:
            check_word(carrier.free.word(name), name)
        ngens = len(carrier.free.names)
        if ngens:
            rng = random.Random(seed)
            for _ in range(spot_count):
                w = tuple(rng.randrange(ngens)
                          for _ in range(rng.randint(2, max(2, spot_degree))))
                check_word(w, carrier.free.word_str(w))
        return failures


# ---------------------------------------------------------------------------
# Structure-constant coactions
# ---------------------------------------------------------------------------

Triples = tuple[tuple[int, int, Scalar], ...]


class StructCoaction:
    """A coaction of a StructHopf on a structure-constant algebra."""

    def __init__(self, carrier: StructAlgebra, target: StructHopf,
                 delta: Sequence[Sequence[tuple[int, int, Scalar]]],
                 name: str = ""):
        if carrier.ring != target.ring:
            raise ValueError("carrier and target must share a scalar ring")
        if len(delta) != carrier.dim:
            raise ValueError("delta needs one entry per carrier basis element")
        self.carrier = carrier
        self.target = target
        self.delta: tuple[Triples, ...] = tuple(
            tuple((j, k, c) for j, k, c in row) for row in delta)
        self.name = name

    def __repr__(self):
        return f"StructCoaction({self.name or self.carrier!r})"

    def delta_vec(self, v: Vec) -> dict[tuple[int, int], Scalar]:
        out: dict[tuple[int, int], Scalar] = {}
        for i, c in v.items():
            for j, k, m in self.delta[i]:
                _tadd(out, (j, k), c * m)
        return out

    def _t2_mul(self, s, t):
        A, H = self.carrier, self.target
        out: dict[tuple[int, int], Scalar] = {}
        for (a, b), c in s.items():
            for (d, f), m in t.items():
                cm = c * m
                for x, cx in A.mul[a][d].items():
                    for y, cy in H.mul[b][f].items():
                        _tadd(out, (x, y), cm * cx * cy)
        return out

    def check(self) -> list[CheckFailure]:
        failures = []
        A, H = self.carrier, self.target
        unit_t2: dict[tuple[int, int], Scalar] = {}
        for a, ca in A.unit.items():
            for b, cb in H.unit.items():
                _tadd(unit_t2, (a, b), ca * cb)
        if self.delta_vec(A.unit) != unit_t2:
            failures.append(CheckFailure("coaction on unit", "1"))
        for i in range(A.dim):
            di = self.delta_vec(A.basis_vec(i))
            for j in range(A.dim):
                dj = self.delta_vec(A.basis_vec(j))
                if self.delta_vec(A.mul[i][j]) != self._t2_mul(di, dj):
                    failures.append(CheckFailure(
                        "coaction is multiplicative",
                        f"({A.labels[i]}, {A.labels[j]})"))
        for i in range(A.dim):
            label = A.labels[i]
            lhs: dict[tuple[int, int, int], Scalar] = {}
            rhs: dict[tuple[int, int, int], Scalar] = {}
            counit_back: Vec = {}
            for j, k, c in self.delta[i]:
                for a, b, m in self.delta[j]:
                    _tadd(lhs, (a, b, k), c * m)
                for x, y, m in H.comul[k]:
                    _tadd(rhs, (j, x, y), c * m)
                _tadd(counit_back, j, c * H.counit[k])
            if lhs != rhs:
                failures.append(CheckFailure("coaction coassociativity", label))
            if not vec_eq(counit_back, A.basis_vec(i)):
                failures.append(CheckFailure("coaction counitarity", label))
        return failures


AnyCoaction = Union[Coaction, StructCoaction]


def check_comodule(C: AnyCoaction, spot_degree: int = 4,
                   spot_count: int = 25, seed: int = 0) -> list[CheckFailure]:
    if isinstance(C, Coaction):
        return C.check(spot_degree=spot_degree, spot_count=spot_count, seed=seed)
    return C.check()


def materialize(C: Coaction, expected_dim: int, target: StructHopf,
                target_words: Sequence[Word]) -> StructCoaction:
    """Flatten a presented coaction with finite-dimensional carrier into
    structure constants, against an already-materialized target."""
    A = C.carrier
    words = A.basis()
    if len(words) != expected_dim:
        raise ValueError(f"carrier basis has {len(words)} words, expected {expected_dim}")
    aindex = {w: i for i, w in enumerate(words)}
    hindex = {w: i for i, w in enumerate(target_words)}
    ring = A.ring
    labels = tuple(A.free.word_str(w) for w in words)
    mul = tuple(
        tuple({aindex[w]: c for w, c in A.rws._word_nf(wi + wj).items()}
              for wj in words)
        for wi in words)
    carrier = StructAlgebra(ring=ring, labels=labels, mul=mul,
                            unit={aindex[()]: ring.one})
    delta = []
    for w in words:
        triples = []
        for (aw, hw), c in C.delta_word(w).terms.items():
            triples.append((aindex[aw], hindex[hw], c))
        delta.append(tuple(triples))
    return StructCoaction(carrier, target, delta, name=C.name)


# ---------------------------------------------------------------------------
# Coinvariants
# ---------------------------------------------------------------------------

def coinvariants(C: AnyCoaction, degree: Optional[int] = None):
    """Basis of {a : delta(a) = a (x) 1}.

    For a presented carrier the solve runs over the span of irreducible
    words of weight at most `degree` and returns NcPoly values; for a
    structure-constant carrier it runs over the whole space and returns
    sparse vectors.
    """
    if isinstance(C, StructCoaction):
        return _struct_coinvariants(C)
    if degree is None:
        raise ValueError("presented coinvariants need a degree bound")
    A = C.carrier
    words = A.rws.irreducible_words(max_weight=degree)
    cols = {w: i for i, w in enumerate(words)}
    rows: dict[tuple[Word, Word], dict[int, Scalar]] = {}
    ring = A.ring
    for w in words:
        expanded = C.delta_word(w) - TensorElem.make(
            C.legs, {(w, ()): ring.one})
        for key, c in expanded.terms.items():
            rows.setdefault(key, {})[cols[w]] = c
    matrix = [[row.get(i, ring.zero) for i in range(len(words))]
              for row in rows.values()]
    kern = kernel_basis(matrix, ring.zero, ring.one, ncols=len(words))
    out = []
    for vec in kern:
        poly = A.free.zero
        for i, c in enumerate(vec):
            if not c.is_zero():
                poly = poly + A.free.from_word(words[i], c)
        out.append(poly)
    return out


def _struct_coinvariants(C: StructCoaction) -> list[Vec]:
    A, H = C.carrier, C.target
    ring = A.ring
    rows: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i in range(A.dim):
        expanded: dict[tuple[int, int], Scalar] = {}
        for j, k, c in C.delta[i]:
            _tadd(expanded, (j, k), c)
        for k, ck in H.unit.items():
            _tadd(expanded, (i, k), -ck)
        for key, c in expanded.items():
            rows.setdefault(key, {})[i] = c
    matrix = [[row.get(i, ring.zero) for i in range(A.dim)]
              for row in rows.values()]
    kern = kernel_basis(matrix, ring.zero, ring.one, ncols=A.dim)
    return [{i: c for i, c in enumerate(vec) if not c.is_zero()}
            for vec in kern]


def invariants_basis(A: StructAlgebra, action: Sequence[Sequence[Vec]]) -> list[Vec]:
    """Joint kernel of rho(g) - id over all g, for a matrix action."""
    ring = A.ring
    matrix = []
    for mats in action:
        for j in range(A.dim):
            row = [ring.zero] * A.dim
            for i in range(A.dim):
                c = mats[i].get(j)
                if c is not None:
                    row[i] = row[i] + c
                if i == j:
                    row[i] = row[i] - ring.one
            matrix.append(row)
    kern = kernel_basis(matrix, ring.zero, ring.one, ncols=A.dim)
    return [{i: c for i, c in enumerate(vec) if not c.is_zero()}
            for vec in kern]


def coaction_from_action(A: StructAlgebra, G: FiniteGroup,
                         action: Sequence[Sequence[Vec]],
                         function_hopf: StructHopf) -> StructCoaction:
    """The coaction delta(a) = sum_g rho(g)(a) (x) delta_g for a group
    acting on A by linear maps (rho(g) given as a list of image vectors)."""
    delta = []
    for i in range(A.dim):
        triples = []
        for g in range(G.order):
            for j, c in action[g][i].items():
                triples.append((j, g, c))
        delta.append(tuple(triples))
    return StructCoaction(A, function_hopf, delta)


# ---------------------------------------------------------------------------
# Gradings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedAlgebra:
    """A StructAlgebra graded by a finite group, basis-aligned."""

    algebra: StructAlgebra
    group: FiniteGroup
    degree: tuple[int, ...]

    @staticmethod
    def build(algebra: StructAlgebra, group: FiniteGroup,
              degree: Sequence[int]) -> "GradedAlgebra":
        deg = tuple(degree)
        if len(deg) != algebra.dim:
            raise ValueError("need one degree per basis element")
        for i in algebra.unit:
            if deg[i] != group.identity:
                raise ValueError("unit is not concentrated in the identity degree")
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                want = group.mul(deg[i], deg[j])
                for k in algebra.mul[i][j]:
                    if deg[k] != want:
                        raise ValueError(
                            f"product {algebra.labels[i]}*{algebra.labels[j]} "
                            f"is not homogeneous")
        return GradedAlgebra(algebra, group, deg)

    def component(self, g: int) -> list[int]:
        return [i for i, d in enumerate(self.degree) if d == g]


def grading_to_coaction(ga: GradedAlgebra) -> StructCoaction:
    H = group_algebra(ga.group, ga.algebra.ring)
    one = ga.algebra.ring.one
    delta = tuple(((i, ga.degree[i], one),) for i in range(ga.algebra.dim))
    return StructCoaction(ga.algebra, H, delta)


def _group_from_group_algebra(H: StructHopf) -> Optional[FiniteGroup]:
    n = H.dim
    one = H.ring.one
    table = []
    for i in range(n):
        if tuple(H.comul[i]) != ((i, i, one),):
            return None
        if not (H.counit[i] - one).is_zero():
            return None
        row = []
        for j in range(n):
            v = H.mul[i][j]
            if len(v) != 1:
                return None
            ((k, c),) = v.items()
            if not (c - one).is_zero():
                return None
            row.append(k)
        table.append(row)
    try:
        return FiniteGroup.build(H.labels, table)
    except ValueError:
        return None


def coaction_to_grading(C: StructCoaction) -> GradedAlgebra:
    """Recover the grading from a coaction onto a group algebra whose
    basis vectors are homogeneous."""
    G = _group_from_group_algebra(C.target)
    if G is None:
        raise ValueError("coaction target is not a group algebra")
    one = C.carrier.ring.one
    degree = []
    for i in range(C.carrier.dim):
        merged: dict[tuple[int, int], Scalar] = {}
        for j, k, c in C.delta[i]:
            _tadd(merged, (j, k), c)
        if len(merged) != 1:
            raise ValueError(f"basis element {C.carrier.labels[i]} is not homogeneous")
        ((j, k), c), = merged.items()
        if j != i or not (c - one).is_zero():
            raise ValueError(f"basis element {C.carrier.labels[i]} is not homogeneous")
        degree.append(k)
    return GradedAlgebra.build(C.carrier, G, degree)


def projector_check(C: StructCoaction) -> list[CheckFailure]:
    """The degree projectors p_g(a) = (id (x) eval_g) delta(a) satisfy
    p_h p_g = [g = h] p_g and sum_g p_g = id."""
    G = _group_from_group_algebra(C.target)
    if G is None:
        raise ValueError("projectors need a group-algebra target")
    A = C.carrier
    ring = A.ring
    n = A.dim
    proj: list[list[Vec]] = []
    for g in range(G.order):
        mats = []
        for i in range(n):
            v: Vec = {}
            for j, k, c in C.delta[i]:
                if k == g:
                    _tadd(v, j, c)
            mats.append(v)
        proj.append(mats)
    failures = []

    def apply(mats: list[Vec], v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            for j, m in mats[i].items():
                _tadd(out, j, c * m)
        return out

    for g in range(G.order):
        for h in range(G.order):
            for i in range(n):
                got = apply(proj[h], proj[g][i])
                want = proj[g][i] if g == h else {}
                if not vec_eq(got, want):
                    failures.append(CheckFailure(
                        "projector orthogonality",
                        f"(p_{G.labels[h]} p_{G.labels[g]}) {A.labels[i]}"))
    for i in range(n):
        total: Vec = {}
        for g in range(G.order):
            for j, c in proj[g][i].items():
                _tadd(total, j, c)
        if not vec_eq(total, A.basis_vec(i)):
            failures.append(CheckFailure("projector sum", A.labels[i]))
    return failures


def strong_grading_check(ga: GradedAlgebra):
    """A_g A_h = A_{gh} for all pairs; returns (ok, witness or None)."""
    A = ga.algebra
    ring = A.ring
    for g in range(ga.group.order):
        comp_g = ga.component(g)
        for h in range(ga.group.order):
            comp_h = ga.component(h)
            gh = ga.group.mul(g, h)
            comp_gh = ga.component(gh)
            coords = {k: idx for idx, k in enumerate(comp_gh)}
            rows = []
            for a in comp_g:
                for b in comp_h:
                    prod = A.mul[a][b]
                    row = [ring.zero] * len(comp_gh)
                    for k, c in prod.items():
                        row[coords[k]] = c
                    rows.append(row)
            got = rank(rows, ring.zero, ring.one) if rows else 0
            if got != len(comp_gh):
                return False, (ga.group.labels[g], ga.group.labels[h])
    return True, None


# ---------------------------------------------------------------------------
# The Galois map over the base field
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BetaReport:
    rows: int
    cols: int
    bijective: bool
    method: str
    rank: Optional[int] = None
    structural_failure: Optional[str] = None
    det: Optional[object] = None


def galois_beta(C: StructCoaction, allow_modp: bool = True) -> BetaReport:
    """Decide bijectivity of beta: A (x) A -> A (x) H over the base field."""
    A, H = C.carrier, C.target
    n, m = A.dim, H.dim
    if n != m:
        return BetaReport(rows=n * m, cols=n * n, bijective=False,
                          method="structural",
                          structural_failure=f"dim A = {n} but dim H = {m}")
    # beta(e_i (x) e_j) = (e_i (x) 1) delta(e_j)
    columns: dict[tuple[int, int], dict[tuple[int, int], Scalar]] = {}
    for i in range(n):
        for j in range(n):
            col: dict[tuple[int, int], Scalar] = {}
            for j2, k, c in C.delta[j]:
                for a, ca in A.mul[i][j2].items():
                    _tadd(col, (a, k), c * ca)
            columns[(i, j)] = col
    # monomial fast path: a permutation with invertible entries is bijective
    if all(len(col) == 1 for col in columns.values()):
        seen = set()
        ok = True
        for col in columns.values():
            ((key, c),) = col.items()
            if key in seen or c.is_zero():
                ok = False
                break
            seen.add(key)
        if ok and len(seen) == n * n:
            return BetaReport(rows=n * n, cols=n * n, bijective=True,
                              method="monomial", rank=n * n)
    row_index: dict[tuple[int, int], int] = {}
    for col in columns.values():
        for key in col:
            row_index.setdefault(key, len(row_index))
    col_keys = sorted(columns)
    ring = A.ring
    if len(row_index) < n * n:
        # beta misses part of A (x) H entirely
        return BetaReport(rows=n * n, cols=n * n, bijective=False,
                          method="support", rank=None)
    dense = [[ring.zero] * len(col_keys) for _ in range(len(row_index))]
    for ci, key in enumerate(col_keys):
        for rkey, c in columns[key].items():
            dense[row_index[rkey]][ci] = c
    if allow_modp and n * n >= 128:
        cert = modp_invertibility_certificate(dense, ring)
        if cert:
            return BetaReport(rows=n * n, cols=n * n, bijective=True,
                              method="modp", rank=n * n)
    got = rank(dense, ring.zero, ring.one)
    return BetaReport(rows=n * n, cols=n * n, bijective=(got == n * n),
                      method="exact", rank=got)


def trivial_extension_check(H: StructHopf) -> list[CheckFailure]:
    """For A = H with delta = Delta, the maps beta1(x (x) y) = sum x y(1) (x) y(2)
    and beta2(x (x) y) = sum x S(y(1)) (x) y(2) are mutually inverse."""
    n = H.dim
    failures = []

    def beta1(i: int, j: int) -> dict[tuple[int, int], Scalar]:
        out: dict[tuple[int, int], Scalar] = {}
        for a, b, c in H.comul[j]:
            for k, ck in H.mul[i][a].items():
                _tadd(out, (k, b), c * ck)
        return out

    def beta2(i: int, j: int) -> dict[tuple[int, int], Scalar]:
        out: dict[tuple[int, int], Scalar] = {}
        for a, b, c in H.comul[j]:
            for s, cs in H.antipode[a].items():
                for k, ck in H.mul[i][s].items():
                    _tadd(out, (k, b), c * cs * ck)
        return out

    for i in range(n):
        for j in range(n):
            expect = {(i, j): H.ring.one}
            for name, first, second in (("beta1 o beta2", beta2, beta1),
                                        ("beta2 o beta1", beta1, beta2)):
                acc: dict[tuple[int, int], Scalar] = {}
                for (k, l), c in first(i, j).items():
                    for key, m in second(k, l).items():
                        _tadd(acc, key, c * m)
                if acc != expect:
                    failures.append(CheckFailure(
                        name, f"({H.labels[i]}, {H.labels[j]})"))
    return failures


def self_coaction(H: StructHopf) -> StructCoaction:
    """H coacting on itself by its coproduct."""
    return StructCoaction(H, H, H.comul, name="self")


# ---------------------------------------------------------------------------
# The Galois map over a commutative base ring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleExtension:
    """An H-comodule algebra A that is free over its central coinvariant
    subalgebra B, with an explicit module basis.

    `product[(i, j)]` lists (k, b) pairs meaning m_i m_j = sum b * m_k
    with b a B-element; `delta[k]` lists (j, l, Scalar) triples for the
    coaction on module basis elements.  B-elements must support +, -, *,
    scaling by Scalar, and is_zero(); `is_unit` decides invertibility
    in B.
    """

    target: StructHopf
    module_labels: tuple[str, ...]
    product: Mapping[tuple[int, int], Sequence[tuple[int, object]]]
    unit: tuple[tuple[int, object], ...]
    delta: tuple[Triples, ...]
    bzero: object
    bone: object
    is_unit: Callable[[object], bool]

    @property
    def rank(self) -> int:
        return len(self.module_labels)


def galois_beta_module(E: ModuleExtension) -> BetaReport:
    """Decide bijectivity of the B-linear beta via its determinant."""
    from .linalg import det_berkowitz

    n = E.rank
    m = E.target.dim
    if n != m:
        return BetaReport(rows=n * m, cols=n * n, bijective=False,
                          method="structural",
                          structural_failure=f"module rank {n} but dim H = {m}")
    index = {}
    for k in range(n):
        for l in range(m):
            index[(k, l)] = len(index)
    matrix = [[E.bzero] * (n * n) for _ in range(n * n)]
    col = 0
    for i in range(n):
        for j in range(n):
            for j2, l, c in E.delta[j]:
                for k, b in E.product[(i, j2)]:
                    entry = matrix[index[(k, l)]][col]
                    matrix[index[(k, l)]][col] = entry + b * c
            col += 1
    det = det_berkowitz(matrix, E.bzero, E.bone)
    return BetaReport(rows=n * n, cols=n * n, bijective=E.is_unit(det),
                      method="determinant", det=det)


def fiber_at(E: ModuleExtension, chi: Callable[[object], Scalar],
             labels: Optional[Sequence[str]] = None) -> StructCoaction:
    """Specialize the B-coefficients along a character of B; the result
    is a comodule algebra over the base field with the inherited coaction."""
    ring = E.target.ring
    n = E.rank
    mul_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v: Vec = {}
            for k, b in E.product[(i, j)]:
                c = chi(b)
                if not c.is_zero():
                    _tadd(v, k, c)
            row.append(v)
        mul_rows.append(tuple(row))
    unit: Vec = {}
    for k, b in E.unit:
        c = chi(b)
        if not c.is_zero():
            _tadd(unit, k, c)
    carrier = StructAlgebra(
        ring=ring, labels=tuple(labels or E.module_labels),
        mul=tuple(mul_rows), unit=unit)
    return StructCoaction(carrier, E.target, E.delta)


# ---------------------------------------------------------------------------
# Quantum homogeneous spaces
# ---------------------------------------------------------------------------

def quotient_coaction(src: HopfAlgebra, dst: HopfAlgebra,
                      images: Mapping[str, NcPoly]) -> Coaction:
    """The coaction delta = (id (x) pi) o Delta of a Hopf quotient pi on
    its source; pi must be a Hopf algebra morphism."""
    failures = check_hopf_morphism(src, dst, images)
    if failures:
        raise ValueError("quotient map is not a Hopf morphism: "
                         + "; ".join(map(str, failures)))
    phi = _extend_map(images, src.free, dst.algebra)
    legs = (src.algebra, dst.algebra)
    delta_gens = {}
    for name in src.free.names:
        raw: dict = {}
        for (w1, w2), c in src.delta(src.free.gen(name)).terms.items():
            image = phi(src.free.from_word(w2))
            for w2p, c2 in image.terms.items():
                s = raw.get((w1, w2p))
                v = c * c2 if s is None else s + c * c2
                raw[(w1, w2p)] = v
        delta_gens[name] = TensorElem.make(legs, raw)
    return Coaction(src.algebra, dst, delta_gens,
                    name=f"{src.algebra.name or 'H'} over quotient")


def homogeneous_coinvariants(src: HopfAlgebra, dst: HopfAlgebra,
                             images: Mapping[str, NcPoly],
                             degree: int) -> list[NcPoly]:
    """Coinvariants of the quotient coaction up to the degree bound."""
    C = quotient_coaction(src, dst, images)
    return coinvariants(C, degree=degree)
