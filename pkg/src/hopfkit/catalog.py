"""Built-in algebras and Hopf algebras.

Every builder is cached, so repeated calls share one instance (and one
rewrite cache).  Rewrite orientations are chosen so that each system is
terminating by construction and confluent by an empty overlap report; the
test suite re-checks both for every entry.

Conventions used throughout:

* ``q`` lives in the coefficient field: formal for the generic-parameter
  algebras, a primitive d-th root of unity in the cyclotomic entries.
* Inverse generators are separate names (``Kinv``, ``Xinv``) tied by
  explicit unit relations, except in the small quotients where K is
  invertible by K^e = 1 and no extra generator is needed.
"""

from __future__ import annotations

import functools

from .hopf import HopfAlgebra, TensorElem
from .ncalg import FreeAlgebra, PresentedAlgebra
from .scalar import Ring, Scalar, ring_make

__all__ = [
    "quantum_plane",
    "sl2q",
    "sl2q_hopf",
    "sl2_classical",
    "sl2_classical_hopf",
    "quantum_laurent_plane",
    "quantum_laurent_plane_hopf",
    "uq_sl2",
    "uq_sl2_hopf",
    "uq_fundamental_rep",
    "sl2q_pairing_entries",
    "small_e",
    "small_uq",
    "small_uq_hopf",
    "taft_algebra",
    "taft_hopf",
]


@functools.cache
def _ring_q() -> Ring:
    return ring_make("base=q; params=")


@functools.cache
def _ring_qq() -> Ring:
    return ring_make("base=rationals; params=")


@functools.cache
def _ring_cyc(d: int) -> Ring:
    return ring_make(f"base=cyclotomic:{d}; params=")


# ---------------------------------------------------------------------------
# Quantum plane (a comodule algebra, not a Hopf algebra)
# ---------------------------------------------------------------------------

@functools.cache
def quantum_plane(ring: Ring | None = None) -> PresentedAlgebra:
    """k<X, Y> with YX = qXY."""
    R = ring or _ring_q()
    F = FreeAlgebra(R, ["X", "Y"])
    return PresentedAlgebra(F, [(F.word("Y", "X"), R.q(1) * F.gen("X") * F.gen("Y"))],
                            name="quantum plane")


# ---------------------------------------------------------------------------
# The quantum special linear group
# ---------------------------------------------------------------------------

def _sl2_rules(F: FreeAlgebra, q: Scalar):
    a, b, c, d = (F.gen(n) for n in "abcd")
    one = F.one
    return [
        (F.word("b", "a"), q * a * b),
        (F.word("c", "a"), q * a * c),
        (F.word("d", "b"), q * b * d),
        (F.word("d", "c"), q * c * d),
        (F.word("c", "b"), b * c),
        (F.word("b", "c"), q * a * d - q * one),
        (F.word("d", "a"), q * q * a * d + (1 - q * q) * one),
    ]


@functools.cache
def sl2q(ring: Ring | None = None) -> PresentedAlgebra:
    """The coordinate algebra of quantum SL(2).

    Oriented with weights w(a) = w(d) = 1, w(b) = w(c) = 2 so that both
    bc -> q ad - q and da -> q^2 ad + (1 - q^2) decrease; the irreducible
    words are a^i b^j d^l and a^i c^k d^l.
    """
    R = ring or _ring_q()
    F = FreeAlgebra(R, ["a", "b", "c", "d"], weights=[1, 2, 2, 1])
    return PresentedAlgebra(F, _sl2_rules(F, R.q(1)), name="quantum SL(2)")


def _sl2_hopf_data(A: PresentedAlgebra, q: Scalar):
    F = A.free
    a, b, c, d = (F.gen(n) for n in "abcd")
    ring = A.ring
    coproduct = {
        "a": [(a, a), (b, c)],
        "b": [(a, b), (b, d)],
        "c": [(c, a), (d, c)],
        "d": [(c, b), (d, d)],
    }
    counit = {"a": ring.one, "b": ring.zero, "c": ring.zero, "d": ring.one}
    antipode = {"a": d, "b": -q * b, "c": -(ring.one / q) * c, "d": a}
    return coproduct, counit, antipode


@functools.cache
def sl2q_hopf(ring: Ring | None = None) -> HopfAlgebra:
    A = sl2q(ring)
    q = A.ring.q(1)
    return HopfAlgebra(A, *_sl2_hopf_data(A, q), name="quantum SL(2)")


@functools.cache
def sl2_classical() -> PresentedAlgebra:
    """The commutative coordinate algebra of SL(2) (q = 1, rationals)."""
    R = _ring_qq()
    F = FreeAlgebra(R, ["a", "b", "c", "d"], weights=[1, 2, 2, 1])
    return PresentedAlgebra(F, _sl2_rules(F, R.one), name="SL(2)")


@functools.cache
def sl2_classical_hopf() -> HopfAlgebra:
    A = sl2_classical()
    return HopfAlgebra(A, *_sl2_hopf_data(A, A.ring.one), name="SL(2)")


# ---------------------------------------------------------------------------
# The quantum Laurent plane k<X, Xinv, Y>, YX = qXY
# ---------------------------------------------------------------------------

@functools.cache
def quantum_laurent_plane(ring: Ring | None = None) -> PresentedAlgebra:
    R = ring or _ring_q()
    F = FreeAlgebra(R, ["X", "Xinv", "Y"])
    X, Xinv, Y = F.gens()
    rules = [
        (F.word("X", "Xinv"), F.one),
        (F.word("Xinv", "X"), F.one),
        (F.word("Y", "X"), R.q(1) * X * Y),
        (F.word("Y", "Xinv"), R.q(-1) * Xinv * Y),
    ]
    return PresentedAlgebra(F, rules, name="quantum Laurent plane")


@functools.cache
def quantum_laurent_plane_hopf(ring: Ring | None = None) -> HopfAlgebra:
    A = quantum_laurent_plane(ring)
    F = A.free
    R = A.ring
    X, Xinv, Y = F.gens()
    coproduct = {
        "X": [(X, X)],
        "Xinv": [(Xinv, Xinv)],
        "Y": [(X, Y), (Y, Xinv)],
    }
    counit = {"X": R.one, "Xinv": R.one, "Y": R.zero}
    antipode = {"X": Xinv, "Xinv": X, "Y": -R.q(1) * Y}
    return HopfAlgebra(A, coproduct, counit, antipode, name="quantum Laurent plane")


# ---------------------------------------------------------------------------
# The quantum enveloping algebra of sl2
# ---------------------------------------------------------------------------

@functools.cache
def uq_sl2(ring: Ring | None = None) -> PresentedAlgebra:
    R = ring or _ring_q()
    F = FreeAlgebra(R, ["E", "F", "K", "Kinv"])
    q = R.q(1)
    E, Fg, K, Kinv = F.gens()
    c = R.one / (q - R.q(-1))
    rules = [
        (F.word("K", "Kinv"), F.one),
        (F.word("Kinv", "K"), F.one),
        (F.word("K", "E"), q ** 2 * E * K),
        (F.word("K", "F"), R.q(-2) * Fg * K),
        (F.word("Kinv", "E"), R.q(-2) * E * Kinv),
        (F.word("Kinv", "F"), q ** 2 * Fg * Kinv),
        (F.word("F", "E"), E * Fg - c * K + c * Kinv),
    ]
    return PresentedAlgebra(F, rules, name="quantum enveloping sl2")


@functools.cache
def uq_sl2_hopf(ring: Ring | None = None) -> HopfAlgebra:
    A = uq_sl2(ring)
    F = A.free
    R = A.ring
    E, Fg, K, Kinv = F.gens()
    coproduct = {
        "K": [(K, K)],
        "Kinv": [(Kinv, Kinv)],
        "E": [(F.one, E), (E, K)],
        "F": [(Kinv, Fg), (Fg, F.one)],
    }
    counit = {"K": R.one, "Kinv": R.one, "E": R.zero, "F": R.zero}
    antipode = {"K": Kinv, "Kinv": K, "E": -E * Kinv, "F": -K * Fg}
    return HopfAlgebra(A, coproduct, counit, antipode, name="quantum enveloping sl2")


def uq_fundamental_rep(ring: Ring | None = None):
    """The two-dimensional representation: E, F as elementary nilpotents,
    K as diag(q, 1/q)."""
    R = ring or _ring_q()
    z, o = R.zero, R.one
    q, qi = R.q(1), R.q(-1)
    return {
        "E": [[z, o], [z, z]],
        "F": [[z, z], [o, z]],
        "K": [[q, z], [z, qi]],
        "Kinv": [[qi, z], [z, q]],
    }


def sl2q_pairing_entries():
    """Which matrix coefficient each quantum SL(2) generator names."""
    return {"a": (0, 0), "b": (0, 1), "c": (1, 0), "d": (1, 1)}


# ---------------------------------------------------------------------------
# Small (finite-dimensional) quantum sl2 at a root of unity
# ---------------------------------------------------------------------------

def small_e(d: int) -> int:
    """The power e with E^e = F^e = 0, K^e = 1 at a primitive d-th root."""
    if d < 3:
        raise ValueError("need a root of unity of order >= 3")
    return d if d % 2 else d // 2


@functools.cache
def small_uq(d: int, ring: Ring | None = None) -> PresentedAlgebra:
    """The e^3-dimensional quotient at a primitive d-th root of unity.

    Three generators only: Kinv is K^(e-1) once K^e = 1, so the Laurent
    generator would break termination and is eliminated up front.  A ring
    argument presents the same algebra over an extension of the canonical
    coefficient field (the base must still contain a d-th root of unity).
    """
    e = small_e(d)
    R = ring or _ring_cyc(d)
    F = FreeAlgebra(R, ["E", "F", "K"], weights=[e, e, 1])
    q = R.q(1)
    E, Fg, K = F.gens()
    c = R.one / (q - R.q(-1))
    kinv = F.one
    for _ in range(e - 1):
        kinv = kinv * K
    rules = [
        (F.word("K", "E"), q ** 2 * E * K),
        (F.word("K", "F"), R.q(-2) * Fg * K),
        (F.word("F", "E"), E * Fg - c * K + c * kinv),
        (F.word("E",) * e, F.zero),
        (F.word("F",) * e, F.zero),
        (F.word("K",) * e, F.one),
    ]
    return PresentedAlgebra(F, rules, name=f"small quantum sl2 at order {d}")


@functools.cache
def small_uq_hopf(d: int, ring: Ring | None = None) -> HopfAlgebra:
    A = small_uq(d, ring)
    e = small_e(d)
    F = A.free
    R = A.ring
    E, Fg, K = F.gens()
    kinv = A.nf(F.gen("K") ** (e - 1))
    coproduct = {
        "K": [(K, K)],
        "E": [(F.one, E), (E, K)],
        "F": [(kinv, Fg), (Fg, F.one)],
    }
    counit = {"K": R.one, "E": R.zero, "F": R.zero}
    antipode = {"K": kinv, "E": A.nf(-E * kinv), "F": -K * Fg}
    return HopfAlgebra(A, coproduct, counit, antipode,
                       name=f"small quantum sl2 at order {d}")


# ---------------------------------------------------------------------------
# Taft algebras
# ---------------------------------------------------------------------------

def _taft_ring(N: int) -> tuple[Ring, Scalar]:
    if N < 2:
        raise ValueError("Taft algebras need N >= 2")
    if N == 2:
        R = _ring_qq()
        return R, R.scalar(-1)
    R = _ring_cyc(N)
    return R, R.q(1)


@functools.cache
def taft_algebra(N: int) -> PresentedAlgebra:
    """The N^2-dimensional Taft algebra: g^N = 1, x^N = 0, xg = q gx with q
    a primitive N-th root of unity (N = 2 is the four-dimensional case over
    the rationals with q = -1)."""
    R, q = _taft_ring(N)
    F = FreeAlgebra(R, ["g", "x"])
    g, x = F.gens()
    rules = [
        (F.word("x", "g"), q * g * x),
        (F.word("g",) * N, F.one),
        (F.word("x",) * N, F.zero),
    ]
    return PresentedAlgebra(F, rules, name=f"Taft algebra of dimension {N * N}")


@functools.cache
def taft_hopf(N: int) -> HopfAlgebra:
    A = taft_algebra(N)
    F = A.free
    R = A.ring
    g, x = F.gens()
    gpow = A.nf(g ** (N - 1))
    coproduct = {
        "g": [(g, g)],
        "x": [(F.one, x), (x, g)],
    }
    counit = {"g": R.one, "x": R.zero}
    antipode = {"g": gpow, "x": A.nf(-x * gpow)}
    return HopfAlgebra(A, coproduct, counit, antipode,
                       name=f"Taft algebra of dimension {N * N}")


# ---------------------------------------------------------------------------
# Coactions and graded algebras
# ---------------------------------------------------------------------------

def hopf_self_coaction(h: HopfAlgebra):
    """A Hopf algebra coacting on itself by its coproduct."""
    from .comod import Coaction

    delta_gens = {name: h.delta(h.free.gen(name)) for name in h.free.names}
    return Coaction(h.algebra, h, delta_gens, name="self")


@functools.cache
def quantum_plane_coaction():
    """The quantum plane as a comodule algebra: the generators transform
    by the first and second columns of the defining matrix."""
    from .comod import Coaction

    A = quantum_plane()
    h = sl2q_hopf()
    H = h.algebra
    X, Y = A.free.gens()
    a, b, c, d = (h.free.gen(n) for n in "abcd")
    legs = (A, H)
    delta_gens = {
        "X": TensorElem.of(legs, X, a) + TensorElem.of(legs, Y, c),
        "Y": TensorElem.of(legs, X, b) + TensorElem.of(legs, Y, d),
    }
    return Coaction(A, h, delta_gens, name="quantum plane")


@functools.cache
def quaternion_algebra() -> "StructAlgebra":
    """The quaternions over the rationals as structure constants."""
    from .findim import StructAlgebra

    R = ring_make("base=rationals; params=")
    one = R.one
    minus = -R.one
    # basis 1, i, j, k
    table = {
        (0, 0): (0, one), (0, 1): (1, one), (0, 2): (2, one), (0, 3): (3, one),
        (1, 0): (1, one), (2, 0): (2, one), (3, 0): (3, one),
        (1, 1): (0, minus), (2, 2): (0, minus), (3, 3): (0, minus),
        (1, 2): (3, one), (2, 1): (3, minus),
        (2, 3): (1, one), (3, 2): (1, minus),
        (3, 1): (2, one), (1, 3): (2, minus),
    }
    mul = tuple(tuple({table[(i, j)][0]: table[(i, j)][1]} for j in range(4))
                for i in range(4))
    return StructAlgebra(ring=R, labels=("1", "i", "j", "k"),
                         mul=mul, unit={0: one})


@functools.cache
def quaternion_graded() -> "GradedAlgebra":
    """The quaternions graded by the Klein four-group."""
    from .comod import GradedAlgebra
    from .findim import FiniteGroup

    G = FiniteGroup.product([2, 2])
    # product() orders elements (0,0), (0,1), (1,0), (1,1)
    return GradedAlgebra.build(quaternion_algebra(), G, (0, 2, 1, 3))


@functools.cache
def matrix_algebra(N: int) -> "StructAlgebra":
    """The N x N matrix algebra on the matrix-unit basis."""
    from .findim import StructAlgebra

    R = ring_make("base=rationals; params=")
    one = R.one
    idx = {(i, j): N * i + j for i in range(N) for j in range(N)}
    labels = tuple(f"E{i}{j}" for i in range(N) for j in range(N))
    mul = []
    for i in range(N):
        for j in range(N):
            row = []
            for k in range(N):
                for l in range(N):
                    row.append({idx[(i, l)]: one} if j == k else {})
            mul.append(tuple(row))
    unit = {idx[(i, i)]: one for i in range(N)}
    return StructAlgebra(ring=R, labels=labels, mul=tuple(mul), unit=unit)


@functools.cache
def matrix_graded(N: int) -> "GradedAlgebra":
    """M_N graded by the cyclic group: the k-th component collects the
    matrix units E_ij with i - j = k mod N."""
    from .comod import GradedAlgebra
    from .findim import FiniteGroup

    A = matrix_algebra(N)
    G = FiniteGroup.cyclic(N)
    degree = tuple((i - j) % N for i in range(N) for j in range(N))
    return GradedAlgebra.build(A, G, degree)


@functools.cache
def truncated_polynomial_graded(n: int) -> "GradedAlgebra":
    """x^n = 0 with x of degree 1 mod n: graded but never strongly graded."""
    from .comod import GradedAlgebra
    from .findim import FiniteGroup, StructAlgebra

    R = ring_make("base=rationals; params=")
    one = R.one
    mul = tuple(tuple(({i + j: one} if i + j < n else {}) for j in range(n))
                for i in range(n))
    A = StructAlgebra(ring=R, labels=tuple(f"x^{i}" for i in range(n)),
                      mul=mul, unit={0: one})
    return GradedAlgebra.build(A, FiniteGroup.cyclic(n), tuple(range(n)))


@functools.cache
def laurent_algebra() -> PresentedAlgebra:
    """Laurent polynomials in one variable, presented with an explicit
    inverse generator."""
    R = ring_make("base=rationals; params=")
    F = FreeAlgebra(R, ["x", "xinv"])
    x, xinv = F.gens()
    rules = [
        (F.word("x", "xinv"), F.one),
        (F.word("xinv", "x"), F.one),
    ]
    return PresentedAlgebra(F, rules, name="Laurent polynomials")


@functools.cache
def laurent_module_extension(n: int = 3) -> "ModuleExtension":
    """Laurent polynomials over the subalgebra generated by x^{+-n}, as a
    free module on 1, x, ..., x^{n-1}, coacted on by the cyclic group
    algebra with x in degree 1."""
    from .comod import ModuleExtension
    from .findim import FiniteGroup, group_algebra

    A = laurent_algebra()
    R = A.ring
    F = A.free
    H = group_algebra(FiniteGroup.cyclic(n), R)

    def bpower(t: int):
        # x^{n t} as an element of the base subalgebra
        if t >= 0:
            return F.from_word(F.word(*["x"] * (n * t)))
        return F.from_word(F.word(*["xinv"] * (n * -t)))

    product = {}
    for i in range(n):
        for j in range(n):
            t, r = divmod(i + j, n)
            product[(i, j)] = ((r, bpower(t)),)
    delta = tuple(((k, k % n, R.one),) for k in range(n))

    def is_unit(p) -> bool:
        return len(p.terms) == 1

    return ModuleExtension(
        target=H, module_labels=tuple(f"x^{k}" for k in range(n)),
        product=product, unit=((0, F.one),), delta=delta,
        bzero=F.zero, bone=F.one, is_unit=is_unit)


@functools.cache
def matrix_module_extension(N: int = 3) -> "ModuleExtension":
    """M_N as a free module over its diagonal subalgebra on the cyclic
    shift powers, coacted on by the cyclic group algebra."""
    from .comod import ModuleExtension
    from .findim import AlgElem, FiniteGroup, StructAlgebra, group_algebra

    R = ring_make("base=rationals; params=")
    one = R.one
    diag = StructAlgebra(
        ring=R, labels=tuple(f"D{i}" for i in range(N)),
        mul=tuple(tuple(({i: one} if i == j else {}) for j in range(N))
                  for i in range(N)),
        unit={i: one for i in range(N)})
    bone = AlgElem(diag, {i: one for i in range(N)})
    bzero = AlgElem(diag, {})
    H = group_algebra(FiniteGroup.cyclic(N), R)
    # module basis: powers of the cyclic shift; P^i P^j = P^{(i+j) mod N}
    product = {(i, j): (((i + j) % N, bone),)
               for i in range(N) for j in range(N)}
    delta = tuple(((k, k, one),) for k in range(N))

    def is_unit(b: AlgElem) -> bool:
        return len(b.vec) == N

    return ModuleExtension(
        target=H, module_labels=tuple(f"P^{k}" for k in range(N)),
        product=product, unit=((0, bone),), delta=delta,
        bzero=bzero, bone=bone, is_unit=is_unit)


@functools.cache
def taft_struct(N: int) -> "StructHopf":
    """The Taft algebra materialized to structure constants."""
    from .findim import from_presentation

    return from_presentation(taft_hopf(N), N * N)


@functools.cache
def small_uq_struct(d: int) -> "StructHopf":
    """The small quantum group materialized to structure constants."""
    from .findim import from_presentation

    return from_presentation(small_uq_hopf(d), small_e(d) ** 3)


@functools.cache
def trivial_hopf(ring: Ring | None = None) -> HopfAlgebra:
    """The one-dimensional Hopf algebra (no generators)."""
    F = FreeAlgebra(ring or _ring_q(), [])
    A = PresentedAlgebra(F, [], name="trivial Hopf algebra")
    return HopfAlgebra(A, {}, {}, {}, name="trivial Hopf algebra")
