"""Two-cocycles on finite groups and the comodule algebras they twist out.

A two-cocycle on a finite group G with values in the units of a scalar
ring is stored as a square table indexed like the group elements, so
``table[g][h]`` is the value on the pair (g, h).  Twisting the group
algebra multiplication by a cocycle gives a comodule algebra over the
group algebra whose Galois map is a permutation matrix, and cohomologous
cocycles give twists that differ by a diagonal change of basis.

The coboundary test works for tables whose entries are roots of unity in
the scalar ring; that covers every table this module constructs.  It is
complete there: if a root-of-unity table is a coboundary at all, the
trivializing function also takes root-of-unity values, so the search
over exponents decides the question.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import _taft_ring, taft_hopf
from .comod import Coaction, StructCoaction
from .findim import FiniteGroup, StructAlgebra, group_algebra
from .hopf import CheckFailure, TensorElem
from .linalg import solve_congruence
from .ncalg import FreeAlgebra, PresentedAlgebra
from .scalar import Ring, Scalar, ring_make

Table = tuple[tuple[Scalar, ...], ...]


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------

def torsion_units(ring: Ring) -> tuple[int, Scalar]:
    """The cyclic group of roots of unity in the ring: (order, generator)."""
    base = ring.spec.base
    if base in ("rationals", "q"):
        return 2, ring.scalar(-1)
    _, d = base
    if d % 2 == 0:
        return d, ring.q(1)
    return 2 * d, -ring.q(1)


def root_of_unity(ring: Ring, n: int) -> Scalar:
    """A primitive n-th root of unity, if the ring has one."""
    L, gen = torsion_units(ring)
    if L % n != 0:
        raise ValueError(f"ring has no primitive root of unity of order {n}")
    return gen ** (L // n)


@functools.cache
def _unit_logs(ring: Ring) -> dict[Scalar, int]:
    L, gen = torsion_units(ring)
    out = {}
    acc = ring.one
    for t in range(L):
        out[acc] = t
        acc = acc * gen
    return out


def _table_ring(table: Table) -> Ring:
    return table[0][0].ring


# ---------------------------------------------------------------------------
# Cocycles
# ---------------------------------------------------------------------------

def cocycle_failures(G: FiniteGroup, table: Table) -> list[CheckFailure]:
    """Nonzero entries plus the cocycle identity on all triples."""
    n = G.order
    failures = []
    if len(table) != n or any(len(row) != n for row in table):
        return [CheckFailure("cocycle table shape", f"need {n} x {n}")]
    for g in range(n):
        for h in range(n):
            if table[g][h].is_zero():
                failures.append(CheckFailure(
                    "cocycle entries are nonzero",
                    f"({G.labels[g]}, {G.labels[h]})"))
    if failures:
        return failures
    for g in range(n):
        for h in range(n):
            gh = G.mul(g, h)
            for k in range(n):
                lhs = table[g][h] * table[gh][k]
                rhs = table[h][k] * table[g][G.mul(h, k)]
                if not (lhs - rhs).is_zero():
                    failures.append(CheckFailure(
                        "cocycle identity",
                        f"({G.labels[g]}, {G.labels[h]}, {G.labels[k]}): "
                        f"residual {lhs - rhs}"))
    return failures


def is_cocycle(G: FiniteGroup, table: Table) -> bool:
    return not cocycle_failures(G, table)


def trivial_cocycle(G: FiniteGroup, ring: Ring) -> Table:
    one = ring.one
    return tuple(tuple(one for _ in range(G.order)) for _ in range(G.order))


def cocycle_mul(t1: Table, t2: Table) -> Table:
    return tuple(tuple(a * b for a, b in zip(r1, r2))
                 for r1, r2 in zip(t1, t2))


def cocycle_ratio(t1: Table, t2: Table) -> Table:
    return tuple(tuple(a / b for a, b in zip(r1, r2))
                 for r1, r2 in zip(t1, t2))


def normalize_cocycle(G: FiniteGroup, table: Table) -> Table:
    """Scale so the identity row and column are 1; stays cohomologous."""
    c = table[G.identity][G.identity]
    if (c - c.ring.one).is_zero():
        return table
    return tuple(tuple(v / c for v in row) for row in table)


def alternation(G: FiniteGroup, table: Table) -> Table:
    """The pairing b(g, h) = table(g, h) / table(h, g); a cohomology
    invariant, and on an abelian group a bicharacter."""
    n = G.order
    return tuple(tuple(table[g][h] / table[h][g] for h in range(n))
                 for g in range(n))


def is_coboundary(G: FiniteGroup, table: Table) -> Optional[tuple[Scalar, ...]]:
    """A function mu with table(g, h) = mu(g) mu(h) / mu(gh), or None.

    Entries must be roots of unity in their ring; raises ValueError
    otherwise.
    """
    ring = _table_ring(table)
    logs = _unit_logs(ring)
    L, gen = torsion_units(ring)
    n = G.order
    rows = []
    rhs = []
    for g in range(n):
        for h in range(n):
            ell = logs.get(table[g][h])
            if ell is None:
                raise ValueError(
                    f"cocycle entry {table[g][h]} is not a root of unity")
            row = [0] * n
            row[g] += 1
            row[h] += 1
            row[G.mul(g, h)] -= 1
            rows.append(row)
            rhs.append(ell)
    sol = solve_congruence(rows, rhs, L)
    if sol is None:
        return None
    mu = tuple(gen ** (e % L) for e in sol)
    for g in range(n):
        for h in range(n):
            if not (mu[g] * mu[h] - table[g][h] * mu[G.mul(g, h)]).is_zero():
                raise AssertionError("congruence solution failed verification")
    return mu


def twist_scaling(G: FiniteGroup, t1: Table, t2: Table
                  ) -> Optional[tuple[Scalar, ...]]:
    """Diagonal scalings carrying the t1-twist onto the t2-twist: a mu
    with mu(g) mu(h) t2(g, h) = t1(g, h) mu(gh), or None if the twists
    are not diagonally isomorphic."""
    return is_coboundary(G, cocycle_ratio(t1, t2))


# ---------------------------------------------------------------------------
# Cohomology of finite abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CohomologyReport:
    """The second cohomology of a product of cyclic groups with unit
    coefficients, with one representative cocycle per generator.

    The group is the direct product of Z/m over the (i, j) entries of
    `invariants`; `representatives[(i, j)]` is a cocycle of order m
    built from the bicharacter sending (e_i, e_j) to a primitive m-th
    root of unity.
    """

    orders: tuple[int, ...]
    ring: Ring
    invariants: tuple[tuple[tuple[int, int], int], ...]
    representatives: dict[tuple[int, int], Table]

    @property
    def order(self) -> int:
        return math.prod(m for _, m in self.invariants)

    @property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.invariants)


def _coordinates(orders: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(n) for n in orders)))


def pair_cocycle(orders: Sequence[int], i: int, j: int,
                 ring: Optional[Ring] = None, power: int = 1) -> Table:
    """The cocycle zeta^(power * a_i * b_j) on a product of cyclic
    groups, with zeta a primitive root of order gcd(orders[i], orders[j])."""
    m = math.gcd(orders[i], orders[j])
    if ring is None:
        ring = _h2_ring(orders)
    root = root_of_unity(ring, m)
    coords = _coordinates(orders)
    return tuple(
        tuple(root ** (power * a[i] * b[j]) for b in coords)
        for a in coords)


def _h2_ring(orders: Sequence[int]) -> Ring:
    e = math.lcm(*orders) if orders else 1
    if e <= 2:
        return ring_make("base=rationals")
    return ring_make(f"base=cyclotomic:{e}")


def h2_finite_abelian(orders: Sequence[int]) -> CohomologyReport:
    """Second cohomology of a product of cyclic groups: the product of
    Z/gcd(n_i, n_j) over the pairs i < j, with explicit representatives."""
    orders = tuple(orders)
    if not orders or any(n < 1 for n in orders):
        raise ValueError("orders must be a nonempty list of positive integers")
    ring = _h2_ring(orders)
    invariants = []
    reps: dict[tuple[int, int], Table] = {}
    for i in range(len(orders)):
        for j in range(i + 1, len(orders)):
            m = math.gcd(orders[i], orders[j])
            if m == 1:
                continue
            invariants.append(((i, j), m))
            reps[(i, j)] = pair_cocycle(orders, i, j, ring)
    return CohomologyReport(orders=orders, ring=ring,
                            invariants=tuple(invariants),
                            representatives=reps)


# ---------------------------------------------------------------------------
# Twisted group algebras
# ---------------------------------------------------------------------------

def twisted_group_algebra(G: FiniteGroup, table: Table) -> StructCoaction:
    """The algebra with basis u_g and u_g u_h = table(g, h) u_{gh},
    coacting on itself over the group algebra by u_g -> u_g (x) g.

    The table must be normalized (identity row and column 1) so that
    u_e is the unit; it need not satisfy the cocycle identity, but the
    product is associative exactly when it does.
    """
    ring = _table_ring(table)
    n = G.order
    e = G.identity
    one = ring.one
    for g in range(n):
        if not (table[e][g] - one).is_zero() or not (table[g][e] - one).is_zero():
            raise ValueError("cocycle table is not normalized")
    labels = tuple("u" + G.labels[g] for g in range(n))
    mul = tuple(
        tuple({G.table[g][h]: table[g][h]} for h in range(n))
        for g in range(n))
    carrier = StructAlgebra(ring=ring, labels=labels, mul=mul, unit={e: one})
    H = group_algebra(G, ring)
    delta = tuple(((g, g, one),) for g in range(n))
    return StructCoaction(carrier, H, delta, name="twisted group algebra")


# ---------------------------------------------------------------------------
# Galois objects for the Taft algebras
# ---------------------------------------------------------------------------

@functools.cache
def taft_twist_algebra(N: int, s: int) -> PresentedAlgebra:
    """The algebra with G^N = 1, X^N = s, XG = q GX; dimension N^2."""
    R, q = _taft_ring(N)
    F = FreeAlgebra(R, ["G", "X"])
    g, x = F.gens()
    rules = [
        (F.word("X", "G"), q * g * x),
        (F.word("G") * N, F.one),
        (F.word("X") * N, F.one * R.scalar(s)),
    ]
    return PresentedAlgebra(
        F, rules, name=f"Taft twist with X^{N} = {s}")


@functools.cache
def taft_galois_object(N: int, s: int) -> Coaction:
    """The Taft twist as a comodule algebra: G transforms by the
    grouplike and X partly by the skew-primitive, partly trivially."""
    A = taft_twist_algebra(N, s)
    h = taft_hopf(N)
    G, X = A.free.gens()
    g, x = h.free.gens()
    legs = (A, h.algebra)
    delta_gens = {
        "G": TensorElem.of(legs, G, g),
        "X": TensorElem.of(legs, A.free.one, x) + TensorElem.of(legs, X, g),
    }
    return Coaction(A, h, delta_gens, name=f"Taft twist with X^{N} = {s}")
