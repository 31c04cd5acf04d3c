"""Finite groups and finite-dimensional Hopf algebras by structure constants.

Representation invariants:
  - FiniteGroup stores a full multiplication table over indices 0..n-1;
    associativity, identity, and inverses are verified at construction.
  - Vectors over a StructAlgebra basis are sparse dicts {index: Scalar}
    that never store zero coefficients.
  - StructAlgebra holds the product tensor mul[i][j] -> vector and the
    unit vector; StructHopf adds the coproduct comul[i] -> list of
    (j, k, Scalar) triples, the counit vector, and the antipode matrix.
  - check_axioms verifies every Hopf axiom as an exact finite tensor
    contraction: associativity, unit, coassociativity, counit, the
    bialgebra compatibilities, and both antipode laws.

Character values of a finite abelian group lie in the cyclotomic field
of its exponent (they are roots of unity of that order); groups with
exponent at most 2 only need rational values.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .hopf import CheckFailure, HopfAlgebra
from .linalg import rank
from .scalar import Ring, Scalar, ring_make

Vec = dict[int, Scalar]


# ---------------------------------------------------------------------------
# Finite groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a verified multiplication table."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @staticmethod
    def build(labels: Sequence[str], table: Sequence[Sequence[int]]) -> "FiniteGroup":
        n = len(labels)
        tab = tuple(tuple(row) for row in table)
        if len(tab) != n or any(len(row) != n for row in tab):
            raise ValueError("table must be n x n")
        for row in tab:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError("table entry out of range")
        identity = None
        for e in range(n):
            if all(tab[e][i] == i and tab[i][e] == i for i in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element")
        inverse = []
        for i in range(n):
            inv = [j for j in range(n) if tab[i][j] == identity]
            if len(inv) != 1 or tab[inv[0]][i] != identity:
                raise ValueError(f"element {labels[i]} has no two-sided inverse")
            inverse.append(inv[0])
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if tab[tab[i][j]][k] != tab[i][tab[j][k]]:
                        raise ValueError(
                            f"associativity fails at ({labels[i]}, {labels[j]}, {labels[k]})")
        return FiniteGroup(tuple(labels), tab, identity, tuple(inverse))

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(i), -k)
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, i)
        return acc

    def element_order(self, i: int) -> int:
        k, acc = 1, i
        while acc != self.identity:
            acc = self.mul(acc, i)
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(i) for i in range(self.order)))

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(i + 1, n))

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("order must be positive")
        labels = [f"g{i}" if n > 1 else "e" for i in range(n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FiniteGroup.build(labels, table)

    @staticmethod
    def product(orders: Sequence[int]) -> "FiniteGroup":
        if not orders or any(n < 1 for n in orders):
            raise ValueError("orders must be a nonempty list of positive integers")
        elems = list(itertools.product(*(range(n) for n in orders)))
        index = {e: i for i, e in enumerate(elems)}
        labels = ["(" + ",".join(map(str, e)) + ")" for e in elems]
        table = [[index[tuple((a + b) % n for a, b, n in zip(x, y, orders))]
                  for y in elems] for x in elems]
        return FiniteGroup.build(labels, table)

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("n must be positive")
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        labels = ["".join(str(v + 1) for v in p) for p in perms]
        # (p*q)(i) = p(q(i)): q acts first
        table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms]
                 for p in perms]
        return FiniteGroup.build(labels, table)


def parse_group(text: str) -> FiniteGroup:
    """Parse `cyclic:n`, `product:[n1,n2,...]`, `sym:n`, or `table:[[...]]`."""
    text = text.strip()
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"malformed group spec {text!r}")
    kind = kind.strip()
    arg = arg.strip()
    if kind == "cyclic":
        return FiniteGroup.cyclic(int(arg))
    if kind == "sym":
        return FiniteGroup.symmetric(int(arg))
    if kind == "product":
        orders = json.loads(arg)
        if not isinstance(orders, list):
            raise ValueError("product spec needs a list of orders")
        return FiniteGroup.product([int(v) for v in orders])
    if kind == "table":
        table = json.loads(arg)
        labels = [f"g{i}" for i in range(len(table))]
        return FiniteGroup.build(labels, table)
    raise ValueError(f"unknown group spec kind {kind!r}")


def commutator_subgroup(G: FiniteGroup) -> tuple[int, ...]:
    """Indices of the subgroup generated by all commutators."""
    gens = {G.identity}
    for i in range(G.order):
        for j in range(G.order):
            gens.add(G.mul(G.mul(i, j), G.inv(G.mul(j, i))))
    closure = set(gens)
    while True:
        new = {G.mul(a, b) for a in closure for b in closure} - closure
        if not new:
            return tuple(sorted(closure))
        closure |= new


def quotient_group(G: FiniteGroup, normal: Sequence[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Quotient by a normal subgroup; returns (quotient, projection indices)."""
    nset = set(normal)
    if G.identity not in nset:
        raise ValueError("subgroup must contain the identity")
    for n in nset:
        for g in range(G.order):
            if G.mul(G.mul(g, n), G.inv(g)) not in nset:
                raise ValueError("subgroup is not normal")
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for g in range(G.order):
        if g in coset_of:
            continue
        rep = len(reps)
        reps.append(g)
        for n in nset:
            coset_of[G.mul(g, n)] = rep
    labels = [G.labels[r] + "N" for r in reps]
    table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
    Q = FiniteGroup.build(labels, table)
    return Q, tuple(coset_of[g] for g in range(G.order))


# ---------------------------------------------------------------------------
# Sparse vectors
# ---------------------------------------------------------------------------

def vec_add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for i, c in v.items():
        s = out.get(i)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(i, None)
        else:
            out[i] = s
    return out

def vec_scale(u: Vec, c: Scalar) -> Vec:
    if c.is_zero():
        return {}
    return {i: c * v for i, v in u.items()}

def vec_sub(u: Vec, v: Vec) -> Vec:
    return vec_add(u, {i: -c for i, c in v.items()})

def vec_eq(u: Vec, v: Vec) -> bool:
    return not vec_sub(u, v)

def vec_dense(u: Vec, dim: int, ring: Ring) -> list[Scalar]:
    return [u.get(i, ring.zero) for i in range(dim)]


T2 = dict[tuple[int, int], Scalar]
T3 = dict[tuple[int, int, int], Scalar]


def _tadd(acc: dict, key, c: Scalar) -> None:
    s = acc.get(key)
    s = c if s is None else s + c
    if s.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = s


# ---------------------------------------------------------------------------
# Structure-constant algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructAlgebra:
    """A finite-dimensional associative algebra given by structure constants."""

    ring: Ring
    labels: tuple[str, ...]
    mul: tuple[tuple[Vec, ...], ...]
    unit: Vec

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vec(self, i: int) -> Vec:
        return {i: self.ring.one}

    def mul_vec(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                c = a * b
                for k, m in self.mul[i][j].items():
                    _tadd(out, k, c * m)
        return out

    def power_vec(self, u: Vec, n: int) -> Vec:
        acc = dict(self.unit)
        for _ in range(n):
            acc = self.mul_vec(acc, u)
        return acc

    def vec_str(self, u: Vec) -> str:
        if not u:
            return "0"
        parts = [f"({c})*{self.labels[i]}" for i, c in sorted(u.items())]
        return " + ".join(parts)

    def check_algebra(self) -> list[CheckFailure]:
        failures = []
        n = self.dim
        for i in range(n):
            e = self.basis_vec(i)
            if not vec_eq(self.mul_vec(self.unit, e), e):
                failures.append(CheckFailure("left unit", self.labels[i]))
            if not vec_eq(self.mul_vec(e, self.unit), e):
                failures.append(CheckFailure("right unit", self.labels[i]))
        for i in range(n):
            for j in range(n):
                left = self.mul[i][j]
                for k in range(n):
                    lhs = self.mul_vec(left, self.basis_vec(k))
                    rhs = self.mul_vec(self.basis_vec(i), self.mul[j][k])
                    if not vec_eq(lhs, rhs):
                        failures.append(CheckFailure(
                            "associativity",
                            f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"))
        return failures


@dataclass(frozen=True)
class StructHopf(StructAlgebra):
    """A finite-dimensional Hopf algebra given by structure constants."""

    comul: tuple[tuple[tuple[int, int, Scalar], ...], ...]
    counit: tuple[Scalar, ...]
    antipode: tuple[Vec, ...]

    def comul_vec(self, u: Vec) -> T2:
        out: T2 = {}
        for i, c in u.items():
            for j, k, m in self.comul[i]:
                _tadd(out, (j, k), c * m)
        return out

    def counit_vec(self, u: Vec) -> Scalar:
        acc = self.ring.zero
        for i, c in u.items():
            acc = acc + c * self.counit[i]
        return acc

    def antipode_vec(self, u: Vec) -> Vec:
        out: Vec = {}
        for i, c in u.items():
            for j, m in self.antipode[i].items():
                _tadd(out, j, c * m)
        return out

    def t2_mul(self, s: T2, t: T2) -> T2:
        out: T2 = {}
        for (a, b), c in s.items():
            for (d, f), m in t.items():
                cm = c * m
                for x, cx in self.mul[a][d].items():
                    for y, cy in self.mul[b][f].items():
                        _tadd(out, (x, y), cm * cx * cy)
        return out

    def check_axioms(self) -> list[CheckFailure]:
        failures = self.check_algebra()
        n = self.dim
        one = self.ring.one
        for i in range(n):
            label = self.labels[i]
            # coassociativity
            lhs: T3 = {}
            rhs: T3 = {}
            for j, k, c in self.comul[i]:
                for a, b, m in self.comul[j]:
                    _tadd(lhs, (a, b, k), c * m)
                for a, b, m in self.comul[k]:
                    _tadd(rhs, (j, a, b), c * m)
            if lhs != rhs:
                failures.append(CheckFailure("coassociativity", label))
            # counit laws
            left: Vec = {}
            right: Vec = {}
            for j, k, c in self.comul[i]:
                _tadd(left, k, c * self.counit[j])
                _tadd(right, j, c * self.counit[k])
            if not vec_eq(left, self.basis_vec(i)):
                failures.append(CheckFailure("left counit", label))
            if not vec_eq(right, self.basis_vec(i)):
                failures.append(CheckFailure("right counit", label))
            # antipode laws
            slhs: Vec = {}
            srhs: Vec = {}
            for j, k, c in self.comul[i]:
                for m, cm in self.mul_vec(self.antipode[j], {k: one}).items():
                    _tadd(slhs, m, c * cm)
                for m, cm in self.mul_vec({j: one}, self.antipode[k]).items():
                    _tadd(srhs, m, c * cm)
            target = vec_scale(self.unit, self.counit[i])
            if not vec_eq(slhs, target):
                failures.append(CheckFailure("left antipode law", label))
            if not vec_eq(srhs, target):
                failures.append(CheckFailure("right antipode law", label))
        # bialgebra compatibility
        unit_t2: T2 = self.comul_vec(self.unit)
        expect: T2 = {}
        for a, ca in self.unit.items():
            for b, cb in self.unit.items():
                _tadd(expect, (a, b), ca * cb)
        if unit_t2 != expect:
            failures.append(CheckFailure("coproduct of unit", "1"))
        if not (self.counit_vec(self.unit) - one).is_zero():
            failures.append(CheckFailure("counit of unit", "1"))
        for i in range(n):
            di = {(j, k): c for j, k, c in _merge_triples(self.comul[i])}
            for j in range(n):
                dj = {(a, b): c for a, b, c in _merge_triples(self.comul[j])}
                prod = self.mul[i][j]
                if self.comul_vec(prod) != self.t2_mul(di, dj):
                    failures.append(CheckFailure(
                        "coproduct is multiplicative",
                        f"({self.labels[i]}, {self.labels[j]})"))
                eps = self.counit_vec(prod) - self.counit[i] * self.counit[j]
                if not eps.is_zero():
                    failures.append(CheckFailure(
                        "counit is multiplicative",
                        f"({self.labels[i]}, {self.labels[j]})"))
        return failures

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mul[i][j] == self.mul[j][i]
                   for i in range(n) for j in range(i + 1, n))

    def is_cocommutative(self) -> bool:
        for i in range(self.dim):
            t = {(j, k): c for j, k, c in _merge_triples(self.comul[i])}
            flipped = {(k, j): c for (j, k), c in t.items()}
            if t != flipped:
                return False
        return True


def _merge_triples(triples) -> list[tuple[int, int, Scalar]]:
    acc: T2 = {}
    for j, k, c in triples:
        _tadd(acc, (j, k), c)
    return [(j, k, c) for (j, k), c in acc.items()]


# ---------------------------------------------------------------------------
# Group algebras and function algebras
# ---------------------------------------------------------------------------

def group_algebra(G: FiniteGroup, ring: Ring) -> StructHopf:
    one = ring.one
    n = G.order
    mul = tuple(tuple({G.mul(i, j): one} for j in range(n)) for i in range(n))
    comul = tuple(((i, i, one),) for i in range(n))
    return StructHopf(
        ring=ring, labels=G.labels, mul=mul, unit={G.identity: one},
        comul=comul, counit=tuple(one for _ in range(n)),
        antipode=tuple({G.inv(i): one} for i in range(n)))


def function_algebra(G: FiniteGroup, ring: Ring) -> StructHopf:
    one = ring.one
    n = G.order
    labels = tuple("d_" + lab for lab in G.labels)
    mul = tuple(tuple(({i: one} if i == j else {}) for j in range(n)) for i in range(n))
    comul = tuple(tuple((h, G.mul(G.inv(h), g), one) for h in range(n))
                  for g in range(n))
    counit = tuple(one if g == G.identity else ring.zero for g in range(n))
    return StructHopf(
        ring=ring, labels=labels, mul=mul, unit={i: one for i in range(n)},
        comul=comul, counit=counit,
        antipode=tuple({G.inv(i): one} for i in range(n)))


def dual_hopf(H: StructHopf) -> StructHopf:
    """The dual Hopf algebra on the dual basis.

    Products transpose the coproduct, coproducts transpose the product,
    the unit is the counit vector, the counit evaluates at the unit, and
    the antipode is the transposed antipode matrix.
    """
    n = H.dim
    ring = H.ring
    mul_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v: Vec = {}
            for k in range(n):
                for a, b, c in H.comul[k]:
                    if a == i and b == j:
                        _tadd(v, k, c)
            row.append(v)
        mul_rows.append(tuple(row))
    comul = []
    for k in range(n):
        triples = []
        for i in range(n):
            for j in range(n):
                c = H.mul[i][j].get(k)
                if c is not None:
                    triples.append((i, j, c))
        comul.append(tuple(triples))
    unit: Vec = {i: c for i, c in enumerate(H.counit) if not c.is_zero()}
    counit = tuple(H.unit.get(i, ring.zero) for i in range(n))
    antipode = []
    for i in range(n):
        v: Vec = {}
        for j in range(n):
            c = H.antipode[j].get(i)
            if c is not None:
                _tadd(v, j, c)
        antipode.append(v)
    return StructHopf(
        ring=ring, labels=tuple(lab + "^" for lab in H.labels),
        mul=tuple(mul_rows), unit=unit, comul=tuple(comul), counit=counit,
        antipode=tuple(antipode))


# ---------------------------------------------------------------------------
# Isomorphism checking
# ---------------------------------------------------------------------------

def structhopf_iso_check(src: StructHopf, dst: StructHopf,
                         matrix: Sequence[Vec]) -> list[CheckFailure]:
    """Verify that the linear map e_i -> matrix[i] is a Hopf isomorphism."""
    failures = []
    n = src.dim
    ring = src.ring
    if dst.dim != n:
        return [CheckFailure("dimension", f"{n} != {dst.dim}")]
    dense = [vec_dense(matrix[i], n, ring) for i in range(n)]
    if rank(dense, ring.zero, ring.one) != n:
        failures.append(CheckFailure("bijectivity", "matrix is singular"))

    def image(u: Vec) -> Vec:
        out: Vec = {}
        for i, c in u.items():
            for j, m in matrix[i].items():
                _tadd(out, j, c * m)
        return out

    if not vec_eq(image(src.unit), dst.unit):
        failures.append(CheckFailure("unit transport", "1"))
    for i in range(n):
        for j in range(n):
            lhs = image(src.mul[i][j])
            rhs = dst.mul_vec(matrix[i], matrix[j])
            if not vec_eq(lhs, rhs):
                failures.append(CheckFailure(
                    "product transport", f"({src.labels[i]}, {src.labels[j]})"))
    for i in range(n):
        lhs: T2 = {}
        for j, k, c in src.comul[i]:
            for a, ca in matrix[j].items():
                for b, cb in matrix[k].items():
                    _tadd(lhs, (a, b), c * ca * cb)
        if lhs != dst.comul_vec(matrix[i]):
            failures.append(CheckFailure("coproduct transport", src.labels[i]))
        if not (dst.counit_vec(matrix[i]) - src.counit[i]).is_zero():
            failures.append(CheckFailure("counit transport", src.labels[i]))
        if not vec_eq(image(src.antipode[i]), dst.antipode_vec(matrix[i])):
            failures.append(CheckFailure("antipode transport", src.labels[i]))
    return failures


def duality_omega(G: FiniteGroup, ring: Ring) -> list[CheckFailure]:
    """Check that delta-functions to dual-basis vectors is a Hopf isomorphism
    from the function algebra onto the dual of the group algebra."""
    fn = function_algebra(G, ring)
    dual = dual_hopf(group_algebra(G, ring))
    ident = [fn.basis_vec(i) for i in range(fn.dim)]
    return structhopf_iso_check(fn, dual, ident)


# ---------------------------------------------------------------------------
# Characters and Pontryagin duality
# ---------------------------------------------------------------------------

def character_ring(exponent: int) -> Ring:
    """A ring containing all roots of unity of order dividing the exponent."""
    if exponent <= 2:
        return ring_make("base=rationals; params=")
    return ring_make(f"base=cyclotomic:{exponent}; params=")


def _roots_of_unity(ring: Ring, order: int) -> list[Scalar]:
    if ring._q_power is None:
        if order == 1:
            return [ring.one]
        if order == 2:
            return [ring.one, -ring.one]
        raise ValueError("rational base only holds roots of unity of order <= 2")
    return [ring.q(j) for j in range(order)]


def _abelian_characters(G: FiniteGroup, ring: Ring) -> list[tuple[Scalar, ...]]:
    """All characters of an abelian group, as value tuples over the basis."""
    exp = G.exponent()
    roots = _roots_of_unity(ring, exp)
    results: list[tuple[Scalar, ...]] = []

    def extend(known: dict[int, Scalar]) -> None:
        if len(known) == G.order:
            results.append(tuple(known[i] for i in range(G.order)))
            return
        g = min(i for i in range(G.order) if i not in known)
        m, p = 1, g
        while p not in known:
            p = G.mul(p, g)
            m += 1
        target = known[p]
        for z in roots:
            if not (z ** m - target).is_zero():
                continue
            new = dict(known)
            zpow = ring.one
            for i in range(1, m):
                zpow = zpow * z
                for s, val in known.items():
                    new[G.mul(s, G.power(g, i))] = val * zpow
            extend(new)

    extend({G.identity: ring.one})
    if len(results) != G.order:
        raise AssertionError("character count mismatch for abelian group")
    return results


def characters(G: FiniteGroup, ring: Optional[Ring] = None) -> tuple[Ring, list[tuple[Scalar, ...]]]:
    """All one-dimensional characters of G (through its abelianization)."""
    comm = commutator_subgroup(G)
    Q, proj = quotient_group(G, comm)
    if ring is None:
        ring = character_ring(Q.exponent())
    qchars = _abelian_characters(Q, ring)
    return ring, [tuple(ch[proj[g]] for g in range(G.order)) for ch in qchars]


@dataclass(frozen=True)
class PontryaginReport:
    dual_group: FiniteGroup
    failures: list[CheckFailure]


def character_group(G: FiniteGroup, ring: Ring) -> tuple[FiniteGroup, list[tuple[Scalar, ...]]]:
    """The dual group of an abelian G: characters under pointwise product."""
    if not G.is_abelian():
        raise ValueError("character group requires an abelian group")
    chars = _abelian_characters(G, ring)
    index = {ch: i for i, ch in enumerate(chars)}
    labels = [f"chi{i}" for i in range(len(chars))]
    table = []
    for ch1 in chars:
        row = []
        for ch2 in chars:
            prod = tuple(a * b for a, b in zip(ch1, ch2))
            row.append(index[prod])
        table.append(row)
    return FiniteGroup.build(labels, table), chars


def pontryagin_check(G: FiniteGroup) -> PontryaginReport:
    """Verify duality for a finite abelian group: the dual group has the
    same order, double duality returns the original group, and the group
    algebra is isomorphic to the function algebra of the dual."""
    if not G.is_abelian():
        raise ValueError("Pontryagin duality requires an abelian group")
    ring = character_ring(G.exponent())
    dual, chars = character_group(G, ring)
    failures: list[CheckFailure] = []
    if dual.order != G.order:
        failures.append(CheckFailure("dual order", f"{dual.order} != {G.order}"))
    # double dual via evaluation
    ddual, dchars = character_group(dual, ring)
    seen = set()
    eval_index: dict[int, int] = {}
    for g in range(G.order):
        ev = tuple(chars[c][g] for c in range(dual.order))
        matches = [i for i, ch in enumerate(dchars) if ch == ev]
        if len(matches) != 1:
            failures.append(CheckFailure("double dual evaluation", G.labels[g]))
            continue
        eval_index[g] = matches[0]
        seen.add(matches[0])
    if len(seen) != G.order:
        failures.append(CheckFailure("double dual bijective", f"{len(seen)} images"))
    for g in range(G.order):
        for h in range(G.order):
            if ddual.mul(eval_index[g], eval_index[h]) != eval_index[G.mul(g, h)]:
                failures.append(CheckFailure(
                    "double dual homomorphism", f"({G.labels[g]}, {G.labels[h]})"))
    # Hopf isomorphism onto the function algebra of the dual
    ga = group_algebra(G, ring)
    fa = function_algebra(dual, ring)
    matrix = []
    for g in range(G.order):
        v: Vec = {}
        for c in range(dual.order):
            val = chars[c][g]
            if not val.is_zero():
                v[c] = val
        matrix.append(v)
    failures.extend(structhopf_iso_check(ga, fa, matrix))
    return PontryaginReport(dual_group=dual, failures=failures)


# ---------------------------------------------------------------------------
# Materializing presentations
# ---------------------------------------------------------------------------

def from_presentation(h: HopfAlgebra, expected_dim: int) -> StructHopf:
    """Materialize a finite-dimensional presented Hopf algebra into
    structure constants; every axiom is re-verified on the result."""
    A = h.algebra
    words = A.basis()
    if len(words) != expected_dim:
        raise ValueError(f"basis has {len(words)} words, expected {expected_dim}")
    index = {w: i for i, w in enumerate(words)}
    ring = A.ring
    free = A.free
    labels = tuple(free.word_str(w) for w in words)

    def to_vec(poly) -> Vec:
        return {index[w]: c for w, c in poly.terms.items()}

    mul = tuple(
        tuple({index[w]: c for w, c in A.rws._word_nf(wi + wj).items()}
              for wj in words)
        for wi in words)
    comul = []
    for w in words:
        triples = []
        for (w1, w2), c in h.delta_word(w).terms.items():
            triples.append((index[w1], index[w2], c))
        comul.append(tuple(triples))
    counit = tuple(h.counit_word(w) for w in words)
    antipode = tuple(to_vec(h.antipode_word(w)) for w in words)
    out = StructHopf(
        ring=ring, labels=labels, mul=mul, unit={index[()]: ring.one},
        comul=tuple(comul), counit=counit, antipode=antipode)
    failures = out.check_axioms()
    if failures:
        raise ValueError("materialized structure fails axioms: "
                         + "; ".join(map(str, failures)))
    return out


# ---------------------------------------------------------------------------
# Group-like elements
# ---------------------------------------------------------------------------

def _diagonal_group(H: StructHopf) -> Optional[FiniteGroup]:
    """Recover the group from a function-algebra-shaped StructHopf."""
    n = H.dim
    one = H.ring.one
    for i in range(n):
        for j in range(n):
            expect = {i: one} if i == j else {}
            if H.mul[i][j] != expect:
                return None
    if H.unit != {i: one for i in range(n)}:
        return None
    table = [[None] * n for _ in range(n)]
    for g in range(n):
        for j, k, c in _merge_triples(H.comul[g]):
            if not (c - one).is_zero():
                return None
            if table[j][k] is not None:
                return None
            table[j][k] = g
    if any(v is None for row in table for v in row):
        return None
    try:
        return FiniteGroup.build(H.labels, [[int(v) for v in row] for row in table])
    except ValueError:
        return None


def grouplikes(H: StructHopf, candidates: Optional[list[Vec]] = None) -> list[Vec]:
    """Verified group-like elements among the candidates.

    Default candidates are the basis vectors; when the product is
    diagonal (a function algebra on a recoverable group), the character
    vectors are candidates too, which makes the list complete there.
    """
    if candidates is None:
        candidates = [H.basis_vec(i) for i in range(H.dim)]
        G = _diagonal_group(H)
        if G is not None and _ring_has_roots(H.ring, G):
            _, chars = characters(G, H.ring)
            for ch in chars:
                candidates.append({i: v for i, v in enumerate(ch) if not v.is_zero()})
    found = []
    for v in candidates:
        if not v:
            continue
        t2 = H.comul_vec(v)
        expect: T2 = {}
        for a, ca in v.items():
            for b, cb in v.items():
                _tadd(expect, (a, b), ca * cb)
        if t2 != expect:
            continue
        if not (H.counit_vec(v) - H.ring.one).is_zero():
            continue
        if v not in found:
            found.append(v)
    return found


def _ring_has_roots(ring: Ring, G: FiniteGroup) -> bool:
    comm = commutator_subgroup(G)
    Q, _ = quotient_group(G, comm)
    exp = Q.exponent()
    if exp <= 2:
        return ring._q_power is None and ring.spec.base == "rationals"
    return ring.spec.base == f"cyclotomic:{exp}"


def grouplike_group(H: StructHopf, vecs: list[Vec]) -> FiniteGroup:
    """Build the group formed by verified group-likes; raises if the set
    is not closed under products and inverses."""
    def find(v: Vec) -> int:
        for i, w in enumerate(vecs):
            if vec_eq(v, w):
                return i
        raise ValueError(f"group-likes not closed: {H.vec_str(v)} missing")
    labels = [f"gl{i}" for i in range(len(vecs))]
    table = [[find(H.mul_vec(a, b)) for b in vecs] for a in vecs]
    return FiniteGroup.build(labels, table)


class AlgElem:
    """An element of a StructAlgebra wrapped for generic ring arithmetic
    (so determinant routines can run over a commutative base algebra)."""

    __slots__ = ("alg", "vec")

    def __init__(self, alg: StructAlgebra, vec: Vec):
        self.alg = alg
        self.vec = vec

    def is_zero(self) -> bool:
        return not self.vec

    def __bool__(self):
        return bool(self.vec)

    def __eq__(self, other):
        return (isinstance(other, AlgElem) and self.alg == other.alg
                and vec_eq(self.vec, other.vec))

    def __add__(self, other):
        return AlgElem(self.alg, vec_add(self.vec, other.vec))

    def __sub__(self, other):
        return AlgElem(self.alg, vec_sub(self.vec, other.vec))

    def __neg__(self):
        return AlgElem(self.alg, {i: -c for i, c in self.vec.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return AlgElem(self.alg, self.alg.mul_vec(self.vec, other.vec))
        if isinstance(other, Scalar):
            return AlgElem(self.alg, vec_scale(self.vec, other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return AlgElem(self.alg, vec_scale(self.vec, other))
        return NotImplemented

    def __repr__(self):
        return f"AlgElem({self.alg.vec_str(self.vec)})"
