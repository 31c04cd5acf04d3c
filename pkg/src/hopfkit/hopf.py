"""Hopf structure on presented algebras.

A :class:`HopfAlgebra` wraps a :class:`~hopfkit.ncalg.PresentedAlgebra` with
the coproduct, counit, and antipode given on generators.  The coproduct and
counit extend as algebra morphisms, the antipode as an anti-morphism; all
three extensions are memoized per normal-form word.

:class:`TensorElem` holds elements of n-fold tensor products of presented
algebras as sparse maps from word tuples to Scalars, every leg kept in
normal form.

Axiom checking (:meth:`HopfAlgebra.check_axioms`) verifies, exactly:

* well-definedness: each structure map respects every rewrite rule;
* coassociativity, the counit laws, and the antipode laws on generators;
* the same three families on a seeded sample of higher-degree monomials.

Generator checks propagate: coassociativity and the counit laws extend to
products because both sides are algebra morphisms, and the antipode law
extends because the convolution inverse property is multiplicative once the
inner Sweedler sum collapses to a scalar.  The random monomials guard the
implementation rather than the mathematics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .ncalg import FreeAlgebra, NcPoly, PresentedAlgebra, parse_nc
from .scalar import Ring, Scalar

__all__ = [
    "TensorElem",
    "HopfAlgebra",
    "CheckFailure",
    "convolve",
    "is_grouplike",
    "grouplike_closure_check",
    "check_algebra_morphism",
    "check_hopf_morphism",
    "check_matrix_rep",
    "rep_word",
    "kron",
    "dual_pairing_check",
]


Word = tuple[int, ...]


class TensorElem:
    """An element of a tensor product of presented algebras.

    ``terms`` maps tuples of normal-form words (one per leg) to nonzero
    Scalars.  Use :meth:`make` to build from unreduced data.
    """

    __slots__ = ("algs", "terms")

    def __init__(self, algs: tuple[PresentedAlgebra, ...], terms: dict):
        self.algs = algs
        self.terms = terms

    @classmethod
    def make(cls, algs: Sequence[PresentedAlgebra], raw: Mapping) -> "TensorElem":
        algs = tuple(algs)
        out: dict = {}
        for key, c in raw.items():
            if not c:
                continue
            expanded = [((), c)]
            for leg, w in enumerate(key):
                nf = algs[leg].rws._word_nf(w)
                expanded = [(k + (w2,), cc * c2)
                            for k, cc in expanded for w2, c2 in nf.items() if cc * c2]
            for k, cc in expanded:
                s = out.get(k)
                v = cc if s is None else s + cc
                if v:
                    out[k] = v
                elif s is not None:
                    del out[k]
        return cls(algs, out)

    @classmethod
    def zero(cls, algs: Sequence[PresentedAlgebra]) -> "TensorElem":
        return cls(tuple(algs), {})

    @classmethod
    def unit(cls, algs: Sequence[PresentedAlgebra]) -> "TensorElem":
        algs = tuple(algs)
        return cls(algs, {((),) * len(algs): algs[0].ring.one})

    @classmethod
    def of(cls, algs: Sequence[PresentedAlgebra], *factors: NcPoly) -> "TensorElem":
        """The elementary tensor f1 (x) f2 (x) ... of poly factors."""
        algs = tuple(algs)
        if len(algs) != len(factors):
            raise ValueError("one factor per leg")
        terms: dict = {(): algs[0].ring.one}
        for f in factors:
            new: dict = {}
            for key, c in terms.items():
                for w, cw in f.terms.items():
                    v = c * cw
                    if not v:
                        continue
                    k = key + (w,)
                    s = new.get(k)
                    v = v if s is None else s + v
                    if v:
                        new[k] = v
                    elif s is not None:
                        del new[k]
            terms = new
        return cls.make(algs, terms)

    @property
    def ring(self) -> Ring:
        return self.algs[0].ring

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self.algs == other.algs and self.terms == other.terms

    def __hash__(self):
        return hash((self.algs, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            v = c if s is None else s + c
            if v:
                out[k] = v
            elif s is not None:
                del out[k]
        return TensorElem(self.algs, out)

    def __neg__(self):
        return TensorElem(self.algs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TensorElem":
        if not isinstance(c, Scalar):
            c = self.ring.scalar(c)
        if not c:
            return TensorElem(self.algs, {})
        out = {}
        for k, x in self.terms.items():
            v = c * x
            if v:
                out[k] = v
        return TensorElem(self.algs, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, TensorElem):
            return NotImplemented
        if self.algs != other.algs:
            raise ValueError("tensor factors do not match")
        raw: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                s = raw.get(k)
                v = c if s is None else s + c
                if v:
                    raw[k] = v
                elif s is not None:
                    del raw[k]
        return TensorElem.make(self.algs, raw)

    __rmul__ = scale

    def apply(self, leg: int, f: Callable[[Word], NcPoly],
              target: PresentedAlgebra | None = None) -> "TensorElem":
        """Apply a linear map (given on normal-form words) to one leg."""
        algs = list(self.algs)
        algs[leg] = target if target is not None else self.algs[leg]
        raw: dict = {}
        for key, c in self.terms.items():
            img = f(key[leg])
            for w, cw in img.terms.items():
                k = key[:leg] + (w,) + key[leg + 1:]
                v = c * cw
                s = raw.get(k)
                v = v if s is None else s + v
                if v:
                    raw[k] = v
                elif s is not None:
                    del raw[k]
        return TensorElem.make(tuple(algs), raw)

    def splice(self, leg: int, f: Callable[[Word], "TensorElem"]) -> "TensorElem":
        """Replace one leg by a two-leg tensor image (comultiply that leg)."""
        out_algs = None
        raw: dict = {}
        for key, c in self.terms.items():
            img = f(key[leg])
            if out_algs is None:
                out_algs = self.algs[:leg] + img.algs + self.algs[leg + 1:]
            for ikey, ic in img.terms.items():
                k = key[:leg] + ikey + key[leg + 1:]
                v = c * ic
                s = raw.get(k)
                v = v if s is None else s + v
                if v:
                    raw[k] = v
                elif s is not None:
                    del raw[k]
        if out_algs is None:
            # no terms: infer legs by probing the map with the empty word
            img = f(())
            out_algs = self.algs[:leg] + img.algs + self.algs[leg + 1:]
        return TensorElem(tuple(out_algs), raw)

    def contract(self, leg: int, f: Callable[[Word], Scalar]) -> "TensorElem":
        """Apply a scalar-valued map to one leg and drop it."""
        algs = self.algs[:leg] + self.algs[leg + 1:]
        raw: dict = {}
        for key, c in self.terms.items():
            v = c * f(key[leg])
            if not v:
                continue
            k = key[:leg] + key[leg + 1:]
            s = raw.get(k)
            v = v if s is None else s + v
            if v:
                raw[k] = v
            elif s is not None:
                del raw[k]
        return TensorElem(algs, raw)

    def multiply_legs(self) -> NcPoly:
        """Multiply all legs together inside the (shared) algebra."""
        alg = self.algs[0]
        acc = alg.free.zero
        for key, c in self.terms.items():
            word_poly = alg.free.one
            for w in key:
                word_poly = word_poly * alg.free.from_word(w)
            acc = acc + c * word_poly
        return alg.nf(acc)

    def flip(self) -> "TensorElem":
        """Swap the two legs of a two-leg tensor."""
        if len(self.algs) != 2:
            raise ValueError("flip needs exactly two legs")
        return TensorElem((self.algs[1], self.algs[0]),
                          {(k[1], k[0]): c for k, c in self.terms.items()})

    def __repr__(self):
        return f"TensorElem({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        keys = sorted(self.terms, key=lambda k: tuple(
            alg.free.word_key(w) for alg, w in zip(self.algs, k)))
        for key in keys:
            c = self.terms[key]
            ws = " (x) ".join(alg.free.word_str(w) for alg, w in zip(self.algs, key))
            cs = str(c)
            if cs == "1":
                body = ws
            elif cs == "-1":
                body = f"-{ws}"
            else:
                body = (cs if _plain(cs) else f"({cs})") + "*" + ws
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)


def _plain(s: str) -> bool:
    return all(ch not in s for ch in " +-/(")


@dataclass(frozen=True)
class CheckFailure:
    """One failed identity: which check, and a printable witness."""

    check: str
    witness: str

    def __str__(self):
        return f"{self.check}: {self.witness}"


class HopfAlgebra:
    """A presented algebra with Hopf structure maps given on generators."""

    def __init__(self, algebra: PresentedAlgebra,
                 coproduct: Mapping[str, object],
                 counit: Mapping[str, object],
                 antipode: Mapping[str, object],
                 name: str = ""):
        self.algebra = algebra
        self.name = name or algebra.name
        free = algebra.free
        ring = algebra.ring
        self.pair = (algebra, algebra)
        self._delta_gen: dict[int, TensorElem] = {}
        self._eps_gen: dict[int, Scalar] = {}
        self._s_gen: dict[int, NcPoly] = {}
        for gname in free.names:
            gi = free.index[gname]
            dval = coproduct[gname]
            if isinstance(dval, TensorElem):
                tens = dval
            else:
                tens = TensorElem.zero(self.pair)
                for left, right in dval:
                    tens = tens + TensorElem.of(
                        self.pair, self._as_poly(left), self._as_poly(right))
            self._delta_gen[gi] = tens
            e = counit[gname]
            self._eps_gen[gi] = e if isinstance(e, Scalar) else ring.scalar(e)
            s = antipode[gname]
            self._s_gen[gi] = algebra.nf(self._as_poly(s))
        self._delta_cache: dict[Word, TensorElem] = {(): TensorElem.unit(self.pair)}
        self._eps_cache: dict[Word, Scalar] = {(): ring.one}
        self._s_cache: dict[Word, NcPoly] = {(): free.one}

    def _as_poly(self, v) -> NcPoly:
        if isinstance(v, NcPoly):
            return v
        if isinstance(v, str):
            return parse_nc(v, self.algebra.free)
        return self.algebra.free.scalar_poly(v)

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    @property
    def free(self) -> FreeAlgebra:
        return self.algebra.free

    def __repr__(self):
        return f"HopfAlgebra({self.name or self.free!r})"

    # -- structure maps -----------------------------------------------------

    def delta_word(self, w: Word) -> TensorElem:
        cached = self._delta_cache.get(w)
        if cached is not None:
            return cached
        # build left to right so prefixes populate the cache
        acc = self._delta_cache[()]
        for i, g in enumerate(w):
            pref = w[:i + 1]
            nxt = self._delta_cache.get(pref)
            if nxt is None:
                nxt = acc * self._delta_gen[g]
                self._delta_cache[pref] = nxt
            acc = nxt
        return acc

    def delta(self, x: NcPoly) -> TensorElem:
        x = self.algebra.nf(x)
        out = TensorElem.zero(self.pair)
        for w, c in x.terms.items():
            out = out + self.delta_word(w).scale(c)
        return out

    def counit_word(self, w: Word) -> Scalar:
        cached = self._eps_cache.get(w)
        if cached is not None:
            return cached
        acc = self.ring.one
        for g in w:
            acc = acc * self._eps_gen[g]
        self._eps_cache[w] = acc
        return acc

    def counit(self, x: NcPoly) -> Scalar:
        x = self.algebra.nf(x)
        acc = self.ring.zero
        for w, c in x.terms.items():
            acc = acc + c * self.counit_word(w)
        return acc

    def antipode_word(self, w: Word) -> NcPoly:
        cached = self._s_cache.get(w)
        if cached is not None:
            return cached
        acc = self.free.one
        for g in w:  # S(g1...gk) = S(gk) ... S(g1): multiply on the left
            acc = self.algebra.nf(self._s_gen[g] * acc)
        self._s_cache[w] = acc
        return acc

    def antipode(self, x: NcPoly) -> NcPoly:
        x = self.algebra.nf(x)
        acc = self.free.zero
        for w, c in x.terms.items():
            acc = acc + c * self.antipode_word(w)
        return self.algebra.nf(acc)

    def delta_n(self, x: NcPoly, legs: int) -> TensorElem:
        """Iterated coproduct into the given number of legs (>= 1)."""
        if legs < 1:
            raise ValueError("need at least one leg")
        if legs == 1:
            return TensorElem.make((self.algebra,), {(w,): c for w, c
                                                     in self.algebra.nf(x).terms.items()})
        out = self.delta(x)
        for _ in range(legs - 2):
            out = out.splice(len(out.algs) - 1, self.delta_word)
        return out

    # -- axiom checking -----------------------------------------------------

    def check_axioms(self, spot_degree: int = 5, spot_count: int = 100,
                     seed: int = 0) -> list[CheckFailure]:
        """All finitely checkable Hopf axioms; empty list means pass."""
        failures = []
        free = self.free
        ring = self.ring
        pair = self.pair

        def word_poly(w):
            return free.from_word(w)

        # (i) the structure maps respect every rewrite rule
        for lhs, rhs in self.algebra.rws.rules:
            lp, rp = word_poly(lhs), rhs
            dl = (self._delta_raw(lp), self._delta_raw(rp))
            if dl[0] != dl[1]:
                failures.append(CheckFailure(
                    "coproduct well-defined",
                    f"{free.word_str(lhs)}: {dl[0] - dl[1]}"))
            el = self._counit_raw(lp)
            er = self._counit_raw(rp)
            if el != er:
                failures.append(CheckFailure(
                    "counit well-defined", f"{free.word_str(lhs)}: {el - er}"))
            sl = self._antipode_raw(lp)
            sr = self._antipode_raw(rp)
            if sl != sr:
                failures.append(CheckFailure(
                    "antipode well-defined",
                    f"{free.word_str(lhs)}: {sl - sr}"))

        # (ii)-(iv) on generators, then on sampled monomials
        words: list[Word] = [(g,) for g in range(len(free.names))]
        rng = random.Random(seed)
        for _ in range(spot_count):
            length = rng.randint(2, max(2, spot_degree))
            words.append(tuple(rng.randrange(len(free.names))
                               for _ in range(length)))
        for w in words:
            x = self.algebra.nf(word_poly(w))
            ws = free.word_str(w)
            d = self.delta(x)
            left = d.splice(0, self.delta_word)
            right = d.splice(1, self.delta_word)
            if left != right:
                failures.append(CheckFailure(
                    "coassociativity", f"{ws}: {left - right}"))
            lcounit = d.contract(0, self.counit_word)
            rcounit = d.contract(1, self.counit_word)
            xt = TensorElem.make((self.algebra,), {(u,): c for u, c in x.terms.items()})
            if lcounit != xt:
                failures.append(CheckFailure(
                    "left counit law", f"{ws}: {lcounit - xt}"))
            if rcounit != xt:
                failures.append(CheckFailure(
                    "right counit law", f"{ws}: {rcounit - xt}"))
            target = free.scalar_poly(self.counit(x))
            sleft = d.apply(0, self.antipode_word).multiply_legs()
            if sleft != target:
                failures.append(CheckFailure(
                    "left antipode law", f"{ws}: {sleft - target}"))
            sright = d.apply(1, self.antipode_word).multiply_legs()
            if sright != target:
                failures.append(CheckFailure(
                    "right antipode law", f"{ws}: {sright - target}"))
        return failures

    # raw extensions evaluate on free words without pre-reducing, so that
    # well-definedness comparisons are meaningful
    def _delta_raw(self, p: NcPoly) -> TensorElem:
        out = TensorElem.zero(self.pair)
        for w, c in p.terms.items():
            acc = TensorElem.unit(self.pair)
            for g in w:
                acc = acc * self._delta_gen[g]
            out = out + acc.scale(c)
        return out

    def _counit_raw(self, p: NcPoly) -> Scalar:
        acc = self.ring.zero
        for w, c in p.terms.items():
            t = self.ring.one
            for g in w:
                t = t * self._eps_gen[g]
            acc = acc + c * t
        return acc

    def _antipode_raw(self, p: NcPoly) -> NcPoly:
        acc = self.free.zero
        for w, c in p.terms.items():
            t = self.free.one
            for g in w:
                t = self.algebra.nf(self._s_gen[g] * t)
            acc = acc + c * t
        return self.algebra.nf(acc)


# ---------------------------------------------------------------------------
# Convolution and group-likes
# ---------------------------------------------------------------------------

def convolve(h: HopfAlgebra, f: Mapping[Word, NcPoly],
             g: Mapping[Word, NcPoly]) -> dict[Word, NcPoly]:
    """Convolution product of two linear maps given by word tables.

    The result is defined on f's domain; any coproduct leg outside a table
    is a hard error, not a silent zero.
    """
    out: dict[Word, NcPoly] = {}
    for w in f:
        d = h.delta_word(w)
        acc = h.free.zero
        for (w1, w2), c in d.terms.items():
            if w1 not in f:
                raise KeyError(f"convolution table missing {h.free.word_str(w1)}")
            if w2 not in g:
                raise KeyError(f"convolution table missing {h.free.word_str(w2)}")
            acc = acc + c * (f[w1] * g[w2])
        out[w] = h.algebra.nf(acc)
    return out


def is_grouplike(h: HopfAlgebra, x: NcPoly) -> bool:
    x = h.algebra.nf(x)
    if h.counit(x) != h.ring.one:
        return False
    raw = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in x.terms.items():
            c = c1 * c2
            if c:
                raw[(w1, w2)] = c
    return h.delta(x) == TensorElem.make(h.pair, raw)


def grouplike_closure_check(h: HopfAlgebra, elems: Sequence[NcPoly]) -> list[CheckFailure]:
    """Each element group-like; products and antipodes stay in the list."""

    def key(p: NcPoly):
        return frozenset(p.terms.items())

    failures = []
    normed = [h.algebra.nf(x) for x in elems]
    index = {key(x): i for i, x in enumerate(normed)}
    for i, x in enumerate(normed):
        if not is_grouplike(h, x):
            failures.append(CheckFailure("group-like", f"element {i}: {x}"))
    for i, x in enumerate(normed):
        for j, y in enumerate(normed):
            p = h.algebra.nf(x * y)
            if key(p) not in index:
                failures.append(CheckFailure(
                    "group-like closure", f"product {i}*{j} = {p} not in list"))
        s = h.antipode(x)
        if key(s) not in index:
            failures.append(CheckFailure(
                "group-like inverses", f"antipode of {x} = {s} not in list"))
    return failures


# ---------------------------------------------------------------------------
# Morphisms and representations
# ---------------------------------------------------------------------------

def _extend_map(images: Mapping[str, NcPoly], src_free: FreeAlgebra,
                dst: PresentedAlgebra) -> Callable[[NcPoly], NcPoly]:
    imgs = {src_free.index[n]: dst.nf(p) for n, p in images.items()}

    def phi(p: NcPoly) -> NcPoly:
        acc = dst.free.zero
        for w, c in p.terms.items():
            t = dst.free.one
            for g in w:
                t = dst.nf(t * imgs[g])
            acc = acc + c * t
        return dst.nf(acc)

    return phi


def check_algebra_morphism(src: PresentedAlgebra, dst: PresentedAlgebra,
                           images: Mapping[str, NcPoly]) -> list[CheckFailure]:
    """The generator assignment kills every defining relation of src."""
    phi = _extend_map(images, src.free, dst)
    failures = []
    for lhs, rhs in src.rws.rules:
        diff = phi(src.free.from_word(lhs)) - phi(rhs)
        if not diff.is_zero():
            failures.append(CheckFailure(
                "algebra morphism", f"{src.free.word_str(lhs)}: image residual {diff}"))
    return failures


def check_hopf_morphism(src: HopfAlgebra, dst: HopfAlgebra,
                        images: Mapping[str, NcPoly]) -> list[CheckFailure]:
    """Algebra morphism + compatibility with coproduct, counit, antipode."""
    failures = check_algebra_morphism(src.algebra, dst.algebra, images)
    phi = _extend_map(images, src.free, dst.algebra)

    def phi_word(w: Word) -> NcPoly:
        return phi(src.free.from_word(w))

    for name in src.free.names:
        g = src.free.gen(name)
        lhs = dst.delta(phi(g))
        rhs = src.delta(g).apply(0, phi_word, dst.algebra).apply(1, phi_word, dst.algebra)
        if lhs != rhs:
            failures.append(CheckFailure(
                "coproduct compatibility", f"{name}: {lhs - rhs}"))
        if dst.counit(phi(g)) != src.counit(g):
            failures.append(CheckFailure("counit compatibility", name))
        if dst.antipode(phi(g)) != phi(src.antipode(g)):
            failures.append(CheckFailure("antipode compatibility", name))
    return failures


def rep_word(rep: Mapping[int, Sequence[Sequence[Scalar]]], w: Word,
             ring: Ring, size: int):
    """Evaluate a matrix representation on a word (identity on the empty one)."""
    from .linalg import mat_identity, mat_mul
    acc = mat_identity(size, ring.zero, ring.one)
    for g in w:
        acc = mat_mul(acc, rep[g], ring.zero)
    return acc


def check_matrix_rep(alg: PresentedAlgebra,
                     rep: Mapping[str, Sequence[Sequence[Scalar]]]) -> list[CheckFailure]:
    """The generator matrices satisfy every defining relation."""
    from .linalg import mat_identity
    ring = alg.ring
    size = len(next(iter(rep.values())))
    by_idx = {alg.free.index[n]: [list(r) for r in m] for n, m in rep.items()}
    failures = []
    for lhs, rhs in alg.rws.rules:
        left = rep_word(by_idx, lhs, ring, size)
        right = [[ring.zero] * size for _ in range(size)]
        for w, c in rhs.terms.items():
            m = rep_word(by_idx, w, ring, size)
            right = [[a + c * b for a, b in zip(ra, rb)]
                     for ra, rb in zip(right, m)]
        if left != right:
            failures.append(CheckFailure(
                "matrix representation",
                f"{alg.free.word_str(lhs)}: matrices differ"))
    return failures


def kron(A, B, ring: Ring):
    """Kronecker product of two matrices over a ring."""
    n, m = len(A), len(A[0])
    p, q = len(B), len(B[0])
    out = [[ring.zero] * (m * q) for _ in range(n * p)]
    for i in range(n):
        for j in range(m):
            a = A[i][j]
            if not a:
                continue
            for k in range(p):
                for l in range(q):
                    v = a * B[k][l]
                    if v:
                        out[i * p + k][j * q + l] = v
    return out


def dual_pairing_check(h: HopfAlgebra, u: HopfAlgebra,
                       rep: Mapping[str, Sequence[Sequence[Scalar]]],
                       entry: Mapping[str, tuple[int, int]],
                       max_len: int = 3) -> list[CheckFailure]:
    """Pair a matrix Hopf algebra h against u via matrix coefficients.

    Each generator x of h names the (i, j) matrix coefficient of the
    representation ``rep`` of u: <x, v> = rep(v)[i][j] for words v in u.
    Checks, over all u-words up to ``max_len``:

    * multiplicativity: <x, vw> equals the coproduct of x paired leg by leg
      (so the coproduct of h is forced by matrix multiplication);
    * the functional product: the engine's coproduct on u matched against
      the independent Kronecker oracle (rep (x) rep)(delta(v)) computed by
      4x4 matrix products of the generator images;
    * relations: every defining relation of h vanishes as a functional;
    * counits: <x, 1> = eps_h(x) and the empty h-word pairs by eps_u;
    * antipodes: <S_h(x), v> = <x, S_u(v)>.
    """
    ring = u.ring
    size = len(next(iter(rep.values())))
    rep_idx = {u.free.index[n]: [list(r) for r in m] for n, m in rep.items()}
    failures = []

    uwords: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_len):
        frontier = [w + (g,) for w in frontier for g in range(len(u.free.names))]
        uwords.extend(frontier)

    def rho(w: Word):
        return rep_word(rep_idx, w, ring, size)

    def pair_gen_word(xname: str, w: Word) -> Scalar:
        i, j = entry[xname]
        return rho(w)[i][j]

    def pair_poly_word(p: NcPoly, w: Word) -> Scalar:
        """<p, w> for p an h-element, extended by the convolution product."""
        acc = ring.zero
        m = rho(w)
        for hw, c in p.terms.items():
            # a product of h-generators pairs via the iterated u-coproduct;
            # matrix coefficients turn that into an entry of rho tensored
            # with itself, i.e. an entry of a product of rho matrices --
            # but only through delta_u; compute through delta_u directly
            acc = acc + c * _pair_word_word(hw, w)
        return acc

    def _pair_word_word(hw: Word, w: Word) -> Scalar:
        if not hw:
            return u.counit(u.free.from_word(w))
        if len(hw) == 1:
            return pair_gen_word(h.free.names[hw[0]], w)
        d = u.delta_n(u.free.from_word(w), len(hw))
        acc = ring.zero
        for key, c in d.terms.items():
            t = c
            for hg, leg in zip(hw, key):
                t = t * pair_gen_word(h.free.names[hg], leg)
                if not t:
                    break
            acc = acc + t
        return acc

    # Kronecker oracle: (rep (x) rep) of delta_u(generator), frozen matrices,
    # extended to words by products of size^2 x size^2 matrices
    kron_gen: dict[int, list[list[Scalar]]] = {}
    for name in u.free.names:
        d = u._delta_gen[u.free.index[name]]
        acc = [[ring.zero] * (size * size) for _ in range(size * size)]
        for (w1, w2), c in d.terms.items():
            m = kron(rho(w1), rho(w2), ring)
            acc = [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(acc, m)]
        kron_gen[u.free.index[name]] = acc

    def kron_word(w: Word):
        return rep_word(kron_gen, w, ring, size * size)

    for w in uwords:
        big = kron_word(w)
        d = u.delta(u.free.from_word(w))
        for xn in entry:
            for yn in entry:
                xi, xj = entry[xn]
                yi, yj = entry[yn]
                oracle = big[xi * size + yi][xj * size + yj]
                engine = ring.zero
                for (w1, w2), c in d.terms.items():
                    engine = engine + c * pair_gen_word(xn, w1) * pair_gen_word(yn, w2)
                if engine != oracle:
                    failures.append(CheckFailure(
                        "pairing oracle",
                        f"<{xn}*{yn}, {u.free.word_str(w)}>: engine {engine} "
                        f"vs Kronecker {oracle}"))

    # relations of h vanish as functionals
    for lhs, rhs in h.algebra.rws.rules:
        diff = h.free.from_word(lhs) - rhs
        for w in uwords:
            v = pair_poly_word(diff, w)
            if v:
                failures.append(CheckFailure(
                    "pairing kills relations",
                    f"<{h.free.word_str(lhs)} - ..., {u.free.word_str(w)}> = {v}"))
                break

    # comultiplicativity of the h-coproduct against multiplication in u
    for xn in entry:
        x = h.free.gen(xn)
        dx = h.delta(x)
        for w1 in uwords:
            if len(w1) > 2:
                continue
            for w2 in uwords:
                if len(w2) > 2:
                    continue
                lhs = pair_gen_word(xn, w1 + w2)
                rhs = ring.zero
                for (x1, x2), c in dx.terms.items():
                    rhs = rhs + c * _pair_word_word(x1, w1) * _pair_word_word(x2, w2)
                if lhs != rhs:
                    failures.append(CheckFailure(
                        "pairing comultiplicativity",
                        f"{xn} on {u.free.word_str(w1)}, {u.free.word_str(w2)}"))

    # counit and antipode compatibility
    for xn in entry:
        i, j = entry[xn]
        eps = h.counit(h.free.gen(xn))
        expected = ring.one if i == j else ring.zero
        if eps != expected:
            failures.append(CheckFailure("pairing counit", xn))
        sx = h.antipode(h.free.gen(xn))
        for w in uwords:
            lhs = pair_poly_word(sx, w)
            su = u.antipode(u.free.from_word(w))
            acc = ring.zero
            for ww, c in su.terms.items():
                acc = acc + c * pair_gen_word(xn, ww)
            if lhs != acc:
                failures.append(CheckFailure(
                    "pairing antipode",
                    f"<S({xn}), {u.free.word_str(w)}> != <{xn}, S(word)>"))
                break
    return failures
