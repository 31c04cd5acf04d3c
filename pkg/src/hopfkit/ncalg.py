"""Noncommutative polynomials, rewriting systems, and the relation grammar.

Words in the free algebra are tuples of generator indices.  The monomial
order is weighted degree-lexicographic: total generator weight first, then
the index tuple lexicographically (earlier generators are smaller).  All
weights are positive, so the order is compatible with concatenation and
well-founded.

A :class:`RewriteSystem` holds oriented relations lhs -> rhs where every
monomial of rhs is strictly smaller than lhs.  That invariant is checked at
construction and makes rewriting terminate unconditionally; confluence is a
separate, checkable property (:meth:`RewriteSystem.overlap_report` returns
the critical pairs that fail to resolve, and an empty report certifies
confluence by Newman's lemma).  Normal forms use the leftmost match with the
earliest rule, so they are deterministic even on non-confluent systems.

The relation grammar accepted by :func:`parse_nc` covers identifiers,
integer and fraction literals, ``+ - * /``, juxtaposition as multiplication,
``^`` with an integer (possibly negative) exponent, and parentheses.
Identifiers resolve to generators first, then ring parameters, then ``q``.
``/`` and negative powers apply to scalar-valued subexpressions only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalar import Ring, Scalar

__all__ = [
    "FreeAlgebra",
    "NcPoly",
    "RewriteSystem",
    "PresentedAlgebra",
    "CriticalPair",
    "parse_nc",
]


class FreeAlgebra:
    """A free associative algebra on named generators over a :class:`Ring`.

    Generator order is precedence: earlier names are smaller in the monomial
    order.  ``weights`` assigns each generator a positive integer weight for
    the degree part of the order (default 1 each).
    """

    def __init__(self, ring: Ring, names: Sequence[str],
                 weights: Sequence[int] | None = None):
        self.ring = ring
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        clash = set(self.names) & set(ring.params)
        if clash:
            raise ValueError(f"generator names shadow ring parameters: {clash}")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)
        if len(self.weights) != len(self.names) or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive, one per generator")
        self.zero = NcPoly(self, {})
        self.one = NcPoly(self, {(): ring.one})

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra)
                and self.ring == other.ring
                and self.names == other.names
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.ring, self.names, self.weights))

    def __repr__(self):
        return f"FreeAlgebra({', '.join(self.names)})"

    def gen(self, name: str) -> "NcPoly":
        return NcPoly(self, {(self.index[name],): self.ring.one})

    def gens(self) -> list["NcPoly"]:
        return [self.gen(n) for n in self.names]

    def word(self, *names: str) -> tuple[int, ...]:
        return tuple(self.index[n] for n in names)

    def from_word(self, word: tuple[int, ...], coeff=1) -> "NcPoly":
        c = coeff if isinstance(coeff, Scalar) else self.ring.scalar(coeff)
        return NcPoly(self, {word: c} if c else {})

    def scalar_poly(self, value) -> "NcPoly":
        c = value if isinstance(value, Scalar) else self.ring.scalar(value)
        return NcPoly(self, {(): c} if c else {})

    def word_weight(self, word: tuple[int, ...]) -> int:
        w = self.weights
        return sum(w[g] for g in word)

    def word_key(self, word: tuple[int, ...]):
        return (self.word_weight(word), word)

    def word_str(self, word: tuple[int, ...]) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.names[word[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def parse(self, text: str) -> "NcPoly":
        return parse_nc(text, self)


class NcPoly:
    """A finitely supported map from words to nonzero Scalars.

    Immutable by convention.  Addition and concatenation product; scalars
    (Scalar, int, Fraction) multiply from either side.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def scalar_part(self) -> Scalar:
        return self.terms.get((), self.alg.ring.zero)

    def support(self):
        return self.terms.keys()

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alg == other.alg and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.alg.scalar_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, NcPoly):
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.alg.scalar_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NcPoly(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                if s is None:
                    if c:
                        out[w] = c
                else:
                    s = s + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return NcPoly(self.alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NcPoly":
        if not isinstance(c, Scalar):
            c = self.alg.ring.scalar(c)
        if not c:
            return self.alg.zero
        out = {}
        for w, x in self.terms.items():
            v = c * x
            if v:
                out[w] = v
        return NcPoly(self.alg, out)

    def __truediv__(self, other):
        if isinstance(other, NcPoly):
            if not other.is_scalar():
                raise ValueError("division only by scalar-valued expressions")
            other = other.scalar_part()
        if not isinstance(other, Scalar):
            other = self.alg.ring.scalar(other)
        out = {}
        for w, x in self.terms.items():
            v = x / other
            if v:
                out[w] = v
        return NcPoly(self.alg, out)

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_scalar():
                raise ValueError("negative powers only of scalar-valued expressions")
            inv = self.alg.scalar_poly(self.alg.ring.one / self.scalar_part())
            return inv ** (-k)
        out = self.alg.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"NcPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        alg = self.alg
        parts = []
        for w in sorted(self.terms, key=alg.word_key, reverse=True):
            c = self.terms[w]
            cs = str(c)
            ws = alg.word_str(w)
            if not w:
                body = cs if _atomic_str(cs) else f"({cs})"
            elif cs == "1":
                body = ws
            elif cs == "-1":
                body = f"-{ws}"
            else:
                body = (cs if _atomic_str(cs) else f"({cs})") + "*" + ws
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)


def _atomic_str(s: str) -> bool:
    return bool(re.fullmatch(r"-?[A-Za-z0-9_]+(\^-?[0-9]+)?", s))


@dataclass(frozen=True)
class CriticalPair:
    """An overlap ambiguity whose two one-step resolutions differ."""

    rule_left: int
    rule_right: int
    word: tuple[int, ...]
    nf_left: "NcPoly"
    nf_right: "NcPoly"


class RewriteSystem:
    """Oriented relations lhs -> rhs over a free algebra.

    Construction enforces: left-hand sides are distinct nonempty words, and
    every right-hand-side monomial is strictly smaller than its lhs in the
    algebra's order.  Rewriting therefore terminates; normal forms use the
    leftmost matching position and, there, the earliest rule.
    """

    def __init__(self, free: FreeAlgebra, rules: Iterable[tuple]):
        self.free = free
        norm_rules: list[tuple[tuple[int, ...], NcPoly]] = []
        seen = set()
        for lhs, rhs in rules:
            if isinstance(lhs, NcPoly):
                if len(lhs.terms) != 1:
                    raise ValueError("rule lhs must be a single word")
                (word, coeff), = lhs.terms.items()
                if not coeff.is_one():
                    rhs = rhs / coeff
                lhs = word
            if not isinstance(rhs, NcPoly):
                rhs = free.scalar_poly(rhs)
            if not lhs:
                raise ValueError("empty word cannot be a rule lhs")
            if lhs in seen:
                raise ValueError(f"duplicate rule lhs {free.word_str(lhs)}")
            seen.add(lhs)
            lk = free.word_key(lhs)
            for w in rhs.terms:
                if not free.word_key(w) < lk:
                    raise ValueError(
                        f"rule does not decrease: {free.word_str(lhs)} -> "
                        f"{free.word_str(w)}")
            norm_rules.append((lhs, rhs))
        self.rules = tuple(norm_rules)
        self._by_first: dict[int, list[tuple[tuple[int, ...], NcPoly]]] = {}
        for lhs, rhs in self.rules:
            self._by_first.setdefault(lhs[0], []).append((lhs, rhs))
        self._cache: dict[tuple[int, ...], dict] = {}

    def __repr__(self):
        return f"RewriteSystem({len(self.rules)} rules over {self.free!r})"

    def __eq__(self, other):
        return (isinstance(other, RewriteSystem)
                and self.free == other.free and self.rules == other.rules)

    def __hash__(self):
        return hash((self.free, self.rules))

    # -- rewriting ----------------------------------------------------------

    def _first_match(self, w: tuple[int, ...]):
        by_first = self._by_first
        n = len(w)
        for i in range(n):
            cands = by_first.get(w[i])
            if not cands:
                continue
            for lhs, rhs in cands:
                if n - i >= len(lhs) and w[i:i + len(lhs)] == lhs:
                    return i, lhs, rhs
        return None

    def is_normal(self, w: tuple[int, ...]) -> bool:
        return self._first_match(w) is None

    def _word_nf(self, w: tuple[int, ...]) -> dict:
        cache = self._cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        one = self.free.ring.one
        stack = [w]
        while stack:
            cur = stack[-1]
            if cur in cache:
                stack.pop()
                continue
            m = self._first_match(cur)
            if m is None:
                cache[cur] = {cur: one}
                stack.pop()
                continue
            pos, lhs, rhs = m
            prefix, suffix = cur[:pos], cur[pos + len(lhs):]
            deps = {prefix + rw + suffix: rc for rw, rc in rhs.terms.items()}
            missing = [d for d in deps if d not in cache]
            if missing:
                stack.extend(missing)
                continue
            res: dict = {}
            for d, rc in deps.items():
                for w2, c2 in cache[d].items():
                    s = res.get(w2)
                    v = rc * c2 if s is None else s + rc * c2
                    if v:
                        res[w2] = v
                    elif s is not None:
                        del res[w2]
            cache[cur] = res
            stack.pop()
        return cache[w]

    def normal_form(self, poly: NcPoly) -> NcPoly:
        out: dict = {}
        for w, c in poly.terms.items():
            for w2, c2 in self._word_nf(w).items():
                s = out.get(w2)
                v = c * c2 if s is None else s + c * c2
                if v:
                    out[w2] = v
                elif s is not None:
                    del out[w2]
        return NcPoly(self.free, out)

    def mul_nf(self, a: NcPoly, b: NcPoly) -> NcPoly:
        return self.normal_form(a * b)

    # -- bases --------------------------------------------------------------

    def irreducible_words(self, max_length: int | None = None,
                          max_weight: int | None = None):
        """All rewrite-irreducible words within the given bounds, in order.

        With both bounds None the enumeration must exhaust (raise otherwise):
        an empty length level proves no longer irreducible word exists, since
        every extension contains the reducible prefix.
        """
        if max_length is None and max_weight is None:
            max_length = 4096  # safety; crossing it means the basis is infinite
            must_exhaust = True
        else:
            must_exhaust = False
        lhss = [lhs for lhs, _ in self.rules]
        ngens = len(self.free.names)
        out = [()]
        level = [()]
        length = 0
        while level:
            length += 1
            if max_length is not None and length > max_length:
                if must_exhaust:
                    raise ValueError("irreducible words do not exhaust; "
                                     "the algebra looks infinite-dimensional")
                break
            nxt = []
            for w in level:
                for g in range(ngens):
                    w2 = w + (g,)
                    if max_weight is not None and self.free.word_weight(w2) > max_weight:
                        continue
                    n2 = len(w2)
                    if any(n2 >= len(l) and w2[n2 - len(l):] == l for l in lhss):
                        continue
                    nxt.append(w2)
            out.extend(nxt)
            level = nxt
        out.sort(key=self.free.word_key)
        return out

    # -- confluence ---------------------------------------------------------

    def overlap_report(self, max_word_len: int | None = None) -> list[CriticalPair]:
        """Critical pairs whose two resolutions have different normal forms.

        Covers proper overlaps (a suffix of one lhs equals a prefix of
        another) and containments (one lhs inside another).  An empty report
        certifies confluence: rewriting terminates by the order invariant,
        and all ambiguities are resolvable, so Newman's lemma applies.
        """
        free = self.free
        issues = []
        for i, (l1, r1) in enumerate(self.rules):
            for j, (l2, r2) in enumerate(self.rules):
                # suffix of l1 meets prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] != l2[:k]:
                        continue
                    word = l1 + l2[k:]
                    if max_word_len is not None and len(word) > max_word_len:
                        continue
                    left = r1 * free.from_word(l2[k:])
                    right = free.from_word(l1[:-k]) * r2
                    nf_l = self.normal_form(left)
                    nf_r = self.normal_form(right)
                    if nf_l != nf_r:
                        issues.append(CriticalPair(i, j, word, nf_l, nf_r))
                # l2 contained strictly inside l1
                if i != j and len(l2) < len(l1):
                    for pos in range(len(l1) - len(l2) + 1):
                        if l1[pos:pos + len(l2)] != l2:
                            continue
                        if max_word_len is not None and len(l1) > max_word_len:
                            continue
                        right = (free.from_word(l1[:pos]) * r2
                                 * free.from_word(l1[pos + len(l2):]))
                        nf_l = self.normal_form(r1)
                        nf_r = self.normal_form(right)
                        if nf_l != nf_r:
                            issues.append(CriticalPair(i, j, l1, nf_l, nf_r))
        return issues


class PresentedAlgebra:
    """A free algebra together with a rewriting system: elements are normal
    forms, products are rewritten products."""

    def __init__(self, free: FreeAlgebra, rules: Iterable[tuple], name: str = ""):
        self.free = free
        self.rws = rules if isinstance(rules, RewriteSystem) else RewriteSystem(free, rules)
        self.name = name

    @property
    def ring(self) -> Ring:
        return self.free.ring

    def __repr__(self):
        return f"PresentedAlgebra({self.name or self.free!r})"

    def __eq__(self, other):
        return (isinstance(other, PresentedAlgebra)
                and self.free == other.free and self.rws == other.rws)

    def __hash__(self):
        return hash((self.free, self.rws))

    def nf(self, poly: NcPoly) -> NcPoly:
        return self.rws.normal_form(poly)

    def element(self, text: str) -> NcPoly:
        return self.nf(parse_nc(text, self.free))

    def gen(self, name: str) -> NcPoly:
        return self.nf(self.free.gen(name))

    @property
    def one(self) -> NcPoly:
        return self.free.one

    @property
    def zero(self) -> NcPoly:
        return self.free.zero

    def mul(self, a: NcPoly, b: NcPoly) -> NcPoly:
        return self.rws.normal_form(a * b)

    def basis(self, max_length: int | None = None, max_weight: int | None = None):
        return self.rws.irreducible_words(max_length, max_weight)

    def dimension(self) -> int:
        return len(self.basis())

    def is_confluent(self, max_word_len: int | None = None) -> bool:
        return not self.rws.overlap_report(max_word_len)


# ---------------------------------------------------------------------------
# Relation grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character in expression: {text[pos:]!r}")
            break
        pos = m.end()
        if m.lastgroup == "num":
            out.append(("num", int(m.group("num"))))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens, alg: FreeAlgebra):
        self.toks = tokens
        self.i = 0
        self.alg = alg

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, found {val!r}")

    def parse(self) -> NcPoly:
        v = self.expr()
        kind, val = self.peek()
        if kind != "end":
            raise ValueError(f"trailing input at {val!r}")
        return v

    def expr(self) -> NcPoly:
        v = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                w = self.term()
                v = v + w if val == "+" else v - w
            else:
                return v

    def term(self) -> NcPoly:
        neg = False
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.take()
                neg = not neg
            else:
                break
        v = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                w = self.factor()
                v = v * w if val == "*" else v / w
            elif kind in ("name", "num") or (kind == "op" and val == "("):
                v = v * self.factor()
            else:
                break
        return -v if neg else v

    def factor(self) -> NcPoly:
        v = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val = self.take()
            if kind == "op" and val == "-":
                sign = -1
                kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            v = v ** (sign * val)
        return v

    def atom(self) -> NcPoly:
        kind, val = self.take()
        if kind == "num":
            return self.alg.scalar_poly(val)
        if kind == "name":
            alg = self.alg
            if val in alg.index:
                return alg.gen(val)
            ring = alg.ring
            if val in ring.index:
                return alg.scalar_poly(ring.sym(val))
            if val == "q" and ring._q_power is not None:
                return alg.scalar_poly(ring.q(1))
            raise ValueError(f"unknown identifier {val!r}")
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise ValueError(f"unexpected token {val!r}")


def parse_nc(text: str, alg: FreeAlgebra) -> NcPoly:
    """Parse the relation grammar into an (unreduced) free-algebra element."""
    return _Parser(_tokenize(text), alg).parse()
