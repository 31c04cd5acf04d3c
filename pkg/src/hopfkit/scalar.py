"""Exact coefficient arithmetic for the whole toolkit.

Three base fields are supported, all with canonical representations so that
equality is representation equality:

* the rationals (``fractions.Fraction``),
* the field of rational functions in a formal variable q over the rationals
  (:class:`RatFunc`, stored as a gcd-reduced fraction with monic denominator),
* the cyclotomic field of order d >= 3, i.e. the rationals with a primitive
  d-th root of unity q adjoined (:func:`CyclotomicField`, residues of degree
  < deg Phi_d).

On top of a base field sits a commutative parameter ring in named symbols
(:class:`Ring`), some of which are designated invertible.  Elements
(:class:`Scalar`) are sparse Laurent polynomials: a map from exponent
monomials to base coefficients, where negative exponents are permitted on
invertible symbols only.  Denominators never appear outside :class:`Frac`,
the explicitly requested fraction-field mode.

Univariate polynomials over the rationals are handled internally as dense
coefficient tuples with no trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RingSpec",
    "Ring",
    "Scalar",
    "Frac",
    "RatFunc",
    "CyclotomicField",
    "ring_make",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "specialize",
]


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Fraction: tuples, no trailing zeros.
# ---------------------------------------------------------------------------

def _ptrim(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
    i = len(c)
    while i > 0 and not c[i - 1]:
        i -= 1
    return tuple(c[:i])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pscale(a, c: Fraction):
    if not c:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Quotient and remainder of dense polynomials; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return _ptrim(q), _ptrim(r)


def _pmonic(a):
    if not a:
        return a
    return _pscale(a, 1 / a[-1])


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pconst(c: Fraction):
    return (c,) if c else ()


_PONE = (Fraction(1),)


def _pfmt(a, var: str = "q") -> str:
    """Render a dense polynomial, highest power first, in the relation grammar."""
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            body = str(c) if c > 0 else str(-c)
        else:
            pw = var if i == 1 else f"{var}^{i}"
            mag = abs(c)
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Rational functions in q over the rationals.
# ---------------------------------------------------------------------------

class RatFunc:
    """An element of Q(q), reduced by polynomial gcd, denominator monic.

    Immutable and hashable; the canonical form makes == reliable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, _normal=False):
        if _normal:
            self.num, self.den = num, den
            return
        num = self._topoly(num)
        den = self._topoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not num:
            self.num, self.den = (), _PONE
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        self.num, self.den = num, den

    @staticmethod
    def _topoly(v):
        if isinstance(v, tuple):
            return _ptrim(v)
        if isinstance(v, (int, Fraction)):
            return _pconst(Fraction(v))
        raise TypeError(f"cannot build Q(q) element from {v!r}")

    @classmethod
    def q_power(cls, k: int) -> "RatFunc":
        if k >= 0:
            return cls(tuple([Fraction(0)] * k + [Fraction(1)]))
        return cls(_PONE, tuple([Fraction(0)] * (-k) + [Fraction(1)]))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                       _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _normal=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (RatFunc(1) / self) ** (-k)
        out = RatFunc(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, value):
        """Evaluate at a concrete value (any field element); denominator must not vanish."""
        def ev(p):
            acc = value * 0
            for c in reversed(p):
                acc = acc * value + c * (value * 0 + 1)
            return acc
        d = ev(self.den)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the requested q")
        num = ev(self.num)
        return num / d

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if not self.num:
            return "0"
        ns = _pfmt(self.num)
        if self.den == _PONE:
            return ns
        return f"({ns})/({_pfmt(self.den)})"


# ---------------------------------------------------------------------------
# Cyclotomic fields Q[q]/Phi_d(q), d >= 3.
# ---------------------------------------------------------------------------

@functools.cache
def _cyclotomic_poly(d: int) -> tuple[Fraction, ...]:
    """Coefficients of the d-th cyclotomic polynomial, exactly."""
    num = tuple([Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)])  # q^d - 1
    for e in range(1, d):
        if d % e == 0:
            num = _pdivmod(num, _cyclotomic_poly(e))[0]
    return num


class _CycloBase:
    """An element of a fixed cyclotomic field; subclassed per order d.

    The residue is a dense tuple of length phi(d) (Fractions, trailing zeros
    kept so tuples have fixed length; the zero element is all zeros).
    """

    __slots__ = ("coeffs",)

    d: int = 0
    phi: int = 0
    modulus: tuple[Fraction, ...] = ()
    _power_table: tuple[tuple[Fraction, ...], ...] = ()

    def __init__(self, coeffs):
        if isinstance(coeffs, (int, Fraction)):
            c = [Fraction(0)] * self.phi
            c[0] = Fraction(coeffs)
            coeffs = c
        if len(coeffs) != self.phi:
            raise ValueError("wrong residue length")
        self.coeffs = tuple(Fraction(x) for x in coeffs)

    @classmethod
    def q_power(cls, k: int):
        k %= cls.d
        return cls(cls._power_table[k])

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.d, self.coeffs))

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, cls):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return type(self)([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        phi = self.phi
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:phi])
        # reduce q^k for k >= phi via the precomputed residue table
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                red = self._power_table[k]
                for i, r in enumerate(red):
                    if r:
                        out[i] += c * r
        return type(self)(out)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_d."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        a = _ptrim(self.coeffs)
        b = self.modulus
        # extended gcd: find u with a*u = g mod b, g a nonzero constant
        r0, r1 = b, a
        s0, s1 = (), _PONE
        while r1:
            qq, rr = _pdivmod(r0, r1)
            r0, r1 = r1, rr
            s0, s1 = s1, _padd(s0, _pneg(_pmul(qq, s1)))
        if len(r0) != 1:
            raise ArithmeticError("modulus not coprime to residue")
        u = _pscale(s0, 1 / r0[0])
        out = list(u) + [Fraction(0)] * (self.phi - len(u))
        return type(self)(out)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = type(self)(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"Cyclo{self.d}({self})"

    def __str__(self):
        return _pfmt(_ptrim(self.coeffs))


@functools.cache
def CyclotomicField(d: int):
    """Create the element type for Q[q]/Phi_d(q).  Requires d >= 3."""
    if d < 3:
        raise ValueError("cyclotomic order must be >= 3")
    modulus = _cyclotomic_poly(d)
    phi = len(modulus) - 1
    # residues of q^k for 0 <= k < d (covers the multiplication overflow
    # range 2*phi-2 < d as well, since phi <= d-1... compute up to need)
    need = max(d, 2 * phi - 1)
    table = []
    cur = [Fraction(0)] * phi
    cur[0] = Fraction(1)
    for _ in range(need):
        table.append(tuple(cur))
        nxt = [Fraction(0)] + cur[:-1]
        carry = cur[-1]
        if carry:
            for i in range(phi):
                nxt[i] -= carry * modulus[i]
        cur = nxt
    cls = type(f"Cyclo{d}", (_CycloBase,), {"__slots__": ()})
    cls.d = d
    cls.phi = phi
    cls.modulus = modulus
    cls._power_table = tuple(table)
    return cls


# ---------------------------------------------------------------------------
# Ring specification and the parameter ring.
# ---------------------------------------------------------------------------

_BASE_RATIONALS = "rationals"
_BASE_Q = "q"
_BASE_CYC = "cyclotomic"


@dataclass(frozen=True)
class RingSpec:
    """Names a coefficient ring: a base field plus ordered parameter symbols.

    ``base`` is ``"rationals"``, ``"q"`` (formal q), or ``("cyclotomic", d)``;
    ``invertible`` must be a subset of ``params``.
    """

    base: object = _BASE_RATIONALS
    params: tuple[str, ...] = ()
    invertible: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "invertible", frozenset(self.invertible))
        if len(set(self.params)) != len(self.params):
            raise ValueError("duplicate parameter names")
        if not self.invertible <= set(self.params):
            raise ValueError("invertible symbols must be parameters")
        if isinstance(self.base, tuple):
            kind, d = self.base
            if kind != _BASE_CYC or d < 3:
                raise ValueError(f"bad base {self.base!r}")
        elif self.base not in (_BASE_RATIONALS, _BASE_Q):
            raise ValueError(f"bad base {self.base!r}")

    def serialize(self) -> str:
        if isinstance(self.base, tuple):
            b = f"cyclotomic:{self.base[1]}"
        else:
            b = self.base
        ps = ",".join(p + ("!" if p in self.invertible else "") for p in self.params)
        return f"base={b}; params={ps}"

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        base: object = _BASE_RATIONALS
        params: list[str] = []
        invertible: set[str] = set()
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            key, _, value = chunk.partition("=")
            key, value = key.strip(), value.strip()
            if key == "base":
                if value.startswith("cyclotomic:"):
                    base = (_BASE_CYC, int(value.split(":", 1)[1]))
                elif value in (_BASE_RATIONALS, _BASE_Q):
                    base = value
                else:
                    raise ValueError(f"unknown base {value!r}")
            elif key == "params":
                for name in filter(None, (s.strip() for s in value.split(","))):
                    if name.endswith("!"):
                        name = name[:-1]
                        invertible.add(name)
                    params.append(name)
            else:
                raise ValueError(f"unknown ring-spec field {key!r}")
        return cls(base, tuple(params), frozenset(invertible))


def _base_handle(base):
    """(element type or None, zero, one, q_power or None) for a RingSpec base."""
    if base == _BASE_RATIONALS:
        return None, Fraction(0), Fraction(1), None
    if base == _BASE_Q:
        return RatFunc, RatFunc(0), RatFunc(1), RatFunc.q_power
    cls = CyclotomicField(base[1])
    return cls, cls(0), cls(1), cls.q_power


class Ring:
    """A commutative parameter ring over one of the three base fields.

    Elements are :class:`Scalar`.  Monomials are stored sparsely as sorted
    tuples of (symbol index, exponent); exponents may be negative only for
    invertible symbols.
    """

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.params = spec.params
        self.index = {name: i for i, name in enumerate(spec.params)}
        self.invertible_idx = frozenset(self.index[p] for p in spec.invertible)
        self.base_cls, self.base_zero, self.base_one, self._q_power = _base_handle(spec.base)
        self.zero = Scalar(self, {})
        self.one = Scalar(self, {(): self.base_one})

    def __repr__(self):
        return f"Ring({self.spec.serialize()!r})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    # -- constructors -------------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Lift an integer, Fraction, or base element into the ring."""
        if isinstance(value, Scalar):
            if value.ring is not self and value.ring != self:
                raise ValueError("scalar from a different ring")
            return value
        c = self.base(value)
        return Scalar(self, {(): c} if c else {})

    def base(self, value):
        """Coerce into the base field."""
        if isinstance(value, (int, Fraction)):
            if self.base_cls is None:
                return Fraction(value)
            return self.base_cls(value)
        if self.base_cls is not None and isinstance(value, self.base_cls):
            return value
        if self.base_cls is None and isinstance(value, Fraction):
            return value
        raise TypeError(f"cannot coerce {value!r} into base field")

    def q(self, k: int = 1) -> "Scalar":
        """The element q^k; requires a base with a distinguished q."""
        if self._q_power is None:
            raise ValueError("base field has no q")
        return Scalar(self, {(): self._q_power(k)})

    def sym(self, name: str, power: int = 1) -> "Scalar":
        i = self.index[name]
        if power < 0 and i not in self.invertible_idx:
            raise ValueError(f"symbol {name} is not invertible")
        if power == 0:
            return self.one
        return Scalar(self, {((i, power),): self.base_one})

    def monomial(self, mono: tuple, coeff=1) -> "Scalar":
        c = self.base(coeff)
        if not c:
            return self.zero
        self._check_mono(mono)
        return Scalar(self, {mono: c})

    def _check_mono(self, mono):
        last = -1
        for idx, exp in mono:
            if idx <= last or exp == 0 or not (0 <= idx < len(self.params)):
                raise ValueError(f"malformed monomial {mono!r}")
            if exp < 0 and idx not in self.invertible_idx:
                raise ValueError(
                    f"negative exponent on non-invertible symbol {self.params[idx]}")
            last = idx
        return mono

    def mono_mul(self, a: tuple, b: tuple, check: bool = True) -> tuple:
        if not a:
            return b
        if not b:
            return a
        merged = dict(a)
        for idx, exp in b:
            e = merged.get(idx, 0) + exp
            if e:
                merged[idx] = e
            else:
                merged.pop(idx, None)
        mono = tuple(sorted(merged.items()))
        if check:
            for idx, exp in mono:
                if exp < 0 and idx not in self.invertible_idx:
                    raise ValueError(
                        f"negative exponent on non-invertible symbol {self.params[idx]}")
        return mono

    def mono_str(self, mono: tuple) -> str:
        parts = []
        for idx, exp in mono:
            name = self.params[idx]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)


class Scalar:
    """A sparse Laurent polynomial over a :class:`Ring`'s base field.

    ``terms`` maps monomials to nonzero base coefficients; the empty dict is
    zero and the empty monomial () is the constant term.  Immutable by
    convention: no operation mutates an existing Scalar.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and () in self.terms and self.terms[()] == self.ring.base_one

    def constant_term(self):
        return self.terms.get((), self.ring.base_zero)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True iff invertible inside the ring: one term, invertible symbols only."""
        if len(self.terms) != 1:
            return False
        (mono, _), = self.terms.items()
        return all(idx in self.ring.invertible_idx for idx, _e in mono)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        if self.ring.base_cls is not None and isinstance(other, self.ring.base_cls):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in o.terms.items():
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s = s + c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return Scalar(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if not a or not b:
            return self.ring.zero
        if len(a) > len(b):
            a, b = b, a
        mono_mul = self.ring.mono_mul
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb, check=False)
                c = ca * cb
                s = out.get(m)
                if s is None:
                    if c:
                        out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Scalar(self.ring, out)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.is_unit():
            raise ValueError(f"not a unit: {self}")
        (mono, c), = self.terms.items()
        inv_mono = tuple((idx, -exp) for idx, exp in mono)
        one = self.ring.base_one
        return Scalar(self.ring, {inv_mono: one / c})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_unit():
            return self * o.inverse()
        return exact_divide(self, o)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for mono in sorted(self.terms, key=lambda m: _mono_key(m, len(ring.params))):
            c = self.terms[mono]
            cs = str(c)
            ms = ring.mono_str(mono)
            if not ms:
                body = cs if _atomic(cs) else f"({cs})"
            elif cs == "1":
                body = ms
            elif cs == "-1":
                body = f"-{ms}"
            else:
                body = (cs if _atomic(cs) else f"({cs})") + "*" + ms
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(" - " + body[1:])
            else:
                parts.append(" + " + body)
        return "".join(parts)


def _atomic(s: str) -> bool:
    return bool(re.fullmatch(r"-?[A-Za-z0-9_/^]+", s))


def _mono_key(mono: tuple, nsyms: int):
    dense = [0] * nsyms
    for idx, exp in mono:
        dense[idx] = exp
    return tuple(dense)


def _mono_total(mono: tuple) -> int:
    return sum(e for _i, e in mono)


def exact_divide(a: Scalar, b: Scalar) -> Scalar:
    """Exact division of Laurent polynomials; raises ValueError on remainder.

    Both arguments are shifted by monomials so all exponents are nonnegative,
    then ordinary multivariate long division runs on the leading monomials in
    lexicographic order.
    """
    ring = a.ring
    if b.is_zero():
        raise ZeroDivisionError("exact division by zero")
    if a.is_zero():
        return ring.zero
    if b.is_unit():
        return a * b.inverse()
    nsyms = len(ring.params)

    def shift_of(x):
        mins = {}
        for mono in x.terms:
            seen = dict(mono)
            for idx in set(mins) | set(seen):
                e = seen.get(idx, 0)
                mins[idx] = min(mins.get(idx, 0), e)
        return tuple(sorted((i, -e) for i, e in mins.items() if e < 0))

    sa, sb = shift_of(a), shift_of(b)
    # a/b = (a*sa / b*sb) * sb/sa ; the shifted division is polynomial
    num = {ring.mono_mul(m, sa, check=False): c for m, c in a.terms.items()}
    den = {ring.mono_mul(m, sb, check=False): c for m, c in b.terms.items()}
    lead = max(den, key=lambda m: _mono_key(m, nsyms))
    lead_c = den[lead]
    quo: dict = {}
    rem = dict(num)
    while rem:
        m = max(rem, key=lambda m: _mono_key(m, nsyms))
        diff = dict(lead)
        ok = True
        for idx, exp in m:
            e = exp - diff.pop(idx, 0)
            if e < 0:
                ok = False
                break
            if e:
                diff[idx] = -e  # placeholder sign fixed below
        if not ok or any(v > 0 for v in diff.values()):
            raise ValueError("not exactly divisible")
        qm = tuple(sorted((i, -e) for i, e in diff.items() if e))
        qc = rem[m] / lead_c
        quo[qm] = qc
        for dm, dc in den.items():
            t = ring.mono_mul(qm, dm, check=False)
            s = rem.get(t, ring.base_zero) - qc * dc
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    inv_shift = ring.mono_mul(sb, tuple((i, -e) for i, e in sa), check=False)
    out: dict = {}
    for m, c in quo.items():
        mm = ring.mono_mul(m, inv_shift, check=False)
        ring._check_mono(mm)
        out[mm] = c
    return Scalar(ring, out)


class Frac:
    """Fraction-field mode: a pair of Scalars num/den over the same ring.

    Used only where arbitrary denominators are genuinely required (the t
    inverse solver).  Normalization: zero is 0/1; the denominator's leading
    coefficient is 1; invertible-monomial content of the denominator is
    folded into the numerator; exact cancellation is attempted when cheap.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar | None = None, _normal=False):
        if den is None:
            den = num.ring.one
        if _normal:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        ring = num.ring
        if num.is_zero():
            self.num, self.den = ring.zero, ring.one
            return
        if den.is_unit():
            self.num, self.den = num * den.inverse(), ring.one
            return
        try:
            self.num, self.den = exact_divide(num, den), ring.one
            return
        except ValueError:
            pass
        # pull the denominator's invertible monomial content into the numerator
        syms = set()
        for mono in den.terms:
            syms.update(i for i, _e in mono)
        content = tuple(sorted(
            (i, e) for i in syms if i in ring.invertible_idx
            if (e := min(dict(mono).get(i, 0) for mono in den.terms))))
        if content:
            inv = Scalar(ring, {tuple((i, -e) for i, e in content): ring.base_one})
            num = num * inv
            den = den * inv
        lead = max(den.terms, key=lambda m: _mono_key(m, len(ring.params)))
        lc = den.terms[lead]
        if lc != ring.base_one:
            num = num * Scalar(ring, {(): ring.base_one / lc})
            den = den * Scalar(ring, {(): ring.base_one / lc})
        self.num, self.den = num, den

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, Frac):
            return other
        if isinstance(other, Scalar):
            return Frac(other)
        if isinstance(other, (int, Fraction)):
            return Frac(self.ring.scalar(other))
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("Frac is unhashable (no canonical form)")

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Frac(self.num + o.num, self.den)
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den, _normal=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Frac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return Frac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def as_scalar(self) -> Scalar:
        """Collapse to a plain Scalar; requires the denominator to be a unit or divide exactly."""
        if self.den.is_one():
            return self.num
        return self.num / self.den

    def __repr__(self):
        return f"Frac({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# Public constructors and q-combinatorics.
# ---------------------------------------------------------------------------

def ring_make(spec: RingSpec | str) -> Ring:
    """Build the ring named by a RingSpec (or its serialized text form)."""
    if isinstance(spec, str):
        spec = RingSpec.parse(spec)
    return Ring(spec)


def q_integer(r: int, ring: Ring) -> Scalar:
    """[r] = 1 + q + ... + q^(r-1); over a base without q this is just r."""
    if r < 0:
        raise ValueError("q-integer of negative argument")
    if ring._q_power is None:
        return ring.scalar(r)
    out = ring.zero
    for k in range(r):
        out = out + ring.q(k)
    return out


def q_factorial(r: int, ring: Ring) -> Scalar:
    out = ring.one
    for k in range(1, r + 1):
        out = out * q_integer(k, ring)
    return out


def q_binomial(n: int, r: int, ring: Ring) -> Scalar:
    """The Gaussian binomial [n choose r], via the q-Pascal recurrence.

    Always a polynomial in q, so this is well defined over every base field,
    including at roots of unity where the q-factorial quotient degenerates.
    """
    if not 0 <= r <= n:
        raise ValueError("require 0 <= r <= n")
    r = min(r, n - r)
    row = [ring.one] + [ring.zero] * r
    for m in range(1, n + 1):
        # [m k] = [m-1 k-1] + q^k [m-1 k], computed right to left in place
        for k in range(min(m, r), 0, -1):
            row[k] = row[k - 1] + ring.q(k) * row[k] if ring._q_power \
                else row[k - 1] + row[k]
    return row[r]


def specialize(x: Scalar | Frac, assignment: Mapping[str, object],
               target: Ring, q_value: Scalar | None = None) -> Scalar:
    """Apply the ring homomorphism sending each symbol to its assigned value.

    ``assignment`` maps symbol names to Scalars of ``target`` (ints and
    Fractions are lifted).  Every invertible symbol that occurs must receive
    an invertible value.  ``q_value`` specializes a formal q into the target
    (the assignment must keep every denominator nonvanishing); without it the
    base fields of source and target must agree.
    """
    if isinstance(x, Frac):
        den = specialize(x.den, assignment, target, q_value)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under specialization")
        num = specialize(x.num, assignment, target, q_value)
        return num / den

    ring = x.ring
    values: dict[int, Scalar] = {}
    inverses: dict[int, Scalar] = {}

    def value_for(idx: int) -> Scalar:
        v = values.get(idx)
        if v is None:
            name = ring.params[idx]
            if name not in assignment:
                raise KeyError(f"no value assigned to symbol {name}")
            v = target.scalar(assignment[name])
            if idx in ring.invertible_idx and not v.is_unit():
                raise ValueError(f"invertible symbol {name} assigned a non-unit")
            values[idx] = v
        return v

    def map_base(c):
        if ring.base_cls is None:
            return target.scalar(c)
        if ring.base_cls is RatFunc:
            if q_value is not None:
                return c.evaluate(q_value if isinstance(q_value, Scalar)
                                  else target.scalar(q_value))
            if target.base_cls is RatFunc:
                return Scalar(target, {(): c} if c else {})
            raise ValueError("formal q requires q_value to specialize")
        if target.base_cls is ring.base_cls:
            return Scalar(target, {(): c} if c else {})
        raise ValueError("cyclotomic coefficients only specialize into the same field")

    out = target.zero
    for mono, c in x.terms.items():
        term = map_base(c)
        for idx, exp in mono:
            v = value_for(idx)
            if exp >= 0:
                term = term * v ** exp
            else:
                inv = inverses.get(idx)
                if inv is None:
                    inv = v.inverse()
                    inverses[idx] = inv
                term = term * inv ** (-exp)
        out = out + term
    return out
