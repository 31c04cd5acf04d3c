"""Packed integer kernels for exhaustive product-table checks.

The associativity check of a symbol-coefficient product table multiplies
hundreds of millions of monomial pairs.  General Scalar arithmetic is
far too slow for that, so tables are first packed into a pure integer
form and the hot loop runs over machine-friendly data:

  - a monomial becomes one nonnegative integer key: each symbol owns a
    fixed bit field holding exponent + offset, with field widths chosen
    so that the sum of any two table exponents still fits; the key of a
    product is then key1 + key2 - base_key, a single integer addition;
  - a base-field coefficient becomes a tuple of integers: the scaled
    numerators of its coordinates over the power basis of the field
    (length 1 for the rationals), with one global denominator ``scale``
    cleared out front; products reduce high powers via the integer
    residue table of the cyclotomic polynomial.

Packing is exact: zero residuals in packed form are zero residuals of
the original table, because every coefficient is multiplied by the same
positive integer and the key map is injective on all sums that occur.

A compiled extension implementing the same loop is used when available;
``assoc_residuals`` dispatches to it and falls back to the pure Python
version transparently.  Both report identical residuals.

Representation invariants: ``keys[p]`` and ``coefs[p * r : (p + 1) * r]``
describe monomial p; entries of cell (i, j) occupy the contiguous range
``cell_start[i * n + j] : cell_start[i * n + j + 1]``; coefficient
vectors are never all zero; ``red`` holds the integer coordinates of
zeta^p for p in r .. 2r - 2 and is empty when r == 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .scalar import Ring, Scalar

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None


class UnpackableError(ValueError):
    """The coefficient ring cannot be packed into integer form."""


def compiled_available() -> bool:
    """True when the compiled extension is importable."""
    return _compiled is not None


@dataclass(frozen=True)
class PackedTable:
    """A product table in packed integer form (see the module docstring)."""

    n: int
    r: int
    scale: int
    shifts: tuple[int, ...]
    widths: tuple[int, ...]
    offs: tuple[int, ...]
    base_key: int
    kbits: int
    split: int
    red: tuple[tuple[int, ...], ...]
    cell_start: tuple[int, ...]
    entry_k: tuple[int, ...]
    entry_start: tuple[int, ...]
    keys: tuple[int, ...]
    coefs: tuple[int, ...]
    max_abs: int
    total_pairs: int

    def decode_mono(self, key: int) -> tuple[tuple[int, int], ...]:
        """The (symbol, exponent) monomial of a packed key."""
        out = []
        for s, (shift, width, off) in enumerate(
                zip(self.shifts, self.widths, self.offs)):
            e = ((key >> shift) & ((1 << width) - 1)) - off
            if e:
                out.append((s, e))
        return tuple(out)


def _coef_vector(c, r: int) -> Sequence[Fraction]:
    if r == 1:
        return (c,)
    return c.coeffs


def pack_table(n: int, ring: Ring,
               table: Mapping[tuple[int, int], Sequence[tuple[int, Scalar]]]
               ) -> PackedTable:
    """Pack a product table over a rational or cyclotomic coefficient ring.

    Raises UnpackableError for a formal-q base, whose coefficients have
    no finite integer coordinate form.
    """
    base = ring.spec.base
    if base == "q":
        raise UnpackableError("formal q coefficients cannot be packed")
    if isinstance(base, tuple):
        r = ring.base_cls.phi
        red = []
        for p in range(r, 2 * r - 1):
            row = ring.base_cls._power_table[p]
            if any(f.denominator != 1 for f in row):
                raise UnpackableError("non-integral power residue")
            red.append(tuple(int(f) for f in row))
        red = tuple(red)
    else:
        r = 1
        red = ()

    nsym = len(ring.params)
    lo = [0] * nsym
    hi = [0] * nsym
    denom = 1
    for entries in table.values():
        for _k, b in entries:
            for mono, c in b.terms.items():
                for s, e in mono:
                    if e < lo[s]:
                        lo[s] = e
                    if e > hi[s]:
                        hi[s] = e
                for f in _coef_vector(c, r):
                    denom = math.lcm(denom, f.denominator)

    shifts = []
    widths = []
    offs = []
    bit = 0
    for s in range(nsym):
        top = max(hi[s] - 2 * lo[s], 2 * hi[s] - 2 * lo[s], 0)
        width = max(top.bit_length(), 1)
        shifts.append(bit)
        widths.append(width)
        offs.append(-2 * lo[s])
        bit += width
    base_key = sum(off << shift for off, shift in zip(offs, shifts))
    split = 0
    for shift in shifts:
        if shift <= 64:
            split = shift
    if bit <= 64:
        split = bit

    cell_start = [0]
    entry_k = []
    entry_start = [0]
    keys = []
    coefs = []
    max_abs = 0
    cell_size = []
    for i in range(n):
        for j in range(n):
            for k, b in table[(i, j)]:
                entry_k.append(k)
                for mono, c in b.terms.items():
                    key = base_key
                    for s, e in mono:
                        key += e << shifts[s]
                    keys.append(key)
                    for f in _coef_vector(c, r):
                        scaled = f * denom
                        if scaled.denominator != 1:
                            raise UnpackableError("scaling failed")
                        v = int(scaled)
                        coefs.append(v)
                        if abs(v) > max_abs:
                            max_abs = abs(v)
                entry_start.append(len(keys))
            cell_start.append(len(entry_k))
            cell_size.append(entry_start[cell_start[-1]]
                             - entry_start[cell_start[-2]])

    total_pairs = 0
    row_size = [0] * n
    col_size = [0] * n
    for i in range(n):
        for j in range(n):
            row_size[i] += cell_size[i * n + j]
            col_size[j] += cell_size[i * n + j]
    for i in range(n):
        for j in range(n):
            c0, c1 = cell_start[i * n + j], cell_start[i * n + j + 1]
            for e in range(c0, c1):
                m = entry_k[e]
                nm = entry_start[e + 1] - entry_start[e]
                total_pairs += nm * (row_size[m] + col_size[m])

    return PackedTable(
        n=n, r=r, scale=denom, shifts=tuple(shifts), widths=tuple(widths),
        offs=tuple(offs), base_key=base_key,
        kbits=max((n - 1).bit_length(), 1), split=split, red=red,
        cell_start=tuple(cell_start), entry_k=tuple(entry_k),
        entry_start=tuple(entry_start), keys=tuple(keys),
        coefs=tuple(coefs), max_abs=max_abs, total_pairs=total_pairs)


def _cells(pt: PackedTable) -> list[list[list[tuple[int, list[tuple]]]]]:
    """Cell (i, j) as (k, term list) entries tuned for the hot loop.

    Keys are pre-shifted left by kbits so a product key is a plain sum.
    A term is (shifted key, c0) for r == 1 and (shifted key, c0, c1)
    for r == 2; larger r keeps the coefficient vector as a tuple.
    """
    n, r = pt.n, pt.r
    kbits = pt.kbits
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c0, c1 = pt.cell_start[i * n + j], pt.cell_start[i * n + j + 1]
            entries = []
            for e in range(c0, c1):
                p0, p1 = pt.entry_start[e], pt.entry_start[e + 1]
                terms = []
                for p in range(p0, p1):
                    key = pt.keys[p] << kbits
                    if r <= 2:
                        terms.append((key, *pt.coefs[p * r:(p + 1) * r]))
                    else:
                        terms.append((key, tuple(pt.coefs[p * r:(p + 1) * r])))
                entries.append((pt.entry_k[e], terms))
            row.append(entries)
        out.append(row)
    return out


def _accumulate_1(acc: dict, left, right, sign: int, base: int) -> None:
    """Rational case: acc[product key] += sign * left * right."""
    for m, terms1 in left:
        for k2, terms2 in right[m]:
            for key1, c1 in terms1:
                a = c1 if sign > 0 else -c1
                head = key1 - base + k2
                for key2, c2 in terms2:
                    kk = head + key2
                    v = acc.get(kk)
                    if v is None:
                        acc[kk] = [a * c2]
                    else:
                        v[0] += a * c2


def _accumulate_2(acc: dict, left, right, sign: int, base: int,
                  e0: int, e1: int) -> None:
    """Quadratic field case, with zeta * zeta = e0 + e1 * zeta."""
    for m, terms1 in left:
        for k2, terms2 in right[m]:
            for key1, a0, a1 in terms1:
                if sign < 0:
                    a0 = -a0
                    a1 = -a1
                head = key1 - base + k2
                for key2, b0, b1 in terms2:
                    t = a1 * b1
                    kk = head + key2
                    v = acc.get(kk)
                    if v is None:
                        acc[kk] = [a0 * b0 + e0 * t,
                                   a0 * b1 + a1 * b0 + e1 * t]
                    else:
                        v[0] += a0 * b0 + e0 * t
                        v[1] += a0 * b1 + a1 * b0 + e1 * t


def _accumulate_r(acc: dict, left, right, sign: int, base: int,
                  r: int, red) -> None:
    """General degree: convolution followed by power reduction."""
    for m, terms1 in left:
        for k2, terms2 in right[m]:
            for key1, avec in terms1:
                if sign < 0:
                    avec = tuple(-a for a in avec)
                head = key1 - base + k2
                for key2, bvec in terms2:
                    conv = [0] * (2 * r - 1)
                    for ia, a in enumerate(avec):
                        if a:
                            for ib, b in enumerate(bvec):
                                conv[ia + ib] += a * b
                    out = conv[:r]
                    for p in range(r, 2 * r - 1):
                        c = conv[p]
                        if c:
                            for idx, rc in enumerate(red[p - r]):
                                out[idx] += c * rc
                    kk = head + key2
                    v = acc.get(kk)
                    if v is None:
                        acc[kk] = out
                    else:
                        for idx in range(r):
                            v[idx] += out[idx]


Residual = list[tuple[int, int, tuple[int, ...]]]


def assoc_residuals_py(pt: PackedTable, limit: int = 8
                       ) -> list[tuple[int, int, int, Residual]]:
    """All basis triples whose two association orders disagree.

    Each failure carries the nonzero residual as (target index, packed
    monomial key, coefficient vector) triples; coefficients are scaled
    by scale**2 relative to the original table.
    """
    n, r = pt.n, pt.r
    kbits = pt.kbits
    kmask = (1 << kbits) - 1
    base = pt.base_key << kbits
    cells = _cells(pt)
    cols = [[cells[m][k] for m in range(n)] for k in range(n)]
    failures: list[tuple[int, int, int, Residual]] = []
    if r == 2:
        e0, e1 = pt.red[0]
    for i in range(n):
        ci = cells[i]
        for j in range(n):
            cij = ci[j]
            for k in range(n):
                acc: dict[int, list[int]] = {}
                if r == 1:
                    _accumulate_1(acc, cij, cols[k], 1, base)
                    _accumulate_1(acc, cells[j][k], ci, -1, base)
                elif r == 2:
                    _accumulate_2(acc, cij, cols[k], 1, base, e0, e1)
                    _accumulate_2(acc, cells[j][k], ci, -1, base, e0, e1)
                else:
                    _accumulate_r(acc, cij, cols[k], 1, base, r, pt.red)
                    _accumulate_r(acc, cells[j][k], ci, -1, base, r, pt.red)
                bad: Residual = []
                for kk, vec in acc.items():
                    if any(vec):
                        bad.append((kk & kmask, kk >> kbits, tuple(vec)))
                if bad:
                    failures.append((i, j, k, sorted(bad)))
                    if len(failures) >= limit:
                        return failures
    return failures


def assoc_residuals(pt: PackedTable, limit: int = 8, force_pure: bool = False
                    ) -> list[tuple[int, int, int, Residual]]:
    """Dispatch the associativity check to the compiled kernel if present."""
    if force_pure or _compiled is None or not compiled_fits(pt):
        return assoc_residuals_py(pt, limit)
    from array import array

    mask = (1 << pt.split) - 1
    keys_hi = array("q", (key >> pt.split for key in pt.keys))
    keys_lo = array("Q", (key & mask for key in pt.keys))
    if pt.r == 2:
        e0, e1 = pt.red[0]
    else:
        e0 = e1 = 0
    raw = _compiled.assoc_residuals(
        pt.n, pt.r, pt.kbits, pt.base_key >> pt.split, pt.base_key & mask,
        e0, e1, array("q", pt.cell_start), array("q", pt.entry_k),
        array("q", pt.entry_start), keys_hi, keys_lo,
        array("q", pt.coefs), limit)
    out = []
    for i, j, k, terms in raw:
        res: Residual = [(k2, (hi << pt.split) | lo, tuple(vec))
                         for k2, hi, lo, vec in terms]
        out.append((i, j, k, sorted(res)))
    return out


def compiled_fits(pt: PackedTable) -> bool:
    """Whether keys and accumulators stay within the compiled word sizes.

    The compiled kernel keeps the high key half plus the target index in
    a signed 64-bit word, the low half in an unsigned one, and every
    accumulated coefficient in a signed 64-bit word; it covers base
    degrees 1 and 2 only.  Anything larger falls back to pure Python.
    """
    total_bits = pt.shifts[-1] + pt.widths[-1] if pt.shifts else 0
    hi_bits = max(total_bits - pt.split, 0)
    if hi_bits + pt.kbits > 62 or pt.split > 64:
        return False
    if pt.r > 2:
        return False
    worst = pt.max_abs * pt.max_abs
    if pt.r == 2:
        maxred = max((abs(c) for row in pt.red for c in row), default=0)
        worst *= 2 + maxred
    return worst * max(pt.total_pairs, 1) < (1 << 62)
