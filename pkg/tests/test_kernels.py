"""Tests for the packed integer product-table kernels."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfkit import generic, kernels
from hopfkit.kernels import (
    UnpackableError,
    assoc_residuals,
    assoc_residuals_py,
    compiled_available,
    compiled_fits,
    pack_table,
)
from hopfkit.scalar import Scalar, ring_make


def test_pack_round_trips_monomials():
    cp = generic.taft_crossed(2)
    pt = pack_table(cp.dim, cp.ring, cp.table)
    pos = 0
    entry = 0
    for i in range(cp.dim):
        for j in range(cp.dim):
            for k, b in cp.table[(i, j)]:
                assert pt.entry_k[entry] == k
                monos = set()
                for _mono in b.terms:
                    monos.add(pt.decode_mono(pt.keys[pos]))
                    pos += 1
                assert monos == set(b.terms)
                entry += 1
    assert pos == len(pt.keys)


def test_product_key_is_addition():
    cp = generic.small_uq_crossed(4)
    pt = pack_table(cp.dim, cp.ring, cp.table)
    keys = list(pt.keys)[:20]
    for k1 in keys:
        for k2 in keys:
            merged: dict[int, int] = {}
            for s, e in pt.decode_mono(k1):
                merged[s] = merged.get(s, 0) + e
            for s, e in pt.decode_mono(k2):
                merged[s] = merged.get(s, 0) + e
            expected = tuple(sorted((s, e) for s, e in merged.items() if e))
            assert pt.decode_mono(k1 + k2 - pt.base_key) == expected


def test_formal_base_declines_packing():
    ring = ring_make("base=q; params=t0!")
    table = {(0, 0): ((0, ring.one),)}
    with pytest.raises(UnpackableError):
        pack_table(1, ring, table)


def test_huge_coefficients_fall_back_to_pure():
    ring = ring_make("base=rationals; params=t0!")
    big = ring.scalar(1 << 40)
    table = {(0, 0): ((0, big),)}
    pt = pack_table(1, ring, table)
    assert not compiled_fits(pt)
    assert assoc_residuals(pt) == []


def test_corruption_is_detected_identically_by_both_engines():
    cp = generic.taft_crossed(2)
    bad = dict(cp.table)
    entries = list(bad[(1, 1)])
    k0, b0 = entries[0]
    entries[0] = (k0, b0 + b0)
    bad[(1, 1)] = tuple(entries)
    pt = pack_table(cp.dim, cp.ring, bad)
    pure = assoc_residuals_py(pt, limit=5)
    assert pure
    if compiled_available() and compiled_fits(pt):
        assert assoc_residuals(pt, limit=5) == pure


def test_compiled_agrees_on_clean_tables():
    if not compiled_available():
        pytest.skip("compiled kernel not built")
    for cp in (generic.taft_crossed(2), generic.small_uq_crossed(4)):
        pt = pack_table(cp.dim, cp.ring, cp.table)
        assert compiled_fits(pt)
        assert assoc_residuals(pt) == assoc_residuals_py(pt) == []


def _scalar_triple_residual(ring, table, n, i, j, k):
    acc = {}
    for m, c in table[(i, j)]:
        for k2, c2 in table[(m, k)]:
            acc[k2] = acc.get(k2, ring.zero) + c * c2
    for m, c in table[(j, k)]:
        for k2, c2 in table[(i, m)]:
            acc[k2] = acc.get(k2, ring.zero) - c * c2
    return {k2: v for k2, v in acc.items() if not v.is_zero()}


_coeff = st.integers(min_value=-3, max_value=3)
_exp0 = st.integers(min_value=-2, max_value=2)
_exp1 = st.integers(min_value=0, max_value=2)


@st.composite
def _random_tables(draw):
    ring = ring_make("base=rationals; params=t0!,t1")
    n = 2
    table = {}
    for i in range(n):
        for j in range(n):
            entries = []
            for k in range(n):
                terms = {}
                for _ in range(draw(st.integers(min_value=0, max_value=2))):
                    c = draw(_coeff)
                    if c == 0:
                        continue
                    e0, e1 = draw(_exp0), draw(_exp1)
                    mono = tuple(p for p in ((0, e0), (1, e1)) if p[1])
                    terms[mono] = terms.get(mono, Fraction(0)) + Fraction(c)
                terms = {m: c for m, c in terms.items() if c}
                if terms:
                    entries.append((k, Scalar(ring, terms)))
            table[(i, j)] = tuple(entries)
    return ring, n, table


@settings(max_examples=60, deadline=None)
@given(_random_tables())
def test_packed_residuals_match_symbolic_residuals(data):
    ring, n, table = data
    pt = pack_table(n, ring, table)
    packed = assoc_residuals_py(pt, limit=n ** 3 + 1)
    failing = {(i, j, k): res for i, j, k, res in packed}
    denom = Fraction(pt.scale * pt.scale)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                expected = _scalar_triple_residual(ring, table, n, i, j, k)
                got = failing.get((i, j, k))
                if not expected:
                    assert got is None
                    continue
                assert got is not None
                decoded: dict[int, dict] = {}
                for k2, key, vec in got:
                    mono = pt.decode_mono(key)
                    decoded.setdefault(k2, {})[mono] = Fraction(vec[0]) / denom
                rebuilt = {k2: Scalar(ring, terms)
                           for k2, terms in decoded.items()}
                assert set(rebuilt) == set(expected)
                for k2 in expected:
                    assert (rebuilt[k2] - expected[k2]).is_zero()
