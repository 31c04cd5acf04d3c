"""Exact linear algebra over the coefficient rings.

Everything operates on plain lists of lists.  Entries may be any elements
supporting ``+ - * /`` and truthiness-as-nonzero: Fractions, base field
elements, or :class:`~hopfkit.scalar.Scalar` values (constant Scalars over a
base field divide exactly, so field elimination applies to them directly).
``zero`` and ``one`` samples are passed explicitly rather than inferred.

Three determinant/rank strategies coexist:

* Gauss-Jordan elimination over a field (:func:`rref`, :func:`kernel_basis`,
  :func:`solve`) -- the workhorse for coinvariants and small systems;
* the Berkowitz algorithm (:func:`det_berkowitz`) -- division-free, so it
  computes determinants over any commutative ring (module-basis matrices
  over a base algebra, for instance);
* modular certificates (:func:`modp_invertibility_certificate`) -- reduce a
  matrix over the rationals or a cyclotomic field modulo a well-chosen prime
  and eliminate there.  A nonzero determinant mod p proves a nonzero exact
  determinant; the inconclusive direction falls back to exact elimination.

Integer lattice work (cocycle coboundary solving, abelian invariants) goes
through the Smith normal form (:func:`smith_normal_form`,
:func:`solve_congruence`, :func:`abelian_invariants`).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .scalar import CyclotomicField, RatFunc, Ring, Scalar, _CycloBase

__all__ = [
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "det_berkowitz",
    "smith_normal_form",
    "abelian_invariants",
    "solve_congruence",
    "modp_rank",
    "modp_invertibility_certificate",
    "mat_mul",
    "mat_vec",
    "mat_identity",
    "transpose",
]


# ---------------------------------------------------------------------------
# Field elimination
# ---------------------------------------------------------------------------

def rref(matrix: Sequence[Sequence], zero, one):
    """Reduced row echelon form.  Returns (rows, pivot_columns).

    Entries must support exact division by any nonzero entry.
    """
    A = [list(row) for row in matrix]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        prow = A[r]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank(matrix, zero, one) -> int:
    return len(rref(matrix, zero, one)[1])


def kernel_basis(matrix, zero, one, ncols: int | None = None):
    """A basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[one if j == i else zero for j in range(ncols)]
                for i in range(ncols)]
    R, pivots = rref(matrix, zero, one)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for ri, c in enumerate(pivots):
            if R[ri][f]:
                v[c] = zero - R[ri][f]
        basis.append(v)
    return basis


def solve(matrix, rhs, zero, one):
    """One solution of A x = b over a field, or None if inconsistent."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    R, pivots = rref(aug, zero, one)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for ri, c in enumerate(pivots):
        x[c] = R[ri][ncols]
    return x


# ---------------------------------------------------------------------------
# Division-free determinant (Berkowitz)
# ---------------------------------------------------------------------------

def det_berkowitz(matrix, zero, one):
    """Determinant over any commutative ring, no divisions performed."""
    n = len(matrix)
    if n == 0:
        return one
    # vec holds the characteristic polynomial of the leading principal
    # submatrix, coefficients from x^k down to the constant term
    vec = [one, zero - matrix[0][0]]
    for k in range(1, n):
        a = matrix[k][k]
        row = matrix[k][:k]
        col = [matrix[i][k] for i in range(k)]
        sub = [matrix[i][:k] for i in range(k)]
        # s_j = row . sub^j . col for j = 0 .. k-1
        s = []
        v = col
        for j in range(k):
            acc = zero
            for x, y in zip(row, v):
                if x and y:
                    acc = acc + x * y
            s.append(acc)
            if j < k - 1:
                v = mat_vec(sub, v, zero)
        toep = [one, zero - a] + [zero - x for x in s]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, k) + 1):
                t = toep[i - j]
                if t and vec[j]:
                    acc = acc + t * vec[j]
            new.append(acc)
        vec = new
    det = vec[-1]
    return det if n % 2 == 0 else zero - det


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """(D, U, V) with U A V = D diagonal, U and V unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    D = [list(map(int, row)) for row in matrix]
    m = len(D)
    n = len(D[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, c):
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def addmul_col(dst, src, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    def diagonalize():
        t = 0
        while t < min(m, n):
            piv = next(((i, j) for i in range(t, m) for j in range(t, n)
                        if D[i][j]), None)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            while True:
                again = False
                for i in range(t + 1, m):
                    if D[i][t]:
                        addmul_row(i, t, -(D[i][t] // D[t][t]))
                        if D[i][t]:
                            swap_rows(t, i)
                            again = True
                if again:
                    continue
                for j in range(t + 1, n):
                    if D[t][j]:
                        addmul_col(j, t, -(D[t][j] // D[t][t]))
                        if D[t][j]:
                            swap_cols(t, j)
                            again = True
                if not again:
                    break
            if D[t][t] < 0:
                negate_row(t)
            t += 1

    diagonalize()
    # enforce the divisibility chain d_i | d_{i+1}: fold the offending column
    # in and rediagonalize; the leading entries shrink, so this terminates
    k = min(m, n)
    for _safety in range(10000):
        bad = next((i for i in range(k - 1)
                    if D[i][i] and D[i + 1][i + 1] % D[i][i] != 0), None)
        if bad is None:
            return D, U, V
        addmul_col(bad, bad + 1, 1)
        diagonalize()
    raise ArithmeticError("Smith normal form did not stabilize")


def abelian_invariants(relations: Sequence[Sequence[int]], ngens: int):
    """Elementary divisors of Z^ngens / <relation rows>: (torsion, free_rank).

    torsion is the list of invariant factors > 1, each dividing the next.
    """
    if not relations:
        return [], ngens
    padded = [list(row) + [0] * (ngens - len(row)) for row in relations]
    D, _U, _V = smith_normal_form(padded)
    diag = [D[i][i] for i in range(min(len(padded), ngens))]
    torsion = [d for d in diag if d > 1]
    nz = sum(1 for d in diag if d != 0)
    return torsion, ngens - nz


def solve_congruence(matrix: Sequence[Sequence[int]], rhs: Sequence[int], mod: int):
    """Solve A x = b (mod m) over the integers; returns x or None."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    D, U, V = smith_normal_form(matrix)
    c = [sum(U[i][j] * rhs[j] for j in range(m)) % mod for i in range(m)]
    z = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        ci = c[i]
        if d % mod == 0:
            if ci % mod != 0:
                return None
            continue
        g = gcd(d, mod)
        if ci % g != 0:
            return None
        z[i] = (ci // g) * pow(d // g, -1, mod // g) % (mod // g)
    return [sum(V[i][j] * z[j] for j in range(n)) % mod for i in range(n)]


# ---------------------------------------------------------------------------
# Modular certificates
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _prime_one_mod(d: int, start: int) -> int:
    """The least prime p >= start with p = 1 (mod d)."""
    p = start + (-(start - 1)) % d
    while not _is_prime(p):
        p += d
    return p


def _root_of_unity_mod(d: int, p: int) -> int:
    """An element of exact multiplicative order d in F_p (requires d | p-1)."""
    proper = [d // q for q in range(2, d + 1) if d % q == 0 and _is_prime(q)]
    rng = random.Random(0xC0FFEE ^ p)
    while True:
        a = rng.randrange(2, p - 1)
        x = pow(a, (p - 1) // d, p)
        if x != 1 and all(pow(x, e, p) != 1 for e in proper):
            return x


def scalar_mod_p(x: Scalar, p: int, q_image: int | None) -> int:
    """Reduce a constant Scalar modulo p; raises ZeroDivisionError if a
    coefficient denominator vanishes mod p (caller retries another prime)."""
    if not x.is_constant():
        raise ValueError("only constant scalars reduce mod p")
    c = x.constant_term()
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, p) % p
    if isinstance(c, _CycloBase):
        acc = 0
        qk = 1
        for coef in c.coeffs:
            if coef:
                acc += coef.numerator * pow(coef.denominator, -1, p) % p * qk
            qk = qk * q_image % p
        return acc % p
    if isinstance(c, RatFunc):
        def ev(poly):
            acc = 0
            for coef in reversed(poly):
                acc = (acc * q_image + coef.numerator
                       * pow(coef.denominator, -1, p)) % p
            return acc
        den = ev(c.den)
        if den == 0:
            raise ZeroDivisionError
        return ev(c.num) * pow(den, -1, p) % p
    raise TypeError(f"cannot reduce {c!r} mod p")


def _modp_rank_python(rows: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in rows]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        prow = A[r]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], prow)]
        r += 1
        if r == nrows:
            break
    return r


def _modp_rank_numpy(rows, p: int):
    try:
        import numpy as np
    except ImportError:
        return None
    A = np.array(rows, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        if np.any(col):
            A = (A - np.outer(col, A[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def modp_rank(rows: list[list[int]], p: int) -> int:
    """Rank of an integer matrix mod p; vectorized when numpy is present."""
    if p >= 1 << 31:
        raise ValueError("prime too large for the modular kernels")
    if len(rows) >= 64:
        r = _modp_rank_numpy(rows, p)
        if r is not None:
            return r
    return _modp_rank_python(rows, p)


def modp_invertibility_certificate(matrix: Sequence[Sequence[Scalar]],
                                   ring: Ring, attempts: int = 3):
    """True if some prime reduction proves the square matrix invertible.

    Returns True (certified: determinant nonzero over the exact field) or
    None (inconclusive; the caller must decide exactly).  Formal q cannot be
    certified this way.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    base = ring.spec.base
    if base == "q":
        return None
    d = base[1] if isinstance(base, tuple) else 1
    p = _prime_one_mod(d, 1 << 20)
    for _ in range(attempts):
        q_image = _root_of_unity_mod(d, p) if d > 1 else None
        try:
            rows = [[scalar_mod_p(x, p, q_image) for x in row] for row in matrix]
        except ZeroDivisionError:
            p = _prime_one_mod(d, p + 1)
            continue
        if modp_rank(rows, p) == n:
            return True
        p = _prime_one_mod(d, p + 1)
    return None


# ---------------------------------------------------------------------------
# Small matrix helpers
# ---------------------------------------------------------------------------

def mat_mul(A, B, zero):
    out = []
    for row in A:
        orow = []
        for j in range(len(B[0])):
            acc = zero
            for k, x in enumerate(row):
                if x and B[k][j]:
                    acc = acc + x * B[k][j]
            orow.append(acc)
        out.append(orow)
    return out


def mat_vec(A, v, zero):
    out = []
    for row in A:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]
