"""Square matrices over F_p[t, t^-1] and their determinants."""

from __future__ import annotations

import numpy as np

from .field import check_prime, inverse_mod
from .laurent import LaurentPoly


class LaurentMatrix:
    """Matrix of Laurent polynomials stored as one coefficient array.

    ``coeffs[i, j, d]`` is the coefficient of ``t^(lo + d)`` in entry (i, j).
    Every entry shares the same ``lo``, so the array is a polynomial matrix
    times ``t^lo``.
    """

    def __init__(self, coeffs: np.ndarray, p: int, lo: int = 0):
        p = check_prime(p)
        coeffs = np.asarray(coeffs, dtype=np.int64) % p
        if coeffs.ndim != 3:
            raise ValueError("coefficient array must have shape (rows, cols, degree)")
        self.p = p
        self.coeffs, self.lo = _trim_array(coeffs, lo)

    @classmethod
    def from_entries(cls, rows, p: int) -> LaurentMatrix:
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        polys = [f for r in rows for f in r if not f.is_zero()]
        lo = min((f.lo for f in polys), default=0)
        hi = max((f.hi for f in polys), default=0)
        arr = np.zeros((nr, nc, hi - lo + 1), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, f in enumerate(r):
                if f.p != p:
                    raise ValueError("modulus mismatch in entry (%d, %d)" % (i, j))
                if f.coeffs:
                    arr[i, j, f.lo - lo:f.lo - lo + len(f.coeffs)] = f.coeffs
        return cls(arr, p, lo)

    @classmethod
    def identity(cls, n: int, p: int) -> LaurentMatrix:
        return cls(np.eye(n, dtype=np.int64)[:, :, None], p)

    @classmethod
    def from_constant(cls, m, p: int, exponent: int = 0) -> LaurentMatrix:
        """``t^exponent * m`` for an integer matrix ``m``."""
        return cls(np.asarray(m, dtype=np.int64)[:, :, None], p, exponent)

    @property
    def shape(self):
        return self.coeffs.shape[:2]

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return LaurentPoly(self.coeffs[i, j], self.p, self.lo)

    def entries(self):
        r, c = self.shape
        return [[self[i, j] for j in range(c)] for i in range(r)]

    def _aligned(self, other):
        lo = min(self.lo, other.lo)
        d = max(self.lo + self.coeffs.shape[2], other.lo + other.coeffs.shape[2]) - lo
        a = np.zeros(self.shape + (d,), dtype=np.int64)
        b = np.zeros(other.shape + (d,), dtype=np.int64)
        a[:, :, self.lo - lo:self.lo - lo + self.coeffs.shape[2]] = self.coeffs
        b[:, :, other.lo - lo:other.lo - lo + other.coeffs.shape[2]] = other.coeffs
        return a, b, lo

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        a, b, lo = self._aligned(other)
        return LaurentMatrix(a + b, self.p, lo)

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        a, b, lo = self._aligned(other)
        return LaurentMatrix(a - b, self.p, lo)

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        da, db = self.coeffs.shape[2], other.coeffs.shape[2]
        out = np.zeros((self.shape[0], other.shape[1], da + db - 1), dtype=np.int64)
        for k in range(da):
            out[:, :, k:k + db] += np.einsum("ij,jkd->ikd", self.coeffs[:, :, k], other.coeffs) % self.p
        return LaurentMatrix(out, self.p, self.lo + other.lo)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.p == other.p and self.shape == other.shape and self.lo == other.lo
                and np.array_equal(self.coeffs, other.coeffs))

    def __repr__(self):
        return "LaurentMatrix(%s, p=%d)" % ([[str(f) for f in row] for row in self.entries()], self.p)


def _trim_array(a: np.ndarray, lo: int):
    nz = np.nonzero(a.reshape(-1, a.shape[2]).any(axis=0))[0] if a.size else np.array([], dtype=int)
    if nz.size == 0:
        return np.zeros(a.shape[:2] + (1,), dtype=np.int64), 0
    return np.ascontiguousarray(a[:, :, nz[0]:nz[-1] + 1]), lo + int(nz[0])


def _poly_mul_broadcast(a: np.ndarray, b: np.ndarray, p: int, out_len: int) -> np.ndarray:
    """Coefficientwise product of broadcastable polynomial arrays (last axis = degree)."""
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = np.zeros(shape + (out_len,), dtype=np.int64)
    db = b.shape[-1]
    for k in range(a.shape[-1]):
        ak = a[..., k:k + 1]
        if not ak.any():
            continue
        n = min(db, out_len - k)
        if n <= 0:
            break
        out[..., k:k + n] += ak * b[..., :n]
        out[..., k:k + n] %= p
    return out


def _exact_div(num: np.ndarray, d: np.ndarray, p: int) -> np.ndarray:
    """Divide every polynomial in ``num`` by the single polynomial ``d``; must be exact."""
    nz = np.nonzero(d)[0]
    e = int(nz[-1])
    lead_inv = inverse_mod(int(d[e]), p)
    num = num.copy()
    q = np.zeros_like(num)
    for k in range(num.shape[-1] - 1, e - 1, -1):
        c = num[..., k] * lead_inv % p
        if not c.any():
            continue
        q[..., k - e] = c
        num[..., k - e:k + 1] = (num[..., k - e:k + 1] - c[..., None] * d[:e + 1]) % p
    if num[..., :e].any():
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def bareiss_det(a: np.ndarray, p: int) -> np.ndarray:
    """Determinant of a polynomial matrix over F_p[t] by fraction-free elimination.

    ``a`` has shape (n, n, D); returns ascending coefficients.
    """
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return np.array([1], dtype=np.int64)
    row_deg = [_degree(a[i]) for i in range(n)]
    bound = sum(max(d, 0) for d in row_deg) + 1
    m = np.zeros((n, n, bound), dtype=np.int64)
    m[:, :, :min(bound, a.shape[2])] = a[:, :, :bound]
    sign = 1
    prev = np.array([1], dtype=np.int64)
    for k in range(n - 1):
        col = m[k:, k].any(axis=1)
        if not col[0]:
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                return np.array([0], dtype=np.int64)
            piv = k + int(nz[0])
            m[[k, piv]] = m[[piv, k]]
            sign = -sign
        pivot = m[k, k]
        rest = m[k + 1:, k + 1:]
        # products can exceed the minor-degree bound before the exact division
        wide = 2 * bound
        num = _poly_mul_broadcast(pivot[None, None, :], rest, p, wide)
        num = (num - _poly_mul_broadcast(m[k + 1:, k][:, None, :], m[k, k + 1:][None, :, :], p, wide)) % p
        q = _exact_div(num, prev, p)
        m[k + 1:, k + 1:] = q[..., :bound]
        m[k + 1:, k] = 0
        prev = pivot.copy()
    return sign * m[n - 1, n - 1] % p


def _degree(f: np.ndarray) -> int:
    nz = np.nonzero(f.reshape(-1, f.shape[-1]).any(axis=0))[0]
    return int(nz[-1]) if nz.size else -1


def polymatrix_det(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant over F_p[t, t^-1]."""
    r, c = m.shape
    if r != c:
        raise ValueError("determinant of a non-square %dx%d matrix" % (r, c))
    coeffs = bareiss_det(m.coeffs, m.p)
    return LaurentPoly(coeffs, m.p, r * m.lo)


def cofactor_det(entries) -> LaurentPoly:
    """Laplace expansion along the first row.  Exponential; test oracle only."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    p = entries[0][0].p
    total = LaurentPoly.zero(p)
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entries[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
