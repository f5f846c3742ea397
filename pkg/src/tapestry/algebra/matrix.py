"""Dense square matrices over F_p."""

from __future__ import annotations

import numpy as np

from .field import FieldElem, ModulusMismatch, check_prime, inverse_mod


class SingularMatrix(ArithmeticError):
    pass


def _storage_dtype(p: int):
    return np.uint8 if p <= 251 else np.int64


def det_mod_p(a: np.ndarray, p: int) -> int:
    """Determinant of an integer square array modulo ``p`` (Gaussian elimination)."""
    m = np.array(a, dtype=np.int64) % p
    n = m.shape[0]
    det = 1
    for k in range(n):
        nz = np.nonzero(m[k:, k])[0]
        if nz.size == 0:
            return 0
        piv = k + nz[0]
        if piv != k:
            m[[k, piv]] = m[[piv, k]]
            det = -det
        det = det * int(m[k, k]) % p
        inv = inverse_mod(int(m[k, k]), p)
        factors = m[k + 1:, k] * inv % p
        m[k + 1:] = (m[k + 1:] - factors[:, None] * m[k]) % p
    return det % p


def inv_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([np.array(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for k in range(n):
        nz = np.nonzero(aug[k:, k])[0]
        if nz.size == 0:
            raise SingularMatrix("matrix is not invertible mod %d" % p)
        piv = k + nz[0]
        if piv != k:
            aug[[k, piv]] = aug[[piv, k]]
        aug[k] = aug[k] * inverse_mod(int(aug[k, k]), p) % p
        col = aug[:, k].copy()
        col[k] = 0
        aug = (aug - col[:, None] * aug[k]) % p
    return aug[:, n:]


class FFMatrix:
    """Immutable n x n matrix over F_p.

    >>> a = FFMatrix([[0, 4], [1, 3]], 5)
    >>> a.det()
    1 (mod 5)
    """

    __slots__ = ("p", "n", "_a")

    def __init__(self, rows, p: int):
        p = check_prime(p)
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("FFMatrix needs a non-empty square array, got shape %s" % (arr.shape,))
        arr = (arr % p).astype(_storage_dtype(p))
        arr.setflags(write=False)
        self.p = p
        self.n = arr.shape[0]
        self._a = arr

    @classmethod
    def identity(cls, n: int, p: int) -> FFMatrix:
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def array(self) -> np.ndarray:
        """Entries as a read-only array."""
        return self._a

    def to_int64(self) -> np.ndarray:
        return self._a.astype(np.int64)

    def entries(self) -> tuple:
        """Row-major entries as a tuple of ints."""
        return tuple(int(v) for v in self._a.ravel())

    def tolist(self) -> list:
        return [[int(v) for v in row] for row in self._a]

    def _check(self, other: FFMatrix):
        if not isinstance(other, FFMatrix):
            raise TypeError("expected FFMatrix, got %s" % type(other).__name__)
        if other.p != self.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __matmul__(self, other: FFMatrix) -> FFMatrix:
        self._check(other)
        return FFMatrix(self.to_int64() @ other.to_int64(), self.p)

    __mul__ = __matmul__

    def __pow__(self, k: int) -> FFMatrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = FFMatrix.identity(self.n, self.p)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> FieldElem:
        return FieldElem(det_mod_p(self._a, self.p), self.p)

    def trace(self) -> FieldElem:
        return FieldElem(int(np.trace(self.to_int64())), self.p)

    def inverse(self) -> FFMatrix:
        return FFMatrix(inv_mod_p(self._a, self.p), self.p)

    def conjugate_by(self, g: FFMatrix) -> FFMatrix:
        """Return g * self * g^-1."""
        return g @ self @ g.inverse()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.eye(self.n, dtype=self._a.dtype)))

    def __eq__(self, other):
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self._a, other._a)

    def __lt__(self, other: FFMatrix) -> bool:
        return self.entries() < other.entries()

    def __hash__(self):
        return hash((self.p, self._a.tobytes()))

    def __repr__(self):
        return "FFMatrix(%s, p=%d)" % (self.tolist(), self.p)


def matrix_arithmetic(a: FFMatrix, b: FFMatrix | None = None, op: str = "mul"):
    """Single entry point for ``mul``, ``inv``, ``det`` and ``trace``.

    ``inv``, ``det`` and ``trace`` ignore ``b``.
    """
    if op == "mul":
        if b is None:
            raise ValueError("mul needs two operands")
        return a @ b
    if op == "inv":
        return a.inverse()
    if op == "det":
        return a.det()
    if op == "trace":
        return a.trace()
    raise ValueError("unknown op %r" % op)
