"""SL(2, F_p) as an indexed finite group.

Elements are numbered 0..N-1 in lexicographic order of their row-major
entries (a, b, c, d), so comparing indices is the same as comparing matrices
lexicographically.  Multiplication, inversion and conjugation are lookup
tables; the representation search works entirely on these indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .field import check_prime
from .matrix import FFMatrix


def _all_sl2_entries(p: int) -> np.ndarray:
    r = np.arange(p)
    a, b, c, d = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
    keep = (a * d - b * c) % p == 1
    return np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1).astype(np.int64)


def sl2_elements(p: int) -> list[FFMatrix]:
    """Every 2x2 matrix over F_p with determinant 1, in lexicographic order."""
    p = check_prime(p)
    return [FFMatrix(e.reshape(2, 2), p) for e in _all_sl2_entries(p)]


#: Largest group for which the quadratic-size lookup tables are built
#: (p = 19 gives 6840 elements, p = 23 already 12144).
MAX_TABLE_ORDER = 8000


class TableTooLarge(MemoryError):
    pass


class SL2:
    """Lookup tables for SL(2, F_p).  Build with :func:`sl2_group` to share instances."""

    def __init__(self, p: int):
        p = check_prime(p)
        if p * (p * p - 1) > MAX_TABLE_ORDER:
            raise TableTooLarge("SL(2, F_%d) has %d elements; lookup tables stop at %d"
                                % (p, p * (p * p - 1), MAX_TABLE_ORDER))
        self.p = p
        E = _all_sl2_entries(p)
        self.entries = E
        self.order = len(E)
        self._lookup = np.full(p ** 4, -1, dtype=np.int64)
        self._lookup[self._keys(E)] = np.arange(self.order)

        a, b, c, d = (E[:, i] for i in range(4))
        idx_dtype = np.int16 if self.order < 2 ** 15 else np.int32
        self.mul = np.empty((self.order, self.order), dtype=idx_dtype)
        for s in range(0, self.order, 256):
            sl = slice(s, s + 256)
            prod = np.stack([
                a[sl, None] * a[None, :] + b[sl, None] * c[None, :],
                a[sl, None] * b[None, :] + b[sl, None] * d[None, :],
                c[sl, None] * a[None, :] + d[sl, None] * c[None, :],
                c[sl, None] * b[None, :] + d[sl, None] * d[None, :],
            ], axis=-1) % p
            self.mul[sl] = self._lookup[self._keys(prod)]
        self.inv = self._lookup[self._keys(np.stack([d, -b % p, -c % p, a], axis=1))].astype(idx_dtype)
        self.identity = int(self._lookup[self._keys(np.array([1, 0, 0, 1]))])
        self.traces = (a + d) % p
        for t in (self.mul, self.inv, self.traces):
            t.setflags(write=False)
        self._conj = {}

    def _keys(self, e: np.ndarray) -> np.ndarray:
        p = self.p
        return ((e[..., 0] * p + e[..., 1]) * p + e[..., 2]) * p + e[..., 3]

    def index(self, m) -> int:
        """Index of a matrix given as FFMatrix or nested list."""
        if isinstance(m, FFMatrix):
            if m.p != self.p or m.n != 2:
                raise ValueError("matrix is not in SL(2, F_%d)" % self.p)
            e = np.array(m.entries(), dtype=np.int64)
        else:
            e = np.array(m, dtype=np.int64).ravel() % self.p
        i = int(self._lookup[self._keys(e)])
        if i < 0:
            raise ValueError("matrix %s has determinant != 1 mod %d" % (e.tolist(), self.p))
        return i

    def matrix(self, i: int) -> FFMatrix:
        return FFMatrix(self.entries[int(i)].reshape(2, 2), self.p)

    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        k = 0
        while (orders == 0).any():
            k += 1
            cur = self.mul[cur, np.arange(self.order)]
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
        return orders

    def conjugation_table(self, over: str = "SL") -> np.ndarray:
        """Table ``T`` with ``T[g, x] = g x g^-1``.

        ``over="SL"`` has one row per group element.  ``over="GL"`` appends
        the rows for ``D s`` where ``D = diag(nu, 1)`` with ``nu`` a
        non-square, which together realise every GL(2, F_p) conjugation.
        """
        if over in self._conj:
            return self._conj[over]
        if over == "SL":
            g = np.arange(self.order)
            t = self.mul[self.mul[g[:, None], g[None, :]], self.inv[g][:, None]]
        elif over == "GL":
            sl = self.conjugation_table("SL")
            nu = _non_square(self.p)
            if nu is None:
                t = sl
            else:
                # diag(nu,1) [[a,b],[c,d]] diag(1/nu,1) = [[a, nu b], [c/nu, d]]
                E = self.entries
                inv_nu = pow(nu, -1, self.p)
                moved = np.stack([E[:, 0], E[:, 1] * nu % self.p, E[:, 2] * inv_nu % self.p, E[:, 3]], axis=1)
                d_conj = self._lookup[self._keys(moved)]
                t = np.concatenate([sl, d_conj[sl]], axis=0)
        else:
            raise ValueError("over must be 'SL' or 'GL'")
        t = np.ascontiguousarray(t, dtype=self.mul.dtype)
        t.setflags(write=False)
        self._conj[over] = t
        return t

    def evaluate(self, word, images: np.ndarray) -> np.ndarray:
        """Evaluate a word on a batch of image tuples.

        ``images`` has shape (R, k) of element indices; ``word`` is a sequence
        of ``(generator, exponent)`` pairs.  Returns shape (R,).
        """
        out = np.full(images.shape[0], self.identity, dtype=self.mul.dtype)
        for gen, exp in word:
            col = images[:, gen]
            step = col if exp > 0 else self.inv[col]
            for _ in range(abs(exp)):
                out = self.mul[out, step]
        return out


def _non_square(p: int):
    if p == 2:
        return None
    squares = {x * x % p for x in range(1, p)}
    return next(x for x in range(2, p) if x not in squares)


@lru_cache(maxsize=16)
def sl2_group(p: int) -> SL2:
    return SL2(p)


@dataclass(frozen=True)
class ConjClass:
    representative: FFMatrix
    rep_index: int
    size: int
    trace: int
    order: int
    members: tuple = field(repr=False)


@dataclass(frozen=True)
class ConjClassTable:
    """Partition of SL(2, F_p) into conjugacy classes.

    ``class_of[i]`` is the class number of element ``i`` and ``witness[i]``
    an element ``g`` with ``element(i) = g * rep * g^-1``.
    """

    p: int
    classes: tuple
    class_of: np.ndarray = field(repr=False)
    witness: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.classes)

    def class_index(self, m) -> int:
        return int(self.class_of[sl2_group(self.p).index(m)])


@lru_cache(maxsize=16)
def conjugacy_partition(p: int) -> ConjClassTable:
    p = check_prime(p)
    G = sl2_group(p)
    conj = G.conjugation_table("SL")
    orders = G.element_orders()
    class_of = np.full(G.order, -1, dtype=np.int64)
    witness = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for x in range(G.order):
        if class_of[x] >= 0:
            continue
        orbit = conj[:, x]
        members = np.unique(orbit)
        class_of[members] = len(classes)
        # first conjugator reaching each member
        first = np.full(G.order, -1, dtype=np.int64)
        first[orbit[::-1]] = np.arange(G.order)[::-1]
        witness[members] = first[members]
        classes.append(ConjClass(
            representative=G.matrix(x),
            rep_index=x,
            size=len(members),
            trace=int(G.traces[x]),
            order=int(orders[x]),
            members=tuple(int(m) for m in members),
        ))
    class_of.setflags(write=False)
    witness.setflags(write=False)
    return ConjClassTable(p, tuple(classes), class_of, witness)
