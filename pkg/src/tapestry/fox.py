"""Fox free differential calculus and its image in matrices over F_p[t, t^-1].

A word ``w`` is sent to ``t^(exponent sum of w) * rho(w)``, i.e. every
generator is a meridian mapping to ``t`` under abelianization.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from .algebra import LaurentMatrix
from .presentation import FreeWord, GroupPresentation


class GroupRingElem:
    """Finite Z-linear combination of free-group words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, FreeWord):
            terms = {terms: 1}
        clean = {}
        for w, c in (terms or {}).items():
            if c:
                clean[w] = clean.get(w, 0) + int(c)
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def one(cls) -> GroupRingElem:
        return cls({FreeWord(): 1})

    def __add__(self, other: GroupRingElem) -> GroupRingElem:
        out = defaultdict(int, self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return GroupRingElem(out)

    def __neg__(self):
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self.terms.items()})
        if isinstance(other, FreeWord):
            other = GroupRingElem(other)
        out = defaultdict(int)
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out[u * v] += a * b
        return GroupRingElem(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, FreeWord):
            return GroupRingElem(other) * self
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, FreeWord):
            other = GroupRingElem(other)
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def substitute(self, images) -> GroupRingElem:
        out = defaultdict(int)
        for w, c in self.terms.items():
            out[w.substitute(images)] += c
        return GroupRingElem(out)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%d*%s" % (c, list(w.letters)) for w, c in sorted(self.terms.items()))


def fox_derivative(w: FreeWord, j: int) -> GroupRingElem:
    """d w / d x_j, by one left-to-right scan over the syllables of ``w``."""
    out = defaultdict(int)
    prefix = []
    for gen, exp in w.letters:
        if gen == j:
            if exp > 0:
                # d(x^k) = 1 + x + ... + x^(k-1)
                for i in range(exp):
                    out[FreeWord(prefix + [(gen, i)])] += 1
            else:
                # d(x^-k) = -(x^-1 + ... + x^-k)
                for i in range(1, -exp + 1):
                    out[FreeWord(prefix + [(gen, -i)])] -= 1
        prefix.append((gen, exp))
    return GroupRingElem(out)


def fox_jacobian(g: GroupPresentation) -> list:
    """``J[i][j] = d r_i / d x_j`` for every relator and generator."""
    return [[fox_derivative(r, j) for j in range(g.num_generators)] for r in g.relators]


def _images_of(rho):
    mats = getattr(rho, "images", rho)
    if isinstance(mats, dict):
        k = max(mats) + 1 if mats else 0
        mats = [mats.get(i) for i in range(k)]
    return list(mats)


class WordEvaluator:
    """Evaluates free words on matrices over F_p, caching every prefix it sees."""

    def __init__(self, rho, p: int = None):
        mats = _images_of(rho)
        if p is None:
            p = next(m.p for m in mats if m is not None)
        self.p = p
        self.n = next(m.n for m in mats if m is not None)
        self._gens = [None if m is None else m.to_int64() for m in mats]
        self._invs = [None if m is None else m.inverse().to_int64() for m in mats]
        self._cache = {(): np.eye(self.n, dtype=np.int64)}

    def _letter(self, gen: int, exp: int) -> np.ndarray:
        if gen >= len(self._gens) or self._gens[gen] is None:
            raise KeyError("generator %d has no assigned matrix" % gen)
        base = self._gens[gen] if exp > 0 else self._invs[gen]
        out = np.eye(self.n, dtype=np.int64)
        for _ in range(abs(exp)):
            out = out @ base % self.p
        return out

    def __call__(self, w: FreeWord) -> np.ndarray:
        letters = w.letters
        k = len(letters)
        while letters[:k] not in self._cache:
            k -= 1
        val = self._cache[letters[:k]]
        for i in range(k, len(letters)):
            val = val @ self._letter(*letters[i]) % self.p
            self._cache[letters[:i + 1]] = val
        return val


def phi_evaluate(e: GroupRingElem, rho, p: int = None, evaluator: WordEvaluator = None) -> LaurentMatrix:
    """Image of a group-ring element: each word w goes to t^(expsum w) * rho(w)."""
    ev = evaluator or WordEvaluator(rho, p)
    p = ev.p
    if not e.terms:
        return LaurentMatrix(np.zeros((ev.n, ev.n, 1), dtype=np.int64), p)
    exps = {w: w.exponent_sum() for w in e.terms}
    lo = min(exps.values())
    arr = np.zeros((ev.n, ev.n, max(exps.values()) - lo + 1), dtype=np.int64)
    for w, c in e.terms.items():
        arr[:, :, exps[w] - lo] += (c % p) * ev(w)
    return LaurentMatrix(arr % p, p, lo)
