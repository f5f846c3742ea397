"""Laurent polynomials over F_p.

A :class:`LaurentPoly` is stored densely as a lowest exponent plus a tuple of
coefficients with nonzero first and last entries.  Twisted Alexander
polynomials are only defined up to units ``c * t^k``; :meth:`canonical`
picks the representative with lowest exponent 0 and leading coefficient 1.
"""

from __future__ import annotations

import re

import numpy as np

from .field import ModulusMismatch, check_prime, inverse_mod


def _trim(coeffs, lo):
    coeffs = list(coeffs)
    start = 0
    while start < len(coeffs) and coeffs[start] == 0:
        start += 1
    if start == len(coeffs):
        return (), 0
    end = len(coeffs)
    while coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[start:end]), lo + start


def poly_divmod(f, d, p):
    """Long division of coefficient lists (ascending) over F_p.

    Returns ``(quotient, remainder)`` as ascending lists; ``d`` must have a
    nonzero leading coefficient.
    """
    f = [c % p for c in f]
    d = [c % p for c in d]
    while d and d[-1] == 0:
        d.pop()
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = inverse_mod(d[-1], p)
    e = len(d) - 1
    if len(f) <= e:
        return [0], f or [0]
    q = [0] * (len(f) - e)
    for k in range(len(f) - 1, e - 1, -1):
        c = f[k] * lead_inv % p
        if c:
            q[k - e] = c
            for i, di in enumerate(d):
                f[k - e + i] = (f[k - e + i] - c * di) % p
    return q, f[:e] or [0]


class LaurentPoly:
    """Element of F_p[t, t^-1].

    >>> f = LaurentPoly([0, 2, 0, 2], 5)      # 2t + 2t^3
    >>> str(f.canonical())
    't^2 + 1'
    """

    __slots__ = ("p", "lo", "coeffs")

    def __init__(self, coeffs=(), p: int = 2, lo: int = 0):
        p = check_prime(p)
        coeffs, lo = _trim((int(c) % p for c in coeffs), lo)
        self.p = p
        self.lo = lo
        self.coeffs = coeffs

    @classmethod
    def from_terms(cls, terms: dict, p: int) -> LaurentPoly:
        """Build from an ``{exponent: coefficient}`` mapping."""
        terms = {int(e): c for e, c in terms.items() if int(c) % p}
        if not terms:
            return cls((), p)
        lo, hi = min(terms), max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = int(c)
        return cls(coeffs, p, lo)

    @classmethod
    def monomial(cls, coeff: int, exp: int, p: int) -> LaurentPoly:
        return cls([coeff], p, exp)

    @classmethod
    def one(cls, p: int) -> LaurentPoly:
        return cls([1], p)

    @classmethod
    def zero(cls, p: int) -> LaurentPoly:
        return cls((), p)

    @classmethod
    def parse(cls, text: str, p: int) -> LaurentPoly:
        """Parse strings such as ``"t^4 + 2t^3 - t + 1"`` or ``"3*t^-1 + 2"``."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if s in ("", "0"):
            return cls.zero(p)
        terms = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", _protect_negative_exponents(s)):
            body = body.replace("~", "-")
            m = re.fullmatch(r"(\d*)(t(?:\^(-?\d+))?)?", body)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError("cannot parse term %r in %r" % (body, text))
            c = int(m.group(1)) if m.group(1) else 1
            if m.group(2):
                e = int(m.group(3)) if m.group(3) else 1
            else:
                e = 0
            if sign == "-":
                c = -c
            terms[e] = terms.get(e, 0) + c
        return cls.from_terms(terms, p)

    def terms(self) -> dict:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def hi(self) -> int:
        """Highest exponent (meaningless for zero)."""
        return self.lo + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        """Highest minus lowest exponent; the degree of the canonical form."""
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def _other(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p}[t] vs F_{other.p}[t]")
            return other
        if isinstance(other, int):
            return LaurentPoly([other], self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.lo - lo + i] += c
        return LaurentPoly(out, self.p, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.p, self.lo)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero(self.p)
        prod = np.convolve(np.array(self.coeffs, dtype=object), np.array(other.coeffs, dtype=object))
        return LaurentPoly(prod, self.p, self.lo + other.lo)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            return LaurentPoly([inverse_mod(self.coeffs[0], self.p) ** -k], self.p, self.lo * k)
        out = LaurentPoly.one(self.p)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        return LaurentPoly(self.coeffs, self.p, self.lo + k)

    def scale(self, c: int) -> LaurentPoly:
        return LaurentPoly([c * x for x in self.coeffs], self.p, self.lo)

    def invert_variable(self) -> LaurentPoly:
        """Substitute t -> t^-1."""
        return LaurentPoly(self.coeffs[::-1], self.p, -self.hi if self.coeffs else 0)

    def substitute_power(self, eps: int) -> LaurentPoly:
        """f(t^eps) for eps in {1, -1}."""
        if eps == 1:
            return self
        if eps == -1:
            return self.invert_variable()
        raise ValueError("eps must be 1 or -1")

    def canonical(self) -> LaurentPoly:
        if not self.coeffs:
            return self
        inv = inverse_mod(self.coeffs[-1], self.p)
        return LaurentPoly([c * inv for c in self.coeffs], self.p, 0)

    def is_canonical(self) -> bool:
        return not self.coeffs or (self.lo == 0 and self.coeffs[-1] == 1)

    def __call__(self, x: int) -> int:
        """Evaluate at a nonzero x in F_p (or any x if no negative powers)."""
        x %= self.p
        if self.lo < 0 and x == 0:
            raise ZeroDivisionError("negative powers at t = 0")
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc * pow(x, self.lo, self.p) % self.p if self.lo else acc

    def to_json(self) -> list:
        """Ascending coefficients of the canonical form from exponent 0."""
        return list(self.canonical().coeffs)

    @classmethod
    def from_json(cls, data, p: int) -> LaurentPoly:
        return cls(data, p)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly([other], self.p)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.p == other.p and self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.lo, self.coeffs))

    def format(self, ascending: bool = False, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.terms().items(), reverse=not ascending)
        parts = []
        for e, c in items:
            if e == 0:
                mono = str(c)
            else:
                pw = var if e == 1 else "%s^%d" % (var, e)
                mono = pw if c == 1 else "%d%s" % (c, pw)
            parts.append(mono)
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "LaurentPoly(%s, p=%d)" % (self.format(), self.p)


def _protect_negative_exponents(s: str) -> str:
    # "t^-2" would otherwise be split at the minus sign
    return re.sub(r"\^-", "^~", s)


def laurent_canonicalize(f: LaurentPoly) -> LaurentPoly:
    return f.canonical()


def laurent_divides(d: LaurentPoly, f: LaurentPoly):
    """Decide whether ``d`` divides ``f`` in F_p[t, t^-1].

    Returns ``(True, q)`` with ``f == d * q``, or ``(False, None)``.
    """
    if d.p != f.p:
        raise ModulusMismatch(f"F_{d.p}[t] vs F_{f.p}[t]")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return True, LaurentPoly.zero(f.p)
    q, r = poly_divmod(list(f.coeffs), list(d.coeffs), f.p)
    if any(r):
        return False, None
    return True, LaurentPoly(q, f.p, f.lo - d.lo)


def equal_up_to_unit(f: LaurentPoly, g: LaurentPoly) -> bool:
    return f.canonical() == g.canonical()
