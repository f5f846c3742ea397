"""Twist knots J(2, 2q): presentations, pseudo-meridians and parabolic traces.

The knot group is ``<a, b | w^q a = b w^q>`` with ``w = [b, a^-1]`` and the
commutator convention ``[x, y] = x y x^-1 y^-1``, so ``w = b a^-1 b^-1 a``.
q = 1 is the trefoil and q = -1 the figure eight.

For the parabolic assignment ``a -> [[1, 1], [0, 1]]``, ``b -> [[1, 0], [-u, 1]]``
the (1, 1) entry of ``rho(w^q)`` is the Riley polynomial ``phi_q(u)``; its
roots are exactly the u making rho a representation.  The element
``g1 = w^q a`` (q > 0) or ``w^q b = (w^-1)^|q| b`` (q < 0) normally generates the group,
and ``p_q(u) = tr rho(g1) - 2`` measures how far g1 is from being conjugate
to the meridian, whose trace is 2.  If ``p_q`` does not vanish at some root of
``phi_q`` then g1 is not a meridian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .algebra import check_prime, sl2_group
from .presentation import FreeWord, GroupPresentation

A, B = 0, 1


def _check_q(q) -> int:
    q = int(q)
    if q == 0:
        raise ValueError("q must be nonzero (q = 0 is the unknot)")
    return q


# ---------------------------------------------------------------------------
# integer polynomials in u


class IntPoly:
    """Polynomial in ``u`` with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_terms(cls, terms: dict) -> IntPoly:
        if not terms:
            return cls()
        out = [0] * (max(terms) + 1)
        for e, c in terms.items():
            if e < 0:
                raise ValueError("negative exponent")
            out[e] += c
        return cls(out)

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    @classmethod
    def u(cls) -> IntPoly:
        return cls([0, 1])

    def terms(self) -> dict:
        """``{exponent: coefficient}``, zero coefficients omitted."""
        return {e: c for e, c in enumerate(self.coeffs) if c}

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1   # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _lift(self, other):
        return other if isinstance(other, IntPoly) else IntPoly([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead() < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def exact_div(self, d: IntPoly) -> IntPoly:
        """Quotient when ``d`` divides ``self`` in Z[u]; ValueError otherwise."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(d.coeffs) + 1)
        for k in range(len(rem) - len(d.coeffs), -1, -1):
            c, r = divmod(rem[k + d.degree], d.lead())
            if r:
                raise ValueError("not divisible over the integers")
            q[k] = c
            for i, x in enumerate(d.coeffs):
                rem[k + i] -= c * x
        if any(rem):
            raise ValueError("nonzero remainder")
        return IntPoly(q)

    def pseudo_rem(self, d: IntPoly) -> IntPoly:
        """Remainder of ``lead(d)^k * self`` by ``d``, computed in Z[u]."""
        r = self
        while not r.is_zero() and r.degree >= d.degree:
            shift = IntPoly.from_terms({r.degree - d.degree: r.lead()})
            r = r * d.lead() - shift * d
        return r

    def format(self, var: str = "u") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else (var if e == 1 else "%s^%d" % (var, e))
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else "%d%s" % (mag, mono))
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "IntPoly(%s)" % self.format()


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Q via the primitive-part Euclidean algorithm."""
    f, g = f.primitive(), g.primitive()
    while not g.is_zero():
        f, g = g, f.pseudo_rem(g).primitive()
    return f


class SymMat2:
    """2 x 2 matrix with IntPoly entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(x if isinstance(x, IntPoly) else IntPoly.const(x) for x in r) for r in rows)

    @classmethod
    def identity(cls) -> SymMat2:
        return cls([[1, 0], [0, 1]])

    def __matmul__(self, other: SymMat2) -> SymMat2:
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return SymMat2([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])

    def inverse(self) -> SymMat2:
        """Adjugate; equal to the inverse because the determinant is 1."""
        (a, b), (c, d) = self.rows
        return SymMat2([[d, -b], [-c, a]])

    def det(self) -> IntPoly:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def trace(self) -> IntPoly:
        return self.rows[0][0] + self.rows[1][1]

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, SymMat2) and self.rows == other.rows

    def __pow__(self, k: int) -> SymMat2:
        base = self if k >= 0 else self.inverse()
        out = SymMat2.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out


def parabolic_images():
    """``rho(a) = [[1, 1], [0, 1]]``, ``rho(b) = [[1, 0], [-u, 1]]``."""
    u = IntPoly.u()
    return SymMat2([[1, 1], [0, 1]]), SymMat2([[1, 0], [-u, 1]])


def evaluate_symbolic(w: FreeWord) -> SymMat2:
    """Image of a word in a, b under the parabolic assignment."""
    imgs = parabolic_images()
    out = SymMat2.identity()
    for g, e in w.letters:
        out = out @ (imgs[g] ** e)
    return out


# ---------------------------------------------------------------------------
# words and presentations


def commutator_word() -> FreeWord:
    """``w = [b, a^-1] = b a^-1 b^-1 a``."""
    return FreeWord([(B, 1), (A, -1), (B, -1), (A, 1)])


def twist_presentation(q: int) -> GroupPresentation:
    """``<a, b | w^q a (b w^q)^-1>``; the meridian is a."""
    q = _check_q(q)
    wq = commutator_word() ** q
    rel = wq * FreeWord.gen(A) * (FreeWord.gen(B) * wq).inverse()
    return GroupPresentation("twist_%d" % q, ("a", "b"), (rel,), meridian=A, wirtinger=True,
                             notes=("twist knot J(2, %d)" % (2 * q),))


def pseudo_meridian(q: int) -> FreeWord:
    """``g1 = w^q a`` for q > 0 and ``w^q b = (w^-1)^|q| b`` for q < 0."""
    q = _check_q(q)
    w = commutator_word()
    if q > 0:
        return (w ** q) * FreeWord.gen(A)
    # w^q b with q < 0, i.e. (w^-1)^|q| b.  Reading the exponent the other
    # way (w^|q| b) also normally generates, but only this reading has the
    # traces p_-1 = 0, p_-2 = 2u^2 that the recursion is seeded with.
    return (w ** q) * FreeWord.gen(B)


# ---------------------------------------------------------------------------
# Riley and trace-gap polynomials


def riley_phi(q: int) -> IntPoly:
    """(1, 1) entry of ``rho(w^q)`` under the parabolic assignment."""
    q = _check_q(q)
    return evaluate_symbolic(commutator_word() ** q)[0, 0]


def trace_w() -> IntPoly:
    return evaluate_symbolic(commutator_word()).trace()


_SEEDS = {1: IntPoly([0, 0, 2]), 2: IntPoly([0, 0, 6, 0, 2]),
          -1: IntPoly(), -2: IntPoly([0, 0, 2])}


def trace_gap_p(q: int, method: str = "recursion") -> IntPoly:
    """``p_q(u) = tr rho(g1) - 2``.

    ``method="recursion"`` uses ``p_q = (u^2 + 2) p_{q-1} - p_{q-2} + 2u^2``
    (stepping towards zero for q < 0) from the seeds for q = 1, 2, -1, -2;
    ``method="direct"`` multiplies the matrices out.
    """
    q = _check_q(q)
    if method == "direct":
        return evaluate_symbolic(pseudo_meridian(q)).trace() - 2
    if method != "recursion":
        raise ValueError("method must be 'recursion' or 'direct'")
    s = 1 if q > 0 else -1
    if abs(q) <= 2:
        return _SEEDS[q]
    t = IntPoly([2, 0, 1])           # u^2 + 2 = tr rho(w)
    two_u2 = IntPoly([0, 0, 2])
    older, old = _SEEDS[s], _SEEDS[2 * s]
    for _ in range(abs(q) - 2):
        older, old = old, t * old - older + two_u2
    return old


class Certificate(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class CertificateReport:
    q: int
    verdict: Certificate
    phi: IntPoly
    p: IntPoly
    p_bar: IntPoly = None
    gcd: IntPoly = None
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"schema": 1, "q": self.q, "verdict": self.verdict.value, "phi": str(self.phi),
                "p": str(self.p), "p_bar": None if self.p_bar is None else str(self.p_bar),
                "gcd": None if self.gcd is None else str(self.gcd), "reason": self.reason}


def non_meridian_certificate(q: int) -> CertificateReport:
    """Certify that g1 is not conjugate to the meridian a.

    Writes ``p_q = u^2 * pbar_q``.  At a root of ``phi_q`` the parabolic
    assignment is a representation with u != 0 (``phi_q(0) = 1``), so if
    ``gcd(phi_q, pbar_q)`` is constant then ``tr rho(g1) != 2`` there and g1
    cannot be a conjugate of a.
    """
    q = _check_q(q)
    phi = riley_phi(q)
    p = trace_gap_p(q)
    if p.is_zero():
        return CertificateReport(q, Certificate.INCONCLUSIVE, phi, p,
                                 reason="p_q vanishes identically; the trace argument says nothing")
    u2 = IntPoly([0, 0, 1])
    p_bar = p.exact_div(u2)
    g = poly_gcd(phi, p_bar)
    if g.degree == 0:
        return CertificateReport(q, Certificate.CERTIFIED, phi, p, p_bar, g,
                                 reason="gcd(phi_q, p_q / u^2) is constant")
    return CertificateReport(q, Certificate.INCONCLUSIVE, phi, p, p_bar, g,
                             reason="phi_q and p_q / u^2 share a factor")


# ---------------------------------------------------------------------------
# the three-conjugate generating set


def generating_words(q: int):
    """``(g1, g2, g3, expression, target generator)``.

    For q > 0, ``g2 = a^-1 g1 a``, ``g3 = a g1 a^-1`` and
    ``(g2 g1^-1 g3 g1^-1)^(q-1) g2 g1^-1 g3`` should equal a.  For q < 0,
    ``g2 = b^-1 g1 b``, ``g3 = b g1 b^-1`` and ``(g2 g1^-1 g3 g1^-1)^q g1``
    should equal b.  (With the other reading ``g1 = w^|q| b`` the identity
    instead takes the form ``(g3 g1^-1 g2 g1^-1)^q g1 = b``.)
    """
    q = _check_q(q)
    g1 = pseudo_meridian(q)
    if q > 0:
        x = FreeWord.gen(A)
        g2, g3 = x.inverse() * g1 * x, x * g1 * x.inverse()
        unit = g2 * g1.inverse() * g3 * g1.inverse()
        expr = (unit ** (q - 1)) * g2 * g1.inverse() * g3
        return g1, g2, g3, expr, A
    x = FreeWord.gen(B)
    g2, g3 = x.inverse() * g1 * x, x * g1 * x.inverse()
    unit = g2 * g1.inverse() * g3 * g1.inverse()
    expr = (unit ** q) * g1
    return g1, g2, g3, expr, B


def generating_identity_check(q: int, p: int) -> bool:
    """Check the generating-set identity under every SL(2, F_p) representation."""
    from .reps import enumerate_representations

    q = _check_q(q)
    p = check_prime(p)
    g = twist_presentation(q)
    *_, expr, target = generating_words(q)
    G = sl2_group(p)
    word = tuple(expr.letters)
    reps = enumerate_representations(g, p, constrain_conjugate=False)
    rows = np.array([[G.index(m) for m in r.images] for r in reps], dtype=np.int64)
    if not len(rows):
        return True
    return bool(np.array_equal(G.evaluate(word, rows), rows[:, target]))
