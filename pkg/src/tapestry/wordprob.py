"""Word-problem oracles: the trefoil group, homomorphism checks, coset enumeration.

The trefoil group ``<y1, y2 | y1 y2 y1 = y2 y1 y2>`` is the braid group B_3.
Sending ``y1 -> [[1, 1], [0, 1]]`` and ``y2 -> [[1, 0], [-1, 1]]`` gives a map
onto SL(2, Z) whose kernel is generated by ``(y1 y2)^6``, the square of the
generator of the centre.  That element has exponent sum 12, so a word is
trivial in the group exactly when its matrix is the identity *and* its
exponent sum is zero.  This pair of invariants is a complete decider.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .presentation import FreeWord, GroupHom, GroupPresentation, PresentationError, load_fixture

DEFAULT_COSET_LIMIT = 1_000_000


class OracleUnavailable(ValueError):
    pass


def _mul(x, y):
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]))


def _inv(x):
    return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))


_EYE = ((1, 0), (0, 1))


class TrefoilOracle:
    """Exact identity test for words in the two trefoil generators."""

    images = (((1, 1), (0, 1)), ((1, 0), (-1, 1)))

    def __init__(self, g: GroupPresentation = None):
        self.presentation = g
        a, b = self.images
        if _mul(_mul(a, b), a) != _mul(_mul(b, a), b):
            raise AssertionError("braid relation fails for the integral representation")
        if g is not None:
            if g.num_generators != 2:
                raise OracleUnavailable("%s does not have two generators" % g.name)
            if not _is_braid_presentation(g):
                raise OracleUnavailable("%s is not recognised as the trefoil group" % g.name)

    def matrix(self, w: FreeWord):
        out = _EYE
        for gen, e in w.letters:
            if gen not in (0, 1):
                raise PresentationError("word uses a generator other than y1, y2")
            m = self.images[gen] if e > 0 else _inv(self.images[gen])
            for _ in range(abs(e)):
                out = _mul(out, m)
        return out

    def is_identity(self, w: FreeWord) -> bool:
        return w.exponent_sum() == 0 and self.matrix(w) == _EYE

    __call__ = is_identity


def _is_braid_presentation(g: GroupPresentation) -> bool:
    # one relator, a cyclic permutation of the braid relator or of its inverse
    if len(g.relators) != 1:
        return False
    r = g.relators[0].expanded()
    for base in ([(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)],
                 [(1, 1), (0, 1), (1, 1), (0, -1), (1, -1), (0, -1)]):
        for cand in (base, [(gg, -e) for gg, e in reversed(base)]):
            if len(cand) == len(r) and any(r == cand[i:] + cand[:i] for i in range(len(cand))):
                return True
    return False


def trefoil_is_identity(w: FreeWord) -> bool:
    """True iff ``w`` (in y1, y2) is the identity of the trefoil group."""
    return TrefoilOracle().is_identity(w)


def oracle_for(g: GroupPresentation):
    return TrefoilOracle(g)


def verify_group_hom(h: GroupHom, oracle=None):
    """``(ok, failing relator indices)``: do all source relators map to 1?"""
    if oracle is None:
        oracle = oracle_for(h.target)
    failing = [i for i, r in enumerate(h.source.relators) if not oracle(h(r))]
    return not failing, failing


def verify_surjectivity_witnesses(h: GroupHom, witnesses: dict = None, oracle=None) -> bool:
    """True iff ``h(witness) = generator`` for every target generator."""
    if oracle is None:
        oracle = oracle_for(h.target)
    witnesses = h.witnesses if witnesses is None else witnesses
    for i in range(h.target.num_generators):
        if i not in witnesses:
            raise PresentationError("no witness for target generator %s" % h.target.generators[i])
        if not oracle(h(witnesses[i]) * FreeWord.gen(i, -1)):
            return False
    return True


@dataclass
class TraceReport:
    matrix: tuple
    trace: int
    meridian_trace: int
    conjugate: object       # False when traces differ; None (unknown) otherwise

    @property
    def verdict(self) -> str:
        return "not meridional" if self.conjugate is False else "inconclusive"

    def to_json(self) -> dict:
        return {"schema": 1, "matrix": [list(r) for r in self.matrix], "trace": self.trace,
                "meridian_trace": self.meridian_trace, "verdict": self.verdict}


def meridian_trace_obstruction(h: GroupHom, source_meridian=None) -> TraceReport:
    """Compare the trace of rho(h(meridian)) with the trace 2 of rho(y1).

    Different traces mean h(meridian) is not conjugate to a meridian; equal
    traces decide nothing.
    """
    oracle = oracle_for(h.target)
    if source_meridian is None:
        source_meridian = h.source.meridian or 0
    if isinstance(source_meridian, str):
        source_meridian = h.source.index(source_meridian)
    m = oracle.matrix(h(FreeWord.gen(source_meridian)))
    tr = m[0][0] + m[1][1]
    ref = oracle.images[0][0][0] + oracle.images[0][1][1]
    return TraceReport(m, tr, ref, False if tr != ref else None)


# ---------------------------------------------------------------------------
# Todd-Coxeter


class CosetStatus(str, enum.Enum):
    TRIVIAL = "TRIVIAL"
    FINITE = "FINITE"
    LIMIT_EXCEEDED = "LIMIT_EXCEEDED"


@dataclass
class CosetResult:
    status: CosetStatus
    order: int = None
    defined: int = 0
    max_live: int = 0
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": 1, "status": self.status.value, "order": self.order,
                "cosets_defined": self.defined, "max_live": self.max_live}


class _LimitReached(Exception):
    pass


class CosetTable:
    """Coset table over the trivial subgroup, HLT strategy.

    Column ``2g`` is generator g and ``2g + 1`` its inverse.  Coincidences are
    processed immediately with a union-find forwarding array.
    """

    def __init__(self, ngens: int, limit: int):
        self.ncols = 2 * ngens
        self.limit = limit
        self.table = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_live = 1

    def _define(self, c: int, x: int) -> int:
        n = len(self.table)
        if n >= self.limit:
            raise _LimitReached()
        self.table.append([None] * self.ncols)
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][x ^ 1] = c
        self.live += 1
        self.max_live = max(self.max_live, self.live)
        return n

    def _rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _merge(self, a: int, b: int, queue: list):
        a, b = self._rep(a), self._rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def _coincidence(self, a: int, b: int):
        queue = []
        self._merge(a, b, queue)
        i = 0
        tab = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            row = tab[e]
            for x in range(self.ncols):
                f = row[x]
                if f is None:
                    continue
                tab[f][x ^ 1] = None
                e1, f1 = self._rep(e), self._rep(f)
                if tab[e1][x] is not None:
                    self._merge(f1, tab[e1][x], queue)
                elif tab[f1][x ^ 1] is not None:
                    self._merge(e1, tab[f1][x ^ 1], queue)
                else:
                    tab[e1][x] = f1
                    tab[f1][x ^ 1] = e1

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def scan_and_fill(self, c: int, word: list):
        tab = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and tab[f][word[i]] is not None:
                f = tab[f][word[i]]
                i += 1
            if i > j:
                if f != c:
                    self._coincidence(f, c)
                return
            while j >= i and tab[b][word[j] ^ 1] is not None:
                b = tab[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                tab[f][word[i]] = b
                tab[b][word[i] ^ 1] = f
                return
            self._define(f, word[i])

    def run(self, relators: list):
        c = 0
        while c < len(self.table):
            for r in relators:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, r)
            if self.alive(c):
                for x in range(self.ncols):
                    if self.table[c][x] is None:
                        self._define(c, x)
            c += 1


def _columns(w: FreeWord) -> list:
    return [2 * g + (0 if e > 0 else 1) for g, e in w.expanded()]


def todd_coxeter_trivial(g: GroupPresentation, extra_relators=(), coset_limit: int = DEFAULT_COSET_LIMIT) -> CosetResult:
    """Enumerate cosets of the trivial subgroup of ``g / <<extra_relators>>``.

    ``coset_limit`` caps the total number of cosets ever defined.
    """
    if coset_limit < 1:
        raise ValueError("coset_limit must be at least 1")
    rels = [_columns(r) for r in list(g.relators) + list(extra_relators)]
    rels = [r for r in rels if r]
    if g.num_generators == 0:
        return CosetResult(CosetStatus.TRIVIAL, 1, 1, 1)
    ct = CosetTable(g.num_generators, coset_limit)
    try:
        ct.run(rels)
    except _LimitReached:
        return CosetResult(CosetStatus.LIMIT_EXCEEDED, None, len(ct.table), ct.max_live)
    order = sum(1 for c in range(len(ct.table)) if ct.alive(c))
    status = CosetStatus.TRIVIAL if order == 1 else CosetStatus.FINITE
    return CosetResult(status, order, len(ct.table), ct.max_live)


def trefoil_presentation() -> GroupPresentation:
    return load_fixture("trefoil")
