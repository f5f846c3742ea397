"""Wada's twisted Alexander polynomial and the meridional-epimorphism test.

For a deficiency-one presentation whose generators are meridians and a
representation rho into SL(n, F_p), every Fox derivative ``d r_i / d x_j`` is
sent to an n x n block over F_p[t, t^-1].  Deleting the j-th block column
gives a square matrix ``M_j``; the numerator is ``det M_j`` and the
denominator is ``det(t rho(x_j) - I)``.  Both are stored in canonical unit
form.

If a meridional epimorphism G(K) -> G(K') exists then for every rho' of
G(K') some rho of G(K) and some eps in {1, -1} satisfy
``den'(t) = unit * den(t^eps)`` and ``num'(t) | num(t^eps)``.
:func:`meridional_obstruction` looks for a rho' that no rho can match.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import LaurentMatrix, LaurentPoly, laurent_divides, polymatrix_det, sl2_group
from .fox import WordEvaluator, fox_jacobian, phi_evaluate
from .presentation import GroupPresentation
from .reps import (DEFAULT_CONJUGATION, DEFAULT_MAX_NODES, Representation, SearchLimitExceeded,
                   enumerate_representations)


class TapError(ValueError):
    pass


@dataclass(frozen=True)
class TapPair:
    numerator: LaurentPoly
    denominator: LaurentPoly
    column: int
    representation: Representation = field(default=None, compare=False, repr=False)
    dropped_relator: int = field(default=None, compare=False)
    #: leading coefficient of det M_j before it was made monic
    scale: int = field(default=1, compare=False)

    def key(self, normalization: str = "unit") -> tuple:
        """Hashable identity of the pair.

        ``"unit"`` identifies polynomials differing by ``c t^k``; ``"shift"``
        only by ``t^k``, so nonzero scalar multiples of the numerator stay
        apart.  Counting distinct pairs of J_{-1} over F_7 gives 48 under the
        first convention and 58 under the second.
        """
        if normalization == "unit":
            return (self.numerator.coeffs, self.denominator.coeffs)
        if normalization == "shift":
            return (self.numerator.scale(self.scale).coeffs, self.denominator.coeffs)
        raise ValueError("normalization must be 'unit' or 'shift'")

    def substitute(self, eps: int) -> tuple:
        """Canonical ``(num(t^eps), den(t^eps))``."""
        return (self.numerator.substitute_power(eps).canonical(),
                self.denominator.substitute_power(eps).canonical())

    def quotient(self):
        """``num / den`` when the division is exact, else ``None``."""
        ok, q = laurent_divides(self.denominator, self.numerator)
        return q.canonical() if ok else None

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json(),
                "numerator_scale": self.scale, "column": self.column}


def deficiency_one(g: GroupPresentation):
    """Return ``(relators, dropped index or None)`` with k - 1 relators."""
    k = g.num_generators
    rels = list(g.relators)
    if len(rels) == k:
        # one relator of a Wirtinger presentation is a consequence of the others
        return tuple(rels[:-1]), len(rels) - 1
    if len(rels) != k - 1:
        raise TapError("%s has %d generators and %d relators; need deficiency one"
                       % (g.name, k, len(rels)))
    return tuple(rels), None


@lru_cache(maxsize=64)
def _jacobian(g: GroupPresentation):
    rels, dropped = deficiency_one(g)
    return fox_jacobian(g.with_relators(rels)), dropped


def alexander_matrix(g: GroupPresentation, rho) -> LaurentMatrix:
    """The (k-1) x k block matrix of evaluated Fox derivatives."""
    jac, _ = _jacobian(g)
    ev = WordEvaluator(rho)
    blocks = [[phi_evaluate(d, rho, evaluator=ev) for d in row] for row in jac]
    return _assemble(blocks, ev.n, ev.p)


def _assemble(blocks, n: int, p: int) -> LaurentMatrix:
    rows, cols = len(blocks), len(blocks[0]) if blocks else 0
    lo = min(b.lo for row in blocks for b in row)
    hi = max(b.lo + b.coeffs.shape[2] for row in blocks for b in row)
    arr = np.zeros((rows * n, cols * n, hi - lo), dtype=np.int64)
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            off = b.lo - lo
            arr[i * n:(i + 1) * n, j * n:(j + 1) * n, off:off + b.coeffs.shape[2]] = b.coeffs
    return LaurentMatrix(arr, p, lo)


def twisted_alexander(g: GroupPresentation, rho, column=None) -> TapPair:
    """Numerator and denominator of the twisted Alexander polynomial.

    ``column`` is the 0-based generator whose block column is deleted; the
    default is the first generator, always valid for meridional generators
    because ``det(I - t rho(x))`` has constant term 1.
    """
    k = g.num_generators
    j = 0 if column is None or column == "auto" else int(column)
    if not 0 <= j < k:
        raise TapError("column %d out of range" % j)
    _, dropped = _jacobian(g)
    ev = WordEvaluator(rho)
    n, p = ev.n, ev.p
    mats = list(getattr(rho, "images", rho))
    xj = mats[j].to_int64()
    # det Phi(x_j - 1) = det(t rho(x_j) - I)
    den = polymatrix_det(LaurentMatrix(np.stack([-np.eye(n, dtype=np.int64), xj], axis=2), p))
    if den.is_zero():
        raise TapError("det Phi(x_j - 1) vanishes; generator %s is not meridional" % g.generators[j])
    if k == 1:
        num = LaurentPoly.one(p)
    else:
        big = alexander_matrix(g, rho)
        keep = [c for c in range(k * n) if not j * n <= c < (j + 1) * n]
        num = polymatrix_det(LaurentMatrix(big.coeffs[:, keep, :], p, big.lo))
    rep = rho if isinstance(rho, Representation) else None
    scale = num.coeffs[-1] if num.coeffs else 1
    return TapPair(num.canonical(), den.canonical(), j, rep, dropped, scale)


# ---------------------------------------------------------------------------
# obstruction sweep


class Verdict(str, enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    NOT_OBSTRUCTED = "NOT_OBSTRUCTED"
    INCONCLUSIVE = "INCONCLUSIVE"


NOT_OBSTRUCTED_CAVEAT = ("every target representation is matched by some source representation; "
                         "this does not prove that a meridional epimorphism exists")


@dataclass
class SourceRecord:
    """How one source representation fares against one target representation."""

    index: int
    pair: TapPair
    checks: dict          # eps -> {"denominator": bool, "divides": bool}

    @property
    def matches(self) -> bool:
        return any(c["denominator"] and c["divides"] for c in self.checks.values())

    def to_json(self) -> dict:
        return {"source_index": self.index, **self.pair.to_json(),
                "checks": {str(e): c for e, c in self.checks.items()}, "matches": self.matches}


@dataclass
class TargetResult:
    index: int
    representation: Representation
    pair: TapPair
    records: list
    obstructs: bool

    def to_json(self) -> dict:
        return {"target_index": self.index, "representation": self.representation.to_json(),
                "pair": self.pair.to_json(), "obstructs": self.obstructs,
                "records": [r.to_json() for r in self.records]}


@dataclass
class ObstructionReport:
    verdict: Verdict
    source: str
    target: str
    p: int
    mode: str                       # "meridional" or "plain"
    filter_image: bool
    witness: TargetResult = None
    targets: list = field(default_factory=list)
    source_pairs: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.verdict is Verdict.OBSTRUCTED

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "verdict": self.verdict.value,
            "mode": self.mode,
            "source": self.source,
            "target": self.target,
            "p": self.p,
            "filter_image": self.filter_image,
            "witness": self.witness.to_json() if self.witness else None,
            "targets_checked": [t.to_json() for t in self.targets],
            "source_pairs": [{"source_index": i, "representation": pr.representation.to_json(), **pr.to_json()}
                             for i, pr in enumerate(self.source_pairs)],
            "notes": list(self.notes),
            "stats": self.stats,
        }


def _divides(d: LaurentPoly, f: LaurentPoly) -> bool:
    # in the ring, zero divides only zero
    if d.is_zero():
        return f.is_zero()
    return laurent_divides(d, f)[0]


def _meridional_checks(src: TapPair, tgt: TapPair) -> dict:
    out = {}
    for eps in (1, -1):
        num, den = src.substitute(eps)
        out[eps] = {"denominator": den == tgt.denominator,
                    "divides": _divides(tgt.numerator, num)}
    return out


def _plain_checks(src: TapPair, tgt: TapPair) -> dict:
    out = {}
    for eps in (1, -1):
        num, den = src.substitute(eps)
        # num'/den' divides num/den  <=>  den * num' | num * den'
        ok = _divides(den * tgt.numerator, num * tgt.denominator)
        out[eps] = {"denominator": True, "divides": ok}
    return out


def image_subgroup(rho: Representation) -> frozenset:
    """Element indices of the subgroup of SL(2, F_p) generated by the images."""
    G = sl2_group(rho.p)
    gens = [G.index(m) for m in rho.images]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(G.mul[x, s])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _passes_image_filter(rho: Representation, rho_t: Representation, src_mer: int, tgt_mer: int) -> bool:
    H = image_subgroup(rho_t)
    if image_subgroup(rho) != H:
        return False
    G = sl2_group(rho.p)
    a = G.index(rho.images[src_mer])
    b = G.index(rho_t.images[tgt_mer])
    conj = G.conjugation_table("SL")
    return any(int(conj[h, b]) == a for h in H)


def _sweep(source: GroupPresentation, target: GroupPresentation, p: int, mode: str,
           filter_image: bool = False, exhaustive: bool = False, target_reps=None,
           workers: int = None, max_nodes: int = DEFAULT_MAX_NODES,
           conjugation: str = DEFAULT_CONJUGATION) -> ObstructionReport:
    report = ObstructionReport(Verdict.INCONCLUSIVE, source.name, target.name, p, mode, filter_image)
    for g in (source, target):
        if len(g.relators) == g.num_generators:
            report.notes.append("%s: dropped relator %d to reach deficiency one" % (g.name, len(g.relators)))
    try:
        src_reps = enumerate_representations(source, p, constrain_conjugate=source.wirtinger,
                                             conjugation=conjugation, workers=workers, max_nodes=max_nodes)
        if target_reps is None:
            tgt_reps = enumerate_representations(target, p, constrain_conjugate=target.wirtinger,
                                                 conjugation=conjugation, workers=workers, max_nodes=max_nodes)
            tgt_list = list(tgt_reps)
            report.stats["target_count"] = len(tgt_list)
        else:
            tgt_list = list(target_reps)
    except SearchLimitExceeded as exc:
        report.notes.append("representation search stopped: %s" % exc)
        report.stats.update(exc.stats)
        return report
    report.stats["source_count"] = len(src_reps)
    src_pairs = [twisted_alexander(source, r) for r in src_reps]
    report.source_pairs = src_pairs
    report.stats["source_distinct_pairs"] = len({pr.key() for pr in src_pairs})
    checker = _meridional_checks if mode == "meridional" else _plain_checks
    src_mer = source.meridian or 0
    tgt_mer = target.meridian or 0

    all_matched = True
    for ti, rho_t in enumerate(tgt_list):
        tpair = twisted_alexander(target, rho_t)
        records = []
        for si, (rho, spair) in enumerate(zip(src_reps, src_pairs)):
            if filter_image and not _passes_image_filter(rho, rho_t, src_mer, tgt_mer):
                continue
            records.append(SourceRecord(si, spair, checker(spair, tpair)))
        obstructs = not any(r.matches for r in records)
        result = TargetResult(ti, rho_t, tpair, records, obstructs)
        report.targets.append(result)
        if obstructs:
            all_matched = False
            if report.witness is None:
                report.witness = result
            if not exhaustive:
                break
    if report.witness is not None:
        report.verdict = Verdict.OBSTRUCTED
    elif all_matched:
        report.verdict = Verdict.NOT_OBSTRUCTED
        report.notes.append(NOT_OBSTRUCTED_CAVEAT)
    return report


def meridional_obstruction(source: GroupPresentation, target: GroupPresentation, p: int,
                           filter_image: bool = False, **kwargs) -> ObstructionReport:
    """Search for a target representation that rules out a meridional epimorphism.

    Keyword options: ``exhaustive`` (check every target representation instead
    of stopping at the first obstruction), ``target_reps`` (check only these),
    ``workers``, ``max_nodes`` and ``conjugation``.
    """
    return _sweep(source, target, p, "meridional", filter_image, **kwargs)


def plain_divisibility_check(source: GroupPresentation, target: GroupPresentation, p: int,
                             **kwargs) -> ObstructionReport:
    """The weaker test: ``num'/den'`` must divide ``num/den`` for some rho and eps."""
    return _sweep(source, target, p, "plain", False, **kwargs)


# ---------------------------------------------------------------------------
# tables


@dataclass
class TableRow:
    representation: Representation
    pair: TapPair
    multiplicity: int


def tap_table(g: GroupPresentation, p: int, normalization: str = "unit", reps=None, **kwargs) -> list:
    """Distinct (numerator, denominator) pairs over all representations.

    Each row carries the first representation (in search order) giving it.
    See :meth:`TapPair.key` for ``normalization``.
    """
    if reps is None:
        reps = enumerate_representations(g, p, **kwargs)
    rows = {}
    for r in reps:
        pair = twisted_alexander(g, r)
        key = pair.key(normalization)
        if key in rows:
            rows[key].multiplicity += 1
        else:
            rows[key] = TableRow(r, pair, 1)
    return list(rows.values())


def format_table(g: GroupPresentation, rows, ascending: bool = True) -> str:
    lines = []
    head = ["rho(%s)" % name for name in g.generators] + ["Delta^N", "Delta^D"]
    lines.append(" | ".join(head))
    for row in rows:
        mats = ["[%s]" % "; ".join(" ".join(str(v) for v in r) for r in m.tolist())
                for m in row.representation.images]
        lines.append(" | ".join(mats + [row.pair.numerator.format(ascending=ascending),
                                        row.pair.denominator.format(ascending=ascending)]))
    return "\n".join(lines)
