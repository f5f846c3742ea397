"""Representations of finitely presented groups into SL(2, F_p), up to conjugacy.

The search works on element indices of :class:`~tapestry.algebra.sl2.SL2`.
The first generator is fixed to each conjugacy-class representative in turn,
which quotients out most of the conjugation action.  The remaining generators
are added one at a time, in an order chosen so relators become fully assigned
as early as possible; each relator is checked, vectorised over all partial
assignments, the moment its last generator is placed.  Whatever conjugation
symmetry is left (the centraliser of the first image) is removed by
:func:`canonical_conjugacy_dedupe`.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import FFMatrix, TableTooLarge, check_prime, conjugacy_partition, sl2_group
from .fox import WordEvaluator
from .presentation import GroupPresentation

#: Conjugation group used for "up to conjugacy".  SL(2, F_p) conjugation is
#: what the published census counts correspond to.
DEFAULT_CONJUGATION = "SL"
DEFAULT_MAX_NODES = 200_000_000
_CHUNK = 1 << 20


class SearchLimitExceeded(RuntimeError):
    def __init__(self, message, stats):
        super().__init__(message)
        self.stats = stats


@dataclass(frozen=True)
class Representation:
    """One matrix per generator; every relator evaluates to the identity."""

    presentation: GroupPresentation = field(repr=False, compare=False)
    p: int
    images: tuple

    @property
    def n(self) -> int:
        return self.images[0].n

    def __getitem__(self, name_or_index) -> FFMatrix:
        if isinstance(name_or_index, str):
            name_or_index = self.presentation.index(name_or_index)
        return self.images[name_or_index]

    def key(self) -> tuple:
        return tuple(m.entries() for m in self.images)

    def conjugate_by(self, g: FFMatrix) -> Representation:
        gi = g.inverse()
        return Representation(self.presentation, self.p, tuple(g @ m @ gi for m in self.images))

    def is_trivial(self) -> bool:
        return all(m.is_identity() for m in self.images)

    def to_json(self) -> list:
        return [list(m.entries()) for m in self.images]


@dataclass
class RepList:
    representations: list
    raw_count: int
    stats: dict = field(default_factory=dict)
    p: int = 0
    presentation: GroupPresentation = field(default=None, repr=False)
    conjugation: str = DEFAULT_CONJUGATION

    def __len__(self):
        return len(self.representations)

    def __iter__(self):
        return iter(self.representations)

    def __getitem__(self, i):
        return self.representations[i]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "p": self.p,
            "n": 2,
            "presentation": self.presentation.name if self.presentation else None,
            "generators": list(self.presentation.generators) if self.presentation else None,
            "conjugation": self.conjugation,
            "count": len(self.representations),
            "raw_count": self.raw_count,
            "stats": self.stats,
            "representations": [r.to_json() for r in self.representations],
        }


def is_representation(images, g: GroupPresentation) -> bool:
    """True iff every relator of ``g`` evaluates to the identity under ``images``."""
    if isinstance(images, dict):
        images = [images[name] if name in images else images.get(i) for i, name in enumerate(g.generators)]
    images = list(images)
    if len(images) != g.num_generators or any(m is None for m in images):
        raise KeyError("every generator needs an assigned matrix")
    ev = WordEvaluator(images)
    eye = np.eye(ev.n, dtype=np.int64)
    return all(np.array_equal(ev(r), eye) for r in g.relators)


def search_order(g: GroupPresentation, root: int = 0) -> list:
    """Generator order that completes relators as early as possible."""
    rel_gens = [r.generators() for r in g.relators]
    order = [root]
    placed = {root}
    while len(order) < g.num_generators:
        best = None
        for x in range(g.num_generators):
            if x in placed:
                continue
            after = placed | {x}
            completes = sum(1 for s in rel_gens if x in s and s <= after)
            touching = sum(1 for s in rel_gens if x in s and s & placed)
            key = (completes, touching, -x)
            if best is None or key > best[0]:
                best = (key, x)
        order.append(best[1])
        placed.add(best[1])
    return order


def _check_schedule(g: GroupPresentation, order: list) -> list:
    """For each search level, the relators whose last generator is placed there."""
    pos = {x: i for i, x in enumerate(order)}
    levels = [[] for _ in order]
    for r in g.relators:
        if r.letters:
            levels[max(pos[x] for x in r.generators())].append(tuple(r.letters))
    for lv in levels:
        lv.sort(key=len)
    return levels


@dataclass(frozen=True)
class _Job:
    p: int
    k: int
    order: tuple
    schedule: tuple
    candidates: tuple        # per level (level 0 unused)
    prefix: tuple            # fixed images for the first len(prefix) levels
    max_nodes: int


def _run_job(job: _Job):
    G = sl2_group(job.p)
    rows = np.full((1, job.k), -1, dtype=np.int32)
    nodes = 0
    pruned = 0
    for level, val in enumerate(job.prefix):
        rows[:, job.order[level]] = val
        nodes += 1
        for rel in job.schedule[level]:
            keep = G.evaluate(rel, rows) == G.identity
            pruned += int((~keep).sum())
            rows = rows[keep]
    for level in range(len(job.prefix), job.k):
        cand = np.asarray(job.candidates[level], dtype=np.int32)
        col = job.order[level]
        survivors = []
        step = max(1, _CHUNK // max(1, len(cand)))
        for start in range(0, len(rows), step):
            block = rows[start:start + step]
            ext = np.repeat(block, len(cand), axis=0)
            ext[:, col] = np.tile(cand, len(block))
            nodes += len(ext)
            if nodes > job.max_nodes:
                raise SearchLimitExceeded("search exceeded %d nodes" % job.max_nodes,
                                          {"nodes": nodes, "pruned": pruned, "level": level})
            for rel in job.schedule[level]:
                keep = G.evaluate(rel, ext) == G.identity
                pruned += int((~keep).sum())
                ext = ext[keep]
                if not len(ext):
                    break
            survivors.append(ext)
        rows = np.concatenate(survivors) if survivors else rows[:0]
        if not len(rows):
            break
    return rows, nodes, pruned


def _first_reps(p: int, conjugation: str) -> list:
    """Class representatives for the first generator's image."""
    table = conjugacy_partition(p)
    reps = [c.rep_index for c in table.classes]
    if conjugation == "SL":
        return reps
    conj = sl2_group(p).conjugation_table("GL")
    out = []
    seen = set()
    for r in reps:
        if int(table.class_of[r]) in seen:
            continue
        out.append(r)
        seen.update(int(table.class_of[x]) for x in np.unique(conj[:, r]))
    return out


def enumerate_representations(g: GroupPresentation, p: int, constrain_conjugate: bool = None,
                              conjugation: str = DEFAULT_CONJUGATION, workers: int = None,
                              max_nodes: int = DEFAULT_MAX_NODES) -> RepList:
    """All representations G -> SL(2, F_p) up to simultaneous conjugation.

    ``constrain_conjugate`` (default: the presentation's ``wirtinger`` flag)
    places every generator image in the conjugacy class of the first one,
    which is valid exactly when all generators are conjugate in the group.
    Raises :class:`SearchLimitExceeded` past ``max_nodes`` candidate nodes.
    """
    p = check_prime(p)
    if constrain_conjugate is None:
        constrain_conjugate = g.wirtinger
    if constrain_conjugate and not g.wirtinger:
        raise ValueError("constrained search needs a presentation flagged 'wirtinger'")
    if conjugation not in ("SL", "GL"):
        raise ValueError("conjugation must be 'SL' or 'GL'")
    workers = _resolve_workers(workers)
    try:
        G = sl2_group(p)
    except TableTooLarge as exc:
        raise SearchLimitExceeded(str(exc), {"nodes": 0, "pruned": 0}) from None
    table = conjugacy_partition(p)
    k = g.num_generators
    if k == 0:
        return RepList([Representation(g, p, ())], 1, {"nodes": 0, "pruned": 0}, p, g, conjugation)
    order = search_order(g)
    schedule = tuple(tuple(lv) for lv in _check_schedule(g, order))
    everything = tuple(range(G.order))

    jobs = []
    for rep in _first_reps(p, conjugation):
        if constrain_conjugate:
            cands = table.classes[int(table.class_of[rep])].members
        else:
            cands = everything
        per_level = (None,) + (cands,) * (k - 1)
        if workers > 1 and k > 1:
            for c in cands:
                jobs.append(_Job(p, k, tuple(order), schedule, per_level, (rep, c), max_nodes))
        else:
            jobs.append(_Job(p, k, tuple(order), schedule, per_level, (rep,), max_nodes))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_run_job(j) for j in jobs]

    nodes = sum(r[1] for r in results)
    pruned = sum(r[2] for r in results)
    raw = np.concatenate([r[0] for r in results]) if results else np.zeros((0, k), dtype=np.int32)
    canon = canonical_rows(raw, p, conjugation)
    reps = [Representation(g, p, tuple(G.matrix(i) for i in row)) for row in canon]
    stats = {"nodes": int(nodes), "pruned": int(pruned), "jobs": len(jobs),
             "order": [g.generators[i] for i in order]}
    return RepList(reps, int(len(raw)), stats, p, g, conjugation)


def _resolve_workers(workers) -> int:
    if workers is None:
        workers = int(os.environ.get("TAPESTRY_WORKERS", "1") or 1)
    return max(1, int(workers))


def canonical_rows(rows: np.ndarray, p: int, conjugation: str = DEFAULT_CONJUGATION) -> np.ndarray:
    """Lexicographically least conjugate of each index tuple, deduplicated and sorted."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    T = sl2_group(p).conjugation_table(conjugation).astype(np.int64)
    out = []
    for start in range(0, len(rows), 2048):
        block = rows[start:start + 2048]
        conj = T[:, block]                      # (conjugators, B, k)
        alive = np.ones(conj.shape[:2], dtype=bool)
        best = np.empty(block.shape, dtype=np.int64)
        big = np.iinfo(np.int64).max
        for c in range(block.shape[1]):
            vals = np.where(alive, conj[:, :, c], big)
            m = vals.min(axis=0)
            best[:, c] = m
            alive &= vals == m
        out.append(best)
    return np.unique(np.concatenate(out), axis=0)


def canonical_conjugacy_dedupe(raw, conjugation: str = DEFAULT_CONJUGATION) -> RepList:
    """One representative (the lexicographically least) per conjugation orbit."""
    raw = list(raw)
    if not raw:
        return RepList([], 0, {}, 0, None, conjugation)
    first = raw[0]
    p = first.p
    if any(r.p != p or len(r.images) != len(first.images) for r in raw):
        raise ValueError("representations must share presentation and modulus")
    G = sl2_group(p)
    rows = np.array([[G.index(m) for m in r.images] for r in raw], dtype=np.int64)
    canon = canonical_rows(rows, p, conjugation)
    reps = [Representation(first.presentation, p, tuple(G.matrix(i) for i in row)) for row in canon]
    return RepList(reps, len(raw), {}, p, first.presentation, conjugation)


def representation_from_lists(g: GroupPresentation, p: int, matrices) -> Representation:
    """Build and validate a representation from nested integer lists."""
    imgs = tuple(FFMatrix(m, p) for m in matrices)
    if len(imgs) != g.num_generators:
        raise ValueError("need one matrix per generator")
    if not is_representation(imgs, g):
        raise ValueError("relators are not sent to the identity")
    return Representation(g, p, imgs)
