import itertools
import json

import pytest

from conftest import FIXTURES
from tapestry.algebra import FFMatrix, sl2_elements
from tapestry.presentation import load_fixture, parse_presentation
from tapestry.reps import (SearchLimitExceeded, canonical_conjugacy_dedupe, enumerate_representations,
                           is_representation, representation_from_lists)


def brute_force_classes(g, p):
    """Orbit count by plain matrix arithmetic, no lookup tables."""
    elems = sl2_elements(p)
    sols = set()
    for imgs in itertools.product(elems, repeat=g.num_generators):
        if is_representation(imgs, g):
            sols.add(tuple(m.entries() for m in imgs))
    orbits = 0
    while sols:
        orbits += 1
        start = sols.pop()
        mats = [FFMatrix([e[:2], e[2:]], p) for e in start]
        for c in elems:
            ci = c.inverse()
            sols.discard(tuple((c @ m @ ci).entries() for m in mats))
    return orbits


@pytest.mark.parametrize("name,p", [("trefoil", 3), ("trefoil", 5), ("figure8", 3), ("figure8", 5)])
def test_matches_brute_force(name, p):
    g = load_fixture(name)
    assert len(enumerate_representations(g, p, constrain_conjugate=False)) == brute_force_classes(g, p)


def test_every_result_is_a_representation(reps, pres):
    for name, p in [("trefoil", 5), ("kt_simplified", 5), ("j_minus1", 7)]:
        for r in reps(name, p):
            assert is_representation(r.images, pres(name))


def test_results_pairwise_non_conjugate(reps):
    rl = reps("figure8", 7)
    c = FFMatrix([[1, 2], [3, 0]], 7)
    again = canonical_conjugacy_dedupe([r.conjugate_by(c) for r in rl])
    assert [r.key() for r in again] == [r.key() for r in rl]


@pytest.mark.parametrize("name", FIXTURES)
def test_constrained_equals_unconstrained_p3(name):
    g = load_fixture(name)
    a = enumerate_representations(g, 3)
    b = enumerate_representations(g, 3, constrain_conjugate=False)
    assert [r.key() for r in a] == [r.key() for r in b]


def test_known_counts(reps):
    assert len(reps("trefoil", 5)) == 19
    kt = reps("kt_simplified", 5)
    assert len(kt) == 19 and kt.raw_count == 37
    assert len(reps("j_minus1", 7)) == 139


def test_gl_conjugation_merges_classes(reps):
    assert len(reps("kt_simplified", 5, conjugation="GL")) == 12
    assert len(reps("j_minus1", 7, conjugation="GL")) == 73


def test_trivial_rep_present(reps):
    assert sum(r.is_trivial() for r in reps("trefoil", 5)) == 1


def test_workers_give_identical_output(pres):
    g = pres("kt_simplified")
    one = enumerate_representations(g, 5, workers=1)
    two = enumerate_representations(g, 5, workers=2)
    assert [r.key() for r in one] == [r.key() for r in two]


def test_env_worker_fallback(pres, monkeypatch):
    monkeypatch.setenv("TAPESTRY_WORKERS", "2")
    assert len(enumerate_representations(pres("trefoil"), 5)) == 19


def test_search_limit(pres):
    with pytest.raises(SearchLimitExceeded) as info:
        enumerate_representations(pres("j_minus1"), 7, max_nodes=500)
    assert info.value.stats["nodes"] > 500


def test_constrained_needs_wirtinger_flag():
    g = parse_presentation("gen x y\nrel x y x^-1 y^-1\n")
    with pytest.raises(ValueError):
        enumerate_representations(g, 3, constrain_conjugate=True)
    # Z^2 into SL(2, F_2): commuting pairs up to conjugacy
    assert len(enumerate_representations(g, 2)) > 0


def test_representation_from_lists(pres):
    g = pres("trefoil")
    r = representation_from_lists(g, 5, [[[0, 4], [1, 3]], [[0, 1], [4, 3]]])
    assert r["y2"] == FFMatrix([[0, 1], [4, 3]], 5)
    with pytest.raises(ValueError):
        representation_from_lists(g, 5, [[[1, 1], [0, 1]], [[1, 0], [0, 1]]])


def test_json_schema(reps):
    data = json.loads(json.dumps(reps("trefoil", 5).to_json()))
    assert data["schema"] == 1 and data["count"] == len(data["representations"]) == 19
