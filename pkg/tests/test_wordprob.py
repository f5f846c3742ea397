import random

import pytest

from tapestry.presentation import FreeWord, GroupHom, identity_hom, load_hom_fixture, parse_presentation
from tapestry.twistknot import pseudo_meridian, twist_presentation
from tapestry.wordprob import (CosetStatus, OracleUnavailable, TrefoilOracle, meridian_trace_obstruction,
                               todd_coxeter_trivial, trefoil_is_identity, verify_group_hom,
                               verify_surjectivity_witnesses)


@pytest.fixture
def f(pres):
    return load_hom_fixture("f_kt_to_trefoil", pres("kt_wirtinger"), pres("trefoil"))


def test_trefoil_oracle_basics(pres):
    t = pres("trefoil")
    assert trefoil_is_identity(t.relators[0])
    assert not trefoil_is_identity(t.word("y1"))
    assert not trefoil_is_identity(t.word("(y1 y2)^6"))     # central, matrix is I
    assert trefoil_is_identity(t.word("(y1 y2)^3 (y1 y2 y1)^-2"))


def test_oracle_homomorphism_consistency(pres):
    t = pres("trefoil")
    rng = random.Random(3)
    orc = TrefoilOracle()
    for _ in range(100):
        u = FreeWord([(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 8))])
        v = FreeWord([(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 8))])
        assert orc(u * v) == orc(u * v * t.relators[0])
        assert orc(u * u.inverse())


def test_fixture_map(f):
    ok, failing = verify_group_hom(f)
    assert ok and failing == []
    assert verify_surjectivity_witnesses(f)
    rep = meridian_trace_obstruction(f, "x1")
    assert rep.matrix == ((-1, 2), (-3, 5))
    assert rep.trace == 4 and rep.meridian_trace == 2
    assert rep.verdict == "not meridional"


def test_relator_order_irrelevant(f):
    shuffled = f.source.with_relators(list(reversed(f.source.relators)))
    h = GroupHom(shuffled, f.target, f.images)
    assert verify_group_hom(h)[0]


def test_constant_map_is_hom(pres):
    kt, t = pres("kt_wirtinger"), pres("trefoil")
    h = GroupHom(kt, t, [t.word("y1 y2")] * 24)
    assert verify_group_hom(h)[0]


def test_non_homomorphism(pres):
    x = parse_presentation("group c2\ngen x\nrel x^2\n")
    ok, failing = verify_group_hom(GroupHom(x, pres("trefoil"), [FreeWord.gen(0)]))
    assert not ok and failing == [0]


def test_witness_checks(pres):
    t = pres("trefoil")
    h = identity_hom(t)
    assert verify_surjectivity_witnesses(h, {0: t.word("y1"), 1: t.word("y2")})
    assert not verify_surjectivity_witnesses(h, {0: t.word("y1"), 1: t.word("y1")})


def test_trace_inconclusive_cases(pres):
    t = pres("trefoil")
    assert meridian_trace_obstruction(identity_hom(t)).conjugate is None
    swap = GroupHom(t, t, [FreeWord.gen(1), FreeWord.gen(0)])
    assert verify_group_hom(swap)[0]
    assert meridian_trace_obstruction(swap).verdict == "inconclusive"


def test_oracle_refuses_other_targets(pres):
    with pytest.raises(OracleUnavailable):
        TrefoilOracle(pres("figure8"))


def test_coset_enumeration_small_groups(pres):
    t = pres("trefoil")
    assert todd_coxeter_trivial(t, [t.word("y1")]).status is CosetStatus.TRIVIAL
    assert todd_coxeter_trivial(t, [], coset_limit=10_000).status is CosetStatus.LIMIT_EXCEEDED
    r = todd_coxeter_trivial(t, [t.word("y1^2")])
    assert r.status is CosetStatus.FINITE and r.order == 6
    assert todd_coxeter_trivial(t, [t.word("y1^3")]).order == 24
    assert todd_coxeter_trivial(t, [t.word("y1^4")]).order == 96
    s3 = parse_presentation("gen a b\nrel a^2\nrel b^3\nrel (a b)^2\n")
    assert todd_coxeter_trivial(s3).order == 6
    with pytest.raises(ValueError):
        todd_coxeter_trivial(t, [], coset_limit=0)


@pytest.mark.parametrize("q", [1, 2, 3, -1, -2, -3])
def test_pseudo_meridians_normally_generate(q):
    r = todd_coxeter_trivial(twist_presentation(q), [pseudo_meridian(q)], coset_limit=100_000)
    assert r.status is CosetStatus.TRIVIAL


def test_oracle_agrees_with_coset_enumeration(pres):
    t = pres("trefoil")
    orc = TrefoilOracle()
    rng = random.Random(11)
    cube = t.word("y1^3")          # trefoil / <<y1^3>> is finite of order 24
    seen = set()
    for _ in range(50):
        w = FreeWord([(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(1, 12))])
        if rng.random() < 0.3:
            # splice in relator conjugates so that some words are trivial
            r = t.relators[0]
            w = w * r * w.inverse()
        trivial = orc(w)
        seen.add(trivial)
        res = todd_coxeter_trivial(t, [w], coset_limit=20_000)
        if res.status is not CosetStatus.LIMIT_EXCEEDED:
            assert not trivial          # a finite quotient means w was not trivial in G
        quotient = todd_coxeter_trivial(t, [cube, w])
        if trivial:
            assert res.status is CosetStatus.LIMIT_EXCEEDED
            assert quotient.order == 24
    assert seen == {True, False}
