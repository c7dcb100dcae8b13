"""Ko-space axioms, duality, topological sources, c-relations."""

import random

import pytest

import oracles
from conftest import load, plain_kospace, plain_poset

from kodual import _bits
from kodual.generate import random_kospace
from kodual.kospace import (
    CRelation,
    FinTopSpace,
    KoSpace,
    crelation_compose,
    crelation_degroot,
    degroot_dual,
    esakia_check,
    from_dcpo,
    from_topspace,
    hypergraph,
    kospace_isomorphic,
    minimal_kospace,
    validate_crelation,
    validate_kospace,
    validate_kospace_alt,
)
from kodual.order import FinPoset, UpsetFamily, WeakRel

EMPTY_KS = KoSpace(
    FinPoset((), ()), UpsetFamily(FinPoset((), ()), ()), UpsetFamily(FinPoset((), ()), ())
)
SING = load("sing.txt")
CHAIN2 = FinPoset.from_leq("ab", [("a", "b")])


def masks(base, *namesets):
    return [_bits.mask_of(base.index(n) for n in s) for s in namesets]


def revalidate(s: KoSpace):
    return validate_kospace(s.base, list(s.kfam.members), list(s.ofam.members))


def test_validate_empty_space():
    assert isinstance(revalidate(EMPTY_KS), KoSpace)


def test_validate_sing():
    assert isinstance(revalidate(SING), KoSpace)


def test_missing_principal_upset_reported():
    base = FinPoset.from_leq(["x"], [])
    diags = validate_kospace(base, [], [[]])
    assert diags and any("x" in d.witness and d.axiom == "S3" for d in diags)


def test_s3_failures_match_brute_force():
    rng = random.Random(9)
    for _ in range(30):
        s = random_kospace(rng, rng.randint(1, 4))
        els, le, kf, of = plain_kospace(s)
        assert oracles.kospace_s3_failures(els, le, kf, of) == []


def test_validate_alt_recovers_order():
    for fixture in (SING,):
        got = validate_kospace_alt(
            fixture.base.elements,
            [fixture.base.names_from_mask(m) for m in fixture.kfam.members],
            [fixture.base.names_from_mask(m) for m in fixture.ofam.members],
        )
        assert isinstance(got, KoSpace)
        assert got.base.up == fixture.base.up

    rng = random.Random(4)
    for _ in range(20):
        s = random_kospace(rng, rng.randint(1, 4))
        got = validate_kospace_alt(
            s.base.elements,
            [s.base.names_from_mask(m) for m in s.kfam.members],
            [s.base.names_from_mask(m) for m in s.ofam.members],
        )
        assert isinstance(got, KoSpace), got
        assert got.base.up == s.base.up and got.kfam.members == s.kfam.members


def test_validate_alt_rejects_non_separating_family():
    got = validate_kospace_alt(["x", "y"], [["x"], ["y"]], [[]])
    assert isinstance(got, list) and got


def test_validate_alt_empty():
    got = validate_kospace_alt([], [], [])
    assert isinstance(got, KoSpace) and got.n == 0


def test_degroot_fixed_points():
    assert degroot_dual(EMPTY_KS) == EMPTY_KS
    assert degroot_dual(SING).kfam.members == SING.kfam.members
    assert degroot_dual(SING).ofam.members == SING.ofam.members


def test_degroot_involution_random():
    rng = random.Random(17)
    for _ in range(100):
        s = random_kospace(rng, 4)
        d = degroot_dual(degroot_dual(s))
        assert d.base.up == s.base.up
        assert d.kfam.members == s.kfam.members
        assert d.ofam.members == s.ofam.members


def test_minimal_kospace_two_chain():
    s = minimal_kospace(CHAIN2)
    k, b, ab = masks(CHAIN2, "b", "b", "ab")
    assert set(s.kfam.members) == {ab, k}
    assert set(s.ofam.members) == {0, b}


def test_minimal_kospace_edges():
    assert minimal_kospace(FinPoset((), ())).n == 0
    one = minimal_kospace(FinPoset.from_leq(["x"], []))
    assert set(one.kfam.members) == {1} and set(one.ofam.members) == {0}


def test_from_dcpo_landmarks():
    one = from_dcpo(FinPoset.from_leq(["x"], []))
    assert set(one.kfam.members) == {1}
    assert set(one.ofam.members) == {0, 1}

    two = from_dcpo(CHAIN2)
    b, ab = masks(CHAIN2, "b", "ab")
    assert set(two.ofam.members) == {0, b, ab}
    assert set(two.kfam.members) == {ab, b}
    assert isinstance(revalidate(two), KoSpace)

    dual = degroot_dual(two)
    a_rev = _bits.mask_of([CHAIN2.index("a")])
    assert set(dual.kfam.members) == {0, a_rev, ab}
    assert set(dual.ofam.members) == {0, a_rev}
    assert isinstance(revalidate(dual), KoSpace)


def test_eq_order_recovery():
    # the base order is definable from either family
    rng = random.Random(23)
    for _ in range(30):
        s = random_kospace(rng, rng.randint(1, 4))
        for x in range(s.n):
            for y in range(s.n):
                via_o = all(
                    _bits.is_subset(1 << y, u)
                    for u in s.ofam.members
                    if _bits.is_subset(1 << x, u)
                )
                via_k = all(
                    _bits.is_subset(1 << y, k)
                    for k in s.kfam.members
                    if _bits.is_subset(1 << x, k)
                )
                assert via_o == s.base.leq_ix(x, y) == via_k


# ---------------------------------------------------------------- topology

def sierpinski() -> FinTopSpace:
    return FinTopSpace(("0", "1"), (0, 0b10, 0b11))


def test_from_topspace_sierpinski():
    s = from_topspace(sierpinski())
    assert s.base.leq("0", "1")
    assert set(s.ofam.members) == {0, 0b10, 0b11}
    assert set(s.kfam.members) == {0, 0b10, 0b11}  # every saturated upset
    assert isinstance(revalidate(s), KoSpace)


def test_from_topspace_discrete():
    t = FinTopSpace(("0", "1"), (0, 0b01, 0b10, 0b11))
    s = from_topspace(t)
    assert len(s.kfam) == 4 and len(s.ofam) == 4


def test_indiscrete_rejected():
    with pytest.raises(ValueError):
        FinTopSpace(("0", "1"), (0, 0b11))


def test_opens_must_close_under_union_and_intersection():
    with pytest.raises(ValueError):
        FinTopSpace(("0", "1"), (0, 0b01, 0b10))  # missing the union


def test_saturation_matches_brute_force():
    t = sierpinski()
    pts = tuple(t.points)
    opens = {frozenset(p for p in pts if m >> pts.index(p) & 1) for m in t.opens}
    sat = oracles.saturation(pts, opens, frozenset(["1"]))
    assert sat == frozenset(["1"])


# ---------------------------------------------------------------- morphisms

def test_identity_crelation_is_specialization_order():
    r = CRelation.identity(SING)
    assert r.rel.rows == SING.base.up
    assert isinstance(validate_crelation(r.rel, SING, SING), CRelation)


def test_hypergraph_of_continuous_map_validates():
    s = from_topspace(sierpinski())
    rel = hypergraph({"0": "0", "1": "1"}, s.base, s.base)
    assert isinstance(validate_crelation(rel, s, s), CRelation)
    collapse = hypergraph({"0": "0", "1": "0"}, s.base, s.base)
    assert isinstance(validate_crelation(collapse, s, s), CRelation)


def test_empty_relation_rejected_with_witness():
    rel = WeakRel(SING.base, SING.base, (0,))
    diags = validate_crelation(rel, SING, SING)
    assert diags and any("{x}" in d.witness for d in diags)


def test_crelation_degroot_involution():
    s = from_topspace(sierpinski())
    r = CRelation(s, s, hypergraph({"0": "0", "1": "1"}, s.base, s.base))
    d = crelation_degroot(r)
    assert isinstance(validate_crelation(d.rel, d.source, d.target), CRelation)
    dd = crelation_degroot(d)
    assert dd.rel.rows == r.rel.rows


def test_crelation_compose_against_brute_force():
    s = from_topspace(sierpinski())
    r1 = CRelation(s, s, hypergraph({"0": "0", "1": "1"}, s.base, s.base))
    r2 = CRelation(s, s, hypergraph({"0": "0", "1": "0"}, s.base, s.base))
    comp = crelation_compose(r1, r2)
    for i in range(2):
        for j in range(2):
            want = any(
                r1.rel.rows[i] >> m & 1 and r2.rel.rows[m] >> j & 1 for m in range(2)
            )
            assert bool(comp.rel.rows[i] >> j & 1) == want


def test_esakia_on_identity_and_hypergraph():
    s = from_topspace(sierpinski())
    assert esakia_check(CRelation.identity(s))
    assert esakia_check(CRelation(s, s, hypergraph({"0": "0", "1": "0"}, s.base, s.base)))


def test_kospace_isomorphic_respects_families():
    rng = random.Random(31)
    s = random_kospace(rng, 3)
    renamed = KoSpace(
        FinPoset(tuple(f"z{e}" for e in s.base.elements), s.base.up),
        UpsetFamily(FinPoset(tuple(f"z{e}" for e in s.base.elements), s.base.up), s.kfam.members),
        UpsetFamily(FinPoset(tuple(f"z{e}" for e in s.base.elements), s.base.up), s.ofam.members),
    )
    assert kospace_isomorphic(s, renamed) is not None
    assert kospace_isomorphic(s, minimal_kospace(CHAIN2)) is None or s.n == 2
