"""Posets, upset lattices, filters, weakening relations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import plain_poset

from kodual import _bits
from kodual.order import (
    FinPoset,
    GuardrailError,
    UpsetFamily,
    WeakRel,
    codirected_subsets,
    directed_subsets,
    filters,
    is_codirected,
    is_directed,
    is_distributive_lattice,
    poset_isomorphic,
    subset_name,
    upset_lattice,
    weakrel_compose,
)


def poset(spec: str, extra: str = "") -> FinPoset:
    """'a b c / a<b b<c' shorthand."""
    els, _, rels = spec.partition("/")
    pairs = [tuple(t.split("<")) for t in rels.split()]
    return FinPoset.from_leq(els.split() + extra.split(), pairs)


EMPTY = FinPoset((), ())
CHAIN2 = poset("a b / a<b")
CHAIN3 = poset("p q r / p<q q<r")
ANTICHAIN2 = poset("a b /")
DIAMOND = poset("0 a b 1 / 0<a 0<b a<1 b<1")
M3 = poset("0 a b c 1 / 0<a 0<b 0<c a<1 b<1 c<1")
N5 = poset("0 a b c 1 / 0<a a<b b<1 0<c c<1")


def test_from_leq_closes_and_sorts():
    p = poset("c a b / a<b b<c")
    assert p.elements == ("a", "b", "c")
    assert p.leq("a", "c")
    assert not p.leq("c", "a")


def test_from_leq_rejects_cycles():
    with pytest.raises(ValueError):
        poset("a b / a<b b<a")


def test_upset_lattice_small_shapes():
    assert upset_lattice(EMPTY).n == 1
    three = upset_lattice(CHAIN2)
    assert three.n == 3
    assert poset_isomorphic(three.carrier, CHAIN3) is not None
    four = upset_lattice(ANTICHAIN2)
    assert four.n == 4
    assert poset_isomorphic(four.carrier, DIAMOND) is not None


def test_upsets_match_brute_force():
    for p in (EMPTY, CHAIN3, ANTICHAIN2, DIAMOND, N5):
        els, le = plain_poset(p)
        got = {frozenset(p.names_from_mask(m)) for m in p.upsets()}
        assert got == oracles.all_upsets(els, le)


def test_directedness_edges():
    assert not is_directed(CHAIN2, ())
    assert is_directed(CHAIN2, ("a",))
    assert not is_directed(ANTICHAIN2, ("a", "b"))
    assert is_codirected(DIAMOND, ("a", "b", "0"))
    assert not is_codirected(ANTICHAIN2, ("a", "b"))


def test_directed_subsets_match_brute_force():
    for p in (CHAIN3, ANTICHAIN2, DIAMOND, M3):
        els, le = plain_poset(p)
        got = {frozenset(p.names_from_mask(m)) for m in directed_subsets(p)}
        assert got == oracles.directed_subsets(els, le)
        cod = {frozenset(p.names_from_mask(m)) for m in codirected_subsets(p)}
        want = {
            frozenset(s)
            for s in oracles.powerset(els)
            if oracles.is_codirected(le, s)
        }
        assert cod == want


def test_finite_codirected_subsets_have_minimum():
    for p in (CHAIN3, DIAMOND, M3, N5):
        for m in codirected_subsets(p):
            members = list(_bits.bits_of(m))
            assert any(
                all(p.leq_ix(i, j) for j in members) for i in members
            )


@pytest.mark.parametrize(
    "lat,expected",
    [(DIAMOND, True), (M3, False), (N5, False), (CHAIN3, True)],
)
def test_distributivity_landmarks(lat, expected):
    from kodual.order import FinLattice

    l = FinLattice(lat)
    assert is_distributive_lattice(l) is expected
    els, le = plain_poset(lat)
    assert oracles.lattice_distributive(els, le) is expected


def test_upset_lattice_always_distributive():
    # order-theoretic fact at any size; used downstream without re-proof
    for p in (EMPTY, CHAIN3, ANTICHAIN2, M3, N5):
        assert is_distributive_lattice(upset_lattice(p))


def test_filters_landmarks():
    assert len(filters(CHAIN3)) == 3
    assert len(filters(ANTICHAIN2)) == 2
    assert filters(EMPTY) == ()
    for p in (CHAIN3, ANTICHAIN2, DIAMOND, M3):
        els, le = plain_poset(p)
        got = {frozenset(p.names_from_mask(m)) for m in filters(p)}
        assert got == oracles.filters(els, le)


def test_upset_family_rejects_non_upsets():
    with pytest.raises(ValueError):
        UpsetFamily.from_masks(CHAIN2, (0b01,))  # {a} is not an upset of a<b


def test_upset_guardrail():
    big = FinPoset.from_leq([f"e{i:02d}" for i in range(21)], [])
    with pytest.raises(GuardrailError):
        big.upsets()
    assert len(big.upsets(override_guardrail=True)) == 2**21


def test_subset_name_is_sorted_and_braced():
    assert subset_name(CHAIN3, 0) == "{}"
    assert subset_name(CHAIN3, 0b111) == "{p,q,r}"


# ---------------------------------------------------------------- weakrel

def full_rel(p: FinPoset, q: FinPoset) -> WeakRel:
    return WeakRel(p, q, tuple(_bits.full_mask(q.n) for _ in range(p.n)))


def test_specialization_is_identity_for_composition():
    r = WeakRel.from_pairs(CHAIN2, CHAIN3, [("a", "p"), ("b", "q")], close=True)
    assert weakrel_compose(WeakRel.identity(CHAIN2), r).rows == r.rows
    assert weakrel_compose(r, WeakRel.identity(CHAIN3)).rows == r.rows


def test_full_compose_full_is_full():
    r = full_rel(CHAIN2, CHAIN3)
    s = full_rel(CHAIN3, ANTICHAIN2)
    assert weakrel_compose(r, s).rows == full_rel(CHAIN2, ANTICHAIN2).rows


def test_compose_matches_brute_force():
    r = WeakRel.from_pairs(CHAIN3, DIAMOND, [("q", "a"), ("r", "b")], close=True)
    s = WeakRel.from_pairs(DIAMOND, CHAIN2, [("1", "b"), ("b", "a")], close=True)
    got = weakrel_compose(r, s)
    for i, x in enumerate(CHAIN3.elements):
        for j, y in enumerate(CHAIN2.elements):
            direct = any(
                r.rows[i] >> m & 1 and s.rows[m] >> j & 1
                for m in range(DIAMOND.n)
            )
            assert bool(got.rows[i] >> j & 1) == direct


def test_weakening_violation_detected():
    with pytest.raises(ValueError):
        WeakRel.from_pairs(CHAIN2, CHAIN2, [("b", "a")])  # not closed downward-left


def test_compose_associative():
    r = WeakRel.from_pairs(CHAIN2, CHAIN3, [("a", "q")], close=True)
    s = WeakRel.from_pairs(CHAIN3, DIAMOND, [("p", "a")], close=True)
    t = WeakRel.from_pairs(DIAMOND, CHAIN2, [("0", "b")], close=True)
    left = weakrel_compose(weakrel_compose(r, s), t)
    right = weakrel_compose(r, weakrel_compose(s, t))
    assert left.rows == right.rows


# ---------------------------------------------------------------- isomorphism

def test_identity_isomorphism():
    assert poset_isomorphic(CHAIN3, CHAIN3) == (0, 1, 2)


def test_chain_vs_antichain_not_isomorphic():
    assert poset_isomorphic(CHAIN2, ANTICHAIN2) is None


def test_relabeled_diamond_found():
    q = poset("w x y z / w<x w<y x<z y<z")
    f = poset_isomorphic(DIAMOND, q)
    assert f is not None
    e1, le1 = plain_poset(DIAMOND)
    e2, le2 = plain_poset(q)
    assert oracles.posets_isomorphic(e1, le1, e2, le2) is not None


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 2**12 - 1))
def test_random_posets_upset_lattice_distributive(bits):
    # edges among 4 indexed elements, keeping only the upward ones
    names = ["w", "x", "y", "z"]
    pairs = []
    k = 0
    for i in range(4):
        for j in range(i + 1, 4):
            if bits >> k & 1:
                pairs.append((names[i], names[j]))
            k += 1
    p = FinPoset.from_leq(names, pairs)
    assert is_distributive_lattice(upset_lattice(p))
    els, le = plain_poset(p)
    got = {frozenset(p.names_from_mask(m)) for m in p.upsets()}
    assert got == oracles.all_upsets(els, le)
