"""Polarities, concept lattices, double base lattices, Galois morphisms."""

import random

import pytest

import oracles
from conftest import plain_polarity

from kodual import _bits
from kodual.order import FinPoset, poset_isomorphic
from kodual.polarity import (
    DoubleBaseLattice,
    EmbeddedGaloisMorphism,
    GaloisMorphism,
    Polarity,
    concept_lattice,
    dbl_isomorphic,
    derive_bwd,
    derive_fwd,
    embedded_compose,
    embedded_to_galois,
    galois_compose,
    galois_to_embedded,
    polarity_isomorphic,
    to_double_base,
    to_polarity,
)

M3_POL = Polarity.from_pairs("abc", "abc", [("a", "a"), ("b", "b"), ("c", "c")])
ONE_EMPTY = Polarity.from_pairs(["k"], ["u"], [])
EMPTY_POL = Polarity.from_pairs([], [], [])


def random_pol(rng, nk, no):
    rel = [
        (f"k{i}", f"u{j}")
        for i in range(nk)
        for j in range(no)
        if rng.random() < 0.5
    ]
    base = Polarity.from_pairs(
        [f"k{i}" for i in range(nk)], [f"u{j}" for j in range(no)], rel
    )
    return base


def test_purity_landmarks():
    assert M3_POL.purity_violation() is None
    assert ONE_EMPTY.purity_violation() is None
    dup = Polarity.from_pairs("xy", "u", [("x", "u"), ("y", "u")])
    bad = dup.purity_violation()
    assert bad is not None and bad[0] == "k"


def test_purify_keeps_purified_unchanged():
    assert M3_POL.purify() == M3_POL


def test_purify_collapses_duplicate_columns():
    p = Polarity.from_pairs("xy", ["u", "v"], [("x", "u"), ("x", "v")])
    q = p.purify()
    assert q.no == 1 and q.oset == ("u",)  # least representative kept


def test_purify_preserves_concept_lattice():
    rng = random.Random(11)
    for _ in range(20):
        p = random_pol(rng, 5, 5)
        before = concept_lattice(p).lattice.carrier
        after = concept_lattice(p.purify()).lattice.carrier
        assert poset_isomorphic(before, after) is not None


def test_concepts_match_brute_force():
    rng = random.Random(3)
    pols = [M3_POL, ONE_EMPTY, EMPTY_POL] + [random_pol(rng, 4, 4) for _ in range(25)]
    for p in pols:
        kset, oset, rel = plain_polarity(p)
        want = oracles.concepts(kset, oset, rel)
        cl = concept_lattice(p)
        got = {
            (
                frozenset(p.kset[i] for i in _bits.bits_of(c.extent)),
                frozenset(p.oset[j] for j in _bits.bits_of(c.intent)),
            )
            for c in cl.concepts
        }
        assert got == want


def test_concept_lattice_landmarks():
    two = concept_lattice(ONE_EMPTY)
    assert two.n == 2
    labels = {two.concept_label(i) for i in range(2)}
    assert labels == {"({k},{})", "({},{u})"}

    m3 = concept_lattice(M3_POL)
    assert m3.n == 5
    chain3 = FinPoset.from_leq("pqr", [("p", "q"), ("q", "r")])
    m3_shape = FinPoset.from_leq(
        "0abc1",
        [("0", x) for x in "abc"] + [(x, "1") for x in "abc"],
    )
    assert poset_isomorphic(m3.lattice.carrier, m3_shape) is not None
    assert poset_isomorphic(m3.lattice.carrier, chain3) is None

    assert concept_lattice(EMPTY_POL).n == 1


def test_concept_indices_follow_intent_name_order():
    cl = concept_lattice(M3_POL)
    names = cl.lattice.carrier.elements
    assert names == tuple(f"c{i}" for i in range(5))


def test_to_double_base_m3_designates_the_middle():
    d = to_double_base(M3_POL)
    lat = d.lattice
    assert d.knames == d.onames
    assert len(d.knames) == 3
    # mids only: neither the top nor the bottom is designated
    for name in d.knames:
        i = lat.carrier.index(name)
        assert lat.carrier.dn[i] != 1 << i  # not the bottom
        assert lat.carrier.up[i] != 1 << i  # not the top


def test_to_double_base_one_empty_is_two_chain():
    d = to_double_base(ONE_EMPTY)
    assert d.lattice.n == 2
    (kname,) = d.knames
    (oname,) = d.onames
    assert d.lattice.carrier.leq(oname, kname) and kname != oname


def test_to_double_base_empty_polarity():
    d = to_double_base(EMPTY_POL)
    assert d.lattice.n == 1
    assert d.knames == () and d.onames == ()


def test_fundamental_roundtrip_polarity_side():
    for p in (M3_POL, ONE_EMPTY, EMPTY_POL):
        back = to_polarity(to_double_base(p))
        assert polarity_isomorphic(p, back) is not None


def test_fundamental_roundtrip_lattice_side():
    chain3 = FinPoset.from_leq("012", [("0", "1"), ("1", "2")])
    from kodual.order import FinLattice

    d = DoubleBaseLattice(FinLattice(chain3), 0b110, 0b011)  # kset {1,2}, oset {0,1}
    p = to_polarity(d)
    assert (p.nk, p.no) == (2, 2)
    assert p.rows == (_bits.mask_of([1]), 0)  # only 1<=1 relates
    back = to_double_base(p)
    assert dbl_isomorphic(d, back) is not None


def test_density_violation_rejected():
    chain3 = FinPoset.from_leq("012", [("0", "1"), ("1", "2")])
    from kodual.order import FinLattice

    with pytest.raises(ValueError):
        DoubleBaseLattice(FinLattice(chain3), 0b100, 0b001)  # 1 is neither


# ---------------------------------------------------------------- morphisms

def test_galois_identity_roundtrips_to_embedded_identity():
    m = GaloisMorphism.identity(M3_POL)
    e = galois_to_embedded(m)
    n = e.source.lattice.n
    assert e.fwd == tuple(range(n)) and e.bwd == tuple(range(n))
    back = embedded_to_galois(e)
    assert back.fwd == m.fwd and back.bwd == m.bwd


def test_galois_into_one_point_target_is_constant():
    src = Polarity.from_pairs(
        "kl", ["u", "v"], [("k", "u"), ("k", "v"), ("l", "v")]
    )
    tgt = Polarity.from_pairs(["k1"], ["u1"], [("k1", "u1")])
    m = GaloisMorphism(src, tgt, (0, 0), (1,))  # bwd picks the all-related column v
    e = galois_to_embedded(m)
    assert len(set(e.fwd)) == 1  # the target lattice has a single concept


def test_roundtrip_galois_embedded_galois_on_random():
    rng = random.Random(5)
    for _ in range(10):
        p = random_pol(rng, 4, 4).purify()
        m = GaloisMorphism.identity(p)
        again = embedded_to_galois(galois_to_embedded(m))
        assert (again.fwd, again.bwd) == (m.fwd, m.bwd)


def test_embedded_image_of_composite_is_composite_of_images():
    src = Polarity.from_pairs(
        "kl", ["u", "v"], [("k", "u"), ("k", "v"), ("l", "v")]
    )
    tgt = Polarity.from_pairs(["k1"], ["u1"], [("k1", "u1")])
    m = GaloisMorphism(src, tgt, (0, 0), (1,))
    i = GaloisMorphism.identity(src)
    comp = galois_compose(i, m)
    lhs = galois_to_embedded(comp)
    rhs = embedded_compose(galois_to_embedded(i), galois_to_embedded(m))
    assert (lhs.fwd, lhs.bwd) == (rhs.fwd, rhs.bwd)


def test_adjunction_determines_each_half():
    src = Polarity.from_pairs(
        "kl", ["u", "v"], [("k", "u"), ("k", "v"), ("l", "v")]
    )
    tgt = Polarity.from_pairs(["k1"], ["u1"], [("k1", "u1")])
    m = GaloisMorphism(src, tgt, (0, 0), (1,))
    assert derive_bwd(src, tgt, m.fwd) == m.bwd
    assert derive_fwd(src, tgt, m.bwd) == m.fwd


def test_galois_rejects_broken_adjunction():
    src = Polarity.from_pairs(
        "kl", ["u", "v"], [("k", "u"), ("k", "v"), ("l", "v")]
    )
    tgt = Polarity.from_pairs(["k1"], ["u1"], [("k1", "u1")])
    with pytest.raises(ValueError):
        GaloisMorphism(src, tgt, (0, 0), (0,))  # bwd picks a column missing l


def test_polarity_isomorphic_finds_relabeling():
    q = Polarity.from_pairs("xyz", "xyz", [("x", "x"), ("y", "y"), ("z", "z")])
    assert polarity_isomorphic(M3_POL, q) is not None
    assert polarity_isomorphic(M3_POL, ONE_EMPTY) is None
