"""Seeded random instances for tests, sweeps, and the command line.

Every generator draws only from the random.Random it is handed, so a seed
pins the output exactly. Nothing here lets the iteration order of a
string-keyed set or dict reach a result; families are built as sorted
integer masks throughout.
"""

from __future__ import annotations

import random

from . import _bits
from .bidcpo import BiDcpo, EmbeddedBiDcpo, from_dcpo_filters, validate_bidcpo
from .equivalence import bidcpo_to_embedded, dcpo_bidcpo, scott_fn_to_galois
from .kospace import (
    CRelation,
    FinTopSpace,
    KoSpace,
    from_dcpo,
    from_topspace,
    hypergraph,
    validate_crelation,
    validate_kospace,
)
from .localcompact import Dirspace
from .order import FinPoset, TheoremViolation, WeakRel
from .polarity import GaloisMorphism, Polarity

EDGE_PROB = 0.35
EXTRA_PROB = 0.3

GEN_KINDS = (
    "poset",
    "kospace",
    "polarity",
    "embedded",
    "dirspace",
    "crelation",
    "galois",
)


def _names(prefix: str, n: int) -> list[str]:
    # zero-padded so sorted name order equals index order
    width = len(str(max(n - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def random_poset(rng: random.Random, size: int) -> FinPoset:
    """A poset on `size` elements: each pair (i, j) with i < j becomes a
    relation with probability 0.35, then the reflexive-transitive closure
    is taken. Edges only run upward in index, so antisymmetry is free."""
    names = _names("e", size)
    pairs = [
        (names[i], names[j])
        for i in range(size)
        for j in range(i + 1, size)
        if rng.random() < EDGE_PROB
    ]
    return FinPoset.from_leq(names, pairs)


def random_monotone_map(
    rng: random.Random, src: FinPoset, dst: FinPoset, tries: int = 32
) -> dict[str, str]:
    """A random monotone map src -> dst.

    Elements are visited along a linear extension and each image is drawn
    uniformly from the common upper bounds of the images already fixed
    below it. A dead end (no common upper bound) restarts the whole draw;
    after `tries` dead ends the map falls back to a constant at a maximal
    element, which is monotone for free.
    """
    if src.n == 0:
        return {}
    if dst.n == 0:
        raise ValueError("no maps into an empty poset")
    order = sorted(range(src.n), key=lambda i: (_bits.popcount(src.dn[i]), i))
    for _ in range(tries):
        img: dict[int, int] = {}
        for x in order:
            below = [p for p in _bits.bits_of(src.dn[x]) if p != x]
            cands = [
                y
                for y in range(dst.n)
                if all(dst.leq_ix(img[p], y) for p in below)
            ]
            if not cands:
                break
            img[x] = rng.choice(cands)
        else:
            return {src.elements[x]: dst.elements[img[x]] for x in range(src.n)}
    y = dst.maximal_ixs(_bits.full_mask(dst.n))[0]
    return {e: dst.elements[y] for e in src.elements}


def random_kospace(rng: random.Random, size: int) -> KoSpace:
    """A random poset carrying the principal witnesses plus a sprinkling
    of extra upsets on both sides.

    At finite scale the closure and double-compactness axioms hold for any
    upset families whatsoever (a finite directed family has a greatest
    member and a finite codirected one a least), so only the principal
    witnesses are load-bearing; the result is validated anyway.
    """
    base = random_poset(rng, size)
    full = _bits.full_mask(size)
    kmasks = set(base.up)
    omasks = {full & ~d for d in base.dn}
    for m in base.upsets():
        if rng.random() < EXTRA_PROB:
            kmasks.add(m)
        if rng.random() < EXTRA_PROB:
            omasks.add(m)
    got = validate_kospace(base, sorted(kmasks), sorted(omasks))
    if isinstance(got, list):
        raise TheoremViolation(f"random ko-space failed validation: {got[0]}")
    return got


def random_polarity(rng: random.Random, nk: int, no: int) -> Polarity:
    """Independent fair bits, then purified: duplicate rows and columns
    are merged so both specialization preorders are partial orders. The
    purified sides can come out smaller than nk and no."""
    knames = _names("k", nk)
    onames = _names("u", no)
    pairs = [(a, b) for a in knames for b in onames if rng.random() < 0.5]
    return Polarity.from_pairs(knames, onames, pairs).purify()


def random_bidcpo(rng: random.Random, nk: int, no: int) -> BiDcpo:
    """A random purified polarity as a bi-dcpo; purified finite polarities
    always satisfy the axioms, and the validator confirms it."""
    got = validate_bidcpo(random_polarity(rng, nk, no))
    if isinstance(got, list):
        raise TheoremViolation(f"purified polarity failed validation: {got[0]}")
    return got


def random_membership_bidcpo(rng: random.Random, size: int) -> BiDcpo:
    """The membership bi-dcpo (all upsets against elements) of a random
    poset; these are always distributive."""
    return dcpo_bidcpo(random_poset(rng, size))


def random_filter_bidcpo(rng: random.Random, size: int) -> BiDcpo:
    """The filters-against-elements bi-dcpo of a random poset; these are
    always bicontinuous."""
    got = from_dcpo_filters(random_poset(rng, size))
    if isinstance(got, list):
        raise TheoremViolation(f"filter bi-dcpo failed validation: {got[0]}")
    return got


def random_embedded(rng: random.Random, size: int) -> EmbeddedBiDcpo:
    """The concept-lattice embedding of the membership bi-dcpo of a random
    poset with `size` elements; the carrier lattice can reach 2**size."""
    return bidcpo_to_embedded(random_membership_bidcpo(rng, size))


def random_t0_space(rng: random.Random, size: int) -> FinTopSpace:
    """Opens are the union/intersection closure of the principal upsets of
    a random poset plus random extra upsets. Principal upsets already
    separate points, so T0 is automatic."""
    base = random_poset(rng, size)
    opens = {0, _bits.full_mask(size)} | set(base.up)
    for m in base.upsets():
        if rng.random() < EXTRA_PROB:
            opens.add(m)
    while True:
        snap = sorted(opens)
        new = set()
        for i, a in enumerate(snap):
            for b in snap[i:]:
                new.add(a | b)
                new.add(a & b)
        if new <= opens:
            break
        opens |= new
    return FinTopSpace(tuple(base.elements), tuple(sorted(opens)))


def random_bicontinuous_kospace(rng: random.Random, size: int) -> KoSpace:
    """The ko-space of a random finite T0 space; spaces read off a finite
    topology are always bicontinuous."""
    return from_topspace(random_t0_space(rng, size))


def random_weakrel(rng: random.Random, src: FinPoset, dst: FinPoset) -> WeakRel:
    """A moderate number of random pairs, then the weakening closure."""
    allp = [(a, b) for a in src.elements for b in dst.elements]
    want = rng.randint(0, max(len(allp) // 3, 1)) if allp else 0
    return WeakRel.from_pairs(src, dst, rng.sample(allp, want), close=True)


def random_crelation(rng: random.Random, size_s: int, size_t: int) -> CRelation:
    """The hypergraph relation of a random monotone map between the
    principal-upset spaces of two random posets. Such relations are always
    morphisms: the forward image of a principal upset is principal and the
    preimage of an upset is an upset."""
    ds = random_poset(rng, size_s)
    dt = random_poset(rng, size_t)
    if dt.n == 0 and ds.n > 0:
        dt = FinPoset(("f0",), (1,))
    fn = random_monotone_map(rng, ds, dt)
    got = validate_crelation(hypergraph(fn, ds, dt), from_dcpo(ds), from_dcpo(dt))
    if isinstance(got, list):
        raise TheoremViolation(f"hypergraph relation failed validation: {got[0]}")
    return got


def random_galois(rng: random.Random, size_s: int, size_t: int) -> GaloisMorphism:
    """A random monotone map d2 -> d1 turned into the (preimage, map)
    morphism from the membership bi-dcpo of d1 to that of d2."""
    d1 = random_poset(rng, size_s)
    d2 = random_poset(rng, size_t)
    if d1.n == 0 and d2.n > 0:
        d1 = FinPoset(("f0",), (1,))
    return scott_fn_to_galois(random_monotone_map(rng, d2, d1), d2, d1)


def random_dirspace(rng: random.Random, size: int) -> Dirspace:
    """Each subset of the carrier joins the family with probability 0.25;
    any family at all is closed under directed unions at finite scale.
    Keep `size` at 4 or below: the de Groot machinery enumerates
    subfamilies of the saturation family."""
    masks = tuple(m for m in range(1 << size) if rng.random() < 0.25)
    return Dirspace(tuple(_names("p", size)), masks)


def generate(kind: str, seed: int, bound: int):
    """One structure of the given kind, pinned by the seed.

    `bound` caps the carrier: poset elements, ko-space and dirspace
    points, polarity side sizes, the base poset of an embedded instance,
    and the endpoint posets of a morphism.
    """
    if kind not in GEN_KINDS:
        raise ValueError(
            f"unknown kind {kind!r}; valid kinds: {', '.join(GEN_KINDS)}"
        )
    rng = random.Random(seed)
    if kind == "poset":
        return random_poset(rng, bound)
    if kind == "kospace":
        return random_kospace(rng, bound)
    if kind == "polarity":
        return random_polarity(rng, bound, bound)
    if kind == "embedded":
        return random_embedded(rng, min(bound, 4))
    if kind == "dirspace":
        return random_dirspace(rng, min(bound, 4))
    if kind == "crelation":
        return random_crelation(rng, bound, bound)
    return random_galois(rng, min(bound, 4), min(bound, 4))
