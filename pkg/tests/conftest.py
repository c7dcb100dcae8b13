"""Fixture loading and converters to the plain form the oracles consume."""

from pathlib import Path

from kodual import _bits
from kodual.io import parse_document, realize

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str):
    got = realize(parse_document((FIXTURES / name).read_text(encoding="utf-8")))
    assert not isinstance(got, list), got
    return got


def plain_poset(p):
    els = tuple(p.elements)
    return els, {(a, b) for a in els for b in els if p.leq(a, b)}


def plain_polarity(pol):
    rel = {
        (pol.kset[i], pol.oset[j])
        for i in range(pol.nk)
        for j in range(pol.no)
        if pol.rel_ix(i, j)
    }
    return tuple(pol.kset), tuple(pol.oset), rel


def plain_family(base, fam):
    return {frozenset(base.names_from_mask(m)) for m in fam.members}


def plain_kospace(s):
    els, le = plain_poset(s.base)
    return els, le, plain_family(s.base, s.kfam), plain_family(s.base, s.ofam)


def mask_set(p, masks):
    return {frozenset(p.names_from_mask(m)) for m in masks}


def names_of(p, mask):
    return frozenset(p.names_from_mask(mask))


def full(p):
    return _bits.full_mask(p.n)
