"""Polarities, concept lattices, double base lattices, and Galois morphisms.

A polarity is a relation between a finite set of k-elements and a finite
set of o-elements. Its formal concepts form a complete lattice into which
both sides embed by the basic functions; conversely a lattice with a
join-dense and a meet-dense subset restricts back to a polarity. Both
directions and the corresponding morphism translations live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from . import _bits
from .order import (
    CompositionError,
    FinLattice,
    FinPoset,
    GuardrailError,
    _constrained_iso,
)

CLOSURE_GUARDRAIL = 1 << 20


@dataclass(frozen=True)
class Polarity:
    """Two element sets and a relation; rows[i] is the o-mask related to
    k-element i."""

    kset: tuple[str, ...]
    oset: tuple[str, ...]
    rows: tuple[int, ...]

    @classmethod
    def from_pairs(
        cls,
        kset: Iterable[str],
        oset: Iterable[str],
        rel: Iterable[tuple[str, str]],
    ) -> "Polarity":
        knames = sorted(set(kset))
        onames = sorted(set(oset))
        kix = {e: i for i, e in enumerate(knames)}
        oix = {e: i for i, e in enumerate(onames)}
        rows = [0] * len(knames)
        for a, b in rel:
            if a not in kix:
                raise ValueError(f"relation mentions unknown k-element {a!r}")
            if b not in oix:
                raise ValueError(f"relation mentions unknown o-element {b!r}")
            rows[kix[a]] |= 1 << oix[b]
        return cls(tuple(knames), tuple(onames), tuple(rows))

    @property
    def nk(self) -> int:
        return len(self.kset)

    @property
    def no(self) -> int:
        return len(self.oset)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        cols = [0] * self.no
        for i in range(self.nk):
            for j in _bits.bits_of(self.rows[i]):
                cols[j] |= 1 << i
        return tuple(cols)

    def rel_ix(self, ki: int, oj: int) -> bool:
        return bool(self.rows[ki] >> oj & 1)

    def pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            (self.kset[i], self.oset[j])
            for i in range(self.nk)
            for j in _bits.bits_of(self.rows[i])
        )

    # specialization preorders: k <= l iff every o-element related to l is
    # related to k; u <= v iff every k-element related to u is related to v
    def k_leq(self, i: int, i2: int) -> bool:
        return _bits.is_subset(self.rows[i2], self.rows[i])

    def o_leq(self, j: int, j2: int) -> bool:
        return _bits.is_subset(self.cols[j], self.cols[j2])

    def k_up_mask(self, i: int) -> int:
        """{l : k_i <= l} in the k-specialization preorder."""
        return _bits.mask_of(i2 for i2 in range(self.nk) if self.k_leq(i, i2))

    def o_up_mask(self, j: int) -> int:
        return _bits.mask_of(j2 for j2 in range(self.no) if self.o_leq(j, j2))

    def k_dn_mask(self, i: int) -> int:
        return _bits.mask_of(i2 for i2 in range(self.nk) if self.k_leq(i2, i))

    def o_dn_mask(self, j: int) -> int:
        return _bits.mask_of(j2 for j2 in range(self.no) if self.o_leq(j2, j))

    def ub_o(self, kmask: int) -> int:
        """o-elements related to everything in kmask (all of O when empty)."""
        out = _bits.full_mask(self.no)
        for i in _bits.bits_of(kmask):
            out &= self.rows[i]
        return out

    def lb_k(self, omask: int) -> int:
        out = _bits.full_mask(self.nk)
        for j in _bits.bits_of(omask):
            out &= self.cols[j]
        return out

    def is_purified(self) -> bool:
        return self.purity_violation() is None

    def purity_violation(self) -> Optional[tuple[str, str, str]]:
        """Least (side, a, b) with identical rows or columns; None if purified."""
        for i in range(self.nk):
            for i2 in range(i + 1, self.nk):
                if self.rows[i] == self.rows[i2]:
                    return ("k", self.kset[i], self.kset[i2])
        for j in range(self.no):
            for j2 in range(j + 1, self.no):
                if self.cols[j] == self.cols[j2]:
                    return ("o", self.oset[j], self.oset[j2])
        return None

    def purify(self) -> "Polarity":
        """Quotient both sides by row/column equality, keeping the
        lexicographically least representative of each class."""
        krep: dict[int, str] = {}
        for i in range(self.nk):
            krep.setdefault(self.rows[i], self.kset[i])
        orep: dict[int, str] = {}
        for j in range(self.no):
            orep.setdefault(self.cols[j], self.oset[j])
        keep_k = sorted(krep.values())
        keep_o = sorted(orep.values())
        kix = {e: i for i, e in enumerate(self.kset)}
        oix = {e: i for i, e in enumerate(self.oset)}
        pairs = [
            (a, b)
            for a in keep_k
            for b in keep_o
            if self.rel_ix(kix[a], oix[b])
        ]
        return Polarity.from_pairs(keep_k, keep_o, pairs)

    def k_poset(self) -> FinPoset:
        """The k-side specialization order as a poset (requires purified)."""
        bad = self.purity_violation()
        if bad is not None:
            raise ValueError(f"not purified: duplicate {bad[0]}-rows {bad[1]!r}, {bad[2]!r}")
        return FinPoset(self.kset, tuple(self.k_up_mask(i) for i in range(self.nk)))

    def o_poset(self) -> FinPoset:
        bad = self.purity_violation()
        if bad is not None:
            raise ValueError(f"not purified: duplicate {bad[0]}-rows {bad[1]!r}, {bad[2]!r}")
        return FinPoset(self.oset, tuple(self.o_up_mask(j) for j in range(self.no)))

    def flip(self) -> "Polarity":
        """The converse relation, with the two sides swapped."""
        return Polarity(self.oset, self.kset, self.cols)


@dataclass(frozen=True)
class Concept:
    extent: int
    intent: int


@dataclass(frozen=True)
class ConceptLattice:
    """All formal concepts of a polarity under the hierarchical order.

    Concepts are sorted by the name-tuple of their intent, and the lattice
    carrier names c000.. follow that order, so concept index == carrier
    index.
    """

    source: Polarity
    concepts: tuple[Concept, ...]

    @property
    def n(self) -> int:
        return len(self.concepts)

    @cached_property
    def lattice(self) -> FinLattice:
        width = max(1, len(str(self.n - 1)))
        names = tuple(f"c{i:0{width}d}" for i in range(self.n))
        up = tuple(
            _bits.mask_of(
                j
                for j in range(self.n)
                if _bits.is_subset(self.concepts[i].extent, self.concepts[j].extent)
            )
            for i in range(self.n)
        )
        return FinLattice(FinPoset(names, up))

    def leq_ix(self, i: int, j: int) -> bool:
        return _bits.is_subset(self.concepts[i].extent, self.concepts[j].extent)

    @cached_property
    def iota_k(self) -> tuple[int, ...]:
        """iota_k[i] = index of the concept with intent = row of k_i."""
        by_intent = {c.intent: ix for ix, c in enumerate(self.concepts)}
        return tuple(by_intent[self.source.rows[i]] for i in range(self.source.nk))

    @cached_property
    def iota_o(self) -> tuple[int, ...]:
        by_extent = {c.extent: ix for ix, c in enumerate(self.concepts)}
        return tuple(by_extent[self.source.cols[j]] for j in range(self.source.no))

    def concept_label(self, ix: int) -> str:
        c = self.concepts[ix]
        ext = ",".join(self.source.kset[i] for i in _bits.bits_of(c.extent))
        inte = ",".join(self.source.oset[j] for j in _bits.bits_of(c.intent))
        return f"({{{ext}}},{{{inte}}})"


def concept_lattice(p: Polarity) -> ConceptLattice:
    """Enumerate all formal concepts.

    Intents are the closure system generated by intersecting the rows,
    together with the full o-set; each intent B pairs with extent lb_k(B).
    """
    full = _bits.full_mask(p.no)
    intents = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for t in frontier:
            for r in p.rows:
                c = t & r
                if c not in intents:
                    intents.add(c)
                    nxt.append(c)
        if len(intents) > CLOSURE_GUARDRAIL:
            raise GuardrailError("concept closure system exceeds the guardrail")
        frontier = nxt

    def intent_key(b: int) -> tuple[str, ...]:
        return tuple(p.oset[j] for j in _bits.bits_of(b))

    ordered = sorted(intents, key=intent_key)
    concepts = tuple(Concept(p.lb_k(b), b) for b in ordered)
    return ConceptLattice(p, concepts)


@dataclass(frozen=True)
class DoubleBaseLattice:
    """A finite lattice with a join-dense k-subset and meet-dense o-subset."""

    lattice: FinLattice
    kset_mask: int
    oset_mask: int

    def __post_init__(self) -> None:
        bad = self.density_violation()
        if bad is not None:
            raise ValueError(f"density fails at element {bad!r}")

    def density_violation(self) -> Optional[str]:
        lat = self.lattice
        for a in range(lat.n):
            below_k = _bits.mask_of(
                i for i in _bits.bits_of(self.kset_mask) if lat.leq_ix(i, a)
            )
            if lat.join_mask(below_k) != a:
                return lat.carrier.elements[a]
            above_o = _bits.mask_of(
                j for j in _bits.bits_of(self.oset_mask) if lat.leq_ix(a, j)
            )
            if lat.meet_mask(above_o) != a:
                return lat.carrier.elements[a]
        return None

    @property
    def knames(self) -> tuple[str, ...]:
        return self.lattice.carrier.names_from_mask(self.kset_mask)

    @property
    def onames(self) -> tuple[str, ...]:
        return self.lattice.carrier.names_from_mask(self.oset_mask)


def to_double_base(p: Polarity) -> DoubleBaseLattice:
    """Concept lattice with the images of the basic functions designated."""
    bad = p.purity_violation()
    if bad is not None:
        raise ValueError(
            f"not purified: duplicate {bad[0]}-side elements {bad[1]!r}, {bad[2]!r}"
        )
    cl = concept_lattice(p)
    kmask = _bits.mask_of(cl.iota_k)
    omask = _bits.mask_of(cl.iota_o)
    return DoubleBaseLattice(cl.lattice, kmask, omask)


def to_polarity(d: DoubleBaseLattice) -> Polarity:
    """Restrict the lattice order to kset x oset."""
    lat = d.lattice
    pairs = [
        (lat.carrier.elements[i], lat.carrier.elements[j])
        for i in _bits.bits_of(d.kset_mask)
        for j in _bits.bits_of(d.oset_mask)
        if lat.leq_ix(i, j)
    ]
    return Polarity.from_pairs(d.knames, d.onames, pairs)


@dataclass(frozen=True)
class GaloisMorphism:
    """An adjoint pair between polarities: fwd on k-sides, bwd on o-sides,
    with fwd(k) related to u iff k is related to bwd(u)."""

    source: Polarity
    target: Polarity
    fwd: tuple[int, ...]
    bwd: tuple[int, ...]

    def __post_init__(self) -> None:
        bad = self.galois_violation()
        if bad is not None:
            k, u = bad
            raise ValueError(
                f"not a Galois morphism: condition fails at k={self.source.kset[k]!r}, "
                f"u={self.target.oset[u]!r}"
            )

    def galois_violation(self) -> Optional[tuple[int, int]]:
        for k in range(self.source.nk):
            for u in range(self.target.no):
                if self.target.rel_ix(self.fwd[k], u) != self.source.rel_ix(k, self.bwd[u]):
                    return (k, u)
        return None

    @classmethod
    def identity(cls, p: Polarity) -> "GaloisMorphism":
        return cls(p, p, tuple(range(p.nk)), tuple(range(p.no)))


def galois_compose(first: GaloisMorphism, second: GaloisMorphism) -> GaloisMorphism:
    if first.target != second.source:
        raise CompositionError("morphisms are not composable")
    fwd = tuple(second.fwd[first.fwd[k]] for k in range(first.source.nk))
    bwd = tuple(first.bwd[second.bwd[u]] for u in range(second.target.no))
    return GaloisMorphism(first.source, second.target, fwd, bwd)


def derive_bwd(source: Polarity, target: Polarity, fwd: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """The unique bwd making (fwd, bwd) a Galois morphism, if it exists.

    For each u the set {k : fwd(k) rel u} must be exactly one column of the
    source.
    """
    col_ix = {source.cols[j]: j for j in range(source.no)}
    bwd = []
    for u in range(target.no):
        need = _bits.mask_of(
            k for k in range(source.nk) if target.rel_ix(fwd[k], u)
        )
        j = col_ix.get(need)
        if j is None:
            return None
        bwd.append(j)
    return tuple(bwd)


def derive_fwd(source: Polarity, target: Polarity, bwd: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    row_ix = {target.rows[i]: i for i in range(target.nk)}
    fwd = []
    for k in range(source.nk):
        need = _bits.mask_of(
            u for u in range(target.no) if source.rel_ix(k, bwd[u])
        )
        i = row_ix.get(need)
        if i is None:
            return None
        fwd.append(i)
    return tuple(fwd)


@dataclass(frozen=True)
class EmbeddedGaloisMorphism:
    """An adjunction between double base lattices mapping k-side into
    k-side and o-side into o-side."""

    source: DoubleBaseLattice
    target: DoubleBaseLattice
    fwd: tuple[int, ...]
    bwd: tuple[int, ...]

    def __post_init__(self) -> None:
        l1, l2 = self.source.lattice, self.target.lattice
        for x in range(l1.n):
            for y in range(l2.n):
                if l2.leq_ix(self.fwd[x], y) != l1.leq_ix(x, self.bwd[y]):
                    raise ValueError(
                        f"not an adjunction: fails at "
                        f"({l1.carrier.elements[x]!r}, {l2.carrier.elements[y]!r})"
                    )
        for k in _bits.bits_of(self.source.kset_mask):
            if not self.target.kset_mask >> self.fwd[k] & 1:
                raise ValueError(
                    f"fwd leaves the designated k-subset at "
                    f"{l1.carrier.elements[k]!r}"
                )
        for u in _bits.bits_of(self.target.oset_mask):
            if not self.source.oset_mask >> self.bwd[u] & 1:
                raise ValueError(
                    f"bwd leaves the designated o-subset at "
                    f"{l2.carrier.elements[u]!r}"
                )

    @classmethod
    def identity(cls, d: DoubleBaseLattice) -> "EmbeddedGaloisMorphism":
        n = d.lattice.n
        return cls(d, d, tuple(range(n)), tuple(range(n)))


def embedded_compose(
    first: EmbeddedGaloisMorphism, second: EmbeddedGaloisMorphism
) -> EmbeddedGaloisMorphism:
    if first.target != second.source:
        raise CompositionError("morphisms are not composable")
    fwd = tuple(second.fwd[first.fwd[x]] for x in range(first.source.lattice.n))
    bwd = tuple(first.bwd[second.bwd[y]] for y in range(second.target.lattice.n))
    return EmbeddedGaloisMorphism(first.source, second.target, fwd, bwd)


def galois_to_embedded(m: GaloisMorphism) -> EmbeddedGaloisMorphism:
    """Extend an adjoint pair along the basic functions.

    fwd(a) is the join over the k-elements below a of the images of their
    fwd values; bwd(b) is the dual meet.
    """
    cl1 = concept_lattice(m.source)
    cl2 = concept_lattice(m.target)
    d1 = DoubleBaseLattice(cl1.lattice, _bits.mask_of(cl1.iota_k), _bits.mask_of(cl1.iota_o))
    d2 = DoubleBaseLattice(cl2.lattice, _bits.mask_of(cl2.iota_k), _bits.mask_of(cl2.iota_o))
    fwd = []
    for a in range(cl1.n):
        ks = [k for k in range(m.source.nk) if cl1.leq_ix(cl1.iota_k[k], a)]
        fwd.append(d2.lattice.join_mask(_bits.mask_of(cl2.iota_k[m.fwd[k]] for k in ks)))
    bwd = []
    for b in range(cl2.n):
        us = [u for u in range(m.target.no) if cl2.leq_ix(b, cl2.iota_o[u])]
        bwd.append(d1.lattice.meet_mask(_bits.mask_of(cl1.iota_o[m.bwd[u]] for u in us)))
    return EmbeddedGaloisMorphism(d1, d2, tuple(fwd), tuple(bwd))


def embedded_to_galois(m: EmbeddedGaloisMorphism) -> GaloisMorphism:
    """Restrict an embedded morphism to the designated subsets."""
    p1 = to_polarity(m.source)
    p2 = to_polarity(m.target)
    c1 = m.source.lattice.carrier
    c2 = m.target.lattice.carrier
    fwd = tuple(
        p2.kset.index(c2.elements[m.fwd[c1.index(name)]]) for name in p1.kset
    )
    bwd = tuple(
        p1.oset.index(c1.elements[m.bwd[c2.index(name)]]) for name in p2.oset
    )
    return GaloisMorphism(p1, p2, fwd, bwd)


def polarity_isomorphic(
    p: Polarity, q: Polarity
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """A pair of bijections (k-side, o-side) preserving the relation both
    ways, or None. Deterministic lexicographically-first search."""
    if p.nk != q.nk or p.no != q.no:
        return None
    krows_p = sorted(_bits.popcount(r) for r in p.rows)
    krows_q = sorted(_bits.popcount(r) for r in q.rows)
    if krows_p != krows_q:
        return None
    kmap: list[int] = []
    used_k = [False] * q.nk

    def extend_k(i: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
        if i == p.nk:
            omap = _match_columns(p, q, kmap)
            if omap is not None:
                return tuple(kmap), omap
            return None
        for j in range(q.nk):
            if used_k[j] or _bits.popcount(p.rows[i]) != _bits.popcount(q.rows[j]):
                continue
            kmap.append(j)
            used_k[j] = True
            got = extend_k(i + 1)
            if got is not None:
                return got
            kmap.pop()
            used_k[j] = False
        return None

    return extend_k(0)


def _match_columns(p: Polarity, q: Polarity, kmap: list[int]) -> Optional[tuple[int, ...]]:
    # once the k-sides are matched, each o-column must map to an equal column
    need: list[int] = []
    for u in range(p.no):
        m = 0
        for k in _bits.bits_of(p.cols[u]):
            m |= 1 << kmap[k]
        need.append(m)
    omap: list[int] = []
    used = [False] * q.no
    for u in range(p.no):
        found = False
        for v in range(q.no):
            if not used[v] and q.cols[v] == need[u]:
                omap.append(v)
                used[v] = True
                found = True
                break
        if not found:
            return None
    return tuple(omap)


def dbl_isomorphic(
    d1: DoubleBaseLattice, d2: DoubleBaseLattice
) -> Optional[tuple[int, ...]]:
    """Order-isomorphism of the carriers mapping kset onto kset and oset
    onto oset, or None."""
    p1, p2 = d1.lattice.carrier, d2.lattice.carrier
    if (
        _bits.popcount(d1.kset_mask) != _bits.popcount(d2.kset_mask)
        or _bits.popcount(d1.oset_mask) != _bits.popcount(d2.oset_mask)
    ):
        return None

    def compatible(i: int, j: int) -> bool:
        return (
            _bits.popcount(p1.up[i]) == _bits.popcount(p2.up[j])
            and _bits.popcount(p1.dn[i]) == _bits.popcount(p2.dn[j])
            and bool(d1.kset_mask >> i & 1) == bool(d2.kset_mask >> j & 1)
            and bool(d1.oset_mask >> i & 1) == bool(d2.oset_mask >> j & 1)
        )

    return _constrained_iso(p1, p2, compatible)
