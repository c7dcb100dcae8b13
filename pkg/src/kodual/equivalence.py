"""The three-way correspondence between ko-spaces, distributive bi-dcpos,
and distributive embedded bi-dcpos, extended to morphisms, plus the
de Groot-compatible Lawson self-duality and Raney duality roundtrips.

Each constructed object is revalidated on the spot; the constructions are
backed by theorems, so a failed revalidation raises instead of returning a
rejection value. Rejections proper (non-distributive input where
distributivity is the precondition) are returned as diagnostic lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import _bits
from .bidcpo import BiDcpo, EmbeddedBiDcpo, cp_pairs, is_distributive_bidcpo, \
    is_distributive_embedded, validate_bidcpo, validate_embedded_bidcpo
from .kospace import CRelation, Diagnostic, KoSpace, validate_crelation, validate_kospace
from .order import (
    FinLattice,
    FinPoset,
    TheoremViolation,
    WeakRel,
    subset_name,
    upset_lattice,
)
from .polarity import (
    DoubleBaseLattice,
    GaloisMorphism,
    Polarity,
    to_double_base,
    to_polarity,
)


def kospace_to_bidcpo(s: KoSpace) -> BiDcpo:
    """The two families against inclusion. Always a distributive bi-dcpo;
    both facts are checked and a failure aborts."""
    knames = [subset_name(s.base, k) for k in s.kfam]
    onames = [subset_name(s.base, u) for u in s.ofam]
    pairs = [
        (knames[i], onames[j])
        for i, k in enumerate(s.kfam.members)
        for j, u in enumerate(s.ofam.members)
        if _bits.is_subset(k, u)
    ]
    got = validate_bidcpo(Polarity.from_pairs(knames, onames, pairs))
    if isinstance(got, list):
        raise TheoremViolation(
            "inclusion polarity of a valid ko-space failed validation: "
            + "; ".join(str(d) for d in got)
        )
    ok, witness = is_distributive_bidcpo(got)
    if not ok:
        raise TheoremViolation(
            f"inclusion polarity of a valid ko-space is not distributive "
            f"at {witness}"
        )
    return got


def _cp_points(p: Polarity) -> list[tuple[int, int]]:
    """CP pairs as index pairs, in k-index order (one pair per k)."""
    ix = []
    for c in cp_pairs(p):
        ix.append((p.kset.index(c.k), p.oset.index(c.u)))
    return ix


def bidcpo_to_kospace(b: BiDcpo) -> Union[KoSpace, list[Diagnostic]]:
    """Points are the completely prime pairs, named by their k-component;
    the families are the hat images of the two sides. Rejects
    non-distributive input with the violating quadruple."""
    ok, witness = is_distributive_bidcpo(b)
    if not ok:
        return [
            Diagnostic(
                "distributive",
                f"not distributive: quadruple (k, l, u, v) = {witness} meets the "
                f"cut premises but k is not related to u",
                witness,
            )
        ]
    p = b.pol
    points = _cp_points(p)
    names = [p.kset[k0] for k0, _ in points]
    leq = []
    for a, (k0, u0) in enumerate(points):
        for bb, (l0, v0) in enumerate(points):
            # points compare by reverse order of k-components; the
            # o-components co-vary with the k-components (the part of the
            # specialization order below u is exactly the part not
            # reaching k), so the same comparison read off the o-side
            # must agree
            by_k = p.k_leq(l0, k0)
            by_o = p.o_leq(v0, u0)
            if by_k != by_o:
                raise TheoremViolation(
                    f"CP-pair order via k-components and via o-components "
                    f"disagree between {names[a]!r} and {names[bb]!r}"
                )
            if by_k:
                leq.append((names[a], names[bb]))
    base = FinPoset.from_leq(names, leq)
    # hat of k: points whose k-component lies below k; equivalently the
    # points whose o-component k fails to reach
    kfam = []
    for k in range(p.nk):
        via_leq = _bits.mask_of(
            base.index(names[i]) for i, (k0, _) in enumerate(points) if p.k_leq(k0, k)
        )
        via_rel = _bits.mask_of(
            base.index(names[i])
            for i, (_, u0) in enumerate(points)
            if not p.rel_ix(k, u0)
        )
        if via_leq != via_rel:
            raise TheoremViolation(
                f"the two descriptions of the hat of k-element {p.kset[k]!r} disagree"
            )
        kfam.append(via_leq)
    ofam = []
    for u in range(p.no):
        via_rel = _bits.mask_of(
            base.index(names[i]) for i, (k0, _) in enumerate(points) if p.rel_ix(k0, u)
        )
        via_leq = _bits.mask_of(
            base.index(names[i])
            for i, (_, u0) in enumerate(points)
            if not p.o_leq(u, u0)
        )
        if via_rel != via_leq:
            raise TheoremViolation(
                f"the two descriptions of the hat of o-element {p.oset[u]!r} disagree"
            )
        ofam.append(via_rel)
    got = validate_kospace(base, kfam, ofam)
    if isinstance(got, list):
        raise TheoremViolation(
            "hat construction on a distributive bi-dcpo failed to validate: "
            + "; ".join(str(d) for d in got)
        )
    return got


def bidcpo_to_embedded(b: BiDcpo) -> EmbeddedBiDcpo:
    got = validate_embedded_bidcpo(to_double_base(b.pol))
    if isinstance(got, list):
        raise TheoremViolation(
            "concept lattice of a bi-dcpo failed embedded validation: "
            + "; ".join(str(d) for d in got)
        )
    return got


def embedded_to_bidcpo(e: EmbeddedBiDcpo) -> BiDcpo:
    got = validate_bidcpo(to_polarity(e.dbl))
    if isinstance(got, list):
        raise TheoremViolation(
            "designated subsets of an embedded bi-dcpo failed validation: "
            + "; ".join(str(d) for d in got)
        )
    return got


def embedded_to_kospace(e: EmbeddedBiDcpo) -> Union[KoSpace, list[Diagnostic]]:
    """Hat construction on the lattice's completely prime pairs."""
    if not is_distributive_embedded(e):
        return [
            Diagnostic(
                "distributive",
                "the ambient lattice is not distributive",
                (),
            )
        ]
    lat = e.dbl.lattice
    carrier = lat.carrier
    points = [
        (carrier.index(c.k), carrier.index(c.u)) for c in cp_pairs(lat)
    ]
    names = [carrier.elements[k0] for k0, _ in points]
    leq = []
    for a, (k0, u0) in enumerate(points):
        for bb, (l0, v0) in enumerate(points):
            by_k = carrier.leq_ix(l0, k0)
            by_o = carrier.leq_ix(v0, u0)
            if by_k != by_o:
                raise TheoremViolation(
                    f"CP-pair order via first and second components disagree "
                    f"between {names[a]!r} and {names[bb]!r}"
                )
            if by_k:
                leq.append((names[a], names[bb]))
    base = FinPoset.from_leq(names, leq)

    def hat(a: int) -> int:
        via_leq = _bits.mask_of(
            base.index(names[i]) for i, (k0, _) in enumerate(points)
            if carrier.leq_ix(k0, a)
        )
        via_not = _bits.mask_of(
            base.index(names[i]) for i, (_, u0) in enumerate(points)
            if not carrier.leq_ix(a, u0)
        )
        if via_leq != via_not:
            raise TheoremViolation(
                f"the two descriptions of the hat of {carrier.elements[a]!r} disagree"
            )
        return via_leq

    kfam = [hat(a) for a in _bits.bits_of(e.dbl.kset_mask)]
    ofam = [hat(a) for a in _bits.bits_of(e.dbl.oset_mask)]
    got = validate_kospace(base, kfam, ofam)
    if isinstance(got, list):
        raise TheoremViolation(
            "hat construction on a distributive embedded bi-dcpo failed to "
            "validate: " + "; ".join(str(d) for d in got)
        )
    return got


def kospace_to_embedded(s: KoSpace) -> EmbeddedBiDcpo:
    """All upsets of the base, with the two families designated inside."""
    lat = upset_lattice(s.base)
    carrier = lat.carrier
    kmask = _bits.mask_of(carrier.index(subset_name(s.base, k)) for k in s.kfam)
    omask = _bits.mask_of(carrier.index(subset_name(s.base, u)) for u in s.ofam)
    got = validate_embedded_bidcpo(DoubleBaseLattice(lat, kmask, omask))
    if isinstance(got, list):
        raise TheoremViolation(
            "upset lattice of a valid ko-space failed embedded validation: "
            + "; ".join(str(d) for d in got)
        )
    if not is_distributive_embedded(got):
        raise TheoremViolation("a lattice of upsets came out non-distributive")
    return got


def crelation_to_galois(r: CRelation) -> GaloisMorphism:
    """The image map on k-sides and the upper-preimage map on o-sides."""
    b1 = kospace_to_bidcpo(r.source)
    b2 = kospace_to_bidcpo(r.target)
    # polarity sides are sorted by name, families by mask; map through names
    kmask1 = {subset_name(r.source.base, m): m for m in r.source.kfam}
    omask2 = {subset_name(r.target.base, m): m for m in r.target.ofam}
    fwd = tuple(
        b2.pol.kset.index(subset_name(r.target.base, r.rel.image(kmask1[name])))
        for name in b1.pol.kset
    )
    bwd = tuple(
        b1.pol.oset.index(subset_name(r.source.base, r.rel.upre(omask2[name])))
        for name in b2.pol.oset
    )
    return GaloisMorphism(b1.pol, b2.pol, fwd, bwd)


def galois_to_crelation(m: GaloisMorphism) -> Union[CRelation, list[Diagnostic]]:
    """Transport along the hat identification: the point (k0, u0) of the
    source space is related to the point (l0, v0) of the target space when
    the image of k0 is not related to v0. Rejects non-distributive
    endpoints."""
    diags: list[Diagnostic] = []
    for label, pol in (("source", m.source), ("target", m.target)):
        got = validate_bidcpo(pol)
        if isinstance(got, list):
            diags.extend(got)
            continue
        ok, witness = is_distributive_bidcpo(got)
        if not ok:
            diags.append(
                Diagnostic(
                    "distributive",
                    f"{label} bi-dcpo is not distributive at quadruple {witness}",
                    witness,
                )
            )
    if diags:
        return diags
    x1 = bidcpo_to_kospace(BiDcpo(m.source))
    x2 = bidcpo_to_kospace(BiDcpo(m.target))
    assert isinstance(x1, KoSpace) and isinstance(x2, KoSpace)
    # points are named by their k-component; recover each index pair by name
    by_name1 = {m.source.kset[k0]: (k0, u0) for k0, u0 in _cp_points(m.source)}
    by_name2 = {m.target.kset[l0]: (l0, v0) for l0, v0 in _cp_points(m.target)}
    rows = []
    for name in x1.base.elements:
        k0, _ = by_name1[name]
        row = 0
        for j, tname in enumerate(x2.base.elements):
            _, v0 = by_name2[tname]
            if not m.target.rel_ix(m.fwd[k0], v0):
                row |= 1 << j
        rows.append(row)
    rel = WeakRel(x1.base, x2.base, tuple(rows))
    got = validate_crelation(rel, x1, x2)
    if isinstance(got, list):
        raise TheoremViolation(
            "transported relation failed to validate as a morphism: "
            + "; ".join(str(d) for d in got)
        )
    return got


def lawson_dual(b: BiDcpo) -> BiDcpo:
    """Swap the two sides and take the converse relation."""
    return BiDcpo(b.pol.flip())


def lawson_dual_morphism(m: GaloisMorphism) -> GaloisMorphism:
    """The same two component maps, swapped, now running backwards."""
    return GaloisMorphism(m.target.flip(), m.source.flip(), m.bwd, m.fwd)


@dataclass(frozen=True)
class AdjointPair:
    """A left adjoint between complete lattices together with its right
    adjoint: fwd(x) <= y exactly when x <= bwd(y)."""

    source: FinLattice
    target: FinLattice
    fwd: tuple[int, ...]
    bwd: tuple[int, ...]

    def __post_init__(self) -> None:
        for x in range(self.source.n):
            for y in range(self.target.n):
                if self.target.leq_ix(self.fwd[x], y) != self.source.leq_ix(
                    x, self.bwd[y]
                ):
                    raise ValueError(
                        f"not an adjunction: fails at "
                        f"({self.source.carrier.elements[x]!r}, "
                        f"{self.target.carrier.elements[y]!r})"
                    )


def weakrel_to_adjoint(r: WeakRel) -> AdjointPair:
    """Direct image against upper preimage, between the upset lattices."""
    l1 = upset_lattice(r.source)
    l2 = upset_lattice(r.target)
    masks1 = _upset_masks_in_carrier_order(r.source, l1)
    masks2 = _upset_masks_in_carrier_order(r.target, l2)
    ix2 = {m: i for i, m in enumerate(masks2)}
    ix1 = {m: i for i, m in enumerate(masks1)}
    fwd = tuple(ix2[r.image(m)] for m in masks1)
    bwd = tuple(ix1[r.upre(m)] for m in masks2)
    return AdjointPair(l1, l2, fwd, bwd)


def _upset_masks_in_carrier_order(base: FinPoset, lat: FinLattice) -> list[int]:
    by_name = {subset_name(base, m): m for m in base.upsets()}
    return [by_name[e] for e in lat.carrier.elements]


def adjoint_to_weakrel(a: AdjointPair, x: FinPoset, y: FinPoset) -> WeakRel:
    """x related to y when the image of the principal upset of x meets the
    principal downset of y."""
    masks1 = _upset_masks_in_carrier_order(x, a.source)
    masks2 = _upset_masks_in_carrier_order(y, a.target)
    ix1 = {m: i for i, m in enumerate(masks1)}
    rows = []
    for i in range(x.n):
        fwd_mask = masks2[a.fwd[ix1[x.up[i]]]]
        rows.append(_bits.mask_of(j for j in range(y.n) if fwd_mask & y.dn[j]))
    return WeakRel(x, y, tuple(rows))


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    forward: tuple[tuple[str, str], ...]
    backward: tuple[tuple[str, str], ...]
    detail: str = ""


def raney_poset_roundtrip(x: FinPoset) -> RoundtripReport:
    """x maps to the CP pair (principal upset, complement of principal
    downset) of its upset lattice; the composite with the unique-element
    reading back must be the identity."""
    lat = upset_lattice(x)
    cps = cp_pairs(lat)
    by_first = {c.k: c for c in cps}
    full = _bits.full_mask(x.n)
    forward = []
    backward = []
    ok = len(cps) == x.n
    for i in range(x.n):
        kname = subset_name(x, x.up[i])
        uname = subset_name(x, full & ~x.dn[i])
        label = f"({kname},{uname})"
        forward.append((x.elements[i], label))
        c = by_first.get(kname)
        if c is None or c.u != uname:
            ok = False
            continue
        # read back: the unique element in the extent not in the "avoid" part
        diff = x.up[i] & ~(full & ~x.dn[i])
        if _bits.popcount(diff) != 1 or not diff >> i & 1:
            ok = False
        backward.append((label, x.elements[i]))
    if ok:
        # order must also match: (k,u) <= (l,v) iff k >= l in the lattice
        for i in range(x.n):
            for j in range(x.n):
                if x.leq_ix(i, j) != _bits.is_subset(x.up[j], x.up[i]):
                    ok = False
    return RoundtripReport(ok, tuple(forward), tuple(backward))


def raney_lattice_roundtrip(
    l: FinLattice,
) -> Union[RoundtripReport, list[Diagnostic]]:
    """L maps into the upsets of its CP-pair poset by a ↦ {(k,u) : k ≤ a};
    joining the first components reads an upset back. Rejects non-Raney
    input."""
    from .bidcpo import is_raney

    if not is_raney(l):
        return [
            Diagnostic(
                "raney",
                "not a Raney lattice: some non-inequality is witnessed by no "
                "completely prime pair",
                (),
            )
        ]
    carrier = l.carrier
    points = [(carrier.index(c.k), carrier.index(c.u)) for c in cp_pairs(l)]
    names = [carrier.elements[k0] for k0, _ in points]
    leq = [
        (names[a], names[bb])
        for a, (k0, _) in enumerate(points)
        for bb, (l0, _) in enumerate(points)
        if carrier.leq_ix(l0, k0)
    ]
    cp_poset = FinPoset.from_leq(names, leq)
    ix = {name: i for i, name in enumerate(cp_poset.elements)}
    forward = []
    ok = True
    alpha = []
    for a in range(carrier.n):
        mask = _bits.mask_of(
            ix[names[i]] for i, (k0, _) in enumerate(points) if carrier.leq_ix(k0, a)
        )
        not_below = _bits.mask_of(
            ix[names[i]] for i, (_, u0) in enumerate(points)
            if not carrier.leq_ix(a, u0)
        )
        if mask != not_below or not cp_poset.is_upset(mask):
            ok = False
        alpha.append(mask)
        forward.append((carrier.elements[a], subset_name(cp_poset, mask)))
    if len(set(alpha)) != carrier.n or set(alpha) != set(cp_poset.upsets()):
        ok = False
    backward = []
    for mask in cp_poset.upsets():
        join = l.join_mask(
            _bits.mask_of(
                points[_point_by_name(names, cp_poset.elements[i])][0]
                for i in _bits.bits_of(mask)
            )
        )
        backward.append((subset_name(cp_poset, mask), carrier.elements[join]))
        if alpha[join] != mask:
            ok = False
    # order-isomorphism of the embedding
    for a in range(carrier.n):
        for b in range(carrier.n):
            if carrier.leq_ix(a, b) != _bits.is_subset(alpha[a], alpha[b]):
                ok = False
    return RoundtripReport(ok, tuple(forward), tuple(backward))


def _point_by_name(names: list[str], name: str) -> int:
    return names.index(name)


def dcpo_bidcpo(d: FinPoset) -> BiDcpo:
    """The upsets of a finite poset against its elements by membership; at
    finite scale the upsets are exactly the Scott-open sets."""
    ups = d.upsets()
    pairs = [
        (subset_name(d, m), d.elements[x]) for m in ups for x in _bits.bits_of(m)
    ]
    got = validate_bidcpo(
        Polarity.from_pairs([subset_name(d, m) for m in ups], d.elements, pairs)
    )
    if isinstance(got, list):
        raise TheoremViolation(
            "membership polarity of a finite poset failed validation: "
            + "; ".join(str(d_) for d_ in got)
        )
    return got


def scott_fn_to_galois(fn: dict[str, str], d2: FinPoset, d1: FinPoset) -> GaloisMorphism:
    """A monotone map d2 -> d1 becomes the morphism (preimage, the map
    itself) between the membership bi-dcpos. Rejects non-monotone input."""
    for a in range(d2.n):
        for b in range(d2.n):
            if d2.leq_ix(a, b) and not d1.leq(fn[d2.elements[a]], fn[d2.elements[b]]):
                raise ValueError(
                    f"not monotone: {d2.elements[a]!r} <= {d2.elements[b]!r} but "
                    f"images are not ordered"
                )
    b1 = dcpo_bidcpo(d1)
    b2 = dcpo_bidcpo(d2)
    # kset order of the membership polarity is by subset name, not mask
    fwd_table = [0] * len(b1.pol.kset)
    for m in d1.upsets():
        pre = _bits.mask_of(
            i for i in range(d2.n) if m >> d1.index(fn[d2.elements[i]]) & 1
        )
        fwd_table[b1.pol.kset.index(subset_name(d1, m))] = b2.pol.kset.index(
            subset_name(d2, pre)
        )
    bwd_table = [0] * d2.n
    for e in d2.elements:
        bwd_table[b2.pol.oset.index(e)] = b1.pol.oset.index(fn[e])
    return GaloisMorphism(b1.pol, b2.pol, tuple(fwd_table), tuple(bwd_table))


def galois_to_scott_fn(m: GaloisMorphism) -> dict[str, str]:
    """Read the monotone map back off the o-side of a morphism between
    membership bi-dcpos."""
    return {m.target.oset[j]: m.source.oset[m.bwd[j]] for j in range(m.target.no)}
