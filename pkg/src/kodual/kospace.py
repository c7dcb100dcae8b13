"""Ko-spaces: posets carrying compatible families of compact and open
upsets, with two equivalent axiomatizations, the de Groot dual, ingestion
from finite T0 spaces and finite dcpos, and c-relations between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union

from . import _bits
from .order import (
    FinPoset,
    TheoremViolation,
    UpsetFamily,
    WeakRel,
    _constrained_isos,
    subset_name,
    weakrel_compose,
)


@dataclass(frozen=True)
class Diagnostic:
    """One violated axiom with a concrete witness."""

    axiom: str
    message: str
    witness: tuple

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.message}"


@dataclass(frozen=True)
class KoSpace:
    base: FinPoset
    kfam: UpsetFamily
    ofam: UpsetFamily

    def __post_init__(self) -> None:
        if self.kfam.base != self.base or self.ofam.base != self.base:
            raise ValueError("families must live over the base poset")

    @property
    def n(self) -> int:
        return self.base.n

    def kname(self, mask: int) -> str:
        return subset_name(self.base, mask)


def _resolve_masks(base: FinPoset, fam: Iterable) -> list[int]:
    """Accept masks or iterables of element names."""
    out = []
    for member in fam:
        if isinstance(member, int):
            out.append(member)
        else:
            out.append(base.mask_from_names(member))
    return out


def _family_order(base: FinPoset, masks: Iterable[int]) -> list[int]:
    """Members ordered by cardinality then name tuple, for minimal witnesses."""
    return sorted(masks, key=lambda m: (_bits.popcount(m), base.names_from_mask(m)))


def _ordered_subfamilies(
    base: FinPoset, members: tuple[int, ...], index_masks: tuple[int, ...]
) -> list[int]:
    def key(fm: int) -> tuple:
        names = sorted(base.names_from_mask(members[i]) for i in _bits.bits_of(fm))
        return (_bits.popcount(fm), names)

    return sorted(index_masks, key=key)


def _upset_diagnostics(base: FinPoset, masks: list[int], side: str) -> list[Diagnostic]:
    diags = []
    for m in _family_order(base, masks):
        bad = base.upset_violation(m)
        if bad is not None:
            x, y = bad
            diags.append(
                Diagnostic(
                    "upset",
                    f"{side}-set {subset_name(base, m)} is not an upset: contains "
                    f"{base.elements[x]!r} but not {base.elements[y]!r} above it",
                    (subset_name(base, m), base.elements[x], base.elements[y]),
                )
            )
    return diags


def validate_kospace(
    base: FinPoset,
    kfam: Iterable,
    ofam: Iterable,
    override_guardrail: bool = False,
) -> Union[KoSpace, list[Diagnostic]]:
    """Check the axioms over a poset: every member an upset, closure of the
    k-side under codirected intersections and the o-side under directed
    unions, double compactness, and principal sets present. Returns the
    space or all violations, each with a minimal witness."""
    kmasks = _resolve_masks(base, kfam)
    omasks = _resolve_masks(base, ofam)
    diags = _upset_diagnostics(base, kmasks, "k") + _upset_diagnostics(base, omasks, "o")
    if diags:
        return diags

    kf = UpsetFamily.from_masks(base, kmasks)
    of = UpsetFamily.from_masks(base, omasks)
    diags.extend(_closure_diagnostics(kf, of, override_guardrail))
    diags.extend(_compactness_diagnostics(kf, of, override_guardrail))

    # principal witnesses: the up-set of each point is a k-set and the
    # complement of its down-set is an o-set
    full = _bits.full_mask(base.n)
    for x in range(base.n):
        if base.up[x] not in kf:
            diags.append(
                Diagnostic(
                    "S3",
                    f"principal upset {subset_name(base, base.up[x])} of "
                    f"{base.elements[x]!r} is not a k-set",
                    (base.elements[x],),
                )
            )
        if (full & ~base.dn[x]) not in of:
            diags.append(
                Diagnostic(
                    "S3",
                    f"complement {subset_name(base, full & ~base.dn[x])} of the "
                    f"down-set of {base.elements[x]!r} is not an o-set",
                    (base.elements[x],),
                )
            )
    if diags:
        return diags
    return KoSpace(base, kf, of)


def _closure_diagnostics(
    kf: UpsetFamily, of: UpsetFamily, override_guardrail: bool
) -> list[Diagnostic]:
    base = kf.base
    diags = []
    for fm in _ordered_subfamilies(base, kf.members, kf.codirected_submasks(override_guardrail)):
        inter = kf.intersection_of(fm)
        if inter not in kf:
            names = tuple(subset_name(base, kf.members[i]) for i in _bits.bits_of(fm))
            diags.append(
                Diagnostic(
                    "S1",
                    f"codirected intersection {subset_name(base, inter)} of "
                    f"{{{', '.join(names)}}} is not a k-set",
                    names,
                )
            )
            break
    for fm in _ordered_subfamilies(base, of.members, of.directed_submasks(override_guardrail)):
        uni = of.union_of(fm)
        if uni not in of:
            names = tuple(subset_name(base, of.members[i]) for i in _bits.bits_of(fm))
            diags.append(
                Diagnostic(
                    "S1",
                    f"directed union {subset_name(base, uni)} of "
                    f"{{{', '.join(names)}}} is not an o-set",
                    names,
                )
            )
            break
    return diags


def _compactness_diagnostics(
    kf: UpsetFamily, of: UpsetFamily, override_guardrail: bool
) -> list[Diagnostic]:
    base = kf.base
    diags = []
    for fm in _ordered_subfamilies(base, of.members, of.directed_submasks(override_guardrail)):
        uni = 0
        for i in _bits.bits_of(fm):
            uni |= of.members[i]
        for k in _family_order(base, kf.members):
            if _bits.is_subset(k, uni) and not any(
                _bits.is_subset(k, of.members[i]) for i in _bits.bits_of(fm)
            ):
                names = tuple(subset_name(base, of.members[i]) for i in _bits.bits_of(fm))
                diags.append(
                    Diagnostic(
                        "S2a",
                        f"k-set {subset_name(base, k)} is covered by the directed "
                        f"family {{{', '.join(names)}}} but by no single member",
                        (subset_name(base, k),) + names,
                    )
                )
                break
        else:
            continue
        break
    for fm in _ordered_subfamilies(base, kf.members, kf.codirected_submasks(override_guardrail)):
        inter = _bits.full_mask(base.n)
        for i in _bits.bits_of(fm):
            inter &= kf.members[i]
        for u in _family_order(base, of.members):
            if _bits.is_subset(inter, u) and not any(
                _bits.is_subset(kf.members[i], u) for i in _bits.bits_of(fm)
            ):
                names = tuple(subset_name(base, kf.members[i]) for i in _bits.bits_of(fm))
                diags.append(
                    Diagnostic(
                        "S2b",
                        f"the codirected family {{{', '.join(names)}}} meets inside "
                        f"o-set {subset_name(base, u)} but no single member fits",
                        (subset_name(base, u),) + names,
                    )
                )
                break
        else:
            continue
        break
    return diags


def validate_kospace_alt(
    elements: Iterable[str],
    kfam: Iterable,
    ofam: Iterable,
    override_guardrail: bool = False,
) -> Union[KoSpace, list[Diagnostic]]:
    """Order-free axiomatization over a bare set.

    Checks the two closure axioms and double compactness as above, then:
    every o-set is a union of k-sets and every k-set an intersection of
    o-sets; o-sets separate points; every point has a smallest k-set around
    it and a largest o-set avoiding it. On success the order is read off
    the o-side, cross-checked against the k-side, and the result is
    revalidated against the ordered axioms.
    """
    names = sorted(set(elements))
    discrete = FinPoset(tuple(names), tuple(1 << i for i in range(len(names))))
    kmasks = sorted(set(_resolve_masks(discrete, kfam)))
    omasks = sorted(set(_resolve_masks(discrete, ofam)))
    n = len(names)
    diags: list[Diagnostic] = []

    kf = UpsetFamily(discrete, tuple(kmasks))
    of = UpsetFamily(discrete, tuple(omasks))
    diags.extend(_closure_diagnostics(kf, of, override_guardrail))
    diags.extend(_compactness_diagnostics(kf, of, override_guardrail))

    # double fitness
    for u in _family_order(discrete, omasks):
        cover = 0
        for k in kmasks:
            if _bits.is_subset(k, u):
                cover |= k
        if cover != u:
            diags.append(
                Diagnostic(
                    "A1",
                    f"o-set {subset_name(discrete, u)} is not the union of the "
                    f"k-sets inside it",
                    (subset_name(discrete, u),),
                )
            )
    for k in _family_order(discrete, kmasks):
        hull = _bits.full_mask(n)
        for u in omasks:
            if _bits.is_subset(k, u):
                hull &= u
        if hull != k:
            diags.append(
                Diagnostic(
                    "A1",
                    f"k-set {subset_name(discrete, k)} is not the intersection of "
                    f"the o-sets around it",
                    (subset_name(discrete, k),),
                )
            )

    # separation
    for i in range(n):
        for j in range(i + 1, n):
            if all((u >> i & 1) == (u >> j & 1) for u in omasks):
                diags.append(
                    Diagnostic(
                        "A2",
                        f"no o-set separates {names[i]!r} from {names[j]!r}",
                        (names[i], names[j]),
                    )
                )

    # principality
    for i in range(n):
        around = [k for k in kmasks if k >> i & 1]
        if not around or not any(
            all(_bits.is_subset(k0, k) for k in around) for k0 in around
        ):
            diags.append(
                Diagnostic(
                    "A3",
                    f"no smallest k-set contains {names[i]!r}",
                    (names[i],),
                )
            )
        avoiding = [u for u in omasks if not u >> i & 1]
        if not avoiding or not any(
            all(_bits.is_subset(u, u0) for u in avoiding) for u0 in avoiding
        ):
            diags.append(
                Diagnostic(
                    "A3",
                    f"no largest o-set avoids {names[i]!r}",
                    (names[i],),
                )
            )
    if diags:
        return diags

    # order recovery: x <= y iff every o-set containing x contains y;
    # the k-side reading must agree
    up_o = []
    for i in range(n):
        m = 0
        for j in range(n):
            if all(u >> j & 1 for u in omasks if u >> i & 1):
                m |= 1 << j
        up_o.append(m)
    for i in range(n):
        m = 0
        for j in range(n):
            if all(k >> j & 1 for k in kmasks if k >> i & 1):
                m |= 1 << j
        if m != up_o[i]:
            raise TheoremViolation(
                f"order recovered from o-sets and from k-sets disagree at {names[i]!r}"
            )
    base = FinPoset(tuple(names), tuple(up_o))
    got = validate_kospace(base, kmasks, omasks, override_guardrail)
    if isinstance(got, list):
        raise TheoremViolation(
            "order-free axioms accepted a structure the ordered axioms reject: "
            + "; ".join(str(d) for d in got)
        )
    return got


def degroot_dual(s: KoSpace) -> KoSpace:
    """Reverse the order and complement-swap the two families. An
    involution on the nose: applying it twice gives back equal data."""
    full = _bits.full_mask(s.n)
    dual = s.base.dual()
    kfam = UpsetFamily.from_masks(dual, (full & ~u for u in s.ofam))
    ofam = UpsetFamily.from_masks(dual, (full & ~k for k in s.kfam))
    return KoSpace(dual, kfam, ofam)


def minimal_kospace(x: FinPoset) -> KoSpace:
    """The smallest admissible families: principal upsets and complements
    of principal downsets."""
    full = _bits.full_mask(x.n)
    kfam = UpsetFamily.from_masks(x, x.up)
    ofam = UpsetFamily.from_masks(x, (full & ~d for d in x.dn))
    return KoSpace(x, kfam, ofam)


@dataclass(frozen=True)
class FinTopSpace:
    """A finite T0 topological space: sorted points, open sets as masks."""

    points: tuple[str, ...]
    opens: tuple[int, ...]

    @classmethod
    def from_sets(cls, points: Iterable[str], opens: Iterable) -> "FinTopSpace":
        names = tuple(sorted(set(points)))
        helper = FinPoset(names, tuple(1 << i for i in range(len(names))))
        masks = tuple(sorted(set(_resolve_masks(helper, opens))))
        return cls(names, masks)

    def __post_init__(self) -> None:
        n = len(self.points)
        full = _bits.full_mask(n)
        os = set(self.opens)
        if 0 not in os:
            raise ValueError("the empty set must be open")
        if full not in os:
            raise ValueError("the whole set must be open")
        for a in self.opens:
            for b in self.opens:
                if a | b not in os:
                    raise ValueError(
                        f"opens not closed under union at {self._nm(a)}, {self._nm(b)}"
                    )
                if a & b not in os:
                    raise ValueError(
                        f"opens not closed under intersection at {self._nm(a)}, {self._nm(b)}"
                    )
        for i in range(n):
            for j in range(i + 1, n):
                if all((u >> i & 1) == (u >> j & 1) for u in self.opens):
                    raise ValueError(
                        f"not T0: no open separates {self.points[i]!r} "
                        f"from {self.points[j]!r}"
                    )

    def _nm(self, mask: int) -> str:
        return "{" + ",".join(self.points[i] for i in _bits.bits_of(mask)) + "}"

    @cached_property
    def specialization(self) -> FinPoset:
        """x <= y iff every open containing x contains y."""
        n = len(self.points)
        up = []
        for i in range(n):
            m = 0
            for j in range(n):
                if all(u >> j & 1 for u in self.opens if u >> i & 1):
                    m |= 1 << j
            up.append(m)
        return FinPoset(self.points, tuple(up))


def from_topspace(t: FinTopSpace) -> KoSpace:
    """Points under specialization; o-sets the opens, k-sets all
    intersections of opens (every subset of a finite space is compact, so
    the compact saturated sets are exactly the saturated ones)."""
    base = t.specialization
    full = _bits.full_mask(len(t.points))
    sat = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for u in t.opens:
                c = s & u
                if c not in sat:
                    sat.add(c)
                    nxt.append(c)
        frontier = nxt
    return KoSpace(
        base,
        UpsetFamily.from_masks(base, sorted(sat)),
        UpsetFamily.from_masks(base, t.opens),
    )


def from_dcpo(d: FinPoset) -> KoSpace:
    """Principal upsets as k-sets, all upsets as o-sets (on a finite poset
    the upsets are exactly the Scott-open sets)."""
    return KoSpace(
        d,
        UpsetFamily.from_masks(d, d.up),
        UpsetFamily.from_masks(d, d.upsets()),
    )


@dataclass(frozen=True)
class CRelation:
    source: KoSpace
    target: KoSpace
    rel: WeakRel

    def __post_init__(self) -> None:
        if self.rel.source != self.source.base or self.rel.target != self.target.base:
            raise ValueError("relation does not match the two bases")

    @classmethod
    def identity(cls, s: KoSpace) -> "CRelation":
        return cls(s, s, WeakRel.identity(s.base))


def validate_crelation(
    r: WeakRel, s: KoSpace, t: KoSpace
) -> Union[CRelation, list[Diagnostic]]:
    """A weakening relation is a morphism when it sends k-sets forward into
    k-sets and pulls o-sets back to o-sets."""
    diags: list[Diagnostic] = []
    if r.source != s.base or r.target != t.base:
        return [
            Diagnostic(
                "base", "relation does not run between the two base posets", ()
            )
        ]
    bad = r.weakening_violation()
    if bad is not None:
        diags.append(Diagnostic("weakening", bad, ()))
    for k in _family_order(s.base, s.kfam.members):
        img = r.image(k)
        if img not in t.kfam:
            diags.append(
                Diagnostic(
                    "kimage",
                    f"image {subset_name(t.base, img)} of k-set "
                    f"{subset_name(s.base, k)} is not a k-set of the target",
                    (subset_name(s.base, k),),
                )
            )
    for u in _family_order(t.base, t.ofam.members):
        pre = r.upre(u)
        if pre not in s.ofam:
            diags.append(
                Diagnostic(
                    "opreimage",
                    f"upper preimage {subset_name(s.base, pre)} of o-set "
                    f"{subset_name(t.base, u)} is not an o-set of the source",
                    (subset_name(t.base, u),),
                )
            )
    if diags:
        return diags
    return CRelation(s, t, r)


def crelation_compose(r1: CRelation, r2: CRelation) -> CRelation:
    """Relation composition; the result is revalidated."""
    got = validate_crelation(weakrel_compose(r1.rel, r2.rel), r1.source, r2.target)
    if isinstance(got, list):
        raise TheoremViolation(
            "composite of two valid morphisms failed to validate: "
            + "; ".join(str(d) for d in got)
        )
    return got


def crelation_degroot(r: CRelation) -> CRelation:
    """The converse relation runs between the duals, in the opposite
    direction; taking it twice gives back the original."""
    got = validate_crelation(
        r.rel.converse(), degroot_dual(r.target), degroot_dual(r.source)
    )
    if isinstance(got, list):
        raise TheoremViolation(
            "converse of a valid morphism failed to validate against the duals: "
            + "; ".join(str(d) for d in got)
        )
    return got


def esakia_check(r: CRelation, override_guardrail: bool = False) -> bool:
    """Images commute with codirected intersections of source k-sets and
    upper preimages with directed unions of target o-sets. True for every
    valid morphism; exists as an executable check of that fact."""
    s, t = r.source, r.target
    for fm in s.kfam.codirected_submasks(override_guardrail):
        inter = s.kfam.intersection_of(fm)
        pointwise = _bits.full_mask(t.n)
        for i in _bits.bits_of(fm):
            pointwise &= r.rel.image(s.kfam.members[i])
        if r.rel.image(inter) != pointwise:
            return False
    for fm in t.ofam.directed_submasks(override_guardrail):
        uni = t.ofam.union_of(fm)
        pointwise = 0
        for i in _bits.bits_of(fm):
            pointwise |= r.rel.upre(t.ofam.members[i])
        if r.rel.upre(uni) != pointwise:
            return False
    return True


def hypergraph(fn: dict[str, str], source: FinPoset, target: FinPoset) -> WeakRel:
    """x related to y iff fn(x) <= y in the target."""
    rows = []
    for name in source.elements:
        if name not in fn:
            raise ValueError(f"function does not cover element {name!r}")
        rows.append(target.up[target.index(fn[name])])
    return WeakRel(source, target, tuple(rows))


def kospace_isomorphic(s: KoSpace, t: KoSpace) -> Optional[tuple[int, ...]]:
    """An order-isomorphism of the bases carrying the k-family onto the
    k-family and the o-family onto the o-family, or None."""
    if s.n != t.n or len(s.kfam) != len(t.kfam) or len(s.ofam) != len(t.ofam):
        return None

    def profile(space: KoSpace, i: int) -> tuple[int, int, int, int]:
        return (
            _bits.popcount(space.base.up[i]),
            _bits.popcount(space.base.dn[i]),
            sum(1 for k in space.kfam if k >> i & 1),
            sum(1 for u in space.ofam if u >> i & 1),
        )

    sprof = [profile(s, i) for i in range(s.n)]
    tprof = [profile(t, j) for j in range(t.n)]

    for assign in _constrained_isos(
        s.base, t.base, lambda i, j: sprof[i] == tprof[j]
    ):
        def push(mask: int) -> int:
            out = 0
            for i in _bits.bits_of(mask):
                out |= 1 << assign[i]
            return out

        if {push(k) for k in s.kfam} == set(t.kfam.members) and {
            push(u) for u in s.ofam
        } == set(t.ofam.members):
            return assign
    return None
