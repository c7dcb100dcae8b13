"""Bi-dcpos and embedded bi-dcpos: validation, the two distributivity
notions, the diagonal relation, bifoundedness, completely prime pairs,
Raney lattices, and the filter construction on a finite poset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import _bits
from .order import (
    FinLattice,
    FinPoset,
    TheoremViolation,
    codirected_subsets,
    directed_subsets,
    filters,
    is_distributive_lattice,
    subset_name,
)
from .kospace import Diagnostic
from .polarity import DoubleBaseLattice, Polarity, concept_lattice


@dataclass(frozen=True)
class BiDcpo:
    """A purified polarity whose specialization orders carry codirected
    meets on the k-side and directed joins on the o-side, subject to
    double compactness. At any finite size the last three conditions hold
    automatically; purity is the real constraint, and the validator checks
    all of them literally anyway."""

    pol: Polarity

    def __post_init__(self) -> None:
        bad = self.pol.purity_violation()
        if bad is not None:
            raise ValueError(
                f"not purified: {bad[0]}-side elements {bad[1]!r}, {bad[2]!r} coincide"
            )


@dataclass(frozen=True)
class EmbeddedBiDcpo:
    """A double base lattice whose designated subsets are closed under
    codirected meets / directed joins and satisfy double compactness."""

    dbl: DoubleBaseLattice


@dataclass(frozen=True)
class CPPair:
    k: str
    u: str


def validate_bidcpo(
    p: Polarity, override_guardrail: bool = False
) -> Union[BiDcpo, list[Diagnostic]]:
    bad = p.purity_violation()
    if bad is not None:
        side, a, b = bad
        return [
            Diagnostic(
                "purified",
                f"{side}-side elements {a!r} and {b!r} have identical "
                f"{'rows' if side == 'k' else 'columns'}",
                (side, a, b),
            )
        ]
    diags: list[Diagnostic] = []
    kpos = p.k_poset()
    opos = p.o_poset()
    codir = codirected_subsets(kpos, override_guardrail)
    direc = directed_subsets(opos, override_guardrail)
    for fm in codir:
        if kpos.glb_of_mask(fm) is None:
            diags.append(
                Diagnostic(
                    "L1",
                    f"codirected k-subset {{{', '.join(kpos.names_from_mask(fm))}}} "
                    f"has no meet",
                    kpos.names_from_mask(fm),
                )
            )
            break
    for fm in direc:
        if opos.lub_of_mask(fm) is None:
            diags.append(
                Diagnostic(
                    "L1",
                    f"directed o-subset {{{', '.join(opos.names_from_mask(fm))}}} "
                    f"has no join",
                    opos.names_from_mask(fm),
                )
            )
            break
    if diags:
        return diags
    for fm in direc:
        join = opos.lub_of_mask(fm)
        for k in range(p.nk):
            if p.rel_ix(k, join) and not any(
                p.rel_ix(k, u) for u in _bits.bits_of(fm)
            ):
                diags.append(
                    Diagnostic(
                        "L2a",
                        f"k-element {p.kset[k]!r} is below the join of the directed "
                        f"o-subset {{{', '.join(opos.names_from_mask(fm))}}} but "
                        f"below no member",
                        (p.kset[k],) + opos.names_from_mask(fm),
                    )
                )
                break
        else:
            continue
        break
    for fm in codir:
        meet = kpos.glb_of_mask(fm)
        for u in range(p.no):
            if p.rel_ix(meet, u) and not any(
                p.rel_ix(k, u) for k in _bits.bits_of(fm)
            ):
                diags.append(
                    Diagnostic(
                        "L2b",
                        f"the meet of the codirected k-subset "
                        f"{{{', '.join(kpos.names_from_mask(fm))}}} is below "
                        f"o-element {p.oset[u]!r} but no member is",
                        (p.oset[u],) + kpos.names_from_mask(fm),
                    )
                )
                break
        else:
            continue
        break
    if diags:
        return diags
    return BiDcpo(p)


def validate_embedded_bidcpo(
    d: DoubleBaseLattice, override_guardrail: bool = False
) -> Union[EmbeddedBiDcpo, list[Diagnostic]]:
    """Density is enforced by the double-base type; this adds closure of
    the designated subsets and double compactness, with meets and joins
    computed in the ambient lattice."""
    lat = d.lattice
    diags: list[Diagnostic] = []
    ksub = lat.carrier.restrict(d.kset_mask)
    osub = lat.carrier.restrict(d.oset_mask)
    kix = [lat.carrier.index(e) for e in ksub.elements]
    oix = [lat.carrier.index(e) for e in osub.elements]
    kcodir = codirected_subsets(ksub, override_guardrail)
    odir = directed_subsets(osub, override_guardrail)
    for fm in kcodir:
        meet = lat.meet_mask(_bits.mask_of(kix[i] for i in _bits.bits_of(fm)))
        if not d.kset_mask >> meet & 1:
            diags.append(
                Diagnostic(
                    "closure",
                    f"meet {lat.carrier.elements[meet]!r} of the codirected "
                    f"k-subset {{{', '.join(ksub.names_from_mask(fm))}}} "
                    f"is not a k-element",
                    ksub.names_from_mask(fm),
                )
            )
            break
    for fm in odir:
        join = lat.join_mask(_bits.mask_of(oix[i] for i in _bits.bits_of(fm)))
        if not d.oset_mask >> join & 1:
            diags.append(
                Diagnostic(
                    "closure",
                    f"join {lat.carrier.elements[join]!r} of the directed "
                    f"o-subset {{{', '.join(osub.names_from_mask(fm))}}} "
                    f"is not an o-element",
                    osub.names_from_mask(fm),
                )
            )
            break
    for fm in odir:
        join = lat.join_mask(_bits.mask_of(oix[i] for i in _bits.bits_of(fm)))
        for k in _bits.bits_of(d.kset_mask):
            if lat.leq_ix(k, join) and not any(
                lat.leq_ix(k, oix[i]) for i in _bits.bits_of(fm)
            ):
                diags.append(
                    Diagnostic(
                        "L2a",
                        f"k-element {lat.carrier.elements[k]!r} is below the join "
                        f"of {{{', '.join(osub.names_from_mask(fm))}}} but below "
                        f"no member",
                        (lat.carrier.elements[k],) + osub.names_from_mask(fm),
                    )
                )
                break
        else:
            continue
        break
    for fm in kcodir:
        meet = lat.meet_mask(_bits.mask_of(kix[i] for i in _bits.bits_of(fm)))
        for u in _bits.bits_of(d.oset_mask):
            if lat.leq_ix(meet, u) and not any(
                lat.leq_ix(kix[i], u) for i in _bits.bits_of(fm)
            ):
                diags.append(
                    Diagnostic(
                        "L2b",
                        f"the meet of {{{', '.join(ksub.names_from_mask(fm))}}} is "
                        f"below o-element {lat.carrier.elements[u]!r} but no "
                        f"member is",
                        (lat.carrier.elements[u],) + ksub.names_from_mask(fm),
                    )
                )
                break
        else:
            continue
        break
    if diags:
        return diags
    return EmbeddedBiDcpo(d)


def is_distributive_bidcpo(
    b: BiDcpo,
) -> tuple[bool, Optional[tuple[str, str, str, str]]]:
    """Cut-rule distributivity: whenever k sits below "u or l", l below v,
    and "v and k" below u, then k sits below u. Returns the truth value
    and, on failure, the least violating quadruple (k, l, u, v)."""
    p = b.pol
    o_ups = [p.o_up_mask(j) for j in range(p.no)]
    k_dns = [p.k_dn_mask(i) for i in range(p.nk)]
    for k in range(p.nk):
        for l in range(p.nk):
            for u in range(p.no):
                if p.rel_ix(k, u):
                    continue
                if not _bits.is_subset(o_ups[u] & p.rows[l], p.rows[k]):
                    continue
                for v in range(p.no):
                    if not p.rel_ix(l, v):
                        continue
                    if _bits.is_subset(p.cols[v] & k_dns[k], p.cols[u]):
                        return False, (p.kset[k], p.kset[l], p.oset[u], p.oset[v])
    return True, None


def is_distributive_embedded(e: EmbeddedBiDcpo) -> bool:
    return is_distributive_lattice(e.dbl.lattice)


def neswarrow_pairs(x: Union[Polarity, FinLattice]) -> tuple[tuple[str, str], ...]:
    """All pairs related by the diagonal arrow: the second component is
    maximal among those not above the first, and the first minimal among
    those not below the second."""
    if isinstance(x, FinLattice):
        p = x.carrier
        out = []
        for a in range(p.n):
            for b in range(p.n):
                if p.leq_ix(a, b):
                    continue
                b_maximal = all(
                    p.leq_ix(a, c)
                    for c in range(p.n)
                    if p.leq_ix(b, c) and c != b
                )
                a_minimal = all(
                    p.leq_ix(c, b)
                    for c in range(p.n)
                    if p.leq_ix(c, a) and c != a
                )
                if b_maximal and a_minimal:
                    out.append((p.elements[a], p.elements[b]))
        return tuple(out)
    bad = x.purity_violation()
    if bad is not None:
        raise ValueError(
            f"not purified: duplicate {bad[0]}-side elements {bad[1]!r}, {bad[2]!r}"
        )
    out = []
    for k in range(x.nk):
        for u in range(x.no):
            if x.rel_ix(k, u):
                continue
            u_maximal = all(
                x.o_leq(v, u)
                for v in range(x.no)
                if not x.rel_ix(k, v) and x.o_leq(u, v)
            )
            k_minimal = all(
                x.k_leq(k, l)
                for l in range(x.nk)
                if not x.rel_ix(l, u) and x.k_leq(l, k)
            )
            if u_maximal and k_minimal:
                out.append((x.kset[k], x.oset[u]))
    return tuple(out)


def is_bifounded(x: Union[Polarity, FinLattice]) -> bool:
    """Every non-related pair is dominated by a diagonal pair: some l
    below k and v above u with l diagonal to v."""
    nesw = set(neswarrow_pairs(x))
    if isinstance(x, FinLattice):
        p = x.carrier
        for a in range(p.n):
            for b in range(p.n):
                if p.leq_ix(a, b):
                    continue
                if not any(
                    (p.elements[k], p.elements[u]) in nesw
                    for k in _bits.bits_of(p.dn[a])
                    for u in _bits.bits_of(p.up[b])
                ):
                    return False
        return True
    for k in range(x.nk):
        for u in range(x.no):
            if x.rel_ix(k, u):
                continue
            if not any(
                (x.kset[l], x.oset[v]) in nesw
                for l in _bits.bits_of(x.k_dn_mask(k))
                for v in _bits.bits_of(x.o_up_mask(u))
            ):
                return False
    return True


def bifounded_crosscheck(p: Polarity) -> bool:
    """A polarity is bifounded exactly when its concept lattice is; both
    sides are computed and compared before the shared answer is returned."""
    direct = is_bifounded(p)
    via_lattice = is_bifounded(concept_lattice(p).lattice)
    if direct != via_lattice:
        raise TheoremViolation(
            f"polarity bifoundedness ({direct}) disagrees with its concept "
            f"lattice ({via_lattice})"
        )
    return direct


def cp_pairs(x: Union[BiDcpo, Polarity, FinLattice]) -> tuple[CPPair, ...]:
    """Completely prime pairs.

    In a lattice, (a, b) with the upset of a and downset of b partitioning
    the carrier. In a purified polarity, (k, u) with k the minimum of the
    k-elements not related to u and u the maximum of the o-elements not
    related to k.
    """
    if isinstance(x, FinLattice):
        p = x.carrier
        full = _bits.full_mask(p.n)
        out = []
        for a in range(p.n):
            for b in range(p.n):
                if p.up[a] & p.dn[b] == 0 and p.up[a] | p.dn[b] == full:
                    out.append(CPPair(p.elements[a], p.elements[b]))
        return tuple(out)
    pol = x.pol if isinstance(x, BiDcpo) else x
    bad = pol.purity_violation()
    if bad is not None:
        raise ValueError(
            f"not purified: duplicate {bad[0]}-side elements {bad[1]!r}, {bad[2]!r}"
        )
    out = []
    for k in range(pol.nk):
        for u in range(pol.no):
            if pol.rel_ix(k, u):
                continue
            k_minimum = all(
                pol.k_leq(k, l) for l in range(pol.nk) if not pol.rel_ix(l, u)
            )
            u_maximum = all(
                pol.o_leq(v, u) for v in range(pol.no) if not pol.rel_ix(k, v)
            )
            if k_minimum and u_maximum:
                out.append(CPPair(pol.kset[k], pol.oset[u]))
    return tuple(out)


def is_raney(l: FinLattice) -> bool:
    """Enough completely prime pairs: every a not below b admits a CP pair
    with first component below a and second above b."""
    cps = [
        (l.carrier.index(c.k), l.carrier.index(c.u)) for c in cp_pairs(l)
    ]
    p = l.carrier
    for a in range(p.n):
        for b in range(p.n):
            if p.leq_ix(a, b):
                continue
            if not any(p.leq_ix(k, a) and p.leq_ix(b, u) for k, u in cps):
                return False
    return True


def key_lemma_check(l: FinLattice) -> bool:
    """In a distributive complete lattice the completely prime pairs are
    exactly the diagonal pairs. Exists as an executable check of that
    fact; rejects non-distributive input."""
    if not is_distributive_lattice(l):
        raise ValueError("key lemma only applies to distributive lattices")
    cps = {(c.k, c.u) for c in cp_pairs(l)}
    return cps == set(neswarrow_pairs(l))


def from_dcpo_filters(
    d: FinPoset, override_guardrail: bool = False
) -> Union[BiDcpo, list[Diagnostic]]:
    """The polarity of filters against elements, membership as the
    relation. Rejects posets whose filters fail to separate x from y when
    x is not below y (cannot happen when every principal upset counts as a
    filter, but checked literally)."""
    fs = filters(d, override_guardrail)
    for x in range(d.n):
        for y in range(d.n):
            if d.leq_ix(x, y) or any(f >> x & 1 and not f >> y & 1 for f in fs):
                continue
            return [
                Diagnostic(
                    "filter-determined",
                    f"no filter contains {d.elements[x]!r} without "
                    f"{d.elements[y]!r}",
                    (d.elements[x], d.elements[y]),
                )
            ]
    pairs = [
        (subset_name(d, f), d.elements[x])
        for f in fs
        for x in _bits.bits_of(f)
    ]
    pol = Polarity.from_pairs(
        [subset_name(d, f) for f in fs], d.elements, pairs
    )
    return validate_bidcpo(pol, override_guardrail)
