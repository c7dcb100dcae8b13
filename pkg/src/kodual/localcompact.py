"""Local compactness machinery: the black-triangle relation, local
compactness and bicontinuity for all three structure kinds, way-below,
the compact-side/open-side interdefinability results, Wilker's
interpolation conditions, the meets/joins transfer, dirspaces with their
de Groot involution, and the pipeline from finite frames to spaces.

Operations whose conclusion is a theorem (Wilker, the two bijections, the
transfer biconditional) verify it exhaustively and raise on failure with
the witness spelled out; a failure indicates a bug, not bad input.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Union

from . import _bits
from .bidcpo import (
    BiDcpo,
    EmbeddedBiDcpo,
    cp_pairs,
    from_dcpo_filters,
    is_distributive_bidcpo,
    is_distributive_embedded,
)
from .equivalence import bidcpo_to_embedded, bidcpo_to_kospace
from .kospace import Diagnostic, FinTopSpace, KoSpace, from_topspace
from .order import (
    FAMILY_GUARDRAIL,
    FinLattice,
    FinPoset,
    GuardrailError,
    TheoremViolation,
    directed_subsets,
    filters,
    is_distributive_lattice,
    distributivity_cut_witness,
    subset_name,
)
log = logging.getLogger(__name__)


def _theorem_failure(msg: str) -> TheoremViolation:
    log.error(msg)
    return TheoremViolation(msg)


def black_triangle(b: BiDcpo) -> tuple[int, ...]:
    """rows[u] is the mask of k-elements with u below k, meaning every
    o-element over k sits over u. The three equivalent descriptions are
    all computed and must agree."""
    p = b.pol
    rows = []
    for u in range(p.no):
        row = 0
        for k in range(p.nk):
            by_o = _bits.is_subset(p.rows[k], p.o_up_mask(u))
            by_k = _bits.is_subset(p.cols[u], p.k_dn_mask(k))
            by_rel = all(
                p.rel_ix(l, v)
                for l in _bits.bits_of(p.cols[u])
                for v in _bits.bits_of(p.rows[k])
            )
            if by_o != by_k or by_o != by_rel:
                raise TheoremViolation(
                    f"the three readings of the black triangle disagree at "
                    f"u={p.oset[u]!r}, k={p.kset[k]!r}"
                )
            if by_o:
                row |= _bits.bit(k)
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True)
class LCReport:
    """witnesses are (kind, data) pairs: kind "lc" for a pair with no
    interpolant, "dir"/"codir" for a side set failing (co)directedness."""

    locally_compact: bool
    bicontinuous: bool
    witnesses: tuple[tuple[str, object], ...]

    def __post_init__(self) -> None:
        has_lc = any(kind == "lc" for kind, _ in self.witnesses)
        if self.locally_compact != (not has_lc):
            raise ValueError("locally_compact flag contradicts the witnesses")
        if self.bicontinuous != (len(self.witnesses) == 0):
            raise ValueError("bicontinuous flag contradicts the witnesses")


def _lc_report_kospace(s: KoSpace) -> LCReport:
    wit: list[tuple[str, object]] = []
    km = s.kfam.members
    om = s.ofam.members
    for k in km:
        for u in om:
            if not _bits.is_subset(k, u):
                continue
            if not any(
                _bits.is_subset(k, u2) and _bits.is_subset(u2, k2) and _bits.is_subset(k2, u)
                for u2 in om
                for k2 in km
            ):
                wit.append(("lc", (subset_name(s.base, k), subset_name(s.base, u))))
    for u in om:
        below = [k for k in km if _bits.is_subset(k, u)]
        if not _inclusion_directed(below):
            wit.append(("dir", subset_name(s.base, u)))
    for k in km:
        above = [u for u in om if _bits.is_subset(k, u)]
        if not _inclusion_codirected(above):
            wit.append(("codir", subset_name(s.base, k)))
    return _report(wit)


def _inclusion_directed(masks: list[int]) -> bool:
    if not masks:
        return False
    return all(
        any(_bits.is_subset(a | b, c) for c in masks) for a in masks for b in masks
    )


def _inclusion_codirected(masks: list[int]) -> bool:
    if not masks:
        return False
    return all(
        any(_bits.is_subset(c, a & b) for c in masks) for a in masks for b in masks
    )


def _report(wit: list[tuple[str, object]]) -> LCReport:
    has_lc = any(kind == "lc" for kind, _ in wit)
    return LCReport(not has_lc, not wit, tuple(wit))


def _lc_report_bidcpo(b: BiDcpo) -> LCReport:
    p = b.pol
    black = black_triangle(b)
    wit: list[tuple[str, object]] = []
    for k in range(p.nk):
        for u in range(p.no):
            if not p.rel_ix(k, u):
                continue
            if not any(
                p.rows[k] >> u2 & 1 and black[u2] >> k2 & 1 and p.rel_ix(k2, u)
                for u2 in range(p.no)
                for k2 in range(p.nk)
            ):
                wit.append(("lc", (p.kset[k], p.oset[u])))
    kpos = p.k_poset()
    opos = p.o_poset()
    for u in range(p.no):
        if not kpos.is_directed_mask(p.cols[u]):
            wit.append(("dir", p.oset[u]))
    for k in range(p.nk):
        if not opos.is_codirected_mask(p.rows[k]):
            wit.append(("codir", p.kset[k]))
    return _report(wit)


def _lc_report_embedded(e: EmbeddedBiDcpo) -> LCReport:
    d = e.dbl
    pos = d.lattice.carrier
    kset = list(_bits.bits_of(d.kset_mask))
    oset = list(_bits.bits_of(d.oset_mask))
    wit: list[tuple[str, object]] = []
    for k in kset:
        for u in oset:
            if not pos.leq_ix(k, u):
                continue
            if not any(
                pos.leq_ix(k, u2) and pos.leq_ix(u2, k2) and pos.leq_ix(k2, u)
                for u2 in oset
                for k2 in kset
            ):
                wit.append(("lc", (pos.elements[k], pos.elements[u])))
    for u in oset:
        below = _bits.mask_of(k for k in kset if pos.leq_ix(k, u))
        if not pos.is_directed_mask(below):
            wit.append(("dir", pos.elements[u]))
    for k in kset:
        above = _bits.mask_of(u for u in oset if pos.leq_ix(k, u))
        if not pos.is_codirected_mask(above):
            wit.append(("codir", pos.elements[k]))
    return _report(wit)


def check_locally_compact(s: Union[KoSpace, BiDcpo, EmbeddedBiDcpo]) -> LCReport:
    """Every compact-below-open pair must interpolate through an
    open-below-compact pair. The report also carries the bicontinuity
    verdict, since the side conditions come for free from the same scan."""
    if isinstance(s, KoSpace):
        return _lc_report_kospace(s)
    if isinstance(s, BiDcpo):
        return _lc_report_bidcpo(s)
    if isinstance(s, EmbeddedBiDcpo):
        return _lc_report_embedded(s)
    raise TypeError(f"expected a ko-space or bi-dcpo, got {type(s).__name__}")


def check_bicontinuous(s: Union[KoSpace, BiDcpo, EmbeddedBiDcpo]) -> LCReport:
    """Locally compact, with each relational downset on the k-side directed
    and each relational upset on the o-side codirected."""
    return check_locally_compact(s)


def way_below(
    b: BiDcpo, v: str, u: str, override_guardrail: bool = False
) -> bool:
    """v approximates u through some compact element: v below-it k related
    to u. On the o-side dcpo this is exactly the way-below relation; when
    the downset of u is directed, that reading is verified literally by
    quantifying over directed subsets."""
    p = b.pol
    if v not in p.oset or u not in p.oset:
        raise ValueError("both arguments must be o-elements")
    rep = check_locally_compact(b)
    if not rep.locally_compact:
        raise ValueError(f"not locally compact: witnesses {rep.witnesses}")
    vi = p.oset.index(v)
    ui = p.oset.index(u)
    black = black_triangle(b)
    got = any(
        black[vi] >> k & 1 and p.rel_ix(k, ui) for k in range(p.nk)
    )
    # the directed-subset reading only characterizes way-below when the
    # k-elements under u form a directed set; outside that it can disagree
    # (an empty k-side leaves no mediating k, yet v <= u always joins up)
    if p.k_poset().is_directed_mask(p.cols[ui]):
        literal = _dcpo_way_below(p.o_poset(), vi, ui, override_guardrail)
        if literal != got:
            raise TheoremViolation(
                f"way-below via interpolation ({got}) disagrees with the "
                f"directed-subset reading ({literal}) at v={v!r}, u={u!r}"
            )
    return got


def _dcpo_way_below(
    pos: FinPoset, v: int, u: int, override_guardrail: bool = False
) -> bool:
    for mask in directed_subsets(pos, override_guardrail):
        join = pos.lub_of_mask(mask)
        if join is None or not pos.leq_ix(u, join):
            continue
        if not any(pos.leq_ix(v, e) for e in _bits.bits_of(mask)):
            return False
    return True


def poset_has_finite_meets(p: FinPoset) -> bool:
    """All meets of finite subsets, the empty one (a top) included."""
    if p.top_ix() is None:
        return False
    return all(
        p.glb_ix(i, j) is not None for i in range(p.n) for j in range(i + 1, p.n)
    )


def poset_has_finite_joins(p: FinPoset) -> bool:
    if p.bottom_ix() is None:
        return False
    return all(
        p.lub_ix(i, j) is not None for i in range(p.n) for j in range(i + 1, p.n)
    )


@dataclass(frozen=True)
class HofmannMisloveReport:
    """The two inverse readings: each k-element names the filter of
    o-elements over it, each o-element the directed downset of k-elements
    under it."""

    k_to_filter: tuple[tuple[str, tuple[str, ...]], ...]
    u_to_downset: tuple[tuple[str, tuple[str, ...]], ...]


def hofmann_mislove(b: BiDcpo, override_guardrail: bool = False) -> HofmannMisloveReport:
    """For a bicontinuous bi-dcpo, the relational upsets of k-elements are
    exactly the filters of the o-side poset, and the relational downsets of
    o-elements exactly the filters of the reversed k-side poset."""
    rep = check_bicontinuous(b)
    if not rep.bicontinuous:
        raise ValueError(f"not bicontinuous: witnesses {rep.witnesses}")
    p = b.pol
    opos = p.o_poset()
    kpos = p.k_poset()
    k_images = [p.rows[k] for k in range(p.nk)]
    o_filters = set(filters(opos, override_guardrail))
    if len(set(k_images)) != p.nk or set(k_images) != o_filters:
        raise _theorem_failure(
            f"k-side images {sorted(k_images)} do not biject onto the "
            f"o-poset filters {sorted(o_filters)}"
        )
    u_images = [p.cols[u] for u in range(p.no)]
    k_cofilters = set(filters(kpos.dual(), override_guardrail))
    if len(set(u_images)) != p.no or set(u_images) != k_cofilters:
        raise _theorem_failure(
            f"o-side images {sorted(u_images)} do not biject onto the "
            f"reversed k-poset filters {sorted(k_cofilters)}"
        )
    return HofmannMisloveReport(
        tuple(
            (p.kset[k], tuple(p.oset[j] for j in _bits.bits_of(p.rows[k])))
            for k in range(p.nk)
        ),
        tuple(
            (p.oset[u], tuple(p.kset[i] for i in _bits.bits_of(p.cols[u])))
            for u in range(p.no)
        ),
    )


def check_meets_joins_transfer(b: BiDcpo) -> bool:
    """In a bicontinuous bi-dcpo, the o-side has all finite meets exactly
    when the k-side has all finite joins; computes both and returns the
    shared value."""
    rep = check_bicontinuous(b)
    if not rep.bicontinuous:
        raise ValueError(f"not bicontinuous: witnesses {rep.witnesses}")
    o_meets = poset_has_finite_meets(b.pol.o_poset())
    k_joins = poset_has_finite_joins(b.pol.k_poset())
    if o_meets != k_joins:
        raise _theorem_failure(
            f"transfer broken: o-side finite meets {o_meets}, k-side finite "
            f"joins {k_joins}"
        )
    return o_meets


def wilker_check(
    x: Union[KoSpace, BiDcpo], variant: int
) -> tuple[bool, Optional[tuple]]:
    """Wilker interpolation. Variant 1 splits a compact under a binary
    join/union of opens; variant 2 is the de Groot mirror. Precondition
    failures raise; a genuine counterexample raises with the witness, since
    the statement is a theorem under the preconditions."""
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    if isinstance(x, BiDcpo):
        return _wilker_bidcpo(x, variant)
    if isinstance(x, KoSpace):
        return _wilker_kospace(x, variant)
    raise TypeError(f"expected a ko-space or bi-dcpo, got {type(x).__name__}")


def _wilker_bidcpo(b: BiDcpo, variant: int) -> tuple[bool, Optional[tuple]]:
    p = b.pol
    rep = check_locally_compact(b)
    if not rep.locally_compact:
        raise ValueError(f"not locally compact: witnesses {rep.witnesses}")
    black = black_triangle(b)
    opos = p.o_poset()
    kpos = p.k_poset()
    if variant == 1:
        for i in range(p.no):
            for j in range(p.no):
                if opos.lub_ix(i, j) is None:
                    raise ValueError(
                        f"o-side lacks the join of {p.oset[i]!r} and {p.oset[j]!r}"
                    )
        for u in range(p.no):
            if not kpos.is_directed_mask(p.cols[u]):
                continue
            dd_u = [
                v
                for v in range(p.no)
                if any(black[v] >> k & 1 and p.rel_ix(k, u) for k in range(p.nk))
            ]
            for v in range(p.no):
                join_uv = opos.lub_ix(u, v)
                for k in range(p.nk):
                    if not p.rel_ix(k, join_uv):
                        continue
                    if not any(
                        p.rel_ix(k, opos.lub_ix(u2, v)) for u2 in dd_u
                    ):
                        raise _theorem_failure(
                            f"no approximant below {p.oset[u]!r} keeps "
                            f"{p.kset[k]!r} under the join with {p.oset[v]!r}"
                        )
        return True, None
    for i in range(p.nk):
        for j in range(p.nk):
            if kpos.glb_ix(i, j) is None:
                raise ValueError(
                    f"k-side lacks the meet of {p.kset[i]!r} and {p.kset[j]!r}"
                )
    for k in range(p.nk):
        if not opos.is_codirected_mask(p.rows[k]):
            continue
        uu_k = [
            l
            for l in range(p.nk)
            if any(p.rel_ix(l, u2) and black[u2] >> k & 1 for u2 in range(p.no))
        ]
        for l in range(p.nk):
            meet_kl = kpos.glb_ix(k, l)
            for u in range(p.no):
                if not p.rel_ix(meet_kl, u):
                    continue
                if not any(p.rel_ix(kpos.glb_ix(k2, l), u) for k2 in uu_k):
                    raise _theorem_failure(
                        f"no approximant above {p.kset[k]!r} keeps the meet "
                        f"with {p.kset[l]!r} related to {p.oset[u]!r}"
                    )
    return True, None


def _wilker_kospace(s: KoSpace, variant: int) -> tuple[bool, Optional[tuple]]:
    rep = check_locally_compact(s)
    if not rep.locally_compact:
        raise ValueError(f"not locally compact: witnesses {rep.witnesses}")
    km = s.kfam.members
    om = s.ofam.members
    nm = lambda m: subset_name(s.base, m)  # noqa: E731
    if variant == 1:
        for u in om:
            for v in om:
                if (u | v) not in s.ofam:
                    raise ValueError(
                        f"o-sets not closed under the union of {nm(u)} and {nm(v)}"
                    )
        for u in om:
            below = [k for k in km if _bits.is_subset(k, u)]
            if not _inclusion_directed(below) or _union(below) != u:
                raise ValueError(
                    f"o-set {nm(u)} is not the directed union of the k-sets "
                    f"inside it"
                )
        for k in km:
            for u1 in om:
                for u2 in om:
                    if not _bits.is_subset(k, u1 | u2):
                        continue
                    if not any(
                        _bits.is_subset(l1, u1)
                        and _bits.is_subset(l2, u2)
                        and _bits.is_subset(k, l1 | l2)
                        for l1 in km
                        for l2 in km
                    ):
                        raise _theorem_failure(
                            f"{nm(k)} inside {nm(u1)} union {nm(u2)} admits "
                            f"no compact splitting"
                        )
        return True, None
    for k in km:
        for l in km:
            if (k & l) not in s.kfam:
                raise ValueError(
                    f"k-sets not closed under the intersection of {nm(k)} "
                    f"and {nm(l)}"
                )
    for k in km:
        above = [u for u in om if _bits.is_subset(k, u)]
        if not _inclusion_codirected(above) or _intersection(above, s.n) != k:
            raise ValueError(
                f"k-set {nm(k)} is not the codirected intersection of the "
                f"o-sets around it"
            )
    for k1 in km:
        for k2 in km:
            for u in om:
                if not _bits.is_subset(k1 & k2, u):
                    continue
                if not any(
                    _bits.is_subset(k1, v1)
                    and _bits.is_subset(k2, v2)
                    and _bits.is_subset(v1 & v2, u)
                    for v1 in om
                    for v2 in om
                ):
                    raise _theorem_failure(
                        f"{nm(k1)} meet {nm(k2)} inside {nm(u)} admits no "
                        f"open separation"
                    )
    return True, None


def _union(masks: list[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def _intersection(masks: list[int], n: int) -> int:
    out = _bits.full_mask(n)
    for m in masks:
        out &= m
    return out


def distributivity_from_O(b: BiDcpo, side: str = "O") -> bool:
    """Under local compactness and lattice-forming hypotheses on one side,
    that side's distributivity decides the distributivity of the whole
    structure; both are computed and must agree."""
    side = side.upper()
    if side not in ("O", "K"):
        raise ValueError("side must be 'O' or 'K'")
    rep = check_locally_compact(b)
    if not rep.locally_compact:
        raise ValueError(f"not locally compact: witnesses {rep.witnesses}")
    p = b.pol
    if side == "O":
        pos = p.o_poset()
        if not _has_binary_meets(pos) or not _has_binary_joins(pos):
            raise ValueError("o-side is not a lattice under its own order")
        for k in range(p.nk):
            row = p.rows[k]
            for i in _bits.bits_of(row):
                for j in _bits.bits_of(row):
                    if not any(
                        pos.leq_ix(w, i) and pos.leq_ix(w, j)
                        for w in _bits.bits_of(row)
                    ):
                        raise ValueError(
                            f"o-elements over {p.kset[k]!r} lack a lower "
                            f"bound for {p.oset[i]!r}, {p.oset[j]!r}"
                        )
    else:
        pos = p.k_poset()
        if not _has_binary_meets(pos) or not _has_binary_joins(pos):
            raise ValueError("k-side is not a lattice under its own order")
        for u in range(p.no):
            col = p.cols[u]
            for i in _bits.bits_of(col):
                for j in _bits.bits_of(col):
                    if not any(
                        pos.leq_ix(i, w) and pos.leq_ix(j, w)
                        for w in _bits.bits_of(col)
                    ):
                        raise ValueError(
                            f"k-elements under {p.oset[u]!r} lack an upper "
                            f"bound for {p.kset[i]!r}, {p.kset[j]!r}"
                        )
    side_distributive = pos.n == 0 or is_distributive_lattice(FinLattice(pos))
    whole, witness = is_distributive_bidcpo(b)
    if side_distributive != whole:
        raise _theorem_failure(
            f"side distributivity {side_distributive} disagrees with the "
            f"bi-dcpo's {whole} (witness {witness})"
        )
    return side_distributive


def _has_binary_meets(p: FinPoset) -> bool:
    return all(
        p.glb_ix(i, j) is not None for i in range(p.n) for j in range(i + 1, p.n)
    )


def _has_binary_joins(p: FinPoset) -> bool:
    return all(
        p.lub_ix(i, j) is not None for i in range(p.n) for j in range(i + 1, p.n)
    )


@dataclass(frozen=True)
class Dirspace:
    """A set with a family of subsets closed under directed unions; no
    intersection closure, no whole set, no empty set required."""

    points: tuple[str, ...]
    opens: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point names")
        if list(self.opens) != sorted(set(self.opens)):
            raise ValueError("opens must be sorted and deduplicated masks")
        full = _bits.full_mask(len(self.points))
        for m in self.opens:
            if m & ~full:
                raise ValueError("open set mask out of range")

    @classmethod
    def from_sets(cls, points, opens) -> "Dirspace":
        pts = tuple(points)
        index = {x: i for i, x in enumerate(pts)}
        masks = sorted({_bits.mask_of(index[x] for x in o) for o in opens})
        return cls(pts, tuple(masks))

    @property
    def n(self) -> int:
        return len(self.points)

    def sname(self, mask: int) -> str:
        return "{" + ",".join(x for i, x in enumerate(self.points) if mask >> i & 1) + "}"


def dirspace_violation(
    d: Dirspace, override_guardrail: bool = False
) -> Optional[str]:
    """Literal check of closure under directed unions; None when closed.
    A finite directed family contains its union, so this cannot fail, but
    the quantifier runs anyway."""
    for fam in _directed_subfamilies(d.opens, override_guardrail):
        if _union(list(fam)) not in d.opens:
            return f"directed union of {[d.sname(m) for m in fam]} is missing"
    return None


def _directed_subfamilies(masks: tuple[int, ...], override_guardrail: bool = False):
    if len(masks) > FAMILY_GUARDRAIL and not override_guardrail:
        raise GuardrailError(
            f"enumerating subfamilies of {len(masks)} sets exceeds the "
            f"guardrail of {FAMILY_GUARDRAIL}"
        )
    for r in range(1, len(masks) + 1):
        for fam in itertools.combinations(masks, r):
            if all(
                any(_bits.is_subset(a | b, c) for c in fam) for a in fam for b in fam
            ):
                yield fam


def _codirected_subfamilies(masks: tuple[int, ...], override_guardrail: bool = False):
    if len(masks) > FAMILY_GUARDRAIL and not override_guardrail:
        raise GuardrailError(
            f"enumerating subfamilies of {len(masks)} sets exceeds the "
            f"guardrail of {FAMILY_GUARDRAIL}"
        )
    for r in range(1, len(masks) + 1):
        for fam in itertools.combinations(masks, r):
            if all(
                any(_bits.is_subset(c, a & b) for c in fam) for a in fam for b in fam
            ):
                yield fam


def is_saturated(d: Dirspace, mask: int) -> bool:
    """The open neighborhoods form a codirected family whose intersection
    is the set itself. Stricter than being an intersection of opens, which
    in turn is stricter than being an upset."""
    hood = [u for u in d.opens if _bits.is_subset(mask, u)]
    return _inclusion_codirected(hood) and _intersection(hood, d.n) == mask


def is_compact(d: Dirspace, mask: int, override_guardrail: bool = False) -> bool:
    for fam in _directed_subfamilies(d.opens, override_guardrail):
        if _bits.is_subset(mask, _union(list(fam))) and not any(
            _bits.is_subset(mask, u) for u in fam
        ):
            return False
    return True


def ksat(d: Dirspace, override_guardrail: bool = False) -> tuple[int, ...]:
    """Compact saturated subsets. Saturated sets are intersections of
    their neighborhoods, so only intersections of opens are candidates."""
    closure = set(d.opens)
    frontier = list(d.opens)
    while frontier:
        fresh = []
        for a in frontier:
            for b in closure:
                c = a & b
                if c not in closure and c not in fresh:
                    fresh.append(c)
        closure.update(fresh)
        frontier = fresh
    return tuple(
        sorted(
            m
            for m in closure
            if is_saturated(d, m) and is_compact(d, m, override_guardrail)
        )
    )


@dataclass(frozen=True)
class DirspaceOps:
    ksat: tuple[int, ...]
    is_well_filtered: bool
    is_locally_compact: bool
    degroot: Dirspace
    has_degroot_duality: bool


def dirspace_ops(d: Dirspace, override_guardrail: bool = False) -> DirspaceOps:
    bad = dirspace_violation(d, override_guardrail)
    if bad is not None:
        raise ValueError(bad)
    ks = ksat(d, override_guardrail)
    well_filtered = True
    for fam in _codirected_subfamilies(ks, override_guardrail):
        inter = _intersection(list(fam), d.n)
        for u in d.opens:
            if _bits.is_subset(inter, u) and not any(
                _bits.is_subset(k, u) for k in fam
            ):
                well_filtered = False
    locally_compact = all(
        any(
            _bits.is_subset(k, u2) and _bits.is_subset(u2, k2) and _bits.is_subset(k2, u)
            for u2 in d.opens
            for k2 in ks
        )
        for k in ks
        for u in d.opens
        if _bits.is_subset(k, u)
    )
    full = _bits.full_mask(d.n)
    dual = Dirspace(d.points, tuple(sorted({full & ~k for k in ks})))
    dual_ok = dirspace_violation(dual, override_guardrail) is None
    dd = Dirspace(
        d.points, tuple(sorted({full & ~k for k in ksat(dual, override_guardrail)}))
    )
    return DirspaceOps(
        ksat=ks,
        is_well_filtered=well_filtered,
        is_locally_compact=locally_compact,
        degroot=dual,
        has_degroot_duality=dual_ok and dd == d,
    )


@dataclass(frozen=True)
class FramePipelineReport:
    """Points of the recovered space, with the two inverse isomorphisms
    between the input lattice and the open-set lattice of that space."""

    points: tuple[str, ...]
    to_opens: tuple[tuple[str, str], ...]
    from_opens: tuple[tuple[str, str], ...]


def finite_frame_pipeline(
    lat: FinLattice, override_guardrail: bool = False
) -> Union[FramePipelineReport, list[Diagnostic]]:
    """From a finite distributive lattice through its filter bi-dcpo to a
    ko-space and a topological space whose open-set lattice is the input
    again. Every station revalidates with its stated closure properties."""
    wit = distributivity_cut_witness(lat)
    if wit is not None:
        return [
            Diagnostic(
                "distributive",
                "input lattice is not distributive",
                tuple(lat.carrier.elements[i] for i in wit),
            )
        ]
    d = lat.carrier
    fs = filters(d, override_guardrail)
    b = from_dcpo_filters(d, override_guardrail)
    if isinstance(b, list):
        return b

    # the points correspond to the elements whose complemented downset is
    # a filter (the meet-prime elements)
    primes = {
        d.elements[u]
        for u in range(d.n)
        if (_bits.full_mask(d.n) & ~d.dn[u]) in fs
    }
    got_primes = {c.u for c in cp_pairs(b)}
    if got_primes != primes:
        raise TheoremViolation(
            f"completely prime pairs mark {sorted(got_primes)} but the "
            f"filter-complement elements are {sorted(primes)}"
        )

    # station: bi-dcpo, bicontinuous with a bounded distributive o-side
    rep = check_bicontinuous(b)
    if not rep.bicontinuous:
        raise TheoremViolation(f"filter bi-dcpo not bicontinuous: {rep.witnesses}")
    opos = b.pol.o_poset()
    if not poset_has_finite_meets(opos) or not poset_has_finite_joins(opos):
        raise TheoremViolation("o-side of the filter bi-dcpo is not bounded-complete")
    if not is_distributive_lattice(FinLattice(opos)):
        raise TheoremViolation("o-side of the filter bi-dcpo lost distributivity")

    # station: embedded, with the stated closures in the concept lattice
    e = bidcpo_to_embedded(b)
    if not check_locally_compact(e).locally_compact:
        raise TheoremViolation("embedded form is not locally compact")
    if not is_distributive_embedded(e):
        raise TheoremViolation("embedded form is not distributive")
    _assert_embedded_closures(e)

    # station: ko-space with a full topology on the o-side
    s = bidcpo_to_kospace(b)
    if isinstance(s, list):
        raise TheoremViolation(
            "distributive filter bi-dcpo rejected by the hat construction"
        )
    if not check_locally_compact(s).locally_compact:
        raise TheoremViolation("recovered ko-space is not locally compact")
    _assert_kospace_closures(s)

    # station: topological space; its saturation must reproduce the ko-space
    t = FinTopSpace.from_sets(
        s.base.elements,
        [set(s.base.names_from_mask(u)) for u in s.ofam],
    )
    s2 = from_topspace(t)
    if s2.base != s.base or set(s2.kfam.members) != set(s.kfam.members) or set(
        s2.ofam.members
    ) != set(s.ofam.members):
        raise TheoremViolation("saturating the recovered space changes the ko-space")

    # the two isomorphisms: element -> its open set {points whose filter
    # contains it}, and back; point names are filter names
    fmask = {subset_name(d, f): f for f in fs}
    to_opens = []
    open_of = {}
    for a in range(d.n):
        mask = _bits.mask_of(
            i
            for i, kname in enumerate(s.base.elements)
            if fmask[kname] >> a & 1
        )
        open_of[d.elements[a]] = mask
        to_opens.append((d.elements[a], subset_name(s.base, mask)))
    if set(open_of.values()) != set(s.ofam.members) or len(
        set(open_of.values())
    ) != d.n:
        raise TheoremViolation("element-to-open map is not onto the o-sets")
    for a in range(d.n):
        for c in range(d.n):
            if d.leq_ix(a, c) != _bits.is_subset(
                open_of[d.elements[a]], open_of[d.elements[c]]
            ):
                raise TheoremViolation(
                    f"element-to-open map does not preserve and reflect order "
                    f"at {d.elements[a]!r}, {d.elements[c]!r}"
                )
    from_opens = tuple((name, elt) for elt, name in to_opens)
    return FramePipelineReport(tuple(s.base.elements), tuple(to_opens), from_opens)


def _assert_embedded_closures(e: EmbeddedBiDcpo) -> None:
    lat = e.dbl.lattice
    kset = list(_bits.bits_of(e.dbl.kset_mask))
    oset = list(_bits.bits_of(e.dbl.oset_mask))
    if lat.top not in oset or lat.bottom not in oset:
        raise TheoremViolation("o-side misses the lattice bounds")
    if lat.bottom not in kset:
        raise TheoremViolation("k-side misses the lattice bottom")
    for a in oset:
        for b in oset:
            if lat.meet_ix(a, b) not in oset or lat.join_ix(a, b) not in oset:
                raise TheoremViolation("o-side not closed under meets and joins")
    for a in kset:
        for b in kset:
            if lat.join_ix(a, b) not in kset:
                raise TheoremViolation("k-side not closed under joins")


def _assert_kospace_closures(s: KoSpace) -> None:
    full = _bits.full_mask(s.n)
    if 0 not in s.ofam or full not in s.ofam:
        raise TheoremViolation("o-sets do not include the empty set and the space")
    if 0 not in s.kfam:
        raise TheoremViolation("k-sets do not include the empty set")
    for a in s.ofam:
        for b in s.ofam:
            if (a | b) not in s.ofam or (a & b) not in s.ofam:
                raise TheoremViolation("o-sets not closed under union and intersection")
    for a in s.kfam:
        for b in s.kfam:
            if (a | b) not in s.kfam:
                raise TheoremViolation("k-sets not closed under union")
