"""Batch theorem sweeps.

Each registry entry pairs an instance corpus (exhaustive enumeration,
catalog lattices, or seeded random generation) with a check that returns
None on success and a witness message on failure. Reports carry pass/fail
counts and the first counterexample, minimized by element deletion where
the instance kind supports it. Instances are independent and immutable;
they run sequentially here, sorted by name, and one instance blowing up
does not stop the rest.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import _bits
from .bidcpo import (
    BiDcpo,
    bifounded_crosscheck,
    cp_pairs,
    is_bifounded,
    is_distributive_bidcpo,
    is_raney,
    key_lemma_check,
    validate_bidcpo,
)
from .catalog import lattices_up_to
from .equivalence import (
    bidcpo_to_embedded,
    bidcpo_to_kospace,
    crelation_to_galois,
    embedded_to_bidcpo,
    embedded_to_kospace,
    galois_to_crelation,
    kospace_to_bidcpo,
    kospace_to_embedded,
)
from .generate import (
    random_crelation,
    random_dirspace,
    random_filter_bidcpo,
    random_galois,
    random_kospace,
    random_monotone_map,
    random_polarity,
    random_poset,
    random_bicontinuous_kospace,
)
from .io import to_json
from .kospace import (
    CRelation,
    KoSpace,
    crelation_compose,
    degroot_dual,
    esakia_check,
    from_dcpo,
    hypergraph,
    kospace_isomorphic,
    validate_crelation,
    validate_kospace,
)
from .localcompact import (
    check_meets_joins_transfer,
    dirspace_ops,
    finite_frame_pipeline,
    hofmann_mislove,
    wilker_check,
)
from .order import (
    FAMILY_GUARDRAIL,
    FinLattice,
    FinPoset,
    GuardrailError,
    UpsetFamily,
    WeakRel,
    codirected_subsets,
    directed_subsets,
    is_distributive_lattice,
    subset_name,
)
from .polarity import (
    GaloisMorphism,
    Polarity,
    concept_lattice,
    dbl_isomorphic,
    embedded_to_galois,
    galois_compose,
    galois_to_embedded,
    polarity_isomorphic,
    to_double_base,
    to_polarity,
)

RANDOM_POLARITY_COUNT = 500
RANDOM_ROUNDTRIP_COUNT = 200
RANDOM_MORPHISM_COUNT = 100
RANDOM_PAIR_COUNT = 50


@dataclass(frozen=True)
class _Instance:
    name: str
    payload: object
    check: Callable[[object], Optional[str]]
    shrink: Optional[Callable[[object], list]] = None


@dataclass(frozen=True)
class SweepOutcome:
    """Aggregated result of one sweep, order-independent by construction:
    failures are sorted by instance name."""

    theorem_id: str
    total: int
    passed: int
    failures: tuple[tuple[str, str], ...]
    minimized: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [
            f"sweep {self.theorem_id}: {self.total} instances, "
            f"{self.passed} passed, {len(self.failures)} failed"
        ]
        if self.failures:
            name, msg = self.failures[0]
            lines.append(f"first counterexample: {name}")
            lines.append(f"  {msg}")
            if self.minimized is not None:
                lines.append("minimized counterexample:")
                lines.extend("  " + ln for ln in self.minimized.splitlines())
        return "\n".join(lines)


def _safe(check: Callable, payload: object) -> Optional[str]:
    try:
        return check(payload)
    except Exception as exc:  # per-instance isolation
        return f"{type(exc).__name__}: {exc}"


def _minimize(inst: _Instance) -> Optional[str]:
    payload = inst.payload
    shrunk = False
    progress = True
    while progress:
        progress = False
        for _, cand in inst.shrink(payload):
            if _safe(inst.check, cand) is not None:
                payload = cand
                shrunk = progress = True
                break
    if not shrunk:
        return None
    try:
        return to_json(payload).rstrip("\n")
    except Exception:
        return repr(payload)


def _names(prefix: str, n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


# ---------------------------------------------------------------- shrinkers


def _shrink_polarity(p: Polarity) -> list:
    out = []
    for drop in p.kset:
        keep = [e for e in p.kset if e != drop]
        q = Polarity.from_pairs(
            keep, p.oset, [(a, b) for a, b in p.pairs() if a != drop]
        ).purify()
        out.append((f"drop {drop!r}", q))
    for drop in p.oset:
        keep = [e for e in p.oset if e != drop]
        q = Polarity.from_pairs(
            p.kset, keep, [(a, b) for a, b in p.pairs() if b != drop]
        ).purify()
        out.append((f"drop {drop!r}", q))
    return out


def _drop_bit(m: int, x: int) -> int:
    low = (1 << x) - 1
    return (m & low) | ((m >> 1) & ~low)


def _shrink_kospace(s: KoSpace) -> list:
    out = []
    full = _bits.full_mask(s.n)
    for x in range(s.n):
        mask = full & ~(1 << x)
        base = s.base.restrict(mask)
        kfam = sorted({_drop_bit(m & mask, x) for m in s.kfam})
        ofam = sorted({_drop_bit(m & mask, x) for m in s.ofam})
        got = validate_kospace(base, kfam, ofam)
        if isinstance(got, KoSpace):
            out.append((f"drop {s.base.elements[x]!r}", got))
    return out


# ----------------------------------------------------------------- corpora


def _exhaustive_polarities(kmax: int, omax: int) -> list[tuple[str, Polarity]]:
    """Every relation on every grid up to kmax x omax, purified and
    deduplicated by the resulting structure."""
    out = []
    seen = set()
    for a in range(kmax + 1):
        knames = _names("k", a)
        for b in range(omax + 1):
            onames = _names("u", b)
            hexw = max(1, (a * b + 3) // 4)
            for bits in range(1 << (a * b)):
                pairs = [
                    (knames[i], onames[j])
                    for i in range(a)
                    for j in range(b)
                    if bits >> (i * b + j) & 1
                ]
                p = Polarity.from_pairs(knames, onames, pairs).purify()
                key = (p.kset, p.oset, p.rows)
                if key in seen:
                    continue
                seen.add(key)
                out.append((f"x{a}{b}-{bits:0{hexw}x}", p))
    return out


def _all_posets(nmax: int) -> list[FinPoset]:
    """All labeled posets with at most nmax elements (24 of them for
    nmax = 3), deduplicated by their order relation."""
    out = []
    for n in range(nmax + 1):
        names = _names("e", n)
        offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
        seen = set()
        for bits in range(1 << len(offdiag)):
            pairs = [
                (names[i], names[j])
                for t, (i, j) in enumerate(offdiag)
                if bits >> t & 1
            ]
            try:
                p = FinPoset.from_leq(names, pairs)
            except ValueError:
                continue
            if p.up in seen:
                continue
            seen.add(p.up)
            out.append(p)
    return out


def _admissible_spaces(p: FinPoset) -> list[tuple[str, KoSpace]]:
    """Every (K, O) family pair over p that satisfies the axioms: both
    sides must contain their principal witnesses, and at finite scale the
    closure and double-compactness axioms hold for any upset families at
    all (finite directed families have greatest members), so admissibility
    is exactly the principal witnesses plus arbitrary extra upsets."""
    ups = p.upsets()
    full = _bits.full_mask(p.n)
    mand_k = sorted(set(p.up))
    mand_o = sorted({full & ~d for d in p.dn})
    opt_k = [u for u in ups if u not in set(mand_k)]
    opt_o = [u for u in ups if u not in set(mand_o)]
    out = []
    for kb in range(1 << len(opt_k)):
        kfam = mand_k + [opt_k[t] for t in range(len(opt_k)) if kb >> t & 1]
        kf = UpsetFamily.from_masks(p, kfam)
        for ob in range(1 << len(opt_o)):
            ofam = mand_o + [opt_o[t] for t in range(len(opt_o)) if ob >> t & 1]
            s = KoSpace(p, kf, UpsetFamily.from_masks(p, ofam))
            out.append((f"k{kb:02x}-o{ob:02x}", s))
    return out


def _bounded_random_kospace(rng: random.Random, lo: int, hi: int) -> KoSpace:
    # family sizes must stay within the subfamily guardrail so the
    # validators can quantify literally
    while True:
        s = random_kospace(rng, rng.randint(lo, hi))
        if len(s.kfam) <= FAMILY_GUARDRAIL and len(s.ofam) <= FAMILY_GUARDRAIL:
            return s


def _bicontinuous_bidcpos(seed: int, bound: int, count: int) -> list[tuple[str, BiDcpo]]:
    """Half filter bi-dcpos of random posets, half inclusion bi-dcpos of
    spaces read off random finite topologies; both flavors are always
    bicontinuous."""
    rng = random.Random(seed)
    out = []
    for i in range(count // 2):
        out.append((f"flt-{i:03d}", random_filter_bidcpo(rng, rng.randint(1, bound))))
    for i in range(count - count // 2):
        s = random_bicontinuous_kospace(rng, rng.randint(1, bound))
        out.append((f"top-{i:03d}", kospace_to_bidcpo(s)))
    return out


def _bicontinuous_mixed(seed: int, bound: int, count: int) -> list[tuple[str, object]]:
    """As above but keeping the topological half as ko-spaces, for checks
    that accept both structure kinds."""
    rng = random.Random(seed)
    out = []
    for i in range(count // 2):
        out.append((f"flt-{i:03d}", random_filter_bidcpo(rng, rng.randint(1, bound))))
    for i in range(count - count // 2):
        out.append((f"top-{i:03d}", random_bicontinuous_kospace(rng, rng.randint(1, bound))))
    return out


# ---------------------------------------------------- canonical transports


def _hat_names(p: Polarity) -> tuple[FinPoset, list[str], list[str]]:
    """The point poset of the completely prime pairs, named by k-component
    as the hat construction names it, plus the subset name of the hat
    image of every k and o element over that poset."""
    kix = {e: i for i, e in enumerate(p.kset)}
    oix = {e: i for i, e in enumerate(p.oset)}
    pts = [(kix[c.k], oix[c.u]) for c in cp_pairs(p)]
    names = [p.kset[k0] for k0, _ in pts]
    leq = [
        (names[a], names[b])
        for a in range(len(pts))
        for b in range(len(pts))
        if p.k_leq(pts[b][0], pts[a][0])
    ]
    base = FinPoset.from_leq(names, leq)
    khat = [
        subset_name(
            base,
            _bits.mask_of(
                base.index(names[i])
                for i, (k0, _) in enumerate(pts)
                if p.k_leq(k0, k)
            ),
        )
        for k in range(p.nk)
    ]
    ohat = [
        subset_name(
            base,
            _bits.mask_of(
                base.index(names[i])
                for i, (k0, _) in enumerate(pts)
                if p.rel_ix(k0, u)
            ),
        )
        for u in range(p.no)
    ]
    return base, khat, ohat


def _concept_names(p: Polarity) -> tuple[list[str], list[str]]:
    """Carrier names of the concept images of the k and o elements."""
    cl = concept_lattice(p)
    carrier = cl.lattice.carrier
    return (
        [carrier.elements[cl.iota_k[i]] for i in range(p.nk)],
        [carrier.elements[cl.iota_o[j]] for j in range(p.no)],
    )


# ------------------------------------------------------------------ checks


def _check_bifounded(p: Polarity) -> Optional[str]:
    got = validate_bidcpo(p)
    if isinstance(got, list):
        return f"validation failed: {got[0]}"
    if not is_bifounded(p):
        return "polarity is not bifounded"
    if not bifounded_crosscheck(p):
        return "bifounded crosscheck returned False"
    return None


def _check_corr_distributivity(p: Polarity) -> Optional[str]:
    got = validate_bidcpo(p)
    if isinstance(got, list):
        return f"validation failed: {got[0]}"
    direct, witness = is_distributive_bidcpo(got)
    via_lattice = is_distributive_lattice(concept_lattice(p).lattice)
    if direct != via_lattice:
        where = f" (cut witness {witness})" if witness else ""
        return (
            f"cut-rule distributivity {direct} disagrees with "
            f"concept-lattice distributivity {via_lattice}{where}"
        )
    return None


def _check_raney(l: FinLattice) -> Optional[str]:
    want = is_distributive_lattice(l) and is_bifounded(l)
    got = is_raney(l)
    if got != want:
        return f"is_raney is {got} but distributive-and-bifounded is {want}"
    return None


def _check_key_lemma(l: FinLattice) -> Optional[str]:
    if not key_lemma_check(l):
        return "completely prime pairs differ from the diagonal pairs"
    return None


def _check_esakia(r: CRelation) -> Optional[str]:
    if not esakia_check(r):
        return (
            "images fail to commute with codirected intersections or "
            "preimages with directed unions"
        )
    return None


def _check_wilker(payload: object, variant: int) -> Optional[str]:
    try:
        ok, witness = wilker_check(payload, variant)
    except GuardrailError:
        raise
    except ValueError:
        return None  # closure precondition rejected the instance: vacuous
    if not ok:
        return f"interpolation failed at {witness}"
    return None


def _check_hofmis(b: BiDcpo) -> Optional[str]:
    hofmann_mislove(b)
    return None


def _check_meets_joins(b: BiDcpo) -> Optional[str]:
    check_meets_joins_transfer(b)
    return None


def _check_bijcorr(s: KoSpace) -> Optional[str]:
    b = kospace_to_bidcpo(s)
    s2 = bidcpo_to_kospace(b)
    if isinstance(s2, list):
        return f"inclusion bi-dcpo rejected by the hat construction: {s2[0]}"
    if kospace_isomorphic(s, s2) is None:
        return "space -> bi-dcpo -> space came back non-isomorphic"
    e = kospace_to_embedded(s)
    s3 = embedded_to_kospace(e)
    if isinstance(s3, list):
        return f"upset-lattice embedding rejected by the hat construction: {s3[0]}"
    if kospace_isomorphic(s, s3) is None:
        return "space -> embedded -> space came back non-isomorphic"
    b2 = kospace_to_bidcpo(s2)
    if polarity_isomorphic(b.pol, b2.pol) is None:
        return "bi-dcpo -> space -> bi-dcpo came back non-isomorphic"
    e2 = bidcpo_to_embedded(b)
    b3 = embedded_to_bidcpo(e2)
    if polarity_isomorphic(b.pol, b3.pol) is None:
        return "bi-dcpo -> embedded -> bi-dcpo came back non-isomorphic"
    e4 = kospace_to_embedded(s3)
    if dbl_isomorphic(e.dbl, e4.dbl) is None:
        return "embedded -> space -> embedded came back non-isomorphic"
    b5 = embedded_to_bidcpo(e)
    e5 = bidcpo_to_embedded(b5)
    if dbl_isomorphic(e.dbl, e5.dbl) is None:
        return "embedded -> bi-dcpo -> embedded came back non-isomorphic"
    return None


def _check_crelation_roundtrip(r: CRelation) -> Optional[str]:
    m = crelation_to_galois(r)
    r2 = galois_to_crelation(m)
    if isinstance(r2, list):
        return f"transport back rejected: {r2[0]}"
    s, t = r.source, r.target
    want_src = sorted(subset_name(s.base, s.base.up[x]) for x in range(s.n))
    want_tgt = sorted(subset_name(t.base, t.base.up[y]) for y in range(t.n))
    if list(r2.source.base.elements) != want_src:
        return "principal-upset renaming does not cover the roundtrip source points"
    if list(r2.target.base.elements) != want_tgt:
        return "principal-upset renaming does not cover the roundtrip target points"
    for x in range(s.n):
        xi = r2.source.base.index(subset_name(s.base, s.base.up[x]))
        for y in range(t.n):
            yj = r2.target.base.index(subset_name(t.base, t.base.up[y]))
            if (r.rel.rows[x] >> y & 1) != (r2.rel.rows[xi] >> yj & 1):
                return (
                    f"relation differs at ({s.base.elements[x]!r}, "
                    f"{t.base.elements[y]!r}) after the roundtrip"
                )
    return None


def _check_galois_roundtrip(m: GaloisMorphism) -> Optional[str]:
    r = galois_to_crelation(m)
    if isinstance(r, list):
        return f"transport rejected: {r[0]}"
    m2 = crelation_to_galois(r)
    _, khat1, ohat1 = _hat_names(m.source)
    _, khat2, ohat2 = _hat_names(m.target)
    if sorted(khat1) != list(m2.source.kset) or sorted(ohat1) != list(m2.source.oset):
        return "hat renaming does not carry the source onto the roundtrip source"
    if sorted(khat2) != list(m2.target.kset) or sorted(ohat2) != list(m2.target.oset):
        return "hat renaming does not carry the target onto the roundtrip target"
    for k in range(m.source.nk):
        got = m2.fwd[m2.source.kset.index(khat1[k])]
        want = m2.target.kset.index(khat2[m.fwd[k]])
        if got != want:
            return f"fwd differs at {m.source.kset[k]!r} after the roundtrip"
    for u in range(m.target.no):
        got = m2.bwd[m2.target.oset.index(ohat2[u])]
        want = m2.source.oset.index(ohat1[m.bwd[u]])
        if got != want:
            return f"bwd differs at {m.target.oset[u]!r} after the roundtrip"
    return None


def _check_functor_pair(pair: tuple[CRelation, CRelation]) -> Optional[str]:
    r1, r2 = pair
    rc = crelation_compose(r1, r2)
    m1 = crelation_to_galois(r1)
    m2 = crelation_to_galois(r2)
    if crelation_to_galois(rc) != galois_compose(m1, m2):
        return "image of the composite differs from the composite of the images"
    ids = validate_crelation(WeakRel.identity(r1.source.base), r1.source, r1.source)
    if isinstance(ids, list):
        return f"identity relation failed validation: {ids[0]}"
    pol = m1.source
    if crelation_to_galois(ids) != GaloisMorphism(
        pol, pol, tuple(range(pol.nk)), tuple(range(pol.no))
    ):
        return "identity relation does not map to the identity morphism"
    if crelation_compose(ids, r1) != r1:
        return "left identity law fails"
    idt = validate_crelation(WeakRel.identity(r1.target.base), r1.target, r1.target)
    if isinstance(idt, list):
        return f"identity relation failed validation: {idt[0]}"
    if crelation_compose(r1, idt) != r1:
        return "right identity law fails"
    return None


def _check_degroot_kospace(s: KoSpace) -> Optional[str]:
    d1 = degroot_dual(s)
    got = validate_kospace(d1.base, list(d1.kfam), list(d1.ofam))
    if isinstance(got, list):
        return f"the dual failed validation: {got[0]}"
    if degroot_dual(d1) != s:
        return "double dual is not the identity"
    return None


def _check_degroot_dirspace(d) -> Optional[str]:
    ops = dirspace_ops(d)
    if ops.is_well_filtered and ops.is_locally_compact and not ops.has_degroot_duality:
        return "well-filtered locally compact dirspace without de Groot duality"
    return None


def _check_frame_pipeline(l: FinLattice) -> Optional[str]:
    rep = finite_frame_pipeline(l)
    if is_distributive_lattice(l):
        if isinstance(rep, list):
            return f"pipeline rejected a distributive lattice: {rep[0]}"
    elif not isinstance(rep, list):
        return "pipeline accepted a non-distributive lattice"
    return None


def _check_fca_object(p: Polarity) -> Optional[str]:
    q = to_polarity(to_double_base(p))
    phik, phio = _concept_names(p)
    if sorted(phik) != list(q.kset) or sorted(phio) != list(q.oset):
        return "designated subsets do not match the concept images"
    for i in range(p.nk):
        for j in range(p.no):
            if p.rel_ix(i, j) != q.rel_ix(q.kset.index(phik[i]), q.oset.index(phio[j])):
                return f"relation differs at ({p.kset[i]!r}, {p.oset[j]!r})"
    if polarity_isomorphic(p, q) is None:
        return "no polarity isomorphism found"
    return None


def _check_fca_morphism(m: GaloisMorphism) -> Optional[str]:
    em = galois_to_embedded(m)
    m2 = embedded_to_galois(em)
    f1k, f1o = _concept_names(m.source)
    f2k, f2o = _concept_names(m.target)
    if sorted(f1k) != list(m2.source.kset) or sorted(f1o) != list(m2.source.oset):
        return "source designated subsets do not match the concept images"
    if sorted(f2k) != list(m2.target.kset) or sorted(f2o) != list(m2.target.oset):
        return "target designated subsets do not match the concept images"
    for i in range(m.source.nk):
        if m2.fwd[m2.source.kset.index(f1k[i])] != m2.target.kset.index(f2k[m.fwd[i]]):
            return f"fwd differs at {m.source.kset[i]!r} after the roundtrip"
    for j in range(m.target.no):
        if m2.bwd[m2.target.oset.index(f2o[j])] != m2.source.oset.index(f1o[m.bwd[j]]):
            return f"bwd differs at {m.target.oset[j]!r} after the roundtrip"
    return None


def _check_preservation(m: GaloisMorphism) -> Optional[str]:
    kp1 = m.source.k_poset()
    kp2 = m.target.k_poset()
    for sm in codirected_subsets(kp1):
        g = kp1.glb_of_mask(sm)
        if g is None:
            return (
                "codirected k-subset without a meet: "
                f"{{{', '.join(kp1.names_from_mask(sm))}}}"
            )
        img = _bits.mask_of(m.fwd[i] for i in _bits.bits_of(sm))
        if kp2.glb_of_mask(img) != m.fwd[g]:
            return (
                "fwd fails to preserve the meet of "
                f"{{{', '.join(kp1.names_from_mask(sm))}}}"
            )
    op1 = m.source.o_poset()
    op2 = m.target.o_poset()
    for dm in directed_subsets(op2):
        l = op2.lub_of_mask(dm)
        if l is None:
            return (
                "directed o-subset without a join: "
                f"{{{', '.join(op2.names_from_mask(dm))}}}"
            )
        img = _bits.mask_of(m.bwd[j] for j in _bits.bits_of(dm))
        if op1.lub_of_mask(img) != m.bwd[l]:
            return (
                "bwd fails to preserve the join of "
                f"{{{', '.join(op2.names_from_mask(dm))}}}"
            )
    return None


# ---------------------------------------------------------------- builders


def _polarity_corpus(dims: tuple[int, ...], seed: int, check) -> list[_Instance]:
    kmax, omax = dims
    out = [
        _Instance(name, p, check, _shrink_polarity)
        for name, p in _exhaustive_polarities(kmax, omax)
    ]
    rng = random.Random(seed)
    for i in range(RANDOM_POLARITY_COUNT):
        out.append(
            _Instance(f"rnd-{i:03d}", random_polarity(rng, 5, 5), check, _shrink_polarity)
        )
    return out


def _build_bifounded(dims, seed):
    return _polarity_corpus(dims, seed, _check_bifounded)


def _build_corr_distributivity(dims, seed):
    return _polarity_corpus(dims, seed, _check_corr_distributivity)


def _build_raney(dims, seed):
    return [
        _Instance(f"lat-{l.carrier.n}-{i:03d}", l, _check_raney)
        for i, l in enumerate(lattices_up_to(dims[0]))
    ]


def _build_key_lemma(dims, seed):
    return [
        _Instance(f"lat-{l.carrier.n}-{i:03d}", l, _check_key_lemma)
        for i, l in enumerate(lattices_up_to(dims[0]))
        if is_distributive_lattice(l)
    ]


def _build_esakia(dims, seed):
    rng = random.Random(seed)
    return [
        _Instance(
            f"rnd-{i:03d}",
            random_crelation(rng, rng.randint(1, dims[0]), rng.randint(1, dims[0])),
            _check_esakia,
        )
        for i in range(RANDOM_ROUNDTRIP_COUNT)
    ]


def _build_wilker(variant: int):
    def build(dims, seed):
        return [
            _Instance(name, payload, lambda x, v=variant: _check_wilker(x, v))
            for name, payload in _bicontinuous_mixed(seed, dims[0], RANDOM_ROUNDTRIP_COUNT)
        ]

    return build


def _build_hofmis(dims, seed):
    return [
        _Instance(name, b, _check_hofmis)
        for name, b in _bicontinuous_bidcpos(seed, dims[0], RANDOM_ROUNDTRIP_COUNT)
    ]


def _build_meets_joins(dims, seed):
    return [
        _Instance(name, b, _check_meets_joins)
        for name, b in _bicontinuous_bidcpos(seed, dims[0], RANDOM_ROUNDTRIP_COUNT)
    ]


def _build_bijcorr(dims, seed):
    if dims[0] > 3:
        raise ValueError(
            "the exhaustive part of bijcorr-roundtrip is capped at 3 elements"
        )
    out = []
    for pid, p in enumerate(_all_posets(dims[0])):
        for fname, s in _admissible_spaces(p):
            out.append(
                _Instance(
                    f"p{p.n}-{pid:02d}-{fname}", s, _check_bijcorr, _shrink_kospace
                )
            )
    rng = random.Random(seed)
    for i in range(RANDOM_ROUNDTRIP_COUNT):
        out.append(
            _Instance(
                f"rnd-{i:03d}",
                _bounded_random_kospace(rng, 4, 5),
                _check_bijcorr,
                _shrink_kospace,
            )
        )
    return out


def _build_main_functoriality(dims, seed):
    rng = random.Random(seed)
    out = []
    for i in range(RANDOM_MORPHISM_COUNT):
        out.append(
            _Instance(
                f"crel-{i:03d}",
                random_crelation(rng, rng.randint(1, dims[0]), rng.randint(1, dims[0])),
                _check_crelation_roundtrip,
            )
        )
    for i in range(RANDOM_MORPHISM_COUNT):
        out.append(
            _Instance(
                f"gal-{i:03d}",
                random_galois(rng, rng.randint(1, 3), rng.randint(1, 3)),
                _check_galois_roundtrip,
            )
        )
    for i in range(RANDOM_PAIR_COUNT):
        ds = random_poset(rng, rng.randint(1, 3))
        dt = random_poset(rng, rng.randint(1, 3))
        du = random_poset(rng, rng.randint(1, 3))
        if dt.n == 0 or du.n == 0:
            dt = FinPoset(("f0",), (1,)) if dt.n == 0 else dt
            du = FinPoset(("g0",), (1,)) if du.n == 0 else du
        f = random_monotone_map(rng, ds, dt)
        g = random_monotone_map(rng, dt, du)
        r1 = validate_crelation(hypergraph(f, ds, dt), from_dcpo(ds), from_dcpo(dt))
        r2 = validate_crelation(hypergraph(g, dt, du), from_dcpo(dt), from_dcpo(du))
        assert isinstance(r1, CRelation) and isinstance(r2, CRelation)
        out.append(_Instance(f"pair-{i:03d}", (r1, r2), _check_functor_pair))
    return out


def _build_degroot(dims, seed):
    rng = random.Random(seed)
    out = []
    for i in range(RANDOM_MORPHISM_COUNT):
        out.append(
            _Instance(
                f"ko-{i:03d}",
                _bounded_random_kospace(rng, 1, dims[0]),
                _check_degroot_kospace,
                _shrink_kospace,
            )
        )
    for i in range(RANDOM_MORPHISM_COUNT):
        out.append(
            _Instance(
                f"dir-{i:03d}",
                random_dirspace(rng, rng.randint(0, min(dims[0], 4))),
                _check_degroot_dirspace,
            )
        )
    return out


def _build_frame_pipeline(dims, seed):
    return [
        _Instance(f"lat-{l.carrier.n}-{i:03d}", l, _check_frame_pipeline)
        for i, l in enumerate(lattices_up_to(dims[0]))
    ]


def _build_fca(dims, seed):
    rng = random.Random(seed)
    out = []
    for i in range(RANDOM_ROUNDTRIP_COUNT):
        out.append(
            _Instance(
                f"pol-{i:03d}",
                random_polarity(rng, rng.randint(0, dims[0]), rng.randint(0, dims[1])),
                _check_fca_object,
                _shrink_polarity,
            )
        )
    for i in range(RANDOM_MORPHISM_COUNT):
        out.append(
            _Instance(
                f"gal-{i:03d}",
                random_galois(rng, rng.randint(1, 3), rng.randint(1, 3)),
                _check_fca_morphism,
            )
        )
    return out


def _build_preservation(dims, seed):
    rng = random.Random(seed)
    return [
        _Instance(
            f"gal-{i:03d}",
            random_galois(rng, rng.randint(1, dims[0]), rng.randint(1, dims[0])),
            _check_preservation,
        )
        for i in range(RANDOM_ROUNDTRIP_COUNT)
    ]


_REGISTRY: dict[str, Callable] = {
    "bifounded": _build_bifounded,
    "bijcorr-roundtrip": _build_bijcorr,
    "corr-distributivity": _build_corr_distributivity,
    "degroot-involution": _build_degroot,
    "esakia": _build_esakia,
    "fca-roundtrip": _build_fca,
    "frame-pipeline": _build_frame_pipeline,
    "hofmis": _build_hofmis,
    "key-lemma": _build_key_lemma,
    "main-functoriality": _build_main_functoriality,
    "meets-joins": _build_meets_joins,
    "morphism-preservation": _build_preservation,
    "raney-char": _build_raney,
    "wilker-1": _build_wilker(1),
    "wilker-2": _build_wilker(2),
}

THEOREM_IDS = tuple(sorted(_REGISTRY))

_DEFAULT_BOUND = {
    "bifounded": (3, 3),
    "bijcorr-roundtrip": (3,),
    "corr-distributivity": (3, 3),
    "degroot-involution": (4,),
    "esakia": (4,),
    "fca-roundtrip": (5, 5),
    "frame-pipeline": (6,),
    "hofmis": (4,),
    "key-lemma": (6,),
    "main-functoriality": (4,),
    "meets-joins": (4,),
    "morphism-preservation": (3,),
    "raney-char": (6,),
    "wilker-1": (4,),
    "wilker-2": (4,),
}


def _parse_bound(bound: Optional[str], theorem_id: str) -> tuple[int, ...]:
    if bound is None:
        return _DEFAULT_BOUND[theorem_id]
    parts = bound.lower().split("x")
    try:
        dims = tuple(int(t) for t in parts)
    except ValueError:
        raise ValueError(f"bound must look like '6' or '3x3', got {bound!r}")
    if any(d < 0 for d in dims) or len(dims) not in (1, 2):
        raise ValueError(f"bound must look like '6' or '3x3', got {bound!r}")
    want = len(_DEFAULT_BOUND[theorem_id])
    if len(dims) == 1 and want == 2:
        dims = (dims[0], dims[0])
    if len(dims) == 2 and want == 1:
        raise ValueError(f"sweep {theorem_id} takes a single size bound")
    return dims


def run_sweep(theorem_id: str, bound: Optional[str] = None, seed: int = 0) -> SweepOutcome:
    """Build the corpus for one registry entry, run its check over every
    instance in name order, and aggregate. The first failing instance is
    minimized by element deletion when its kind supports deletion."""
    if theorem_id not in _REGISTRY:
        raise ValueError(
            f"unknown theorem id {theorem_id!r}; registry: {', '.join(THEOREM_IDS)}"
        )
    dims = _parse_bound(bound, theorem_id)
    instances = _REGISTRY[theorem_id](dims, seed)
    failures = []
    minimized = None
    for inst in sorted(instances, key=lambda i: i.name):
        msg = _safe(inst.check, inst.payload)
        if msg is None:
            continue
        if not failures and inst.shrink is not None:
            minimized = _minimize(inst)
        failures.append((inst.name, msg))
    return SweepOutcome(
        theorem_id,
        len(instances),
        len(instances) - len(failures),
        tuple(failures),
        minimized,
    )
