"""Finite posets, upset families, lattices, and weakening relations.

Carriers are tuples of element names in sorted order; subsets of a carrier
are int bitmasks indexed by that order. All values are immutable after
construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _bits
from .kernels import directed_subset_masks, enumerate_upsets

UPSET_GUARDRAIL = 20
FAMILY_GUARDRAIL = 16


class GuardrailError(ValueError):
    """Raised when an enumeration would blow past the size guardrails."""


class TheoremViolation(AssertionError):
    """An identity the library treats as a theorem failed on concrete data.

    Raised instead of silently returning wrong output; the message carries
    the witness. Seeing one means a bug, not a property of the input.
    """


class CompositionError(TypeError):
    """Source/target mismatch when composing relations or morphisms."""


def _closure_matrix(n: int, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    m = np.eye(n, dtype=bool)
    for i, j in edges:
        m[i, j] = True
    # reflexive-transitive closure by repeated boolean squaring
    while True:
        nxt = m | (m @ m)
        if np.array_equal(nxt, m):
            return m
        m = nxt


@dataclass(frozen=True)
class FinPoset:
    """A finite poset. `up[i]` is the bitmask of elements >= element i."""

    elements: tuple[str, ...]
    up: tuple[int, ...]

    @classmethod
    def from_leq(cls, elements: Iterable[str], leq: Iterable[tuple[str, str]]) -> "FinPoset":
        """Build from any relation; stores its reflexive-transitive closure.

        Rejects antisymmetry violations (reported with the least witness
        pair). Element iteration order is the sorted identifier order.
        """
        given = list(elements)
        names = sorted(set(given))
        if len(names) != len(given):
            dupes = sorted({e for e in given if given.count(e) > 1})
            raise ValueError(f"duplicate element identifiers: {dupes}")
        ix = {e: i for i, e in enumerate(names)}
        edges = []
        for a, b in leq:
            if a not in ix or b not in ix:
                missing = a if a not in ix else b
                raise ValueError(f"leq mentions unknown element {missing!r}")
            edges.append((ix[a], ix[b]))
        m = _closure_matrix(len(names), edges)
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                if m[i, j] and m[j, i]:
                    raise ValueError(
                        f"not antisymmetric: {names[i]!r} and {names[j]!r} "
                        "are below each other"
                    )
        up = tuple(_bits.mask_of(np.flatnonzero(m[i]).tolist()) for i in range(len(names)))
        return cls(tuple(names), up)

    def __post_init__(self) -> None:
        if len(self.elements) != len(self.up):
            raise ValueError("elements and up must have equal length")

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, name: str) -> int:
        return self._index[name]

    @cached_property
    def dn(self) -> tuple[int, ...]:
        dn = [0] * self.n
        for i in range(self.n):
            for j in _bits.bits_of(self.up[i]):
                dn[j] |= 1 << i
        return tuple(dn)

    def leq_ix(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def leq(self, a: str, b: str) -> bool:
        return self.leq_ix(self.index(a), self.index(b))

    def leq_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for i in range(self.n):
            for j in _bits.bits_of(self.up[i]):
                m[i, j] = 1
        return m

    def mask_from_names(self, names: Iterable[str]) -> int:
        return _bits.mask_of(self.index(a) for a in names)

    def names_from_mask(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in _bits.bits_of(mask))

    def dual(self) -> "FinPoset":
        return FinPoset(self.elements, self.dn)

    def is_upset(self, mask: int) -> bool:
        return all(_bits.is_subset(self.up[i], mask) for i in _bits.bits_of(mask))

    def upset_violation(self, mask: int) -> Optional[tuple[int, int]]:
        """Least (x, y) with x in mask, x <= y, y not in mask; None if upset."""
        for i in _bits.bits_of(mask):
            out = self.up[i] & ~mask
            if out:
                return i, next(_bits.bits_of(out))
        return None

    def upsets(self, override_guardrail: bool = False) -> tuple[int, ...]:
        """All upset masks, ascending. Refuses > UPSET_GUARDRAIL elements."""
        if self.n > UPSET_GUARDRAIL and not override_guardrail:
            raise GuardrailError(
                f"upset enumeration over {self.n} elements exceeds the "
                f"guardrail of {UPSET_GUARDRAIL}; pass override_guardrail"
            )
        return tuple(int(m) for m in enumerate_upsets(np.array(self.up, dtype=np.int64)))

    def is_directed_mask(self, mask: int) -> bool:
        if mask == 0:
            return False
        members = list(_bits.bits_of(mask))
        for a in members:
            for b in members:
                if self.up[a] & self.up[b] & mask == 0:
                    return False
        return True

    def is_codirected_mask(self, mask: int) -> bool:
        if mask == 0:
            return False
        members = list(_bits.bits_of(mask))
        for a in members:
            for b in members:
                if self.dn[a] & self.dn[b] & mask == 0:
                    return False
        return True

    def lub_ix(self, i: int, j: int) -> Optional[int]:
        ub = self.up[i] & self.up[j]
        for m in _bits.bits_of(ub):
            if _bits.is_subset(ub, self.up[m]):
                return m
        return None

    def glb_ix(self, i: int, j: int) -> Optional[int]:
        lb = self.dn[i] & self.dn[j]
        for m in _bits.bits_of(lb):
            if _bits.is_subset(lb, self.dn[m]):
                return m
        return None

    def lub_of_mask(self, mask: int) -> Optional[int]:
        """Least upper bound of a nonempty subset; None if it does not exist."""
        ub = _bits.full_mask(self.n)
        for i in _bits.bits_of(mask):
            ub &= self.up[i]
        for m in _bits.bits_of(ub):
            if _bits.is_subset(ub, self.up[m]):
                return m
        return None

    def glb_of_mask(self, mask: int) -> Optional[int]:
        lb = _bits.full_mask(self.n)
        for i in _bits.bits_of(mask):
            lb &= self.dn[i]
        for m in _bits.bits_of(lb):
            if _bits.is_subset(lb, self.dn[m]):
                return m
        return None

    def top_ix(self) -> Optional[int]:
        for i in range(self.n):
            if self.dn[i] == _bits.full_mask(self.n):
                return i
        return None

    def bottom_ix(self) -> Optional[int]:
        for i in range(self.n):
            if self.up[i] == _bits.full_mask(self.n):
                return i
        return None

    def maximal_ixs(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in _bits.bits_of(mask) if self.up[i] & mask == 1 << i)

    def minimal_ixs(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in _bits.bits_of(mask) if self.dn[i] & mask == 1 << i)

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (i, j) with i < j and nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in _bits.bits_of(strict):
                if strict & self.dn[j] == 1 << j:
                    out.append((i, j))
        return tuple(out)

    def restrict(self, mask: int) -> "FinPoset":
        """Induced subposet on the elements in mask."""
        keep = list(_bits.bits_of(mask))
        names = tuple(self.elements[i] for i in keep)
        pos = {old: new for new, old in enumerate(keep)}
        up = tuple(
            _bits.mask_of(pos[j] for j in _bits.bits_of(self.up[i] & mask)) for i in keep
        )
        return FinPoset(names, up)


def subset_name(poset: FinPoset, mask: int) -> str:
    """Canonical printable name of a carrier subset, e.g. '{a,b}'."""
    return "{" + ",".join(poset.names_from_mask(mask)) + "}"


@dataclass(frozen=True)
class UpsetFamily:
    """A set of upsets of a base poset, stored sorted and deduplicated."""

    base: FinPoset
    members: tuple[int, ...]

    @classmethod
    def from_masks(cls, base: FinPoset, masks: Iterable[int]) -> "UpsetFamily":
        members = tuple(sorted(set(int(m) for m in masks)))
        for m in members:
            bad = base.upset_violation(m)
            if bad is not None:
                x, y = bad
                raise ValueError(
                    f"member {subset_name(base, m)} is not an upset: contains "
                    f"{base.elements[x]!r} but not {base.elements[y]!r} above it"
                )
        return cls(base, members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def inclusion_matrix(self) -> np.ndarray:
        f = len(self.members)
        m = np.zeros((f, f), dtype=np.uint8)
        for i in range(f):
            for j in range(f):
                if _bits.is_subset(self.members[i], self.members[j]):
                    m[i, j] = 1
        return m

    def _subfamilies(self, matrix: np.ndarray, override_guardrail: bool) -> tuple[int, ...]:
        if len(self.members) > FAMILY_GUARDRAIL and not override_guardrail:
            raise GuardrailError(
                f"subfamily enumeration over {len(self.members)} members "
                f"exceeds the guardrail of {FAMILY_GUARDRAIL}"
            )
        return tuple(int(s) for s in directed_subset_masks(matrix))

    def directed_submasks(self, override_guardrail: bool = False) -> tuple[int, ...]:
        """Index masks of the nonempty inclusion-directed subfamilies."""
        return self._subfamilies(self.inclusion_matrix(), override_guardrail)

    def codirected_submasks(self, override_guardrail: bool = False) -> tuple[int, ...]:
        return self._subfamilies(self.inclusion_matrix().T.copy(), override_guardrail)

    def union_of(self, index_mask: int) -> int:
        u = 0
        for i in _bits.bits_of(index_mask):
            u |= self.members[i]
        return u

    def intersection_of(self, index_mask: int) -> int:
        u = _bits.full_mask(self.base.n)
        for i in _bits.bits_of(index_mask):
            u &= self.members[i]
        return u


def lattice_violation(p: FinPoset) -> Optional[str]:
    """Why p fails to be a (complete, finite) lattice; None if it is one."""
    if p.n == 0:
        return "empty carrier has no top or bottom"
    if p.top_ix() is None:
        return "no top element"
    if p.bottom_ix() is None:
        return "no bottom element"
    for i in range(p.n):
        for j in range(i + 1, p.n):
            if p.lub_ix(i, j) is None:
                return f"{p.elements[i]!r} and {p.elements[j]!r} have no join"
            if p.glb_ix(i, j) is None:
                return f"{p.elements[i]!r} and {p.elements[j]!r} have no meet"
    return None


@dataclass(frozen=True)
class FinLattice:
    """A finite complete lattice (top, bottom, all binary meets and joins)."""

    carrier: FinPoset

    def __post_init__(self) -> None:
        bad = lattice_violation(self.carrier)
        if bad is not None:
            raise ValueError(f"not a lattice: {bad}")

    @property
    def n(self) -> int:
        return self.carrier.n

    @cached_property
    def top(self) -> int:
        t = self.carrier.top_ix()
        assert t is not None
        return t

    @cached_property
    def bottom(self) -> int:
        b = self.carrier.bottom_ix()
        assert b is not None
        return b

    @cached_property
    def _meet(self) -> tuple[tuple[int, ...], ...]:
        g = self.carrier.glb_ix
        return tuple(tuple(g(i, j) for j in range(self.n)) for i in range(self.n))

    @cached_property
    def _join(self) -> tuple[tuple[int, ...], ...]:
        l = self.carrier.lub_ix
        return tuple(tuple(l(i, j) for j in range(self.n)) for i in range(self.n))

    def meet_ix(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join_ix(self, i: int, j: int) -> int:
        return self._join[i][j]

    def meet_mask(self, mask: int) -> int:
        """Meet of a subset given as a mask; the empty meet is the top."""
        out = self.top
        for i in _bits.bits_of(mask):
            out = self._meet[out][i]
        return out

    def join_mask(self, mask: int) -> int:
        out = self.bottom
        for i in _bits.bits_of(mask):
            out = self._join[out][i]
        return out

    def leq_ix(self, i: int, j: int) -> bool:
        return self.carrier.leq_ix(i, j)


def upset_lattice(x: FinPoset, override_guardrail: bool = False) -> FinLattice:
    """The lattice of all upsets of x ordered by inclusion.

    Carrier elements are named by subset_name, so callers can map an upset
    mask to its lattice element via that name.
    """
    ups = x.upsets(override_guardrail)
    names = [subset_name(x, m) for m in ups]
    by_name = dict(zip(names, ups))
    sorted_names = sorted(names)
    masks = [by_name[nm] for nm in sorted_names]
    up = []
    for i, mi in enumerate(masks):
        up.append(_bits.mask_of(j for j, mj in enumerate(masks) if _bits.is_subset(mi, mj)))
    return FinLattice(FinPoset(tuple(sorted_names), tuple(up)))


def _as_mask(p: FinPoset, s) -> int:
    if isinstance(s, int):
        return s
    return p.mask_from_names(s)


def is_directed(p: FinPoset, s) -> bool:
    """True iff s (mask or iterable of names) is nonempty and every pair of
    its elements has an upper bound within s."""
    return p.is_directed_mask(_as_mask(p, s))


def is_codirected(p: FinPoset, s) -> bool:
    return p.is_codirected_mask(_as_mask(p, s))


def directed_subsets(p: FinPoset, override_guardrail: bool = False) -> tuple[int, ...]:
    """All nonempty directed subset masks of the poset, ascending."""
    if p.n > FAMILY_GUARDRAIL and not override_guardrail:
        raise GuardrailError(
            f"quantifying over subsets of {p.n} elements exceeds the "
            f"guardrail of {FAMILY_GUARDRAIL}; pass override_guardrail=True"
        )
    return tuple(int(m) for m in directed_subset_masks(p.leq_matrix()))


def codirected_subsets(p: FinPoset, override_guardrail: bool = False) -> tuple[int, ...]:
    if p.n > FAMILY_GUARDRAIL and not override_guardrail:
        raise GuardrailError(
            f"quantifying over subsets of {p.n} elements exceeds the "
            f"guardrail of {FAMILY_GUARDRAIL}; pass override_guardrail=True"
        )
    return tuple(int(m) for m in directed_subset_masks(p.leq_matrix().T.copy()))


def is_distributive_lattice(l: FinLattice) -> bool:
    """Cut-rule distributivity: k <= u v c and c ^ k <= u imply k <= u."""
    return distributivity_cut_witness(l) is None


def distributivity_cut_witness(l: FinLattice) -> Optional[tuple[int, int, int]]:
    """Least (k, u, c) violating the cut rule, or None."""
    p = l.carrier
    for k in range(l.n):
        for u in range(l.n):
            if p.leq_ix(k, u):
                continue
            for c in range(l.n):
                if p.leq_ix(k, l.join_ix(u, c)) and p.leq_ix(l.meet_ix(c, k), u):
                    return (k, u, c)
    return None


def filters(p: FinPoset, override_guardrail: bool = False) -> tuple[int, ...]:
    """All codirected upsets of p (nonempty by definition), ascending masks.

    Every upset of a finite poset is Scott-open, so these are exactly the
    Scott-open filters.
    """
    return tuple(m for m in p.upsets(override_guardrail) if p.is_codirected_mask(m))


@dataclass(frozen=True)
class WeakRel:
    """A weakening relation: x' <= x R y <= y' implies x' R y'.

    rows[i] is the mask of target elements related to source element i.
    """

    source: FinPoset
    target: FinPoset
    rows: tuple[int, ...]

    @classmethod
    def from_pairs(
        cls,
        source: FinPoset,
        target: FinPoset,
        pairs: Iterable[tuple[str, str]],
        close: bool = False,
    ) -> "WeakRel":
        rows = [0] * source.n
        for a, b in pairs:
            rows[source.index(a)] |= 1 << target.index(b)
        if close:
            # weakening closure: (x', y') related iff some given pair (x, y)
            # has x' <= x and y <= y'
            closed = [0] * source.n
            for i in range(source.n):
                acc = 0
                for x in _bits.bits_of(source.up[i]):
                    acc |= rows[x]
                up_closed = 0
                for y in _bits.bits_of(acc):
                    up_closed |= target.up[y]
                closed[i] = up_closed
            rows = closed
        rel = cls(source, target, tuple(rows))
        bad = rel.weakening_violation()
        if bad is not None:
            raise ValueError(f"not a weakening relation: {bad}")
        return rel

    @classmethod
    def identity(cls, p: FinPoset) -> "WeakRel":
        return cls(p, p, p.up)

    def weakening_violation(self) -> Optional[str]:
        for i in range(self.source.n):
            # rows must be upsets of the target
            bad = self.target.upset_violation(self.rows[i])
            if bad is not None:
                x, y = bad
                return (
                    f"row of {self.source.elements[i]!r} contains "
                    f"{self.target.elements[x]!r} but not {self.target.elements[y]!r}"
                )
            # and antitone in the source
            for j in _bits.bits_of(self.source.up[i]):
                if self.rows[j] & ~self.rows[i]:
                    y = next(_bits.bits_of(self.rows[j] & ~self.rows[i]))
                    return (
                        f"{self.source.elements[i]!r} <= {self.source.elements[j]!r} "
                        f"but the pair ({self.source.elements[j]!r}, "
                        f"{self.target.elements[y]!r}) does not weaken"
                    )
        return None

    def image(self, mask: int) -> int:
        """R[A]: everything related to some element of A."""
        out = 0
        for i in _bits.bits_of(mask):
            out |= self.rows[i]
        return out

    def preimage(self, mask: int) -> int:
        """R^{-1}[B]: sources related to something in B."""
        return _bits.mask_of(i for i in range(self.source.n) if self.rows[i] & mask)

    def upre(self, mask: int) -> int:
        """R<=[B] = {x : R[x] subseteq B}, the universal preimage."""
        return _bits.mask_of(
            i for i in range(self.source.n) if _bits.is_subset(self.rows[i], mask)
        )

    def converse(self) -> "WeakRel":
        """The converse relation, a weakening relation of the dual posets."""
        rows = [0] * self.target.n
        for i in range(self.source.n):
            for j in _bits.bits_of(self.rows[i]):
                rows[j] |= 1 << i
        return WeakRel(self.target.dual(), self.source.dual(), tuple(rows))

    def pairs(self) -> tuple[tuple[str, str], ...]:
        out = []
        for i in range(self.source.n):
            for j in _bits.bits_of(self.rows[i]):
                out.append((self.source.elements[i], self.target.elements[j]))
        return tuple(out)


def weakrel_compose(r: WeakRel, s: WeakRel) -> WeakRel:
    """Relation composition: x (r;s) z iff exists y with x r y s z."""
    if r.target != s.source:
        raise CompositionError("target of first relation differs from source of second")
    rows = tuple(s.image(r.rows[i]) for i in range(r.source.n))
    return WeakRel(r.source, s.target, rows)


def poset_isomorphic(p: FinPoset, q: FinPoset) -> Optional[tuple[int, ...]]:
    """An order-isomorphism p -> q as an index tuple, or None.

    Deterministic: returns the lexicographically first bijection in the
    sorted-identifier index order, found by backtracking with up-set and
    down-set size-profile pruning.
    """

    def profile(r: FinPoset, i: int) -> tuple[int, int]:
        return (_bits.popcount(r.up[i]), _bits.popcount(r.dn[i]))

    return _constrained_iso(p, q, lambda i, j: profile(p, i) == profile(q, j))


def _constrained_iso(p: FinPoset, q: FinPoset, compatible) -> Optional[tuple[int, ...]]:
    """First order-iso passing the per-pair compatibility filter, or None."""
    for assign in _constrained_isos(p, q, compatible):
        return assign
    return None


def _constrained_isos(p: FinPoset, q: FinPoset, compatible):
    """Yield every order-isomorphism p -> q whose pairs all satisfy
    compatible(i, j), in lexicographic order of the assignment tuple."""
    if p.n != q.n:
        return
    n = p.n
    assign: list[int] = []
    used = [False] * n

    def extend(i: int):
        if i == n:
            yield tuple(assign)
            return
        for j in range(n):
            if used[j] or not compatible(i, j):
                continue
            ok = True
            for i2, j2 in enumerate(assign):
                if p.leq_ix(i, i2) != q.leq_ix(j, j2) or p.leq_ix(i2, i) != q.leq_ix(j2, j):
                    ok = False
                    break
            if not ok:
                continue
            assign.append(j)
            used[j] = True
            yield from extend(i + 1)
            assign.pop()
            used[j] = False

    yield from extend(0)
