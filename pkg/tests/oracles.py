"""Brute-force reference implementations used to pin expected values.

Everything here runs on plain tuples, frozensets, and itertools, with no
view of the package's bitmask internals. Tests convert package structures
to the plain form (elements, set-of-pairs) and compare answers; agreement
is meaningful because the two sides share no code path.

A poset is (elements, le) with le a set of ordered pairs including the
diagonal. A polarity is (kset, oset, rel) with rel a set of pairs.
"""

from itertools import chain, combinations, permutations


def powerset(xs):
    xs = list(xs)
    return chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


def is_upset(elements, le, s):
    return all(b in s for a in s for b in elements if (a, b) in le)


def all_upsets(elements, le):
    return {frozenset(s) for s in powerset(elements) if is_upset(elements, le, s)}


def is_directed(le, s):
    if not s:
        return False
    return all(
        any((a, c) in le and (b, c) in le for c in s) for a in s for b in s
    )


def is_codirected(le, s):
    if not s:
        return False
    return all(
        any((c, a) in le and (c, b) in le for c in s) for a in s for b in s
    )


def directed_subsets(elements, le):
    return {frozenset(s) for s in powerset(elements) if is_directed(le, s)}


def filters(elements, le):
    """Nonempty codirected upsets."""
    return {
        s
        for s in all_upsets(elements, le)
        if s and is_codirected(le, s)
    }


def lower_bounds(elements, le, s):
    return [c for c in elements if all((c, a) in le for a in s)]


def upper_bounds(elements, le, s):
    return [c for c in elements if all((a, c) in le for a in s)]


def meet(elements, le, s):
    """Greatest lower bound, or None when it does not exist."""
    lbs = lower_bounds(elements, le, s)
    tops = [c for c in lbs if all((d, c) in le for d in lbs)]
    return tops[0] if len(tops) == 1 else None


def join(elements, le, s):
    ubs = upper_bounds(elements, le, s)
    bots = [c for c in ubs if all((c, d) in le for d in ubs)]
    return bots[0] if len(bots) == 1 else None


def is_lattice(elements, le):
    return all(
        meet(elements, le, (a, b)) is not None and join(elements, le, (a, b)) is not None
        for a in elements
        for b in elements
    ) and bool(elements)


def lattice_distributive(elements, le):
    """The triple identity, checked on every triple."""
    for a in elements:
        for b in elements:
            for c in elements:
                lhs = meet(elements, le, (a, join(elements, le, (b, c))))
                rhs = join(
                    elements,
                    le,
                    (meet(elements, le, (a, b)), meet(elements, le, (a, c))),
                )
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------- polarities

def k_order(kset, oset, rel):
    """k <= l when every o related to l is related to k."""
    return {
        (k, l)
        for k in kset
        for l in kset
        if all((k, u) in rel for u in oset if (l, u) in rel)
    }


def o_order(kset, oset, rel):
    return {
        (u, v)
        for u in oset
        for v in oset
        if all((k, v) in rel for k in kset if (k, u) in rel)
    }


def concepts(kset, oset, rel):
    """Extent/intent pairs found by scanning every extent candidate."""
    out = set()
    for a in powerset(kset):
        intent = frozenset(u for u in oset if all((k, u) in rel for k in a))
        extent = frozenset(k for k in kset if all((k, u) in rel for u in intent))
        if extent == frozenset(a):
            out.add((extent, intent))
    return out


def cp_pairs_polarity(kset, oset, rel):
    kle = k_order(kset, oset, rel)
    ole = o_order(kset, oset, rel)
    out = set()
    for k in kset:
        for u in oset:
            if (k, u) in rel:
                continue
            k_min = all((k, l) in kle for l in kset if (l, u) not in rel)
            u_max = all((v, u) in ole for v in oset if (k, v) not in rel)
            if k_min and u_max:
                out.add((k, u))
    return out


def cp_pairs_lattice(elements, le):
    """(a, b) whose upset and downset split the carrier in two."""
    out = set()
    for a in elements:
        for b in elements:
            up_a = {c for c in elements if (a, c) in le}
            dn_b = {c for c in elements if (c, b) in le}
            if not (up_a & dn_b) and up_a | dn_b == set(elements):
                out.add((a, b))
    return out


def nesw_pairs_polarity(kset, oset, rel):
    kle = k_order(kset, oset, rel)
    ole = o_order(kset, oset, rel)
    out = set()
    for k in kset:
        for u in oset:
            if (k, u) in rel:
                continue
            u_maximal = all(
                (v, u) in ole for v in oset if (k, v) not in rel and (u, v) in ole
            )
            k_minimal = all(
                (k, l) in kle for l in kset if (l, u) not in rel and (l, k) in kle
            )
            if u_maximal and k_minimal:
                out.add((k, u))
    return out


def nesw_pairs_lattice(elements, le):
    out = set()
    for a in elements:
        for b in elements:
            if (a, b) in le:
                continue
            b_maximal = all((a, c) in le for c in elements if (b, c) in le and c != b)
            a_minimal = all((c, b) in le for c in elements if (c, a) in le and c != a)
            if b_maximal and a_minimal:
                out.add((a, b))
    return out


def bifounded_polarity(kset, oset, rel):
    kle = k_order(kset, oset, rel)
    ole = o_order(kset, oset, rel)
    nesw = nesw_pairs_polarity(kset, oset, rel)
    for k in kset:
        for u in oset:
            if (k, u) in rel:
                continue
            if not any(
                (l, v) in nesw
                for l in kset
                if (l, k) in kle
                for v in oset
                if (u, v) in ole
            ):
                return False
    return True


def raney_lattice(elements, le):
    cps = cp_pairs_lattice(elements, le)
    for a in elements:
        for b in elements:
            if (a, b) in le:
                continue
            if not any((c, a) in le and (b, d) in le for c, d in cps):
                return False
    return True


def distributive_polarity(kset, oset, rel):
    """Cut rule: k related to everything above u that relates l, and
    everything below k relating v related to u, force k related to u."""
    kle = k_order(kset, oset, rel)
    ole = o_order(kset, oset, rel)
    for k in kset:
        for l in kset:
            for u in oset:
                if (k, u) in rel:
                    continue
                if not all(
                    (k, w) in rel
                    for w in oset
                    if (u, w) in ole and (l, w) in rel
                ):
                    continue
                for v in oset:
                    if (l, v) not in rel:
                        continue
                    if all(
                        (m, u) in rel
                        for m in kset
                        if (m, k) in kle and (m, v) in rel
                    ):
                        return False
    return True


# ---------------------------------------------------------------- transfer

def way_below(elements, le, a, b):
    """Every directed set with a join above b meets the upset of a."""
    for d in directed_subsets(elements, le):
        j = join(elements, le, d)
        if j is None or (b, j) not in le:
            continue
        if not any((a, c) in le for c in d):
            return False
    return True


def posets_isomorphic(e1, le1, e2, le2):
    """Permutation scan; returns a dict or None. Keep inputs tiny."""
    if len(e1) != len(e2):
        return None
    for perm in permutations(e2):
        f = dict(zip(e1, perm))
        if all(((f[a], f[b]) in le2) == ((a, b) in le1) for a in e1 for b in e1):
            return f
    return None


# ---------------------------------------------------------------- spaces

def upset_of(elements, le, xs):
    return frozenset(b for b in elements for a in xs if (a, b) in le)


def downset_of(elements, le, xs):
    return frozenset(a for a in elements for b in xs if (a, b) in le)


def kospace_s3_failures(elements, le, kfam, ofam):
    """Principality: each upset of a point is a k-set, each complement of
    a downset of a point an o-set."""
    bad = []
    for x in elements:
        if upset_of(elements, le, [x]) not in kfam:
            bad.append(("k", x))
        if frozenset(elements) - downset_of(elements, le, [x]) not in ofam:
            bad.append(("o", x))
    return bad


def saturation(points, opens, s):
    """Intersection of the opens containing s; the whole set when none do."""
    over = [o for o in opens if s <= o]
    out = frozenset(points)
    for o in over:
        out &= o
    return out
