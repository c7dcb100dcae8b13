import logging

logging.basicConfig(level=logging.ERROR)

from kodual import _bits
from kodual.bidcpo import from_dcpo_filters, validate_bidcpo, validate_embedded_bidcpo
from kodual.equivalence import bidcpo_to_kospace
from kodual.kospace import FinTopSpace, from_topspace
from kodual.localcompact import (
    Dirspace,
    black_triangle,
    check_bicontinuous,
    check_locally_compact,
    check_meets_joins_transfer,
    dirspace_ops,
    distributivity_from_O,
    finite_frame_pipeline,
    hofmann_mislove,
    poset_has_finite_joins,
    poset_has_finite_meets,
    way_below,
    wilker_check,
)
from kodual.order import FinLattice, FinPoset
from kodual.polarity import DoubleBaseLattice, Polarity, to_polarity

# ---- DIA fixture: diamond 0 < a,b < 1 with kset = oset = {0,a,b}
dia = FinPoset.from_leq("0ab1", [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
dia_lat = FinLattice(dia)
kmask = dia.mask_from_names("0ab")
dbl = DoubleBaseLattice(dia_lat, kmask, kmask)
e_dia = validate_embedded_bidcpo(dbl)
assert not isinstance(e_dia, list), e_dia
b_dia = to_polarity(e_dia.dbl)
b_dia = validate_bidcpo(b_dia if isinstance(b_dia, Polarity) else b_dia.pol)
assert not isinstance(b_dia, list), b_dia

rep = check_bicontinuous(b_dia)
print("DIA bicontinuous:", rep.bicontinuous, rep.witnesses)
assert rep.bicontinuous
rep_e = check_bicontinuous(e_dia)
print("DIA embedded bicontinuous:", rep_e.bicontinuous)
assert rep_e.bicontinuous

print("DIA o-side finite meets:", poset_has_finite_meets(b_dia.pol.o_poset()))
print("DIA k-side finite joins:", poset_has_finite_joins(b_dia.pol.k_poset()))
t = check_meets_joins_transfer(b_dia)
print("DIA transfer value:", t)
assert t is False

# way_below on DIA: 0 way below a through k = a
assert way_below(b_dia, "0", "a") is True
assert way_below(b_dia, "0", "0") is True  # 0 <| 0 and 0 black 0
print("DIA way_below(0,a):", True)

hm = hofmann_mislove(b_dia)
print("DIA hofmann_mislove k->filters:", hm.k_to_filter)

try:
    distributivity_from_O(b_dia, "O")
    raise SystemExit("DIA should fail the side hypotheses")
except ValueError as ex:
    print("DIA distributivity_from_O rejected:", str(ex)[:50])

try:
    wilker_check(b_dia, 1)
    raise SystemExit("DIA should fail the wilker v1 closure precondition")
except ValueError as ex:
    print("DIA wilker v1 precondition reject:", str(ex)[:60])

# ---- black triangle on SING bi-dcpo (kset {x}, oset {} name, rel empty)
p_sing = Polarity(("{x}",), ("{}",), (0,))
b_sing = validate_bidcpo(p_sing)
assert not isinstance(b_sing, list)
bt = black_triangle(b_sing)
print("SING black triangle:", bt)
assert bt == (1,)
rep_sing = check_bicontinuous(b_sing)
print("SING LC / bicont:", rep_sing.locally_compact, rep_sing.bicontinuous, rep_sing.witnesses)
assert rep_sing.locally_compact is True and rep_sing.bicontinuous is False

# ---- empty bi-dcpo
p_e = Polarity((), (), ())
b_e = validate_bidcpo(p_e)
assert not isinstance(b_e, list)
rep_empty = check_bicontinuous(b_e)
print("empty bicontinuous:", rep_empty.bicontinuous)
assert rep_empty.bicontinuous
assert check_meets_joins_transfer(b_e) is False
hm_e = hofmann_mislove(b_e)
assert hm_e.k_to_filter == () and hm_e.u_to_downset == ()

# ---- way_below with empty k side, nonempty o side
p_no_k = Polarity((), ("u", "v"), ())
# purity: cols both 0 -> duplicate cols, not purified. use 1-element o side
p_no_k = Polarity((), ("u",), ())
b_no_k = validate_bidcpo(p_no_k)
print("no-k bidcpo:", b_no_k if isinstance(b_no_k, list) else "ok")
if not isinstance(b_no_k, list):
    print("way_below empty k:", way_below(b_no_k, "u", "u"))
    assert way_below(b_no_k, "u", "u") is False

# ---- from_dcpo_filters of a finite poset is bicontinuous
ch3 = FinPoset.from_leq("pqr", [("p", "q"), ("q", "r")])
b_ch = from_dcpo_filters(ch3)
assert not isinstance(b_ch, list)
assert check_bicontinuous(b_ch).bicontinuous
print("from_dcpo_filters(3-chain) bicontinuous: True")
hm_ch = hofmann_mislove(b_ch)
print("3-chain HM:", hm_ch.k_to_filter)
print("3-chain filters wilker v1:", wilker_check(b_ch, 1))
print("3-chain filters wilker v2:", wilker_check(b_ch, 2))

# ---- singleton dirspace golden: opens = {X}, empty set not saturated
d1 = Dirspace.from_sets(("x",), [{"x"}])
ops = dirspace_ops(d1)
print("singleton ksat:", [d1.sname(m) for m in ops.ksat])
assert ops.ksat == (1,)
assert ops.has_degroot_duality is True
print("singleton degroot opens:", [d1.sname(m) for m in ops.degroot.opens])

# finite T0 space as dirspace: well-filtered, saturated = intersections of opens
sier = Dirspace.from_sets(("s", "t"), [set(), {"t"}, {"s", "t"}])
ops2 = dirspace_ops(sier)
print("sierpinski ksat:", [sier.sname(m) for m in ops2.ksat], "wf:", ops2.is_well_filtered, "lc:", ops2.is_locally_compact)
assert ops2.is_well_filtered and ops2.is_locally_compact
assert ops2.has_degroot_duality

# ---- wilker on a ko-space from a finite T0 space
t_sier = FinTopSpace.from_sets(("s", "t"), [set(), {"t"}, {"s", "t"}])
s_sier = from_topspace(t_sier)
print("sier kospace wilker v1:", wilker_check(s_sier, 1))
print("sier kospace wilker v2:", wilker_check(s_sier, 2))

# ---- pipeline: 3-chain lattice -> 2-point space
lat3 = FinLattice(ch3)
rep3 = finite_frame_pipeline(lat3)
assert not isinstance(rep3, list), rep3
print("pipeline 3-chain points:", rep3.points)
print("pipeline 3-chain to_opens:", rep3.to_opens)
assert len(rep3.points) == 2

# ---- pipeline: Boolean 4 -> 2-point discrete
b4 = FinPoset.from_leq("0ab1", [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
repb4 = finite_frame_pipeline(FinLattice(b4))
assert not isinstance(repb4, list), repb4
print("pipeline B4 points:", repb4.points, "to_opens:", repb4.to_opens)
assert len(repb4.points) == 2

# ---- pipeline: 1-element lattice -> empty space
lat1 = FinLattice(FinPoset.from_leq("z", []))
rep1 = finite_frame_pipeline(lat1)
assert not isinstance(rep1, list), rep1
print("pipeline singleton:", rep1.points, rep1.to_opens)
assert rep1.points == ()

# ---- pipeline rejects M3
m3 = FinPoset.from_leq(
    "0abc1",
    [("0", x) for x in "abc"] + [(x, "1") for x in "abc"],
)
repm3 = finite_frame_pipeline(FinLattice(m3))
assert isinstance(repm3, list) and repm3[0].axiom == "distributive"
print("pipeline M3 rejected:", repm3[0].witness)

# ---- distributivity_from_O on from_dcpo_filters(M3): both sides false
b_m3 = from_dcpo_filters(m3)
assert not isinstance(b_m3, list)
print("M3 filters distributivity_from_O(O):", distributivity_from_O(b_m3, "O"))
assert distributivity_from_O(b_m3, "O") is False

# from_dcpo_filters of a distributive lattice: true both ways
b_b4 = from_dcpo_filters(b4)
assert not isinstance(b_b4, list)
assert distributivity_from_O(b_b4, "O") is True
assert distributivity_from_O(b_b4, "K") is True
print("B4 filters distributivity_from_O both sides: True")

# ---- ko-space LC from bidcpo_to_kospace of a distributive example
s_ch = bidcpo_to_kospace(b_ch)
assert not isinstance(s_ch, list)
rep_s = check_locally_compact(s_ch)
print("kospace(3-chain filters) LC:", rep_s.locally_compact, "bicont:", rep_s.bicontinuous)

print("ALL LC SMOKE OK")
