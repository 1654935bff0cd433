"""Converse bounds and optimal antenna allocation, step by step.

Three full-duplex nodes with m1 >= m2 >= m3 antennas each split their
arrays into transmit and receive groups. This script evaluates the
information-theoretic ceilings at a few splits, then lets the allocator
pick the best split and cross-checks it three independent ways.
"""

from fractions import Fraction

from mimo3way import (
    AntennaConfig,
    AntennaSplit,
    canonical_primal_dual,
    cutset_bound_unicast,
    genie_bound_unicast,
    optimal_broadcast,
    optimal_unicast_bruteforce,
    optimal_unicast_closed_form,
    optimal_unicast_enumerated,
    verify_duality,
)


def trip(vals):
    return "(" + ", ".join(str(v) for v in vals) + ")"


# ------------------------------------------------------------------
# 1. Bounds at a hand-picked split of (3,3,3)
# ------------------------------------------------------------------
split = AntennaSplit((3, 1, 1), (0, 2, 2))
print(f"split: mt={trip(split.tx)} mr={trip(split.rx)}")

for name, report in (
    ("cutset", cutset_bound_unicast(split)),
    ("genie", genie_bound_unicast(split)),
):
    print(f"  {name:>6}: combined = {report.combined}  (binding: {', '.join(report.binding)})")

# The genie bound never exceeds the cutset bound, and here both close at 4.

# ------------------------------------------------------------------
# 2. Optimal allocation, three routes that must agree
# ------------------------------------------------------------------
print()
for totals in ((3, 3, 3), (5, 4, 2), (9, 1, 1), (4, 4, 4)):
    cfg = AntennaConfig(*totals)
    closed = optimal_unicast_closed_form(cfg)
    enumerated = optimal_unicast_enumerated(cfg)
    brute = optimal_unicast_bruteforce(cfg, denominator=3)
    assert closed.optimal_dof == enumerated.optimal_dof == brute.optimal_dof
    print(
        f"m={totals}: dof = {closed.optimal_dof} "
        f"(regime {closed.regime.value}, extension x{closed.extension_factor}), "
        f"split mt={trip(closed.split.tx)} mr={trip(closed.split.rx)}"
    )

# (4,4,4) needs the fractional split: dof 16/3 is only reachable by
# operating three channel uses jointly.

# ------------------------------------------------------------------
# 3. Broadcast messages change the answer
# ------------------------------------------------------------------
cfg = AntennaConfig(5, 3, 2)
bc = optimal_broadcast(cfg)
band = bc.broadcast_band
print(f"\nbroadcast on m={cfg.totals}: dof = {bc.optimal_dof}, "
      f"any split with {band.low} <= tx1+tx2+tx3 <= {band.high} is optimal")
print(f"  chosen split: mt={trip(bc.split.tx)} mr={trip(bc.split.rx)}")
assert band.contains(cfg, bc.split.tx)

# ------------------------------------------------------------------
# 4. An exact optimality certificate, no floating point involved
# ------------------------------------------------------------------
lp, v, lam = canonical_primal_dual(AntennaConfig(5, 4, 2))
cert = verify_duality(lp, v, lam)
print(f"\nduality check on m=(5,4,2): status {cert.status.value}, gap = {cert.gap}")
assert cert.gap == Fraction(0)
print(f"  primal point: dof = {v[0]}, receive split = {trip(v[1:])}")
print(f"  active multipliers: {[(lp.constraints[i], str(x)) for i, x in enumerate(lam) if x]}")
