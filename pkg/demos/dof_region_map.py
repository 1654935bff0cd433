"""Map the normalized optimal dof over the antenna-ratio plane.

Everything here is scale free: only a = m1/m3 and b = m2/m3 matter. Two
regimes meet along the line a = b + 1. Left of it every node keeps some
receive antennas and dof = (2a+b+1)/3; right of it node 1 is so large
that dof pins to b+1 and extra antennas at node 1 are wasted.
"""

from fractions import Fraction

from mimo3way import broadcast_optimal_value, unicast_optimal_value

STEP = Fraction(1, 3)
A_MAX, B_MAX = Fraction(4), Fraction(3)


def frange(stop):
    v = Fraction(1)
    while v <= stop:
        yield v
        v += STEP


# ASCII surface, rows are b (descending), columns are a
print("dof/m3 for unicast messages ('.' where b > a is unordered):\n")
header = "  b\\a " + "".join(f"{float(a):6.2f}" for a in frange(A_MAX))
print(header)
for b in reversed(list(frange(B_MAX))):
    cells = []
    for a in frange(A_MAX):
        if b > a:
            cells.append("     .")
        else:
            cells.append(f"{float(unicast_optimal_value(a, b, 1)):6.2f}")
    print(f"{float(b):5.2f} " + "".join(cells))

# Exact values along the b = 1 column show the kink at a = 2
print("\nexact slice at b = 1:")
for a in frange(A_MAX):
    d = unicast_optimal_value(a, Fraction(1), 1)
    regime = "a <= b+1" if a <= 2 else "saturated"
    print(f"  a = {str(a):>4}: dof/m3 = {str(d):>5}  ({regime})")

# Broadcast traffic flattens the whole surface to b + 1
print("\nbroadcast surface is flat: dof/m3 = b+1 everywhere, e.g.")
for a, b in ((Fraction(2), Fraction(1)), (Fraction(4), Fraction(3)), (Fraction(7, 3), Fraction(5, 3))):
    print(f"  a = {a}, b = {b}: {broadcast_optimal_value(a, b, 1)}")
