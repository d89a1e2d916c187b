"""
Central charges and slopes on a rank-one ambient
================================================

One curve generator with B = 1, J = 2, L = 1 and polarization H = 3.
"""
from fractions import Fraction

from fmstab import (
    AmbientData,
    CentralCharge,
    NumClass,
    central_charge,
    enumerate_classes_with_charge,
    hilbert_polynomial,
    p_slope,
    parameter_from_ambient,
    slope_comparison_bounds,
    z_slope,
)

amb = AmbientData(rank=1, generators=((1,),), B=(1,), J=(2,), L=(1,), H=(3,))
p = parameter_from_ambient(amb)

n = NumClass(5, (2,))
print("Z  =", central_charge(p, n))           # 3 - 6i
print("muZ =", z_slope(p, n), " muP =", p_slope(amb, n))
print("Hilbert polynomial:", hilbert_polynomial(amb, n))

# charges are additive, so sums of classes land where you expect
m = NumClass(-1, (1,))
print(central_charge(p, n + m), "==", central_charge(p, n) + central_charge(p, m))

# only finitely many classes share a charge
c = CentralCharge(2, -3)
print("classes with charge", c, "->", enumerate_classes_with_charge(p, c))

# muZ is squeezed between two affine functions of muP (rank two, so the bounds are honest)
amb2 = AmbientData(rank=2, generators=((1, 0), (0, 1)), B=(1, -1), J=(1, 2), L=(1, 0), H=(1, 3))
p2 = parameter_from_ambient(amb2)
b = slope_comparison_bounds(amb2, p2)
print(b)
for k in (NumClass(-4, (1, 3)), NumClass(0, (2, 1)), NumClass(7, (0, 2))):
    lo, hi = b.sandwich(p_slope(amb2, k))
    assert lo <= z_slope(p2, k) <= hi
    print(f"{k}: {lo} <= {z_slope(p2, k)} <= {hi}")

# scaling the whole parameter does not change slope order
q = p.scaled(Fraction(5, 2))
print(z_slope(q, n) < z_slope(q, m), z_slope(p, n) < z_slope(p, m))
