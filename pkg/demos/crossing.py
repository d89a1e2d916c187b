"""
Crossing a wall
===============

F has a subobject of class (0, (0, 1)); its wall in the quintic chart is xB = 0.
"""
from fractions import Fraction

from fmstab import NumClass, chain_model, crossing_report, quintic_point, realized_walls, same_chamber, validate_model

F = validate_model(chain_model([NumClass(0, (0, 1)), NumClass(0, (1, 1))], name="F"))
catalog = {"F": F}
print(realized_walls(catalog))

h = Fraction(1, 2)
report = crossing_report(quintic_point(-h, 1, 1), quintic_point(h, 1, 1), quintic_point(0, 1, 1), catalog)
print("situation", report.situations["F"])
print("S-", sorted(report.s_minus), "S0", sorted(report.s_zero), "S+", sorted(report.s_plus))

# points on one side share a chamber, points on both sides do not
walls = realized_walls(catalog)
print(same_chamber(quintic_point(h, 1, 1), quintic_point(2, 3, 1), walls))
print(same_chamber(quintic_point(-h, 1, 1), quintic_point(h, 1, 1), walls))
