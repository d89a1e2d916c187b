"""
Harder-Narasimhan and Jordan-Hoelder filtrations
================================================

Object models are finite lattices of subobjects with numerical classes.
"""
from fmstab import (
    AmbientData,
    NumClass,
    StabilityParameter,
    chain_model,
    h0_bound_p,
    hn_filtration,
    is_semistable,
    jh_filtration,
    max_destabilizing_subobject,
    stability_test_battery,
    validate_model,
    z_slope_fn,
)

amb = AmbientData(rank=1, generators=((1,),), B=(0,), J=(1,), L=(0,), H=(3,))
mu = z_slope_fn(StabilityParameter((0,), (1,), (0,)))

# a subsheaf of slope 3 inside an object of slope 2: unstable
m1 = validate_model(chain_model([NumClass(3, (1,)), NumClass(4, (2,))], name="M1"))
print(is_semistable(m1, mu))
print("destabilized by", max_destabilizing_subobject(m1, mu))
hn = hn_filtration(m1, mu)
print("HN chain", hn.chain, "slopes", hn.slopes)

# the four ways of testing stability must agree
print(stability_test_battery(m1, mu))

# equal slopes everywhere: semistable but not stable
m3 = validate_model(chain_model([NumClass(1, (1,)), NumClass(2, (2,))], name="M3"))
gr = jh_filtration(m3, mu)
print("JH factors", gr.factors)

print("h0 bound for M1:", h0_bound_p(m1, amb))   # 126
