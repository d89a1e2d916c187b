"""Exact stability computations for lattice models of one-dimensional sheaves."""

from .charge import (
    CentralCharge,
    Chart,
    HilbertPolynomial,
    SlopeBounds,
    StabilityParameter,
    central_charge,
    enumerate_classes_with_charge,
    hilbert_polynomial,
    hilbert_polynomials_for_charge,
    in_lower_half,
    p_slope,
    p_slope_fn,
    parameter_from_ambient,
    slope_comparison_bounds,
    z_slope,
    z_slope_fn,
)
from .lattice import AmbientData, NumClass, enumerate_interval, pair, validate_ambient
from .objects import (
    GradedClass,
    HNResult,
    ObjectModel,
    SubobjectNode,
    chain_model,
    h0_bound_p,
    h0_bound_z,
    hn_filtration,
    hom_vanishing_criterion,
    is_semistable,
    is_stable,
    jh_filtration,
    max_destabilizing_subobject,
    mu_max,
    mu_min,
    s_equivalent,
    stability_test_battery,
    validate_model,
)
from .walls import (
    ParameterBox,
    WallSpec,
    actual_walls,
    crossing_report,
    enumerate_walls_in_box,
    quintic_ambient,
    quintic_point,
    quintic_scenario,
    realized_walls,
    same_chamber,
    segment_crossings,
    slope_equality_on_wall,
    wall_sign,
    wall_value,
)

__version__ = "0.1.0"
