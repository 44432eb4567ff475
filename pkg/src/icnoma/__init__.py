"""Grouped index-code design and power-layered scheduling for a three-group
NOMA downlink, with exact rate and equal-rate power analysis."""

from .analysis import (
    Pair,
    PowerReport,
    RateParams,
    RateReport,
    ZetaSet,
    compute_zetas,
    equal_rate_power_ic,
    equal_rate_power_noma2,
    equal_rate_power_noma3,
    power_report,
    power_savings,
    rate_ic_baseline,
    rate_ic_in_scheme,
    rate_report,
    rates_noma2,
    rates_noma3,
)
from .gf2 import BitMatrix, BitVector, GF2ShapeError, rank, row_space_contains, rref
from .grouping import (
    ChannelState,
    Group,
    GroupAssignment,
    GroupGains,
    GroupingError,
    assign_groups,
    group_min_gains,
)
from .icp import (
    CapabilityError,
    IndexCode,
    IndexCodingProblem,
    ProblemSpecError,
    UserDemand,
    UserSideInfo,
    is_valid_code,
    reduce_by_coded_rows,
    restrict,
    solve_exact,
    solve_greedy,
)
from .pipeline import (
    ThreeGroupCode,
    design_far_code,
    design_mid_code,
    design_near_code,
    design_two_group,
    run_pipeline,
    run_stages,
)
from .scenario import (
    RandomInstanceSpec,
    Scenario,
    ScenarioError,
    VehicleState,
    generate,
    ingest,
)
from .scheduler import (
    Case,
    DEFAULT_PROFILE,
    PowerProfile,
    Transmission,
    TransmissionKind,
    TransmissionPlan,
    build_plan,
    classify_case,
    verify_delivery,
)

__all__ = [name for name in dir() if not name.startswith("_")]
