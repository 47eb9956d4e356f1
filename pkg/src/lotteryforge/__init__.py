"""Lottery systems, covering designs and Turán systems: constructions,
verification and exact minimization."""
from .construct import CompositionReport, compose, gdd, greedy_covering, patches
from .errors import (
    CapacityError,
    ConstructionDefect,
    LotteryForgeError,
    NonUnitError,
    ParameterError,
    ParseError,
    PreconditionError,
    StructuralError,
)
from .modular import ZModMatrix, m_lcm, mod_inverse, power_matrix, solve_unit_system, vandermonde_det
from .setsystem import (
    ForbiddenFamily,
    Params,
    SetSystem,
    blow_up,
    complement_system,
    contains_subgraph,
    is_family_free,
    is_pair_covering,
    shadow,
)
from .solve import (
    BoundPair,
    DensityReport,
    covering_limit_density,
    exact_min_lottery,
    exact_turan,
    greedy_lottery,
    limit_density_r2,
    turan_lower_bound,
)
from .verify import (
    PartiteLayout,
    Verdict,
    check_patch_coverage,
    verify_covering,
    verify_gdd,
    verify_lottery,
    verify_turan_property,
)

__version__ = "0.1.0"
