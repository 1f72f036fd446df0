"""Exact tropical (max-plus) Nevanlinna theory over the rationals."""

from .casorati import CasoratiSpec, casorati, casorati_properties_check
from .core import BOTTOM, format_scalar, scalar, tadd, tdiv, tmul, tpow, tprod, tsum
from .curves import (
    Curve,
    Hyperplane,
    compose,
    coordinate_hyperplane,
    ddg,
    ddg_star,
    find_dependence_witness,
    is_nondegenerate,
    nondegenerate_witnessed,
    reduced_check,
    representation_length,
    verify_dependence_witness,
)
from .expr import format_expression, parse_expression
from .harness import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    Scenario,
    SlopeVerdict,
    cc410_report,
    complete_hyperplane_identity,
    defect_relation_report,
    fmt_report,
    general_smt_report,
    growth_indicator,
    meromorphic_smt_report,
    product_to_sum_check,
    smt_casorati_report,
    smt_main_report,
    truncated_counterexample,
)
from .linalg import (
    TropMatrix,
    adjoint,
    check_balance,
    cramer_permanents,
    cramer_report,
    cramer_upper_bound,
    general_position,
    is_singular,
    tmat_mul,
    tropical_determinant,
)
from .plfun import PLFunction, evaluate
from .report import emit_csv
from .scenario import ScenarioDocument, load_scenario, parse_scenario

__version__ = "0.1.0"
