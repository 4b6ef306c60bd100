"""Symbolic-numeric toolkit for quaternion-valued functions of two
complex variables: expression trees, Wirtinger forward-mode jets, the
modified Cauchy-Fueter operator, PDE residual systems, a classifier,
and zero/pole order estimation."""
from __future__ import annotations

from .analysis import (
    BranchReport,
    ClassificationLabel,
    DValue,
    LABELS,
    ProductRuleCheck,
    cauchy_fueter,
    classify,
    hyperholomorphy_residual,
    inverse_hyperholomorphy_residual,
    product_rule_check,
    product_system_residual,
    real_combined_residual,
    real_linear_residual,
    real_product_residual,
    real_sum_branch,
    sum_pde_residual,
)
from .domain import Domain, grid_points, point_map
from .errors import InconclusiveError, ParseError, SingularPointError
from .expr import (
    Add,
    Conj,
    ConjVar,
    Div,
    Mul,
    Neg,
    Pow,
    QExpr,
    RealConst,
    Sub,
    UnitI,
    UnitJ,
    Var,
    const,
    has_unit_j,
    parse,
    parse_definitions,
    unparse,
)
from .jets import (
    Point4,
    WirtingerJet,
    eval_jet,
    eval_qexpr,
    eval_qfunction,
    eval_value,
    fd_jet,
)
from .lowering import (
    QFunction,
    conj_qf,
    const_qf,
    inverse_qf,
    lower,
    norm_sq_expr,
    product_qf,
    scale_right_qf,
    sum_qf,
)
from .quaternion import (
    ONE,
    UNIT_I,
    UNIT_J,
    Quaternion,
    modulus,
    norm_sq,
    quat_conj,
    quat_mul,
    render,
    rinv,
)
from .report import MaskedPoint, ResidualReport, SCHEMA
from .verify import VerifyItem, run_verify
from .zeros import OrderEstimate, estimate_order, zero_set_scan

__version__ = "0.1.0"

__all__ = [
    "Add",
    "BranchReport",
    "ClassificationLabel",
    "Conj",
    "ConjVar",
    "const",
    "const_qf",
    "conj_qf",
    "cauchy_fueter",
    "classify",
    "Div",
    "Domain",
    "DValue",
    "estimate_order",
    "eval_jet",
    "eval_qexpr",
    "eval_qfunction",
    "eval_value",
    "fd_jet",
    "grid_points",
    "has_unit_j",
    "hyperholomorphy_residual",
    "InconclusiveError",
    "inverse_hyperholomorphy_residual",
    "inverse_qf",
    "LABELS",
    "lower",
    "MaskedPoint",
    "modulus",
    "Mul",
    "Neg",
    "norm_sq",
    "norm_sq_expr",
    "ONE",
    "OrderEstimate",
    "ParseError",
    "parse",
    "parse_definitions",
    "Point4",
    "point_map",
    "Pow",
    "product_qf",
    "product_rule_check",
    "product_system_residual",
    "ProductRuleCheck",
    "QExpr",
    "QFunction",
    "quat_conj",
    "quat_mul",
    "Quaternion",
    "real_combined_residual",
    "real_linear_residual",
    "real_product_residual",
    "real_sum_branch",
    "RealConst",
    "render",
    "ResidualReport",
    "rinv",
    "run_verify",
    "scale_right_qf",
    "SCHEMA",
    "SingularPointError",
    "Sub",
    "sum_pde_residual",
    "sum_qf",
    "UNIT_I",
    "UNIT_J",
    "UnitI",
    "UnitJ",
    "unparse",
    "Var",
    "VerifyItem",
    "WirtingerJet",
    "zero_set_scan",
]
