"""Cauchy-Fueter operator, PDE residual systems, and the classifier.

All residual functions return raw magnitudes.  The classifier is the
only place residuals are normalized (by 1 + the largest jet magnitude
at the point) before comparison against the tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .domain import Domain, grid_points, point_map
from .errors import InconclusiveError, SingularPointError
from .jets import DEFAULT_SINGULAR_SQ_TOL, Point4, WirtingerJet, eval_jet
from .lowering import QFunction, conj_qf, inverse_qf, norm_sq_expr, product_qf, sum_qf
from .quaternion import UNIT_J, Quaternion, modulus, quat_mul
from .report import MaskedPoint, ResidualReport

LABELS = (
    "Holomorphic",
    "Hyperholomorphic",
    "WHypermeromorphic",
    "Hypermeromorphic-candidate",
    "NonHyperholomorphic",
)

DEFAULT_TOL = 1e-8
DEFAULT_REAL_TOL = 1e-9


@dataclass(frozen=True)
class DValue:
    """Value of the operator in left-bracket form c1 + j*c2.

    z1 and z2 hold c1 and c2.  Commuting j to the right gives the
    canonical pair (c1, conj(c2)), see as_quaternion.
    """

    z1: complex
    z2: complex

    def as_quaternion(self) -> Quaternion:
        return Quaternion(self.z1, self.z2.conjugate())

    def magnitude(self) -> float:
        return math.hypot(abs(self.z1), abs(self.z2))


@dataclass(frozen=True)
class ProductRuleCheck:
    """Both sides of the derivative-of-a-product identity at a point."""

    lhs: Quaternion
    first_term: Quaternion
    second_term: Quaternion

    @property
    def rhs(self) -> Quaternion:
        return self.first_term + self.second_term

    @property
    def gap(self) -> float:
        return modulus(self.lhs - self.rhs)


@dataclass(frozen=True)
class BranchReport:
    """Pointwise dichotomy report for the real-component sum system.

    The system factors: at each point either the algebraic expression
    vanishes or the derivative system does.  branch records which side
    holds within tol ("algebraic", "derivative", "both", "neither").
    """

    expression_residuals: tuple[float, float]
    algebraic_residual: float
    derivative_residuals: tuple[float, float, float]
    branch: str
    tol: float


@dataclass(frozen=True)
class ClassificationLabel:
    label: str
    tol: float

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")


def _jet_pair(
    f: QFunction, p: Point4, singular_sq_tol: float
) -> tuple[WirtingerJet, WirtingerJet]:
    return (
        eval_jet(f.f1, p, singular_sq_tol),
        eval_jet(f.f2, p, singular_sq_tol),
    )


def _jet_scale(j1: WirtingerJet, j2: WirtingerJet) -> float:
    return max(j1.magnitude(), j2.magnitude())


def cauchy_fueter(
    f: QFunction, p: Point4, singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL
) -> DValue:
    """Apply the modified Cauchy-Fueter operator to f at p."""
    j1, j2 = _jet_pair(f, p, singular_sq_tol)
    c1 = 0.5 * (j1.d_z1bar - j2.d_z2bar.conjugate())
    c2 = 0.5 * (j1.d_z2bar + j2.d_z1bar.conjugate())
    return DValue(c1, c2)


def _hyperholomorphy_from_jets(
    j1: WirtingerJet, j2: WirtingerJet
) -> tuple[float, float]:
    e1 = j1.d_z1bar - j2.d_z2bar.conjugate()
    e2 = j1.d_z2bar + j2.d_z1bar.conjugate()
    return (abs(e1), abs(e2))


def hyperholomorphy_residual(
    f: QFunction, p: Point4, singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL
) -> tuple[float, float]:
    """Residual magnitudes of the two component equations of 2*D(f)=0."""
    j1, j2 = _jet_pair(f, p, singular_sq_tol)
    return _hyperholomorphy_from_jets(j1, j2)


def _inverse_system_from_jets(
    j1: WirtingerJet, j2: WirtingerJet
) -> tuple[float, float]:
    v1, v2 = j1.val, j2.val
    w = v1.conjugate() - v1
    e1 = (
        w * j1.d_z1bar.conjugate()
        - v2.conjugate() * j2.d_z1
        - v2 * j1.d_z2.conjugate()
    )
    e2 = (
        v2.conjugate() * j1.d_z1
        + j2.d_z1bar.conjugate() * w
        - v2 * j2.d_z2.conjugate()
    )
    return (abs(e1), abs(e2))


def inverse_hyperholomorphy_residual(
    f: QFunction, p: Point4, singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL
) -> tuple[float, float]:
    """Residuals of the system characterizing a hyperholomorphic inverse.

    For hyperholomorphic f, this vanishes exactly when the right inverse
    of f is hyperholomorphic off the zero set of f.
    """
    j1, j2 = _jet_pair(f, p, singular_sq_tol)
    return _inverse_system_from_jets(j1, j2)


def _require_real(values: list[complex], real_tol: float, what: str) -> None:
    worst = max((abs(v.imag) for v in values), default=0.0)
    if worst > real_tol:
        raise ValueError(
            f"{what} requires real-valued components at the point "
            f"(largest imaginary part {worst:.3e})"
        )


def real_linear_residual(
    f: QFunction,
    p: Point4,
    real_tol: float = DEFAULT_REAL_TOL,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> tuple[float, float]:
    """Residuals of the linear first-order system for real-component f."""
    j1, j2 = _jet_pair(f, p, singular_sq_tol)
    _require_real([j1.val, j2.val], real_tol, "real_linear_residual")
    e1 = j2.d_z1 + j1.d_z2bar
    e2 = j1.d_z1 - j2.d_z2bar
    return (abs(e1), abs(e2))


def sum_pde_residual(
    h: QFunction,
    p: Point4,
    mask_threshold: float = 1e-6,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> float:
    """Residual of the PDE characterizing sums that stay w-hypermeromorphic.

    Raises SingularPointError when norm_sq(h) at p is below mask_threshold,
    since the PDE divides by the norm there.
    """
    nexpr = norm_sq_expr(h)
    nj = eval_jet(nexpr, p, singular_sq_tol)
    n = nj.val.real
    if n < mask_threshold:
        raise SingularPointError(f"norm_sq below mask threshold at {p}")
    j1, j2 = _jet_pair(h, p, singular_sq_tol)
    hbar = Quaternion(j1.val.conjugate(), -j2.val)
    dn = Quaternion(0.5 * nj.d_z1bar, (0.5 * nj.d_z2bar).conjugate())
    dhbar = cauchy_fueter(conj_qf(h), p, singular_sq_tol).as_quaternion()
    return modulus(quat_mul(dn.scale(-2.0), hbar) + dhbar.scale(2.0 * n))


def real_sum_branch(
    h: QFunction,
    p: Point4,
    tol: float = DEFAULT_TOL,
    real_tol: float = DEFAULT_REAL_TOL,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> BranchReport:
    """Factored form of the sum PDE for real-component h, with branch."""
    j1, j2 = _jet_pair(h, p, singular_sq_tol)
    v1, v2 = j1.val, j2.val
    _require_real([v1, v2], real_tol, "real_sum_branch")
    e_a = -(v1 * v1) * j1.d_z1bar + 3.0 * (v2 * v2) * j2.d_z2
    e_b = -(v1 * v1) * j2.d_z2 + (v2 * v2) * j1.d_z1bar
    algebraic = abs(v1**4 - 3.0 * v2**4)
    derivative = (
        abs(j1.d_z1bar),
        abs(j2.d_z2),
        abs(j1.d_z2 + j2.d_z1bar),
    )
    alg_ok = algebraic <= tol
    der_ok = max(derivative) <= tol
    if alg_ok and der_ok:
        branch = "both"
    elif alg_ok:
        branch = "algebraic"
    elif der_ok:
        branch = "derivative"
    else:
        branch = "neither"
    return BranchReport((abs(e_a), abs(e_b)), algebraic, derivative, branch, tol)


def product_system_residual(
    f: QFunction,
    g: QFunction,
    p: Point4,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> tuple[float, float]:
    """Residuals of the PDE pair for the ordered product f*g.

    The system is order-sensitive: it constrains the left factor's
    derivatives through the right factor's first component value.
    """
    jf1, jf2 = _jet_pair(f, p, singular_sq_tol)
    jg1, jg2 = _jet_pair(g, p, singular_sq_tol)
    u, v = jf1.val, jf2.val
    w = u - u.conjugate()
    g1 = jg1.val
    p1 = (
        g1 * (jf1.d_z1bar + jf2.d_z2bar.conjugate())
        + w * jg1.d_z1bar
        + v.conjugate() * jg1.d_z2
        - v * jg2.d_z1.conjugate()
    )
    p2 = (
        g1 * (jf1.d_z2bar - jf2.d_z1bar.conjugate())
        + w * jg1.d_z2bar
        - v.conjugate() * jg1.d_z1
        - v * jg2.d_z2.conjugate()
    )
    return (abs(p1), abs(p2))


def real_product_residual(
    f: QFunction,
    g: QFunction,
    p: Point4,
    real_tol: float = DEFAULT_REAL_TOL,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> float:
    """Bilinear product condition for real-component f and g."""
    jf1, jf2 = _jet_pair(f, p, singular_sq_tol)
    jg1, jg2 = _jet_pair(g, p, singular_sq_tol)
    _require_real([jf1.val, jf2.val, jg1.val, jg2.val], real_tol, "real_product_residual")
    return abs(jf1.d_z1 * jg2.d_z2 + jf1.d_z2 * jg2.d_z1)


def real_combined_residual(
    f: QFunction,
    g: QFunction,
    p: Point4,
    real_tol: float = DEFAULT_REAL_TOL,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> tuple[float, float, float, float, float]:
    """The five-equation system for real-component pairs closed under
    both sum and product: each factor's linear system plus one bilinear
    coupling equation."""
    jf1, jf2 = _jet_pair(f, p, singular_sq_tol)
    jg1, jg2 = _jet_pair(g, p, singular_sq_tol)
    _require_real(
        [jf1.val, jf2.val, jg1.val, jg2.val], real_tol, "real_combined_residual"
    )
    return (
        abs(jf2.d_z1 + jf1.d_z2),
        abs(jf1.d_z1 - jf2.d_z2),
        abs(jg2.d_z1 + jg1.d_z2),
        abs(jg1.d_z1 - jg2.d_z2),
        abs(jf1.d_z1 * jg1.d_z1 - jf1.d_z2 * jg1.d_z2),
    )


def product_rule_check(
    f: QFunction,
    g: QFunction,
    p: Point4,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> ProductRuleCheck:
    """Evaluate both sides of D(f*g) = D(f)*g + (correction term).

    The correction term depends on the values of f and the derivatives
    of g; it reduces to f*D(g) when f is real-valued and g satisfies the
    real-component linear system.
    """
    jf1, jf2 = _jet_pair(f, p, singular_sq_tol)
    jg1, jg2 = _jet_pair(g, p, singular_sq_tol)
    u, v = jf1.val, jf2.val
    gq = Quaternion(jg1.val, jg2.val)

    df1 = Quaternion(0.5 * jf1.d_z1bar, (0.5 * jf1.d_z2bar).conjugate())
    df2 = Quaternion(0.5 * jf2.d_z1bar, (0.5 * jf2.d_z2bar).conjugate())
    first = quat_mul(df1, gq) + quat_mul(df2, quat_mul(UNIT_J, gq))

    x1 = u * jg1.d_z1bar - v * jg2.d_z1.conjugate()
    y1 = u * jg2.d_z1bar + v * jg1.d_z1.conjugate()
    x2 = u * jg1.d_z2bar - v * jg2.d_z2.conjugate()
    y2 = u * jg2.d_z2bar + v * jg1.d_z2.conjugate()
    second = Quaternion(0.5 * (x1 - y2.conjugate()), 0.5 * (y1 + x2.conjugate()))

    lhs = cauchy_fueter(product_qf(f, g), p, singular_sq_tol).as_quaternion()
    return ProductRuleCheck(lhs, first, second)


def _probe_grid(
    f: QFunction,
    pts: list[Point4],
    threshold: float,
    singular_sq_tol: float,
    with_inverse: bool = True,
):
    """Jets of f (and of its inverse) at each point, or a mask reason."""
    inv = inverse_qf(f) if with_inverse else None

    def probe(p: Point4):
        try:
            j1, j2 = _jet_pair(f, p, singular_sq_tol)
        except SingularPointError:
            return (p, None, "singular")
        nsq = abs(j1.val) ** 2 + abs(j2.val) ** 2
        if nsq < threshold:
            return (p, None, "norm_sq below threshold")
        if inv is None:
            return (p, (j1, j2, None, None), None)
        try:
            k1, k2 = _jet_pair(inv, p, singular_sq_tol)
        except SingularPointError:
            return (p, None, "singular")
        return (p, (j1, j2, k1, k2), None)

    return point_map(probe, pts)


def _pair_passes(
    h: QFunction,
    pts: list[Point4],
    threshold: float,
    tol: float,
    singular_sq_tol: float,
) -> bool:
    """True if h and its inverse pass the first-order system on the
    unmasked part of pts (normalized residuals), with at least one
    unmasked point."""
    seen = False
    for _, jets, reason in _probe_grid(h, pts, threshold, singular_sq_tol):
        if reason is not None:
            continue
        j1, j2, k1, k2 = jets
        seen = True
        if max(_hyperholomorphy_from_jets(j1, j2)) / (1.0 + _jet_scale(j1, j2)) > tol:
            return False
        if max(_hyperholomorphy_from_jets(k1, k2)) / (1.0 + _jet_scale(k1, k2)) > tol:
            return False
    return seen


def classify(
    f: QFunction,
    d: Domain | None = None,
    grid_n: int = 6,
    tol: float = DEFAULT_TOL,
    witnesses: list[QFunction] | None = None,
    singular_sq_tol: float = DEFAULT_SINGULAR_SQ_TOL,
) -> tuple[ClassificationLabel, list[ResidualReport]]:
    """Sample f on a grid and classify it by its PDE residuals.

    Masks points with norm_sq(f) below the domain's excluded threshold
    or where evaluation is singular.  Raises InconclusiveError when
    fewer than half of the grid points survive masking.  A witness list
    upgrades WHypermeromorphic to Hypermeromorphic-candidate when sums
    and products with every witness stay in the class on the same grid.
    """
    if d is None:
        d = Domain()
    pts = grid_points(d, grid_n)
    probes = _probe_grid(f, pts, d.excluded_threshold, singular_sq_tol)

    eq1_rows: list[tuple[Point4, tuple[float, ...]]] = []
    inv_rows: list[tuple[Point4, tuple[float, ...]]] = []
    comp2_rows: list[tuple[Point4, tuple[float, ...]]] = []
    masked: list[MaskedPoint] = []
    eq1_norm_max = 0.0
    inv_norm_max = 0.0
    comp2_max = 0.0

    for p, jets, reason in probes:
        if reason is not None:
            masked.append(MaskedPoint(p, reason))
            continue
        j1, j2, k1, k2 = jets
        e = _hyperholomorphy_from_jets(j1, j2)
        eq1_rows.append((p, e))
        eq1_norm_max = max(eq1_norm_max, max(e) / (1.0 + _jet_scale(j1, j2)))
        e = _hyperholomorphy_from_jets(k1, k2)
        inv_rows.append((p, e))
        inv_norm_max = max(inv_norm_max, max(e) / (1.0 + _jet_scale(k1, k2)))
        comp2_rows.append((p, (abs(j2.val),)))
        comp2_max = max(comp2_max, abs(j2.val))

    if len(eq1_rows) * 2 < len(pts):
        raise InconclusiveError(
            f"only {len(eq1_rows)} of {len(pts)} grid points are unmasked"
        )

    reports = [
        ResidualReport("hyperholomorphy", eq1_rows, masked),
        ResidualReport("inverse_hyperholomorphy", inv_rows, masked),
        ResidualReport("second_component", comp2_rows, masked),
    ]

    if eq1_norm_max > tol:
        label = "NonHyperholomorphic"
    elif comp2_max <= tol:
        label = "Holomorphic"
    elif inv_norm_max <= tol:
        label = "WHypermeromorphic"
        if witnesses:
            upgraded = all(
                _pair_passes(h, pts, d.excluded_threshold, tol, singular_sq_tol)
                for w in witnesses
                for h in (sum_qf(f, w), product_qf(f, w), product_qf(w, f))
            )
            if upgraded:
                label = "Hypermeromorphic-candidate"
    else:
        label = "Hyperholomorphic"
    return ClassificationLabel(label, tol), reports
