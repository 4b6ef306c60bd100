"""Lowering quaternion-valued expression trees to component pairs.

Every expression e denotes a function with values f1 + f2*j where f1, f2
are complex-valued.  `lower` rewrites e into that canonical pair using
the commutation rule z*j = j*conj(z); the component trees contain no j
node, so they can be differentiated as ordinary functions of
z1, conj(z1), z2, conj(z2).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError  # noqa: F401  (re-exported for CLI convenience)
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
)
from .quaternion import Quaternion

_ZERO = RealConst(0.0)
_ONE = RealConst(1.0)


@dataclass(frozen=True)
class QFunction:
    """A function f = f1 + f2*j given by two complex-component trees."""

    f1: QExpr
    f2: QExpr

    def __post_init__(self):
        if has_unit_j(self.f1) or has_unit_j(self.f2):
            raise ValueError("component expressions must not contain j")


def lower(e: QExpr) -> QFunction:
    """Rewrite e as an equivalent (f1, f2) component pair."""
    match e:
        case Var() | ConjVar() | RealConst() | UnitI():
            return QFunction(e, _ZERO)
        case UnitJ():
            return QFunction(_ZERO, _ONE)
        case Add(l, r):
            return sum_qf(lower(l), lower(r))
        case Sub(l, r):
            a, b = lower(l), lower(r)
            return QFunction(a.f1 - b.f1, a.f2 - b.f2)
        case Neg(x):
            a = lower(x)
            return QFunction(-a.f1, -a.f2)
        case Conj(x):
            return conj_qf(lower(x))
        case Mul(l, r):
            return product_qf(lower(l), lower(r))
        case Div(l, r):
            return product_qf(lower(l), inverse_qf(lower(r)))
        case Pow(b, n):
            base = lower(b)
            if base.f2 == _ZERO:
                return QFunction(base.f1**n, _ZERO)
            out = base
            for _ in range(n - 1):
                out = product_qf(out, base)
            return out
    raise TypeError(f"not an expression node: {e!r}")


def sum_qf(f: QFunction, g: QFunction) -> QFunction:
    return QFunction(f.f1 + g.f1, f.f2 + g.f2)


def product_qf(f: QFunction, g: QFunction) -> QFunction:
    """Componentwise quaternionic product, order preserved."""
    return QFunction(
        f.f1 * g.f1 - f.f2 * g.f2.conj(),
        f.f1 * g.f2 + f.f2 * g.f1.conj(),
    )


def conj_qf(f: QFunction) -> QFunction:
    return QFunction(f.f1.conj(), -f.f2)


def norm_sq_expr(f: QFunction) -> QExpr:
    """The real-valued tree f1*conj(f1) + f2*conj(f2)."""
    return f.f1 * f.f1.conj() + f.f2 * f.f2.conj()


def inverse_qf(f: QFunction) -> QFunction:
    """Right inverse conj(f)/norm_sq(f), kept symbolic.

    Defined almost everywhere; evaluation close to the zero set of f
    raises SingularPointError and is masked by grid drivers.
    """
    n = norm_sq_expr(f)
    return QFunction(f.f1.conj() / n, (-f.f2) / n)


def const_qf(q: Quaternion) -> QFunction:
    """The constant function with value q."""
    return QFunction(const(q.z1), const(q.z2))


def scale_right_qf(f: QFunction, lam: Quaternion) -> QFunction:
    """f * lam for a quaternion constant lam (scalars act on the right)."""
    return product_qf(f, const_qf(lam))
