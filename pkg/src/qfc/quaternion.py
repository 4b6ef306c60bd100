"""Quaternion arithmetic over pairs of complex numbers.

A quaternion q = z1 + z2*j is stored as the complex pair (z1, z2).
Multiplication follows the right-module convention

    (a1 + a2 j)(b1 + b2 j) = (a1 b1 - a2 conj(b2)) + (a1 b2 + a2 conj(b1)) j

which encodes the commutation rule z*j = j*conj(z).  All values are
immutable; every operation returns a fresh instance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularPointError


@dataclass(frozen=True)
class Quaternion:
    z1: complex
    z2: complex

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.z1, -self.z2)

    def __mul__(self, other: Quaternion) -> Quaternion:
        return quat_mul(self, other)

    def scale(self, a: complex) -> Quaternion:
        """Left multiplication by a complex scalar (a + 0j acting on the left)."""
        return Quaternion(a * self.z1, a * self.z2)

    def conj(self) -> Quaternion:
        return quat_conj(self)

    def __str__(self) -> str:
        return render(self)


ONE = Quaternion(1 + 0j, 0j)
UNIT_I = Quaternion(1j, 0j)
UNIT_J = Quaternion(0j, 1 + 0j)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Noncommutative product; associative, and i*j = -j*i falls out."""
    return Quaternion(
        a.z1 * b.z1 - a.z2 * b.z2.conjugate(),
        a.z1 * b.z2 + a.z2 * b.z1.conjugate(),
    )


def quat_conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.z1.conjugate(), -q.z2)


def norm_sq(q: Quaternion) -> float:
    """|z1|^2 + |z2|^2; equals the scalar part of q * conj(q)."""
    return abs(q.z1) ** 2 + abs(q.z2) ** 2


def modulus(q: Quaternion) -> float:
    return math.sqrt(norm_sq(q))


def rinv(q: Quaternion, singular_sq_tol: float = 0.0) -> Quaternion:
    """Right inverse conj(q)/norm_sq(q); it is in fact two-sided.

    Raises SingularPointError when norm_sq(q) <= singular_sq_tol (so the
    default rejects exactly q = 0).
    """
    n = norm_sq(q)
    if n <= singular_sq_tol:
        raise SingularPointError(f"no inverse: norm_sq = {n}")
    c = quat_conj(q)
    return Quaternion(c.z1 / n, c.z2 / n)


def _fmt_complex(z: complex) -> str:
    re, im = z.real, z.imag
    if im == 0:
        return repr(re)
    sign = "+" if im >= 0 else "-"
    return f"{re!r}{sign}{abs(im)!r}i"


def render(q: Quaternion) -> str:
    """Textual form "a+bi + (c+di)j" used in reports."""
    if q.z2 == 0:
        return _fmt_complex(q.z1)
    return f"{_fmt_complex(q.z1)} + ({_fmt_complex(q.z2)})j"
