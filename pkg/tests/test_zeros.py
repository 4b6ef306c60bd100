"""Zero-set scanning and order-of-vanishing estimation."""

from __future__ import annotations

import math

import pytest

from qfc import (
    ONE,
    Point4,
    Pow,
    QFunction,
    RealConst,
    Var,
    const_qf,
    estimate_order,
    lower,
    parse,
    zero_set_scan,
)
from qfc.generators import counterexample_pair, example_pair

ORDER_TOL = 0.05
SLOPE_TOL = 0.1


def test_scan_confines_the_linear_example_zero_set_to_the_real_plane() -> None:
    clusters = zero_set_scan(example_pair(0.0, 0.0), grid_n=11, tol=0.4)
    assert len(clusters) == 1
    points = clusters[0]
    assert len(points) == 363
    spacing = 2.0 / 10.0
    assert all(abs(p.z1.real) <= 2.0 * spacing + 1e-12 for p in points)
    assert all(abs(p.z2.real) <= 2.0 * spacing + 1e-12 for p in points)
    # Every imaginary-part slice of the plane x1 = x2 = 0 is represented.
    slices = {(p.z1.imag, p.z2.imag) for p in points}
    assert len(slices) == 11 * 11


def test_scan_of_a_nonvanishing_function_is_empty() -> None:
    assert zero_set_scan(const_qf(ONE), grid_n=5) == []


def test_scan_of_the_antiholomorphic_pair_finds_the_origin() -> None:
    clusters = zero_set_scan(counterexample_pair(), grid_n=11, tol=1e-9)
    assert clusters == [[Point4(0j, 0j)]]


def test_scan_separates_distinct_zero_clusters() -> None:
    f = QFunction(Var("z1") * (Var("z1") - RealConst(0.5)), Var("z2"))
    clusters = zero_set_scan(f, grid_n=9, tol=1e-9)
    assert len(clusters) == 2
    centers = sorted(c[0].z1.real for c in clusters)
    assert centers == [0.0, 0.5]


def test_scan_is_deterministic() -> None:
    a = zero_set_scan(example_pair(0.0, 0.0), grid_n=7, tol=0.4)
    b = zero_set_scan(example_pair(0.0, 0.0), grid_n=7, tol=0.4)
    assert a == b


def test_order_of_a_simple_zero() -> None:
    est = estimate_order(QFunction(Var("z1"), Var("z2")), Point4(0j, 0j))
    assert est.kind == "zero"
    assert est.location == Point4(0j, 0j)
    assert est.order == pytest.approx(1.0, abs=ORDER_TOL)
    assert est.display_order == 1.0


def test_order_takes_the_minimum_component_exponent() -> None:
    est = estimate_order(QFunction(Pow(Var("z1"), 2), Var("z2")), Point4(0j, 0j))
    assert est.order == pytest.approx(1.0, abs=ORDER_TOL)
    assert est.per_component[0] == pytest.approx(2.0, abs=SLOPE_TOL)
    assert est.per_component[1] == pytest.approx(1.0, abs=ORDER_TOL)


def test_order_of_the_antiholomorphic_pair_zero() -> None:
    est = estimate_order(counterexample_pair(), Point4(0j, 0j))
    assert est.order == pytest.approx(1.0, abs=ORDER_TOL)
    assert est.per_component[0] == pytest.approx(1.0, abs=ORDER_TOL)
    assert est.per_component[1] == pytest.approx(1.0, abs=ORDER_TOL)


def test_identically_zero_component_reports_an_infinite_slope() -> None:
    est = estimate_order(QFunction(parse("z1*z2"), RealConst(0.0)), Point4(-1 - 1j, 0j))
    assert math.isinf(est.per_component[1])
    assert est.order == pytest.approx(1.0, abs=ORDER_TOL)


def test_pole_order_of_a_simple_reciprocal() -> None:
    est = estimate_order(lower(parse("1/z1")), Point4(0j, 0j), "pole")
    assert est.kind == "pole"
    assert est.display_order == 1.0
    assert 0.8 <= est.order <= 1.1
    assert est.per_component[1] == 0.0


def test_order_rejects_a_point_that_is_not_a_zero() -> None:
    with pytest.raises(ValueError, match="is not a zero candidate"):
        estimate_order(QFunction(Var("z1"), Var("z2")), Point4(0.5 + 0j, 0j))


def test_order_estimation_is_deterministic() -> None:
    f = counterexample_pair()
    a = estimate_order(f, Point4(0j, 0j))
    b = estimate_order(f, Point4(0j, 0j))
    assert a == b
