"""Expression trees: parsing, folding, printing, and round-trips."""

from __future__ import annotations

import cmath

import pytest
from hypothesis import assume, given, settings, strategies as st

from qfc import (
    Add,
    Conj,
    ConjVar,
    Div,
    Mul,
    Neg,
    ParseError,
    Point4,
    Pow,
    RealConst,
    SingularPointError,
    Sub,
    UnitI,
    UnitJ,
    Var,
    const,
    eval_qexpr,
    has_unit_j,
    parse,
    parse_definitions,
    unparse,
)

VAR_NAMES = st.sampled_from(["z1", "z2"])
# Constants are rounded so their repr survives the tokenizer unchanged.
CONSTS = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False).map(
    lambda v: RealConst(round(v, 3))
)
LEAVES = st.one_of(
    st.builds(Var, VAR_NAMES),
    st.builds(ConjVar, VAR_NAMES),
    CONSTS,
    st.just(UnitI()),
    st.just(UnitJ()),
)


def _branches(children: st.SearchStrategy) -> st.SearchStrategy:
    return st.one_of(
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Div, children, children),
        st.builds(Neg, children),
        st.builds(Conj, children),
        st.builds(Pow, children, st.integers(min_value=1, max_value=4)),
    )


EXPRESSIONS = st.recursive(LEAVES, _branches, max_leaves=25)


def test_parse_builds_raw_left_associated_chains() -> None:
    got = parse("z1 + conj(z1) + z2 + conj(z2) + 1")
    want = Add(
        Add(Add(Add(Var("z1"), ConjVar("z1")), Var("z2")), ConjVar("z2")),
        RealConst(1.0),
    )
    assert got == want


def test_parse_surface_expression() -> None:
    got = parse("conj(z1) + conj(z2)*j")
    assert got == Add(ConjVar("z1"), Mul(ConjVar("z2"), UnitJ()))
    assert has_unit_j(got)
    assert not has_unit_j(parse("z1*z2 + i"))


def test_parse_precedence_and_exponent() -> None:
    assert parse("z1 + z2*z1^2") == Add(
        Var("z1"), Mul(Var("z2"), Pow(Var("z1"), 2))
    )
    assert parse("(z1 + z2)*z1") == Mul(Add(Var("z1"), Var("z2")), Var("z1"))
    assert parse("z1 - z2 - 1") == Sub(Sub(Var("z1"), Var("z2")), RealConst(1.0))


def test_parse_number_forms() -> None:
    assert parse("1.5e-3") == RealConst(0.0015)
    assert parse(".5") == RealConst(0.5)
    assert parse("-2.5") == RealConst(-2.5)
    assert parse("- 2.5") == RealConst(-2.5)


def test_parse_leading_minus_folds_constants_only() -> None:
    assert parse("-z1") == Neg(Var("z1"))
    assert parse("-(z1)") == Neg(Var("z1"))
    # A negated constant folds even through parentheses.
    assert parse("-(2.0)") == RealConst(-2.0)


def test_parse_error_positions() -> None:
    with pytest.raises(ParseError, match=r"unexpected token '\*' \(at position 4\)"):
        parse("z1 +* 2")
    try:
        parse("z1 +* 2")
    except ParseError as exc:
        assert exc.position == 4
    with pytest.raises(ParseError, match="unexpected character"):
        parse("z1 $ z2")
    with pytest.raises(ParseError, match="unknown name 'g'"):
        parse("g + 1")
    with pytest.raises(ParseError, match="exponent must be a positive integer"):
        parse("z1^0")
    with pytest.raises(ParseError):
        parse("z1 + ")
    with pytest.raises(ParseError, match="unexpected token"):
        parse("z1 z2")


def test_node_validation() -> None:
    with pytest.raises(ValueError, match="unknown variable 'z3'"):
        Var("z3")
    with pytest.raises(ValueError, match="unknown variable"):
        ConjVar("w")
    with pytest.raises(ValueError, match="exponent must be a positive integer"):
        Pow(Var("z1"), 0)
    with pytest.raises(ValueError, match="constants must be finite"):
        const(float("nan"))
    with pytest.raises(ValueError):
        RealConst(float("inf"))


def test_operator_folding_identities() -> None:
    z1 = Var("z1")
    zero = const(0.0)
    one = const(1.0)
    assert z1 + zero == z1
    assert zero + z1 == z1
    assert z1 - zero == z1
    assert z1 * one == z1
    assert one * z1 == z1
    assert z1 * zero == RealConst(0.0)
    assert zero * z1 == RealConst(0.0)
    assert const(2.0) + const(0.5) == RealConst(2.5)
    assert const(2.0) * const(0.5) == RealConst(1.0)
    assert -const(2.0) == RealConst(-2.0)
    assert zero / z1 == RealConst(0.0)
    # Division only folds away a denominator equal to one.
    assert z1 / const(2.0) == Div(z1, RealConst(2.0))
    assert z1 / one == z1


def test_conjugation_folding() -> None:
    z1 = Var("z1")
    assert z1.conj() == ConjVar("z1")
    assert ConjVar("z2").conj() == Var("z2")
    assert const(2.5).conj() == RealConst(2.5)
    assert UnitI().conj() == Neg(UnitI())
    assert UnitJ().conj() == Neg(UnitJ())
    assert Conj(Add(z1, Var("z2"))).conj() == Add(z1, Var("z2"))
    # Raw constructor keeps the node; only the operator folds.
    assert Conj(UnitI()) != UnitI().conj()


def test_unparse_frozen_forms() -> None:
    assert unparse(parse("z1 + z2*j")) == "z1 + z2 * j"
    assert unparse(parse("conj(z1) + conj(z2)*j")) == "conj(z1) + conj(z2) * j"
    assert unparse(parse("1/(z1 + 2)")) == "1.0 / (z1 + 2.0)"
    assert unparse(parse("z1 - z2 - 1")) == "z1 - z2 - 1.0"
    assert unparse(Neg(RealConst(2.0))) == "-(2.0)"
    assert unparse(ConjVar("z1")) == "conj(z1)"
    assert unparse(UnitI()) == "i"
    assert unparse(Pow(Add(Var("z1"), RealConst(1.0)), 2)) == "(z1 + 1.0)^2"
    assert unparse(Mul(Add(Var("z1"), Var("z2")), Var("z1"))) == "(z1 + z2) * z1"


ROUND_TRIP_PROBE = Point4(0.37 + 0.61j, -0.45 + 0.19j)


@settings(max_examples=300)
@given(expr=EXPRESSIONS)
def test_unparse_parse_round_trip(expr) -> None:
    """One parse of the printed form folds the tree to normal form; the
    folded tree reprints and reparses to itself and keeps the value."""
    folded = parse(unparse(expr))
    assert parse(unparse(folded)) == folded
    try:
        before = eval_qexpr(expr, ROUND_TRIP_PROBE)
        after = eval_qexpr(folded, ROUND_TRIP_PROBE)
    except (SingularPointError, OverflowError, ZeroDivisionError):
        assume(False)
        return
    assume(cmath.isfinite(before.z1) and cmath.isfinite(before.z2))
    assert cmath.isclose(after.z1, before.z1, rel_tol=1e-9, abs_tol=1e-9)
    assert cmath.isclose(after.z2, before.z2, rel_tol=1e-9, abs_tol=1e-9)


def test_parse_definitions_reads_named_functions() -> None:
    text = "# scratch functions\nf = z1*z2\n\ng = conj(z1)\n"
    defs = parse_definitions(text)
    assert list(defs) == ["f", "g"]
    assert defs["f"] == Mul(Var("z1"), Var("z2"))
    assert defs["g"] == ConjVar("z1")


def test_parse_definitions_errors() -> None:
    with pytest.raises(ParseError, match="line 1: 'z1' is a reserved word"):
        parse_definitions("z1 = z2")
    with pytest.raises(ParseError, match="line 1: 'j' is a reserved word"):
        parse_definitions("j = z1")
    with pytest.raises(ParseError, match=r"line 1: expected `name = <expression>`"):
        parse_definitions("f  z1")
    with pytest.raises(ParseError, match="line 2: duplicate definition of 'f'"):
        parse_definitions("f = z1\nf = z2")
    with pytest.raises(ParseError, match="line 1: unknown name 'g'"):
        parse_definitions("f = g + 1")
    with pytest.raises(ParseError, match=r"line 1: unexpected token '\*'"):
        parse_definitions("f = z1 +* 2")
