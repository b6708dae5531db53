from fractions import Fraction

import pytest

from ineq import expr as E
from ineq.functions import Fn

x, k = E.var("x"), E.var("k")


def test_operators_build_trees():
    e = (2 + E.cos(x)) / 3
    assert e.op == "div"
    assert e.args[0] == E.Expr("add", (E.const(2), E.cos(x)))
    assert e.args[1] == E.const(3)


def test_structural_equality_and_hashing():
    assert E.sin(x) / x == E.sin(E.var("x")) / E.var("x")
    assert len({E.sin(x), E.sin(x), E.cos(x)}) == 2


def test_variables_and_constants():
    assert (E.sinh(k * x) / (k * x)).variables() == {"x", "k"}
    assert E.PI.is_constant() and (E.PI / 4 + 1).is_constant()
    assert not (x + 1).is_constant()


def test_sexpr():
    assert (E.sin(x) / x).to_sexpr() == "(/ (sin x) x)"
    assert (x ** 3).to_sexpr() == "(^ x 3)"
    assert E.sqrt(x).to_sexpr() == "(rpow x 1/2)"
    assert E.const(Fraction(-2, 3)).to_sexpr() == "-2/3"
    assert (E.PI / 2).to_sexpr() == "(/ pi 2)"


def test_infix():
    assert str((2 + E.cos(x)) / 3 - E.sin(x) / x) == "(2 + cos(x)) / 3 - sin(x) / x"
    assert str(E.sin(x) / x - (1 - x ** 2 / 6)) == "sin(x) / x - (1 - x^2 / 6)"


def test_powers():
    assert (x ** 2).op == "pow_int"
    assert (x ** Fraction(1, 4)).op == "pow_real"
    assert (x ** -1).op == "pow_real"
    assert E.rpow(x, "-2/3").arg == Fraction(-2, 3)


def test_apply_accepts_tags():
    assert E.apply("arctanh", x) == E.arctanh(x)
    assert E.arctanh(x).arg is Fn.ARCTANH


def test_arity_checks():
    with pytest.raises(ValueError):
        E.Expr("add", (x,))
    with pytest.raises(ValueError):
        E.Expr("frobnicate")
    with pytest.raises(ValueError):
        E.Expr("pow_int", (x,), -1)


def test_negation():
    assert str(-x) == "(-1) * x"
