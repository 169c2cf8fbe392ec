from fractions import Fraction

import pytest

from hkcover.poly import Poly, shifted_nonnegative

x, y = Poly.var("x"), Poly.var("y")


def test_ring_operations():
    p = (x + 1) * (x - 1)
    assert p == x**2 - 1
    assert (p - x * x + 1).is_zero()
    assert (2 * x + y) / 2 == x + Fraction(1, 2) * y
    assert p.variables == {"x"}


def test_substitution_and_evaluation():
    p = x * y + 3
    assert p.subs({"x": y + 1}) == y * y + y + 3
    assert p.evaluate({"x": 2, "y": Fraction(1, 2)}) == 4
    with pytest.raises(ValueError):
        p.evaluate({"x": 1})


def test_str_is_deterministic():
    assert str(3 * x * y - x + 2) == "3*x*y - x + 2"
    assert str(Poly()) == "0"
    assert str(-x) == "-x"


@pytest.mark.parametrize(
    "poly, lower, strict, expected",
    [
        (x * y, {"x": 1, "y": 5}, True, True),
        (x - 3, {"x": 2}, False, False),
        (x - 2, {"x": 2}, False, True),
        (x - 2, {"x": 2}, True, False),
        (x * x - 3 * x + 3, {"x": 2}, True, True),
    ],
)
def test_shifted_sign_check(poly, lower, strict, expected):
    ok, _ = shifted_nonnegative(poly, lower, strict)
    assert ok is expected


def test_shifted_sign_check_needs_all_bounds():
    with pytest.raises(ValueError, match="no lower bound"):
        shifted_nonnegative(x + y, {"x": 0}, strict=False)
