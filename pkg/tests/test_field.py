import random

import pytest

from bethelab.field import (
    RAT,
    DivisionByZero,
    HalfPowerPoly,
    InconsistentSamples,
    LaurentPoly,
    Scalar,
    SessionMismatch,
    SingularSystem,
    ZeroInverse,
    bracket,
    brk,
    is_rational_square,
    laurent_interpolate,
    rat_str,
    solve_exact,
    validate_session_constant,
)

D = RAT(45, 8)  # [q][q^2] at q = 2


def sc(a=0, b=0, c=0, e=0, d=D):
    return Scalar(a, b, c, e, d=d)


def random_scalar(rng, d=D):
    def r():
        return RAT(rng.randint(-9, 9), rng.randint(1, 9))

    return Scalar(r(), r(), r(), r(), d=d)


# ---------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------

def test_bracket_fixed_points():
    assert bracket(sc(1)) == sc(0)
    assert bracket(sc(-1)) == sc(0)


def test_bracket_two():
    assert bracket(sc(2)) == sc(RAT(3, 2))
    assert brk(RAT(2)) == RAT(3, 2)


def test_bracket_zero_raises():
    with pytest.raises(ZeroInverse):
        bracket(sc(0))
    with pytest.raises(ZeroInverse):
        brk(0)


# ---------------------------------------------------------------------
# Scalar arithmetic
# ---------------------------------------------------------------------

def test_s_squared_is_d():
    s = Scalar.s_unit(D)
    assert s * s == sc(D)


def test_i_squared_is_minus_one():
    i = Scalar.i_unit(D)
    assert i * i == sc(-1)


def test_one_plus_s_times_one_minus_s():
    one = sc(1)
    s = Scalar.s_unit(D)
    assert (one + s) * (one - s) == sc(1 - D)
    assert (one + s) * (one - s) == sc(RAT(-37, 8))


def test_session_mismatch_raises():
    x = sc(1, 1)
    y = Scalar(1, 1, d=RAT(7))
    with pytest.raises(SessionMismatch):
        _ = x + y
    with pytest.raises(SessionMismatch):
        _ = x * y


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        _ = sc(1) / sc(0)
    with pytest.raises(DivisionByZero):
        sc(0).inv()


def test_field_axioms_random():
    rng = random.Random(20240405)
    for _ in range(60):
        x = random_scalar(rng)
        y = random_scalar(rng)
        z = random_scalar(rng)
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if not x.is_zero():
            assert x * x.inv() == sc(1)
            assert (y / x) * x == y


def test_inverse_mixed_components():
    x = sc(RAT(1, 2), RAT(2, 3), RAT(-3, 5), RAT(1, 7))
    assert x * x.inv() == sc(1)


def test_pow():
    x = sc(2, 1)
    assert x ** 0 == sc(1)
    assert x ** 3 == x * x * x
    assert x ** -2 == (x * x).inv()


def test_rational_roundtrip_and_reality():
    x = sc(RAT(5, 3))
    assert x.is_rational() and x.to_rat() == RAT(5, 3)
    y = sc(1, 2)
    assert y.is_real() and not y.is_rational()
    with pytest.raises(ValueError):
        y.to_rat()


def test_json_roundtrip():
    x = sc(RAT(1, 2), RAT(-2, 3), RAT(4, 5), RAT(0))
    obj = x.to_json_dict()
    assert obj["a"] == "1/2" and obj["d"] == "45/8"
    assert Scalar.from_json_dict(obj) == x
    assert rat_str(RAT(-3, 4)) == "-3/4"


def test_session_constant_validation():
    validate_session_constant(D)
    with pytest.raises(ValueError):
        validate_session_constant(RAT(9, 4))    # = (3/2)^2
    with pytest.raises(ValueError):
        validate_session_constant(RAT(-16, 25))  # -d a square
    with pytest.raises(ValueError):
        validate_session_constant(0)
    assert is_rational_square(RAT(49, 64))
    assert not is_rational_square(RAT(45, 8))


# ---------------------------------------------------------------------
# HalfPowerPoly
# ---------------------------------------------------------------------

def test_halfpoly_y_times_y_is_x():
    y = HalfPowerPoly.y_power(1)
    assert y * y == HalfPowerPoly((0, 0, 1))
    assert (y * y).is_even_support()


def test_halfpoly_identity():
    one = HalfPowerPoly.const(1)
    p = HalfPowerPoly((1, RAT(2, 3), 0, 5))
    assert one * p == p


def test_halfpoly_difference_of_squares():
    y = HalfPowerPoly.y_power(1)
    one = HalfPowerPoly.const(1)
    assert (y + one) * (y - one) == HalfPowerPoly((-1, 0, 1))  # x - 1


def test_halfpoly_even_products_stay_even():
    rng = random.Random(7)
    for _ in range(30):
        p = HalfPowerPoly.x_poly([rng.randint(-4, 4) for _ in range(4)])
        q = HalfPowerPoly.x_poly([rng.randint(-4, 4) for _ in range(3)])
        assert (p * q).is_even_support()


def test_halfpoly_shift_and_eval():
    p = HalfPowerPoly((0, 0, 0, 2, 0, 1))  # 2 y^3 + y^5 = y^3 (2 + x)
    q = p.shift_down(3)
    assert q == HalfPowerPoly((2, 0, 1))
    assert q.eval_x(RAT(5, 2)) == RAT(9, 2)
    with pytest.raises(ValueError):
        p.shift_down(4)
    assert p.is_odd_support()


def test_halfpoly_x_coeffs_and_json():
    p = HalfPowerPoly.x_poly([6, 0, 1])  # 6 + x^2
    assert p.x_coeffs() == (6, 0, 1)
    assert p.to_json_dict() == {"var": "x", "coeffs": ["6", "0", "1"]}


def test_halfpoly_integer_detection():
    assert HalfPowerPoly((1, 2, 3)).has_integer_coeffs()
    assert not HalfPowerPoly((1, RAT(1, 2))).has_integer_coeffs()


# ---------------------------------------------------------------------
# LaurentPoly and interpolation
# ---------------------------------------------------------------------

def test_laurent_normalization_and_width():
    p = LaurentPoly(-2, [sc(0), sc(1), sc(0), sc(3), sc(0)])
    assert p.low == -1 and p.top() == 1
    assert p.degree_width() == 2
    z = sc(RAT(5, 3))
    assert p.evaluate(z) == z.inv() + sc(3) * z


def test_interpolate_recovers_bracket():
    samples = [(sc(1), sc(0)), (sc(2), sc(RAT(3, 2))),
               (sc(RAT(1, 2)), sc(RAT(-3, 2)))]
    p = laurent_interpolate(samples, low_degree=-1, width=2)
    assert p.low == -1 and p.top() == 1
    assert p.coefficient(-1) == sc(-1)
    assert p.coefficient(0) == sc(0)
    assert p.coefficient(1) == sc(1)


def test_interpolate_zero_and_constant():
    pts = [sc(1), sc(2), sc(3)]
    zero = laurent_interpolate([(p, sc(0)) for p in pts], -1, 2)
    assert zero.is_zero() and zero.degree_width() == 0
    const = laurent_interpolate([(p, sc(RAT(7, 3))) for p in pts], -1, 2)
    assert const.low == 0 and const.degree_width() == 0


def test_interpolate_roundtrip_random():
    rng = random.Random(99)
    for _ in range(10):
        low = rng.randint(-3, 0)
        width = rng.randint(0, 4)
        coeffs = [sc(RAT(rng.randint(-5, 5), rng.randint(1, 5)))
                  for _ in range(width + 1)]
        p = LaurentPoly(low, coeffs)
        pts = []
        k = 1
        while len(pts) < width + 3:  # two surplus consistency samples
            pts.append(sc(RAT(k, k + 1)))
            k += 1
        samples = [(z, p.evaluate(z)) for z in pts]
        assert laurent_interpolate(samples, low, width) == p


def test_interpolate_repeated_points_raise():
    samples = [(sc(1), sc(0)), (sc(1), sc(0)), (sc(2), sc(1))]
    with pytest.raises(SingularSystem):
        laurent_interpolate(samples, -1, 2)


def test_interpolate_surplus_mismatch_raises():
    # z - 1/z sampled, but declared support cannot carry it; the surplus
    # sample exposes the wrong assumption
    samples = [(sc(1), sc(0)), (sc(2), sc(RAT(3, 2))),
               (sc(3), sc(RAT(8, 3))), (sc(4), sc(RAT(15, 4)))]
    with pytest.raises(InconsistentSamples):
        laurent_interpolate(samples, 0, 2)


def test_solve_exact_singular():
    with pytest.raises(SingularSystem):
        solve_exact([[sc(1), sc(2)], [sc(2), sc(4)]], [[sc(1), sc(1)]])
