"""
Tests for exact polynomial arithmetic:
- IntPolynomial normal form and arithmetic
- Truncated power series
- Laurent polynomials in v and z
"""

import os
import random
import sys
from fractions import Fraction

import sympy as sp

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.exceptions import SeriesOrderError
from core.poly import (
    IntPolynomial,
    LaurentPoly2,
    PowerSeriesTrunc,
    laurent2_add,
    laurent2_coeff_of_z,
    laurent2_mul,
    poly_add,
    poly_mul,
    poly_scale,
    series_from_poly_over_power,
    substitute_v_squared,
)

# Test markers
PASS = "[PASS]"
FAIL = "[FAIL]"
INFO = "[INFO]"


def print_test(message, success=None):
    """Print test result."""
    if success is None:
        print(f"{INFO} {message}")
    elif success:
        print(f"{PASS} {message}")
    else:
        print(f"{FAIL} {message}")


def test_int_polynomial_normal_form():
    """Trailing zeros are stripped and the zero polynomial has degree -1."""
    p = IntPolynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert IntPolynomial((0, 0)).is_zero()
    assert IntPolynomial().degree == -1
    assert IntPolynomial((1, 2)) == IntPolynomial((1, 2, 0))
    print_test("IntPolynomial normal form", True)


def test_int_polynomial_arithmetic():
    """Sums, products, powers and evaluation."""
    one_plus_x = IntPolynomial((1, 1))
    assert (one_plus_x ** 2).coeffs == (1, 2, 1)
    assert IntPolynomial.one_minus_x_power(3).coeffs == (1, -3, 3, -1)
    assert (one_plus_x - one_plus_x).is_zero()
    assert (one_plus_x * 3).coeffs == (3, 3)
    assert (1 - one_plus_x).coeffs == (0, -1)
    assert IntPolynomial((1, 3, 3))(2) == 19
    assert IntPolynomial((1, 1)).shift(2).coeffs == (0, 0, 1, 1)
    assert IntPolynomial.monomial(3).coefficient(3) == 1
    print_test("IntPolynomial arithmetic", True)


def test_int_polynomial_text():
    """Text form lists every power up to the degree."""
    assert IntPolynomial((1, 2)).to_text() == "1x^0+2x^1"
    assert IntPolynomial((0, 0, 0, 1)).to_text() == "0x^0+0x^1+0x^2+1x^3"
    assert IntPolynomial((1, -2, 1)).to_text() == "1x^0-2x^1+1x^2"
    assert IntPolynomial().to_text() == "0"
    assert IntPolynomial((1, 2)).to_dict() == {"coeffs": [1, 2]}
    assert IntPolynomial.from_dict({"coeffs": [0, 0, 0, 1]}) == IntPolynomial.monomial(3)
    print_test("IntPolynomial text and dict forms", True)


def test_series_expansion():
    """p / (1 - x)^n expansions and series products."""
    series = series_from_poly_over_power(IntPolynomial.constant(1), 2, 4)
    assert series.coeffs == tuple(Fraction(k) for k in (1, 2, 3, 4, 5))

    geometric = series * PowerSeriesTrunc.from_poly(IntPolynomial((1, -1)), 4)
    assert geometric.coeffs == tuple(Fraction(1) for _ in range(5))

    # K(2,3): (1 + 2x) / (1 - x)^4 starts 1, 6, 18
    k23 = series_from_poly_over_power(IntPolynomial((1, 2)), 4, 2)
    assert k23.integer_coeffs() == (1, 6, 18)

    # no denominator: the polynomial itself, truncated
    assert series_from_poly_over_power(IntPolynomial((1, 2, 3)), 0, 1).integer_coeffs() == (1, 2)
    assert series_from_poly_over_power(IntPolynomial.constant(1), 0, 3).integer_coeffs() == (1, 0, 0, 0)
    forest = IntPolynomial.one_minus_x_power(3)
    assert series_from_poly_over_power(forest, 3, 6).integer_coeffs() == (1, 0, 0, 0, 0, 0, 0)
    try:
        series_from_poly_over_power(IntPolynomial.constant(1), -1, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("negative exponent accepted")
    print_test("Power series expansion", True)


def test_series_order_mismatch():
    """Series truncated at different orders do not combine."""
    a = PowerSeriesTrunc(3, (1, 1))
    b = PowerSeriesTrunc(4, (1, 1))
    try:
        a + b
    except SeriesOrderError:
        print_test("Mixed-order series rejected", True)
        return
    raise AssertionError("mixed-order addition should fail")


def test_series_fractions():
    """Rational coefficients survive and are reported as such."""
    half = PowerSeriesTrunc(2, (Fraction(1, 2),))
    assert not half.is_integral()
    assert half.to_dict() == {"order": 2, "coeffs": ["1/2", 0, 0]}
    assert (half * 2).integer_coeffs() == (1, 0, 0)
    print_test("Rational series coefficients", True)


def test_laurent_arithmetic():
    """Products and z-slices of two-variable Laurent polynomials."""
    delta = LaurentPoly2.from_terms({(-1, -1): 1, (1, -1): -1})
    square = delta * delta
    assert square.terms == {(-2, -2): 1, (0, -2): -2, (2, -2): 1}
    assert (delta - delta).is_zero()
    assert LaurentPoly2.zero().max_z_degree() is None

    p = LaurentPoly2.from_terms({(2, 0): 2, (4, 0): -1, (2, 2): 1})
    assert p.max_z_degree() == 2
    assert p.min_z_degree() == 0
    assert laurent2_coeff_of_z(p, 2) == LaurentPoly2.monomial(1, 2, 0)
    assert p.coeff_of_z(0) == LaurentPoly2.from_terms({(2, 0): 2, (4, 0): -1})
    assert p.coeff_of_z(1).is_zero()
    assert set(p.z_slices()) == {0, 2}
    print_test("Laurent polynomial arithmetic", True)


def test_laurent_text():
    """Terms are listed by descending z, then ascending v."""
    p = LaurentPoly2.from_terms({(1, 1): 1, (1, -1): 1, (3, -1): -1})
    assert p.to_text() == "+1v^1z^1+1v^1z^-1-1v^3z^-1"
    assert LaurentPoly2.one().to_text() == "+1"
    assert LaurentPoly2.zero().to_text() == "0"
    assert p.to_dict()["terms"][0] == {"v": 1, "z": 1, "c": 1}
    assert LaurentPoly2.from_dict(p.to_dict()) == p
    print_test("Laurent polynomial text form", True)


def test_functional_forms():
    """Module-level operations agree with the operators."""
    p, q = IntPolynomial((1, 2)), IntPolynomial((0, 1, 1))
    assert poly_add(p, q).coeffs == (1, 3, 1)
    assert poly_mul(p, q).coeffs == (0, 1, 3, 2)
    assert poly_mul(p, -1) == poly_scale(p, -1)
    assert poly_scale(p, 0).is_zero()

    f = LaurentPoly2.from_terms({(1, 1): 1, (-1, 1): 2, (0, 0): -1})
    g = LaurentPoly2.from_terms({(2, 0): 1, (0, -1): 3})
    assert laurent2_add(f, g) == f + g
    product = laurent2_mul(f, g)
    assert product.coeff_of_z(0) == LaurentPoly2.from_terms({(2, 0): -1, (1, 0): 3, (-1, 0): 6})

    # each z-slice of a product is the convolution of the slices
    for z in range(-2, 3):
        expected = LaurentPoly2.zero()
        for a in range(-1, 2):
            expected = expected + f.coeff_of_z(a) * g.coeff_of_z(z - a)
        assert product.coeff_of_z(z) == expected, z
    print_test("Functional polynomial operations", True)


def test_substitute_v_squared():
    """v^e p(v^2)."""
    hub = substitute_v_squared(IntPolynomial((1, 3, 3)), 3)
    assert hub == LaurentPoly2.from_terms({(3, 0): 1, (5, 0): 3, (7, 0): 3})
    table = substitute_v_squared(IntPolynomial((0, 0, 0, 1)), -3)
    assert table == LaurentPoly2.monomial(1, 3, 0)
    assert substitute_v_squared(IntPolynomial(), 5).is_zero()
    print_test("Substitution x = v^2", True)


def test_sympy_expressions():
    """Values convert to and from sympy expressions."""
    x, v, z = sp.symbols("x v z")
    p = IntPolynomial((1, -2, 1))
    assert sp.expand(p.to_expr() - (1 - x) ** 2) == 0
    assert IntPolynomial.from_expr((1 + x) ** 3) == IntPolynomial((1, 3, 3, 1))
    assert IntPolynomial.from_expr(0).is_zero()
    assert IntPolynomial((1, 3, 3))(Fraction(1, 2)) == Fraction(13, 4)

    trefoil = LaurentPoly2.from_terms({(2, 0): 2, (4, 0): -1, (2, 2): 1})
    assert sp.expand(trefoil.to_expr() - (2 * v**2 - v**4 + v**2 * z**2)) == 0
    delta = LaurentPoly2.from_expr((1 / v - v) / z)
    assert delta == LaurentPoly2.from_terms({(-1, -1): 1, (1, -1): -1})
    assert LaurentPoly2.from_expr(sp.Integer(1)) == LaurentPoly2.one()
    assert LaurentPoly2.from_expr(delta.to_expr() ** 3) == delta ** 3
    for bad in (v / 2, v + x):
        try:
            LaurentPoly2.from_expr(bad)
        except ValueError:
            continue
        raise AssertionError(f"{bad} accepted")
    print_test("sympy expression bridge", True)


def test_ring_axioms():
    """Associativity, commutativity and distributivity on random values."""
    rng = random.Random(12)

    def random_poly():
        return IntPolynomial(tuple(rng.randint(-3, 3) for _ in range(rng.randint(0, 4))))

    def random_laurent():
        return LaurentPoly2(tuple(
            (rng.randint(-3, 3), rng.randint(-2, 2), rng.randint(-3, 3)) for _ in range(rng.randint(0, 4))
        ))

    for make in (random_poly, random_laurent):
        for _ in range(30):
            a, b, c = make(), make(), make()
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a + b) - b == a
    print_test("Ring axioms on random values", True)


TESTS = [
    test_int_polynomial_normal_form,
    test_int_polynomial_arithmetic,
    test_int_polynomial_text,
    test_series_expansion,
    test_series_order_mismatch,
    test_series_fractions,
    test_laurent_arithmetic,
    test_laurent_text,
    test_functional_forms,
    test_substitute_v_squared,
    test_sympy_expressions,
    test_ring_axioms,
]


def run_all_tests():
    """Run all tests and return a process exit code."""
    print("=" * 70)
    print("Polynomial Arithmetic Tests")
    print("=" * 70)

    results = []
    for test in TESTS:
        try:
            test()
            results.append(True)
        except Exception as e:
            print_test(f"{test.__name__}: {e!r}", False)
            results.append(False)

    print("=" * 70)
    passed = sum(results)
    if passed == len(results):
        print(f"All tests passed! ({passed}/{len(results)})")
        return 0
    print(f"Some tests failed: {passed}/{len(results)} passed")
    return 1


if __name__ == "__main__":
    sys.exit(run_all_tests())
