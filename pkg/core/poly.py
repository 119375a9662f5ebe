"""
Exact polynomial arithmetic.

Three value types are provided:
- IntPolynomial: dense univariate polynomial with integer coefficients
- PowerSeriesTrunc: rational power series truncated at a fixed order
- LaurentPoly2: sparse Laurent polynomial in v and z with integer coefficients

The values are immutable wrappers holding a canonical tuple form, so equality
and hashing are structural and they serve as memo keys. Arithmetic is done in
sympy polynomial rings: ZZ[x] for polynomials, QQ[x] with the ring_series
routines for truncated series, and ZZ[v, z] for Laurent polynomials after
shifting every exponent to be non-negative.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Tuple, Union

import sympy as sp
from sympy.polys.domains import QQ, ZZ
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, ring

from core.exceptions import SeriesOrderError


Number = Union[int, Fraction]

_INT_RING, _x = ring("x", ZZ)
_SERIES_RING, _t = ring("x", QQ)
_LAURENT_RING, _, _ = ring("v,z", ZZ)

X, V, Z = sp.symbols("x v z")


def _to_fraction(value: Any) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def _to_rational(value: Number) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _integer(value: Any, expr: Any) -> int:
    if not (isinstance(value, sp.Basic) and value.is_Integer) and not isinstance(value, int):
        raise ValueError(f"Expected integer coefficients and exponents in {expr}")
    return int(value)


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial; coeffs[k] is the coefficient of x^k."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        values = [int(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def constant(cls, value: int) -> "IntPolynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        if degree < 0:
            raise ValueError(f"Negative degree: {degree}")
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def one_minus_x_power(cls, exponent: int) -> "IntPolynomial":
        """Return (1 - x)^exponent for exponent >= 0."""
        if exponent < 0:
            raise ValueError(f"Negative exponent: {exponent}")
        return cls.from_element((_INT_RING.one - _x) ** exponent)

    @classmethod
    def from_element(cls, element: PolyElement) -> "IntPolynomial":
        """Read an element of ZZ[x]."""
        terms = {k: int(c) for (k,), c in element.iterterms()}
        if not terms:
            return cls()
        return cls(tuple(terms.get(k, 0) for k in range(max(terms) + 1)))

    def to_element(self) -> PolyElement:
        return _INT_RING.from_dict({(k,): c for k, c in enumerate(self.coeffs) if c})

    @classmethod
    def from_expr(cls, expr: Any) -> "IntPolynomial":
        """Parse a sympy expression that is a polynomial in x over the integers."""
        poly = sp.Poly(sp.sympify(expr), X)
        if poly.is_zero:
            return cls()
        return cls(tuple(_integer(c, expr) for c in reversed(poly.all_coeffs())))

    def to_expr(self) -> Any:
        return self.to_element().as_expr(X)

    @property
    def degree(self) -> int:
        """Degree of the polynomial, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def constant_term(self) -> int:
        return self.coefficient(0)

    def __call__(self, x: Number) -> Number:
        value = _to_fraction(self.to_element().set_ring(_SERIES_RING)(_to_rational(x)))
        return value.numerator if value.denominator == 1 else value

    def __add__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial.from_element(self.to_element() + other.to_element())

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial.from_element(self.to_element() - other.to_element())

    def __rsub__(self, other: int) -> "IntPolynomial":
        return IntPolynomial.constant(other) - self

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial.from_element(self.to_element().mul_ground(other))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial.from_element(self.to_element() * other.to_element())

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError(f"Negative exponent: {exponent}")
        return IntPolynomial.from_element(self.to_element() ** exponent)

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x^k."""
        if k < 0:
            raise ValueError(f"Negative shift: {k}")
        return IntPolynomial.from_element(self.to_element() * _x ** k)

    def to_text(self) -> str:
        """Render as '1x^0+3x^1+3x^2'; every power up to the degree is listed."""
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            term = f"{abs(c)}x^{k}"
            if k == 0:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f"-{term}" if c < 0 else f"+{term}")
        return "".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "IntPolynomial":
        return cls(tuple(int(c) for c in data.get("coeffs", [])))

    def __str__(self) -> str:
        return self.to_text()


def poly_add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def poly_mul(p: IntPolynomial, q: Union[IntPolynomial, int]) -> IntPolynomial:
    return p * q


def poly_scale(p: IntPolynomial, factor: int) -> IntPolynomial:
    return p * factor


@dataclass(frozen=True)
class PowerSeriesTrunc:
    """Power series with rational coefficients for x^0 .. x^order."""

    order: int
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"Negative truncation order: {self.order}")
        values = [Fraction(c) for c in self.coeffs[: self.order + 1]]
        values.extend([Fraction(0)] * (self.order + 1 - len(values)))
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_poly(cls, p: IntPolynomial, order: int) -> "PowerSeriesTrunc":
        return cls(order, tuple(p.coeffs))

    @classmethod
    def from_element(cls, order: int, element: PolyElement) -> "PowerSeriesTrunc":
        """Read an element of QQ[x], dropping powers above order."""
        terms = {k: _to_fraction(c) for (k,), c in element.iterterms() if k <= order}
        return cls(order, tuple(terms.get(k, Fraction(0)) for k in range(order + 1)))

    def to_element(self) -> PolyElement:
        return _SERIES_RING.from_dict(
            {(k,): _to_rational(c) for k, c in enumerate(self.coeffs) if c}
        )

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k <= self.order:
            return self.coeffs[k]
        raise IndexError(f"Coefficient x^{k} is beyond the truncation order {self.order}")

    def _check_order(self, other: "PowerSeriesTrunc") -> None:
        if self.order != other.order:
            raise SeriesOrderError(
                f"Cannot combine series truncated at order {self.order} and {other.order}"
            )

    def __add__(self, other: "PowerSeriesTrunc") -> "PowerSeriesTrunc":
        if not isinstance(other, PowerSeriesTrunc):
            return NotImplemented
        self._check_order(other)
        return PowerSeriesTrunc.from_element(self.order, self.to_element() + other.to_element())

    def __neg__(self) -> "PowerSeriesTrunc":
        return PowerSeriesTrunc(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PowerSeriesTrunc") -> "PowerSeriesTrunc":
        if not isinstance(other, PowerSeriesTrunc):
            return NotImplemented
        self._check_order(other)
        return PowerSeriesTrunc.from_element(self.order, self.to_element() - other.to_element())

    def __mul__(self, other: Union["PowerSeriesTrunc", int, Fraction]) -> "PowerSeriesTrunc":
        if isinstance(other, (int, Fraction)):
            return PowerSeriesTrunc.from_element(
                self.order, self.to_element().mul_ground(_to_rational(other))
            )
        if not isinstance(other, PowerSeriesTrunc):
            return NotImplemented
        self._check_order(other)
        product = rs_mul(self.to_element(), other.to_element(), _t, self.order + 1)
        return PowerSeriesTrunc.from_element(self.order, product)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self) -> Tuple[int, ...]:
        """Coefficients as integers; raises ValueError if any is not integral."""
        if not self.is_integral():
            raise ValueError(f"Series has non-integral coefficients: {self.to_text()}")
        return tuple(c.numerator for c in self.coeffs)

    def to_text(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            term = f"{_format_fraction(abs(c))}x^{k}"
            if k == 0:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f"-{term}" if c < 0 else f"+{term}")
        return "".join(parts) + f"+O(x^{self.order + 1})"

    def to_dict(self) -> Dict[str, Any]:
        coeffs: List[Any] = [
            c.numerator if c.denominator == 1 else _format_fraction(c) for c in self.coeffs
        ]
        return {"order": self.order, "coeffs": coeffs}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PowerSeriesTrunc":
        return cls(int(data["order"]), tuple(Fraction(c) for c in data.get("coeffs", [])))


def series_from_poly_over_power(p: IntPolynomial, n: int, order: int) -> PowerSeriesTrunc:
    """
    Expand p(x) / (1 - x)^n up to x^order.

    For n = 0 the series is p itself, truncated.

    Args:
        p: Numerator polynomial
        n: Exponent of the denominator, at least 0
        order: Truncation order

    Returns:
        Truncated series
    """
    if n < 0:
        raise ValueError(f"Denominator exponent must be non-negative, got {n}")
    numerator = p.to_element().set_ring(_SERIES_RING)
    if n == 0:
        return PowerSeriesTrunc.from_element(order, rs_trunc(numerator, _t, order + 1))
    inverse = rs_series_inversion((_SERIES_RING.one - _t) ** n, _t, order + 1)
    return PowerSeriesTrunc.from_element(order, rs_mul(numerator, inverse, _t, order + 1))


Exponent = Tuple[int, int]


@dataclass(frozen=True)
class LaurentPoly2:
    """
    Laurent polynomial in v and z.

    Stored as a sorted tuple of (v_exponent, z_exponent, coefficient) triples
    with no zero coefficients.
    """

    items: Tuple[Tuple[int, int, int], ...] = ()

    def __post_init__(self):
        merged: Dict[Exponent, int] = {}
        for v, z, c in self.items:
            key = (int(v), int(z))
            merged[key] = merged.get(key, 0) + int(c)
        normalized = tuple(sorted((v, z, c) for (v, z), c in merged.items() if c != 0))
        object.__setattr__(self, "items", normalized)

    @classmethod
    def from_terms(cls, terms: Mapping[Exponent, int]) -> "LaurentPoly2":
        return cls(tuple((v, z, c) for (v, z), c in terms.items()))

    @classmethod
    def monomial(cls, coefficient: int = 1, v: int = 0, z: int = 0) -> "LaurentPoly2":
        return cls(((v, z, coefficient),))

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls.monomial(1)

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    def lowest_exponents(self) -> Exponent:
        """Smallest v and z exponents, (0, 0) for the zero polynomial."""
        if not self.items:
            return 0, 0
        return min(v for v, _, _ in self.items), min(z for _, z, _ in self.items)

    def to_element(self, v0: int, z0: int) -> PolyElement:
        """v^-v0 z^-z0 times self, as an element of ZZ[v, z]; the shifts must clear every negative power."""
        return _LAURENT_RING.from_dict({(v - v0, z - z0): c for v, z, c in self.items})

    @classmethod
    def from_element(cls, element: PolyElement, v0: int = 0, z0: int = 0) -> "LaurentPoly2":
        """v^v0 z^z0 times an element of ZZ[v, z]."""
        return cls(tuple((v + v0, z + z0, int(c)) for (v, z), c in element.iterterms()))

    def to_expr(self) -> Any:
        """The polynomial as a sympy expression in the symbols v and z."""
        v0, z0 = self.lowest_exponents()
        return sp.expand(self.to_element(v0, z0).as_expr(V, Z) * V ** v0 * Z ** z0)

    @classmethod
    def from_expr(cls, expr: Any) -> "LaurentPoly2":
        """Parse a sympy expression that is a Laurent polynomial in v and z over the integers."""
        expanded = sp.expand(sp.sympify(expr))
        unknown = expanded.free_symbols - {V, Z}
        if unknown:
            raise ValueError(f"Unexpected symbols {sorted(map(str, unknown))} in {expr}")
        items = []
        for monomial, coefficient in expanded.as_coefficients_dict().items():
            powers = {V: 0, Z: 0}
            for base, exponent in monomial.as_powers_dict().items():
                if base in powers:
                    powers[base] = _integer(exponent, expr)
                elif base != 1:
                    raise ValueError(f"Not a Laurent monomial: {monomial}")
            items.append((powers[V], powers[Z], _integer(coefficient, expr)))
        return cls(tuple(items))

    @property
    def terms(self) -> Dict[Exponent, int]:
        return {(v, z): c for v, z, c in self.items}

    def is_zero(self) -> bool:
        return not self.items

    def coefficient(self, v: int, z: int) -> int:
        return self.terms.get((v, z), 0)

    def __add__(self, other: Union["LaurentPoly2", int]) -> "LaurentPoly2":
        if isinstance(other, int):
            other = LaurentPoly2.monomial(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        (v1, z1), (v2, z2) = self.lowest_exponents(), other.lowest_exponents()
        v0, z0 = min(v1, v2), min(z1, z2)
        total = self.to_element(v0, z0) + other.to_element(v0, z0)
        return LaurentPoly2.from_element(total, v0, z0)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2(tuple((v, z, -c) for v, z, c in self.items))

    def __sub__(self, other: Union["LaurentPoly2", int]) -> "LaurentPoly2":
        if isinstance(other, int):
            other = LaurentPoly2.monomial(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly2", int]) -> "LaurentPoly2":
        if isinstance(other, int):
            return LaurentPoly2(tuple((v, z, c * other) for v, z, c in self.items))
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        (v1, z1), (v2, z2) = self.lowest_exponents(), other.lowest_exponents()
        product = self.to_element(v1, z1) * other.to_element(v2, z2)
        return LaurentPoly2.from_element(product, v1 + v2, z1 + z2)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly2":
        if exponent < 0:
            raise ValueError(f"Negative exponent: {exponent}")
        v0, z0 = self.lowest_exponents()
        power = self.to_element(v0, z0) ** exponent
        return LaurentPoly2.from_element(power, v0 * exponent, z0 * exponent)

    def max_z_degree(self):
        """Largest z exponent, or None for the zero polynomial."""
        if not self.items:
            return None
        return max(z for _, z, _ in self.items)

    def min_z_degree(self):
        if not self.items:
            return None
        return min(z for _, z, _ in self.items)

    def coeff_of_z(self, zexp: int) -> "LaurentPoly2":
        """The v-polynomial multiplying z^zexp (returned with z exponent 0)."""
        return LaurentPoly2(tuple((v, 0, c) for v, z, c in self.items if z == zexp))

    def z_slices(self) -> Dict[int, "LaurentPoly2"]:
        slices: Dict[int, List[Tuple[int, int, int]]] = {}
        for v, z, c in self.items:
            slices.setdefault(z, []).append((v, 0, c))
        return {z: LaurentPoly2(tuple(items)) for z, items in slices.items()}

    def display_order(self) -> Iterator[Tuple[int, int, int]]:
        """Terms ordered by descending z exponent, then ascending v exponent."""
        return iter(sorted(self.items, key=lambda t: (-t[1], t[0])))

    def to_text(self) -> str:
        if not self.items:
            return "0"
        parts = []
        for v, z, c in self.display_order():
            sign = "-" if c < 0 else "+"
            factors = [str(abs(c))]
            if v != 0:
                factors.append(f"v^{v}")
            if z != 0:
                factors.append(f"z^{z}")
            parts.append(sign + "".join(factors))
        return "".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        return {"terms": [{"v": v, "z": z, "c": c} for v, z, c in self.display_order()]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LaurentPoly2":
        return cls(tuple((int(t["v"]), int(t["z"]), int(t["c"])) for t in data.get("terms", [])))

    def __str__(self) -> str:
        return self.to_text()


def laurent2_add(f: LaurentPoly2, g: LaurentPoly2) -> LaurentPoly2:
    return f + g


def laurent2_mul(f: LaurentPoly2, g: LaurentPoly2) -> LaurentPoly2:
    return f * g


def laurent2_coeff_of_z(f: LaurentPoly2, zexp: int) -> LaurentPoly2:
    return f.coeff_of_z(zexp)


def substitute_v_squared(p: IntPolynomial, shift: int = 0) -> LaurentPoly2:
    """Return v^shift * p(v^2) as a Laurent polynomial in v."""
    element = p.to_element()
    return LaurentPoly2(tuple((2 * k + shift, 0, int(c)) for (k,), c in element.iterterms()))
