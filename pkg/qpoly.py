"""Exact polynomials in one variable q with integer coefficients."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple, Union

import sympy

from dyckq_engine import InvalidInput, InvariantViolation

SYMBOL = sympy.Symbol("q")


def _strip(coefficients: Iterable[int]) -> Tuple[int, ...]:
    coefficients = [int(c) for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


@dataclass(frozen=True)
class QPoly:
    """Dense polynomial, ``coeffs[e]`` is the coefficient of ``q^e``.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls((c,))

    @classmethod
    def term(cls, c: int, e: int) -> "QPoly":
        if e < 0:
            raise InvalidInput("No negative exponents")
        return cls((0,) * e + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, e: int) -> int:
        if e < 0 or e >= len(self.coeffs):
            return 0
        return self.coeffs[e]

    def evaluate(self, x: int = 1) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def low_degree(self) -> int:
        for e, c in enumerate(self.coeffs):
            if c:
                return e
        return -1

    def reverse(self, degree: int | None = None) -> "QPoly":
        """Return ``q^degree * p(1/q)``; ``degree`` defaults to ``deg p``."""

        if self.is_zero():
            return self
        degree = self.degree() if degree is None else degree
        if degree < self.degree():
            raise InvalidInput(f"cannot reverse degree {self.degree()} polynomial at degree {degree}")
        padded = list(self.coeffs) + [0] * (degree - self.degree())
        return QPoly(tuple(reversed(padded)))

    def shift(self, k: int) -> "QPoly":
        """Multiply by ``q^k``; negative ``k`` requires divisibility."""

        if k >= 0:
            return QPoly((0,) * k + self.coeffs)
        if self.is_zero():
            return self
        if self.low_degree() < -k:
            raise InvariantViolation(f"{self} is not divisible by q^{-k}")
        return QPoly(self.coeffs[-k:])

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "QPoly | int") -> "QPoly":
        other = _coerce(other)
        length = max(len(self.coeffs), len(other.coeffs))
        return QPoly(tuple(self[i] + other[i] for i in range(length)))

    __radd__ = __add__

    def __sub__(self, other: "QPoly | int") -> "QPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "QPoly":
        return _coerce(other) - self

    def __mul__(self, other: "QPoly | int") -> "QPoly":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for e1, c1 in enumerate(self.coeffs):
            if c1 == 0:
                continue
            for e2, c2 in enumerate(other.coeffs):
                product[e1 + e2] += c1 * c2
        return QPoly(tuple(product))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "QPoly") -> Tuple["QPoly", "QPoly"]:
        """Integer long division; the quotient's coefficients must stay integral."""

        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        od = other.degree()
        quotient = [0] * max(self.degree() - od + 1, 0)
        remainder = list(self.coeffs)
        for shift in range(len(quotient) - 1, -1, -1):
            top = remainder[shift + od]
            if top == 0:
                continue
            if top % lead:
                raise InvariantViolation(f"non-integral quotient dividing {self} by {other}")
            factor = top // lead
            quotient[shift] = factor
            for e, c in enumerate(other.coeffs):
                remainder[shift + e] -= factor * c
        return QPoly(tuple(quotient)), QPoly(tuple(remainder))

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        q, _ = divmod(self, other)
        return q

    def __mod__(self, other: "QPoly") -> "QPoly":
        _, r = divmod(self, other)
        return r

    def exact_div(self, other: "QPoly") -> "QPoly":
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise InvariantViolation(f"{self} is not divisible by {other} (remainder {remainder})")
        return quotient

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------
    def render(self, star: bool = True) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                power = "q" if e == 1 else f"q^{e}"
                if magnitude == 1:
                    body = power
                else:
                    body = f"{magnitude}*{power}" if star else f"{magnitude}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.render(star=True)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def to_json(self) -> list:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: Union[str, Sequence[int]]) -> "QPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise InvalidInput("qpoly JSON must be an array of integers")
        return cls(tuple(data))

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], SYMBOL, domain="ZZ")

    @classmethod
    def from_sympy(cls, value) -> "QPoly":
        """Accept a sympy Poly or an expression that expands to a polynomial in q."""

        if isinstance(value, sympy.Poly):
            poly = value
        else:
            try:
                poly = sympy.Poly(sympy.expand(value), SYMBOL)
            except sympy.PolynomialError as exc:
                raise InvalidInput(f"{value} is not a polynomial in q") from exc
        if not poly.is_zero and (poly.gens != (SYMBOL,) or not poly.domain.is_ZZ):
            raise InvalidInput(f"{value} is not an integer polynomial in q")
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))


def _coerce(value: "QPoly | int") -> QPoly:
    if isinstance(value, QPoly):
        return value
    return QPoly.const(int(value))


ZERO = QPoly()
ONE = QPoly((1,))
Q = QPoly((0, 1))

_TERM = re.compile(r"^(?:(\d+)\*?)?(q(?:\^(\d+))?)?$")


def parse_qpoly(text: str) -> QPoly:
    """Parse "1 + 2*q + q^2" (``*`` optional, ``-`` allowed) back to a QPoly."""

    source = text.replace(" ", "")
    if not source:
        raise InvalidInput("empty polynomial")
    if source[0] not in "+-":
        source = "+" + source
    total = ZERO
    for sign, body in re.findall(r"([+-])([^+-]+)", source):
        match = _TERM.match(body)
        if not match or (match.group(1) is None and match.group(2) is None):
            raise InvalidInput(f"cannot parse term {body!r}", offender=body)
        coefficient = int(match.group(1)) if match.group(1) is not None else 1
        exponent = 0
        if match.group(2):
            exponent = int(match.group(3)) if match.group(3) else 1
        term = QPoly.term(coefficient, exponent)
        total = total + term if sign == "+" else total - term
    if "".join(s + b for s, b in re.findall(r"([+-])([^+-]+)", source)) != source:
        raise InvalidInput(f"cannot parse polynomial {text!r}")
    return total


# ----------------------------------------------------------------------------
# q-integers and friends
# ----------------------------------------------------------------------------


def q_int(n: int) -> QPoly:
    """``[n] = 1 + q + ... + q^(n-1)``; ``[0]`` is rejected."""

    if n < 1:
        raise InvalidInput(f"q_int needs n >= 1, got {n}")
    return QPoly((1,) * n)


def add(a: QPoly, b: QPoly) -> QPoly:
    return a + b


def mul(a: QPoly, b: QPoly) -> QPoly:
    return a * b


def product(factors: Iterable[QPoly]) -> QPoly:
    return reduce(mul, factors, ONE)


def q_factorial(n: int) -> QPoly:
    if n < 0:
        raise InvalidInput(f"q_factorial needs n >= 0, got {n}")
    return product(q_int(i) for i in range(1, n + 1))


def q_binomial(p: int, r: int) -> QPoly:
    """Gaussian binomial ``[p+r]! / ([p]! [r]!)`` by exact division."""

    if p < 0 or r < 0:
        raise InvalidInput("q_binomial needs nonnegative arguments")
    return q_factorial(p + r).exact_div(q_factorial(p) * q_factorial(r))
