"""Exact kernels: rationals, pi-graded scalars, polynomials and truncated series.

Rationals are plain :class:`fractions.Fraction` values, which are already
normalized on construction (lowest terms, positive denominator, zero is 0/1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

RationalLike = Union[int, Fraction]
Gaussian = Tuple[Fraction, Fraction]

__all__ = [
    "PiScaled",
    "RatPoly",
    "RatSeries",
    "format_rational",
    "parse_rational",
    "poly_eval",
    "poly_eval_gauss",
    "series_inverse",
    "series_mul",
]


def format_rational(q: RationalLike) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) into a Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


@dataclass(frozen=True)
class PiScaled:
    """The exact value ``coeff * pi**pi_pow``."""

    coeff: Fraction
    pi_pow: int = 0

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        if self.pi_pow < 0:
            raise ValueError("pi_pow must be non-negative")
        object.__setattr__(self, "coeff", coeff)
        if coeff == 0:
            object.__setattr__(self, "pi_pow", 0)

    @classmethod
    def zero(cls) -> "PiScaled":
        return cls(Fraction(0), 0)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def _grade_with(self, other: "PiScaled") -> int:
        if self.is_zero():
            return other.pi_pow
        if other.is_zero() or self.pi_pow == other.pi_pow:
            return self.pi_pow
        raise ValueError(
            f"cannot add pi^{self.pi_pow} and pi^{other.pi_pow} terms exactly"
        )

    def __add__(self, other):
        if not isinstance(other, PiScaled):
            return NotImplemented
        return PiScaled(self.coeff + other.coeff, self._grade_with(other))

    def __sub__(self, other):
        if not isinstance(other, PiScaled):
            return NotImplemented
        return PiScaled(self.coeff - other.coeff, self._grade_with(other))

    def __neg__(self):
        return PiScaled(-self.coeff, self.pi_pow)

    def __mul__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(self.coeff * other.coeff, self.pi_pow + other.pi_pow)
        if isinstance(other, (int, Fraction)):
            return PiScaled(self.coeff * other, self.pi_pow)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiScaled(self.coeff / other, self.pi_pow)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers leave the pi-graded ring")
        return PiScaled(self.coeff**n, self.pi_pow * n)

    def to_mpf(self, pi_value):
        """Numeric value given a high-precision ``pi_value``."""
        return self.coeff.numerator * pi_value**self.pi_pow / self.coeff.denominator

    def to_json(self) -> dict:
        return {"coeff": format_rational(self.coeff), "pi_pow": self.pi_pow}

    @classmethod
    def from_json(cls, obj: dict) -> "PiScaled":
        return cls(parse_rational(obj["coeff"]), int(obj["pi_pow"]))

    def __str__(self):
        if self.pi_pow == 0:
            return format_rational(self.coeff)
        return f"{format_rational(self.coeff)}*pi^{self.pi_pow}"


def _trim(coeffs: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RatPoly:
    """Dense polynomial; ``coeffs[k]`` multiplies ``z**k``."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(tuple(self.coeff(k) - other.coeff(k) for k in range(n)))

    def scale(self, c: RationalLike) -> "RatPoly":
        return RatPoly(tuple(c * a for a in self.coeffs))

    def scale_arg(self, c: RationalLike) -> "RatPoly":
        """The polynomial ``z -> p(c*z)``."""
        c = Fraction(c)
        return RatPoly(tuple(a * c**k for k, a in enumerate(self.coeffs)))

    def reversed(self, n: int | None = None) -> "RatPoly":
        """``z**n * p(1/z)``; ``n`` defaults to the degree."""
        n = self.degree if n is None else n
        if n < self.degree:
            raise ValueError("reversal length below degree")
        return RatPoly(tuple(self.coeff(n - k) for k in range(n + 1)))

    def __call__(self, z: RationalLike) -> Fraction:
        return poly_eval(self, z)


def poly_eval(p: RatPoly, z: RationalLike) -> Fraction:
    acc = Fraction(0)
    z = Fraction(z)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def poly_eval_gauss(p: RatPoly, z: Gaussian) -> Gaussian:
    """Exact Horner evaluation at the Gaussian rational ``z[0] + i*z[1]``."""
    a, b = Fraction(z[0]), Fraction(z[1])
    re, im = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        re, im = re * a - im * b + c, re * b + im * a
    return re, im


@dataclass(frozen=True)
class RatSeries:
    """Power series truncated after ``x**order``."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_terms(cls, terms: Sequence[RationalLike], order: int) -> "RatSeries":
        """Pad or cut ``terms`` to exactly ``order + 1`` coefficients."""
        out = list(terms[: order + 1])
        out += [Fraction(0)] * (order + 1 - len(out))
        return cls(tuple(out))

    @classmethod
    def one(cls, order: int) -> "RatSeries":
        return cls.from_terms([1], order)

    def __mul__(self, other: "RatSeries") -> "RatSeries":
        return series_mul(self, other)


def series_mul(a: RatSeries, b: RatSeries) -> RatSeries:
    if a.order != b.order:
        raise ValueError(f"truncation orders differ: {a.order} != {b.order}")
    n = a.order
    out = []
    for k in range(n + 1):
        acc = Fraction(0)
        for i in range(k + 1):
            ai, bk = a.coeffs[i], b.coeffs[k - i]
            if ai and bk:
                acc += ai * bk
        out.append(acc)
    return RatSeries(tuple(out))


def series_inverse(a: RatSeries) -> RatSeries:
    if a.coeffs[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no inverse")
    inv0 = 1 / a.coeffs[0]
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            ai = a.coeffs[i]
            if ai:
                acc += ai * out[k - i]
        out.append(-acc * inv0)
    return RatSeries(tuple(out))
