"""Exact scalars: arbitrary-precision rationals plus a float complex for root output."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# The scalar field of the whole library.  Structural computations are exact
# over Q; floats appear only in numeric root extraction and numeric identity
# checks (see ComplexApprox).
Rational = Fraction


def rat(x) -> Fraction:
    """Coerce ints, strings like '-3/2', and Fractions to a reduced Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


def rat_str(x: Fraction) -> str:
    """Canonical 'p/q' form (denominator omitted when 1, zero is '0')."""
    return str(Fraction(x))


@dataclass(frozen=True)
class ComplexApprox:
    """Double-precision complex value used for non-rational roots."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("ComplexApprox must be finite")

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexApprox":
        return cls(float(z.real), float(z.imag))

    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def close_to(self, other: "ComplexApprox", tol: float = 1e-8) -> bool:
        return abs(self.as_complex() - other.as_complex()) <= tol * max(
            1.0, abs(self.as_complex()), abs(other.as_complex())
        )
