"""Exact rationals and outward-rounded rational interval enclosures."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import gmpy2

DEFAULT_SCHEDULE = (64, 256, 1024)
TIGHT_TOLERANCE = Fraction(1, 2**40)


def precision_schedule(env: str = "MACLAURIN_PRECISION") -> tuple[int, ...]:
    """Default precision schedule, overridable by a comma-separated env var."""
    raw = os.environ.get(env)
    if not raw:
        return DEFAULT_SCHEDULE
    schedule = tuple(int(tok) for tok in raw.replace(" ", "").split(",") if tok)
    check_schedule(schedule)
    return schedule


def check_schedule(schedule) -> tuple[int, ...]:
    schedule = tuple(int(b) for b in schedule)
    if not schedule or any(b <= 0 for b in schedule):
        raise ValueError("precision schedule must be non-empty positive bit counts")
    if any(a >= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("precision schedule must be strictly increasing")
    return schedule


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def exact_root(x: Fraction, k: int) -> Fraction | None:
    """``x ** (1/k)`` when it is rational, else ``None``."""
    if x < 0:
        raise ValueError("root of a negative number")
    a, ea = gmpy2.iroot(gmpy2.mpz(x.numerator), k)
    if not ea:
        return None
    b, eb = gmpy2.iroot(gmpy2.mpz(x.denominator), k)
    if not eb:
        return None
    return Fraction(int(a), int(b))


@dataclass(frozen=True)
class CertifiedValue:
    """A real number known either exactly or through a closed enclosure ``[lo, hi]``.

    ``bits`` is ``None`` for exact values and otherwise records the working
    precision of the roots that produced the enclosure. Arithmetic is done on
    rational endpoints, so the only rounding happens where roots are taken.
    """

    lo: Fraction
    hi: Fraction
    bits: int | None = None

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")
        if self.bits is None and self.lo != self.hi:
            raise ValueError("exact values need lo == hi")

    @classmethod
    def exact(cls, value) -> "CertifiedValue":
        value = Fraction(value)
        return cls(value, value)

    @classmethod
    def root(cls, x, k: int, bits: int) -> "CertifiedValue":
        """Enclosure of the nonnegative ``k``-th root of rational ``x``; exact if rational."""
        x = Fraction(x)
        if k == 1:
            return cls.exact(x)
        r = exact_root(x, k)
        if r is not None:
            return cls.exact(r)
        shift = bits * k
        scaled_lo = (x.numerator << shift) // x.denominator
        scaled_hi = -((-x.numerator << shift) // x.denominator)
        lo_int, _ = gmpy2.iroot(gmpy2.mpz(scaled_lo), k)
        hi_int, is_exact = gmpy2.iroot(gmpy2.mpz(scaled_hi), k)
        lo = Fraction(int(lo_int), 1 << bits)
        hi = Fraction(int(hi_int) + (0 if is_exact else 1), 1 << bits)
        return cls(lo, hi, bits)

    @property
    def is_exact(self) -> bool:
        return self.bits is None

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("value is only known as an enclosure")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def _merge_bits(self, other: "CertifiedValue") -> int | None:
        if self.bits is None:
            return other.bits
        if other.bits is None:
            return self.bits
        return min(self.bits, other.bits)

    @staticmethod
    def _coerce(other) -> "CertifiedValue":
        if isinstance(other, CertifiedValue):
            return other
        if isinstance(other, (int, Rational)):
            return CertifiedValue.exact(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CertifiedValue(self.lo + other.lo, self.hi + other.hi, self._merge_bits(other))

    __radd__ = __add__

    def __neg__(self):
        return CertifiedValue(-self.hi, -self.lo, self.bits)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return CertifiedValue(min(products), max(products), self._merge_bits(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        inv = CertifiedValue(1 / other.hi, 1 / other.lo, other.bits)
        return self * inv

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if self.lo >= 0:
            return CertifiedValue(self.lo**k, self.hi**k, self.bits)
        result = CertifiedValue.exact(1)
        for _ in range(k):
            result = result * self
        return result

    def round_outward(self, bits: int) -> "CertifiedValue":
        """Shrink endpoint denominators to ``2**bits`` without losing containment."""
        if self.is_exact:
            return self
        return CertifiedValue(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits), self.bits)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def overlaps(self, other: "CertifiedValue") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def to_json(self) -> dict:
        if self.is_exact:
            return {"exact": format_fraction(self.lo)}
        return {"lo": format_fraction(self.lo), "hi": format_fraction(self.hi),
                "bits": self.bits, "approx": float(self.mid)}

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        if self.is_exact:
            return f"Exact({self.lo})"
        return f"Interval([{float(self.lo)!r}, {float(self.hi)!r}], bits={self.bits})"


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None
