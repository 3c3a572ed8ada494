"""Exact scalars: rationals and univariate polynomials in the Casimir symbol C."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def normalize(x: RationalLike) -> Fraction:
    """Lowest terms with a positive denominator."""
    q = to_rational(x)
    return Fraction(q.numerator, q.denominator)


def format_rational(q: Fraction) -> str:
    """``p/q``, or ``p`` when the denominator is one."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def half_integer(s: RationalLike) -> Fraction:
    """Validate a spin value: nonnegative with 2s integral."""
    s = to_rational(s)
    if s < 0 or (2 * s).denominator != 1:
        raise ValueError(f"spin must be a nonnegative half-integer, got {format_rational(s)}")
    return s


def casimir_value(s: RationalLike) -> Fraction:
    s = half_integer(s)
    return -s * (s + 1)


class Poly:
    """Univariate polynomial with rational coefficients, stored ascending.

    The coefficient tuple never has a trailing zero, so the zero polynomial
    is the empty tuple and equality is structural.
    """

    __slots__ = ("coeffs", "symbol")

    def __init__(self, coeffs: Iterable[RationalLike] = (), symbol: str = "x"):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.symbol = symbol

    @classmethod
    def constant(cls, c: RationalLike, symbol: str = "x") -> "Poly":
        return cls([c], symbol)

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1, symbol: str = "x") -> "Poly":
        return cls([0] * degree + [c], symbol)

    def _like(self, coeffs) -> "Poly":
        return type(self)(coeffs, self.symbol) if type(self) is Poly else type(self)(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self._like([to_rational(other)])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._like([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return self._like([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return self._like(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = to_rational(c)
        return self._like([a / c for a in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == self._coerce(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading()
        while len(rem) >= len(other.coeffs) and rem:
            shift = len(rem) - len(other.coeffs)
            c = rem[-1] / lead
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] -= c * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return self._like(q), self._like(rem)

    def monic(self) -> "Poly":
        return self / self.leading() if self.coeffs else self

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = self.symbol
            else:
                mono = f"{self.symbol}^{i}"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class CasimirPoly(Poly):
    """A polynomial in the formal Casimir symbol ``C``."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        super().__init__(coeffs, "C")

    @classmethod
    def constant(cls, c: RationalLike) -> "CasimirPoly":
        return cls([c])

    @classmethod
    def C(cls) -> "CasimirPoly":
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str) -> "CasimirPoly":
        """Inverse of ``str``: accepts ``a0 + a1*C + a2*C^2`` style sums."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        terms = re.findall(r"[+-]?[^+-]+", s)
        out = cls()
        for t in terms:
            sign = -1 if t.startswith("-") else 1
            t = t.lstrip("+-")
            if "C" in t:
                coef, _, power = t.partition("C")
                coef = coef.rstrip("*")
                c = parse_rational(coef) if coef else Fraction(1)
                deg = int(power[1:]) if power.startswith("^") else 1
                if power and not power.startswith("^"):
                    raise ValueError(f"bad Casimir polynomial term {t!r}")
            else:
                c, deg = parse_rational(t), 0
            out = out + cls.monomial(deg, sign * c)
        return out

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "CasimirPoly":
        return cls([0] * degree + [c])


def substitute_casimir(p: CasimirPoly, s: RationalLike) -> Fraction:
    """Evaluate ``p`` at the spin-s Casimir value C = -s(s+1)."""
    return Fraction(p(casimir_value(s)))
