"""Exact arithmetic in the field Q(i, sqrt2).

An :class:`ExactScalar` is ``(a + b i) + (c + d i) sqrt2`` with Gaussian
rational parts.  Internally the four rational components share one positive
denominator, reduced after every operation, so equality and hashing are
plain integer comparisons.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "ExactScalar",
    "GaussianRational",
    "NotRealError",
    "ScalarParseError",
    "as_scalar",
    "parse_scalar",
    "render_rational",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
]

Rational = Union[int, Fraction]


class NotRealError(ValueError):
    """Raised when a real-only operation receives a value with imaginary part."""


class ScalarParseError(ValueError):
    def __init__(self, text: str, token: str, pos: int) -> None:
        super().__init__(f"cannot parse scalar {text!r}: unexpected token {token!r} at position {pos}")
        self.text = text
        self.token = token
        self.pos = pos


def render_rational(q: Rational) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """A Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return _render_gaussian(self.re, self.im)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def to_scalar(self) -> ExactScalar:
        return ExactScalar(self.re, self.im)


def _render_gaussian(re: Fraction, im: Fraction) -> str:
    if im == 0:
        return render_rational(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = render_rational(im) + "i"
    if re == 0:
        return imag
    sep = "" if imag.startswith("-") else "+"
    return f"{render_rational(re)}{sep}{imag}"


def _isqrt2_approx(bits: int) -> Fraction:
    """Rational approximation of sqrt2 with absolute error below 2**-bits."""
    return Fraction(math.isqrt(2 << (2 * bits)), 1 << bits)


class ExactScalar:
    """Element ``(re + im i) + (rad_re + rad_im i) sqrt2`` of Q(i, sqrt2).

    Values are immutable.  Construction accepts ints or Fractions for each
    of the four components.
    """

    __slots__ = ("_a", "_b", "_c", "_d", "_den")

    def __init__(self, re: Rational = 0, im: Rational = 0, rad_re: Rational = 0, rad_im: Rational = 0) -> None:
        parts = [Fraction(re), Fraction(im), Fraction(rad_re), Fraction(rad_im)]
        den = 1
        for p in parts:
            den = den * p.denominator // math.gcd(den, p.denominator)
        a, b, c, d = (p.numerator * (den // p.denominator) for p in parts)
        self._set(a, b, c, d, den)

    def _set(self, a: int, b: int, c: int, d: int, den: int) -> None:
        g = math.gcd(a, b, c, d, den)
        if g != 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
        self._a, self._b, self._c, self._d, self._den = a, b, c, d, den

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int) -> ExactScalar:
        # den > 0 is the caller's responsibility
        obj = object.__new__(cls)
        if not (a or b or c or d):
            obj._a = obj._b = obj._c = obj._d = 0
            obj._den = 1
            return obj
        obj._set(a, b, c, d, den)
        return obj

    # ---- components -------------------------------------------------

    @property
    def unit(self) -> GaussianRational:
        return GaussianRational(Fraction(self._a, self._den), Fraction(self._b, self._den))

    @property
    def radical(self) -> GaussianRational:
        return GaussianRational(Fraction(self._c, self._den), Fraction(self._d, self._den))

    @property
    def real_part(self) -> ExactScalar:
        return ExactScalar._raw(self._a, 0, self._c, 0, self._den)

    @property
    def imag_part(self) -> ExactScalar:
        return ExactScalar._raw(self._b, 0, self._d, 0, self._den)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        den = self._den
        return (Fraction(self._a, den), Fraction(self._b, den), Fraction(self._c, den), Fraction(self._d, den))

    def is_zero(self) -> bool:
        return not (self._a or self._b or self._c or self._d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self._b == 0 and self._d == 0

    def is_rational(self) -> bool:
        return self._b == 0 and self._c == 0 and self._d == 0

    def has_radical(self) -> bool:
        return bool(self._c or self._d)

    # ---- arithmetic -------------------------------------------------

    def __add__(self, other: object) -> ExactScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            den = self._den
            return ExactScalar._raw(self._a + o._a, self._b + o._b, self._c + o._c, self._d + o._d, den)
        p, q = self._den, o._den
        return ExactScalar._raw(
            self._a * q + o._a * p,
            self._b * q + o._b * p,
            self._c * q + o._c * p,
            self._d * q + o._d * p,
            p * q,
        )

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar._raw(-self._a, -self._b, -self._c, -self._d, self._den)

    def __pos__(self) -> ExactScalar:
        return self

    def __sub__(self, other: object) -> ExactScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> ExactScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> ExactScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, self._c, self._d
        e, f, g, h = o._a, o._b, o._c, o._d
        den = self._den * o._den
        if not (c or d or g or h):
            return ExactScalar._raw(a * e - b * f, a * f + b * e, 0, 0, den)
        return ExactScalar._raw(
            a * e - b * f + 2 * (c * g - d * h),
            a * f + b * e + 2 * (c * h + d * g),
            a * g - b * h + c * e - d * f,
            a * h + b * g + c * f + d * e,
            den,
        )

    __rmul__ = __mul__

    def inverse(self) -> ExactScalar:
        """Multiplicative inverse.

        The sqrt2 part is rationalized first (multiply by the sqrt2-conjugate),
        then the remaining Gaussian denominator by its complex conjugate.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        a, b, c, d, den = self._a, self._b, self._c, self._d, self._den
        # (U + R sqrt2)(U - R sqrt2) = U^2 - 2 R^2 =: G, a Gaussian integer
        gr = a * a - b * b - 2 * (c * c - d * d)
        gi = 2 * a * b - 4 * c * d
        norm = gr * gr + gi * gi
        # 1/x = den * (U - R sqrt2) * conj(G) / norm
        return ExactScalar._raw(
            den * (a * gr + b * gi),
            den * (b * gr - a * gi),
            den * (-c * gr - d * gi),
            den * (c * gi - d * gr),
            norm,
        )

    def __truediv__(self, other: object) -> ExactScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> ExactScalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> ExactScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> ExactScalar:
        """Complex conjugate; sqrt2 is real and stays fixed."""
        return ExactScalar._raw(self._a, -self._b, self._c, -self._d, self._den)

    # ---- comparison -------------------------------------------------

    def _key(self) -> tuple[int, int, int, int, int]:
        return (self._a, self._b, self._c, self._d, self._den)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._a, self._den))
        return hash(self._key())

    def sign(self) -> int:
        """Exact sign (-1, 0, 1) of a real element."""
        if not self.is_real():
            raise NotRealError(f"sign of non-real value {self}")
        a, c = self._a, self._c
        sa = (a > 0) - (a < 0)
        sc = (c > 0) - (c < 0)
        if sc == 0:
            return sa
        if sa == 0 or sa == sc:
            return sc
        # opposite signs: compare a^2 with 2 c^2
        if a * a > 2 * c * c:
            return sa
        return sc

    def __lt__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __gt__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    # ---- conversion -------------------------------------------------

    def _real_float(self, n: int, r: int) -> float:
        # value n + r*sqrt2 over self._den, correctly rounded up to the sqrt2 error
        den = self._den
        if r == 0:
            return n / den
        if n == 0 or (n > 0) == (r > 0):
            bits = 2 * max(abs(n), abs(r)).bit_length() + 64
            return float(Fraction(n) / den + Fraction(r) * _isqrt2_approx(bits) / den)
        # cancellation: n + r sqrt2 = (n^2 - 2 r^2) / (n - r sqrt2)
        bits = 2 * max(abs(n), abs(r)).bit_length() + 64
        s = _isqrt2_approx(bits)
        return float(Fraction(n * n - 2 * r * r) / ((n - r * s) * den))

    def to_complex(self) -> complex:
        """Nearest double-precision complex value.

        Raises OverflowError when a part exceeds the double range.
        """
        return complex(self._real_float(self._a, self._c), self._real_float(self._b, self._d))

    __complex__ = to_complex

    def __float__(self) -> float:
        if not self.is_real():
            raise NotRealError(f"float() of non-real value {self}")
        return self._real_float(self._a, self._c)

    # ---- text -------------------------------------------------------

    def __str__(self) -> str:
        den = self._den
        unit = _render_gaussian(Fraction(self._a, den), Fraction(self._b, den))
        if not (self._c or self._d):
            return unit
        radical = _render_gaussian(Fraction(self._c, den), Fraction(self._d, den))
        rad_text = f"({radical})√2"
        if not (self._a or self._b):
            return rad_text
        if self._a and self._b:
            unit = f"({unit})"
        return f"{unit}+{rad_text}"

    def __repr__(self) -> str:
        return f"ExactScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> ExactScalar:
        return parse_scalar(text)


def _coerce(x: object) -> ExactScalar | None:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, int):
        return ExactScalar._raw(x, 0, 0, 0, 1)
    if isinstance(x, Fraction):
        return ExactScalar._raw(x.numerator, 0, 0, 0, x.denominator)
    if isinstance(x, GaussianRational):
        return x.to_scalar()
    return None


def as_scalar(x: object) -> ExactScalar:
    """Coerce int, Fraction, GaussianRational, str or ExactScalar to ExactScalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot convert {type(x).__name__} to ExactScalar")
    return s


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
SQRT2 = ExactScalar(0, 0, 1)


# ---- parser ---------------------------------------------------------
#
#   expr   := [sign] term (sign term)*
#   term   := factor ('*'? factor)*
#   factor := RATIONAL | 'i' | '√2' | 'sqrt2' | '(' expr ')'
#
# A rational literal p/q binds tighter than juxtaposition, so "1/3i" is i/3.

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(√2|sqrt\(2\)|sqrt2)|(i)|([-+*()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = text[pos:].strip()[:1] or text[pos:pos + 1]
            raise ScalarParseError(text, bad, pos)
        if m.group(1):
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("sqrt2", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("i", "i", m.start(3)))
        else:
            tokens.append(("op", m.group(4), m.start(4)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def fail(self) -> ScalarParseError:
        tok = self.peek()
        if tok is None:
            return ScalarParseError(self.text, "<end>", len(self.text))
        return ScalarParseError(self.text, tok[1], tok[2])

    def expr(self) -> ExactScalar:
        total = ZERO
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.k += 1
        total = total + sign * self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.k += 1
                sign = -1 if tok[1] == "-" else 1
                total = total + sign * self.term()
            else:
                return total

    def term(self) -> ExactScalar:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok is None:
                return value
            if tok[0] == "op" and tok[1] == "*":
                self.k += 1
                value = value * self.factor()
            elif tok[0] in ("num", "i", "sqrt2") or tok[1] == "(":
                value = value * self.factor()
            else:
                return value

    def factor(self) -> ExactScalar:
        tok = self.peek()
        if tok is None:
            raise self.fail()
        kind, val, _ = tok
        if kind == "num":
            self.k += 1
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                raise ScalarParseError(self.text, val, tok[2])
            return ExactScalar(Fraction(int(num), int(den) if den else 1))
        if kind == "i":
            self.k += 1
            return I
        if kind == "sqrt2":
            self.k += 1
            return SQRT2
        if val == "(":
            self.k += 1
            inner = self.expr()
            close = self.peek()
            if close is None or close[1] != ")":
                raise self.fail()
            self.k += 1
            return inner
        raise self.fail()


def parse_scalar(text: str) -> ExactScalar:
    """Parse the canonical rendering (and mild variations) back to a scalar.

    >>> str(parse_scalar("(1+2i)+(3-i)√2"))
    '(1+2i)+(3-i)√2'
    """
    if not text.strip():
        raise ScalarParseError(text, "<empty>", 0)
    p = _Parser(text)
    value = p.expr()
    if p.peek() is not None:
        raise p.fail()
    return value
