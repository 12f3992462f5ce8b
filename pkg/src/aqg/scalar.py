"""Two-tier scalars: exact Gaussian rationals and complex doubles.

Exact values are :class:`Gauss` instances (real and imaginary part stored as
``gmpy2.mpq``).  Float values are plain Python ``complex``.  Mixing the two
promotes to ``complex``; there is no way back.
"""
from __future__ import annotations

import cmath
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

DEFAULT_TOLERANCE = 1e-9


def default_tolerance() -> float:
    env = os.environ.get("AQG_DEFAULT_TOLERANCE")
    return float(env) if env else DEFAULT_TOLERANCE


class SpectrumViolation(ValueError):
    """A value expected to be a strictly positive eigenvalue is not."""


_MPQ = type(mpq(0))


def rat(x) -> mpq:
    """Coerce ints, Fractions, mpq and "p/q" strings to mpq."""
    if type(x) is _MPQ:
        return x
    if isinstance(x, (int, Rational)):
        return mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


class Gauss:
    """Exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rat(re)
        self.im = rat(im)

    @classmethod
    def _new(cls, re: mpq, im: mpq) -> "Gauss":
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if type(other) is Gauss:
            return Gauss._new(self.re + other.re, self.im + other.im)
        if isinstance(other, int) or type(other) is _MPQ:
            return Gauss._new(self.re + other, self.im)
        if isinstance(other, (complex, float)):
            return complex(self) + other
        if isinstance(other, Fraction):
            return self + rat(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Gauss._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if type(other) is Gauss:
            return Gauss._new(self.re - other.re, self.im - other.im)
        if isinstance(other, int) or type(other) is _MPQ:
            return Gauss._new(self.re - other, self.im)
        if isinstance(other, (complex, float)):
            return complex(self) - other
        if isinstance(other, Fraction):
            return self - rat(other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is Gauss:
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return Gauss._new(a * c, b)
            return Gauss._new(a * c - b * d, a * d + b * c)
        if isinstance(other, int) or type(other) is _MPQ:
            return Gauss._new(self.re * other, self.im * other)
        if isinstance(other, (complex, float)):
            return complex(self) * other
        if isinstance(other, Fraction):
            return self * rat(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) / other
        if not isinstance(other, Gauss):
            other = Gauss(other)
        if not other:
            raise ZeroDivisionError("division by exact zero")
        c, d = other.re, other.im
        if not d:
            return Gauss._new(self.re / c, self.im / c)
        n = c * c + d * d
        return Gauss._new((self.re * c + self.im * d) / n, (self.im * c - self.re * d) / n)

    def __rtruediv__(self, other):
        if isinstance(other, (complex, float)):
            return other / complex(self)
        return Gauss(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "Gauss":
        return Gauss._new(self.re, -self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def abs2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # -- comparison / conversion -------------------------------------------
    def __eq__(self, other):
        if type(other) is Gauss:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other) is _MPQ:
            return not self.im and self.re == other
        if isinstance(other, (complex, float)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gauss({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Gauss(0)
ONE = Gauss(1)
I = Gauss(0, 1)


def exact(x) -> Gauss:
    """Coerce an exact-looking value to :class:`Gauss`."""
    if type(x) is Gauss:
        return x
    if isinstance(x, (complex, float)):
        raise TypeError("Float -> Exact promotion is forbidden")
    return Gauss(x)


def is_exact(x) -> bool:
    return type(x) is Gauss


def conj(x):
    if type(x) is Gauss:
        return x.conjugate()
    return x.conjugate()


def is_zero(x, tol: float | None = None) -> bool:
    """Exact test for Gauss, tolerance test (default 0) for floats."""
    if type(x) is Gauss:
        return not x
    if tol is None:
        return x == 0
    return abs(x) <= tol


def magnitude(x) -> float:
    return abs(complex(x))


def promote(x) -> complex:
    return complex(x)


# -- text syntax ---------------------------------------------------------------

_EXACT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_TERM_RE = re.compile(r"([+-]?[^+-]+)")


def format_scalar(x) -> str:
    """Render a scalar in the "p/q+r/s*i" syntax (floats use repr)."""
    if type(x) is Gauss:
        re_s = _fmt_rat(x.re)
        if not x.im:
            return re_s
        im = x.im
        im_s = "i" if im == 1 else "-i" if im == -1 else f"{_fmt_rat(im)}*i"
        if not x.re:
            return im_s
        return f"{re_s}{im_s}" if im_s.startswith("-") else f"{re_s}+{im_s}"
    z = complex(x)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}*i"


def _fmt_rat(r: mpq) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def parse_scalar(text: str):
    """Parse "p/q", "p/q+r/s*i", "i", "-2*i" (exact) or decimal literals (float)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    is_float = any(ch in s for ch in ".eEn")  # nan/inf count as float
    # split into signed terms, keeping exponents like 1e-5 intact
    terms = []
    buf = ""
    for k, ch in enumerate(s):
        if ch in "+-" and buf and s[k - 1] not in "eE":
            terms.append(buf)
            buf = ch
        else:
            buf += ch
    terms.append(buf)
    re_part: object = 0.0 if is_float else mpq(0)
    im_part: object = 0.0 if is_float else mpq(0)
    for t in terms:
        if t.endswith("i"):
            body = t[:-1]
            if body.endswith("*"):
                body = body[:-1]
            if body in ("", "+"):
                body = "1"
            elif body == "-":
                body = "-1"
            im_part += float(body) if is_float else _parse_rat(body)
        else:
            re_part += float(t) if is_float else _parse_rat(t)
    if is_float:
        return complex(re_part, im_part)
    return Gauss._new(re_part, im_part)


def _parse_rat(t: str) -> mpq:
    if not _EXACT_RE.match(t):
        raise ValueError(f"malformed exact scalar term: {t!r}")
    return mpq(t.lstrip("+"))


# -- positive eigenvalues and their powers -------------------------------------


@dataclass(frozen=True)
class PositiveEigenvalue:
    value: object  # Gauss or complex
    certified_positive: bool

    @classmethod
    def certify(cls, value, tol: float | None = None) -> "PositiveEigenvalue":
        tol = default_tolerance() if tol is None else tol
        if type(value) is Gauss:
            if value.im or value.re <= 0:
                raise SpectrumViolation(f"spectrum violation: eigenvalue {value} is not > 0")
            return cls(value, True)
        z = complex(value)
        if z.real <= tol or abs(z.imag) > tol:
            raise SpectrumViolation(f"spectrum violation: eigenvalue {z!r} is not > 0")
        return cls(z, True)

    def log(self) -> float:
        if type(self.value) is Gauss:
            r = self.value.re
            # exact log via numerator/denominator avoids float underflow
            return math.log(int(r.numerator)) - math.log(int(r.denominator))
        return math.log(complex(self.value).real)

    def __str__(self):
        return format_scalar(self.value)


def _check(lam: PositiveEigenvalue) -> None:
    if not lam.certified_positive:
        raise SpectrumViolation(f"spectrum violation: {lam.value} not certified positive")


def scalar_pow_it(lam: PositiveEigenvalue, t: float):
    """lambda^{it}; exactly 1 at t == 0."""
    _check(lam)
    if t == 0 or (type(lam.value) is Gauss and lam.value == 1):
        return ONE
    return cmath.exp(1j * t * lam.log())


def exact_sqrt(r) -> mpq | None:
    """Rational square root if r is the square of a rational, else None."""
    r = rat(r)
    if r < 0:
        return None
    n, d = int(r.numerator), int(r.denominator)
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(int(gmpy2.isqrt(n)), int(gmpy2.isqrt(d)))
    return None


def scalar_pow_z(lam: PositiveEigenvalue, z: complex):
    """lambda^{iz} = exp(iz ln lambda), exact where possible.

    z = -i*n for integer n gives lambda^n and z = -i*n/2 gives lambda^{n/2};
    these stay in the exact tier when lambda is exact (and, for half-integer
    powers, a perfect square).
    """
    _check(lam)
    z = complex(z)
    if z == 0 or (type(lam.value) is Gauss and lam.value == 1):
        return ONE
    if type(lam.value) is Gauss and z.real == 0:
        power = -z.imag  # lambda^{iz} = lambda^{-Im z} for purely imaginary z
        twice = 2 * power
        if twice == int(twice):
            twice = int(twice)
            base = lam.value.re
            if twice % 2 == 0:
                return Gauss(base ** (twice // 2)) if twice >= 0 else Gauss(1 / base ** (-twice // 2))
            root = exact_sqrt(base)
            if root is not None:
                return Gauss(root ** twice) if twice >= 0 else Gauss(1 / root ** (-twice))
    return cmath.exp(1j * z * lam.log())
