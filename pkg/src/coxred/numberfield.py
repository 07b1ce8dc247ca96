"""Exact arithmetic in Q(sqrt2, sqrt3, sqrt5), real quadratic fields and their residue fields.

Two scalar types live here:

* :class:`MultiQuadElement` carries Gram entries ``-2 cos(pi/m)`` for
  ``m <= 6``; it lives in the biquadratic tower over the rationals.
* :class:`QuadraticFieldElement` is ``a + b*sqrt(D)`` in a fixed field
  ``Q(sqrt D)`` (``D=None`` means the rationals).

Residue fields ``O/P`` are modelled by :class:`ResidueField` with elements
:class:`ResidueElement` encoded as integers ``a + b*p``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from coxred.errors import NotInField, NotIntegral, NotPID, ParseError

# Radicals are indexed by a bitmask over (2, 3, 5); BASIS_ORDER is the
# published coefficient order {1, √2, √3, √5, √6, √10, √15, √30}.
_PRIMES = (2, 3, 5)
BASIS_ORDER = (0, 1, 2, 4, 3, 5, 6, 7)
RADICANDS = {mask: math.prod(p for k, p in enumerate(_PRIMES) if mask >> k & 1) for mask in range(8)}
_MASK_OF = {v: k for k, v in RADICANDS.items()}

# Real quadratic fields Q(sqrt D), D < 100 squarefree, with class number one.
PID_RADICANDS = frozenset(
    (2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43,
     46, 47, 53, 57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97)
)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def is_squarefree(n: int) -> bool:
    if n < 2:
        return n == 1
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n = s**2 * f`` and ``f`` squarefree."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, f, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            f *= d
        d += 1
    return s, f * n


def _is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    if _is_square_int(n) and _is_square_int(d):
        return Fraction(math.isqrt(n), math.isqrt(d))
    return None


# ---------------------------------------------------------------------------
# Multiquadratic elements


class MultiQuadElement:
    """Element of Q(sqrt2, sqrt3, sqrt5), stored as 8 rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coefficients=None):
        # coefficients: dict mask -> rational, or sequence in BASIS_ORDER
        c = [Fraction(0)] * 8
        if coefficients is None:
            pass
        elif isinstance(coefficients, dict):
            for mask, v in coefficients.items():
                c[mask] += _frac(v)
        else:
            coefficients = list(coefficients)
            if len(coefficients) != 8:
                raise ValueError("expected 8 coefficients")
            for pos, v in enumerate(coefficients):
                c[BASIS_ORDER[pos]] = _frac(v)
        self._c = tuple(c)

    @classmethod
    def rational(cls, x) -> "MultiQuadElement":
        return cls({0: x})

    @classmethod
    def sqrt(cls, n: int, coefficient=1) -> "MultiQuadElement":
        s, f = squarefree_decomposition(n)
        if f not in _MASK_OF:
            raise NotInField(f"sqrt({n}) is not in Q(sqrt2, sqrt3, sqrt5)")
        return cls({_MASK_OF[f]: _frac(coefficient) * s})

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients over 1, √2, √3, √5, √6, √10, √15, √30."""
        return tuple(self._c[m] for m in BASIS_ORDER)

    def coefficient(self, radicand: int) -> Fraction:
        return self._c[_MASK_OF[radicand]]

    def support(self) -> list[int]:
        """Masks of the radicals with nonzero coefficient."""
        return [m for m in range(8) if self._c[m]]

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def __bool__(self):
        return any(self._c)

    def _coerce(self, other):
        if isinstance(other, MultiQuadElement):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiQuadElement({0: other})
        if isinstance(other, QuadraticFieldElement):
            return other.to_multiquad()
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiQuadElement({m: self._c[m] + other._c[m] for m in range(8)})

    __radd__ = __add__

    def __neg__(self):
        return MultiQuadElement({m: -self._c[m] for m in range(8)})

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
        out = [Fraction(0)] * 8
        for m1, x in enumerate(self._c):
            if not x:
                continue
            for m2, y in enumerate(other._c):
                if not y:
                    continue
                # sqrt(r1) sqrt(r2) = (shared part) * sqrt(r1 r2 / shared^2)
                out[m1 ^ m2] += x * y * RADICANDS[m1 & m2]
        return MultiQuadElement(dict(enumerate(out)))

    __rmul__ = __mul__

    def conjugate(self, prime: int) -> "MultiQuadElement":
        """Galois conjugate flipping the sign of sqrt(prime)."""
        bit = 1 << _PRIMES.index(prime)
        return MultiQuadElement({m: (-v if m & bit else v) for m, v in enumerate(self._c)})

    def inverse(self) -> "MultiQuadElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        num = MultiQuadElement.rational(1)
        x = self
        for p in (5, 3, 2):
            c = x.conjugate(p)
            num = num * c
            x = x * c
        assert x.is_rational()
        return num * (1 / x._c[0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        out = MultiQuadElement.rational(1)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        if self.is_rational():
            return hash(self._c[0])
        return hash(self._c)

    def sign(self) -> int:
        """Exact sign of the real value (every radical taken positive)."""
        return _mq_sign(self._c, 2)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(sum(float(v) * math.sqrt(RADICANDS[m]) for m, v in enumerate(self._c)))

    def __repr__(self):
        return f"MultiQuadElement({format_multiquad(self)!r})"

    def __str__(self):
        return format_multiquad(self)


def _mq_sign(c: tuple, level: int) -> int:
    """Sign of the element with coefficient tuple ``c`` whose support lies
    in the masks below ``1 << (level + 1)``; recursion peels sqrt of
    _PRIMES[level] off the top."""
    if level < 0:
        return (c[0] > 0) - (c[0] < 0)
    bit = 1 << level
    lo = tuple(c[m] if not m & bit else Fraction(0) for m in range(8))
    hi = tuple(c[m | bit] if not m & bit else Fraction(0) for m in range(8))
    sa = _mq_sign(lo, level - 1)
    sb = _mq_sign(hi, level - 1)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    a = MultiQuadElement(dict(enumerate(lo)))
    b = MultiQuadElement(dict(enumerate(hi)))
    diff = a * a - b * b * _PRIMES[level]
    return sa * _mq_sign(diff._c, level - 1)


# ---------------------------------------------------------------------------
# Quadratic field elements


@dataclass(frozen=True, eq=False)
class QuadraticFieldElement:
    """``a + b*sqrt(D)``; ``D`` is None for the rational field."""

    a: Fraction
    b: Fraction = Fraction(0)
    D: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if self.D is None:
            if self.b:
                raise ValueError("irrational part requires a radicand")
        elif self.D < 2 or not is_squarefree(self.D):
            raise ValueError(f"D={self.D} must be a squarefree integer > 1")

    # construction helpers
    def _same(self, a, b) -> "QuadraticFieldElement":
        return QuadraticFieldElement(a, b, self.D)

    def _coerce(self, other):
        if isinstance(other, QuadraticFieldElement):
            if other.D != self.D:
                if other.D is None:
                    return QuadraticFieldElement(other.a, 0, self.D)
                if self.D is None and not self.b:
                    return other
                raise ValueError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticFieldElement(other, 0, self.D)
        return NotImplemented

    def _field(self, other):
        return self.D if self.D is not None else other.D

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticFieldElement(self.a + other.a, self.b + other.b, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return self._same(-self.a, -self.b)

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
        D = self._field(other)
        a = self.a * other.a + (self.b * other.b * D if D else 0)
        b = self.a * other.b + self.b * other.a
        return QuadraticFieldElement(a, b, D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - (self.b * self.b * self.D if self.D else 0)

    def trace(self) -> Fraction:
        return 2 * self.a

    def conjugate(self) -> "QuadraticFieldElement":
        return self._same(self.a, -self.b)

    def inverse(self) -> "QuadraticFieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._same(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        out = self._same(1, 0)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        if not isinstance(other, QuadraticFieldElement):
            return NotImplemented
        if self.b or other.b:
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        return self.a == other.a

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b, self.D))

    def sign(self) -> int:
        """Sign under the embedding sqrt(D) -> +sqrt(D)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sa or sb
        # opposite signs: the larger square wins
        lhs, rhs = self.a * self.a, self.b * self.b * self.D
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __float__(self):
        return float(self.a) + (float(self.b) * math.sqrt(self.D) if self.D else 0.0)

    def to_multiquad(self) -> MultiQuadElement:
        if not self.b:
            return MultiQuadElement.rational(self.a)
        return MultiQuadElement.rational(self.a) + MultiQuadElement.sqrt(self.D, self.b)

    def is_square(self) -> bool:
        """True when the element is a square in Q(sqrt D)."""
        if not self:
            return True
        if not self.b:
            if _rational_sqrt(self.a) is not None:
                return True
            return self.D is not None and _rational_sqrt(self.a / self.D) is not None
        s = _rational_sqrt(self.norm())
        if s is None:
            return False
        for cand in ((self.a + s) / 2, (self.a - s) / 2):
            u = _rational_sqrt(cand)
            if u:
                return True
        return False

    def __repr__(self):
        return f"QuadraticFieldElement({format_quadratic(self)!r})"

    def __str__(self):
        return format_quadratic(self)


def qfe(a, b=0, D=None) -> QuadraticFieldElement:
    return QuadraticFieldElement(_frac(a), _frac(b), D)


def coerce_to_quadratic(x: MultiQuadElement, D: Optional[int]) -> QuadraticFieldElement:
    """View ``x`` as an element of Q(sqrt D); raises NotInField otherwise."""
    allowed = {0}
    if D is not None:
        s, f = squarefree_decomposition(D)
        if s != 1 or f not in _MASK_OF:
            # a field outside the biquadratic tower meets it only in Q
            allowed = {0}
        else:
            allowed.add(_MASK_OF[D])
    for m in x.support():
        if m not in allowed:
            raise NotInField(f"{x} has a sqrt({RADICANDS[m]}) component outside Q(sqrt {D})")
    b = x._c[_MASK_OF[D]] if D in _MASK_OF and D != 1 else Fraction(0)
    return QuadraticFieldElement(x._c[0], b, D)


# ---------------------------------------------------------------------------
# text form `a/b + c/d*sqrt(D)`


def format_rational(x: Fraction) -> str:
    return str(x)


def format_multiquad(x: MultiQuadElement) -> str:
    parts = []
    for m in BASIS_ORDER:
        v = x._c[m]
        if not v:
            continue
        body = str(abs(v)) if m == 0 else f"{abs(v)}*sqrt({RADICANDS[m]})"
        if not parts:
            parts.append(body if v > 0 else "-" + body)
        else:
            parts.append(("+ " if v > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def format_quadratic(x: QuadraticFieldElement) -> str:
    if not x.b:
        return str(x.a)
    rad = f"{abs(x.b)}*sqrt({x.D})"
    if not x.a:
        return rad if x.b > 0 else "-" + rad
    return f"{x.a} {'+' if x.b > 0 else '-'} {rad}"


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)(?:\s*\*\s*sqrt\(\s*(\d+)\s*\))?\s*"
)


def parse_multiquad(text: str, offset: int = 0) -> MultiQuadElement:
    """Parse ``rational ((+|-) rational*sqrt(INT))*``."""
    pos, total, first = 0, MultiQuadElement(), True
    text_len = len(text)
    if not text.strip():
        raise ParseError("empty field element", offset)
    while pos < text_len:
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected {text[pos:pos + 8]!r} in field element", offset + pos)
        sign, num, rad = m.groups()
        if sign is None and not first:
            raise ParseError("expected '+' or '-' between terms", offset + m.start(2))
        value = Fraction(num) * (-1 if sign == "-" else 1)
        if rad is None:
            total = total + value
        else:
            if int(rad) == 0:
                raise ParseError("sqrt(0)", offset + m.start(3))
            try:
                total = total + MultiQuadElement.sqrt(int(rad), value)
            except NotInField as exc:
                raise ParseError(str(exc), offset + m.start(3)) from None
        first = False
        pos = m.end()
    return total


def parse_quadratic(text: str, D: Optional[int] = None) -> QuadraticFieldElement:
    x = parse_multiquad(text)
    if D is None:
        nonrational = [m for m in x.support() if m]
        if len(nonrational) > 1:
            raise NotInField(f"{text!r} is not a quadratic irrationality")
        D = RADICANDS[nonrational[0]] if nonrational else None
    return coerce_to_quadratic(x, D)


# ---------------------------------------------------------------------------
# integrality and divisibility


def _half_coords(x: QuadraticFieldElement) -> Optional[tuple[int, int]]:
    u, v = 2 * x.a, 2 * x.b
    if u.denominator != 1 or v.denominator != 1:
        return None
    return int(u), int(v)


def is_integral(x: QuadraticFieldElement) -> bool:
    if x.D is None:
        return x.a.denominator == 1
    uv = _half_coords(x)
    if uv is None:
        return False
    u, v = uv
    if x.D % 4 == 1:
        return (u - v) % 2 == 0
    return u % 2 == 0 and v % 2 == 0


def integral_coordinates(x: QuadraticFieldElement) -> tuple[int, int]:
    """Return ``(s, t)`` with ``x = s + t*omega`` for the standard integral
    basis generator ``omega``."""
    if not is_integral(x):
        raise NotIntegral(f"{x} is not an algebraic integer")
    if x.D is None:
        return int(x.a), 0
    if x.D % 4 == 1:
        t = 2 * x.b
        return int(x.a - x.b), int(t)
    return int(x.a), int(x.b)


def omega(D: int) -> QuadraticFieldElement:
    if D % 4 == 1:
        return qfe(Fraction(1, 2), Fraction(1, 2), D)
    return qfe(0, 1, D)


def omega_min_poly(D: int) -> tuple[int, int]:
    """``(c1, c0)`` with omega a root of ``x^2 + c1 x + c0``."""
    if D % 4 == 1:
        return -1, -(D - 1) // 4
    return 0, -D


def field_discriminant(D: Optional[int]) -> int:
    if D is None:
        return 1
    return D if D % 4 == 1 else 4 * D


def divides(alpha: QuadraticFieldElement, beta: QuadraticFieldElement) -> bool:
    if isinstance(beta, (int, Fraction)):
        beta = QuadraticFieldElement(beta, 0, alpha.D)
    if not alpha:
        raise ZeroDivisionError("divisibility by zero")
    return is_integral(beta / alpha)


# ---------------------------------------------------------------------------
# residue fields


class ResidueField:
    """F_p, or F_{p^2} = F_p[t]/(t^2 + c1 t + c0); elements coded as a + b*p."""

    def __init__(self, p: int, modulus: Optional[tuple[int, int]] = None):
        self.p = p
        self.modulus = modulus
        self.q = p if modulus is None else p * p
        self.degree = 1 if modulus is None else 2

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.modulus is None:
            return f"ResidueField(F_{self.p})"
        c1, c0 = self.modulus
        return f"ResidueField(F_{self.p}[t]/(t^2 + {c1}t + {c0}))"

    def modulus_text(self) -> Optional[str]:
        if self.modulus is None:
            return None
        c1, c0 = self.modulus
        return f"t^2 + {c1}*t + {c0}"

    # code-level arithmetic
    def split(self, code: int) -> tuple[int, int]:
        return code % self.p, code // self.p

    def join(self, a: int, b: int = 0) -> int:
        return a % self.p + (b % self.p) * self.p if self.degree == 2 else a % self.p

    def add(self, x: int, y: int) -> int:
        if self.degree == 1:
            return (x + y) % self.p
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.join(a + c, b + d)

    def neg(self, x: int) -> int:
        if self.degree == 1:
            return -x % self.p
        a, b = self.split(x)
        return self.join(-a, -b)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.degree == 1:
            return x * y % self.p
        (a, b), (c, d) = self.split(x), self.split(y)
        c1, c0 = self.modulus
        # t^2 = -c1 t - c0
        bd = b * d
        return self.join(a * c - bd * c0, a * d + b * c - bd * c1)

    def pow(self, x: int, k: int) -> int:
        out, base = 1, x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow(x, self.q - 2)

    def is_square(self, x: int) -> bool:
        return x == 0 or self.pow(x, (self.q - 1) // 2) == 1

    def element(self, code: int) -> "ResidueElement":
        return ResidueElement(self, code)

    def elements(self):
        return [ResidueElement(self, c) for c in range(self.q)]

    def embed_matrix(self, x: int) -> list[list[int]]:
        """Matrix over F_p of multiplication by ``x`` in the basis (1, t)."""
        if self.degree == 1:
            return [[x]]
        a, b = self.split(x)
        c1, c0 = self.modulus
        p = self.p
        return [[a % p, -b * c0 % p], [b % p, (a - b * c1) % p]]


@dataclass(frozen=True)
class ResidueElement:
    field: ResidueField
    code: int

    def _other(self, other):
        if isinstance(other, ResidueElement):
            return other.code
        if isinstance(other, int):
            return self.field.join(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ResidueElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ResidueElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ResidueElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ResidueElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ResidueElement(self.field, self.field.mul(self.code, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ResidueElement(self.field, self.field.mul(o, self.field.inv(self.code)))

    def __pow__(self, k: int):
        if k < 0:
            return ResidueElement(self.field, self.field.pow(self.field.inv(self.code), -k))
        return ResidueElement(self.field, self.field.pow(self.code, k))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.field.join(other)
        if isinstance(other, ResidueElement):
            return self.field == other.field and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def sign(self) -> int:
        raise TypeError("finite field elements have no sign")

    def balanced(self) -> int:
        """Representative in -(p-1)/2 .. (p-1)/2 (prime fields only)."""
        if self.field.degree != 1:
            raise TypeError("balanced representatives exist only over prime fields")
        p = self.field.p
        return self.code - p if self.code > p // 2 else self.code

    def text(self) -> str:
        if self.field.degree == 1:
            return str(self.balanced())
        a, b = self.field.split(self.code)
        if not b:
            return str(a)
        lin = "t" if b == 1 else f"{b}*t"
        return lin if not a else f"{a} + {lin}"

    def __repr__(self):
        if self.field.degree == 1:
            return f"{self.code} (mod {self.field.p})"
        a, b = self.field.split(self.code)
        return f"{a} + {b}t (mod {self.field.p})"


def residue_int(x: int, field: ResidueField) -> ResidueElement:
    return ResidueElement(field, field.join(x))


@lru_cache(maxsize=None)
def quadratic_extension(p: int) -> ResidueField:
    """F_{p^2} with the lexicographically smallest monic irreducible
    ``t^2 + c1 t + c0`` (ordered by (c1, c0))."""
    for c1 in range(p):
        for c0 in range(p):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                return ResidueField(p, (c1, c0))
    raise AssertionError("no irreducible quadratic")  # unreachable for prime p


@dataclass(frozen=True)
class PrimeIdealData:
    p: int
    kind: str  # "ramified" | "split" | "inert" | "rational"
    D: Optional[int]
    generator: Optional[QuadraticFieldElement]
    residue_q: int
    field: ResidueField
    omega_residue: int  # code of the image of omega in the residue field

    def require_generator(self) -> QuadraticFieldElement:
        if self.generator is None:
            raise NotPID(f"Q(sqrt {self.D}) is not on the class-number-one list; no generator over {self.p}")
        return self.generator

    def to_dict(self) -> dict:
        out = {
            "p": self.p,
            "kind": self.kind,
            "residue_q": self.residue_q,
            "generator": None if self.generator is None else format_quadratic(self.generator),
        }
        if self.field.modulus is not None:
            out["modulus"] = self.field.modulus_text()
        return out


def _norm_generator(p: int, D: int) -> Optional[QuadraticFieldElement]:
    """Smallest (by a^2 + D b^2) integral element of norm +-p, or None."""
    best = None
    best_key = None
    v = 0
    while True:
        # a^2 + D b^2 = (u^2 + D v^2) / 4 >= D v^2 / 4
        if best_key is not None and D * v * v > 4 * best_key[0]:
            break
        if v > 200000:
            break
        for s in (1, -1):
            u2 = D * v * v + s * 4 * p
            if not _is_square_int(u2):
                continue
            u = math.isqrt(u2)
            for uu in {u, -u}:
                for vv in {v, -v}:
                    x = qfe(Fraction(uu, 2), Fraction(vv, 2), D)
                    if not is_integral(x):
                        continue
                    key = ((uu * uu + D * vv * vv), uu < 0, vv < 0)
                    if best_key is None or key < best_key:
                        best_key, best = key, x
        v += 1
    return best


def splitting(p: int, D: Optional[int]) -> PrimeIdealData:
    """Decomposition type of ``p`` in Q(sqrt D) plus a chosen prime above it."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if D is None:
        field = ResidueField(p)
        return PrimeIdealData(p, "rational", None, qfe(p), p, field, 0)
    if not is_squarefree(D) or D < 2:
        raise ValueError(f"D={D} must be squarefree and > 1")
    disc = field_discriminant(D)
    c1, c0 = omega_min_poly(D)
    if disc % p == 0:
        kind = "ramified"
    elif p == 2:
        kind = "split" if D % 8 == 1 else "inert"
    else:
        kind = "split" if pow(D % p, (p - 1) // 2, p) == 1 else "inert"

    if kind == "inert":
        field = quadratic_extension(p)
        roots = [x for x in range(field.q)
                 if field.add(field.add(field.mul(x, x), field.mul(field.join(c1), x)), field.join(c0)) == 0]
        return PrimeIdealData(p, kind, D, qfe(p, 0, D), p * p, field, min(roots))

    field = ResidueField(p)
    roots = [x for x in range(p) if (x * x + c1 * x + c0) % p == 0]
    generator = _norm_generator(p, D) if D in PID_RADICANDS else None
    root = roots[0]
    if generator is not None:
        w = omega(D)
        matching = [r for r in roots if divides(generator, w - r)]
        root = matching[0]
    return PrimeIdealData(p, kind, D, generator, p, field, root)


def residue(x: QuadraticFieldElement, P: PrimeIdealData) -> ResidueElement:
    """Image of an algebraic integer in O/P."""
    if isinstance(x, (int, Fraction)):
        x = QuadraticFieldElement(x, 0, P.D)
    if not is_integral(x):
        raise NotIntegral(f"{x} is not an algebraic integer")
    if x.D is not None and P.D is not None and x.D != P.D:
        raise ValueError(f"element of Q(sqrt {x.D}) reduced at a prime of Q(sqrt {P.D})")
    if not x.b:
        return residue_int(int(x.a), P.field)
    s, t = integral_coordinates(x)
    f = P.field
    return ResidueElement(f, f.add(f.join(s), f.mul(f.join(t), P.omega_residue)))
