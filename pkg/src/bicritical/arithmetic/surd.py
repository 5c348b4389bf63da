"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Elements are stored as (p, q) with p, q rational and value p + q*sqrt(d).
Rationals are surds with q = 0, so a rational beta can be combined with a
surd alpha without leaving exact arithmetic.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath


def squarefree_part(d: int) -> tuple[int, int]:
    """Write d = k^2 * m with m squarefree; returns (k, m)."""
    if d <= 0:
        raise ValueError("radicand must be positive")
    k, m = 1, d
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


@dataclass(frozen=True)
class Surd:
    p: Fraction
    q: Fraction
    d: int  # squarefree, >= 2; normalised to 0 when q == 0

    def __post_init__(self):
        if self.q == 0 and self.d != 0:
            object.__setattr__(self, "d", 0)

    @staticmethod
    def rational(x) -> "Surd":
        return Surd(Fraction(x), Fraction(0), 0)

    @staticmethod
    def make(p, q, d: int) -> "Surd":
        p, q = Fraction(p), Fraction(q)
        if q == 0:
            return Surd(p, q, 0)
        k, m = squarefree_part(d)
        if m == 1:
            return Surd(p + q * k, Fraction(0), 0)
        return Surd(p, q * k, m)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def _field(self, other: "Surd") -> int:
        if self.q == 0:
            return other.d
        if other.q == 0 or other.d == self.d:
            return self.d
        raise ValueError(f"surds from different fields: sqrt({self.d}) and sqrt({other.d})")

    @staticmethod
    def _coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Fraction)):
            return Surd.rational(x)
        raise TypeError(f"cannot combine Surd with {type(x).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return Surd.make(self.p + o.p, self.q + o.q, self._field(o) or 2)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._field(o)
        return Surd.make(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d or 2)

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def reciprocal(self) -> "Surd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("surd is zero")
        c = self.conjugate()
        return Surd(c.p / n, c.q / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def floor(self) -> int:
        """Exact floor via integer square roots."""
        if self.q == 0:
            return math.floor(self.p)
        # value = (A + B*sqrt(d)) / C with integers, C > 0
        C = math.lcm(self.p.denominator, self.q.denominator)
        A = int(self.p * C)
        B = int(self.q * C)
        N = B * B * self.d
        root = math.isqrt(N)  # N is never a perfect square here
        num_floor = A + root if B > 0 else A - root - 1
        return num_floor // C

    def sign(self) -> int:
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        f = self.floor()
        return -1 if f < 0 else 1  # irrational, never exactly 0

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def to_mpf(self, prec: int):
        with mpmath.workprec(prec + 16):
            v = mpmath.mpf(self.p.numerator) / self.p.denominator
            if self.q:
                v += mpmath.mpf(self.q.numerator) / self.q.denominator * mpmath.sqrt(self.d)
        with mpmath.workprec(prec):
            return +v

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        den = math.lcm(self.p.denominator, self.q.denominator)
        a, b = int(self.p * den), int(self.q * den)
        return f"({a}{'+' if b >= 0 else '-'}{abs(b)}√{self.d})/{den}"


_SURD_RE = re.compile(
    r"""^\(\s*(?P<p>[+-]?\d+)\s*(?P<sgn>[+-])\s*(?P<q>\d+)\s*\*?\s*
        (?:√|sqrt)\s*\(?\s*(?P<d>\d+)\s*\)?\s*\)\s*/\s*(?P<e>[+-]?\d+)\s*$""",
    re.VERBOSE,
)


def parse_surd(text: str) -> Surd | None:
    """Parse "(p+q√d)/e" (also "sqrt(d)"); returns None if text is not of that shape."""
    t = text.strip().replace("−", "-").replace("–", "-")
    m = _SURD_RE.match(t)
    if not m:
        return None
    q = int(m["q"]) * (1 if m["sgn"] == "+" else -1)
    e = int(m["e"])
    if e == 0:
        raise ValueError("surd denominator is zero")
    return Surd.make(Fraction(int(m["p"]), e), Fraction(q, e), int(m["d"]))
