"""The coordinate family g_r, Y_r, G_{r,s} and the adjusted map Y_{r,s}.

Two evaluators share one strip table: a vectorised float64 path (numpy) and
a scalar mpmath path used when r is too small for doubles or when extra
precision is requested.

Conventions used throughout:

* points are passed as separate real arrays (x, y), w = x + iy, with y >= -1;
* Re G_{r,s}(x + iy) = r x exactly, and every adjusted piece is a horizontal
  translate of G, so Re Y_{r,s}(x + iy) = r x exactly as well;
* the floored piece keeps Re = r x and replaces Im by
  max(Im G(x + iy), Im G(-1 + iy)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from ..errors import DomainError, SingularPoint

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi
Y_MIN = -1.0
# a float64 r below this goes to the mpmath path (1/r and r*x lose too much)
MIN_FLOAT_R = 1e-12


@dataclass(frozen=True)
class CoordParams:
    r: float
    s: float

    def __post_init__(self):
        if not (0 < self.r <= 0.5):
            raise DomainError(f"r must lie in (0, 1/2], got {self.r}")
        if not (0 <= self.s <= 0.5):
            raise DomainError(f"s must lie in [0, 1/2], got {self.s}")

    @property
    def wide(self) -> bool:
        """True in the s >= r regime."""
        return self.s >= self.r


@dataclass(frozen=True)
class Piece:
    lo: object
    hi: object
    lo_closed: bool
    hi_closed: bool
    shift: object  # evaluate G at u + shift


def strip_table(r, s) -> tuple[Piece, ...]:
    """Strips of the reduced abscissa u in [0, 1/r) where a translate of G replaces the floor.

    Outside every strip the floored value is used. Works with floats or mpf.
    """
    inv = 1 / r
    q = s / r
    if s >= r:
        return (
            Piece(q - 1, q - 0.5, False, True, -q),
            Piece(q - 0.5, q, False, False, 0),
            Piece(inv - 1, inv - 0.5, False, True, 0),
            Piece(inv - 0.5, inv, False, False, q),
        )
    return (
        Piece(0, q / 2, False, True, -1),
        Piece(q / 2, q, False, False, 0),
        Piece(inv - 1, inv - 1 + q / 2, False, True, 0),
        Piece(inv - 1 + q / 2, inv + q - 1, False, True, 1),
        Piece(inv + q - 1, inv + q / 2 - 0.5, False, True, -q),
        Piece(inv + q / 2 - 0.5, inv, False, False, q),
    )


# ---------------------------------------------------------------- float path

def log_g(r: float, x, y):
    """log g_r(x + iy) with g_r(w) = |e^{-3 pi r} - e^{-2 pi r i w}|, stable for large y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    u = math.pi * r * (3.0 + 2.0 * y)
    sn = np.sin(math.pi * r * x)
    arg = np.expm1(-u) ** 2 + 4.0 * np.exp(-u) * sn * sn
    if np.any(arg <= 1e-300):
        raise SingularPoint("g_r vanishes at a sampled point")
    return TWO_PI * r * y + 0.5 * np.log(arg)


def g_r(r: float, x, y):
    return np.exp(log_g(r, x, y))


def im_big_g(p: CoordParams, x, y):
    x = np.asarray(x, dtype=float)
    return (log_g(p.r, x + 0.5, y) + log_g(p.r, x - p.s / p.r + 0.5, y)) / FOUR_PI


def big_g(p: CoordParams, x, y):
    """(Re, Im) of G_{r,s}(x + iy)."""
    x = np.asarray(x, dtype=float)
    return p.r * x, im_big_g(p, x, y)


def y_unicritical(r: float, x, y):
    """(Re, Im) of Y_r(x + iy) = r x + (i/2 pi) log(g_r(w + 1/2) / g_r(1/2))."""
    x = np.asarray(x, dtype=float)
    _check_domain(y)
    return r * x, (log_g(r, x + 0.5, y) - log_g(r, 0.5, 0.0)) / TWO_PI


def _check_domain(y):
    if np.any(np.asarray(y) < Y_MIN - 1e-12):
        raise DomainError("points must satisfy Im w >= -1")


def _reduce(p: CoordParams, x):
    """x = u + k/r with u in [0, 1/r); returns (u, k)."""
    inv = 1.0 / p.r
    k = np.floor(x * p.r)
    u = x - k * inv
    low = u < 0
    u = np.where(low, u + inv, u)
    k = np.where(low, k - 1, k)
    high = u >= inv
    u = np.where(high, u - inv, u)
    k = np.where(high, k + 1, k)
    return u, k


def _in_piece(u, pc: Piece):
    lo = (u >= pc.lo) if pc.lo_closed else (u > pc.lo)
    hi = (u <= pc.hi) if pc.hi_closed else (u < pc.hi)
    return lo & hi


def _im_pre_reduced(p: CoordParams, u, y):
    """Im of the adjusted map at reduced abscissa u (before normalisation)."""
    floor = np.maximum(im_big_g(p, u, y), im_big_g(p, -1.0, y))
    out = floor
    taken = np.zeros(np.shape(u), dtype=bool)
    for pc in _table_cached(p.r, p.s):
        m = _in_piece(u, pc) & ~taken
        if np.any(m):
            out = np.where(m, im_big_g(p, u + pc.shift, y), out)
            taken |= m
    return out


@lru_cache(maxsize=4096)
def _table_cached(r: float, s: float):
    return strip_table(r, s)


def y_pre(p: CoordParams, x, y):
    """(Re, Im) of the adjusted map before the normalisation at 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_domain(y)
    x, y = np.broadcast_arrays(x, y)
    u, k = _reduce(p, x)
    return p.r * u + k, _im_pre_reduced(p, u, y)


def y_pre1(p: CoordParams, x, y):
    """(Re, Im) of the first (floored) adjustment alone."""
    x = np.asarray(x, dtype=float)
    return p.r * x, np.maximum(im_big_g(p, x, y), im_big_g(p, -1.0, y))


@lru_cache(maxsize=4096)
def _offset(r: float, s: float) -> float:
    return float(_im_pre_reduced(CoordParams(r, s), np.array(0.0), np.array(0.0)))


def y_rs(p: CoordParams, x, y):
    """(Re, Im) of Y_{r,s}(x + iy), normalised so that Y_{r,s}(0) = 0."""
    re, im = y_pre(p, x, y)
    return re, im - _offset(p.r, p.s)


def im_y_rs(p: CoordParams, x, y):
    return y_rs(p, x, y)[1]


def y_rs_inverse_im(p: CoordParams, x, target, tol: float = 1e-13, max_iter: int = 200):
    """Solve Im Y_{r,s}(x + iy) = target for y >= -1 (vectorised bisection).

    Raises DomainError where target lies below the image of the bottom line.
    """
    x = np.asarray(x, dtype=float)
    target = np.asarray(target, dtype=float)
    x, target = np.broadcast_arrays(x, target)
    lo = np.full(x.shape, Y_MIN)
    f_lo = im_y_rs(p, x, lo)
    if np.any(target < f_lo - 1e-12):
        raise DomainError("target below the image of Im w = -1")
    # Im Y grows like r y: bracket by doubling
    hi = np.maximum(1.0, (target - f_lo) / p.r + 1.0)
    for _ in range(200):
        bad = im_y_rs(p, x, hi) < target
        if not np.any(bad):
            break
        hi = np.where(bad, 2.0 * hi + 1.0, hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        below = im_y_rs(p, x, mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= tol * np.maximum(1.0, np.abs(hi))):
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------- mpmath path

def log_g_mp(r, x, y):
    u = mpmath.pi * r * (3 + 2 * y)
    sn = mpmath.sin(mpmath.pi * r * x)
    arg = mpmath.expm1(-u) ** 2 + 4 * mpmath.exp(-u) * sn * sn
    # |g_r| is of size r near its zeros, so the vanishing test is relative to r
    if arg <= (mpmath.mpf(2) ** (-(mpmath.mp.prec // 2)) * r) ** 2:
        raise SingularPoint("g_r vanishes to working precision")
    return 2 * mpmath.pi * r * y + mpmath.log(arg) / 2


def im_big_g_mp(r, s, x, y):
    return (log_g_mp(r, x + mpmath.mpf(0.5), y) + log_g_mp(r, x - s / r + mpmath.mpf(0.5), y)) / (4 * mpmath.pi)


def _reduce_mp(r, x):
    inv = 1 / r
    k = mpmath.floor(x * r)
    u = x - k * inv
    if u < 0:
        u += inv
        k -= 1
    elif u >= inv:
        u -= inv
        k += 1
    return u, k


def _in_piece_mp(u, pc: Piece) -> bool:
    lo = u >= pc.lo if pc.lo_closed else u > pc.lo
    hi = u <= pc.hi if pc.hi_closed else u < pc.hi
    return lo and hi


def _im_pre_reduced_mp(r, s, u, y):
    for pc in strip_table(r, s):
        if _in_piece_mp(u, pc):
            return im_big_g_mp(r, s, u + pc.shift, y)
    return max(im_big_g_mp(r, s, u, y), im_big_g_mp(r, s, mpmath.mpf(-1), y))


def y_rs_mp(r, s, x, y):
    """Scalar mpmath evaluation of Y_{r,s}(x + iy); returns (Re, Im) as mpf."""
    r, s, x, y = (mpmath.mpf(v) for v in (r, s, x, y))
    if not (0 < r <= 0.5 and 0 <= s <= 0.5):
        raise DomainError("r must lie in (0,1/2] and s in [0,1/2]")
    if y < -1:
        raise DomainError("points must satisfy Im w >= -1")
    u, k = _reduce_mp(r, x)
    im = _im_pre_reduced_mp(r, s, u, y) - _im_pre_reduced_mp(r, s, mpmath.mpf(0), mpmath.mpf(0))
    return r * u + k, im


def y_rs_inverse_im_mp(r, s, x, target, tol=None):
    """Scalar inverse in y of Im Y_{r,s}(x + iy) = target."""
    r, s, x, target = (mpmath.mpf(v) for v in (r, s, x, target))
    f = lambda yy: y_rs_mp(r, s, x, yy)[1] - target  # noqa: E731
    lo = mpmath.mpf(-1)
    if f(lo) > 0:
        raise DomainError("target below the image of Im w = -1")
    hi = max(mpmath.mpf(1), (target - f(lo) + 1) / r)
    while f(hi) < 0:
        hi = 2 * hi + 1
    if tol is None:
        tol = mpmath.mpf(2) ** (-(mpmath.mp.prec // 2))
    for _ in range(mpmath.mp.prec * 4):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1, abs(hi)):
            break
    return (lo + hi) / 2


# ---------------------------------------------------------------- diagnostics

def extrema_locations(p: CoordParams, y: float):
    """Designated near-maximum abscissa, the two minimum abscissae, and Im Y there."""
    x_max = (1.0 + p.s) / (2.0 * p.r) - 0.5
    x_mins = (0.0, p.s / p.r)
    xs = np.array([x_max, *x_mins])
    im = im_y_rs(p, xs, np.full(3, float(y)))
    return x_max, x_mins, tuple(float(v) for v in im)


def symmetry_center(p: CoordParams) -> float:
    return p.s / (2.0 * p.r) - 0.5


def height_estimate(p: CoordParams, y):
    """2 pi r y + M(r, s); compare with 2 pi Im Y_{r,s}(x_max + iy)."""
    from ..arithmetic.brjuno import m_height

    return TWO_PI * p.r * np.asarray(y, dtype=float) + m_height(float(p.r), float(p.s))


def g_bound_constants(t: float = 2.0 ** -5, big_m: float = 1.0) -> tuple[float, float]:
    """C(t) = max(1/sin(2 pi t), 2) and D(M) = max(1 + e^{2 pi M}, e^{2 pi M} - 1)."""
    c = max(1.0 / math.sin(TWO_PI * t), 2.0)
    e = math.exp(TWO_PI * big_m)
    return c, max(1.0 + e, e - 1.0)
