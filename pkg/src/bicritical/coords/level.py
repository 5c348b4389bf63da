"""Per-level coordinate changes Y_n and their compositions.

Level n uses (r, s) = (alpha_n, beta_n). The marked beta-point of level n
sits at abscissa sigma_n beta_n / alpha_n (mod 1/alpha_n), sigma_n being the
cumulative sign of OstrowskiSeq.signs. Y_n sends that point's vertical line
to the imaginary axis, which keeps Y_n(0) = 0 and chains the beta-points of
consecutive levels:

    sigma = +1:  base(w) = Y_{r,s}(w)
    sigma = -1:  base(w) = Y_{r,s}(w + s/r) - s
    eps = -1:    Y_n = base
    eps = +1:    Y_n = -conj(base)

so Re Y_n(x + iy) = -eps_n alpha_n x.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from ..arithmetic.expansion import OstrowskiSeq
from ..errors import DomainError
from .core import MIN_FLOAT_R, CoordParams, y_rs, y_rs_inverse_im, y_rs_inverse_im_mp, y_rs_mp


@dataclass(frozen=True)
class LevelMap:
    level: int
    r_mp: object
    s_mp: object
    eps: int
    sign: int = 1

    @property
    def params(self) -> CoordParams | None:
        """Float parameters, or None when alpha_n is too small for doubles."""
        r = float(self.r_mp)
        if r < MIN_FLOAT_R:
            return None
        return CoordParams(min(r, 0.5), min(float(self.s_mp), 0.5))

    @property
    def r(self) -> float:
        return float(self.r_mp)

    @property
    def s(self) -> float:
        return float(self.s_mp)

    @property
    def float_ok(self) -> bool:
        return float(self.r_mp) >= MIN_FLOAT_R


def level_maps(seq: OstrowskiSeq) -> list[LevelMap]:
    sig = seq.signs
    return [LevelMap(n, seq.alphas[n], seq.betas[n], seq.eps[n], sig[n]) for n in range(seq.depth + 1)]


def y_level(lm: LevelMap, x, y):
    """(Re, Im) of Y_n(x + iy), vectorised in float64."""
    p = lm.params
    if p is None:
        raise DomainError(f"level {lm.level}: r = {mpmath.nstr(lm.r_mp, 5)} needs the mpmath path")
    x = np.asarray(x, dtype=float)
    if lm.sign == 1:
        re, im = y_rs(p, x, y)
    else:
        re, im = y_rs(p, x + p.s / p.r, y)
        re = re - p.s
    if lm.eps == 1:
        re = -re
    return re, im


def y_level_mp(lm: LevelMap, x, y):
    """Scalar mpmath version of y_level."""
    r, s = lm.r_mp, lm.s_mp
    x, y = mpmath.mpf(x), mpmath.mpf(y)
    if lm.sign == 1:
        re, im = y_rs_mp(r, s, x, y)
    else:
        re, im = y_rs_mp(r, s, x + s / r, y)
        re -= s
    if lm.eps == 1:
        re = -re
    return re, im


def abscissa_up(lm: LevelMap, x):
    """Re Y_n(x) = -eps_n alpha_n x."""
    return -lm.eps * lm.r * np.asarray(x, dtype=float)


def abscissa_down(lm: LevelMap, re):
    """Inverse of abscissa_up."""
    return -np.asarray(re, dtype=float) / (lm.eps * lm.r)


def y_level_inverse(lm: LevelMap, re, im):
    """Preimage (x, y) under Y_n of the point re + i im (vectorised)."""
    p = lm.params
    if p is None:
        raise DomainError(f"level {lm.level}: needs the mpmath path")
    x = abscissa_down(lm, re)
    xs = x if lm.sign == 1 else x + p.s / p.r
    y = y_rs_inverse_im(p, xs, im)
    return x, y


def y_level_inverse_mp(lm: LevelMap, re, im):
    r, s = lm.r_mp, lm.s_mp
    x = -mpmath.mpf(re) / (lm.eps * r)
    xs = x if lm.sign == 1 else x + s / r
    return x, y_rs_inverse_im_mp(r, s, xs, im)


def grand_coords(seq: OstrowskiSeq, n: int, k: int, x, y, direction: str = "forward"):
    """The composed change of coordinates between levels n + k and n.

    forward: Y_{n+1} o ... o Y_{n+k}, from level n+k coordinates to level n.
    inverse: its inverse, from level n to level n+k; raises DomainError when
    a point lies below the image of the bottom line at some level.
    Valid for -1 <= n and n + k <= seq.depth.
    """
    if k < 0 or n < -1 or n + k > seq.depth:
        raise DomainError(f"need -1 <= n and 0 <= k with n+k <= {seq.depth}")
    maps = level_maps(seq)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if direction == "forward":
        for lv in range(n + k, n, -1):
            x, y = y_level(maps[lv], x, y)
        return x, y
    if direction == "inverse":
        for lv in range(n + 1, n + k + 1):
            x, y = y_level_inverse(maps[lv], x, y)
        return x, y
    raise DomainError("direction must be 'forward' or 'inverse'")


def grand_inverse_bookkept(seq: OstrowskiSeq, n: int, k: int, x, y):
    """Inverse grand coordinates written with explicit integer bookkeeping.

    One level: reduce m = floor(Re w), invert on the unit strip, then move by
    the matching multiple of 1/alpha (Y_n(w + 1/alpha_n) = Y_n(w) - eps_n).
    Agrees with grand_coords(..., "inverse"); kept as an independent route.
    """
    maps = level_maps(seq)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for lv in range(n + 1, n + k + 1):
        lm = maps[lv]
        m = np.floor(x)
        xi, yi = y_level_inverse(lm, x - m, y)
        x, y = xi - lm.eps * m / lm.r, yi
    return x, y
