"""Q_alpha, the height function M(r, s) and weighted Brjuno sums."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ..errors import DomainError
from .expansion import OstrowskiSeq


def q_alpha(alpha, x):
    """1 / (1 + min(u, 1/|alpha| - u)) with u = x mod 1/|alpha|.

    Accepts floats, numpy arrays or mpf; the result type follows x.
    """
    if alpha == 0:
        raise DomainError("q_alpha needs alpha != 0")
    if isinstance(x, np.ndarray) or isinstance(alpha, float) and isinstance(x, (int, float)):
        period = 1.0 / abs(float(alpha))
        u = np.mod(np.asarray(x, dtype=float), period)
        out = 1.0 / (1.0 + np.minimum(u, period - u))
        return out if isinstance(x, np.ndarray) else float(out)
    period = 1 / abs(mpmath.mpf(alpha))
    u = mpmath.mpf(x) % period
    return 1 / (1 + min(u, period - u))


def m_height(r, s):
    """M(r, s) = 1/2 log(1/r) + 1/2 log(1/(s + r))."""
    if isinstance(r, float) and isinstance(s, (int, float)):
        if not (0 < r <= 0.5 and 0 <= s <= 0.5):
            raise DomainError(f"m_height needs r in (0,1/2], s in [0,1/2]; got ({r}, {s})")
        return 0.5 * math.log(1.0 / r) + 0.5 * math.log(1.0 / (s + r))
    r, s = mpmath.mpf(r), mpmath.mpf(s)
    if not (0 < r <= 0.5 and 0 <= s <= 0.5):
        raise DomainError("m_height needs r in (0,1/2], s in [0,1/2]")
    return (mpmath.log(1 / r) + mpmath.log(1 / (s + r))) / 2


@dataclass(frozen=True)
class BrjunoEstimate:
    truncated_sum: object  # mpf
    tail_lower: object
    tail_upper: object
    depth_used: int
    terms: tuple = ()
    partial_sums: tuple = ()

    @property
    def upper(self):
        return self.truncated_sum + self.tail_upper

    @property
    def finite(self) -> bool:
        return bool(mpmath.isfinite(self.upper))

    def to_json(self) -> dict:
        return {
            "truncated_sum": mpmath.nstr(self.truncated_sum, 17),
            "tail_lower": mpmath.nstr(self.tail_lower, 17),
            "tail_upper": mpmath.nstr(self.tail_upper, 17),
            "depth_used": self.depth_used,
        }


def brjuno_sum(seq: OstrowskiSeq, weights: str = "bicritical", start: int = 0) -> BrjunoEstimate:
    """Sum_{n=start}^{N} (prod_{start<=i<n} alpha_i) w_n with w_n = M(alpha_n, beta_n) or log(1/alpha_n).

    The tail after level N is bracketed by [0, 2 L prod_{start<=i<=N} alpha_i],
    L the largest log(1/alpha_n) seen in the expansion. Since alpha_i < 1/2 the
    geometric factor is at most 2; the bound is rigorous for periodic
    expansions and a heuristic for the rest.
    """
    if weights not in ("bicritical", "unicritical"):
        raise DomainError("weights must be 'bicritical' or 'unicritical'")
    if not 0 <= start <= seq.depth:
        raise DomainError(f"start {start} outside 0..{seq.depth}")
    with mpmath.workprec(seq.precision_bits):
        prod = mpmath.mpf(1)
        total = mpmath.mpf(0)
        terms, partial = [], []
        big_l = mpmath.mpf(0)
        for n in range(start, seq.depth + 1):
            al = seq.alphas[n]
            log_inv = mpmath.log(1 / al)
            big_l = max(big_l, log_inv)
            w = log_inv if weights == "unicritical" else m_height(al, seq.betas[n])
            t = prod * w
            terms.append(t)
            total += t
            partial.append(total)
            prod *= al
        for al in seq.alphas[:start]:
            big_l = max(big_l, mpmath.log(1 / al))
        return BrjunoEstimate(total, mpmath.mpf(0), 2 * big_l * prod, seq.depth - start,
                              tuple(terms), tuple(partial))
