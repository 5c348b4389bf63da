"""Herman circle functions (unicritical and bi-critical) and the witness search.

All functions are scalar and evaluate in mpmath so that the huge heights of
Liouville-type expansions stay representable.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from ..errors import DomainError, NoConvergence
from .brjuno import brjuno_sum, m_height
from .expansion import OstrowskiSeq


def _check(r, s):
    if not (0 < r <= 0.5 and 0 <= s <= 0.5):
        raise DomainError(f"need r in (0,1/2], s in [0,1/2]; got r={r}, s={s}")


def herman_inv(r, s, y):
    """Inverse bi-critical Herman function; continuous with f(r,s) = M(r,s).

    Returns -inf at y = 0.
    """
    r, s, y = mpmath.mpf(r), mpmath.mpf(s), mpmath.mpf(y)
    _check(r, s)
    if y < 0:
        raise DomainError(f"herman_inv needs y >= 0, got {y}")
    if y == 0:
        return mpmath.ninf
    if y <= (1 - s) / r:
        return (mpmath.log(y) + mpmath.log((s + r * y) / (s + r))) / 2
    if y <= 1 / r:
        return (mpmath.log(y) + r * y + mpmath.log(1 / (s + r)) - (1 - s)) / 2
    return r * y + m_height(r, s) - (1 - s / 2)


def herman_inv_uni(r, y):
    """Unicritical inverse: log y below 1/r, r y + log(1/r) - 1 above."""
    r, y = mpmath.mpf(r), mpmath.mpf(y)
    _check(r, 0)
    if y < 0:
        raise DomainError(f"herman_inv_uni needs y >= 0, got {y}")
    if y == 0:
        return mpmath.ninf
    if y <= 1 / r:
        return mpmath.log(y)
    return r * y + mpmath.log(1 / r) - 1


def herman_tilde_inv(r, s, y):
    """Companion function with herman_inv = (herman_inv_uni + herman_tilde_inv) / 2."""
    r, s, y = mpmath.mpf(r), mpmath.mpf(s), mpmath.mpf(y)
    _check(r, s)
    if y < 0:
        raise DomainError("herman_tilde_inv needs y >= 0")
    if y <= (1 - s) / r:
        return mpmath.log((s + r * y) / (s + r))
    return r * y + mpmath.log(1 / (s + r)) - (1 - s)


def herman_fwd_uni(r, t):
    """Unicritical forward map: e^t below log(1/r), linear above."""
    r, t = mpmath.mpf(r), mpmath.mpf(t)
    _check(r, 0)
    knot = mpmath.log(1 / r)
    if t <= knot:
        return mpmath.exp(t)
    return (t - knot + 1) / r


def herman_fwd(r, s, t, tol=None):
    """Solve herman_inv(r, s, y) = t for y by bracketing in log y.

    The last branch is linear and inverted in closed form.
    """
    r, s, t = mpmath.mpf(r), mpmath.mpf(s), mpmath.mpf(t)
    _check(r, s)
    if t == mpmath.ninf:
        return mpmath.mpf(0)
    knot = herman_inv(r, s, 1 / r)
    if t >= knot:
        return (t - m_height(r, s) + (1 - s / 2)) / r
    if tol is None:
        tol = mpmath.mpf(2) ** (-(mpmath.mp.prec // 2))

    def g(u):
        return herman_inv(r, s, mpmath.exp(u)) - t

    hi = mpmath.log(1 / r)
    lo = min(2 * t, t) - 1
    step = mpmath.mpf(1)
    for _ in range(4000):
        if g(lo) < 0:
            break
        step *= 2
        lo -= step
    else:
        raise NoConvergence("could not bracket herman_fwd from below")
    # bisection in log y: the map u -> herman_inv(e^u) is increasing with slope >= 1/2
    for _ in range(10_000):
        mid = (lo + hi) / 2
        gm = g(mid)
        if gm < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    else:
        raise NoConvergence("herman_fwd bisection did not converge")
    y = mpmath.exp((lo + hi) / 2)
    if abs(herman_inv(r, s, y) - t) > 10 * tol * max(1, abs(t)):
        raise NoConvergence("herman_fwd round trip check failed")
    return y


@dataclass(frozen=True)
class LevelVerdict:
    n: int
    witness: int | None  # comparison level m, or None when undecided at truncation
    margin: object = None  # how far below 0 (inverse form) or above B (forward form)


@dataclass(frozen=True)
class HermanReport:
    levels: tuple[LevelVerdict, ...]
    convention: str
    weights: str
    gated: bool = False  # True when the Brjuno precondition failed

    def witnessed(self, upto: int | None = None) -> bool:
        lv = self.levels if upto is None else [v for v in self.levels if v.n <= upto]
        return bool(lv) and all(v.witness is not None for v in lv)

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "weights": self.weights,
            "gated": self.gated,
            "levels": [{"n": v.n, "witness": v.witness,
                        "margin": None if v.margin is None else mpmath.nstr(v.margin, 10)}
                       for v in self.levels],
        }


def _level_sums(seq: OstrowskiSeq, weights: str) -> list:
    """Upper Brjuno estimate B(alpha_m, beta_m) at each level m (truncated sum + tail)."""
    return [brjuno_sum(seq, weights, start=m).upper for m in range(seq.depth + 1)]


def herman_star_check(seq: OstrowskiSeq, brjuno_cap=1e6, m_limit: int = 20,
                      convention: str = "inverse", weights: str = "bicritical") -> HermanReport:
    """Search, for every level n, a comparison level m in (n, n + m_limit] that witnesses Herman*.

    convention "inverse": h^-1_n o ... o h^-1_{m-1}(B_m) < 0, i.e. the tower of
    forward maps from 0 at level n reaches the Brjuno height of level m.
    convention "forward_literal": h_{m-1} o ... o h_n(0) >= B_n, the level-n
    comparison as printed in the definition.
    weights "unicritical" gives the classical Herman check with h_r and B(alpha_m).
    """
    if convention not in ("inverse", "forward_literal"):
        raise DomainError("convention must be 'inverse' or 'forward_literal'")
    if weights not in ("bicritical", "unicritical"):
        raise DomainError("weights must be 'bicritical' or 'unicritical'")
    N = seq.depth
    with mpmath.workprec(seq.precision_bits):
        sums = _level_sums(seq, weights)
        if not mpmath.isfinite(sums[0]) or sums[0] > brjuno_cap:
            return HermanReport(tuple(LevelVerdict(n, None) for n in range(N + 1)),
                                convention, weights, gated=True)

        def inv(k, y):
            if weights == "unicritical":
                return herman_inv_uni(seq.alphas[k], y)
            return herman_inv(seq.alphas[k], seq.betas[k], y)

        def fwd(k, t):
            if weights == "unicritical":
                return herman_fwd_uni(seq.alphas[k], t)
            return herman_fwd(seq.alphas[k], seq.betas[k], t)

        out = []
        for n in range(N + 1):
            found, margin = None, None
            if convention == "inverse":
                for m in range(n + 1, min(N, n + m_limit) + 1):
                    y = sums[m]
                    for k in range(m - 1, n - 1, -1):
                        if y <= 0:
                            y = mpmath.ninf
                            break
                        y = inv(k, y)
                    if y < 0:
                        found, margin = m, y
                        break
            else:
                y = mpmath.mpf(0)
                for m in range(n + 1, min(N, n + m_limit) + 1):
                    y = fwd(m - 1, y)
                    if y >= sums[n]:
                        found, margin = m, y - sums[n]
                        break
            out.append(LevelVerdict(n, found, margin))
    return HermanReport(tuple(out), convention, weights)
