"""Trichotomy verdicts, the Siegel-disk bracket and the non-equivalence witness."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .arithmetic.brjuno import BrjunoEstimate, brjuno_sum
from .arithmetic.expansion import (
    ExplicitExpansion,
    OstrowskiSeq,
    ostrowski_expand,
    param_from_value,
    reconstruct_beta,
    seq_from_arrays,
)
from .arithmetic.herman import herman_star_check
from .coords.core import TWO_PI
from .errors import AlphaLooksBrjuno, DomainError, NotBrjuno
from .model import GridPolicy, base_tower, height_along_chain, peak_tower

JORDAN = "JordanCurve"
HAIRY = "OneSidedHairyJordan"
BOUQUET = "CantorBouquet"
UNDECIDED = "Undecided"


@dataclass(frozen=True)
class ClassifyPolicy:
    divergence_threshold: float = 50.0
    trend_window: int = 5
    min_trend: float = 1.0
    herman_margin: int = 3
    herman_convention: str = "inverse"
    brjuno_cap: float = 1e6
    m_limit: int = 20
    gap_depth: int = 16
    gap_angles: int = 512
    c_seed: float = 2.0

    @classmethod
    def from_dict(cls, d: dict) -> "ClassifyPolicy":
        unknown = sorted(set(d) - set(cls.__dataclass_fields__))
        if unknown:
            raise DomainError(f"unknown policy keys: {', '.join(unknown)}")
        return cls(**d)


@dataclass(frozen=True)
class TrichotomyVerdict:
    verdict: str
    tier: str  # certified | at-truncation
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "tier": self.tier, "evidence": self.evidence}


def _nstr(x, n=12):
    return mpmath.nstr(x, n) if not isinstance(x, (int, float)) else repr(x)


def divergent(est: BrjunoEstimate, policy: ClassifyPolicy) -> bool:
    """Policy test for non-Brjuno at truncation: large sum still growing."""
    ps = est.partial_sums
    if not ps or not est.truncated_sum > policy.divergence_threshold:
        return False
    w = min(policy.trend_window, len(ps) - 1)
    return bool(ps[-1] - ps[-1 - w] >= policy.min_trend)


def _tested_upto(seq: OstrowskiSeq, policy: ClassifyPolicy) -> int:
    return max(0, seq.depth - policy.herman_margin)


def _tier(seq: OstrowskiSeq, verdict: str) -> str:
    if verdict in (JORDAN, HAIRY) and seq.exact and seq.alpha_period is not None:
        return "certified"
    return "at-truncation"


def gap_statistics(seq: OstrowskiSeq, depth: int, angles: int = 512, policy: GridPolicy | None = None) -> dict:
    """max and min of p_{-1} - b_{-1} over a level -1 sample at the given depth."""
    policy = policy or GridPolicy()
    depth = min(depth, seq.depth - 1)
    xs = np.arange(angles) / angles
    b = base_tower(seq, -1, depth, policy).heights(-1, xs)
    pt = peak_tower(seq, -1, depth, policy)
    if not math.isfinite(pt.seed_value):
        return {"depth": depth, "finite": False}
    p = pt.heights(-1, xs)
    gap = p - b
    return {"depth": depth, "finite": True, "max_gap": float(np.max(gap)), "min_gap": float(np.min(gap)),
            "sup_b": float(np.max(b)), "sup_p": float(np.max(p))}


def classify(seq: OstrowskiSeq, depth: int | None = None, policy: ClassifyPolicy | None = None,
             with_gap: bool = True) -> TrichotomyVerdict:
    policy = policy or ClassifyPolicy()
    if depth is not None and depth < seq.depth:
        seq = seq.prefix(depth)
    with mpmath.workprec(seq.precision_bits):
        est = brjuno_sum(seq, "bicritical")
        div = divergent(est, policy)
        finite = est.finite and est.upper <= policy.brjuno_cap and not div
        herman = herman_star_check(seq, policy.brjuno_cap, policy.m_limit, policy.herman_convention)
        upto = _tested_upto(seq, policy)
        witnessed = herman.witnessed(upto) and not herman.gated
    if div:
        verdict = BOUQUET
    elif finite and witnessed:
        verdict = JORDAN
    elif finite:
        verdict = HAIRY
    else:
        verdict = UNDECIDED
    evidence = {
        "depth": seq.depth,
        "brjuno": est.to_json(),
        "brjuno_upper": _nstr(est.upper),
        "divergent_by_policy": div,
        "herman_tested_upto": upto,
        "herman_witnessed": witnessed,
        "herman": herman.to_json(),
        "policy": asdict(policy),
    }
    if with_gap and verdict in (JORDAN, HAIRY) and seq.depth >= 2:
        try:
            evidence["gap"] = gap_statistics(seq, policy.gap_depth, policy.gap_angles)
        except Exception as exc:  # diagnostics only; the verdict does not depend on it
            evidence["gap"] = {"error": f"{type(exc).__name__}: {exc}"}
    return TrichotomyVerdict(verdict, _tier(seq, verdict), evidence)


def classify_unicritical(seq: OstrowskiSeq, depth: int | None = None,
                         policy: ClassifyPolicy | None = None) -> TrichotomyVerdict:
    """Reference classifier from the classical Brjuno sum and Herman condition (beta ignored)."""
    policy = policy or ClassifyPolicy()
    if depth is not None and depth < seq.depth:
        seq = seq.prefix(depth)
    with mpmath.workprec(seq.precision_bits):
        est = brjuno_sum(seq, "unicritical")
        div = divergent(est, policy)
        finite = est.finite and est.upper <= policy.brjuno_cap and not div
        herman = herman_star_check(seq, policy.brjuno_cap, policy.m_limit, policy.herman_convention,
                                   weights="unicritical")
        witnessed = herman.witnessed(_tested_upto(seq, policy)) and not herman.gated
    if div:
        verdict = BOUQUET
    elif finite and witnessed:
        verdict = JORDAN
    elif finite:
        verdict = HAIRY
    else:
        verdict = UNDECIDED
    return TrichotomyVerdict(verdict, _tier(seq, verdict),
                             {"brjuno_upper": _nstr(est.upper), "herman_witnessed": witnessed})


# ----------------------------------------------------------------- Siegel disk size

@dataclass(frozen=True)
class SiegelBracket:
    brjuno_lower: float  # truncated sum
    brjuno_upper: float  # truncated sum + tail bound
    r_lo: float  # e^{-B_upper} / factor
    r_hi: float  # e^{-B_lower} * factor
    inner_radius: float  # e^{-2 pi p_{-1}(0)}
    inscribed_radius: float  # e^{-2 pi max_x p_{-1}(x)}
    factor: float
    observed_factor: float  # max ratio between inner_radius and e^{-B}
    inscribed_factor: float
    literal_center: float  # e^{-2 pi B}
    literal_factor: float
    depth: int

    def to_json(self) -> dict:
        return asdict(self)


def siegel_bracket(seq: OstrowskiSeq, depth: int, factor: float = 20.0, angles: int = 4096,
                   policy: GridPolicy | None = None) -> SiegelBracket:
    """Compare the model's inner radii with e^{-B(alpha, beta)}.

    sup_x b_{-1} is B/2 pi up to a constant, so the inner radius e^{-2 pi p}
    sits at the scale e^{-B}; e^{-2 pi B} is reported for reference.
    """
    with mpmath.workprec(seq.precision_bits):
        est = brjuno_sum(seq, "bicritical")
        if not est.finite:
            raise NotBrjuno("Brjuno bound is not finite at truncation")
        if divergent(est, ClassifyPolicy()):
            raise NotBrjuno("truncated Brjuno sums diverge by policy")
        lo, hi = float(est.truncated_sum), float(est.upper)
    policy = policy or GridPolicy()
    depth = min(depth, seq.depth - 1)
    xs = np.arange(angles) / angles
    pt = peak_tower(seq, -1, depth, policy)
    b = base_tower(seq, -1, depth, policy).heights(-1, xs)
    p = np.maximum(pt.heights(-1, xs), b)
    inner = math.exp(-TWO_PI * p[0])
    inscribed = math.exp(-TWO_PI * float(np.max(p)))
    center = math.exp(-0.5 * (lo + hi))
    ratio = lambda u, v: max(u / v, v / u)  # noqa: E731
    lit = math.exp(-TWO_PI * 0.5 * (lo + hi))
    return SiegelBracket(lo, hi, math.exp(-hi) / factor, math.exp(-lo) * factor, inner, inscribed, factor,
                         ratio(inner, center), ratio(inscribed, center), lit, ratio(inner, lit), depth)


# ----------------------------------------------------------------- constructed expansions

def _golden_tail_alphas(a_list, eps_list, prec):
    from .arithmetic.expansion import _backward_alphas  # shared backward recursion

    exp = ExplicitExpansion(tuple(a_list), tuple(eps_list))
    return _backward_alphas(exp, prec)


def liouville_expansion(depth: int = 12, jumps: tuple = (5, 11), first_jump_log: float = 100.0,
                        final_term: float = 100.0, prec: int = 256) -> dict:
    """Expansion JSON for an alpha with bounded levels a_n = 3 and two huge jumps.

    The first jump is a_{j1} = round(e^{first_jump_log}); the last one is
    a_{j2} = exp(L) with L chosen so that the level-j2 Brjuno term is about
    final_term, which pushes the truncated sum past the divergence threshold.
    """
    j1, j2 = jumps
    if not 0 <= j1 < j2 <= depth - 1:
        raise ValueError("need 0 <= j1 < j2 <= depth - 1")
    a = [0] + [3] * depth
    with mpmath.workprec(prec):
        a[j1 + 1] = int(mpmath.nint(mpmath.exp(first_jump_log)))
    eps = [1] + [-1] * depth
    a[j2 + 1] = 10 ** 60  # stand-in: the alphas below j2 barely depend on the jump size
    alphas = _golden_tail_alphas(a, eps, prec)
    with mpmath.workprec(prec):
        p = mpmath.fprod(alphas[:j2])
        big_l = mpmath.mpf(final_term) / p
    a[j2 + 1] = f"exp({mpmath.nstr(big_l, 15)})"
    return {"a": a, "eps": eps}


def brjuno_non_herman_expansion() -> dict:
    """Expansion JSON: a_1 = 1000, a_2 = 10^10, a_3 = 10^(10^7), other a_n = 3.

    The Brjuno sum stays near 3.6, while the forward Herman tower from level 0
    never reaches the Brjuno height of level 3 (about 1.15e7).
    """
    return {"a": [0, 3, 1000, 10 ** 10, "1e10000000"], "eps": [1, -1, -1, -1, -1]}


def seq_from_expansion(obj: dict, depth: int | None = None, prec: int = 256) -> OstrowskiSeq:
    from .arithmetic.expansion import parse_expansion

    exp = parse_expansion(obj, prec)
    alpha = param_from_value(exp, prec)
    return ostrowski_expand(alpha, param_from_value(0, prec), exp.depth if depth is None else depth)


# ----------------------------------------------------------------- non-equivalence witness

@dataclass
class WitnessReport:
    beta: object  # mpf
    x: object  # level -1 abscissa of the witness point (= beta)
    window_ok: list
    relation_residual: float
    reconstruct_residual: float
    depths: list
    witness_heights: list
    zero_heights: list
    witness_seq: OstrowskiSeq = field(repr=False, default=None)

    @property
    def witness_spread(self) -> float:
        w = self.witness_heights
        return float(max(w) - min(w))

    @property
    def witness_bounded(self) -> bool:
        return self.witness_spread < 1.0

    @property
    def zero_increasing(self) -> bool:
        z = self.zero_heights
        return all(b > a for a, b in zip(z, z[1:]))

    @property
    def zero_doublings(self) -> float:
        """log2 growth of the height above the bottom line Im w = -1, first to last depth."""
        z = self.zero_heights
        return float(mpmath.log(z[-1] + 1, 2) - mpmath.log(z[0] + 1, 2))

    def to_json(self) -> dict:
        return {
            "beta": mpmath.nstr(self.beta, 30),
            "x": mpmath.nstr(self.x, 30),
            "window_ok": self.window_ok,
            "relation_residual": self.relation_residual,
            "reconstruct_residual": self.reconstruct_residual,
            "depths": self.depths,
            "witness_heights": [float(h) for h in self.witness_heights],
            "zero_heights": [float(h) for h in self.zero_heights],
            "witness_spread": self.witness_spread,
            "witness_bounded": self.witness_bounded,
            "zero_increasing": self.zero_increasing,
            "zero_doublings": self.zero_doublings,
        }


def witness_beta_seq(alpha_seq: OstrowskiSeq) -> OstrowskiSeq:
    """Choose b_n and delta_{n+1} backwards so that beta_n lies in [1/2 - alpha_n, 1/2].

    The window has length 1 in units of beta_n / alpha_n, and the numbers
    b + delta beta_{n+1} meet every such window, so a choice always exists.
    """
    N = alpha_seq.depth
    al = alpha_seq.alphas
    with mpmath.workprec(alpha_seq.precision_bits):
        half = mpmath.mpf(1) / 2
        betas = [None] * (N + 1)
        bco = [0] * (N + 1)  # index k holds b_{k-1}
        dl = [1] * (N + 1)
        betas[N] = half - al[N] / 2
        for n in range(N - 1, -1, -1):
            lo_t = half / al[n] - 1
            hi_t = half / al[n]
            nxt = betas[n + 1]
            best = None
            base = mpmath.floor(lo_t)
            for b in (base - 1, base, base + 1, base + 2):
                for d in (1, -1):
                    t = b + d * nxt
                    if lo_t <= t <= hi_t and (best is None or t > best[0]):
                        best = (t, b, d)
            t, b, d = best
            betas[n] = al[n] * t
            bco[n + 1] = int(b) if abs(b) < mpmath.mpf(2) ** 62 else b
            dl[n + 1] = d
    return seq_from_arrays(al, betas, alpha_seq.eps, dl, alpha_seq.a_coef, bco,
                           alpha_seq.precision_bits, source=alpha_seq.source + "+witness")


def marker_chain(seq: OstrowskiSeq) -> list:
    """x_n = sigma_n beta_n / alpha_n mod 1/alpha_n, in mpmath, for n = -1 .. N (index n + 1)."""
    with mpmath.workprec(seq.precision_bits):
        out = [mpmath.fmod(seq.deltas[0] * seq.betas[0] + 1, 1)]
        for n in range(seq.depth + 1):
            w = 1 / seq.alphas[n]
            out.append(mpmath.fmod(seq.signs[n] * seq.betas[n] * w + w, w))
        return out


def nonequivalence_witness(alpha_seq: OstrowskiSeq, depth: int | None = None, depths=None,
                           policy: ClassifyPolicy | None = None) -> WitnessReport:
    """Witness beta with heights at x = beta bounded, against unbounded heights for beta = 0."""
    policy = policy or ClassifyPolicy()
    if depth is not None and depth < alpha_seq.depth:
        alpha_seq = alpha_seq.prefix(depth)
    with mpmath.workprec(alpha_seq.precision_bits):
        est = brjuno_sum(alpha_seq, "unicritical")
        if not divergent(est, policy):
            raise AlphaLooksBrjuno(f"truncated Brjuno sum {mpmath.nstr(est.truncated_sum, 6)} "
                                   f"does not diverge by policy")
    ws = witness_beta_seq(alpha_seq.with_zero_beta())
    zs = ws.with_zero_beta()
    with mpmath.workprec(ws.precision_bits):
        half = mpmath.mpf(1) / 2
        window = [bool(half - ws.alphas[n] <= ws.betas[n] <= half) for n in range(ws.depth + 1)]
        rel = max(abs(ws.betas[n] / ws.alphas[n] - ws.b(n) - ws.deltas[n + 1] * ws.betas[n + 1])
                  * ws.alphas[n] for n in range(ws.depth))
        beta = ws.betas[0]
        rec = abs(reconstruct_beta(ws) - beta) / max(mpmath.fprod(ws.alphas[:ws.depth]), mpmath.mpf(2) ** -200)
        chain = marker_chain(ws)
        # chain[k] holds level k - 1; height_along_chain wants index = level
        lvl_chain = {n: chain[n + 1] for n in range(-1, ws.depth + 1)}
        if depths is None:
            depths = list(range(4, ws.depth + 1))
        wh = [height_along_chain(ws, lvl_chain, j) for j in depths]
        zh = [height_along_chain(zs, lvl_chain, j) for j in depths]
    return WitnessReport(beta, chain[0], window, float(rel), float(rec), list(depths), wh, zh, ws)
