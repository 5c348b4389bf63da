"""Nested sets I_n^j through height-curve pushforwards, and the model sets.

Heights are pushed from a seed level up to level -1. At level n a point x
comes from level n + 1 through the abscissa relation x - l = -eps_{n+1}
alpha_{n+1} x_{n+1}, with l the integer translate whose image strip contains
x (at integer x both neighbouring translates meet and the lower height wins).
Levels narrow enough are sampled on uniform grids and interpolated; wider
levels (huge a_n) are evaluated pointwise on demand, in mpmath when alpha_n
is below double range.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .arithmetic.brjuno import brjuno_sum
from .arithmetic.expansion import OstrowskiSeq
from .coords.core import TWO_PI
from .coords.level import LevelMap, level_maps, y_level, y_level_inverse, y_level_inverse_mp, y_level_mp
from .errors import DomainError, GridTooCoarse

INF = math.inf  # saturating sentinel: inf + finite = inf, Im Y(x + i inf) = inf


@dataclass(frozen=True)
class GridPolicy:
    """Samples per unit of x: base_density at level -1, scaled by alpha_0 ... alpha_n."""

    base_density: int = 4096
    min_density: int = 16
    max_samples: int = 2 ** 21
    c_seed: float = 2.0

    def density(self, seq: OstrowskiSeq, n: int) -> int:
        logp = sum(math.log2(float(seq.alphas[i])) if float(seq.alphas[i]) > 0 else -math.inf
                   for i in range(n + 1))
        want = math.log2(self.base_density) + logp
        if want <= math.log2(self.min_density):
            return self.min_density
        return 2 ** math.ceil(want - 1e-9)


def level_width(seq: OstrowskiSeq, n: int) -> float:
    """1/alpha_n (1 at level -1); may be inf for alpha_n below double range."""
    if n < 0:
        return 1.0
    return float(1 / seq.alphas[n])


def level_grid(seq: OstrowskiSeq, n: int, policy: GridPolicy) -> np.ndarray | None:
    """Uniform grid on [0, 1/alpha_n] with the endpoint, or None when too large."""
    width = level_width(seq, n)
    d = policy.density(seq, n)
    if not math.isfinite(width) or width * d > policy.max_samples:
        return None
    m = int(math.floor(width * d))
    xs = np.arange(m + 1, dtype=float) / d
    return np.unique(np.concatenate([xs, special_nodes(seq, n, width)]))


def marker_abscissa(seq: OstrowskiSeq, n: int) -> float:
    """Abscissa of the marked beta-point at level n: sigma_n beta_n / alpha_n mod 1/alpha_n
    (beta mod 1 at level -1)."""
    with mpmath.workprec(seq.precision_bits):
        if n < 0:
            return float(mpmath.fmod(seq.deltas[0] * seq.betas[0] + 1, 1))
        w = 1 / seq.alphas[n]
        return float(mpmath.fmod(seq.signs[n] * seq.betas[n] * w + w, w))


def special_nodes(seq: OstrowskiSeq, n: int, width: float) -> np.ndarray:
    """Exact nodes: both ends, the seam chain point 1/alpha_n - 1 and the integer
    translates of the beta-marker, so chains through them avoid interpolation."""
    nodes = [0.0, width, max(width - 1.0, 0.0)]
    mk = marker_abscissa(seq, n)
    k = np.arange(int(math.floor(width)) + 1, dtype=float)
    # the beta chain can also pass through the copy of the marker across the seam at 1/alpha_n - 1
    for base in (mk % 1.0, (mk + width - 1.0) % 1.0):
        t = k + base
        nodes.extend(t[t <= width])
    return np.asarray(nodes, dtype=float)


@dataclass(frozen=True)
class HeightCurve:
    level: int
    stage: int
    xs: np.ndarray
    ys: np.ndarray
    kind: str  # base | peak | level-set
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for a in (self.xs, self.ys):
            a.setflags(write=False)

    def __call__(self, x):
        return np.interp(x, self.xs, self.ys)

    @property
    def width(self) -> float:
        return float(self.xs[-1])

    @property
    def spacing(self) -> float:
        return float(self.xs[1] - self.xs[0]) if len(self.xs) > 1 else 1.0

    def sup(self) -> float:
        return float(np.max(self.ys))


def _descend(lm: LevelMap, x: np.ndarray):
    """Candidate preimages at level lm.level of abscissae x one level up.

    Returns (x_main, alt_mask, x_alt): x_alt is the other end of the strip,
    used where x is an integer seam.
    """
    r = lm.r
    if lm.eps == -1:
        l = np.floor(x)
        xm = (x - l) / r
    else:
        l = np.ceil(x)
        xm = (l - x) / r
    xm = np.clip(xm, 0.0, 1.0 / r)
    seam = x == np.round(x)
    return xm, seam, np.where(xm == 0.0, 1.0 / r, 0.0)


def _descend_mp(lm: LevelMap, x):
    r = lm.r_mp
    if lm.eps == -1:
        l = mpmath.floor(x)
        xm = (x - l) / r
    else:
        l = mpmath.ceil(x)
        xm = (l - x) / r
    if x == l:
        return [mpmath.mpf(0), 1 / r]
    return [xm]


def _im_level(lm: LevelMap, x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Im Y_n(x + i h) with the infinity sentinel passed through."""
    h = np.asarray(h, dtype=float)
    fin = np.isfinite(h)
    out = np.full(h.shape, INF)
    if np.any(fin):
        out[fin] = y_level(lm, x[fin], h[fin])[1]
    return out


def push_values(lm: LevelMap, x: np.ndarray, height_fn) -> np.ndarray:
    """Heights at level lm.level - 1 for abscissae x, from heights one level down."""
    x = np.asarray(x, dtype=float)
    xm, seam, xalt = _descend(lm, x)
    h = np.array(height_fn(xm), dtype=float)
    if np.any(seam):
        h_alt = np.array(height_fn(xalt[seam]), dtype=float)
        h[seam] = np.minimum(h[seam], h_alt)
    return _im_level(lm, xm, h)


def push_height(seq: OstrowskiSeq, n: int, curve: HeightCurve, xs: np.ndarray | None = None,
                policy: GridPolicy | None = None, kind: str | None = None) -> HeightCurve:
    """Push a level n+1 height curve to level n, tiled over [0, 1/alpha_n]."""
    if curve.level != n + 1:
        raise DomainError(f"curve lives at level {curve.level}, expected {n + 1}")
    policy = policy or GridPolicy()
    lm = level_maps(seq)[n + 1]
    if not lm.float_ok:
        raise DomainError(f"level {n + 1} needs the pointwise mpmath path; use Tower")
    if abs(curve.width - 1.0 / lm.r) > 1e-9 * max(1.0, 1.0 / lm.r):
        raise DomainError("curve does not cover [0, 1/alpha_{n+1}]")
    if xs is None:
        xs = level_grid(seq, n, policy)
        if xs is None:
            raise GridTooCoarse(f"level {n} is too wide for a grid")
    xs = np.asarray(xs, dtype=float)
    per_unit = (len(xs) - 1) / max(xs[-1] - xs[0], 1e-300)
    if per_unit < 2:
        raise GridTooCoarse(f"target grid has {per_unit:.2f} samples per unit translate")
    ys = push_values(lm, xs, curve)
    return HeightCurve(n, curve.stage + 1, xs, ys, kind or curve.kind)


class Tower:
    """Height curves from a constant seed at seed_level up to level top.

    grids=False evaluates every level pointwise (exact chains, no interpolation).
    """

    def __init__(self, seq: OstrowskiSeq, top: int, seed_level: int, seed_value, kind: str = "base",
                 policy: GridPolicy | None = None, grids: bool = True, threads: int = 1):
        if seed_level > seq.depth:
            raise DomainError(f"seed level {seed_level} exceeds expansion depth {seq.depth}")
        if seed_level < top:
            raise DomainError("seed level must not lie above the top level")
        self.seq = seq
        self.top = top
        self.seed_level = seed_level
        self.seed_value = seed_value
        self.kind = kind
        self.policy = policy or GridPolicy()
        self.maps = level_maps(seq)
        self.threads = max(1, int(threads))
        self.curves: dict[int, HeightCurve] = {}
        if grids:
            for n in range(seed_level - 1, top - 1, -1):
                xs = level_grid(seq, n, self.policy)
                if xs is None:
                    continue
                ys = self._heights_chunked(n, xs)
                self.curves[n] = HeightCurve(n, seed_level - n, xs, ys, kind)

    @property
    def stage(self) -> int:
        return self.seed_level - self.top

    def _heights_chunked(self, n, xs):
        if self.threads == 1 or len(xs) < 4096:
            return self.heights(n, xs)
        parts = np.array_split(xs, self.threads)
        with ThreadPoolExecutor(self.threads) as ex:
            res = list(ex.map(lambda p: self.heights(n, p), parts))
        return np.concatenate(res)

    def heights(self, n: int, x) -> np.ndarray:
        """Float heights at level n for float abscissae x."""
        x = np.asarray(x, dtype=float)
        if n == self.seed_level:
            return np.full(x.shape, float(self.seed_value))
        c = self.curves.get(n)
        if c is not None:
            return c(x)
        lm = self.maps[n + 1]
        if lm.float_ok and math.isfinite(level_width(self.seq, n + 1)):
            return push_values(lm, x, lambda xm: self.heights(n + 1, xm))
        with mpmath.workprec(self.seq.precision_bits):
            return np.array([float(self.height_mp(n, mpmath.mpf(float(v)))) for v in x.ravel()]).reshape(x.shape)

    def height_mp(self, n: int, x):
        """Scalar mpmath height at level n (uses grids where present)."""
        if n == self.seed_level:
            return mpmath.mpf(self.seed_value)
        c = self.curves.get(n)
        if c is not None:
            return mpmath.mpf(float(c(float(x))))
        lm = self.maps[n + 1]
        cands = _descend_mp(lm, x)
        hs = [self.height_mp(n + 1, xm) for xm in cands]
        h = min(hs)
        if mpmath.isinf(h):
            return mpmath.inf
        return y_level_mp(lm, cands[0], h)[1]

    def curve(self, n: int | None = None) -> HeightCurve:
        n = self.top if n is None else n
        if n not in self.curves:
            raise GridTooCoarse(f"level {n} was evaluated pointwise; no grid curve")
        return self.curves[n]


def _seed_base(seq, n, depth):
    if depth < 0:
        raise DomainError("depth must be >= 0")
    k = n + depth
    if k > seq.depth:
        raise DomainError(f"need expansion depth >= {k}, have {seq.depth}")
    return k


def base_tower(seq: OstrowskiSeq, n: int, depth: int, policy=None, grids=True, threads=1,
               seed_value=-1.0, kind="base") -> Tower:
    k = _seed_base(seq, n, depth)
    return Tower(seq, n, k, seed_value, kind, policy, grids, threads)


def base_function(seq: OstrowskiSeq, n: int, depth: int, policy: GridPolicy | None = None,
                  threads: int = 1, diagnose: bool = True) -> HeightCurve:
    """b^depth_n sampled on the level-n grid, from the flat seed -1 at level n + depth."""
    t = base_tower(seq, n, depth, policy, threads=threads)
    c = t.curve(n)
    diag = {"depth": depth, "seed_level": t.seed_level}
    if diagnose and depth > 0:
        prev = base_tower(seq, n, depth - 1, policy, threads=threads).heights(n, c.xs)
        diag["last_change"] = float(np.max(np.abs(c.ys - prev)))
        diag["monotone"] = bool(np.all(c.ys >= prev - 1e-9))
    return HeightCurve(n, depth, c.xs, c.ys, "base", diag)


def peak_seed(seq: OstrowskiSeq, k: int, c_seed: float = 2.0) -> float:
    """B(alpha_{k+1}, beta_{k+1}) / 2 pi + c_seed, the peak seed at level k (inf if not Brjuno)."""
    start = min(k + 1, seq.depth)
    with mpmath.workprec(seq.precision_bits):
        b = brjuno_sum(seq, "bicritical", start=start).upper
    if not mpmath.isfinite(b):
        return INF
    return float(b) / TWO_PI + c_seed


def peak_tower(seq: OstrowskiSeq, n: int, depth: int, policy=None, grids=True, threads=1) -> Tower:
    policy = policy or GridPolicy()
    k = _seed_base(seq, n, depth)
    seed = peak_seed(seq, k, policy.c_seed)
    t = Tower(seq, n, k, seed, "peak", policy, grids, threads)
    t.seed_check = _check_peak_seed(seq, t, policy)
    return t


def _check_peak_seed(seq, t: Tower, policy) -> dict:
    """p^1 <= p^0 one level below the seed; warn when the seed constant is too small."""
    k = t.seed_level
    if k - 1 < t.top or not math.isfinite(t.seed_value):
        return {"checked": False}
    below = peak_seed(seq, k - 1, policy.c_seed)
    c = t.curves.get(k - 1)
    if c is not None:
        top = float(np.max(c.ys))
    else:
        xs = np.linspace(0.0, min(level_width(seq, k - 1), 64.0), 257)
        top = float(np.max(t.heights(k - 1, xs)))
    ok = top <= below + 1e-9
    if not ok:
        warnings.warn(f"peak seed constant {policy.c_seed} too small: p^1 max {top:.4g} > p^0 {below:.4g}",
                      RuntimeWarning, stacklevel=3)
    return {"checked": True, "ok": ok, "p1_max": top, "p0": below}


def peak_function(seq: OstrowskiSeq, n: int, depth: int, policy: GridPolicy | None = None,
                  threads: int = 1) -> HeightCurve:
    """p^depth_n sampled on the level-n grid."""
    t = peak_tower(seq, n, depth, policy, threads=threads)
    c = t.curve(n)
    return HeightCurve(n, depth, c.xs, c.ys, "peak", {"seed": t.seed_value, **t.seed_check})


def height_at(seq: OstrowskiSeq, x, depth: int, level: int = -1, seed_value=-1.0):
    """Exact pointwise b^depth at one abscissa, in mpmath (no grids)."""
    t = base_tower(seq, level, depth, grids=False, seed_value=seed_value)
    with mpmath.workprec(seq.precision_bits):
        return t.height_mp(level, mpmath.mpf(x))


def height_along_chain(seq: OstrowskiSeq, chain, depth: int, seed_value=-1.0):
    """Height at level -1 along a prescribed abscissa chain x_0, x_1, ... (mpmath).

    chain[n] is the abscissa at level n; the push uses Im Y_{n+1}(x_{n+1} + i h).
    Used where the descent x -> (x - l) / alpha would lose all bits.
    """
    k = _seed_base(seq, -1, depth)
    maps = level_maps(seq)
    with mpmath.workprec(seq.precision_bits):
        h = mpmath.mpf(seed_value)
        for n in range(k - 1, -2, -1):
            h = y_level_mp(maps[n + 1], chain[n + 1], h)[1]
        return h


@dataclass(frozen=True)
class ModelSet:
    angles: np.ndarray
    outer_radius: np.ndarray
    inner_gap_radius: np.ndarray | None
    depth: int
    meta: dict = field(default_factory=dict, compare=False)

    def rows(self):
        inner = self.inner_gap_radius
        for i, a in enumerate(self.angles):
            yield (float(a), float(self.outer_radius[i]), None if inner is None else float(inner[i]))

    def radius_at(self, angle: float) -> float:
        """Outer radius at the nearest sampled angle."""
        n = len(self.angles)
        i = int(round((angle % 1.0) * n)) % n
        return float(self.outer_radius[i])

    def polar_points(self) -> np.ndarray:
        return self.outer_radius * np.exp(2j * np.pi * self.angles)


def angle_abscissae(n_angles: int) -> tuple[np.ndarray, np.ndarray]:
    """Angles k/N and their level -1 abscissae x = -angle mod 1."""
    k = np.arange(n_angles)
    angles = k / n_angles
    xs = np.where(k == 0, 0.0, (n_angles - k) / n_angles)
    return angles, xs


def radius_at_angle(seq: OstrowskiSeq, angle, depth: int, policy: GridPolicy | None = None) -> np.ndarray:
    """Outer radius e^{-2 pi b_{-1}(-angle mod 1)} evaluated off the angle grid."""
    xs = np.mod(-np.atleast_1d(np.asarray(angle, dtype=float)), 1.0)
    b = base_tower(seq, -1, depth, policy).heights(-1, xs)
    return np.exp(-TWO_PI * b)


def beta_point_check(seq: OstrowskiSeq, depth: int, tol: float = 1e-6) -> dict:
    """Radius at both candidate beta angles (+beta and -beta mod 1) and which is 1 within tol."""
    with mpmath.workprec(seq.precision_bits):
        beta = float(mpmath.fmod(seq.deltas[0] * seq.betas[0] + 1, 1))
    r_plus, r_minus = radius_at_angle(seq, [beta, -beta], depth)
    holds = [name for name, r in (("+beta", r_plus), ("-beta", r_minus)) if abs(r - 1.0) <= tol]
    return {"beta": beta, "radius_plus": float(r_plus), "radius_minus": float(r_minus), "holds": holds}


def _is_brjuno(seq: OstrowskiSeq) -> bool:
    with mpmath.workprec(seq.precision_bits):
        return bool(brjuno_sum(seq).finite)


def model_set(seq: OstrowskiSeq, depth: int, angle_samples: int = 4096, policy: GridPolicy | None = None,
              threads: int = 1, with_peak: bool | None = None) -> ModelSet:
    """Radial description of M: radius e^{-2 pi b_{-1}} at angle -x mod 1.

    Radii are not clipped to 1: at finite depth b_{-1} can dip slightly below 0.
    """
    angles, xs = angle_abscissae(angle_samples)
    bt = base_tower(seq, -1, depth, policy, threads=threads)
    b = bt.heights(-1, xs)
    outer = np.exp(-TWO_PI * b)
    inner = None
    if with_peak is None:
        with_peak = _is_brjuno(seq)
    meta = {"depth": depth, "angle_samples": angle_samples}
    if with_peak:
        pt = peak_tower(seq, -1, depth, policy, threads=threads)
        p = np.maximum(pt.heights(-1, xs), b)
        inner = np.exp(-TWO_PI * p)
        meta["peak_seed"] = pt.seed_check
    return ModelSet(angles, outer, inner, depth, meta)


def level_set_seeds(seq: OstrowskiSeq, y: float, upto: int) -> list[float]:
    """y_{-1} = y and y_{n+1} = Im Y^{-1}_{n+1}(i y_n) for n + 1 <= upto."""
    if y < 0:
        raise DomainError("level-set height must be >= 0")
    maps = level_maps(seq)
    out = [float(y)]
    for n in range(0, upto + 1):
        lm = maps[n]
        if lm.float_ok:
            out.append(float(y_level_inverse(lm, np.array(0.0), np.array(out[-1]))[1]))
        else:
            with mpmath.workprec(seq.precision_bits):
                out.append(float(y_level_inverse_mp(lm, 0, out[-1])[1]))
    return out


def sub_level_set(seq: OstrowskiSeq, y: float, depth: int, angle_samples: int = 4096,
                  policy: GridPolicy | None = None, threads: int = 1) -> ModelSet:
    """The invariant subset at t = e^{-2 pi y}: seed y_k - 1 at level k = depth - 1."""
    k = _seed_base(seq, -1, depth)
    seeds = level_set_seeds(seq, y, k)
    angles, xs = angle_abscissae(angle_samples)
    t = Tower(seq, -1, k, seeds[k + 1] - 1.0, "level-set", policy, True, threads)
    b = t.heights(-1, xs)
    return ModelSet(angles, np.exp(-TWO_PI * b), None, depth, {"y": y, "t": math.exp(-TWO_PI * y),
                                                                "seed": seeds[k + 1] - 1.0})


def hair_accumulation_check(curve: HeightCurve, window: int = 8) -> dict:
    """Worst one-sided recurrence gap of heights at grid scale.

    For each sample, the smallest |b(x') - b(x)| over the window samples on
    each side; the reported delta is the worst over samples and sides.
    """
    ys = np.asarray(curve.ys, dtype=float)
    n = len(ys)
    left = np.full(n, np.inf)
    right = np.full(n, np.inf)
    for k in range(1, window + 1):
        d = np.abs(ys[k:] - ys[:-k]) if k < n else np.array([])
        if len(d):
            left[k:] = np.minimum(left[k:], d)
            right[:-k] = np.minimum(right[:-k], d)
    inner = slice(window, n - window) if n > 2 * window else slice(0, n)
    gaps = np.maximum(left[inner], right[inner])
    gaps = gaps[np.isfinite(gaps)]
    worst = float(np.max(gaps)) if len(gaps) else 0.0
    return {"delta": worst, "window": window, "spacing": curve.spacing,
            "median_delta": float(np.median(gaps)) if len(gaps) else 0.0}


def hausdorff_radial(a: ModelSet, b: ModelSet) -> float:
    """sup over angles of |r_a - r_b|: an upper bound for the Hausdorff distance of two
    radially filled sets sampled on the same angle grid."""
    if len(a.angles) != len(b.angles):
        raise DomainError("model sets use different angle grids")
    return float(np.max(np.abs(a.outer_radius - b.outer_radius)))
