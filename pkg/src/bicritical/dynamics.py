"""The toy map on the model, orbits of +1, and renormalisation.

Points of the model are handled in level -1 coordinates w = x + iy; the disk
picture is z = conj(e^{2 pi i w}), so angle = -x mod 1 and |z| = e^{-2 pi y}.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .arithmetic.brjuno import q_alpha
from .arithmetic.expansion import OstrowskiSeq
from .coords.core import TWO_PI
from .coords.level import LevelMap, level_maps, y_level, y_level_inverse, y_level_inverse_mp, y_level_mp
from .errors import DepthExhausted, DomainError, NotInSet, ReturnNotFound
from .model import GridPolicy, Tower, angle_abscissae, base_tower, marker_abscissa, model_set


# ----------------------------------------------------------------- one level, scalar

def _up(lm: LevelMap, x: float, y: float) -> tuple[float, float]:
    if lm.float_ok:
        re, im = y_level(lm, np.array(x), np.array(y))
        return float(re), float(im)
    re, im = y_level_mp(lm, x, y)
    return float(re), float(im)


def _bottom(lm: LevelMap, x: float) -> float:
    """Im Y_n(x - i), the lowest image height over abscissa x."""
    if lm.float_ok:
        return float(y_level(lm, np.array(x), np.array(-1.0))[1])
    return float(y_level_mp(lm, x, -1)[1])


def _down(lm: LevelMap, re: float, im: float, slack: float) -> tuple[float, float]:
    """Y_n^{-1}(re + i im); heights within slack below the image are clamped."""
    if lm.float_ok:
        x = float(-re / (lm.eps * lm.r))
    else:
        with mpmath.workprec(128):
            x = float(-mpmath.mpf(re) / (lm.eps * lm.r_mp))
    floor = _bottom(lm, x)
    if im < floor:
        if floor - im > slack:
            raise NotInSet(f"point lies {floor - im:.3g} below the level {lm.level} image")
        return x, -1.0
    if lm.float_ok:
        xi, yi = y_level_inverse(lm, np.array(re), np.array(im))
        return float(xi), float(yi)
    xi, yi = y_level_inverse_mp(lm, re, im)
    return float(xi), float(yi)


# ----------------------------------------------------------------- the model holder

class ToyModel:
    """Expansion, level maps and the base tower used for membership tests."""

    def __init__(self, seq: OstrowskiSeq, depth: int, max_depth: int | None = None,
                 policy: GridPolicy | None = None, slack_cells: float = 1.5):
        self.seq = seq
        self.depth = depth
        self.policy = policy or GridPolicy()
        self.tower: Tower = base_tower(seq, -1, depth, self.policy)
        self.maps = level_maps(seq)
        self.max_depth = min(seq.depth, depth if max_depth is None else max_depth)
        self.slack = slack_cells / self.policy.base_density

    def base_height(self, x: float, level: int = -1) -> float:
        return float(self.tower.heights(level, np.array([x]))[0])

    def width(self, n: int) -> float:
        return 1.0 if n < 0 else 1.0 / self.maps[n].r

    def contains(self, w: complex) -> bool:
        x = w.real % 1.0
        return w.imag >= self.base_height(x) - self.slack


@dataclass(frozen=True)
class Trajectory:
    points: tuple  # w_{-1} .. w_N
    shifts: tuple  # l_{-1} .. l_{N-1}
    exit_level: int | None  # first n >= 0 with w_n in K_n, None when the depth ran out
    exit: str  # "K" or "depth"

    @property
    def depth(self) -> int:
        return len(self.points) - 2


def _shift(eps_next: int, x: float) -> int:
    """l_i from the window of eps_{i+1}: floor for -1, ceil for +1."""
    return int(math.floor(x)) if eps_next == -1 else int(math.ceil(x))


def trajectory(seq: OstrowskiSeq, w: complex, max_depth: int | None = None,
               model: ToyModel | None = None, depth: int = 12) -> Trajectory:
    """Descend w in I_{-1} through the levels until some w_n lies in K_n."""
    model = model or ToyModel(seq, min(depth, seq.depth))
    nmax = model.max_depth if max_depth is None else min(max_depth, seq.depth)
    w = complex(w)
    x, y = w.real % 1.0 if w.real != 1.0 else 1.0, w.imag
    if not model.contains(complex(x, y)):
        raise NotInSet(f"w = {w} lies below the base curve")
    pts = [complex(x, y)]
    shifts = []
    for i in range(-1, nmax):
        lm = model.maps[i + 1]
        l = _shift(lm.eps, x)
        x, y = _down(lm, x - l, y, model.slack)
        x = min(max(x, 0.0), 1.0 / lm.r)
        shifts.append(l)
        pts.append(complex(x, y))
        if x <= 1.0 / lm.r - 1.0:
            return Trajectory(tuple(pts), tuple(shifts), i + 1, "K")
    return Trajectory(tuple(pts), tuple(shifts), None, "depth")


def reconstruct(seq: OstrowskiSeq, traj: Trajectory) -> complex:
    """(Y_0 + l_{-1}) o ... o (Y_n + l_{n-1})(w_n) applied to the last point."""
    maps = level_maps(seq)
    w = traj.points[-1]
    x, y = w.real, w.imag
    for i in range(len(traj.points) - 2, -1, -1):
        x, y = _up(maps[i], x, y)
        x += traj.shifts[i]
    return complex(x, y)


@dataclass(frozen=True)
class StepResult:
    value: complex
    case: int  # 1: some w_n in K_n; 2: truncated at the deepest level
    level: int


def _compose_up(model: ToyModel, n: int, x: float, y: float) -> complex:
    for i in range(n, -1, -1):
        lm = model.maps[i]
        x, y = _up(lm, x, y)
        x += (lm.eps + 1) // 2
    return complex(x % 1.0, y)


def toy_step(seq: OstrowskiSeq, w: complex, model: ToyModel, max_depth: int | None = None) -> StepResult:
    traj = trajectory(seq, w, max_depth, model)
    last = traj.points[-1]
    if traj.exit == "K":
        n = traj.exit_level
        return StepResult(_compose_up(model, n, last.real + 1.0, last.imag), 1, n)
    n = len(traj.points) - 2
    return StepResult(_compose_up(model, n, last.real + 1.0 - model.width(n), last.imag), 2, n)


def toy_map_step(seq: OstrowskiSeq, w: complex, max_depth: int | None = None,
                 model: ToyModel | None = None, on_truncation: str = "flag") -> complex:
    """One step of the toy map in level -1 coordinates.

    Case 2 (no w_n in K_n down to max_depth) uses w_N + 1 - 1/alpha_N at the
    deepest level; with on_truncation="raise" it raises DepthExhausted
    carrying the value in .value.
    """
    model = model or ToyModel(seq, min(12, seq.depth))
    res = toy_step(seq, w, model, max_depth)
    if res.case == 2 and on_truncation == "raise":
        err = DepthExhausted(f"case 2 truncated at level {res.level}")
        err.value = res.value
        raise err
    return res.value


def disk_to_w(z: complex) -> complex:
    x = (-math.atan2(z.imag, z.real) / TWO_PI) % 1.0
    return complex(x, -math.log(abs(z)) / TWO_PI)


def w_to_disk(w: complex) -> complex:
    return complex(np.exp(-TWO_PI * w.imag) * np.exp(-1j * TWO_PI * w.real))


def toy_map_disk(seq: OstrowskiSeq, z: complex, max_depth: int | None = None,
                 model: ToyModel | None = None) -> complex:
    """The toy map on the disk model; fixes 0 and turns angles by alpha."""
    if z == 0:
        return 0j
    return w_to_disk(toy_map_step(seq, disk_to_w(complex(z)), max_depth, model))


# ----------------------------------------------------------------- orbit of +1

@dataclass(frozen=True)
class OrbitRecord:
    k: int
    point: complex
    modulus: float
    predicted: float
    ratio: float


def orbit_prediction(seq: OstrowskiSeq, k) -> float:
    """sqrt(|alpha| Q(k) Q(k - k*) / (|beta| + |alpha|)), with |alpha| = alpha_0,
    |beta| = beta_0 and k* the level-0 beta-marker (where the orbit of +1 meets
    the second critical angle)."""
    a0 = float(seq.alphas[0])
    b0 = float(seq.betas[0])
    ks = marker_abscissa(seq, 0)
    return math.sqrt(a0 * q_alpha(a0, float(k)) * q_alpha(a0, float(k) - ks) / (b0 + a0))


def orbit_of_one(seq: OstrowskiSeq, K: int, max_depth: int | None = None,
                 model: ToyModel | None = None, depth: int = 10) -> list[OrbitRecord]:
    model = model or ToyModel(seq, min(depth, seq.depth))
    w = 0j
    out = []
    for k in range(K + 1):
        if k:
            w = toy_step(seq, w, model, max_depth).value
        mod = math.exp(-TWO_PI * w.imag)
        pred = orbit_prediction(seq, k)
        out.append(OrbitRecord(k, w_to_disk(w), mod, pred, mod / pred))
    return out


def ratio_spread(records) -> float:
    r = [rec.ratio for rec in records]
    return max(r) / min(r)


# ----------------------------------------------------------------- renormalisation

def conjugate_seq(seq: OstrowskiSeq) -> OstrowskiSeq:
    """Expansion of (-alpha, -beta): only the level-0 signs and the integer parts flip."""
    return dataclasses.replace(
        seq,
        eps=(-seq.eps[0],) + tuple(seq.eps[1:]),
        deltas=(-seq.deltas[0],) + tuple(seq.deltas[1:]),
        a_coef=(-seq.a_coef[0],) + tuple(seq.a_coef[1:]),
        b_coef=(-seq.b_coef[0],) + tuple(seq.b_coef[1:]),
        source=seq.source + "+conj",
    )


def renormalise_params(seq: OstrowskiSeq) -> OstrowskiSeq:
    """Shift the expansion by one level.

    For alpha in (0, 1/2) this is the expansion of (-1/alpha, beta/alpha):
    eps'_0 = -eps_1, delta'_0 = eps_0 delta_0 delta_1, and every deeper entry
    is the next one of seq. Level maps of the result are Y'_n = Y_{n+1} for
    n >= 1 and Y'_0 = -conj(Y_1).
    """
    if seq.depth < 1:
        raise DomainError("renormalisation needs expansion depth >= 1")
    e0, d0 = seq.eps[0], seq.deltas[0]
    period = seq.alpha_period
    if period is not None:
        period = (max(period[0] - 1, 0), period[1])
    return dataclasses.replace(
        seq,
        depth=seq.depth - 1,
        alphas=tuple(seq.alphas[1:]),
        betas=tuple(seq.betas[1:]),
        eps=(-seq.eps[1],) + tuple(seq.eps[2:]),
        deltas=(e0 * d0 * seq.deltas[1],) + tuple(seq.deltas[2:]),
        a_coef=(-e0 * seq.a_coef[1],) + tuple(seq.a_coef[2:]),
        b_coef=(e0 * d0 * seq.b_coef[1],) + tuple(seq.b_coef[2:]),
        trusted_bits=tuple(seq.trusted_bits[1:]),
        alpha_period=period,
        exact_alphas=None if seq.exact_alphas is None else tuple(seq.exact_alphas[1:]),
        exact_betas=None if seq.exact_betas is None else tuple(seq.exact_betas[1:]),
    )


def level_data(seq: OstrowskiSeq) -> tuple:
    """Everything that determines the level maps (integer parts excluded)."""
    return (tuple(seq.alphas), tuple(seq.betas), tuple(seq.eps), tuple(seq.deltas), tuple(seq.a_coef[1:]))


def _in_sector(x: float, a0: float) -> bool:
    """angle -x mod 1 lies in [0, alpha_0)."""
    ang = (-x) % 1.0
    return ang < a0


@dataclass
class RenormReport:
    depth: int
    samples: int
    point_max: float
    point_mean: float
    set_radial: float
    set_boundary_hausdorff: float
    grid_cell: float
    return_times: list = field(default_factory=list)
    conjugated: bool = False
    truncated_cases: int = 0

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def return_map(model: ToyModel, w0: complex, cap: int) -> tuple[complex, int]:
    """First return of psi(w0) to the sector, read back in level-0 coordinates."""
    lm0 = model.maps[0]
    a0 = lm0.r
    x, y = _up(lm0, w0.real, w0.imag)
    v = complex((x + (lm0.eps + 1) // 2) % 1.0, y)
    for k in range(1, cap + 1):
        v = toy_step(model.seq, v, model).value
        if _in_sector(v.real, a0):
            l = _shift(lm0.eps, v.real)
            xr, yr = _down(lm0, v.real - l, v.imag, model.slack)
            return complex(xr % 1.0 if xr < 1.0 - 1e-12 else 0.0, yr), k
    raise ReturnNotFound(f"no return to the sector within {cap} iterates")


def _deep_samples(seq: OstrowskiSeq, count: int, levels: int, rng) -> list[complex]:
    """Level-0 points with Re in [0, 1) whose trajectories stay in J_i minus K_i
    for levels 1 .. levels - 1 and reach level `levels` anywhere in J minus K.

    Taking `levels` equal to the truncation depth probes exactly the points
    where the deepest-level representative of case 2 is used."""
    maps = level_maps(seq)
    out = []
    for _ in range(count):
        L = levels
        lm = maps[L]
        x = 1.0 / lm.r - rng.uniform(0.05, 0.95)
        y = rng.uniform(0.5, 1.5)
        for i in range(L - 1, 0, -1):
            nxt = maps[i + 1]
            x, y = _up(nxt, x, y)
            x += seq.a(i) - 2 if nxt.eps == -1 else seq.a(i) + 1
        x, y = _up(maps[1], x, y)
        x += 0 if maps[1].eps == -1 else 1
        out.append(complex(x % 1.0, y))
    return out


def renorm_verify(seq: OstrowskiSeq, depth: int, samples: int = 64, seed: int = 0,
                  angle_samples: int = 1024, policy: GridPolicy | None = None) -> RenormReport:
    """Compare the sector return map, read in level-0 coordinates, with the toy
    map of the renormalised parameters, pointwise and as sets."""
    conj = seq.eps[0] != 1
    if conj:
        seq = conjugate_seq(seq)
    if seq.depth < depth + 4:
        raise DomainError(f"need expansion depth >= {depth + 4}")
    policy = policy or GridPolicy()
    rng = np.random.default_rng(seed)
    m0 = ToyModel(seq, depth, policy=policy)
    seq1 = renormalise_params(seq)
    m1 = ToyModel(seq1, depth, policy=policy)
    cap = 4 * (int(seq.a(0)) + 2)

    pts = []
    n_gen = samples - samples // 2
    while len(pts) < n_gen:
        x = rng.uniform(0.0, 1.0)
        b0 = m0.base_height(x, 0)
        b1 = m1.base_height((-x) % 1.0)
        pts.append(complex(x, max(b0, b1) + rng.uniform(0.02, 0.5)))
    pts += _deep_samples(seq, samples // 2, depth, rng)

    dists, times, trunc = [], [], 0
    for w in pts:
        e_img, k = return_map(m0, w, cap)
        times.append(k)
        u = complex((-w.real) % 1.0, w.imag)
        res = toy_step(seq1, u, m1)
        trunc += res.case == 2
        direct = complex((-res.value.real) % 1.0, res.value.imag)
        za = np.exp(2j * np.pi * e_img)
        zb = np.exp(2j * np.pi * direct)
        dists.append(abs(za - zb))

    angles, xs = angle_abscissae(angle_samples)
    b0 = base_tower(seq, -1, depth, policy).heights(0, angles)
    r_ren = np.exp(-TWO_PI * b0)
    ms1 = model_set(seq1, depth, angle_samples, policy, with_peak=False)
    radial = float(np.max(np.abs(r_ren - ms1.outer_radius)))
    pa = np.column_stack([r_ren * np.cos(TWO_PI * angles), r_ren * np.sin(TWO_PI * angles)])
    pb = np.column_stack([ms1.outer_radius * np.cos(TWO_PI * angles), ms1.outer_radius * np.sin(TWO_PI * angles)])
    hd = max(directed_hausdorff(pa, pb)[0], directed_hausdorff(pb, pa)[0])
    return RenormReport(depth, len(pts), float(np.max(dists)), float(np.mean(dists)), radial, float(hd),
                        TWO_PI / policy.base_density, times, conj, trunc)


# ----------------------------------------------------------------- recurrence

def recurrence_probe(seq: OstrowskiSeq, z: complex, depth: int, eps: float, cap: int = 10_000,
                     model: ToyModel | None = None) -> int | None:
    """First k >= 1 with |T^k(z) - z| < eps, or None when the cap is reached."""
    model = model or ToyModel(seq, min(depth, seq.depth))
    w0 = disk_to_w(complex(z))
    w = w0
    for k in range(1, cap + 1):
        w = toy_step(seq, w, model).value
        if abs(w_to_disk(w) - z) < eps:
            return k
    return None


def rotation_defect(seq: OstrowskiSeq, w: complex, model: ToyModel) -> float:
    """Distance mod 1 between the angle increment of one step and alpha."""
    alpha = float(seq.a(-1) + seq.eps[0] * seq.alphas[0]) if isinstance(seq.a(-1), int) else None
    if alpha is None:
        raise DomainError("integer part of alpha is not an integer")
    w2 = toy_step(seq, w, model).value
    inc = ((-w2.real) - (-w.real)) % 1.0
    d = (inc - alpha) % 1.0
    return min(d, 1.0 - d)
