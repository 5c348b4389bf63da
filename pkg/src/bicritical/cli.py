"""Command line entry point: ``bicritical <subcommand> ...``.

Every artifact carries a header with the library version and the run
configuration (thread count excluded, so outputs do not depend on it).
Floats are written with ``repr``, the shortest decimal that round-trips a
double; mpmath values are written with enough digits to round-trip at the
working precision. Files are written to a temporary sibling and renamed.

PGM output is binary 16-bit grayscale (P5, maxval 65535, big-endian, no
gamma). A pixel is 65535 when its polar radius is at most the outer radius
at the nearest sampled angle, else 0; the pixel grid covers
[-extent, extent]^2 with row 0 at the top.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np
from mpmath.libmp import repr_dps

from . import __version__
from .arithmetic import (
    default_precision,
    gauss_residuals,
    ostrowski_expand,
    parse_param,
    reconstruct_beta,
)
from .classify import ClassifyPolicy, classify, nonequivalence_witness
from .coords import CoordParams, y_rs
from .dynamics import orbit_of_one, renorm_verify
from .errors import BicriticalError
from .model import GridPolicy, model_set

FORMATS = ("csv", "json", "pgm")


@dataclass
class RunConfig:
    command: str
    precision_bits: int
    depth: int | None = None
    depth_used: int | None = None
    grid: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    policy: dict = field(default_factory=dict)
    out: str = "json"
    seed: int | None = None
    inputs: dict = field(default_factory=dict)

    def header(self) -> dict:
        return {"library": "bicritical", "version": __version__, "config": asdict(self)}


# ----------------------------------------------------------------- formatting

def fmt(x) -> str:
    """Shortest round-trip text for a number."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, mpmath.mpf):
        if mpmath.isinf(x) or mpmath.isnan(x):
            return str(float(x))
        return mpmath.nstr(x, repr_dps(mpmath.mp.prec), min_fixed=-4, max_fixed=16)
    return repr(float(x))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.ndarray,)):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, mpmath.mpf):
        return fmt(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def render_json(cfg: RunConfig, payload) -> bytes:
    doc = {"header": cfg.header(), "result": payload}
    return (json.dumps(_jsonable(doc), indent=1, sort_keys=True) + "\n").encode()


def render_csv(cfg: RunConfig, columns, rows) -> bytes:
    buf = io.StringIO()
    buf.write("# " + json.dumps(_jsonable(cfg.header()), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue().encode()


def render_pgm(cfg: RunConfig, mset, pixels: int, extent: float) -> bytes:
    c = (np.arange(pixels) + 0.5) / pixels * 2 * extent - extent
    xx, yy = np.meshgrid(c, -c)
    rad = np.hypot(xx, yy)
    ang = np.mod(np.arctan2(yy, xx) / (2 * np.pi), 1.0)
    n = len(mset.angles)
    idx = np.rint(ang * n).astype(np.int64) % n
    inside = rad <= mset.outer_radius[idx]
    img = np.where(inside, 65535, 0).astype(">u2")
    comment = json.dumps(_jsonable(cfg.header()), sort_keys=True)
    head = f"P5\n# {comment}\n{pixels} {pixels}\n65535\n".encode()
    return head + img.tobytes()


def write_atomic(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=d)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ----------------------------------------------------------------- subcommands

def _seq(args, depth):
    alpha = parse_param(args.alpha, args.precision)
    beta = parse_param(args.beta, args.precision)
    return ostrowski_expand(alpha, beta, depth)


def _depth_used(seq, wanted: int, margin: int = 0) -> int:
    """Cap the model depth by what the expansion supports (decimal inputs can
    run out of trusted bits); the cap is reported in the output header."""
    d = min(wanted, seq.depth - margin)
    if d < 1:
        raise BicriticalError(f"expansion only reached depth {seq.depth}; need at least {1 + margin}")
    if d < wanted:
        print(f"bicritical: note: expansion truncated at depth {seq.depth}; using model depth {d}",
              file=sys.stderr)
    return d


def _grid_policy(args) -> GridPolicy:
    return GridPolicy(base_density=args.base_density, c_seed=args.c_seed)


def _config(args, inputs=None, **kw) -> RunConfig:
    if inputs is None:
        inputs = {k: getattr(args, k) for k in ("alpha", "beta", "r", "s") if getattr(args, k, None) is not None}
    return RunConfig(command=args.command, precision_bits=args.precision, out=args.out, inputs=inputs, **kw)


def cmd_expand(args):
    seq = _seq(args, args.depth)
    cfg = _config(args, depth=args.depth)
    with mpmath.workprec(seq.precision_bits):
        ra, rb = gauss_residuals(seq)
        res = {
            "expansion": seq.to_json(),
            "reconstructed_beta": reconstruct_beta(seq),
            "gauss_residual_max": [max(ra, default=0), max(rb, default=0)],
        }
        if args.out == "csv":
            rows = [(n, seq.a(n - 1), seq.eps[n], seq.alphas[n], seq.b(n - 1), seq.deltas[n],
                     seq.betas[n]) for n in range(seq.depth + 1)]
            return render_csv(cfg, ["n", "a_{n-1}", "eps_n", "alpha_n", "b_{n-1}", "delta_n", "beta_n"], rows)
        return render_json(cfg, res)


def cmd_curve(args):
    p = CoordParams(args.r, args.s)
    x_max = args.x_max if args.x_max is not None else 1.0 / args.r
    xs = np.linspace(args.x_min, x_max, args.x_samples)
    ys = np.linspace(args.y_min, args.y_max, args.y_samples)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    re, im = y_rs(p, xx.ravel(), yy.ravel())
    cfg = _config(args, grid={"x_min": args.x_min, "x_max": x_max, "x_samples": args.x_samples,
                              "y_min": args.y_min, "y_max": args.y_max, "y_samples": args.y_samples})
    rows = list(zip(xx.ravel(), yy.ravel(), re, im))
    if args.out == "csv":
        return render_csv(cfg, ["x", "y", "re_Y", "im_Y"], rows)
    return render_json(cfg, {"columns": ["x", "y", "re_Y", "im_Y"], "rows": rows})


def cmd_set(args):
    seq = _seq(args, args.depth + 4)
    d = _depth_used(seq, args.depth)
    pol = _grid_policy(args)
    mset = model_set(seq, d, args.angles, pol, threads=args.threads)
    cfg = _config(args, depth=args.depth, depth_used=d, grid={"angles": args.angles, **asdict(pol), "pixels": args.pixels,
                                                 "extent": args.extent})
    if args.out == "pgm":
        return render_pgm(cfg, mset, args.pixels, args.extent)
    rows = list(mset.rows())
    if args.out == "csv":
        return render_csv(cfg, ["angle", "outer_radius", "inner_gap_radius"], rows)
    return render_json(cfg, {"columns": ["angle", "outer_radius", "inner_gap_radius"], "rows": rows,
                             "meta": mset.meta})


def cmd_orbit(args):
    seq = _seq(args, args.depth + 4)
    d = _depth_used(seq, args.depth)
    k = args.k if args.k is not None else int(1 / float(seq.alphas[0]))
    recs = orbit_of_one(seq, k, depth=d)
    cfg = _config(args, depth=args.depth, depth_used=d, grid={"k": k})
    rows = [(r.k, r.point.real, r.point.imag, r.modulus, r.predicted, r.ratio) for r in recs]
    cols = ["k", "re", "im", "modulus", "predicted", "ratio"]
    if args.out == "csv":
        return render_csv(cfg, cols, rows)
    return render_json(cfg, {"columns": cols, "rows": rows})


def cmd_renorm(args):
    seq = _seq(args, args.depth + 6)
    d = _depth_used(seq, args.depth, margin=4)
    rep = renorm_verify(seq, d, args.samples, args.seed, policy=_grid_policy(args))
    cfg = _config(args, depth=args.depth, depth_used=d, seed=args.seed, grid={"samples": args.samples})
    return render_json(cfg, rep.to_json())


def _load_policy(path) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        return json.load(fh)


def cmd_classify(args):
    pdict = _load_policy(args.policy_file)
    policy = ClassifyPolicy.from_dict(pdict)
    seq = _seq(args, args.depth)
    d = _depth_used(seq, args.depth)
    v = classify(seq, d, policy=policy)
    cfg = _config(args, depth=args.depth, depth_used=d, policy=asdict(policy))
    return render_json(cfg, v.to_json())


def cmd_witness(args):
    with open(args.alpha_expansion) as fh:
        text = fh.read()
    policy = ClassifyPolicy.from_dict(_load_policy(args.policy_file))
    alpha = parse_param(text, args.precision)
    seq = ostrowski_expand(alpha, parse_param("0", args.precision), args.depth)
    rep = nonequivalence_witness(seq, args.depth, policy=policy)
    cfg = _config(args, depth=args.depth, policy=asdict(policy),
                  inputs={"alpha_expansion": json.loads(text)})
    return render_json(cfg, rep.to_json())


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bicritical", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"bicritical {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("json",), default="json"):
        p.add_argument("--precision", type=int, default=default_precision(), help="working precision in bits")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--out", choices=formats, default=default)
        p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")

    def params(p):
        p.add_argument("--alpha", required=True, help="decimal, surd '(p+q√d)/e', expansion JSON or @file")
        p.add_argument("--beta", default="0")
        p.add_argument("--depth", type=int, default=10)

    def grid(p):
        p.add_argument("--base-density", type=int, default=GridPolicy.base_density)
        p.add_argument("--c-seed", type=float, default=GridPolicy.c_seed)

    p = sub.add_parser("expand", help="expansion of (alpha, beta)")
    params(p)
    common(p, ("json", "csv"))
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("curve", help="sample Y_{r,s} on a grid")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--x-min", type=float, default=0.0)
    p.add_argument("--x-max", type=float, default=None, help="default 1/r")
    p.add_argument("--y-min", type=float, default=-1.0)
    p.add_argument("--y-max", type=float, default=1.0)
    p.add_argument("--x-samples", type=int, default=65)
    p.add_argument("--y-samples", type=int, default=9)
    common(p, ("csv", "json"), "csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("set", help="radial description of the model set")
    params(p)
    grid(p)
    p.add_argument("--angles", type=int, default=4096)
    p.add_argument("--pixels", type=int, default=512)
    p.add_argument("--extent", type=float, default=1.1)
    common(p, FORMATS, "csv")
    p.set_defaults(func=cmd_set)

    p = sub.add_parser("orbit", help="orbit of +1 under the toy map")
    params(p)
    p.add_argument("--k", type=int, default=None, help="last iterate (default floor(1/alpha_0))")
    common(p, ("csv", "json"), "csv")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("renorm-verify", help="compare the return map with the renormalised toy map")
    params(p)
    grid(p)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_renorm)

    p = sub.add_parser("classify", help="Jordan / hairy / bouquet verdict")
    params(p)
    p.add_argument("--policy-file", default=None)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="beta with bounded heights where beta = 0 diverges")
    p.add_argument("--alpha-expansion", required=True, help="JSON file with the expansion of alpha")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--policy-file", default=None)
    common(p)
    p.set_defaults(func=cmd_witness)
    return ap


def _validate(ap, args):
    for name in ("depth", "angles", "samples", "pixels", "x_samples", "y_samples", "base_density"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name == "depth" else 1):
            ap.error(f"--{name.replace('_', '-')} must be positive")
    if args.precision < 64:
        ap.error("--precision must be at least 64")
    if args.threads < 1:
        ap.error("--threads must be >= 1")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        _validate(ap, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data = args.func(args)
        write_atomic(args.output, data)
    except (BicriticalError, ValueError, ArithmeticError, OSError) as exc:
        print(f"bicritical: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
