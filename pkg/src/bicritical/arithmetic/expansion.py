"""Parameter parsing and the two-sided nearest-integer expansion of (alpha, beta).

Three input routes are supported:

* decimal strings, parsed exactly as rationals and then carried in mpmath at
  the working precision (the expansion of a rational eventually hits 0, so
  these are treated as approximations of an irrational);
* quadratic surds "(p+q√d)/e", expanded in exact field arithmetic;
* explicit coefficient lists, from which alpha_n and beta_n are recovered by
  the backward recursion 1/alpha_n = a_n + eps_{n+1} alpha_{n+1}.
"""
from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from ..errors import DomainError, PrecisionExhausted, RationalAlpha
from .surd import Surd, parse_surd

DEFAULT_PRECISION = 256
PRECISION_ENV = "BICRITICAL_PRECISION"
MIN_TRUSTED_BITS = 32
# closing value for an explicit expansion: the fixed point of a=3, eps=-1
HALF = Surd.rational(Fraction(1, 2))
GOLDEN_TAIL = "0.38196601125010515179541316563436188227969082019424"


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    bits = int(raw)
    if bits < 64:
        raise DomainError(f"{PRECISION_ENV} must be at least 64, got {bits}")
    return bits


def nearest_int_dist(x):
    """Return (d, n, eps) with x = n + eps*d, d in [0, 1/2].

    Ties d = 1/2 go to eps = +1 (n rounded down). Works for int, Fraction,
    float, mpf and Surd inputs; the type of d follows the input.
    """
    if isinstance(x, Surd):
        n = x.floor()
        f = x - n
        if f.is_rational:
            half = f.p <= Fraction(1, 2)
        else:
            half = (2 * x).floor() == 2 * n
        if half:
            return f, n, 1
        return 1 - f, n + 1, -1
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        n = math.floor(x)
        f = x - n
        return (f, n, 1) if f <= Fraction(1, 2) else (1 - f, n + 1, -1)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError("nearest_int_dist needs a finite input")
        n = math.floor(x)
        f = x - n
        return (f, n, 1) if f <= 0.5 else (1.0 - f, n + 1, -1)
    x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise DomainError("nearest_int_dist needs a finite input")
    n = mpmath.floor(x)
    f = x - n
    if f <= 0.5:
        return f, int(n), 1
    return 1 - f, int(n) + 1, -1


@dataclass(frozen=True)
class ExplicitExpansion:
    """Coefficient lists. a and b start at index -1, eps and delta at index 0.

    Entries of a / b may be huge: ints, or mpf for values beyond 2^prec.
    """

    a: tuple
    eps: tuple[int, ...]
    b: tuple | None = None
    delta: tuple[int, ...] | None = None
    tail_alpha: Any = None
    tail_beta: Any = None

    @property
    def depth(self) -> int:
        return len(self.a) - 1


@dataclass(frozen=True)
class RealParam:
    value: Any  # mpf
    source: str  # "decimal" | "surd" | "expansion"
    precision_bits: int
    exact: Surd | None = None
    expansion: ExplicitExpansion | None = None
    text: str = ""

    def __post_init__(self):
        if self.precision_bits < 64:
            raise DomainError("precision_bits must be at least 64")

    def negated(self) -> "RealParam":
        exact = -self.exact if self.exact is not None else None
        exp = None
        if self.expansion is not None:
            e = self.expansion
            exp = ExplicitExpansion(
                a=(_neg_coef(e.a[0]),) + tuple(e.a[1:]),
                eps=(-e.eps[0],) + tuple(e.eps[1:]),
                b=None if e.b is None else (_neg_coef(e.b[0]),) + tuple(e.b[1:]),
                delta=None if e.delta is None else (-e.delta[0],) + tuple(e.delta[1:]),
                tail_alpha=e.tail_alpha,
                tail_beta=e.tail_beta,
            )
        with mpmath.workprec(self.precision_bits):
            v = -self.value
        return RealParam(v, self.source, self.precision_bits, exact, exp, "-(" + self.text + ")")

    def shifted(self, k: int) -> "RealParam":
        """The parameter plus an integer k (same expansion apart from a_{-1})."""
        exact = self.exact + k if self.exact is not None else None
        exp = None
        if self.expansion is not None:
            e = self.expansion
            exp = ExplicitExpansion(
                a=(_add_coef(e.a[0], k),) + tuple(e.a[1:]), eps=e.eps, b=e.b, delta=e.delta,
                tail_alpha=e.tail_alpha, tail_beta=e.tail_beta,
            )
        with mpmath.workprec(self.precision_bits):
            v = self.value + k
        return RealParam(v, self.source, self.precision_bits, exact, exp, f"({self.text})+{k}")


def _neg_coef(c):
    return -c


def _add_coef(c, k):
    return c + k


_EXP_RE = re.compile(r"^\s*exp\((.+)\)\s*$")


def parse_coefficient(raw, prec: int):
    """An expansion coefficient: int, integer string, "1e3165" or "exp(X)".

    "exp(X)" means the integer nearest e^X; beyond 2^prec the value is kept
    as an mpf, which is integer-valued at that size anyway.
    """
    if isinstance(raw, bool):
        raise DomainError("boolean is not a coefficient")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float):
        if raw != int(raw):
            raise DomainError(f"coefficient {raw} is not an integer")
        return int(raw)
    if not isinstance(raw, str):
        raise DomainError(f"bad coefficient {raw!r}")
    s = raw.strip()
    if re.fullmatch(r"[+-]?\d+", s):
        return int(s)
    with mpmath.workprec(prec):
        m = _EXP_RE.match(s)
        try:
            v = mpmath.exp(mpmath.mpf(m.group(1))) if m else mpmath.mpf(s)
        except (ValueError, TypeError) as exc:
            raise DomainError(f"cannot parse coefficient {raw!r}") from exc
        if not mpmath.isfinite(v):
            raise DomainError(f"coefficient {raw!r} is not finite")
        if abs(v) < mpmath.mpf(2) ** (prec - 8):
            n = int(mpmath.nint(v))
            if not m and abs(v - n) > mpmath.mpf(2) ** (-prec // 2) * max(1, abs(v)):
                raise DomainError(f"coefficient {raw!r} is not an integer")
            return n
        return v


def parse_expansion(obj: dict, prec: int) -> ExplicitExpansion:
    try:
        a = tuple(parse_coefficient(c, prec) for c in obj["a"])
        eps = tuple(int(e) for e in obj["eps"])
    except KeyError as exc:
        raise DomainError(f"expansion needs key {exc}") from None
    if len(a) < 1 or len(eps) != len(a):
        raise DomainError("expansion needs len(eps) == len(a) >= 1")
    b = obj.get("b")
    delta = obj.get("delta")
    if (b is None) != (delta is None):
        raise DomainError("b and delta must be given together")
    if b is not None:
        b = tuple(parse_coefficient(c, prec) for c in b)
        delta = tuple(int(d) for d in delta)
        if len(b) != len(a) or len(delta) != len(a):
            raise DomainError("b and delta must have the same length as a")
    for sgn in eps + (delta or ()):
        if sgn not in (-1, 1):
            raise DomainError("signs must be +1 or -1")
    return ExplicitExpansion(a, eps, b, delta, obj.get("tail_alpha"), obj.get("tail_beta"))


def parse_param(text: str, precision_bits: int | None = None) -> RealParam:
    """Parse a decimal, a surd "(p+q√d)/e", or an expansion JSON object / @file."""
    prec = precision_bits or default_precision()
    t = text.strip()
    if t.startswith("@"):
        with open(t[1:], encoding="utf-8") as fh:
            t = fh.read().strip()
    if t.startswith("{"):
        try:
            obj = json.loads(t)
        except json.JSONDecodeError as exc:
            raise DomainError(f"bad expansion JSON: {exc}") from None
        exp = parse_expansion(obj, prec)
        value = _expansion_value(exp, prec)
        return RealParam(value, "expansion", prec, None, exp, t)
    s = parse_surd(t)
    if s is not None:
        return RealParam(s.to_mpf(prec), "surd", prec, s, None, t)
    try:
        fr = Fraction(t.replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse parameter {text!r}") from None
    ex = Surd.rational(fr)
    return RealParam(ex.to_mpf(prec), "decimal", prec, ex, None, t)


def param_from_value(x, prec: int | None = None) -> RealParam:
    prec = prec or default_precision()
    if isinstance(x, Surd):
        return RealParam(x.to_mpf(prec), "surd", prec, x, None, str(x))
    if isinstance(x, (int, Fraction)):
        ex = Surd.rational(x)
        return RealParam(ex.to_mpf(prec), "decimal", prec, ex, None, str(x))
    if isinstance(x, ExplicitExpansion):
        return RealParam(_expansion_value(x, prec), "expansion", prec, None, x, "expansion")
    if isinstance(x, float):
        return param_from_value(Fraction(x), prec)
    with mpmath.workprec(prec):
        v = +mpmath.mpf(x)
    return RealParam(v, "decimal", prec, None, None, mpmath.nstr(v, 20))


@dataclass(frozen=True)
class OstrowskiSeq:
    """Truncated expansion data.

    alphas, betas, eps, deltas are indexed 0..N; a_coef and b_coef are indexed
    -1..N-1 (entry k holds index k-1). trusted_bits[n] is the number of
    leading bits of alpha_n / beta_n still trusted (None means exact).
    """

    depth: int
    alphas: tuple
    betas: tuple
    eps: tuple[int, ...]
    deltas: tuple[int, ...]
    a_coef: tuple
    b_coef: tuple
    precision_bits: int
    trusted_bits: tuple
    exact: bool = False
    truncated: bool = False
    closed_tail: bool = False
    alpha_period: tuple[int, int] | None = None
    tie_events: tuple[str, ...] = ()
    source: str = "decimal"
    exact_alphas: tuple | None = field(default=None, repr=False, compare=False)
    exact_betas: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def signs(self) -> tuple[int, ...]:
        """Cumulative beta orientation sign: sigma_n = -eps_n delta_n sigma_{n-1}, sigma_{-1} = +1.

        The marked beta-point sits at abscissa sigma_n beta_n / alpha_n
        (mod 1/alpha_n) at level n.
        """
        out = []
        s = 1
        for e, d in zip(self.eps, self.deltas):
            s = -e * d * s
            out.append(s)
        return tuple(out)

    def a(self, n: int):
        return self.a_coef[n + 1]

    def b(self, n: int):
        return self.b_coef[n + 1]

    def ratio(self, n: int):
        """beta_n / alpha_n at working precision."""
        with mpmath.workprec(self.precision_bits):
            return self.betas[n] / self.alphas[n]

    def prefix(self, depth: int) -> "OstrowskiSeq":
        if depth > self.depth:
            raise DomainError(f"prefix depth {depth} exceeds {self.depth}")
        k = depth + 1
        return OstrowskiSeq(
            depth=depth,
            alphas=self.alphas[:k], betas=self.betas[:k], eps=self.eps[:k], deltas=self.deltas[:k],
            a_coef=self.a_coef[:k], b_coef=self.b_coef[:k],
            precision_bits=self.precision_bits, trusted_bits=self.trusted_bits[:k],
            exact=self.exact, truncated=self.truncated or depth < self.depth,
            closed_tail=self.closed_tail, alpha_period=self.alpha_period,
            tie_events=self.tie_events, source=self.source,
            exact_alphas=None if self.exact_alphas is None else self.exact_alphas[:k],
            exact_betas=None if self.exact_betas is None else self.exact_betas[:k],
        )

    def with_zero_beta(self) -> "OstrowskiSeq":
        z = mpmath.mpf(0)
        n = self.depth + 1
        return OstrowskiSeq(
            depth=self.depth, alphas=self.alphas, betas=(z,) * n, eps=self.eps,
            deltas=(1,) * n, a_coef=self.a_coef, b_coef=(0,) * n,
            precision_bits=self.precision_bits, trusted_bits=self.trusted_bits, exact=self.exact,
            truncated=self.truncated, closed_tail=self.closed_tail, alpha_period=self.alpha_period,
            source=self.source, exact_alphas=self.exact_alphas,
            exact_betas=None if self.exact_alphas is None else (Surd.rational(0),) * n,
        )

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "alphas": [_num_str(x) for x in self.alphas],
            "betas": [_num_str(x) for x in self.betas],
            "eps": list(self.eps),
            "deltas": list(self.deltas),
            "a_coef": [_coef_json(c) for c in self.a_coef],
            "b_coef": [_coef_json(c) for c in self.b_coef],
            "coef_index_start": -1,
            "precision_bits": self.precision_bits,
            "trusted_bits": list(self.trusted_bits),
            "exact": self.exact,
            "truncated": self.truncated,
            "closed_tail": self.closed_tail,
            "alpha_period": list(self.alpha_period) if self.alpha_period else None,
            "tie_events": list(self.tie_events),
            "source": self.source,
        }


def _num_str(x) -> str:
    return mpmath.nstr(x, 30, min_fixed=-3, max_fixed=3) if not isinstance(x, int) else str(x)


def _coef_json(c):
    if isinstance(c, int):
        return c
    return mpmath.nstr(c, 30)


def _expansion_value(exp: ExplicitExpansion, prec: int):
    alphas = _backward_alphas(exp, prec)
    with mpmath.workprec(prec):
        return exp.a[0] + exp.eps[0] * alphas[0]


def _backward_alphas(exp: ExplicitExpansion, prec: int) -> list:
    N = exp.depth
    with mpmath.workprec(prec + 32):
        tail = mpmath.mpf(exp.tail_alpha if exp.tail_alpha is not None else GOLDEN_TAIL)
        if not 0 < tail < 0.5:
            raise DomainError("tail_alpha must lie in (0, 1/2)")
        al = [None] * (N + 1)
        al[N] = tail
        for n in range(N - 1, -1, -1):
            al[n] = 1 / (exp.a[n + 1] + exp.eps[n + 1] * al[n + 1])
            if not 0 < al[n] < 0.5:
                raise DomainError(f"coefficients give alpha_{n} = {mpmath.nstr(al[n], 8)} outside (0, 1/2)")
    with mpmath.workprec(prec):
        return [+x for x in al]


def _backward_betas(exp: ExplicitExpansion, alphas: Sequence, prec: int) -> list:
    N = exp.depth
    with mpmath.workprec(prec + 32):
        tail = mpmath.mpf(exp.tail_beta if exp.tail_beta is not None else 0)
        if not 0 <= tail <= 0.5:
            raise DomainError("tail_beta must lie in [0, 1/2]")
        be = [None] * (N + 1)
        be[N] = tail
        for n in range(N - 1, -1, -1):
            be[n] = alphas[n] * (exp.b[n + 1] + exp.delta[n + 1] * be[n + 1])
            if not (0 <= be[n] <= 0.5 + mpmath.mpf(2) ** (-prec // 2)):
                raise DomainError(f"coefficients give beta_{n} = {mpmath.nstr(be[n], 8)} outside [0, 1/2]")
    with mpmath.workprec(prec):
        return [+x for x in be]


def _log2_inv(x) -> int:
    """ceil(log2(1/x)) for 0 < x < 1 without evaluating logs of huge numbers."""
    _, e = mpmath.frexp(x)  # x = m 2^e, m in [1/2, 1)
    return max(0, 1 - int(e))


def ostrowski_expand(alpha: RealParam, beta: RealParam, depth: int,
                     on_exhaustion: str = "truncate") -> OstrowskiSeq:
    """Expand (alpha, beta) to the requested depth.

    on_exhaustion = "truncate" stops early with seq.truncated set when fewer
    than MIN_TRUSTED_BITS remain; "raise" raises PrecisionExhausted instead.
    """
    if depth < 0:
        raise DomainError("depth must be >= 0")
    if on_exhaustion not in ("truncate", "raise"):
        raise DomainError("on_exhaustion must be 'truncate' or 'raise'")
    prec = max(alpha.precision_bits, beta.precision_bits)
    if alpha.source == "expansion":
        return _expand_explicit(alpha, beta, depth, prec, on_exhaustion)
    if beta.source == "expansion":
        raise DomainError("beta must be numeric when alpha is numeric")
    if alpha.exact is not None and not alpha.exact.is_rational and beta.exact is not None:
        try:
            alpha.exact._field(beta.exact)
        except ValueError:
            pass  # incompatible fields: fall through to floating expansion
        else:
            return _expand_exact(alpha.exact, beta.exact, depth, prec, alpha.source)
    return _expand_float(alpha, beta, depth, prec, on_exhaustion, alpha.source)


def _expand_exact(alpha: Surd, beta: Surd, depth: int, prec: int, source: str) -> OstrowskiSeq:
    ties = []
    al, a_m1, e0 = nearest_int_dist(alpha)
    be, b_m1, d0 = nearest_int_dist(beta)
    if al.is_zero():
        raise RationalAlpha("alpha is an integer")
    alphas, betas, eps, deltas = [al], [be], [e0], [d0]
    acoef, bcoef = [a_m1], [b_m1]
    seen = {al: 0}
    period = None
    for n in range(depth):
        inv = al.reciprocal()
        al_next, an, en = nearest_int_dist(inv)
        be_next, bn, dn = nearest_int_dist(be / al)
        if al_next == HALF:
            ties.append(f"alpha tie at level {n + 1}")
        if be_next == HALF:
            ties.append(f"beta tie at level {n + 1}")
        if al_next.is_zero():
            raise RationalAlpha(f"alpha_{n + 1} = 0: alpha is rational")
        al, be = al_next, be_next
        alphas.append(al)
        betas.append(be)
        eps.append(en)
        deltas.append(dn)
        acoef.append(an)
        bcoef.append(bn)
        if period is None:
            if al in seen:
                period = (seen[al], n + 1 - seen[al])
            else:
                seen[al] = n + 1
    N = depth
    return OstrowskiSeq(
        depth=N,
        alphas=tuple(x.to_mpf(prec) for x in alphas),
        betas=tuple(x.to_mpf(prec) for x in betas),
        eps=tuple(eps), deltas=tuple(deltas), a_coef=tuple(acoef), b_coef=tuple(bcoef),
        precision_bits=prec, trusted_bits=(None,) * (N + 1), exact=True,
        alpha_period=period, tie_events=tuple(ties), source=source,
        exact_alphas=tuple(alphas), exact_betas=tuple(betas),
    )


def _first_step(p: RealParam, prec: int):
    """Reduce mod 1 exactly when an exact value is known, so that alpha and
    alpha + 1 produce bit-identical expansions."""
    if p.exact is not None:
        d, n, e = nearest_int_dist(p.exact)
        return d.to_mpf(prec), n, e
    return nearest_int_dist(p.value)


def _expand_float(alpha: RealParam, beta: RealParam, depth: int, prec: int, on_exhaustion: str,
                  source: str) -> OstrowskiSeq:
    ties = []
    with mpmath.workprec(prec):
        al, a_m1, e0 = _first_step(alpha, prec)
        be, b_m1, d0 = _first_step(beta, prec)
        if al == 0:
            raise RationalAlpha("alpha is an integer")
        trusted = prec - 2
        alphas, betas, eps, deltas = [al], [be], [e0], [d0]
        acoef, bcoef, tb = [a_m1], [b_m1], [trusted]
        truncated = False
        for n in range(depth):
            inv = 1 / al
            al_next, an, en = nearest_int_dist(inv)
            if al_next == 0:
                raise RationalAlpha(f"alpha_{n + 1} = 0 at working precision")
            # relative error grows by 1 / (alpha_n alpha_{n+1}) per step
            loss = _log2_inv(al) + _log2_inv(al_next)
            if trusted - loss < MIN_TRUSTED_BITS:
                if on_exhaustion == "raise":
                    raise PrecisionExhausted(
                        f"only {trusted - loss} trusted bits would remain at level {n + 1}")
                truncated = True
                break
            q = be / al
            be_next, bn, dn = nearest_int_dist(q)
            if al_next == 0.5:
                ties.append(f"alpha tie at level {n + 1}")
            if be_next == 0.5:
                ties.append(f"beta tie at level {n + 1}")
            trusted -= loss
            al, be = al_next, be_next
            alphas.append(al)
            betas.append(be)
            eps.append(en)
            deltas.append(dn)
            acoef.append(an)
            bcoef.append(bn)
            tb.append(trusted)
    N = len(alphas) - 1
    return OstrowskiSeq(
        depth=N, alphas=tuple(alphas), betas=tuple(betas), eps=tuple(eps), deltas=tuple(deltas),
        a_coef=tuple(acoef), b_coef=tuple(bcoef), precision_bits=prec, trusted_bits=tuple(tb),
        truncated=truncated, tie_events=tuple(ties), source=source,
    )


def _expand_explicit(alpha: RealParam, beta: RealParam, depth: int, prec: int,
                     on_exhaustion: str) -> OstrowskiSeq:
    exp = alpha.expansion
    if depth > exp.depth:
        if on_exhaustion == "raise":
            raise PrecisionExhausted(f"explicit expansion only has depth {exp.depth}")
        depth = exp.depth
    alphas = _backward_alphas(exp, prec)
    N = exp.depth
    if exp.b is not None:
        betas = _backward_betas(exp, alphas, prec)
        bcoef, deltas = exp.b, exp.delta
    else:
        bval = beta.value if beta.source != "expansion" else None
        if bval is None:
            raise DomainError("beta expansion must be given inside the alpha expansion object")
        with mpmath.workprec(prec):
            if bval == 0:
                betas = [mpmath.mpf(0)] * (N + 1)
                bcoef, deltas = (0,) * (N + 1), (1,) * (N + 1)
            else:
                be, b_m1, d0 = nearest_int_dist(bval)
                betas, bl, dl = [be], [b_m1], [d0]
                for n in range(N):
                    be, bn, dn = nearest_int_dist(be / alphas[n])
                    betas.append(be)
                    bl.append(bn)
                    dl.append(dn)
                bcoef, deltas = tuple(bl), tuple(dl)
    k = depth + 1
    return OstrowskiSeq(
        depth=depth, alphas=tuple(alphas[:k]), betas=tuple(betas[:k]), eps=tuple(exp.eps[:k]),
        deltas=tuple(deltas[:k]), a_coef=tuple(exp.a[:k]), b_coef=tuple(bcoef[:k]),
        precision_bits=prec, trusted_bits=(prec - 2,) * k, truncated=depth < exp.depth,
        closed_tail=True, source="expansion",
    )


def seq_from_arrays(alphas, betas, eps, deltas, a_coef, b_coef, prec: int, **kw) -> OstrowskiSeq:
    """Assemble a seq from already-computed arrays (used for shifted seqs and witnesses)."""
    n = len(alphas)
    return OstrowskiSeq(
        depth=n - 1, alphas=tuple(alphas), betas=tuple(betas), eps=tuple(eps), deltas=tuple(deltas),
        a_coef=tuple(a_coef), b_coef=tuple(b_coef), precision_bits=prec,
        trusted_bits=kw.pop("trusted_bits", (prec - 2,) * n), **kw,
    )


def reconstruct_beta(seq: OstrowskiSeq):
    """Partial sum of the beta expansion, returning an approximation of beta_0.

    Uses cumulative signs: beta_0 = sum_n (prod_{1<=i<=n} delta_i) b_n prod_{i<=n} alpha_i,
    which is what unrolling beta_n / alpha_n = b_n + delta_{n+1} beta_{n+1} gives.
    """
    with mpmath.workprec(seq.precision_bits):
        total = mpmath.mpf(0)
        prod = mpmath.mpf(1)
        sign = 1
        for n in range(seq.depth):
            prod *= seq.alphas[n]
            if n >= 1:
                sign *= seq.deltas[n]
            total += sign * seq.b(n) * prod
        return total


def gauss_residuals(seq: OstrowskiSeq) -> tuple[list, list]:
    """|1/alpha_n - a_n - eps_{n+1} alpha_{n+1}| and the beta analogue, per level."""
    ra, rb = [], []
    with mpmath.workprec(seq.precision_bits):
        for n in range(seq.depth):
            al = seq.alphas[n]
            ra.append(abs(1 / al - seq.a(n) - seq.eps[n + 1] * seq.alphas[n + 1]) * al)
            rb.append(abs(seq.betas[n] / al - seq.b(n) - seq.deltas[n + 1] * seq.betas[n + 1]) * al)
    return ra, rb


def dumps_seq(seq: OstrowskiSeq) -> str:
    return json.dumps(seq.to_json(), indent=2, sort_keys=True)
