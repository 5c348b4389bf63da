"""Expansion of (alpha, beta), arithmetic profiles, Brjuno sums and Herman checks."""
from .brjuno import BrjunoEstimate, brjuno_sum, m_height, q_alpha
from .expansion import (
    DEFAULT_PRECISION,
    PRECISION_ENV,
    ExplicitExpansion,
    OstrowskiSeq,
    RealParam,
    default_precision,
    dumps_seq,
    gauss_residuals,
    nearest_int_dist,
    ostrowski_expand,
    param_from_value,
    parse_expansion,
    parse_param,
    reconstruct_beta,
    seq_from_arrays,
)
from .herman import (
    HermanReport,
    LevelVerdict,
    herman_fwd,
    herman_fwd_uni,
    herman_inv,
    herman_inv_uni,
    herman_star_check,
    herman_tilde_inv,
)
from .surd import Surd, parse_surd

__all__ = [
    "BrjunoEstimate", "DEFAULT_PRECISION", "ExplicitExpansion", "HermanReport", "LevelVerdict",
    "OstrowskiSeq", "PRECISION_ENV", "RealParam", "Surd", "brjuno_sum", "default_precision",
    "dumps_seq", "gauss_residuals", "herman_fwd", "herman_fwd_uni", "herman_inv",
    "herman_inv_uni", "herman_star_check", "herman_tilde_inv", "m_height", "nearest_int_dist",
    "ostrowski_expand", "param_from_value", "parse_expansion", "parse_param", "parse_surd",
    "q_alpha", "reconstruct_beta", "seq_from_arrays",
]
