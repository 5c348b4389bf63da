"""Change-of-coordinates family and its per-level variants."""
from .core import (
    CoordParams,
    Piece,
    big_g,
    extrema_locations,
    g_bound_constants,
    g_r,
    height_estimate,
    im_big_g,
    im_y_rs,
    log_g,
    strip_table,
    symmetry_center,
    y_pre,
    y_pre1,
    y_rs,
    y_rs_inverse_im,
    y_rs_inverse_im_mp,
    y_rs_mp,
    y_unicritical,
)
from .level import (
    LevelMap,
    abscissa_down,
    abscissa_up,
    grand_coords,
    grand_inverse_bookkept,
    level_maps,
    y_level,
    y_level_inverse,
    y_level_inverse_mp,
    y_level_mp,
)


def g_big(p: CoordParams, x, y):
    """Alias of big_g: (Re, Im) of G_{r,s}(x + iy)."""
    return big_g(p, x, y)


__all__ = [
    "CoordParams", "LevelMap", "Piece", "abscissa_down", "abscissa_up", "big_g", "extrema_locations",
    "g_big", "g_bound_constants", "g_r", "grand_coords", "grand_inverse_bookkept", "height_estimate",
    "im_big_g", "im_y_rs", "level_maps", "log_g", "strip_table", "symmetry_center", "y_level",
    "y_level_inverse", "y_level_inverse_mp", "y_level_mp", "y_pre", "y_pre1", "y_rs",
    "y_rs_inverse_im", "y_rs_inverse_im_mp", "y_rs_mp", "y_unicritical",
]
