"""Local normal zeta functions of class-2 nilpotent groups, with exact arithmetic and brute-force oracles."""

from .exactalg import MPoly, RatFn, series_coefficients, substitute, invert_variables, parse_mpoly
from .flagcomb import flag_fn, flag_count, schubert_c, check_flag_funeq, FlagType
from .grouppres import (
    Presentation,
    parse_presentation,
    load_presentation,
    pfaffian,
    heisenberg,
    grenham,
    gaussian_heisenberg,
    free_class2,
    hypothesis_report,
)
from .zetacore import LocalZeta, normal_zeta_smooth, grenham_zeta, smooth_A, verify_funeq
from .oracle import ideal_counts, compare_report, lattice_sum_A

__version__ = "0.1.0"
