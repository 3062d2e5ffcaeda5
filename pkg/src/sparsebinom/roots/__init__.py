"""Zeros of f_{m,n}: bounds, certified solving, exact real-root counts."""

from .analysis import (
    ConjectureScan,
    HeuristicMatch,
    OutOfRegime,
    ParityReport,
    RootReport,
    ScanRow,
    all_roots,
    binomial_parity,
    both_odd_positions,
    certify_annulus,
    conjecture45_46_scan,
    detect_eventual_period,
    detect_period,
    expected_parity_period,
    exponent_growth_failures,
    heuristic_predictions,
    heuristic_roots,
    parity_report,
    parity_word,
    random_family_reports,
    random_lower_family,
    random_upper_family,
    real_roots,
    roots_left_of_minus_one,
    sign_at_minus_one,
)
from .bounds import (
    epsilon_threshold,
    epsilon_threshold_ok,
    exponent_growth_ok,
    in_lower_regime,
    in_upper_regime,
    lower_bound,
    lower_regime_start,
    upper_bound,
    upper_regime_label,
)
from .solver import PRECISION_LADDER, PrecisionExhausted, Solution, solve_sparse
from .sturm import STURM_DEGREE_CAP, RealRootCount, count_real_roots, isolate_negative, refine_root, sturm_chain

__all__ = [
    "OutOfRegime",
    "RootReport",
    "ScanRow",
    "ParityReport",
    "HeuristicMatch",
    "ConjectureScan",
    "all_roots",
    "certify_annulus",
    "sign_at_minus_one",
    "binomial_parity",
    "parity_word",
    "parity_report",
    "detect_period",
    "detect_eventual_period",
    "expected_parity_period",
    "both_odd_positions",
    "heuristic_predictions",
    "heuristic_roots",
    "real_roots",
    "roots_left_of_minus_one",
    "conjecture45_46_scan",
    "random_upper_family",
    "random_lower_family",
    "random_family_reports",
    "exponent_growth_failures",
    "epsilon_threshold",
    "epsilon_threshold_ok",
    "exponent_growth_ok",
    "in_lower_regime",
    "in_upper_regime",
    "lower_bound",
    "lower_regime_start",
    "upper_bound",
    "upper_regime_label",
    "PRECISION_LADDER",
    "PrecisionExhausted",
    "Solution",
    "solve_sparse",
    "STURM_DEGREE_CAP",
    "RealRootCount",
    "count_real_roots",
    "isolate_negative",
    "refine_root",
    "sturm_chain",
]
