"""Beta-adic van der Corput / Halton sequences from Pisot numeration systems.

Generation: linear-recurrence numeration systems, greedy digit expansions, and
the (extended) Monna maps that send integers into [0, 1).  Analysis: cylinder
measures, star discrepancy, hyperbolic corner-distance scans, and QMC
integration of corner-singular integrands.
"""

from .errors import (BetaHaltonError, BudgetExceededError, IrregularDigitsError,
                     PrecisionError, RootFindingError, SingularEvaluationError)
from .intervals import Interval
from .numeration import (DigitString, NumerationSystem, build_system, digits_value,
                         format_digits, g_terms, greedy_expand, is_regular,
                         iter_regular_words, max_word, parse_coefficients,
                         parse_digits, successor)
from .roots import (CharPoly, PisotResult, RootData, analyze_roots, b_coefficients,
                    char_poly, conjugate_roots, dominant_root, is_pisot,
                    reconstruct_g)
from .monna import (MeasureValue, check_extreme_implications, cylinder_count,
                    cylinder_measure, extreme_threshold, extreme_violations,
                    phi, psi, psi_d3)
from .halton import (AdmissibilityReport, HaltonConfig, build_config,
                     check_admissibility, halton_point, halton_stream,
                     iter_halton_points, points_to_floats, write_points_csv)
from .analysis import (ScanReport, corner_bound_constant, corner_exponent,
                       corner_scan, corner_scan_multi, hyperbolic_distance,
                       min_hyperbolic_product, star_discrepancy_1d,
                       star_discrepancy_nd)
from .qmc import (IntegrationReport, SingularIntegrand, convergence_study,
                  make_integrand, qmc_integrate, study_to_csv)

__version__ = "0.1.0"

__all__ = [
    "BetaHaltonError", "BudgetExceededError", "IrregularDigitsError",
    "PrecisionError", "RootFindingError", "SingularEvaluationError",
    "Interval",
    "DigitString", "NumerationSystem", "build_system", "digits_value",
    "format_digits", "g_terms", "greedy_expand", "is_regular",
    "iter_regular_words", "max_word", "parse_coefficients", "parse_digits",
    "successor",
    "CharPoly", "PisotResult", "RootData", "analyze_roots", "b_coefficients",
    "char_poly", "conjugate_roots", "dominant_root", "is_pisot", "reconstruct_g",
    "MeasureValue", "check_extreme_implications", "cylinder_count",
    "cylinder_measure", "extreme_threshold", "extreme_violations", "phi", "psi",
    "psi_d3",
    "AdmissibilityReport", "HaltonConfig", "build_config", "check_admissibility",
    "halton_point", "halton_stream", "iter_halton_points", "points_to_floats",
    "write_points_csv",
    "ScanReport", "corner_bound_constant", "corner_exponent", "corner_scan",
    "corner_scan_multi", "hyperbolic_distance", "min_hyperbolic_product",
    "star_discrepancy_1d", "star_discrepancy_nd",
    "IntegrationReport", "SingularIntegrand", "convergence_study",
    "make_integrand", "qmc_integrate", "study_to_csv",
    "__version__",
]
