"""One-relator pro-p presentations: parsing, Zassenhaus analysis, normal forms, gr and H• models."""

from .analysis import (AnalysisConfig, CaseReport, Normalization, abelianization_q, build_cohomology,
                       build_gr, coefficient_matrix, decomposition_labels, demushkin_normalize,
                       initial_form, mildness_check, predicted_gr_dims, verify_duality)
from .parse import GroupPresentation, format_presentation, parse_presentation, parse_word
from .report import format_report, parse_machine_section

__all__ = [
    "AnalysisConfig", "CaseReport", "Normalization", "abelianization_q", "build_cohomology",
    "build_gr", "coefficient_matrix", "decomposition_labels", "demushkin_normalize", "initial_form",
    "mildness_check", "predicted_gr_dims", "verify_duality", "GroupPresentation",
    "format_presentation", "parse_presentation", "parse_word", "format_report", "parse_machine_section",
]
