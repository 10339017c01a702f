"""Simplicity of Cuntz-Pimsner algebras of multispinal self-similar groups,
decided with exact rational arithmetic."""

from .analyzer import AnalysisOptions, AnalysisReport, analyze, gram_matrix, kernel_criterion, matrix_criterion
from .documents import load_instance, loads_instance
from .engine import IDENTITY, Agent, EventuallyPeriodicWord, GermVerdict, Side
from .measure import PsiTable, solve_psi
from .model import Amenability, MultispinalInstance, build_instance

__all__ = [
    "IDENTITY",
    "Agent",
    "Amenability",
    "AnalysisOptions",
    "AnalysisReport",
    "EventuallyPeriodicWord",
    "GermVerdict",
    "MultispinalInstance",
    "PsiTable",
    "Side",
    "analyze",
    "build_instance",
    "gram_matrix",
    "kernel_criterion",
    "load_instance",
    "loads_instance",
    "matrix_criterion",
    "solve_psi",
]
