"""Computational checks of the ABB representation statements."""

from .census import CENSUS_KINDS, CensusResult, census
from .checks import DEMO_GRID, ORDER, STATEMENTS, check_hypotheses, demo_plan, run_check, run_many
from .classify import classify_point_set
from .report import CheckParams, HypothesisError, Report, UsageError

__all__ = [
    "CENSUS_KINDS", "CensusResult", "census", "DEMO_GRID", "ORDER", "STATEMENTS", "check_hypotheses",
    "demo_plan", "run_check", "run_many", "classify_point_set", "CheckParams", "HypothesisError",
    "Report", "UsageError",
]
