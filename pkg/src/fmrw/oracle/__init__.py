"""Fault-injection simulation oracle and fuzz harness."""

from fmrw.oracle.checks import OracleReport, check_completeness, check_soundness
from fmrw.oracle.fuzz import FuzzCase, FuzzReport, random_case, run_fuzz_campaign
from fmrw.oracle.simulate import (
    DEFAULT_MAGNITUDES,
    OracleConfig,
    Scenario,
    ScenarioRunner,
    classify,
    run_scenario,
)

__all__ = [
    "DEFAULT_MAGNITUDES",
    "FuzzCase",
    "FuzzReport",
    "OracleConfig",
    "OracleReport",
    "Scenario",
    "ScenarioRunner",
    "check_completeness",
    "check_soundness",
    "classify",
    "random_case",
    "run_fuzz_campaign",
    "run_scenario",
]
