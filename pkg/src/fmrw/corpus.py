"""Loaders for the bundled drum-level case study.

The corpus holds the input-side trip program (three pressure-corrected level
channels voted 2oo3, de-energize to trip), the intended-reading profiles the
oracle runs against (hazard side for dangerous-undetected analyses, normal
side for spurious-trip analyses), the component failure-rate database and
the system failure-logic models for logic solver and final elements.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from fmrw.fbd.program import Program, parse_program
from fmrw.quant import FailureDatabase, database_from_csv
from fmrw.reasoning.literals import Mode, ShortList

PROGRAM_FILE = "drum_level_sif.json"
PROFILES_FILE = "drum_level_profiles.json"
FAILURE_DATA_FILE = "case_study_failure_data.csv"
SYSTEM_FILES = {"du": "sis_system_du.json", "st": "sis_system_st.json"}
GOLDEN_SHORTLISTS = {"du": "fmr_du_shortlist.json", "st": "fmr_st_shortlist.json"}

PROFILE_FOR_MODE = {Mode.TRUE: "hazard_side", Mode.FALSE: "normal_side"}


def data_path(name: str) -> Path:
    return Path(resources.files("fmrw.data") / name)


def _read(name: str) -> str:
    return (resources.files("fmrw.data") / name).read_text(encoding="utf-8")


def corpus_program() -> Program:
    return parse_program(_read(PROGRAM_FILE))


def corpus_profiles() -> dict[str, dict[str, float]]:
    return json.loads(_read(PROFILES_FILE))


def profile_for_mode(mode: Mode | str) -> dict[str, float]:
    """Intended readings consistent with the nominated output deviation."""
    return corpus_profiles()[PROFILE_FOR_MODE[Mode(mode)]]


def corpus_failure_database() -> FailureDatabase:
    return database_from_csv(_read(FAILURE_DATA_FILE))


def corpus_system_model(which: str, shortlist_overrides=None):
    from fmrw.composer.model import load_system_model

    return load_system_model(
        data_path(SYSTEM_FILES[which]), shortlist_overrides=shortlist_overrides
    )


def golden_shortlist(which: str) -> ShortList:
    from fmrw.interchange import shortlist_from_json

    return shortlist_from_json(_read(GOLDEN_SHORTLISTS[which]))
