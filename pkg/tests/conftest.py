"""Shared fixtures: the bundled case study, its reference short lists and
the expensive session-scoped oracle/fuzz runs."""

from __future__ import annotations

import os

import pytest

from fmrw.corpus import (
    corpus_failure_database,
    corpus_program,
    corpus_system_model,
    profile_for_mode,
)
from fmrw.oracle import OracleConfig, check_completeness, check_soundness
from fmrw.oracle.fuzz import run_fuzz_campaign
from fmrw.reasoning import ChannelState, Mode, StateLiteral, analyze

L1, L2, L3, P1, P2 = "IW512", "IW544", "IW576", "IW554", "IW560"
H = ChannelState.HEALTHY
F = ChannelState.FAULTY
HI = ChannelState.HI
LO = ChannelState.LO


def cut(*pairs) -> frozenset[StateLiteral]:
    return frozenset(StateLiteral(ch, st) for ch, st in pairs)


# Reference short list for the dangerous-undetected output deviation of the
# drum-level program (9 cut sets), cross-validated by exhaustive fault
# injection in the oracle tests.
REFERENCE_DU = {
    cut((L1, HI), (L2, HI)),
    cut((L1, HI), (L3, HI)),
    cut((L3, HI), (L2, HI)),
    cut((L1, H), (L3, H), (P1, HI)),
    cut((L1, H), (L2, H), (P1, HI)),
    cut((L3, H), (L2, H), (P1, HI)),
    cut((L1, H), (L3, H), (P2, HI), (P1, F)),
    cut((L1, H), (L2, H), (P2, HI), (P1, F)),
    cut((L3, H), (L2, H), (P2, HI), (P1, F)),
}

# Reference short list for the spurious-trip output deviation (30 cut sets).
REFERENCE_ST = {
    cut((L1, LO), (L3, LO)),
    cut((L3, LO), (L2, LO)),
    cut((L1, LO), (L2, LO)),
    cut((L1, F), (L3, LO)),
    cut((L1, F), (L2, LO)),
    cut((L1, LO), (L3, F)),
    cut((L3, F), (L2, LO)),
    cut((L1, F), (L3, F)),
    cut((L3, LO), (L2, F)),
    cut((L1, LO), (L2, F)),
    cut((L1, F), (L2, F)),
    cut((L3, F), (L2, F)),
    cut((L1, H), (L3, F), (P1, LO)),
    cut((L1, H), (L2, F), (P1, LO)),
    cut((L1, F), (L3, H), (P1, LO)),
    cut((L3, H), (L2, F), (P1, LO)),
    cut((L1, H), (L3, H), (P1, LO)),
    cut((L1, F), (L2, H), (P1, LO)),
    cut((L3, F), (L2, H), (P1, LO)),
    cut((L1, H), (L2, H), (P1, LO)),
    cut((L3, H), (L2, H), (P1, LO)),
    cut((L1, H), (L3, F), (P2, LO), (P1, F)),
    cut((L1, H), (L2, F), (P2, LO), (P1, F)),
    cut((L1, F), (L3, H), (P2, LO), (P1, F)),
    cut((L3, H), (L2, F), (P2, LO), (P1, F)),
    cut((L1, H), (L3, H), (P2, LO), (P1, F)),
    cut((L1, F), (L2, H), (P2, LO), (P1, F)),
    cut((L3, F), (L2, H), (P2, LO), (P1, F)),
    cut((L1, H), (L2, H), (P2, LO), (P1, F)),
    cut((L3, H), (L2, H), (P2, LO), (P1, F)),
}

# Component-level minimal cut sets of logic solver + final elements, with
# their reference frequencies (spurious trip) and unavailabilities
# (dangerous undetected).
REFERENCE_COMPONENT_ST = {
    frozenset({"CPU.CPUST"}): 5.00e-9,
    frozenset({"Comm.CommST"}): 1.00e-9,
    frozenset({"ACTB1.ACTBST"}): 8.00e-7,
    frozenset({"ACTB2.ACTBST"}): 8.00e-7,
    frozenset({"ACTI1.ACTIST"}): 8.00e-7,
    frozenset({"ACTI2.ACTIST"}): 8.00e-7,
    frozenset({"DO1.DOST"}): 1.00e-9,
    frozenset({"DO2.DOST"}): 1.00e-9,
    frozenset({"DO3.DOST"}): 1.00e-9,
    frozenset({"IR1.IRST"}): 4.00e-8,
    frozenset({"IR2.IRST"}): 4.00e-8,
    frozenset({"IR3.IRST"}): 4.00e-8,
    frozenset({"IR4.IRST"}): 4.00e-8,
    frozenset({"IR5.IRST"}): 4.00e-8,
    frozenset({"MGIV.ACTMST"}): 1.20e-6,
}

REFERENCE_COMPONENT_DU = {
    frozenset({"CPU.CPUDU"}): 1.90e-4,
    frozenset({"Comm.CommDU"}): 1.00e-5,
    frozenset({"ACTB1.ACTBDU", "ACTB2.ACTBDU"}): 1.70e-4,
    frozenset({"ACTB1.ACTBDU", "DO2.DODU"}): 1.14e-7,
    frozenset({"ACTB1.ACTBDU", "IR4.IRDU"}): 6.86e-6,
    frozenset({"ACTB2.ACTBDU", "DO1.DODU"}): 1.14e-7,
    frozenset({"ACTB2.ACTBDU", "IR2.IRDU"}): 6.86e-6,
    frozenset({"ACTI1.ACTIDU", "ACTI2.ACTIDU"}): 1.70e-4,
    frozenset({"ACTI1.ACTIDU", "DO2.DODU"}): 1.14e-7,
    frozenset({"ACTI1.ACTIDU", "IR3.IRDU"}): 6.86e-6,
    frozenset({"ACTI2.ACTIDU", "DO1.DODU"}): 1.14e-7,
    frozenset({"ACTI2.ACTIDU", "IR1.IRDU"}): 6.86e-6,
    frozenset({"DO1.DODU", "DO2.DODU"}): 7.69e-11,
    frozenset({"DO1.DODU", "IR3.IRDU"}): 4.61e-9,
    frozenset({"DO1.DODU", "IR4.IRDU"}): 4.61e-9,
    frozenset({"DO2.DODU", "IR1.IRDU"}): 4.61e-9,
    frozenset({"DO2.DODU", "IR2.IRDU"}): 4.61e-9,
    frozenset({"IR1.IRDU", "IR3.IRDU"}): 2.77e-7,
    frozenset({"IR2.IRDU", "IR4.IRDU"}): 2.77e-7,
}


def rel_err(actual: float, expected: float) -> float:
    return abs(actual - expected) / abs(expected)


@pytest.fixture(scope="session")
def program():
    return corpus_program()


@pytest.fixture(scope="session")
def db():
    return corpus_failure_database()


@pytest.fixture(scope="session")
def du_shortlist(program):
    return analyze(program, "SIF_OUT", Mode.TRUE)


@pytest.fixture(scope="session")
def st_shortlist(program):
    return analyze(program, "SIF_OUT", Mode.FALSE)


@pytest.fixture(scope="session")
def du_system(du_shortlist):
    return corpus_system_model("du", shortlist_overrides={("Inputs", "Out", "DU"): du_shortlist})


@pytest.fixture(scope="session")
def st_system(st_shortlist):
    return corpus_system_model("st", shortlist_overrides={("Inputs", "Out", "ST"): st_shortlist})


@pytest.fixture(scope="session")
def corpus_oracle_reports(program, du_shortlist, st_shortlist):
    """Completeness + soundness over the full scenario space, both targets."""
    out = {}
    for mode, sl in ((Mode.TRUE, du_shortlist), (Mode.FALSE, st_shortlist)):
        cfg = OracleConfig(intended=profile_for_mode(mode))
        out[(mode, "completeness")] = check_completeness(program, "SIF_OUT", mode, sl, cfg)
        out[(mode, "soundness")] = check_soundness(program, "SIF_OUT", mode, sl, cfg)
    return out


@pytest.fixture(scope="session")
def fuzz_report():
    seed = int(os.environ.get("FMRW_SEED", "20260809"))
    return run_fuzz_campaign(n_programs=100, seed=seed)
