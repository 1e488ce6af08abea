"""Fault-injection oracle: simulation, completeness, soundness, symmetry."""

import json

import pytest

from conftest import cut
from fmrw.corpus import corpus_profiles, profile_for_mode
from fmrw.exceptions import OracleError
from fmrw.fbd import parse_program
from fmrw.oracle import (
    OracleConfig,
    Scenario,
    check_completeness,
    check_soundness,
    run_scenario,
)
from fmrw.reasoning import ChannelState, CutSet, Mode, ShortList, analyze
from fmrw.reasoning.literals import StateLiteral

H, F, HI, LO = (
    ChannelState.HEALTHY,
    ChannelState.FAULTY,
    ChannelState.HI,
    ChannelState.LO,
)

CHANNELS = ("IW512", "IW544", "IW576", "IW554", "IW560")


def scenario(mags=None, **states):
    full = {ch: states.get(ch, H) for ch in CHANNELS}
    return Scenario(full, mags or {})


def hazard_cfg(**kw):
    return OracleConfig(intended=profile_for_mode(Mode.TRUE), **kw)


def normal_cfg(**kw):
    return OracleConfig(intended=profile_for_mode(Mode.FALSE), **kw)


def test_all_healthy_scenario_shows_no_deviation(program):
    assert run_scenario(program, scenario(), hazard_cfg()) == {"SIF_OUT": None}
    assert run_scenario(program, scenario(), normal_cfg()) == {"SIF_OUT": None}


def test_two_high_levels_mask_the_demand(program):
    s = scenario({"IW512": 100.0, "IW544": 100.0}, IW512=HI, IW544=HI)
    assert run_scenario(program, s, hazard_cfg())["SIF_OUT"] is Mode.TRUE


def test_low_level_reading_trips_spuriously(program):
    s = scenario({"IW544": 100.0}, IW544=LO)
    # one low channel is not enough for the 2oo3 vote
    assert run_scenario(program, s, normal_cfg())["SIF_OUT"] is None
    s2 = scenario({"IW544": 100.0, "IW512": 100.0}, IW544=LO, IW512=LO)
    assert run_scenario(program, s2, normal_cfg())["SIF_OUT"] is Mode.FALSE


def test_mismatched_magnitudes_rejected():
    with pytest.raises(OracleError):
        Scenario({ch: H for ch in CHANNELS}, {"IW512": 5.0})
    with pytest.raises(OracleError):
        Scenario(dict({ch: H for ch in CHANNELS}, IW512=HI), {})


def test_scenario_runs_are_deterministic(program):
    s = scenario({"IW554": 100.0}, IW554=LO, IW512=F)
    cfg = normal_cfg()
    assert run_scenario(program, s, cfg) == run_scenario(program, s, cfg)


def test_corpus_completeness_and_soundness(corpus_oracle_reports):
    for (mode, kind), report in corpus_oracle_reports.items():
        assert report.passed, (mode, kind, report.to_dict())
        assert report.exempt == []
    assert corpus_oracle_reports[(Mode.TRUE, "completeness")].checked == 10**5


def test_deleting_a_cut_set_breaks_completeness(program, du_shortlist):
    pruned = ShortList(
        du_shortlist.target_net,
        du_shortlist.mode,
        du_shortlist.cut_sets[1:],
        du_shortlist.warnings,
    )
    report = check_completeness(program, "SIF_OUT", Mode.TRUE, pruned, hazard_cfg())
    assert report.violations


def test_spurious_pressure_high_cut_set_is_unwitnessed(program, st_shortlist):
    padded = ShortList(
        st_shortlist.target_net,
        st_shortlist.mode,
        st_shortlist.cut_sets + (CutSet(cut(("IW554", HI))),),
        st_shortlist.warnings,
    )
    report = check_soundness(program, "SIF_OUT", Mode.FALSE, padded, normal_cfg())
    assert report.unwitnessed == ["IW554:HI"]


def test_straight_wire_program_oracle():
    doc = {
        "channels": [{"id": "CH1", "value": "v1", "flag": "g1"}],
        "blocks": [
            {"id": "c", "type": "GT", "params": {"threshold": 105.0}, "in": ["v1"], "out": "o"}
        ],
        "outputs": {"OUT": "o"},
    }
    p = parse_program(json.dumps(doc))
    sl = analyze(p, "OUT", Mode.TRUE)
    assert sl.literal_sets() == {cut(("CH1", HI))}
    cfg = OracleConfig(intended={"CH1": 100.0})
    assert check_completeness(p, "OUT", Mode.TRUE, sl, cfg).passed
    assert check_soundness(p, "OUT", Mode.TRUE, sl, cfg).passed


def test_channel_cap_guard(program, du_shortlist):
    cfg = OracleConfig(intended=profile_for_mode(Mode.TRUE), channel_cap=3)
    with pytest.raises(OracleError, match="cap"):
        check_completeness(program, "SIF_OUT", Mode.TRUE, du_shortlist, cfg)


def test_high_low_symmetry_between_demand_and_spurious_side(program):
    """Mirroring every deviation direction and swapping the intended-reading
    profile maps every masked-demand scenario onto a spurious-trip scenario.
    The converse does not hold: detected faults vote toward trip, so they
    can cause a spurious trip but never mask a demand."""
    from itertools import product

    from fmrw.oracle.simulate import ScenarioRunner

    profiles = corpus_profiles()
    cfg_h = OracleConfig(intended=profiles["hazard_side"], magnitudes=(1.0, 100.0))
    cfg_n = OracleConfig(intended=profiles["normal_side"], magnitudes=(1.0, 100.0))
    run_h = ScenarioRunner(program, cfg_h)
    run_n = ScenarioRunner(program, cfg_n)
    mirror = {H: H, F: F, HI: LO, LO: HI}

    options = [(H, None), (F, None)] + [(s, m) for s in (HI, LO) for m in cfg_h.magnitudes]
    net = program.resolve_target("SIF_OUT")
    checked = mapped = 0
    for combo in product(options, repeat=len(CHANNELS)):
        states = {ch: st for ch, (st, _) in zip(CHANNELS, combo)}
        mags = {ch: m for ch, (_, m) in zip(CHANNELS, combo) if m is not None}
        du = run_h.net_deviation(Scenario(states, mags), net)
        if du is Mode.TRUE:
            mirrored = {ch: mirror[st] for ch, st in states.items()}
            st_ = run_n.net_deviation(Scenario(mirrored, mags), net)
            assert st_ is Mode.FALSE, (states, mags)
            mapped += 1
        checked += 1
    assert checked == 6**5
    assert mapped > 0
