"""Backward reasoning engine: propagation, DNF, minimization, analysis."""

import json
from itertools import combinations, product

import pytest

from conftest import REFERENCE_DU, REFERENCE_ST, cut
from fmrw.exceptions import DnfSizeError
from fmrw.fbd import parse_program
from fmrw.interchange import shortlist_to_csv
from fmrw.reasoning import ChannelState, Mode, analyze, minimize, to_dnf
from fmrw.reasoning.engine import _subsumes
from fmrw.reasoning.literals import (
    And,
    Atom,
    Or,
    StateLiteral,
    TRUE,
    f_and,
    f_or,
    state_implies,
)

H, F, HI, LO = (
    ChannelState.HEALTHY,
    ChannelState.FAULTY,
    ChannelState.HI,
    ChannelState.LO,
)


def lit(ch, st):
    return StateLiteral(ch, st)


def test_dnf_distribution():
    a, b, c = (Atom(lit(x, HI)) for x in "ABC")
    got = to_dnf(f_and([f_or([a, b]), c]))
    assert got == {
        frozenset([lit("A", HI), lit("C", HI)]),
        frozenset([lit("B", HI), lit("C", HI)]),
    }


def test_dnf_idempotence_and_true_identity():
    a = Atom(lit("A", HI))
    assert to_dnf(f_and([a, a])) == {frozenset([lit("A", HI)])}
    assert to_dnf(f_and([TRUE, a])) == {frozenset([lit("A", HI)])}


def test_dnf_size_guard():
    # 2^21 conjuncts blows a cap of 1e6
    pairs = [f_or([Atom(lit(f"C{i}", HI)), Atom(lit(f"C{i}", LO))]) for i in range(21)]
    with pytest.raises(DnfSizeError):
        to_dnf(f_and(pairs), cap=10**6)


def test_minimize_absorbs_implied_literal_within_cut_set():
    got = minimize({frozenset([lit("A", HI), lit("A", H)])})
    assert {cs.literals for cs in got} == {frozenset([lit("A", HI)])}


def test_minimize_drops_contradictions():
    assert minimize({frozenset([lit("A", HI), lit("A", LO)])}) == ()
    assert minimize({frozenset([lit("A", F), lit("A", H)])}) == ()


def _coverage(cut_sets, channels):
    """All channel-state assignments covered by a set of cut sets: the
    brute-force semantics used to justify subsumption decisions."""
    states = (H, F, HI, LO)
    covered = set()
    for assignment in product(states, repeat=len(channels)):
        world = dict(zip(channels, assignment))
        for cs in cut_sets:
            if all(state_implies(world[l.channel], l.state) for l in cs):
                covered.add(assignment)
                break
    return covered


def test_minimize_subsumption_matches_brute_force_coverage():
    stronger = cut(("A", HI), ("P", HI), ("B", H))
    weaker = cut(("A", H), ("B", H), ("P", HI))
    got = minimize({stronger, weaker})
    assert {cs.literals for cs in got} == {weaker}
    channels = ["A", "B", "P"]
    assert _coverage({stronger, weaker}, channels) == _coverage({weaker}, channels)
    assert _coverage({stronger}, channels) < _coverage({weaker}, channels)


def test_priority_select_low_short_list(program):
    sl = analyze(program, "PRESS_SEL", Mode.LOW)
    assert sl.literal_sets() == {
        cut(("IW554", LO)),
        cut(("IW554", F), ("IW560", LO)),
    }
    assert sl.warnings == ()


def test_straight_wire_yields_single_state(program):
    sl = analyze(program, "L2_RAW", Mode.HIGH)
    assert sl.literal_sets() == {cut(("IW544", HI))}


def test_du_short_list_matches_reference(program, du_shortlist):
    assert du_shortlist.literal_sets() == REFERENCE_DU
    assert len(du_shortlist.cut_sets) == 9
    assert du_shortlist.warnings == ()


def test_st_short_list_matches_reference(st_shortlist):
    assert st_shortlist.literal_sets() == REFERENCE_ST
    assert len(st_shortlist.cut_sets) == 30
    assert st_shortlist.warnings == ()


def test_short_lists_are_minimal_and_single_literal_per_channel(du_shortlist, st_shortlist):
    for sl in (du_shortlist, st_shortlist):
        sets = [cs.literals for cs in sl.cut_sets]
        for x, y in combinations(sets, 2):
            assert not _subsumes(x, y) and not _subsumes(y, x)
        for cs in sl.cut_sets:
            channels = [l.channel for l in cs.literals]
            assert len(channels) == len(set(channels))


def test_analysis_is_deterministic(program):
    first = analyze(program, "SIF_OUT", Mode.TRUE)
    second = analyze(program, "SIF_OUT", Mode.TRUE)
    assert first == second
    assert shortlist_to_csv(first) == shortlist_to_csv(second)


def test_constant_driven_target_cannot_deviate():
    doc = {
        "channels": [{"id": "CH1", "value": "v1", "flag": "g1"}],
        "blocks": [
            {"id": "k", "type": "CONST", "params": {"value": True}, "in": [], "out": "b"},
            {"id": "n", "type": "NOT", "params": {}, "in": ["b"], "out": "o"},
        ],
        "outputs": {"OUT": "o"},
    }
    p = parse_program(json.dumps(doc))
    sl = analyze(p, "OUT", Mode.TRUE)  # output is hard False; false-True impossible
    assert sl.cut_sets == ()
    assert sl.warnings == ()  # resolved exactly: the constant cannot deviate

    conflicted = analyze(p, "b", Mode.TRUE)  # nominating the constant itself
    assert conflicted.cut_sets == ()
    assert conflicted.warnings  # contradicts the program's fixed values


def test_unresolvable_condition_warns_and_flags(program):
    # A voter target leaves its comparator siblings' intended values unknown
    # when the target seed cannot reach them; build a tiny program where an
    # AND output is nominated and one branch is a comparator condition.
    doc = {
        "channels": [
            {"id": "CH1", "value": "v1", "flag": "g1"},
            {"id": "CH2", "value": "v2", "flag": "g2"},
        ],
        "blocks": [
            {"id": "c1", "type": "LT", "params": {"threshold": 10.0}, "in": ["v1"], "out": "b1"},
            {"id": "c2", "type": "LT", "params": {"threshold": 10.0}, "in": ["v2"], "out": "b2"},
            {"id": "g", "type": "AND", "params": {}, "in": ["b1", "b2"], "out": "o"},
        ],
        "outputs": {"OUT": "o"},
    }
    p = parse_program(json.dumps(doc))
    sl = analyze(p, "OUT", Mode.TRUE)  # AND intended False: branch intendeds unknown
    assert sl.warnings
    assert any(cs.approx for cs in sl.cut_sets)
