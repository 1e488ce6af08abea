"""Completeness and soundness checks of short lists against simulation.

Completeness: enumerate every exact-state assignment over the channels
(crossed with the magnitude samples for each deviated channel); whenever the
target deviation is observed, some cut set must be satisfied. A channel state
satisfies a literal when it equals or implies it (HI and LO satisfy HEALTHY).

Soundness: each cut set, instantiated with its literal states exact (HEALTHY
literal -> nominal reading) and every other channel nominal, must trigger the
target deviation for at least one magnitude combination. Cut sets flagged as
condition over-approximations are reported separately and not asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from fmrw.exceptions import OracleError
from fmrw.fbd.program import Program
from fmrw.oracle.simulate import OracleConfig, Scenario, ScenarioRunner
from fmrw.reasoning.literals import ChannelState, CutSet, Mode, ShortList, state_implies

_ALL_STATES = (
    ChannelState.HEALTHY,
    ChannelState.FAULTY,
    ChannelState.HI,
    ChannelState.LO,
)


@dataclass(frozen=True)
class Violation:
    states: dict
    magnitudes: dict
    observed: str

    def to_dict(self) -> dict:
        return {
            "states": {c: s.value for c, s in self.states.items()},
            "magnitudes": dict(self.magnitudes),
            "observed": self.observed,
        }


@dataclass
class OracleReport:
    kind: str
    target_net: str
    mode: str
    checked: int = 0
    deviating: int = 0
    violations: list = field(default_factory=list)
    unwitnessed: list = field(default_factory=list)
    exempt: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.unwitnessed

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "target": {"net": self.target_net, "mode": self.mode},
            "summary": {
                "checked": self.checked,
                "deviating": self.deviating,
                "violations": len(self.violations),
                "unwitnessed": len(self.unwitnessed),
                "exempt": len(self.exempt),
                "passed": self.passed,
            },
            "violations": [v.to_dict() for v in self.violations],
            "unwitnessed": self.unwitnessed,
            "exempt": self.exempt,
        }


def _satisfies(states: dict, cs: CutSet) -> bool:
    for lit in cs.literals:
        if not state_implies(states[lit.channel], lit.state):
            return False
    return True


def _scenario_space(channels: Iterable[str], magnitudes: tuple[float, ...]):
    """All (states, magnitudes) pairs; deviated channels range over samples."""
    per_channel = []
    for ch in channels:
        options = []
        for state in _ALL_STATES:
            if state in (ChannelState.HI, ChannelState.LO):
                options.extend((state, m) for m in magnitudes)
            else:
                options.append((state, None))
        per_channel.append([(ch, opt) for opt in options])
    for combo in product(*per_channel):
        states = {ch: opt[0] for ch, opt in combo}
        mags = {ch: opt[1] for ch, opt in combo if opt[1] is not None}
        yield states, mags


def check_completeness(
    p: Program, target: str, mode: Mode | str, sl: ShortList, cfg: OracleConfig
) -> OracleReport:
    mode = Mode(mode)
    net = p.resolve_target(target)
    if len(p.channels) > cfg.channel_cap:
        raise OracleError(
            f"completeness enumeration capped at {cfg.channel_cap} channels "
            f"(program has {len(p.channels)})"
        )
    runner = ScenarioRunner(p, cfg)
    report = OracleReport("completeness", net, mode.value)
    channel_ids = [c.id for c in p.channels]
    for states, mags in _scenario_space(channel_ids, cfg.magnitudes):
        report.checked += 1
        observed = runner.net_deviation(Scenario(states, mags), net)
        if observed is not mode:
            continue
        report.deviating += 1
        if not any(_satisfies(states, cs) for cs in sl.cut_sets):
            report.violations.append(Violation(states, mags, observed.value))
    return report


def check_soundness(
    p: Program, target: str, mode: Mode | str, sl: ShortList, cfg: OracleConfig
) -> OracleReport:
    mode = Mode(mode)
    net = p.resolve_target(target)
    runner = ScenarioRunner(p, cfg)
    report = OracleReport("soundness", net, mode.value)
    channel_ids = [c.id for c in p.channels]
    for cs in sl.cut_sets:
        if cs.approx:
            report.exempt.append(str(cs))
            continue
        report.checked += 1
        states = {ch: ChannelState.HEALTHY for ch in channel_ids}
        for lit in cs.literals:
            states[lit.channel] = lit.state
        deviated = [l.channel for l in cs.literals if l.state in (ChannelState.HI, ChannelState.LO)]
        witnessed = False
        for combo in product(cfg.magnitudes, repeat=len(deviated)):
            mags = dict(zip(deviated, combo))
            if runner.net_deviation(Scenario(states, mags), net) is mode:
                witnessed = True
                break
        if witnessed:
            report.deviating += 1
        else:
            report.unwitnessed.append(str(cs))
    return report
