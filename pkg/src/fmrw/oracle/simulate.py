"""Forward fault-injection simulation.

A scenario fixes one exact state per channel (HEALTHY / FAULTY / HI / LO)
plus a deviation magnitude for each HI/LO channel. The oracle evaluates the
program twice, once on the intended readings (all channels healthy) and once
on the injected readings, and classifies the deviation of every output net:

    REAL:  actual > intended -> h;  actual < intended -> l
    BOOL:  intended False, actual True -> t;  True -> False -> f

A detected-faulty channel raises its flag and keeps the intended value
(frozen); the bundled case-study program gates every use of the value on the
flag, so the frozen value is immaterial there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from fmrw.exceptions import OracleError
from fmrw.fbd.evaluator import Reading, compile_evaluator
from fmrw.fbd.program import Program
from fmrw.reasoning.literals import ChannelState, Mode

DEFAULT_MAGNITUDES = (0.1, 1.0, 10.0, 100.0)


@dataclass(frozen=True)
class Scenario:
    """Exact channel states with magnitudes for the deviated channels."""

    states: Mapping[str, ChannelState]
    magnitudes: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for ch, state in self.states.items():
            deviated = state in (ChannelState.HI, ChannelState.LO)
            if deviated and ch not in self.magnitudes:
                raise OracleError(f"channel {ch}: {state.value} needs a magnitude")
            if not deviated and ch in self.magnitudes:
                raise OracleError(f"channel {ch}: magnitude given for {state.value}")


@dataclass(frozen=True)
class OracleConfig:
    intended: Mapping[str, float]  # intended reading per channel
    magnitudes: tuple[float, ...] = DEFAULT_MAGNITUDES
    channel_cap: int = 8

    def __post_init__(self):
        if not self.magnitudes or any(m <= 0 for m in self.magnitudes):
            raise OracleError("magnitude samples must be non-empty and positive")


def scenario_readings(s: Scenario, cfg: OracleConfig) -> dict[str, Reading]:
    readings = {}
    for ch, state in s.states.items():
        base = cfg.intended[ch]
        if state is ChannelState.HEALTHY:
            readings[ch] = Reading(base, False)
        elif state is ChannelState.FAULTY:
            readings[ch] = Reading(base, True)  # value frozen at intended
        elif state is ChannelState.HI:
            readings[ch] = Reading(base + s.magnitudes[ch], False)
        else:
            readings[ch] = Reading(base - s.magnitudes[ch], False)
    return readings


class ScenarioRunner:
    """Caches the compiled program and the intended-run valuation."""

    def __init__(self, program: Program, cfg: OracleConfig):
        self.program = program
        self.cfg = cfg
        self._run = compile_evaluator(program)
        intended_readings = {c.id: Reading(cfg.intended[c.id], False) for c in program.channels}
        self.intended_values = self._run(intended_readings)

    def output_deviations(self, s: Scenario) -> dict[str, Mode | None]:
        """Observed deviation per named output net."""
        actual = self._run(scenario_readings(s, self.cfg))
        out: dict[str, Mode | None] = {}
        for name, net in self.program.outputs.items():
            out[name] = classify(self.intended_values[net], actual[net])
        return out

    def net_deviation(self, s: Scenario, net: str) -> Mode | None:
        actual = self._run(scenario_readings(s, self.cfg))
        return classify(self.intended_values[net], actual[net])


def classify(intended, actual) -> Mode | None:
    if isinstance(intended, bool):
        if intended == actual:
            return None
        return Mode.TRUE if actual else Mode.FALSE
    if actual > intended:
        return Mode.HIGH
    if actual < intended:
        return Mode.LOW
    return None


def run_scenario(p: Program, s: Scenario, cfg: OracleConfig) -> dict[str, Mode | None]:
    """One-shot wrapper over :class:`ScenarioRunner`."""
    return ScenarioRunner(p, cfg).output_deviations(s)
