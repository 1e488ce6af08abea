"""Backward failure-mode reasoning over channel-state literals."""

from fmrw.reasoning.engine import analyze, infer_intended, minimize, propagate, to_dnf
from fmrw.reasoning.literals import (
    Approximation,
    ChannelState,
    Condition,
    CutSet,
    Deviation,
    Mode,
    Polarity,
    ShortList,
    StateLiteral,
    state_implies,
    states_contradict,
)
from fmrw.reasoning.rules import backward_rule

__all__ = [
    "Approximation",
    "ChannelState",
    "Condition",
    "CutSet",
    "Deviation",
    "Mode",
    "Polarity",
    "ShortList",
    "StateLiteral",
    "analyze",
    "backward_rule",
    "infer_intended",
    "minimize",
    "propagate",
    "state_implies",
    "states_contradict",
    "to_dnf",
]
