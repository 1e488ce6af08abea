"""Failure-mode reasoning workbench.

Backward derivation of input failure-mode cut sets from function-block
safety programs, reliability quantification under selectable approximation
methods, composition with component-level failure models and an independent
fault-injection oracle.
"""

from fmrw.fbd import (
    Program,
    Reading,
    evaluate,
    parse_program,
    serialize_program,
    topological_order,
    validate_program,
)
from fmrw.quant import (
    Dormant,
    FailureDatabase,
    Fixed,
    Method,
    QuantConfig,
    Rate,
    event_frequency,
    mcs_measures,
    sif_pfd,
    top_measures,
    unavailability,
)
from fmrw.reasoning import ChannelState, CutSet, Mode, ShortList, StateLiteral, analyze

__version__ = "0.1.0"

__all__ = [
    "ChannelState",
    "CutSet",
    "Dormant",
    "FailureDatabase",
    "Fixed",
    "Method",
    "Mode",
    "Program",
    "QuantConfig",
    "Rate",
    "Reading",
    "ShortList",
    "StateLiteral",
    "analyze",
    "evaluate",
    "event_frequency",
    "mcs_measures",
    "parse_program",
    "serialize_program",
    "sif_pfd",
    "top_measures",
    "topological_order",
    "unavailability",
    "validate_program",
    "__version__",
]
