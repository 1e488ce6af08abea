"""Component failure-logic modeling and fault-logic synthesis."""

from fmrw.composer.model import (
    EventRef,
    FailureComponentType,
    GateAnd,
    GateKoon,
    GateOr,
    PortRef,
    SystemModel,
    attach_shortlist,
    load_system_model,
    model_from_dict,
    parse_gate_expr,
    render_gate_expr,
)
from fmrw.composer.synthesis import (
    SystemShortList,
    analyze_system,
    minimize_plain,
    synthesize,
)

__all__ = [
    "EventRef",
    "FailureComponentType",
    "GateAnd",
    "GateKoon",
    "GateOr",
    "PortRef",
    "SystemModel",
    "SystemShortList",
    "analyze_system",
    "attach_shortlist",
    "load_system_model",
    "minimize_plain",
    "model_from_dict",
    "parse_gate_expr",
    "render_gate_expr",
    "synthesize",
]
