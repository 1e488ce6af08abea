"""Function-block-diagram program model, parser, validator and evaluator."""

from fmrw.fbd.blocks import Block, BlockKind, BlockType, Kind, Mono, signature
from fmrw.fbd.evaluator import ChannelReading, Reading, compile_evaluator, evaluate
from fmrw.fbd.program import (
    Channel,
    Diagnostic,
    Program,
    parse_program,
    program_hash,
    serialize_program,
    topological_order,
    validate_program,
)

__all__ = [
    "Block",
    "BlockKind",
    "BlockType",
    "Channel",
    "ChannelReading",
    "Diagnostic",
    "Kind",
    "Mono",
    "Program",
    "Reading",
    "compile_evaluator",
    "evaluate",
    "parse_program",
    "program_hash",
    "serialize_program",
    "signature",
    "topological_order",
    "validate_program",
]
