"""Function-block catalog: semantics, port signatures and monotonicity.

The catalog is fixed and small: arithmetic blocks over REAL signals,
comparators REAL -> BOOL, Boolean gates including k-out-of-n voting, and a
selector. Every REAL input of an arithmetic block carries a declared
monotonicity so the backward reasoner knows which deviation direction
propagates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Sequence

from fmrw.exceptions import ProgramStructureError, UnknownBlockError


class Kind(str, Enum):
    """Data kind of a net or port."""

    REAL = "REAL"
    BOOL = "BOOL"


class Mono(str, Enum):
    """Monotonicity of a REAL input: output direction under input increase."""

    INC = "INC"
    DEC = "DEC"
    NONE = "NONE"


class BlockKind(str, Enum):
    CONST = "CONST"
    ADD = "ADD"
    SUB = "SUB"
    MUL_CONST = "MUL_CONST"
    AVG = "AVG"
    MIN = "MIN"
    MAX = "MAX"
    CORRECT = "CORRECT"
    LT = "LT"
    GT = "GT"
    NOT = "NOT"
    AND = "AND"
    OR = "OR"
    KOON = "KOON"
    SEL = "SEL"


@dataclass(frozen=True)
class PortSpec:
    name: str
    kind: Kind
    mono: Mono = Mono.NONE


@dataclass(frozen=True)
class BlockType:
    """Resolved signature of one block instance: ports, kinds, monotonicity."""

    name: str
    inputs: tuple[PortSpec, ...]
    output: PortSpec
    semantics: BlockKind
    params: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Block:
    """One block instance inside a program."""

    id: str
    kind: BlockKind
    params: Mapping[str, Any]
    inputs: tuple[str, ...]
    output: str


# Blocks whose REAL output is monotone in every REAL input.
MONOTONE_REAL = {
    BlockKind.ADD,
    BlockKind.SUB,
    BlockKind.MUL_CONST,
    BlockKind.AVG,
    BlockKind.MIN,
    BlockKind.MAX,
    BlockKind.CORRECT,
}

COMPARATORS = {BlockKind.LT, BlockKind.GT}
BOOL_GATES = {BlockKind.NOT, BlockKind.AND, BlockKind.OR, BlockKind.KOON}


def signature(block: Block) -> BlockType:
    """Port signature for a block instance; raises on bad arity/params."""
    k = block.kind
    n = len(block.inputs)
    p = block.params

    def real_in(i: int, mono: Mono) -> PortSpec:
        return PortSpec(f"in{i + 1}", Kind.REAL, mono)

    def bool_in(i: int) -> PortSpec:
        return PortSpec(f"in{i + 1}", Kind.BOOL)

    if k is BlockKind.CONST:
        _need(n == 0, block, "CONST takes no inputs")
        value = p.get("value")
        if isinstance(value, bool):
            out_kind = Kind.BOOL
        elif isinstance(value, (int, float)):
            out_kind = Kind.REAL
        else:
            raise ProgramStructureError(
                f"block {block.id}: CONST needs a numeric or boolean 'value'"
            )
        return BlockType(k.value, (), PortSpec("out", out_kind), k, p)

    if k in (BlockKind.ADD, BlockKind.AVG, BlockKind.MIN, BlockKind.MAX):
        _need(n >= 2, block, f"{k.value} needs at least two inputs")
        ins = tuple(real_in(i, Mono.INC) for i in range(n))
        return BlockType(k.value, ins, PortSpec("out", Kind.REAL), k, p)

    if k is BlockKind.SUB:
        _need(n == 2, block, "SUB needs exactly two inputs")
        ins = (real_in(0, Mono.INC), real_in(1, Mono.DEC))
        return BlockType(k.value, ins, PortSpec("out", Kind.REAL), k, p)

    if k is BlockKind.MUL_CONST:
        _need(n == 1, block, "MUL_CONST needs exactly one input")
        gain = p.get("k")
        if not isinstance(gain, (int, float)) or gain <= 0:
            raise ProgramStructureError(f"block {block.id}: MUL_CONST needs k > 0")
        return BlockType(k.value, (real_in(0, Mono.INC),), PortSpec("out", Kind.REAL), k, p)

    if k is BlockKind.CORRECT:
        # y = raw + k * (comp - p0); both inputs declared increasing (k > 0).
        _need(n == 2, block, "CORRECT needs exactly two inputs (raw, compensation)")
        gain = p.get("k")
        if not isinstance(gain, (int, float)) or gain <= 0:
            raise ProgramStructureError(f"block {block.id}: CORRECT needs k > 0")
        if not isinstance(p.get("p0"), (int, float)):
            raise ProgramStructureError(f"block {block.id}: CORRECT needs numeric p0")
        ins = (real_in(0, Mono.INC), real_in(1, Mono.INC))
        return BlockType(k.value, ins, PortSpec("out", Kind.REAL), k, p)

    if k in COMPARATORS:
        _need(n == 1, block, f"{k.value} needs exactly one input")
        if not isinstance(p.get("threshold"), (int, float)):
            raise ProgramStructureError(f"block {block.id}: {k.value} needs numeric threshold")
        return BlockType(k.value, (real_in(0, Mono.NONE),), PortSpec("out", Kind.BOOL), k, p)

    if k is BlockKind.NOT:
        _need(n == 1, block, "NOT needs exactly one input")
        return BlockType(k.value, (bool_in(0),), PortSpec("out", Kind.BOOL), k, p)

    if k in (BlockKind.AND, BlockKind.OR):
        _need(n >= 2, block, f"{k.value} needs at least two inputs")
        ins = tuple(bool_in(i) for i in range(n))
        return BlockType(k.value, ins, PortSpec("out", Kind.BOOL), k, p)

    if k is BlockKind.KOON:
        _need(n >= 1, block, "KOON needs at least one input")
        kk = p.get("k")
        if not isinstance(kk, int) or isinstance(kk, bool) or not 1 <= kk <= n:
            raise ProgramStructureError(
                f"block {block.id}: KOON needs integer k with 1 <= k <= {n}"
            )
        ins = tuple(bool_in(i) for i in range(n))
        return BlockType(k.value, ins, PortSpec("out", Kind.BOOL), k, p)

    if k is BlockKind.SEL:
        # (selector BOOL, a, b); output = a when selector is True, b otherwise.
        _need(n == 3, block, "SEL needs exactly three inputs (selector, a, b)")
        branch = Kind(p.get("branch_kind", Kind.REAL.value))
        ins = (
            PortSpec("sel", Kind.BOOL),
            PortSpec("a", branch),
            PortSpec("b", branch),
        )
        return BlockType(k.value, ins, PortSpec("out", branch), k, p)

    raise UnknownBlockError(f"block {block.id}: unknown block type {k!r}")


def _need(ok: bool, block: Block, msg: str) -> None:
    if not ok:
        raise ProgramStructureError(f"block {block.id}: {msg}")


def parse_block_kind(name: str, block_id: str) -> BlockKind:
    try:
        return BlockKind(name)
    except ValueError:
        raise UnknownBlockError(f"block {block_id}: unknown block type {name!r}") from None


def eval_block(block: Block, args: Sequence[Any]) -> Any:
    """Evaluate one block on already-computed input values."""
    k = block.kind
    p = block.params
    if k is BlockKind.CONST:
        return p["value"]
    if k is BlockKind.ADD:
        return math.fsum(args)
    if k is BlockKind.SUB:
        return args[0] - args[1]
    if k is BlockKind.MUL_CONST:
        return p["k"] * args[0]
    if k is BlockKind.AVG:
        return math.fsum(args) / len(args)
    if k is BlockKind.MIN:
        return min(args)
    if k is BlockKind.MAX:
        return max(args)
    if k is BlockKind.CORRECT:
        return args[0] + p["k"] * (args[1] - p["p0"])
    if k is BlockKind.LT:
        return args[0] < p["threshold"]
    if k is BlockKind.GT:
        return args[0] > p["threshold"]
    if k is BlockKind.NOT:
        return not args[0]
    if k is BlockKind.AND:
        return all(args)
    if k is BlockKind.OR:
        return any(args)
    if k is BlockKind.KOON:
        return sum(1 for a in args if a) >= p["k"]
    if k is BlockKind.SEL:
        return args[1] if args[0] else args[2]
    raise UnknownBlockError(f"block {block.id}: unknown block type {k!r}")
