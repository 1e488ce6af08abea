"""Program model: channels, blocks, nets, parsing and validation.

A program document is JSON with three sections::

    { "channels": [ {"id": "IW512", "value": "L1_RAW", "flag": "L1_FAULT"}, ... ],
      "blocks":   [ {"id": "b1", "type": "CORRECT", "params": {"k": 1.0, "p0": 50.0},
                     "in": ["L1_RAW", "PRESS_SEL"], "out": "L1_CORR"}, ... ],
      "outputs":  { "SIF_OUT": "sif_out" } }

Every net has exactly one driver (a block output or a channel value/flag net),
the block graph is acyclic, and all port/net kinds must match.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from fmrw.exceptions import (
    DuplicateDriverError,
    ProgramStructureError,
    ProgramSyntaxError,
)
from fmrw.fbd.blocks import Block, BlockKind, Kind, parse_block_kind, signature


@dataclass(frozen=True)
class Channel:
    """An input channel: a REAL value net plus a BOOL detected-fault flag net."""

    id: str
    value_net: str
    flag_net: str


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class Program:
    blocks: tuple[Block, ...]
    channels: tuple[Channel, ...]
    outputs: Mapping[str, str]

    def driver_map(self) -> dict[str, Block]:
        """Map net id -> driving block (channel nets have no block driver)."""
        return {b.output: b for b in self.blocks}

    def channel_by_value_net(self) -> dict[str, Channel]:
        return {c.value_net: c for c in self.channels}

    def channel_by_flag_net(self) -> dict[str, Channel]:
        return {c.flag_net: c for c in self.channels}

    def net_kinds(self) -> dict[str, Kind]:
        """Kind of every driven net, derived from its driver."""
        kinds: dict[str, Kind] = {}
        for c in self.channels:
            kinds[c.value_net] = Kind.REAL
            kinds[c.flag_net] = Kind.BOOL
        for b in self.blocks:
            kinds[b.output] = signature(b).output.kind
        return kinds

    def resolve_target(self, name: str) -> str:
        """Resolve an output name or bare net id to a net id."""
        if name in self.outputs:
            return self.outputs[name]
        if name in self.net_kinds():
            return name
        raise ProgramStructureError(f"unknown net {name!r}")


def parse_program(text: str) -> Program:
    """Parse a program document; rejects unknown block semantics and nets
    driven twice. Structural invariants beyond that are reported by
    :func:`validate_program`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProgramSyntaxError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ProgramSyntaxError("program document must be a JSON object")

    channels = []
    for entry in doc.get("channels", []):
        try:
            channels.append(Channel(entry["id"], entry["value"], entry["flag"]))
        except (KeyError, TypeError):
            raise ProgramSyntaxError(f"malformed channel entry: {entry!r}") from None

    blocks = []
    for entry in doc.get("blocks", []):
        try:
            block_id = entry["id"]
            kind = parse_block_kind(entry["type"], block_id)
            blocks.append(
                Block(
                    id=block_id,
                    kind=kind,
                    params=dict(entry.get("params", {})),
                    inputs=tuple(entry.get("in", [])),
                    output=entry["out"],
                )
            )
        except (KeyError, TypeError):
            raise ProgramSyntaxError(f"malformed block entry: {entry!r}") from None

    outputs = doc.get("outputs", {})
    if not isinstance(outputs, dict):
        raise ProgramSyntaxError("'outputs' must map names to net ids")

    program = Program(tuple(blocks), tuple(channels), dict(outputs))
    _check_single_drivers(program)
    return program


def serialize_program(p: Program) -> str:
    """Canonical document for a program; parse_program round-trips it."""
    doc = {
        "channels": [
            {"id": c.id, "value": c.value_net, "flag": c.flag_net} for c in p.channels
        ],
        "blocks": [
            {
                "id": b.id,
                "type": b.kind.value,
                "params": dict(b.params),
                "in": list(b.inputs),
                "out": b.output,
            }
            for b in p.blocks
        ],
        "outputs": dict(p.outputs),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _check_single_drivers(p: Program) -> None:
    seen: dict[str, str] = {}
    for c in p.channels:
        for net in (c.value_net, c.flag_net):
            if net in seen:
                raise DuplicateDriverError(
                    f"net {net!r} driven by both {seen[net]} and channel {c.id}"
                )
            seen[net] = f"channel {c.id}"
    for b in p.blocks:
        if b.output in seen:
            raise DuplicateDriverError(
                f"net {b.output!r} driven by both {seen[b.output]} and block {b.id}"
            )
        seen[b.output] = f"block {b.id}"


def validate_program(p: Program) -> list[Diagnostic]:
    """All program invariants; empty list iff the program is valid."""
    diags: list[Diagnostic] = []

    try:
        _check_single_drivers(p)
    except DuplicateDriverError as exc:
        diags.append(Diagnostic("duplicate-driver", str(exc)))
        return diags

    # Signatures (arity, params) and derived kinds.
    kinds: dict[str, Kind] = {}
    for c in p.channels:
        kinds[c.value_net] = Kind.REAL
        kinds[c.flag_net] = Kind.BOOL
    sigs = {}
    for b in p.blocks:
        try:
            sigs[b.id] = signature(b)
            kinds[b.output] = sigs[b.id].output.kind
        except ProgramStructureError as exc:
            diags.append(Diagnostic("bad-block", str(exc)))
    if diags:
        return diags

    # Every referenced net must be driven, with a matching kind.
    for b in p.blocks:
        sig = sigs[b.id]
        for port, net in zip(sig.inputs, b.inputs):
            if net not in kinds:
                diags.append(
                    Diagnostic("undriven-net", f"block {b.id}: input net {net!r} has no driver")
                )
            elif kinds[net] is not port.kind:
                diags.append(
                    Diagnostic(
                        "kind-mismatch",
                        f"block {b.id}: port {port.name} expects {port.kind.value} "
                        f"but net {net!r} is {kinds[net].value}",
                    )
                )
    for name, net in p.outputs.items():
        if net not in kinds:
            diags.append(Diagnostic("undriven-net", f"output {name}: net {net!r} has no driver"))

    try:
        topological_order(p)
    except ProgramStructureError as exc:
        diags.append(Diagnostic("cycle", str(exc)))

    return diags


def topological_order(p: Program) -> list[Block]:
    """Blocks ordered so that every block follows all blocks driving its
    inputs. Stable across runs (Kahn's algorithm, declaration order)."""
    drivers = p.driver_map()
    indeg = {}
    dependents: dict[str, list[Block]] = {}
    for b in p.blocks:
        deps = {drivers[n].id for n in b.inputs if n in drivers}
        indeg[b.id] = len(deps)
        for d in deps:
            dependents.setdefault(d, []).append(b)

    ready = [b for b in p.blocks if indeg[b.id] == 0]
    order: list[Block] = []
    i = 0
    while i < len(ready):
        b = ready[i]
        i += 1
        order.append(b)
        for dep in dependents.get(b.id, []):
            indeg[dep.id] -= 1
            if indeg[dep.id] == 0:
                ready.append(dep)
    if len(order) != len(p.blocks):
        stuck = sorted(bid for bid, d in indeg.items() if d > 0)
        raise ProgramStructureError(f"cycle among blocks: {', '.join(stuck)}")
    return order


def program_hash(p: Program) -> str:
    """Stable identity for report headers."""
    import hashlib

    return hashlib.sha256(serialize_program(p).encode("utf-8")).hexdigest()[:16]
