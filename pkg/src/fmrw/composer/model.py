"""Component failure-logic models: types, instances, connections, imports.

A component type annotates each out-port deviation class with a gate
expression over internal basic events and in-port deviations, e.g.::

    Out1.DU = (In1.DU AND In3.DU) OR (In2.DU AND In4.DU)

Deviation classes are open strings ("DU", "ST", ...). Instances of one type
may be shared across consumers, which turns the synthesized structure into a
DAG with unified repeated events. Basic-event identity is
``<instance>.<event>``; a short list imported for an out-port deviation
contributes its channel-state literals as global basic events (no instance
prefix) so they key the same failure-database entries everywhere.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from fmrw.exceptions import ModelError
from fmrw.reasoning.literals import ShortList


# Gate expression AST ---------------------------------------------------------


@dataclass(frozen=True)
class EventRef:
    name: str


@dataclass(frozen=True)
class PortRef:
    port: str
    dev_class: str


@dataclass(frozen=True)
class GateAnd:
    children: tuple


@dataclass(frozen=True)
class GateOr:
    children: tuple


@dataclass(frozen=True)
class GateKoon:
    k: int
    children: tuple


_TOKEN = re.compile(r"\s*(\(|\)|,|AND\b|OR\b|KOON\b|[A-Za-z_][\w.]*|\d+)")


def parse_gate_expr(text: str) -> object:
    """Parse ``A AND (B.DU OR KOON(2, C.DU, D.DU, E))`` style annotations."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ModelError(f"bad gate expression near {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)  # sentinel

    idx = 0

    def peek():
        return tokens[idx]

    def take(expected=None):
        nonlocal idx
        tok = tokens[idx]
        if expected is not None and tok != expected:
            raise ModelError(f"expected {expected!r}, got {tok!r} in {text!r}")
        idx += 1
        return tok

    def parse_or():
        left = parse_and()
        items = [left]
        while peek() == "OR":
            take("OR")
            items.append(parse_and())
        return items[0] if len(items) == 1 else GateOr(tuple(items))

    def parse_and():
        left = parse_atom()
        items = [left]
        while peek() == "AND":
            take("AND")
            items.append(parse_atom())
        return items[0] if len(items) == 1 else GateAnd(tuple(items))

    def parse_atom():
        tok = peek()
        if tok == "(":
            take("(")
            inner = parse_or()
            take(")")
            return inner
        if tok == "KOON":
            take("KOON")
            take("(")
            k = int(take())
            children = []
            while peek() == ",":
                take(",")
                children.append(parse_or())
            take(")")
            if not 1 <= k <= len(children):
                raise ModelError(f"KOON needs 1 <= k <= n in {text!r}")
            return GateKoon(k, tuple(children))
        if tok is None or tok in (")", ","):
            raise ModelError(f"unexpected token {tok!r} in {text!r}")
        take()
        if "." in tok:
            port, dev_class = tok.rsplit(".", 1)
            return PortRef(port, dev_class)
        return EventRef(tok)

    expr = parse_or()
    if peek() is not None:
        raise ModelError(f"trailing tokens after gate expression in {text!r}")
    return expr


def render_gate_expr(expr) -> str:
    if isinstance(expr, EventRef):
        return expr.name
    if isinstance(expr, PortRef):
        return f"{expr.port}.{expr.dev_class}"
    if isinstance(expr, GateAnd):
        return " AND ".join(_wrap(c) for c in expr.children)
    if isinstance(expr, GateOr):
        return " OR ".join(_wrap(c) for c in expr.children)
    if isinstance(expr, GateKoon):
        inner = ", ".join(render_gate_expr(c) for c in expr.children)
        return f"KOON({expr.k}, {inner})"
    raise TypeError(f"unexpected gate node {expr!r}")


def _wrap(expr) -> str:
    text = render_gate_expr(expr)
    return f"({text})" if isinstance(expr, (GateAnd, GateOr)) else text


# Model ------------------------------------------------------------------------


@dataclass(frozen=True)
class FailureComponentType:
    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    events: tuple[str, ...]
    logic: Mapping[tuple[str, str], object]  # (out-port, deviation class) -> gate


@dataclass(frozen=True)
class SystemModel:
    types: Mapping[str, FailureComponentType]
    instances: Mapping[str, str]  # instance -> type name
    connections: Mapping[tuple[str, str], tuple[str, str]]  # (dst inst, dst port) -> src
    imports: Mapping[tuple[str, str, str], ShortList]  # (inst, port, class) -> list
    tops: Mapping[str, tuple[str, str, str]]  # analysis name -> (inst, port, class)

    def type_of(self, instance: str) -> FailureComponentType:
        try:
            return self.types[self.instances[instance]]
        except KeyError:
            raise ModelError(f"unknown instance {instance!r}") from None


def attach_shortlist(
    m: SystemModel, instance: str, port: str, dev_class: str, sl: ShortList
) -> SystemModel:
    """New model with the short list bound as the OR-of-ANDs behind the
    out-port deviation; binding twice is an error."""
    ctype = m.type_of(instance)
    if port not in ctype.outputs:
        raise ModelError(f"{instance} has no out-port {port!r}")
    key = (instance, port, dev_class)
    if key in m.imports:
        raise ModelError(f"{instance}.{port}.{dev_class} already has an imported short list")
    if (port, dev_class) in ctype.logic:
        raise ModelError(
            f"{instance}.{port}.{dev_class} already has component logic; cannot bind"
        )
    imports = dict(m.imports)
    imports[key] = sl
    return replace(m, imports=imports)


# JSON loading ------------------------------------------------------------------


def model_from_dict(
    doc: Mapping,
    base_dir: str | os.PathLike | None = None,
    shortlist_overrides: Mapping[tuple[str, str, str], ShortList] | None = None,
) -> SystemModel:
    from fmrw.interchange import shortlist_from_json  # local import, no cycle at runtime

    types = {}
    for name, spec in doc.get("types", {}).items():
        logic = {}
        for key, text in spec.get("logic", {}).items():
            port, dev_class = key.rsplit(".", 1)
            logic[(port, dev_class)] = parse_gate_expr(text)
        types[name] = FailureComponentType(
            name=name,
            inputs=tuple(spec.get("inputs", [])),
            outputs=tuple(spec.get("outputs", [])),
            events=tuple(spec.get("events", [])),
            logic=logic,
        )

    instances = dict(doc.get("instances", {}))
    for inst, tname in instances.items():
        if tname not in types:
            raise ModelError(f"instance {inst!r} references unknown type {tname!r}")

    connections = {}
    for src_inst, src_port, dst_inst, dst_port in doc.get("connections", []):
        key = (dst_inst, dst_port)
        if key in connections:
            raise ModelError(f"in-port {dst_inst}.{dst_port} connected twice")
        connections[key] = (src_inst, src_port)

    overrides = dict(shortlist_overrides or {})
    imports = {}
    for entry in doc.get("imports", []):
        key = (entry["instance"], entry["port"], entry["class"])
        if key in overrides:
            imports[key] = overrides.pop(key)
            continue
        path = entry["shortlist"]
        if base_dir is not None and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path, "r", encoding="utf-8") as fh:
            imports[key] = shortlist_from_json(fh.read())
    imports.update(overrides)

    tops = {name: tuple(ref) for name, ref in doc.get("tops", {}).items()}
    return SystemModel(types, instances, connections, imports, tops)


def load_system_model(
    path: str | os.PathLike,
    shortlist_overrides: Mapping[tuple[str, str, str], ShortList] | None = None,
) -> SystemModel:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return model_from_dict(doc, base_dir=os.path.dirname(path),
                           shortlist_overrides=shortlist_overrides)
