"""Fault-logic synthesis: contract a system model into minimal cut sets.

Synthesis walks from a top out-port deviation backward along connections,
substituting each component's gate logic, expanding k-out-of-n voters
combinatorially and splicing imported short lists inline. Basic events are
identified by instance path, so a component instance shared between two
consumers contributes the *same* events along both paths and the DAG
structure collapses correctly during minimization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from fmrw.exceptions import DnfSizeError, ModelError
from fmrw.composer.model import (
    EventRef,
    GateAnd,
    GateKoon,
    GateOr,
    PortRef,
    SystemModel,
)
from fmrw.quant import FailureDatabase, Method, QuantConfig, TopMeasures, top_measures

SYNTH_CAP_DEFAULT = 10**6

EventCutSets = frozenset[frozenset[str]]


@dataclass(frozen=True)
class SystemShortList:
    """Minimal cut sets over basic-event ids for one top deviation."""

    top: tuple[str, str, str]
    cut_sets: tuple[frozenset[str], ...]

    def as_sets(self) -> set[frozenset[str]]:
        return set(self.cut_sets)


def synthesize(
    m: SystemModel, top: str | tuple[str, str, str], cap: int = SYNTH_CAP_DEFAULT
) -> SystemShortList:
    if isinstance(top, str):
        try:
            top = m.tops[top]
        except KeyError:
            raise ModelError(f"unknown top {top!r}") from None
    instance, port, dev_class = top

    memo: dict[tuple[str, str, str], list[frozenset[str]]] = {}
    visiting: set[tuple[str, str, str]] = set()

    def expand_port(inst: str, out_port: str, cls: str) -> list[frozenset[str]]:
        key = (inst, out_port, cls)
        if key in memo:
            return memo[key]
        if key in visiting:
            raise ModelError(f"cycle through {inst}.{out_port}.{cls}")
        visiting.add(key)
        ctype = m.type_of(inst)
        if out_port not in ctype.outputs:
            raise ModelError(f"{inst} ({ctype.name}) has no out-port {out_port!r}")
        imported = m.imports.get(key)
        if imported is not None:
            result = [frozenset(ev) for ev in imported.event_cut_sets()]
        elif (out_port, cls) in ctype.logic:
            result = expand_gate(inst, ctype, ctype.logic[(out_port, cls)])
        else:
            raise ModelError(
                f"no failure logic or import for {inst}.{out_port} class {cls!r}"
            )
        visiting.discard(key)
        memo[key] = result
        return result

    def expand_gate(inst: str, ctype, expr) -> list[frozenset[str]]:
        if isinstance(expr, EventRef):
            if ctype.events and expr.name not in ctype.events:
                raise ModelError(
                    f"{inst} ({ctype.name}): undeclared basic event {expr.name!r}"
                )
            return [frozenset([f"{inst}.{expr.name}"])]
        if isinstance(expr, PortRef):
            if expr.port not in ctype.inputs:
                raise ModelError(f"{inst} ({ctype.name}) has no in-port {expr.port!r}")
            source = m.connections.get((inst, expr.port))
            if source is None:
                raise ModelError(f"unbound in-port {inst}.{expr.port}")
            return expand_port(source[0], source[1], expr.dev_class)
        if isinstance(expr, GateOr):
            out: list[frozenset[str]] = []
            for child in expr.children:
                out.extend(expand_gate(inst, ctype, child))
                _guard(len(out))
            return out
        if isinstance(expr, GateAnd):
            return _product([expand_gate(inst, ctype, c) for c in expr.children])
        if isinstance(expr, GateKoon):
            out = []
            for subset in combinations(expr.children, expr.k):
                out.extend(_product([expand_gate(inst, ctype, c) for c in subset]))
                _guard(len(out))
            return out
        raise TypeError(f"unexpected gate node {expr!r}")

    def _product(branches: Sequence[list[frozenset[str]]]) -> list[frozenset[str]]:
        acc: list[frozenset[str]] = [frozenset()]
        for branch in branches:
            acc = [a | b for a in acc for b in branch]
            _guard(len(acc))
        return acc

    def _guard(n: int) -> None:
        if n > cap:
            raise DnfSizeError(f"synthesis exceeded {cap} conjuncts")

    candidates = expand_port(instance, port, dev_class)
    return SystemShortList(top=(instance, port, dev_class),
                           cut_sets=minimize_plain(candidates))


def minimize_plain(candidates: Iterable[frozenset[str]]) -> tuple[frozenset[str], ...]:
    """Plain subsumption: drop supersets; basic events have no implication
    lattice. Deterministic (size, lexicographic) ordering."""
    unique = sorted(set(candidates), key=lambda s: (len(s), sorted(s)))
    kept: list[frozenset[str]] = []
    for cs in unique:
        if any(other < cs for other in unique):
            continue
        kept.append(cs)
    return tuple(kept)


def analyze_system(
    m: SystemModel,
    top: str | tuple[str, str, str],
    db: FailureDatabase,
    cfg: QuantConfig = QuantConfig(),
) -> tuple[SystemShortList, TopMeasures]:
    """Qualitative pass (synthesis) followed by the quantitative pass."""
    sl = synthesize(m, top)
    return sl, top_measures(sl.cut_sets, db, cfg)
