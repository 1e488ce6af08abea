"""Backward failure-mode reasoning engine.

``analyze`` nominates a deviation on one net and derives the minimized short
list of channel-state cut sets that can explain it:

1. intended Boolean values are inferred for the target's cone of influence
   (the nominated mode fixes the target's intended value; channel flags are
   intended False, constants are known, and values propagate through gates,
   treating k-out-of-n voters as redundancy groups whose inputs share the
   output's intended value);
2. the per-block rule table is applied backward with memoization until only
   channel states remain; actual-value conditions on comparator outputs
   resolve exactly against the inferred intended value when they contradict
   it, and collapse to TRUE (recorded as an over-approximation) otherwise;
3. the resulting formula is expanded to DNF and minimized under the channel
   state implication lattice.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations

from fmrw.exceptions import DnfSizeError, ProgramStructureError
from fmrw.fbd.blocks import Block, BlockKind, Kind
from fmrw.fbd.program import Program
from fmrw.reasoning.literals import (
    And,
    Approximation,
    Atom,
    ChannelState,
    Condition,
    CutSet,
    Deviation,
    FALSE,
    FalseF,
    Formula,
    Mode,
    Or,
    Polarity,
    ShortList,
    StateLiteral,
    TRUE,
    TrueF,
    f_and,
    f_or,
    state_implies,
    states_contradict,
)
from fmrw.reasoning.rules import backward_rule, _condition_rule

DNF_CAP_DEFAULT = 10**6


# ---------------------------------------------------------------------------
# Intended-value inference (three-valued: True / False / unknown).


def infer_intended(p: Program, target_net: str, mode: Mode) -> tuple[dict[str, bool], bool]:
    """Intended Boolean values per net, plus a flag set when the nominated
    mode contradicts the program (the target then cannot deviate that way)."""
    vals: dict[str, bool] = {}
    conflict = False

    def assign(net: str, value: bool) -> bool:
        nonlocal conflict
        if net in vals:
            if vals[net] != value:
                conflict = True
            return False
        vals[net] = value
        return True

    for c in p.channels:
        assign(c.flag_net, False)  # the intended run is fault-free
    for b in p.blocks:
        if b.kind is BlockKind.CONST and isinstance(b.params.get("value"), bool):
            assign(b.output, bool(b.params["value"]))
    if mode is Mode.TRUE:
        assign(target_net, False)
    elif mode is Mode.FALSE:
        assign(target_net, True)

    bool_blocks = [
        b
        for b in p.blocks
        if b.kind in (BlockKind.NOT, BlockKind.AND, BlockKind.OR, BlockKind.KOON)
        or (b.kind is BlockKind.SEL and isinstance(b.params.get("branch_kind", None), str)
            and b.params["branch_kind"] == Kind.BOOL.value)
    ]

    def sweep(apply_koon_redundancy: bool) -> None:
        changed = True
        while changed and not conflict:
            changed = False
            for b in bool_blocks:
                changed |= _propagate_block(b, vals, assign, apply_koon_redundancy)

    sweep(apply_koon_redundancy=False)
    # Redundancy default: voted inputs are replicated estimates of one
    # quantity, so they share the voter output's intended value.
    sweep(apply_koon_redundancy=True)
    return vals, conflict


def _propagate_block(b: Block, vals, assign, koon_redundancy: bool) -> bool:
    changed = False
    out = b.output
    ins = b.inputs
    known = [vals.get(n) for n in ins]

    if b.kind is BlockKind.NOT:
        if known[0] is not None:
            changed |= assign(out, not known[0])
        if out in vals and known[0] is None:
            changed |= assign(ins[0], not vals[out])
        return changed

    if b.kind is BlockKind.AND or b.kind is BlockKind.OR:
        forcing = b.kind is BlockKind.AND  # value forced onto inputs
        # forward
        if all(v is not None for v in known):
            result = all(known) if b.kind is BlockKind.AND else any(known)
            changed |= assign(out, result)
        elif b.kind is BlockKind.AND and any(v is False for v in known):
            changed |= assign(out, False)
        elif b.kind is BlockKind.OR and any(v is True for v in known):
            changed |= assign(out, True)
        # backward
        if out in vals:
            o = vals[out]
            if b.kind is BlockKind.AND and o is True:
                for n in ins:
                    changed |= assign(n, True)
            elif b.kind is BlockKind.OR and o is False:
                for n in ins:
                    changed |= assign(n, False)
            else:
                # unit propagation: one unknown, all the rest neutral
                neutral = o  # AND/False: need a False among inputs; OR/True dual
                unknown = [n for n in ins if vals.get(n) is None]
                if len(unknown) == 1:
                    rest = [vals[n] for n in ins if n != unknown[0]]
                    if b.kind is BlockKind.AND and o is False and all(rest):
                        changed |= assign(unknown[0], False)
                    if b.kind is BlockKind.OR and o is True and not any(rest):
                        changed |= assign(unknown[0], True)
        return changed

    if b.kind is BlockKind.KOON:
        k = b.params["k"]
        if all(v is not None for v in known):
            changed |= assign(out, sum(known) >= k)
        elif out in vals and koon_redundancy:
            for n in ins:
                if vals.get(n) is None:
                    changed |= assign(n, vals[out])
        return changed

    if b.kind is BlockKind.SEL:
        sel, a, bb = ins
        if vals.get(sel) is not None:
            branch = a if vals[sel] else bb
            if vals.get(branch) is not None:
                changed |= assign(out, vals[branch])
            elif out in vals:
                changed |= assign(branch, vals[out])
        elif vals.get(a) is not None and vals.get(a) == vals.get(bb):
            changed |= assign(out, vals[a])
        return changed

    return changed


# ---------------------------------------------------------------------------
# Backward propagation.


@dataclass
class _Propagation:
    program: Program
    intended: dict[str, bool]
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.drivers = self.program.driver_map()
        self.by_value = self.program.channel_by_value_net()
        self.by_flag = self.program.channel_by_flag_net()
        self.memo: dict[tuple[str, object], Formula] = {}

    def resolve(self, net: str, lit) -> Formula:
        key = (net, lit)
        if key in self.memo:
            return self.memo[key]
        out = self._resolve(net, lit)
        self.memo[key] = out
        return out

    def _resolve(self, net: str, lit) -> Formula:
        if isinstance(lit, Mode):
            return self._resolve_deviation(net, lit)
        return self._resolve_condition(net, lit)

    def _resolve_deviation(self, net: str, mode: Mode) -> Formula:
        ch = self.by_value.get(net)
        if ch is not None:
            state = ChannelState.HI if mode is Mode.HIGH else ChannelState.LO
            return Atom(StateLiteral(ch.id, state))
        ch = self.by_flag.get(net)
        if ch is not None:
            if mode is Mode.TRUE:
                return Atom(StateLiteral(ch.id, ChannelState.FAULTY))
            # A genuine fault suppressed by a deviation is outside the model:
            # FAULTY carries both genuine and spurious detection.
            return FALSE
        # Boolean deviations incompatible with the intended value are exact
        # impossibilities: t needs intended False, f needs intended True.
        iv = self.intended.get(net)
        if mode is Mode.TRUE and iv is True:
            return FALSE
        if mode is Mode.FALSE and iv is False:
            return FALSE
        block = self._driver(net)
        if len(block.inputs) > 1 and (
            (block.kind is BlockKind.MIN and mode is Mode.HIGH)
            or (block.kind is BlockKind.MAX and mode is Mode.LOW)
        ):
            self.warnings.append(
                f"{block.kind.value} {net}: per-input rule for mode "
                f"{mode.value} over-approximates (saturating extremum)"
            )
        return self._resolve_formula(backward_rule(block, mode))

    def _resolve_condition(self, net: str, pol: Polarity) -> Formula:
        ch = self.by_flag.get(net)
        if ch is not None:
            state = ChannelState.FAULTY if pol is Polarity.TRUE else ChannelState.HEALTHY
            return Atom(StateLiteral(ch.id, state))
        if net in self.by_value:
            raise ProgramStructureError(f"condition on REAL net {net!r}")
        block = self._driver(net)
        rule = _condition_rule(block, pol)
        if rule is not None:
            return self._resolve_formula(rule)
        # Comparator output: resolve against the intended value.
        iv = self.intended.get(net)
        wanted = pol is Polarity.TRUE
        if iv is not None and iv != wanted:
            # Condition contradicts the intended value, so it can only hold
            # through a deviation.
            mode = Mode.TRUE if wanted else Mode.FALSE
            return self._resolve_deviation(net, mode)
        if iv is None:
            self.warnings.append(
                f"unresolvable condition {net}@{pol.value}: treated as TRUE "
                f"(over-approximation)"
            )
            return Atom(Approximation(net, pol.value, "unresolvable"))
        # Condition already holds at the intended value; only the absence of
        # an opposing deviation is lost.
        return Atom(Approximation(net, pol.value, "holds-at-intended"))

    def _resolve_formula(self, f: Formula) -> Formula:
        if isinstance(f, (TrueF, FalseF)):
            return f
        if isinstance(f, Atom):
            lit = f.lit
            if isinstance(lit, Deviation):
                return self.resolve(lit.net, lit.mode)
            if isinstance(lit, Condition):
                return self.resolve(lit.net, lit.polarity)
            return f
        if isinstance(f, And):
            out = []
            for c in f.children:
                r = self._resolve_formula(c)
                if isinstance(r, FalseF):
                    return FALSE  # short-circuit: later conditions are moot
                out.append(r)
            return f_and(out)
        if isinstance(f, Or):
            out = []
            for c in f.children:
                r = self._resolve_formula(c)
                if isinstance(r, TrueF):
                    return TRUE
                out.append(r)
            return f_or(out)
        raise TypeError(f"unexpected formula node {f!r}")

    def _driver(self, net: str) -> Block:
        try:
            return self.drivers[net]
        except KeyError:
            raise ProgramStructureError(f"unknown net {net!r}") from None


def propagate(p: Program, target: str, mode: Mode) -> tuple[Formula, list[str]]:
    """Backward traversal from the nominated deviation down to channel-state
    literals. Returns the unexpanded formula plus any over-approximation
    warnings."""
    net = p.resolve_target(target)
    kinds = p.net_kinds()
    if mode.is_real and kinds[net] is not Kind.REAL:
        raise ProgramStructureError(f"mode {mode.value} needs a REAL net, {net!r} is BOOL")
    if not mode.is_real and kinds[net] is not Kind.BOOL:
        raise ProgramStructureError(f"mode {mode.value} needs a BOOL net, {net!r} is REAL")

    intended, conflict = infer_intended(p, net, mode)
    if conflict:
        return FALSE, [
            f"target {target}={mode.value} contradicts the program's fixed values; "
            f"the deviation cannot occur"
        ]
    limit = max(sys.getrecursionlimit(), 4 * len(p.blocks) + 1000)
    sys.setrecursionlimit(limit)
    prop = _Propagation(p, intended)
    formula = prop.resolve(net, mode)
    return formula, prop.warnings


# ---------------------------------------------------------------------------
# DNF expansion and minimization.


def to_dnf(f: Formula, cap: int = DNF_CAP_DEFAULT) -> set[frozenset]:
    """Full disjunctive normal form as a set of conjuncts (duplicate literals
    collapse). Raises DnfSizeError when the conjunct count exceeds ``cap``."""

    def expand(node: Formula) -> list[frozenset]:
        if isinstance(node, TrueF):
            return [frozenset()]
        if isinstance(node, FalseF):
            return []
        if isinstance(node, Atom):
            return [frozenset([node.lit])]
        if isinstance(node, Or):
            out: list[frozenset] = []
            for c in node.children:
                out.extend(expand(c))
                if len(out) > cap:
                    raise DnfSizeError(f"DNF exceeded {cap} conjuncts")
            return out
        if isinstance(node, And):
            acc: list[frozenset] = [frozenset()]
            for c in node.children:
                branch = expand(c)
                acc = [a | b for a in acc for b in branch]
                if len(acc) > cap:
                    raise DnfSizeError(f"DNF exceeded {cap} conjuncts")
            return acc
        raise TypeError(f"unexpected formula node {node!r}")

    return set(expand(f))


def _project(conjunct: frozenset) -> tuple[frozenset[StateLiteral], bool] | None:
    """Split a raw conjunct into channel-state literals plus an approx flag;
    None when the conjunct is internally contradictory."""
    approx = False
    per_channel: dict[str, set[ChannelState]] = {}
    for lit in conjunct:
        if isinstance(lit, Approximation):
            approx = True
            continue
        if not isinstance(lit, StateLiteral):
            raise ProgramStructureError(f"non-terminal literal {lit!r} in DNF")
        per_channel.setdefault(lit.channel, set()).add(lit.state)

    kept: set[StateLiteral] = set()
    for channel, states in per_channel.items():
        for a, b in combinations(states, 2):
            if states_contradict(a, b):
                return None
        # implication absorption: HI/LO absorb HEALTHY
        strongest = {
            s for s in states if not any(o is not s and state_implies(o, s) for o in states)
        }
        kept.update(StateLiteral(channel, s) for s in strongest)
    return frozenset(kept), approx


def _subsumes(x: frozenset[StateLiteral], y: frozenset[StateLiteral]) -> bool:
    """x subsumes y (x is droppable) when every literal of y is implied by
    some literal of x on the same channel."""
    by_channel = {l.channel: l for l in x}
    for lit in y:
        mine = by_channel.get(lit.channel)
        if mine is None or not state_implies(mine.state, lit.state):
            return False
    return True


def minimize(candidates: set[frozenset]) -> tuple[CutSet, ...]:
    """Drop contradictions, absorb implied literals, remove subsumed cut sets
    and order canonically."""
    projected: dict[frozenset[StateLiteral], bool] = {}
    for conjunct in candidates:
        got = _project(conjunct)
        if got is None:
            continue
        literals, approx = got
        # an exact derivation wins over an approximate duplicate
        projected[literals] = projected.get(literals, True) and approx

    keys = sorted(projected, key=lambda s: (len(s), sorted(l.sort_key() for l in s)))
    kept: list[frozenset[StateLiteral]] = []
    for x in keys:
        if any(y != x and _subsumes(x, y) for y in keys):
            continue
        kept.append(x)

    cut_sets = [CutSet(literals, projected[literals]) for literals in kept]
    cut_sets.sort(key=CutSet.sort_key)
    return tuple(cut_sets)


def analyze(p: Program, target: str, mode: Mode | str, cap: int = DNF_CAP_DEFAULT) -> ShortList:
    """Full pipeline: propagate, expand to DNF, minimize."""
    mode = Mode(mode)
    formula, warnings = propagate(p, target, mode)
    cut_sets = minimize(to_dnf(formula, cap))
    return ShortList(
        target_net=p.resolve_target(target),
        mode=mode,
        cut_sets=cut_sets,
        warnings=tuple(warnings),
    )
