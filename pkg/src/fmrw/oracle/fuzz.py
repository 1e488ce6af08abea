"""Random program generation for oracle-based validation.

Programs are drawn from the full block catalog but constrained to the
shapes the calculus is designed for, mirroring how voting logic is built in
practice:

* arithmetic operands have channel-disjoint cones (no reconvergent REAL
  fan-in, which would let deviations cancel);
* voter inputs and selector branches are redundancy groups: twin
  computations over channels with equal intended readings, the same net, or
  a constant tuned to the twin's intended value;
* comparator thresholds sit within reach of the magnitude samples, scaled by
  the worst-case attenuation along the feeding expression.

Each generated case carries the intended readings and the Boolean output
modes that are consistent with them, so completeness and soundness checks
can run directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from fmrw.fbd.blocks import Block, BlockKind, Kind
from fmrw.fbd.evaluator import Reading, evaluate
from fmrw.fbd.program import Channel, Program, validate_program
from fmrw.oracle.checks import OracleReport, check_completeness, check_soundness
from fmrw.oracle.simulate import OracleConfig
from fmrw.reasoning.engine import analyze
from fmrw.reasoning.literals import Mode

FUZZ_MAGNITUDES = (1.0, 10.0, 100.0)
_OFFSET_BASES = (0.7, 3.3, 17.0)


@dataclass
class FuzzCase:
    program: Program
    readings: dict[str, float]
    targets: list[tuple[str, Mode]]


@dataclass
class FuzzFailure:
    case_index: int
    target: str
    mode: str
    report: dict


@dataclass
class FuzzReport:
    cases: int = 0
    checks: int = 0
    failures: list[FuzzFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class _Builder:
    def __init__(self, rng: random.Random, max_blocks: int, max_channels: int):
        self.rng = rng
        self.blocks: list[Block] = []
        self.counter = 0
        n_ch = rng.randint(2, max_channels)
        n_groups = max(1, n_ch // 2)
        self.channels = []
        self.readings: dict[str, float] = {}
        self.group_of: dict[str, int] = {}
        group_values = {g: round(rng.uniform(40.0, 160.0), 1) for g in range(n_groups)}
        for i in range(n_ch):
            ch = Channel(f"CH{i + 1}", f"v{i + 1}", f"g{i + 1}")
            self.channels.append(ch)
            g = i % n_groups
            self.readings[ch.id] = group_values[g]
            self.group_of[ch.value_net] = g
        self.max_blocks = max_blocks
        # per-net bookkeeping for REAL nets
        self.value: dict[str, float] = {c.value_net: self.readings[c.id] for c in self.channels}
        self.support: dict[str, frozenset[str]] = {
            c.value_net: frozenset([c.id]) for c in self.channels
        }
        self.atten: dict[str, float] = {c.value_net: 1.0 for c in self.channels}
        self.real_nets = [c.value_net for c in self.channels]
        # BOOL nets with their intended values
        self.bool_nets: dict[str, bool] = {c.flag_net: False for c in self.channels}
        self.const_seq = 0

    # -- helpers ------------------------------------------------------------

    def _new_net(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def _add_block(self, kind: BlockKind, params: dict, inputs: list[str], out: str) -> None:
        self.blocks.append(Block(f"b{len(self.blocks) + 1}", kind, params, tuple(inputs), out))

    def room(self, needed: int = 1) -> bool:
        return len(self.blocks) + needed <= self.max_blocks

    # -- REAL layer ---------------------------------------------------------

    def add_real_op(self) -> None:
        rng = self.rng
        kind = rng.choice(
            [BlockKind.ADD, BlockKind.SUB, BlockKind.AVG, BlockKind.MIN,
             BlockKind.MAX, BlockKind.MUL_CONST, BlockKind.CORRECT]
        )
        if kind is BlockKind.MUL_CONST:
            src = rng.choice(self.real_nets)
            gain = rng.choice([0.5, 2.0])
            out = self._new_net("r")
            self._add_block(kind, {"k": gain}, [src], out)
            self.value[out] = gain * self.value[src]
            self.support[out] = self.support[src]
            self.atten[out] = self.atten[src] * gain
            self.real_nets.append(out)
            return
        arity = 2 if kind in (BlockKind.SUB, BlockKind.CORRECT) else rng.randint(2, 3)
        operands = self._disjoint_operands(arity)
        if operands is None:
            return
        out = self._new_net("r")
        params: dict = {}
        if kind is BlockKind.CORRECT:
            gain = rng.choice([0.5, 2.0])
            params = {"k": gain, "p0": self.value[operands[1]]}
            self.value[out] = self.value[operands[0]] + gain * (
                self.value[operands[1]] - params["p0"]
            )
            att = min(self.atten[operands[0]], self.atten[operands[1]] * gain)
        elif kind is BlockKind.ADD:
            self.value[out] = sum(self.value[n] for n in operands)
            att = min(self.atten[n] for n in operands)
        elif kind is BlockKind.SUB:
            self.value[out] = self.value[operands[0]] - self.value[operands[1]]
            att = min(self.atten[n] for n in operands)
        elif kind is BlockKind.AVG:
            self.value[out] = sum(self.value[n] for n in operands) / len(operands)
            att = min(self.atten[n] for n in operands) / len(operands)
        else:  # MIN / MAX
            fn = min if kind is BlockKind.MIN else max
            self.value[out] = fn(self.value[n] for n in operands)
            att = min(self.atten[n] for n in operands)
        self._add_block(kind, params, list(operands), out)
        self.support[out] = frozenset().union(*(self.support[n] for n in operands))
        self.atten[out] = att
        self.real_nets.append(out)

    def _disjoint_operands(self, arity: int) -> tuple[str, ...] | None:
        rng = self.rng
        picked: list[str] = []
        used: frozenset[str] = frozenset()
        pool = self.real_nets[:]
        rng.shuffle(pool)
        for net in pool:
            if self.support[net] & used:
                continue
            picked.append(net)
            used = used | self.support[net]
            if len(picked) == arity:
                return tuple(picked)
        return None

    # -- BOOL layer ----------------------------------------------------------

    def add_comparator(
        self,
        src: str | None = None,
        threshold: float | None = None,
        kind: BlockKind | None = None,
    ) -> str:
        rng = self.rng
        src = src or rng.choice(self.real_nets)
        if threshold is None:
            offset = rng.choice(_OFFSET_BASES) * self.atten[src]
            threshold = self.value[src] + rng.choice([-1.0, 1.0]) * offset
        kind = kind or rng.choice([BlockKind.LT, BlockKind.GT])
        out = self._new_net("c")
        self._add_block(kind, {"threshold": threshold}, [src], out)
        if kind is BlockKind.LT:
            self.bool_nets[out] = self.value[src] < threshold
        else:
            self.bool_nets[out] = self.value[src] > threshold
        return out

    def add_gate(self) -> None:
        rng = self.rng
        pool = list(self.bool_nets)
        kind = rng.choice([BlockKind.NOT, BlockKind.AND, BlockKind.OR])
        out = self._new_net("o")
        if kind is BlockKind.NOT:
            src = rng.choice(pool)
            self._add_block(kind, {}, [src], out)
            self.bool_nets[out] = not self.bool_nets[src]
            return
        arity = rng.randint(2, min(3, len(pool)))
        ins = rng.sample(pool, arity)
        self._add_block(kind, {}, ins, out)
        vals = [self.bool_nets[n] for n in ins]
        self.bool_nets[out] = all(vals) if kind is BlockKind.AND else any(vals)

    def add_voter(self) -> None:
        """k-out-of-n over twin comparators on a redundancy group."""
        rng = self.rng
        groups: dict[int, list[str]] = {}
        for c in self.channels:
            groups.setdefault(self.group_of[c.value_net], []).append(c.value_net)
        eligible = [nets for nets in groups.values() if len(nets) >= 2]
        if not eligible:
            return
        nets = rng.choice(eligible)
        n = min(len(nets), rng.randint(2, 3))
        if not self.room(n + 1):
            return
        members = rng.sample(nets, n)
        offset = rng.choice(_OFFSET_BASES)
        sign = rng.choice([-1.0, 1.0])
        threshold = self.value[members[0]] + sign * offset
        cmp_kind = rng.choice([BlockKind.LT, BlockKind.GT])
        voters = [
            self.add_comparator(src=m, threshold=threshold, kind=cmp_kind)
            for m in members
        ]
        k = rng.randint(1, n)
        out = self._new_net("o")
        self._add_block(BlockKind.KOON, {"k": k}, voters, out)
        vals = [self.bool_nets[v] for v in voters]
        self.bool_nets[out] = sum(vals) >= k

    def add_selector(self) -> None:
        """REAL selector over redundancy-consistent branches."""
        rng = self.rng
        selector = rng.choice(list(self.bool_nets))
        groups: dict[int, list[str]] = {}
        for c in self.channels:
            groups.setdefault(self.group_of[c.value_net], []).append(c.value_net)
        style = rng.random()
        if style < 0.4:
            a = b = rng.choice(self.real_nets)
        else:
            eligible = [nets for nets in groups.values() if len(nets) >= 2]
            if eligible:
                a, b = rng.sample(rng.choice(eligible), 2)
            elif self.room(2):
                a = rng.choice(self.real_nets)
                b = self._new_net("r")
                self._add_block(BlockKind.CONST, {"value": self.value[a]}, [], b)
                self.value[b] = self.value[a]
                self.support[b] = frozenset()
                self.atten[b] = 1.0
                self.real_nets.append(b)
            else:
                return
        out = self._new_net("r")
        self._add_block(BlockKind.SEL, {}, [selector, a, b], out)
        self.value[out] = self.value[a] if self.bool_nets[selector] else self.value[b]
        self.support[out] = self.support[a] | self.support[b] | frozenset()
        self.atten[out] = min(self.atten[a], self.atten[b])
        self.real_nets.append(out)

    # -- assembly -------------------------------------------------------------

    def build(self) -> FuzzCase | None:
        rng = self.rng
        while self.room():
            roll = rng.random()
            if roll < 0.30:
                self.add_real_op()
            elif roll < 0.55:
                if self.room():
                    self.add_comparator()
            elif roll < 0.75:
                self.add_gate()
            elif roll < 0.90:
                self.add_voter()
            else:
                self.add_selector()
        gate_nets = [n for n in self.bool_nets if not n.startswith("g")]
        if not gate_nets:
            return None
        target = gate_nets[-1]
        program = Program(
            tuple(self.blocks),
            tuple(self.channels),
            {"OUT": target},
        )
        if validate_program(program):
            return None
        mode = Mode.TRUE if not self.bool_nets[target] else Mode.FALSE
        return FuzzCase(program, dict(self.readings), [(target, mode)])


def random_case(
    rng: random.Random, max_blocks: int = 12, max_channels: int = 6
) -> FuzzCase | None:
    return _Builder(rng, max_blocks, max_channels).build()


def run_fuzz_campaign(
    n_programs: int = 100,
    seed: int = 0,
    max_blocks: int = 12,
    max_channels: int = 6,
) -> FuzzReport:
    """Generate programs until ``n_programs`` have been checked; every
    completeness violation and every non-exempt unwitnessed cut set is a
    failure."""
    rng = random.Random(seed)
    report = FuzzReport()
    while report.cases < n_programs:
        case = random_case(rng, max_blocks, max_channels)
        if case is None:
            continue
        report.cases += 1
        samples = FUZZ_MAGNITUDES if len(case.program.channels) <= 4 else (1.0, 100.0)
        cfg = OracleConfig(intended=case.readings, magnitudes=samples)
        for target, mode in case.targets:
            sl = analyze(case.program, target, mode)
            for check in (check_completeness, check_soundness):
                result = check(case.program, target, mode, sl, cfg)
                report.checks += 1
                if not result.passed:
                    report.failures.append(
                        FuzzFailure(report.cases - 1, target, mode.value, result.to_dict())
                    )
    return report
