"""Deterministic analysis reports.

Rendering is byte-stable for identical inputs: numbers are printed in
scientific notation with three significant digits and the program is
identified by a content hash rather than a timestamp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from fmrw.fbd.program import Program, program_hash
from fmrw.quant import FailureDatabase, Measures, QuantConfig, TopMeasures, mcs_measures, top_measures
from fmrw.reasoning.literals import ShortList


def sci(x: float) -> str:
    """Three significant digits, scientific: 1.88E-03."""
    return f"{x:.2E}"


@dataclass(frozen=True)
class AnalysisReport:
    program_id: str
    target_net: str
    mode: str
    short_list: ShortList
    per_cut_set: tuple[tuple[str, Measures], ...]
    totals: tuple[tuple[str, float, float], ...]  # (method, Q, W)
    pfd_parts: tuple[tuple[str, float], ...] = ()
    warnings: tuple[str, ...] = ()


def build_report(
    program: Program,
    sl: ShortList,
    db: FailureDatabase,
    cfg: QuantConfig,
    methods: Sequence[str] = ("ep", "re"),
    pfd_parts: Sequence[tuple[str, float]] = (),
) -> AnalysisReport:
    from fmrw.quant import Method

    per = tuple(
        (str(cs), mcs_measures([str(l) for l in cs.literals], db, cfg))
        for cs in sl.cut_sets
    )
    totals = []
    for name in methods:
        cfg_m = QuantConfig(risk_time=cfg.risk_time, method=Method(name))
        tm = top_measures(sl.event_cut_sets(), db, cfg_m)
        totals.append((name.upper(), tm.q_top, tm.w_top))
    return AnalysisReport(
        program_id=program_hash(program),
        target_net=sl.target_net,
        mode=sl.mode.value,
        short_list=sl,
        per_cut_set=per,
        totals=tuple(totals),
        pfd_parts=tuple(pfd_parts),
        warnings=sl.warnings,
    )


def render_report(report: AnalysisReport) -> str:
    lines = [
        f"program {report.program_id}",
        f"target {report.target_net} mode {report.mode}",
        f"cut sets: {len(report.short_list.cut_sets)}",
        "",
    ]
    for idx, (label, m) in enumerate(report.per_cut_set, start=1):
        lines.append(f"{idx:3d}  Q={sci(m.q)}  W={sci(m.w)}/h  {label}")
    if report.per_cut_set:
        lines.append("")
    for method, q, w in report.totals:
        lines.append(f"{method:<6} Q={sci(q)}  W={sci(w)}/h")
    if report.pfd_parts:
        lines.append("")
        total = 0.0
        for name, value in report.pfd_parts:
            lines.append(f"PFD[{name}] = {sci(value)}")
            total += value
        lines.append(f"PFD[total] = {sci(min(total, 1.0))}")
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines) + "\n"
