"""Reliability quantification of basic events, cut sets and top events.

Basic-event models (all time quantities in hours, 1 FIT = 1e-9/h):

* FIXED(p):           q = p, no frequency form.
* RATE(lambda, MTTR): q(t) = lambda * (1 - exp(-(lambda+mu)*t)) / (lambda+mu)
  with mu = 1/MTTR, evaluated at the risk-assessment time.
* DORMANT(lambda, tau): q = 1 - (1 - exp(-lambda*tau)) / (lambda*tau) for a
  periodically proof-tested dormant fault; a series expansion keeps the
  lambda*tau -> 0 limit stable.

Event frequency for the repairable/dormant models: w = lambda * (1 - q).

Cut-set measures over n independent events:

    Q_MCS = prod_i q_i       W_MCS = sum_i w_i * prod_{j != i} q_j

Top-event approximations over m cut sets:

* EP (Esary-Proschan): events common to all cut sets factor out,
  Q_TE = (prod_c q_c) * (1 - prod_k (1 - Q_k')) with Q_k' excluding the
  common events; W_TE = sum_i W_i * prod_{j != i} (1 - Q_j) over full
  cut-set measures.
* RE (rare event): Q_TE = min(sum Q_k, 1); W_TE = sum W_k.
* EXACT: Shannon expansion over the distinct basic events (guarded to a
  small event count); frequency by the Birnbaum decomposition
  w_TE = sum_e w_e * (Q_top | e certain) - (Q_top | e impossible).
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

from fmrw.exceptions import MissingFailureDataError, ProgramStructureError

FIT = 1e-9
HOURS_PER_YEAR = 8760.0
MISSION_TIME_DEFAULT = 2 * HOURS_PER_YEAR  # 17520 h

EXACT_EVENT_GUARD = 25


@dataclass(frozen=True)
class Fixed:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"fixed probability out of range: {self.p}")


@dataclass(frozen=True)
class Rate:
    lam: float
    mttr: float

    def __post_init__(self):
        if self.lam < 0 or self.mttr <= 0:
            raise ValueError(f"rate model needs lambda >= 0 and MTTR > 0: {self}")


@dataclass(frozen=True)
class Dormant:
    lam: float
    tau: float

    def __post_init__(self):
        if self.lam < 0 or self.tau <= 0:
            raise ValueError(f"dormant model needs lambda >= 0 and tau > 0: {self}")


FailureModel = Union[Fixed, Rate, Dormant]


class Method(str, Enum):
    EP = "ep"
    RE = "re"
    EXACT = "exact"


@dataclass(frozen=True)
class QuantConfig:
    risk_time: float = MISSION_TIME_DEFAULT
    method: Method = Method.EP

    def __post_init__(self):
        if self.risk_time <= 0:
            raise ValueError("risk-assessment time must be positive")


@dataclass(frozen=True)
class Measures:
    q: float  # unavailability, dimensionless
    w: float  # frequency, per hour


def unavailability(m: FailureModel, cfg: QuantConfig = QuantConfig()) -> float:
    if isinstance(m, Fixed):
        return m.p
    if isinstance(m, Rate):
        mu = 1.0 / m.mttr
        if m.lam == 0.0:
            return 0.0
        s = m.lam + mu
        return m.lam * -math.expm1(-s * cfg.risk_time) / s
    if isinstance(m, Dormant):
        x = m.lam * m.tau
        if x == 0.0:
            return 0.0
        if x < 1e-4:
            # q = x/2 - x^2/6 + x^3/24 - x^4/120 + ...; the direct form loses
            # the tiny q to cancellation in 1 - (1 - e^-x)/x well above the
            # 1e-8 floor, so the series window is kept generous.
            return x / 2.0 - x * x / 6.0 + x**3 / 24.0 - x**4 / 120.0
        return 1.0 - (-math.expm1(-x)) / x
    raise TypeError(f"unknown failure model {m!r}")


def event_frequency(m: FailureModel, q: float) -> float:
    """w = lambda * (1 - q); fixed-probability events have no frequency."""
    if isinstance(m, Fixed):
        return 0.0
    return m.lam * (1.0 - q)


def measures(m: FailureModel, cfg: QuantConfig = QuantConfig()) -> Measures:
    q = unavailability(m, cfg)
    return Measures(q=q, w=event_frequency(m, q))


# ---------------------------------------------------------------------------
# Failure database.


@dataclass(frozen=True)
class FailureDatabase:
    entries: Mapping[str, FailureModel]

    def model(self, event_id: str) -> FailureModel:
        try:
            return self.entries[event_id]
        except KeyError:
            raise MissingFailureDataError(
                f"no failure data for event {event_id!r}"
            ) from None

    def measures(self, event_id: str, cfg: QuantConfig) -> Measures:
        return measures(self.model(event_id), cfg)

    def __contains__(self, event_id: str) -> bool:
        return event_id in self.entries


CSV_HEADER = ["event_id", "model", "p", "lambda_per_hour", "mttr_hours", "tau_hours"]


def database_from_csv(text: str) -> FailureDatabase:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ProgramStructureError(
            f"failure database header must be {','.join(CSV_HEADER)}"
        )
    entries: dict[str, FailureModel] = {}
    for row in reader:
        event_id = row["event_id"]
        kind = row["model"].upper()
        if kind == "FIXED":
            entries[event_id] = Fixed(float(row["p"]))
        elif kind == "RATE":
            entries[event_id] = Rate(float(row["lambda_per_hour"]), float(row["mttr_hours"]))
        elif kind == "DORMANT":
            entries[event_id] = Dormant(float(row["lambda_per_hour"]), float(row["tau_hours"]))
        else:
            raise ProgramStructureError(f"unknown failure model {row['model']!r}")
    return FailureDatabase(entries)


def database_to_csv(db: FailureDatabase) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for event_id in sorted(db.entries):
        writer.writerow(model_row(event_id, db.entries[event_id]))
    return out.getvalue()


def model_row(event_id: str, m: FailureModel) -> list[str]:
    if isinstance(m, Fixed):
        return [event_id, "FIXED", repr(m.p), "", "", ""]
    if isinstance(m, Rate):
        return [event_id, "RATE", "", repr(m.lam), repr(m.mttr), ""]
    return [event_id, "DORMANT", "", repr(m.lam), "", repr(m.tau)]


def load_database(path: str | os.PathLike) -> FailureDatabase:
    with open(path, "r", encoding="utf-8") as fh:
        return database_from_csv(fh.read())


# ---------------------------------------------------------------------------
# Cut-set and top-event measures.

EventCutSet = frozenset[str]


def mcs_measures(
    events: Iterable[str], db: FailureDatabase, cfg: QuantConfig = QuantConfig()
) -> Measures:
    """Q = prod q_i; W = sum_i w_i * prod_{j != i} q_j."""
    ms = [db.measures(e, cfg) for e in events]
    q_total = 1.0
    for m in ms:
        q_total *= m.q
    w_total = 0.0
    for i, m in enumerate(ms):
        if m.w == 0.0:
            continue
        partial = m.w
        for j, other in enumerate(ms):
            if j != i:
                partial *= other.q
        w_total += partial
    return Measures(q=q_total, w=w_total)


@dataclass(frozen=True)
class TopMeasures:
    q_top: float
    w_top: float
    method: Method
    per_cut_set: tuple[tuple[EventCutSet, Measures], ...]
    common_events: tuple[str, ...] = ()


def _normalize_cut_sets(cut_sets: Sequence[Iterable[str]]) -> list[EventCutSet]:
    return [frozenset(cs) for cs in cut_sets]


def top_measures(
    cut_sets: Sequence[Iterable[str]],
    db: FailureDatabase,
    cfg: QuantConfig = QuantConfig(),
) -> TopMeasures:
    sets = _normalize_cut_sets(cut_sets)
    per = tuple((cs, mcs_measures(cs, db, cfg)) for cs in sets)
    if not sets:
        return TopMeasures(0.0, 0.0, cfg.method, per)

    if cfg.method is Method.RE:
        q = min(sum(m.q for _, m in per), 1.0)
        w = sum(m.w for _, m in per)
        return TopMeasures(q, w, cfg.method, per)

    if cfg.method is Method.EP:
        common = frozenset.intersection(*sets) if sets else frozenset()
        q_common = 1.0
        for e in sorted(common):
            q_common *= db.measures(e, cfg).q
        prod = 1.0
        for cs in sets:
            reduced = mcs_measures(cs - common, db, cfg).q  # empty product = 1
            prod *= 1.0 - reduced
        q = q_common * (1.0 - prod)
        w = 0.0
        for i, (_, mi) in enumerate(per):
            term = mi.w
            for j, (_, mj) in enumerate(per):
                if j != i:
                    term *= 1.0 - mj.q
            w += term
        return TopMeasures(q, w, cfg.method, per, tuple(sorted(common)))

    if cfg.method is Method.EXACT:
        events = sorted(set().union(*sets))
        if len(events) > EXACT_EVENT_GUARD:
            raise ProgramStructureError(
                f"EXACT method limited to {EXACT_EVENT_GUARD} distinct events "
                f"(got {len(events)}); use EP or RE"
            )
        probs = {e: db.measures(e, cfg).q for e in events}
        q = exact_unavailability(sets, probs)
        w = 0.0
        for e in events:
            we = db.measures(e, cfg).w
            if we == 0.0:
                continue
            hi = exact_unavailability(sets, {**probs, e: 1.0})
            lo = exact_unavailability(sets, {**probs, e: 0.0})
            w += we * (hi - lo)
        return TopMeasures(q, w, cfg.method, per)

    raise ValueError(f"unknown method {cfg.method!r}")


def exact_unavailability(
    cut_sets: Sequence[EventCutSet], probs: Mapping[str, float]
) -> float:
    """P(union of cut sets) by Shannon expansion with memoization."""
    sets = [frozenset(cs) for cs in cut_sets]
    memo: dict[frozenset[EventCutSet], float] = {}

    def rec(current: tuple[EventCutSet, ...]) -> float:
        if any(len(cs) == 0 for cs in current):
            return 1.0
        if not current:
            return 0.0
        key = frozenset(current)
        if key in memo:
            return memo[key]
        # pivot on the most frequent event for smaller recursion trees
        counts: dict[str, int] = {}
        for cs in current:
            for e in cs:
                counts[e] = counts.get(e, 0) + 1
        pivot = max(sorted(counts), key=lambda e: counts[e])
        p = probs[pivot]
        with_e = tuple(sorted({cs - {pivot} for cs in current}, key=sorted))
        without_e = tuple(sorted({cs for cs in current if pivot not in cs}, key=sorted))
        value = p * rec(with_e) + (1.0 - p) * rec(without_e)
        memo[key] = value
        return value

    return rec(tuple(sets))


def sif_pfd(parts: Iterable[float]) -> float:
    """Aggregate probability of failure on demand across subsystems
    (sensors + logic solver + final elements), capped at 1."""
    total = 0.0
    for p in parts:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"PFD part out of range: {p}")
        total += p
    return min(total, 1.0)
