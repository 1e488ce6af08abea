"""Atoms of the failure-mode calculus and their minimized AND/OR structure.

Deviation modes describe how a reported value differs from its intended
value: ``h``/``l`` (reads too high / too low) on REAL nets, ``t``/``f``
(false True / false False) on BOOL nets. Conditions ``aT``/``aF`` constrain
the *actual* value of a BOOL net without asserting a deviation.

Final short lists speak only about channel states:

    HEALTHY  no detected fault (flag down); includes undetected deviations
    FAULTY   detected fault (flag up), genuine or spurious
    HI / LO  undetected deviation of the reading (flag down)

with the implication lattice HI => HEALTHY and LO => HEALTHY, and the
contradiction pairs {FAULTY, HEALTHY}, {FAULTY, HI}, {FAULTY, LO}, {HI, LO}
on a single channel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union


class Mode(str, Enum):
    HIGH = "h"
    LOW = "l"
    TRUE = "t"
    FALSE = "f"

    @property
    def is_real(self) -> bool:
        return self in (Mode.HIGH, Mode.LOW)


class Polarity(str, Enum):
    TRUE = "aT"
    FALSE = "aF"


class ChannelState(str, Enum):
    HEALTHY = "HEALTHY"
    FAULTY = "FAULTY"
    HI = "HI"
    LO = "LO"


#: state -> states it implies (besides itself)
IMPLIES = {
    ChannelState.HI: frozenset({ChannelState.HEALTHY}),
    ChannelState.LO: frozenset({ChannelState.HEALTHY}),
    ChannelState.HEALTHY: frozenset(),
    ChannelState.FAULTY: frozenset(),
}

CONTRADICTIONS = frozenset(
    {
        frozenset({ChannelState.FAULTY, ChannelState.HEALTHY}),
        frozenset({ChannelState.FAULTY, ChannelState.HI}),
        frozenset({ChannelState.FAULTY, ChannelState.LO}),
        frozenset({ChannelState.HI, ChannelState.LO}),
    }
)


def state_implies(a: ChannelState, b: ChannelState) -> bool:
    return a is b or b in IMPLIES[a]


def states_contradict(a: ChannelState, b: ChannelState) -> bool:
    return frozenset({a, b}) in CONTRADICTIONS


@dataclass(frozen=True)
class Deviation:
    net: str
    mode: Mode

    def __str__(self) -> str:
        return f"{self.net}={self.mode.value}"


@dataclass(frozen=True)
class Condition:
    net: str
    polarity: Polarity

    def __str__(self) -> str:
        return f"{self.net}@{self.polarity.value}"


@dataclass(frozen=True)
class StateLiteral:
    channel: str
    state: ChannelState

    def __str__(self) -> str:
        return f"{self.channel}:{self.state.value}"

    def sort_key(self) -> tuple[str, str]:
        return (self.channel, self.state.value)


@dataclass(frozen=True)
class Approximation:
    """Marker for an over-approximated step (a condition replaced by TRUE,
    or a saturating MIN/MAX direction). Behaves as TRUE semantically; cut
    sets derived through it are flagged so the oracle's soundness check can
    exempt them. Completeness is never affected."""

    net: str
    detail: str
    reason: str


Literal = Union[Deviation, Condition, StateLiteral, Approximation]


# ---------------------------------------------------------------------------
# Boolean formulas over literals (no negation; conditions and states carry
# the negative information).


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class FalseF(Formula):
    __slots__ = ()


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True)
class Atom(Formula):
    lit: Literal


@dataclass(frozen=True)
class And(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    children: tuple[Formula, ...]


def f_and(children: Iterable[Formula]) -> Formula:
    """Conjunction with flattening and constant folding."""
    flat: list[Formula] = []
    for c in children:
        if isinstance(c, FalseF):
            return FALSE
        if isinstance(c, TrueF):
            continue
        if isinstance(c, And):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def f_or(children: Iterable[Formula]) -> Formula:
    """Disjunction with flattening and constant folding."""
    flat: list[Formula] = []
    for c in children:
        if isinstance(c, TrueF):
            return TRUE
        if isinstance(c, FalseF):
            continue
        if isinstance(c, Or):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


# ---------------------------------------------------------------------------
# Cut sets and short lists.


@dataclass(frozen=True)
class CutSet:
    """Minimal conjunction of channel-state literals; ``approx`` marks cut
    sets that were derived through a condition over-approximation."""

    literals: frozenset[StateLiteral]
    approx: bool = False

    def sorted_literals(self) -> tuple[StateLiteral, ...]:
        return tuple(sorted(self.literals, key=StateLiteral.sort_key))

    def sort_key(self):
        return (len(self.literals), tuple(l.sort_key() for l in self.sorted_literals()))

    def __str__(self) -> str:
        return " & ".join(str(l) for l in self.sorted_literals())


@dataclass(frozen=True)
class ShortList:
    """Minimized failure-mode short list for one target deviation."""

    target_net: str
    mode: Mode
    cut_sets: tuple[CutSet, ...]
    warnings: tuple[str, ...] = ()

    def literal_sets(self) -> set[frozenset[StateLiteral]]:
        return {cs.literals for cs in self.cut_sets}

    def event_cut_sets(self) -> list[frozenset[str]]:
        """Cut sets as failure-database event ids (``CHANNEL:STATE``)."""
        return [frozenset(str(l) for l in cs.literals) for cs in self.cut_sets]
