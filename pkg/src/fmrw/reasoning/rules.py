"""Per-block backward rules of the failure-mode calculus.

Each rule answers: given a deviation or actual-value condition on a block's
output, which literals on its inputs can explain it? The rule set is this
project's own formulation, reconstructed from the calculus' published
examples; it is validated end to end against the fault-injection oracle.

Deviation rules (``h``/``l`` on REAL, ``t``/``f`` on BOOL):

* monotone REAL block: ``out=h  =>  ORـi (in_i=h if INC else in_i=l)``; dual for ``l``.
* ``CONST``: cannot deviate (FALSE).
* ``LT(c)``: ``out=t => x=l``; ``out=f => x=h``. ``GT`` mirrored.
* ``NOT``: swaps ``t``/``f``.
* ``AND(n)``: ``out=f => OR_i in_i=f``;
  ``out=t => OR_i (in_i=t AND AND_{j!=i} in_j@aT)``.
* ``OR(n)``: ``out=t => OR_i in_i=t``;
  ``out=f => OR_i (in_i=f AND AND_{j!=i} in_j@aF)``.
* ``KOON(k,n)``: ``out=t`` needs some k-subset actually True containing a
  deviation; ``out=f`` needs some (n-k+1)-subset actually False containing one.
* ``SEL(c,a,b)``: ``out=m => (c@aT AND a=m) OR (c@aF AND b=m)``. Cross-terms
  for a deviated selector are deliberately omitted: in redundancy selectors
  both branches estimate the same quantity, so spurious selection is already
  carried by the selector's own fault state.

Condition rules (actual value of a BOOL output):

* ``NOT`` swaps polarity; ``AND@aT`` needs all inputs ``aT`` while ``AND@aF``
  needs one input ``aF``; ``OR`` dual; ``KOON`` combinatorial; ``SEL`` splits
  on the selector; a BOOL ``CONST`` resolves to TRUE/FALSE by value.
  Comparator outputs have no structural rule and are resolved by the engine
  against inferred intended values.
"""

from __future__ import annotations

from itertools import combinations

from fmrw.exceptions import ProgramStructureError
from fmrw.fbd.blocks import Block, BlockKind, Mono, MONOTONE_REAL, signature
from fmrw.reasoning.literals import (
    Approximation,
    Atom,
    Condition,
    Deviation,
    FALSE,
    Formula,
    Mode,
    Polarity,
    TRUE,
    f_and,
    f_or,
)


def _dev(net: str, mode: Mode) -> Formula:
    return Atom(Deviation(net, mode))


def _cond(net: str, pol: Polarity) -> Formula:
    return Atom(Condition(net, pol))


def backward_rule(block: Block, mode_or_polarity) -> Formula:
    """Rule-table entry for a deviation mode or condition polarity on the
    block's output, as a formula over the block's input nets."""
    if isinstance(mode_or_polarity, Mode):
        return _deviation_rule(block, mode_or_polarity)
    if isinstance(mode_or_polarity, Polarity):
        return _condition_rule(block, mode_or_polarity)
    raise TypeError(f"expected Mode or Polarity, got {mode_or_polarity!r}")


def _deviation_rule(block: Block, mode: Mode) -> Formula:
    k = block.kind
    ins = block.inputs

    if k is BlockKind.CONST:
        return FALSE

    if k in MONOTONE_REAL:
        if not mode.is_real:
            raise ProgramStructureError(f"block {block.id}: {mode.value} on REAL output")
        sig = signature(block)
        # Raising a MIN (or lowering a MAX) needs every input past the old
        # extreme; the per-input disjunct is an over-approximation there and
        # carries a marker so derived cut sets are flagged.
        saturating = (k is BlockKind.MIN and mode is Mode.HIGH) or (
            k is BlockKind.MAX and mode is Mode.LOW
        )
        branches = []
        for port, net in zip(sig.inputs, ins):
            if port.mono is Mono.INC:
                branch = _dev(net, mode)
            elif port.mono is Mono.DEC:
                flipped = Mode.LOW if mode is Mode.HIGH else Mode.HIGH
                branch = _dev(net, flipped)
            else:
                continue
            if saturating and len(ins) > 1:
                marker = Atom(Approximation(block.output, mode.value, "saturating-extremum"))
                branch = f_and([branch, marker])
            branches.append(branch)
        return f_or(branches)

    if k is BlockKind.LT:
        return _dev(ins[0], Mode.LOW if mode is Mode.TRUE else Mode.HIGH)
    if k is BlockKind.GT:
        return _dev(ins[0], Mode.HIGH if mode is Mode.TRUE else Mode.LOW)

    if k is BlockKind.NOT:
        return _dev(ins[0], Mode.FALSE if mode is Mode.TRUE else Mode.TRUE)

    if k is BlockKind.AND:
        if mode is Mode.FALSE:
            return f_or(_dev(n, Mode.FALSE) for n in ins)
        return f_or(
            f_and(
                [_dev(n, Mode.TRUE)]
                + [_cond(m, Polarity.TRUE) for m in ins if m is not n]
            )
            for n in ins
        )

    if k is BlockKind.OR:
        if mode is Mode.TRUE:
            return f_or(_dev(n, Mode.TRUE) for n in ins)
        return f_or(
            f_and(
                [_dev(n, Mode.FALSE)]
                + [_cond(m, Polarity.FALSE) for m in ins if m is not n]
            )
            for n in ins
        )

    if k is BlockKind.KOON:
        need_k = block.params["k"]
        n_total = len(ins)
        if mode is Mode.TRUE:
            size, pol, dev = need_k, Polarity.TRUE, Mode.TRUE
        else:
            size, pol, dev = n_total - need_k + 1, Polarity.FALSE, Mode.FALSE
        subsets = []
        for subset in combinations(ins, size):
            subsets.append(
                f_and(
                    [f_or(_dev(n, dev) for n in subset)]
                    + [_cond(n, pol) for n in subset]
                )
            )
        return f_or(subsets)

    if k is BlockKind.SEL:
        sel, a, b = ins
        return f_or(
            [
                f_and([_cond(sel, Polarity.TRUE), _dev(a, mode)]),
                f_and([_cond(sel, Polarity.FALSE), _dev(b, mode)]),
            ]
        )

    raise ProgramStructureError(f"block {block.id}: no deviation rule for {k.value}")


def _condition_rule(block: Block, pol: Polarity) -> Formula | None:
    """Structural condition rule, or None when unresolvable (comparators)."""
    k = block.kind
    ins = block.inputs

    if k is BlockKind.CONST:
        value = bool(block.params["value"])
        wanted = pol is Polarity.TRUE
        return TRUE if value == wanted else FALSE

    if k is BlockKind.NOT:
        swapped = Polarity.FALSE if pol is Polarity.TRUE else Polarity.TRUE
        return _cond(ins[0], swapped)

    if k is BlockKind.AND:
        if pol is Polarity.TRUE:
            return f_and(_cond(n, Polarity.TRUE) for n in ins)
        return f_or(_cond(n, Polarity.FALSE) for n in ins)

    if k is BlockKind.OR:
        if pol is Polarity.TRUE:
            return f_or(_cond(n, Polarity.TRUE) for n in ins)
        return f_and(_cond(n, Polarity.FALSE) for n in ins)

    if k is BlockKind.KOON:
        need_k = block.params["k"]
        size = need_k if pol is Polarity.TRUE else len(ins) - need_k + 1
        return f_or(
            f_and(_cond(n, pol) for n in subset) for subset in combinations(ins, size)
        )

    if k is BlockKind.SEL:
        sel, a, b = ins
        return f_or(
            [
                f_and([_cond(sel, Polarity.TRUE), _cond(a, pol)]),
                f_and([_cond(sel, Polarity.FALSE), _cond(b, pol)]),
            ]
        )

    # LT/GT: a comparator's actual value is not a structural function of
    # Boolean inputs; the engine resolves it against intended values.
    return None
