"""Per-block backward rule table."""

import pytest

from fmrw.fbd.blocks import Block, BlockKind
from fmrw.reasoning.literals import (
    And,
    Approximation,
    Atom,
    Condition,
    Deviation,
    FALSE,
    Mode,
    Or,
    Polarity,
    TRUE,
)
from fmrw.reasoning.rules import backward_rule, _condition_rule


def atoms(formula):
    """Expand a rule formula into DNF conjuncts of literals."""
    if isinstance(formula, Atom):
        return {frozenset([formula.lit])}
    if isinstance(formula, And):
        acc = {frozenset()}
        for c in formula.children:
            acc = {a | b for a in acc for b in atoms(c)}
        return acc
    if isinstance(formula, Or):
        result = set()
        for c in formula.children:
            result |= atoms(c)
        return result
    raise AssertionError(f"unexpected {formula!r}")


def dev(net, mode):
    return Deviation(net, mode)


def cond(net, pol):
    return Condition(net, pol)


def test_average_reads_high_when_an_input_reads_high():
    avg = Block("a", BlockKind.AVG, {}, ("x1", "x2"), "y")
    assert atoms(backward_rule(avg, Mode.HIGH)) == {
        frozenset([dev("x1", Mode.HIGH)]),
        frozenset([dev("x2", Mode.HIGH)]),
    }


def test_constant_cannot_deviate():
    const = Block("k", BlockKind.CONST, {"value": 5.0}, (), "y")
    assert backward_rule(const, Mode.HIGH) is FALSE


def test_subtraction_flips_direction_on_decreasing_input():
    sub = Block("s", BlockKind.SUB, {}, ("a", "b"), "y")
    assert atoms(backward_rule(sub, Mode.HIGH)) == {
        frozenset([dev("a", Mode.HIGH)]),
        frozenset([dev("b", Mode.LOW)]),
    }


def test_or_false_false_is_exact_case_analysis():
    gate = Block("o", BlockKind.OR, {}, ("in1", "in2"), "y")
    assert atoms(backward_rule(gate, Mode.FALSE)) == {
        frozenset([dev("in1", Mode.FALSE), cond("in2", Polarity.FALSE)]),
        frozenset([dev("in2", Mode.FALSE), cond("in1", Polarity.FALSE)]),
    }


def test_comparator_and_negation_rules():
    lt = Block("c", BlockKind.LT, {"threshold": 1.0}, ("x",), "y")
    assert atoms(backward_rule(lt, Mode.TRUE)) == {frozenset([dev("x", Mode.LOW)])}
    assert atoms(backward_rule(lt, Mode.FALSE)) == {frozenset([dev("x", Mode.HIGH)])}
    gt = Block("c", BlockKind.GT, {"threshold": 1.0}, ("x",), "y")
    assert atoms(backward_rule(gt, Mode.TRUE)) == {frozenset([dev("x", Mode.HIGH)])}
    inv = Block("n", BlockKind.NOT, {}, ("x",), "y")
    assert atoms(backward_rule(inv, Mode.TRUE)) == {frozenset([dev("x", Mode.FALSE)])}


def test_voter_false_false_enumerates_blocking_subsets():
    koon = Block("v", BlockKind.KOON, {"k": 2}, ("a", "b", "c"), "y")
    got = atoms(backward_rule(koon, Mode.FALSE))
    # any 2 of 3 actually-False inputs with a deviation among them
    expected = set()
    for pair in (("a", "b"), ("a", "c"), ("b", "c")):
        for deviating in pair:
            expected.add(
                frozenset(
                    [dev(deviating, Mode.FALSE)]
                    + [cond(n, Polarity.FALSE) for n in pair]
                )
            )
    assert got == expected


def test_selector_splits_on_selector_value():
    sel = Block("s", BlockKind.SEL, {}, ("c", "a", "b"), "y")
    assert atoms(backward_rule(sel, Mode.HIGH)) == {
        frozenset([cond("c", Polarity.TRUE), dev("a", Mode.HIGH)]),
        frozenset([cond("c", Polarity.FALSE), dev("b", Mode.HIGH)]),
    }


def test_condition_rules_for_gates():
    gate = Block("g", BlockKind.AND, {}, ("a", "b"), "y")
    assert atoms(_condition_rule(gate, Polarity.TRUE)) == {
        frozenset([cond("a", Polarity.TRUE), cond("b", Polarity.TRUE)])
    }
    assert atoms(_condition_rule(gate, Polarity.FALSE)) == {
        frozenset([cond("a", Polarity.FALSE)]),
        frozenset([cond("b", Polarity.FALSE)]),
    }
    inv = Block("n", BlockKind.NOT, {}, ("a",), "y")
    assert atoms(_condition_rule(inv, Polarity.TRUE)) == {
        frozenset([cond("a", Polarity.FALSE)])
    }
    true_const = Block("k", BlockKind.CONST, {"value": True}, (), "y")
    assert _condition_rule(true_const, Polarity.TRUE) is TRUE
    assert _condition_rule(true_const, Polarity.FALSE) is FALSE


def test_comparator_conditions_are_structurally_unresolvable():
    lt = Block("c", BlockKind.LT, {"threshold": 1.0}, ("x",), "y")
    assert _condition_rule(lt, Polarity.TRUE) is None


def test_extremum_saturating_direction_is_flagged():
    mn = Block("m", BlockKind.MIN, {}, ("x1", "x2"), "y")
    for conjunct in atoms(backward_rule(mn, Mode.HIGH)):
        assert any(isinstance(l, Approximation) for l in conjunct)
    for conjunct in atoms(backward_rule(mn, Mode.LOW)):
        assert not any(isinstance(l, Approximation) for l in conjunct)
    mx = Block("m", BlockKind.MAX, {}, ("x1", "x2"), "y")
    for conjunct in atoms(backward_rule(mx, Mode.LOW)):
        assert any(isinstance(l, Approximation) for l in conjunct)
