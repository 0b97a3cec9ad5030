"""Head rewriting over stacks of naturals.

A stack is a tuple of ints, head first. Stacks of length >= 2 always match
exactly one of three rewrite rules, selected by whether the head and the
second element are zero:

    R1:  n # 0 # L      ->  n+1 # L
    R2:  0 # m+1 # L    ->  1 # m # L
    R3:  n+1 # m+1 # L  ->  n # m+1 # m # L

Iterating the rules from a two-element stack [n, m] computes A(m, n); the
full iteration is `ackloop`, and `acklist` is the one-collapse-per-step
description it is equivalent to.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import FuelExhausted, Nat, ack_memo, _check_nat

Stack = tuple[int, ...]


class RuleId(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    T_SINGLETON = "T_SINGLETON"
    T_EMPTY = "T_EMPTY"


@dataclass(frozen=True)
class Next:
    stack: Stack
    rule: RuleId


@dataclass(frozen=True)
class Terminal:
    rule: RuleId  # T_SINGLETON or T_EMPTY


def _check_stack(s: Stack) -> None:
    for x in s:
        _check_nat(x, "stack element")


def step(s: Stack) -> Next | Terminal:
    """One head rewrite. Total: every stack yields Next or Terminal."""
    if len(s) < 2:
        return Terminal(RuleId.T_SINGLETON if s else RuleId.T_EMPTY)
    head, second = s[0], s[1]
    rest = s[2:]
    if second == 0:
        return Next((head + 1,) + rest, RuleId.R1)
    if head == 0:
        return Next((1, second - 1) + rest, RuleId.R2)
    return Next((head - 1, second, second - 1) + rest, RuleId.R3)


@dataclass(frozen=True)
class Trace:
    """A rewrite history: states[i+1] is one application of steps[i] to states[i].

    Complete traces end in a stack of length <= 1; a trace attached to a
    FuelExhausted error is a prefix and may end anywhere.
    """

    states: tuple[Stack, ...]
    steps: tuple[RuleId, ...]

    def __post_init__(self) -> None:
        if len(self.states) != len(self.steps) + 1:
            raise ValueError("trace must have exactly one more state than steps")

    @property
    def initial(self) -> Stack:
        return self.states[0]

    @property
    def final(self) -> Stack:
        return self.states[-1]

    @property
    def complete(self) -> bool:
        return len(self.final) <= 1


@dataclass(frozen=True)
class LoopResult:
    value: Nat
    steps: int
    trace: Trace | None


def ackloop(s: Stack, fuel: int, record_trace: bool = True) -> LoopResult:
    """Rewrite until the stack is shorter than two elements.

    Returns the head of the final singleton (0 for the empty stack), the
    exact number of rewrite steps, and the trace unless recording was turned
    off for a large run. Raises FuelExhausted carrying the partial trace
    (or just the step count) when the budget runs out first.
    """
    s = tuple(s)
    _check_stack(s)
    _check_nat(fuel, "fuel")
    # Work on the reversed stack so every rule is O(1) list surgery.
    rev = list(reversed(s))
    states: list[Stack] | None = [s] if record_trace else None
    rules: list[RuleId] | None = [] if record_trace else None
    steps = 0
    while len(rev) >= 2:
        if steps == fuel:
            partial = None
            if states is not None and rules is not None:
                partial = Trace(tuple(states), tuple(rules))
            raise FuelExhausted(steps, partial)
        head = rev[-1]
        second = rev[-2]
        if second == 0:
            rev.pop()
            rev.pop()
            rev.append(head + 1)
            rid = RuleId.R1
        elif head == 0:
            rev[-2] = second - 1
            rev[-1] = 1
            rid = RuleId.R2
        else:
            rev[-2] = second - 1
            rev[-1] = second
            rev.append(head - 1)
            rid = RuleId.R3
        steps += 1
        if states is not None and rules is not None:
            states.append(tuple(reversed(rev)))
            rules.append(rid)
    value = rev[0] if rev else 0
    trace = None
    if states is not None and rules is not None:
        trace = Trace(tuple(states), tuple(rules))
    return LoopResult(value, steps, trace)


def acklist(s: Stack, memo_cap: int | None = None) -> Nat:
    """Collapse the two front elements n, m to A(m, n) until fewer than two remain.

    The specification-level description of what ackloop computes; each
    collapse goes through ack_memo, so memo resource errors propagate.
    """
    s = tuple(s)
    _check_stack(s)
    items = list(s)
    while len(items) >= 2:
        n, m = items[0], items[1]
        value = ack_memo(m, n) if memo_cap is None else ack_memo(m, n, memo_cap)
        items[:2] = [value]
    return items[0] if items else 0


def trace_render(t: Trace) -> str:
    """Text form of a trace: one line per state, space-separated, head first.

    Every line is newline-terminated and carries no trailing spaces; the
    empty stack renders as an empty line. Output is byte-for-byte stable.
    """
    return "".join(" ".join(map(str, state)) + "\n" for state in t.states)
