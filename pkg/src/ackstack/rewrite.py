"""A small rewriting engine over stacks of naturals.

Rules are head patterns with a tail variable, written one per line:

    x 0 | L -> S(x) | L
    0 S m | L -> 1 m | L
    S x S m | L -> x S(m) m | L

Left-hand slots are `0`, `S <var>` (a positive number, binding its
predecessor) or a bare variable. Right-hand terms are `0`, a variable,
`S(<term>)` nested freely, or a decimal literal standing for that many
successors of zero. `#` starts a comment line; blank lines are ignored.

A system is applied either anchored (position 0 only, the regime in which
the three rules above compute Ackermann's function) or free (any position),
where the same rules stop being terminating: `divergence_search` looks for
replayable evidence of that within explicit bounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Sequence

Stack = tuple[int, ...]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_DECIMAL = re.compile(r"(0|[1-9][0-9]*)\Z")


class RuleSyntaxError(ValueError):
    """Rule text rejected; carries the 1-based line and column."""

    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class DuplicateVariableError(RuleSyntaxError):
    pass


class UnboundVariableError(RuleSyntaxError):
    pass


# Pattern slots (left-hand side).

@dataclass(frozen=True)
class PZero:
    pass


@dataclass(frozen=True)
class PSucc:
    var: str


@dataclass(frozen=True)
class PVar:
    var: str


# Template terms (right-hand side).

@dataclass(frozen=True)
class TZero:
    pass


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TSucc:
    arg: "TZero | TVar | TSucc"


@dataclass(frozen=True)
class Pattern:
    slots: tuple[PZero | PSucc | PVar, ...]
    tail: str


@dataclass(frozen=True)
class Template:
    terms: tuple[TZero | TVar | TSucc, ...]
    tail: str


@dataclass(frozen=True)
class Rule:
    lhs: Pattern
    rhs: Template


class Mode(Enum):
    ANCHORED = "anchored"
    FREE = "free"


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple[Rule, ...]
    mode: Mode = Mode.ANCHORED

    def with_mode(self, mode: Mode) -> "RewriteSystem":
        return replace(self, mode=mode)


def _tokenize(text: str) -> list[tuple[str, int]]:
    # Tokens with their 1-based start column.
    tokens = []
    col = 0
    for part in re.finditer(r"\S+", text):
        tokens.append((part.group(), part.start() + 1))
        col = part.end()
    return tokens


def _parse_term(tok: str, line: int, col: int, bound: set[str]) -> TZero | TVar | TSucc:
    if tok == "0":
        return TZero()
    if _DECIMAL.match(tok):
        term: TZero | TVar | TSucc = TZero()
        for _ in range(int(tok)):
            term = TSucc(term)
        return term
    if tok.startswith("S(") and tok.endswith(")"):
        return TSucc(_parse_term(tok[2:-1], line, col + 2, bound))
    if _NAME.match(tok) and tok != "S":
        if tok not in bound:
            raise UnboundVariableError(f"variable '{tok}' is not bound by the pattern", line, col)
        return TVar(tok)
    raise RuleSyntaxError(f"cannot parse term {tok!r}", line, col)


def _parse_rule(text: str, line: int) -> Rule:
    tokens = _tokenize(text)
    arrow = [i for i, (tok, _) in enumerate(tokens) if tok == "->"]
    if len(arrow) != 1:
        col = tokens[-1][1] if tokens else 1
        raise RuleSyntaxError("rule must contain exactly one '->'", line, col)
    lhs_toks, rhs_toks = tokens[:arrow[0]], tokens[arrow[0] + 1:]

    def split_tail(toks: list[tuple[str, int]], side: str) -> tuple[list[tuple[str, int]], str, int]:
        bars = [i for i, (tok, _) in enumerate(toks) if tok == "|"]
        if len(bars) != 1 or bars[0] != len(toks) - 2:
            col = toks[-1][1] if toks else 1
            raise RuleSyntaxError(f"{side} must end with '| <tailvar>'", line, col)
        name, col = toks[-1]
        if not _NAME.match(name) or name == "S":
            raise RuleSyntaxError(f"bad tail variable {name!r}", line, col)
        return toks[:bars[0]], name, col

    slot_toks, lhs_tail, lhs_tail_col = split_tail(lhs_toks, "left-hand side")
    term_toks, rhs_tail, rhs_tail_col = split_tail(rhs_toks, "right-hand side")

    slots: list[PZero | PSucc | PVar] = []
    seen: set[str] = set()

    def bind(name: str, col: int) -> None:
        if name in seen:
            raise DuplicateVariableError(f"variable '{name}' bound twice in one pattern", line, col)
        seen.add(name)

    i = 0
    while i < len(slot_toks):
        tok, col = slot_toks[i]
        if tok == "0":
            slots.append(PZero())
        elif tok == "S":
            if i + 1 >= len(slot_toks):
                raise RuleSyntaxError("'S' must be followed by a variable", line, col)
            name, ncol = slot_toks[i + 1]
            if not _NAME.match(name) or name == "S":
                raise RuleSyntaxError(f"bad variable {name!r} after 'S'", line, ncol)
            bind(name, ncol)
            slots.append(PSucc(name))
            i += 1
        elif _NAME.match(tok) and tok != "S":
            bind(tok, col)
            slots.append(PVar(tok))
        else:
            raise RuleSyntaxError(f"cannot parse slot pattern {tok!r}", line, col)
        i += 1
    if not slots:
        raise RuleSyntaxError("pattern needs at least one slot", line, 1)
    bind(lhs_tail, lhs_tail_col)

    if rhs_tail != lhs_tail:
        raise UnboundVariableError(
            f"tail variable '{rhs_tail}' does not match pattern tail '{lhs_tail}'",
            line, rhs_tail_col)

    bound = seen - {lhs_tail}
    terms = tuple(_parse_term(tok, line, col, bound) for tok, col in term_toks)
    return Rule(Pattern(tuple(slots), lhs_tail), Template(terms, rhs_tail))


def parse_rules(text: str, mode: Mode = Mode.ANCHORED) -> RewriteSystem:
    """Parse rule text into a system, preserving rule order."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rules.append(_parse_rule(raw, lineno))
    return RewriteSystem(tuple(rules), mode)


def _render_term(term: TZero | TVar | TSucc) -> str:
    # Closed successor towers render as decimals, like the input sugar.
    depth = 0
    t = term
    while isinstance(t, TSucc):
        depth += 1
        t = t.arg
    if isinstance(t, TZero):
        return str(depth)
    out = t.name
    for _ in range(depth):
        out = f"S({out})"
    return out


def render_rules(sys: RewriteSystem) -> str:
    """Rule text that parses back to an equal system."""
    lines = []
    for rule in sys.rules:
        slots = " ".join(
            "0" if isinstance(s, PZero) else f"S {s.var}" if isinstance(s, PSucc) else s.var
            for s in rule.lhs.slots)
        terms = " ".join(_render_term(t) for t in rule.rhs.terms)
        lhs = f"{slots} | {rule.lhs.tail}"
        rhs = f"{terms} | {rule.rhs.tail}" if terms else f"| {rule.rhs.tail}"
        lines.append(f"{lhs} -> {rhs}")
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class Rewritten:
    stack: Stack
    rule_index: int  # 0-based position of the rule in the system


def _match(rule: Rule, s: Stack, pos: int) -> dict[str, object] | None:
    slots = rule.lhs.slots
    if pos + len(slots) > len(s):
        return None
    binding: dict[str, object] = {}
    for slot, value in zip(slots, s[pos:pos + len(slots)]):
        if isinstance(slot, PZero):
            if value != 0:
                return None
        elif isinstance(slot, PSucc):
            if value < 1:
                return None
            binding[slot.var] = value - 1
        else:
            binding[slot.var] = value
    binding[rule.lhs.tail] = s[pos + len(slots):]
    return binding


def _eval_term(term: TZero | TVar | TSucc, binding: dict[str, object]) -> int:
    bump = 0
    while isinstance(term, TSucc):
        bump += 1
        term = term.arg
    if isinstance(term, TZero):
        return bump
    return bump + int(binding[term.name])  # type: ignore[arg-type]


def apply_at(sys: RewriteSystem, s: Stack, position: int) -> Rewritten | None:
    """Try the rules in order at one position; first match wins.

    Returns None when nothing matches. Raises ValueError for a position
    outside the stack, or any nonzero position in anchored mode.
    """
    s = tuple(s)
    if sys.mode is Mode.ANCHORED and position != 0:
        raise ValueError(f"anchored mode only rewrites at position 0, got {position}")
    if position < 0 or position >= max(len(s), 1):
        raise ValueError(f"position {position} out of range for stack of length {len(s)}")
    for index, rule in enumerate(sys.rules):
        binding = _match(rule, s, position)
        if binding is None:
            continue
        produced = tuple(_eval_term(t, binding) for t in rule.rhs.terms)
        tail: Stack = binding[rule.lhs.tail]  # type: ignore[assignment]
        return Rewritten(s[:position] + produced + tail, index)
    return None


@dataclass(frozen=True)
class RunResult:
    stack: Stack
    steps: int
    states: tuple[Stack, ...] | None
    applied: tuple[tuple[int, int], ...] | None  # (position, rule_index) per step


def run(sys: RewriteSystem, s: Stack, fuel: int,
        positions: Sequence[int] | None = None,
        record_trace: bool = True) -> RunResult:
    """Rewrite repeatedly under a strategy.

    positions=None means leftmost: the smallest matching position each step
    (always 0 in anchored mode). An explicit position sequence is applied
    verbatim and must match at every listed position, so recorded witnesses
    replay exactly; the run ends when the sequence does. Ends normally when
    no permitted position matches; raises FuelExhausted otherwise.
    """
    from .core import FuelExhausted, _check_nat

    s = tuple(s)
    for x in s:
        _check_nat(x, "stack element")
    _check_nat(fuel, "fuel")

    states: list[Stack] | None = [s] if record_trace else None
    applied: list[tuple[int, int]] | None = [] if record_trace else None
    steps = 0
    cur = s

    def out_of_fuel() -> FuelExhausted:
        partial = RunResult(cur, steps,
                            tuple(states) if states is not None else None,
                            tuple(applied) if applied is not None else None)
        return FuelExhausted(steps, partial)

    if positions is not None:
        for pos in positions:
            if steps == fuel:
                raise out_of_fuel()
            result = apply_at(sys, cur, pos)
            if result is None:
                raise ValueError(f"no rule matches at position {pos} after {steps} steps")
            cur = result.stack
            steps += 1
            if states is not None and applied is not None:
                states.append(cur)
                applied.append((pos, result.rule_index))
    else:
        while True:
            candidates: Iterable[int] = (0,) if sys.mode is Mode.ANCHORED else range(len(cur))
            hit = None
            if cur:
                for pos in candidates:
                    result = apply_at(sys, cur, pos)
                    if result is not None:
                        hit = (pos, result)
                        break
            if hit is None:
                break
            if steps == fuel:
                raise out_of_fuel()
            pos, result = hit
            cur = result.stack
            steps += 1
            if states is not None and applied is not None:
                states.append(cur)
                applied.append((pos, result.rule_index))

    return RunResult(cur, steps,
                     tuple(states) if states is not None else None,
                     tuple(applied) if applied is not None else None)


@dataclass(frozen=True)
class Witness:
    """Replayable evidence of free-mode divergence.

    kind is "growth" (the final stack exceeds the length threshold),
    "pump" (an earlier state on the path is a strict prefix of the final
    state, so the derivation repeats with ever longer tails) or "cycle"
    (the final state equals an earlier one exactly). pivot is the index of
    that earlier state in the replayed state sequence; -1 for growth.
    """

    start: Stack
    positions: tuple[int, ...]
    kind: str
    pivot: int


def replay_witness(sys: RewriteSystem, w: Witness, growth_threshold: int) -> bool:
    """Re-run a witness through apply_at and confirm what it claims."""
    cur = tuple(w.start)
    chain = [cur]
    for pos in w.positions:
        result = apply_at(sys, cur, pos)
        if result is None:
            return False
        cur = result.stack
        chain.append(cur)
    if w.kind == "growth":
        return len(cur) > growth_threshold
    if w.kind == "cycle":
        return 0 <= w.pivot < len(chain) - 1 and chain[w.pivot] == cur
    if w.kind == "pump":
        anc = chain[w.pivot] if 0 <= w.pivot < len(chain) - 1 else None
        return anc is not None and len(anc) < len(cur) and cur[:len(anc)] == anc
    return False


def divergence_search(sys: RewriteSystem, starts: Iterable[Stack], fuel: int,
                      growth_threshold: int) -> Witness | None:
    """Bounded breadth-first search for free-mode divergence evidence.

    Starts are tried in sorted order; within one start the search expands
    positions in increasing order, so the first witness found has the
    lexicographically least position sequence among shortest ones. Fuel
    counts rule applications across the whole search. None means nothing
    was found within the bounds, never that the system terminates.
    """
    if sys.mode is not Mode.FREE:
        raise ValueError("divergence search requires free mode")
    remaining = fuel
    for start in sorted(set(tuple(s) for s in starts)):
        frontier: list[tuple[Stack, tuple[int, ...], tuple[Stack, ...]]] = [(start, (), (start,))]
        visited = {start}
        while frontier:
            next_frontier = []
            for stack, path, chain in frontier:
                for pos in range(len(stack)):
                    if remaining == 0:
                        return None
                    result = apply_at(sys, stack, pos)
                    if result is None:
                        continue
                    remaining -= 1
                    child = result.stack
                    child_path = path + (pos,)
                    if len(child) > growth_threshold:
                        return Witness(start, child_path, "growth", -1)
                    for depth, ancestor in enumerate(chain):
                        if len(ancestor) > len(child):
                            continue
                        if child == ancestor:
                            return Witness(start, child_path, "cycle", depth)
                        if child[:len(ancestor)] == ancestor:
                            return Witness(start, child_path, "pump", depth)
                    if child in visited:
                        continue
                    visited.add(child)
                    next_frontier.append((child, child_path, chain + (child,)))
            frontier = next_frontier
    return None


def ack_rules_text() -> str:
    """The packaged rule file computing Ackermann's function at the head."""
    from importlib import resources

    return resources.files("ackstack").joinpath("data/ack.rules").read_text(encoding="utf-8")


ACK_RULES = ack_rules_text()
