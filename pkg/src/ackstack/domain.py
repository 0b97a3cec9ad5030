"""Inductive graph saturation and checkable termination evidence.

Two families of objects live here. Graph relations are least fixed points
of the input/output rules induced by a recursive definition, generated by
bounded forward saturation: for the Ackermann recursion the rules are

    (0, n) -> n+1
    (m, 1) -> r                        implies (m+1, 0) -> r
    (m+1, n) -> r1  and  (m, r1) -> r2 implies (m+1, n+1) -> r2

and for the everywhere-undefined U(x) = U(x) + 1 the single rule
(x, h) in G implies (x, h+1) in G, which generates nothing from nothing.

Domain certificates witness that the head rewriting terminates on a given
stack: the full rewrite chain down to a stack of length <= 1, annotated with
the rule used at each link. `certificate_verify` re-checks every link with
its own pattern logic, on purpose sharing no code with `machine.step`, so a
certificate is evidence rather than an echo of the evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet

from .core import FuelExhausted, ResourceCapExceeded, _check_nat
from .machine import RuleId, Stack, Trace, ackloop

DEFAULT_ENTRY_CAP = 200_000


class EntryCapExceeded(ResourceCapExceeded):
    def __init__(self, cap: int):
        super().__init__(f"saturation would exceed {cap} entries")
        self.cap = cap


@dataclass(frozen=True)
class GraphRelation:
    """A finite set of (input, output) pairs plus the bounds that generated it."""

    entries: FrozenSet[tuple]
    bounds: tuple

    def outputs_of(self, key) -> set:
        return {out for inp, out in self.entries if inp == key}

    def single_valued(self) -> bool:
        seen: dict = {}
        for inp, out in self.entries:
            if seen.setdefault(inp, out) != out:
                return False
        return True

    def __len__(self) -> int:
        return len(self.entries)


def graph_saturate_ack(max_m: int, max_n: int, max_val: int,
                       entry_cap: int = DEFAULT_ENTRY_CAP) -> GraphRelation:
    """Saturate the Ackermann graph rules to a fixed point within bounds.

    Internally a pair (m, n) -> v is admitted while m <= max_m and
    v <= max_val; the returned relation keeps the entries with n <= max_n.
    max_n is the reporting window rather than a rule bound because the
    third rule feeds earlier *outputs* back in as second arguments, so
    pairs far beyond max_n are legitimate intermediate derivations.
    """
    _check_nat(max_m, "max_m")
    _check_nat(max_n, "max_n")
    _check_nat(max_val, "max_val")
    if (max_m + 1) * (max_val + 1) > entry_cap:
        raise EntryCapExceeded(entry_cap)

    outputs: dict[tuple[int, int], set[int]] = {}
    total = 0

    def admit(m: int, n: int, v: int) -> bool:
        nonlocal total
        outs = outputs.setdefault((m, n), set())
        if v in outs:
            return False
        outs.add(v)
        total += 1
        if total > entry_cap:
            raise EntryCapExceeded(entry_cap)
        return True

    for n in range(max_val):
        admit(0, n, n + 1)

    changed = True
    while changed:
        changed = False
        snapshot = [(inp, out) for inp, outs in outputs.items() for out in outs]
        for (m, n), r in snapshot:
            if n == 1 and m + 1 <= max_m:
                if admit(m + 1, 0, r):
                    changed = True
            if m >= 1:
                # (m, n) -> r is the first premise of the third rule.
                for r2 in outputs.get((m - 1, r), ()):
                    if admit(m, n + 1, r2):
                        changed = True

    kept = frozenset(((m, n), v)
                     for (m, n), outs in outputs.items()
                     for v in outs if n <= max_n)
    return GraphRelation(kept, (max_m, max_n, max_val))


def graph_saturate_U(fuel: int) -> GraphRelation:
    """Saturate the graph rule of U(x) = U(x) + 1; the result is always empty.

    The rule has no base case, so each pass over the empty set is vacuous.
    Fuel bounds the passes defensively.
    """
    _check_nat(fuel, "fuel")
    entries: set[tuple[int, int]] = set()
    for _ in range(fuel):
        new = {(x, h + 1) for (x, h) in entries} - entries
        if not new:
            break
        entries |= new
    return GraphRelation(frozenset(entries), ("fuel", fuel))


def domain_saturate_U(fuel: int) -> frozenset:
    """Saturate the domain rule x in D implies x in D; also always empty."""
    _check_nat(fuel, "fuel")
    members: set[int] = set()
    for _ in range(fuel):
        new = set(members) - members
        if not new:
            break
        members |= new
    return frozenset(members)


@dataclass(frozen=True)
class DomCertificate:
    """Termination evidence for one stack.

    The chain runs forward from the conclusion down to a stack of length
    <= 1 (the unconditional base cases). Read backwards, every link is one
    instance of a conditional introduction rule of the termination domain.
    """

    chain: tuple[Stack, ...]
    rules: tuple[RuleId, ...]
    conclusion: Stack


@dataclass(frozen=True)
class DomVerdict:
    member: bool
    evidence: DomCertificate | None
    fuel_used: int


@dataclass(frozen=True)
class CertVerdict:
    valid: bool
    position: int | None = None
    reason: str | None = None


def certificate_build(t: Trace) -> DomCertificate:
    """Package a complete trace as a certificate; rejects partial traces."""
    if not t.complete:
        raise ValueError("cannot build a certificate from an incomplete trace")
    return DomCertificate(chain=t.states, rules=t.steps, conclusion=t.initial)


def certificate_verify(c: DomCertificate) -> CertVerdict:
    """Re-check every link of a certificate independently of the evaluator.

    Valid iff the conclusion heads the chain, each adjacent pair is exactly
    one application of the claimed rule, and the chain ends in a base case
    (length <= 1). Invalid verdicts carry the first failing position: link
    index i for a bad pair (chain[i], chain[i+1]), 0 for a conclusion
    mismatch, and the last state index for a missing base case.
    """
    if not c.chain:
        return CertVerdict(False, 0, "empty chain")
    if len(c.rules) != len(c.chain) - 1:
        return CertVerdict(False, 0, "rule count does not match chain length")
    if c.conclusion != c.chain[0]:
        return CertVerdict(False, 0, "conclusion does not match first state")
    for i, rule in enumerate(c.rules):
        a, b = c.chain[i], c.chain[i + 1]
        if len(a) < 2:
            return CertVerdict(False, i, "state too short for any rewrite rule")
        if any(not isinstance(x, int) or x < 0 for x in a + b):
            return CertVerdict(False, i, "non-natural stack element")
        if rule is RuleId.R1:
            ok = a[1] == 0 and b == (a[0] + 1,) + a[2:]
        elif rule is RuleId.R2:
            ok = a[0] == 0 and a[1] >= 1 and b == (1, a[1] - 1) + a[2:]
        elif rule is RuleId.R3:
            ok = a[0] >= 1 and a[1] >= 1 and b == (a[0] - 1, a[1], a[1] - 1) + a[2:]
        else:
            return CertVerdict(False, i, f"{rule.name} is not a rewrite rule")
        if not ok:
            return CertVerdict(False, i, f"link is not an application of {rule.name}")
    if len(c.chain[-1]) > 1:
        return CertVerdict(False, len(c.chain) - 1, "no base case: final stack longer than one")
    return CertVerdict(True)


def dom_check(s: Stack, fuel: int) -> DomVerdict:
    """Decide termination-within-fuel by running the evaluator forward.

    Membership comes with a certificate built from the trace; running out
    of fuel is a negative verdict (fuel_used = fuel), never an error.
    """
    try:
        result = ackloop(tuple(s), fuel, record_trace=True)
    except FuelExhausted as e:
        return DomVerdict(False, None, e.steps)
    assert result.trace is not None
    return DomVerdict(True, certificate_build(result.trace), result.steps)
