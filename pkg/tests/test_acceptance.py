"""Acceptance suite.

One test per acceptance check, each printing a PASS/FAIL line (run with
``pytest tests/test_acceptance.py -v -s`` to see them). Exact tolerances
throughout; no approximate comparisons anywhere.

Three checks are documented over the grid of all stacks with length <= 4
and elements <= 3. That grid contains corners whose evaluation cost is
astronomically beyond any machine: collapsing [2,3,3] takes about 9.2e18
head rewrites (the analytic step-count recurrence below gives the exact
number), and [3,3,3,3] reaches a value of 2^(2^64) - 3, which does not fit
in this universe's memory. Those checks therefore run in two parts: an
exact pass over every cell tractable within an explicit step budget, plus
a strict-xfail twin that states the documented full-grid form and fails
with the offending magnitudes, so the gap stays visible instead of being
quietly narrowed.
"""

from __future__ import annotations

import itertools
import json
import random
from pathlib import Path

import pytest

from ackstack.cli import main
from ackstack.core import ack_closed, ack_memo
from ackstack.domain import (DomCertificate, certificate_build,
                             certificate_verify, domain_saturate_U,
                             graph_saturate_U, graph_saturate_ack)
from ackstack.machine import RuleId, ackloop, acklist, step
from ackstack.rewrite import (ACK_RULES, Mode, Witness, apply_at,
                              divergence_search, parse_rules, replay_witness)

from oracles import AckOracle, CallCountOracle, collapse_cost_sat

ORACLE = AckOracle()
CALLS = CallCountOracle(ORACLE)
GOLDEN = Path(__file__).parent / "golden" / "trace_2_3.txt"

# All stacks with length <= 4 and elements <= 3 (341 of them).
FULL_GRID: list[tuple[int, ...]] = [()]
for _length in range(1, 5):
    FULL_GRID += [t for t in itertools.product(range(4), repeat=_length)]

EQUIV_BUDGET = 3_000_000   # rewrite steps per cell for the value comparison
CERT_BUDGET = 100_000      # per cell when the full trace must be materialized
MINUTE_BUDGET = 2 * 10**8  # generous upper bound on steps a minute could ever cover


def tractable(budget: int) -> list[tuple[int, ...]]:
    return [s for s in FULL_GRID if collapse_cost_sat(s, budget) <= budget]


def report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: {status}{suffix}")


def test_golden_trace(capsys):
    # Byte-for-byte reproduction of the 45-line listing for [3, 2].
    assert main(["trace", "2", "3", "--format", "text"]) == 0
    out = capsys.readouterr().out
    golden = GOLDEN.read_bytes()
    assert out.encode() == golden
    lines = out.splitlines()
    assert len(lines) == 45
    assert lines[0] == "3 2"
    assert lines[-1] == "9"
    with capsys.disabled():
        report("golden-trace", True, "45 lines, byte-identical")


def test_main_theorem_grid():
    # A(m, n) equals the collapse of the stack [n, m], for every evaluator,
    # over 0 <= m <= 3, 0 <= n <= 8. Exact equality; traces disabled.
    for m in range(4):
        for n in range(9):
            memo = ack_memo(m, n)
            assert ackloop((n, m), 10**7, record_trace=False).value == memo, (m, n)
            assert acklist((n, m)) == memo, (m, n)
            assert ack_closed(m, n) == memo, (m, n)
    report("main-theorem-grid", True, "36 cells, 4 evaluators, exact")


def test_loop_list_equivalence_tractable_cells():
    cells = tractable(EQUIV_BUDGET)
    for s in cells:
        result = ackloop(s, EQUIV_BUDGET, record_trace=False)
        assert result.value == acklist(s), s
        assert result.steps == collapse_cost_sat(s, EQUIV_BUDGET), s
    report("loop-list-equivalence", True,
           f"{len(cells)}/{len(FULL_GRID)} cells exact at {EQUIV_BUDGET:,} step budget")


@pytest.mark.xfail(strict=True, reason=(
    "the documented grid (length <= 4, elements <= 3) contains cells whose "
    "exact evaluation cost exceeds any step budget; see the intractable-cell "
    "listing in the failure message"))
def test_loop_list_equivalence_full_grid_as_documented():
    over = [(s, collapse_cost_sat(s, MINUTE_BUDGET)) for s in FULL_GRID
            if collapse_cost_sat(s, MINUTE_BUDGET) > MINUTE_BUDGET]
    report("loop-list-equivalence-full-grid", not over,
           f"{len(over)} cells exceed {MINUTE_BUDGET:,} steps, "
           f"e.g. {over[0][0] if over else None}")
    assert not over, (
        f"{len(over)} of {len(FULL_GRID)} cells need more than "
        f"{MINUTE_BUDGET:,} rewrite steps each; first few: "
        f"{[s for s, _ in over[:6]]}")


def test_front_collapse_grid():
    # Replacing the front pair n, m by A(m, n) never changes the result:
    # m <= 3, n <= 5, suffixes up to length 2 with elements <= 2.
    suffixes = [()] + [t for length in (1, 2)
                       for t in itertools.product(range(3), repeat=length)]
    cells = 0
    for m in range(4):
        for n in range(6):
            collapsed = ORACLE.value(m, n)
            for tail in suffixes:
                lhs = ackloop((n, m) + tail, 10**7, record_trace=False).value
                rhs = ackloop((collapsed,) + tail, 10**7, record_trace=False).value
                assert lhs == rhs, (m, n, tail)
                cells += 1
    report("front-collapse-grid", True, f"{cells} cells exact")


def test_certificate_suite():
    cells = tractable(CERT_BUDGET)
    rng = random.Random(0x5AC)
    pool: list[DomCertificate] = []
    for s in cells:
        cert = certificate_build(ackloop(s, CERT_BUDGET).trace)
        verdict = certificate_verify(cert)
        assert verdict.valid, (s, verdict)
        if len(cert.chain) <= 2000 and any(cert.chain):
            pool.append(cert)

    tampers = 0
    while tampers < 1000:
        cert = pool[tampers % len(pool)]
        stateful = [i for i, st in enumerate(cert.chain) if st]
        k = rng.choice(stateful)
        state = list(cert.chain[k])
        state[rng.randrange(len(state))] += rng.randint(1, 5)
        chain = list(cert.chain)
        chain[k] = tuple(state)
        verdict = certificate_verify(
            DomCertificate(tuple(chain), cert.rules, cert.conclusion))
        expected = 0 if k == 0 else k - 1
        assert not verdict.valid
        assert verdict.position == expected, (cert.conclusion, k, verdict)
        tampers += 1
    report("certificate-suite", True,
           f"{len(cells)} certificates valid; 1000 tamperings rejected at the right link")


@pytest.mark.xfail(strict=True, reason=(
    "certificates for the documented full grid would require materializing "
    "rewrite chains with more states than any step budget allows"))
def test_certificate_suite_full_grid_as_documented():
    over = [s for s in FULL_GRID if collapse_cost_sat(s, MINUTE_BUDGET) > MINUTE_BUDGET]
    report("certificate-suite-full-grid", not over,
           f"{len(over)} cells have chains longer than {MINUTE_BUDGET:,}")
    assert not over, f"chains for {len(over)} cells exceed {MINUTE_BUDGET:,} states"


def test_undefined_function_emptiness():
    graph = graph_saturate_U(1000)
    domain = domain_saturate_U(1000)
    assert not graph.entries
    assert not domain
    report("undefined-function-emptiness", True, "graph and domain empty at fuel 1000")


def test_graph_functionality():
    relation = graph_saturate_ack(2, 3, 20)
    assert relation.single_valued()
    assert relation.entries
    for (m, n), v in relation.entries:
        assert ack_memo(m, n) == v, (m, n)
    assert ((2, 3), 9) in relation.entries
    report("graph-functionality", True,
           f"{len(relation)} entries single-valued, all match the memo evaluator")


ENGINE = parse_rules(ACK_RULES)


def test_engine_coincidence():
    # The parsed rule file, applied anchored and leftmost, reproduces the
    # machine's rewrite sequence state for state and rule for rule.
    cells = tractable(CERT_BUDGET)
    total_steps = 0
    for s in cells:
        cur = s
        while True:
            machine_next = step(cur)
            engine_next = apply_at(ENGINE, cur, 0) if cur else None
            if engine_next is None:
                assert len(cur) <= 1
                break
            assert engine_next.stack == machine_next.stack, (s, cur)
            assert RuleId[f"R{engine_next.rule_index + 1}"] is machine_next.rule, (s, cur)
            cur = engine_next.stack
            total_steps += 1
    report("engine-coincidence", True,
           f"{len(cells)} cells, {total_steps:,} steps state-for-state")


@pytest.mark.xfail(strict=True, reason=(
    "state-for-state comparison over the documented full grid needs the same "
    "astronomically long rewrite chains as the equivalence check"))
def test_engine_coincidence_full_grid_as_documented():
    over = [s for s in FULL_GRID if collapse_cost_sat(s, MINUTE_BUDGET) > MINUTE_BUDGET]
    report("engine-coincidence-full-grid", not over, f"{len(over)} cells out of reach")
    assert not over


def test_divergence_search_documented_bounds():
    # Bounded search over all starts with length <= 3 and elements <= 2,
    # fuel 10^4, growth threshold 50. The outcome is frozen: free-mode
    # application of the rules admits a three-step cycle, which both runs
    # must find identically and which must replay through apply_at.
    free = parse_rules(ACK_RULES, Mode.FREE)
    starts = [()] + [t for length in (1, 2, 3)
                     for t in itertools.product(range(3), repeat=length)]
    first = divergence_search(free, starts, 10**4, 50)
    second = divergence_search(free, starts, 10**4, 50)
    assert first == second
    assert first == Witness((0, 0, 2), (1, 1, 2), "cycle", 0)
    assert replay_witness(free, first, 50)
    report("divergence-search", True,
           f"deterministic witness {first.start} -> positions {list(first.positions)}, replays")


def test_structured_outputs_round_trip(capsys, tmp_path):
    # Certificates emitted by the command line verify through it.
    cert_file = tmp_path / "cert.json"
    assert main(["cert", "3", "4", "-o", str(cert_file)]) == 0
    assert json.loads(cert_file.read_text())["format"] == "certificate"
    capsys.readouterr()
    assert main(["cert", "--verify", str(cert_file)]) == 0
    assert "Valid" in capsys.readouterr().out
    with capsys.disabled():
        report("structured-round-trip", True, "certificate build/verify via the CLI")
