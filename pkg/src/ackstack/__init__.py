"""Ackermann's function as head rewriting over a stack of naturals.

The recursive definition and its iterative stack-machine form, checked
against each other at desk scale: interchangeable evaluators, byte-stable
rewrite traces, independently verifiable termination certificates, bounded
saturation of the inductive graph rules, and a small generic rewrite engine
for exploring anchored versus free rule application.
"""

from .core import (ClosedFormUnavailable, EvalResult, FuelExhausted,
                   MemoCapExceeded, ResourceCapExceeded, ack_closed, ack_memo,
                   ack_naive)
from .domain import (CertVerdict, DomCertificate, DomVerdict, EntryCapExceeded,
                     GraphRelation, certificate_build, certificate_verify,
                     dom_check, domain_saturate_U, graph_saturate_U,
                     graph_saturate_ack)
from .machine import (LoopResult, Next, RuleId, Stack, Terminal, Trace, ackloop,
                      acklist, step, trace_render)
from .rewrite import (ACK_RULES, Mode, Pattern, Rewritten, Rule, RewriteSystem,
                      RuleSyntaxError, RunResult, Template, Witness, apply_at,
                      divergence_search, parse_rules, render_rules,
                      replay_witness, run)

__version__ = "0.1.0"

__all__ = [
    "ACK_RULES", "CertVerdict", "ClosedFormUnavailable", "DomCertificate",
    "DomVerdict", "EntryCapExceeded", "EvalResult", "FuelExhausted",
    "GraphRelation", "LoopResult", "MemoCapExceeded", "Mode", "Next",
    "Pattern", "ResourceCapExceeded", "Rewritten", "Rule", "RewriteSystem",
    "RuleId", "RuleSyntaxError", "RunResult", "Stack", "Template", "Terminal",
    "Trace", "Witness", "ack_closed", "ack_memo", "ack_naive", "ackloop",
    "acklist", "apply_at", "certificate_build", "certificate_verify",
    "divergence_search", "dom_check", "domain_saturate_U", "graph_saturate_U",
    "graph_saturate_ack", "parse_rules", "render_rules", "replay_witness",
    "run", "step", "trace_render",
]
