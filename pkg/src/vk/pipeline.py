"""Chains of language-preserving transformations with optional certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VkError
from .regular import enumerate_words, equivalent
from .valence import (
    ValenceAutomaton,
    eliminate_target_set,
    language_dfa,
    normalize_initial,
    nozero_normalize,
    to_group_automaton,
    zero_simple_reduction,
)


def _zero_simple(V):
    return zero_simple_reduction(V)[1]


STEPS = {
    "nozero": nozero_normalize,
    "to-group": to_group_automaton,
    "zero-simple": _zero_simple,
    "normalize-initial": normalize_initial,
    "eliminate-target": eliminate_target_set,
}

CROSS_CHECK_LENGTH = 8


class PipelineError(VkError):
    def __init__(self, index: int, step: str, cause: Exception):
        super().__init__(f"step {index + 1} ({step}): {type(cause).__name__}: {cause}")
        self.index = index
        self.step = step
        self.cause = cause


@dataclass(frozen=True)
class PipelineSpec:
    steps: tuple = ()
    options: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "PipelineSpec":
        steps = tuple(s.strip() for s in text.split(",") if s.strip())
        for s in steps:
            if s not in STEPS:
                raise ValueError(f"unknown pipeline step {s!r}; choose from {', '.join(STEPS)}")
        return cls(steps)

    def __str__(self):
        return ",".join(self.steps)


def run_pipeline(V: ValenceAutomaton, spec: PipelineSpec) -> ValenceAutomaton:
    W = V
    for k, name in enumerate(spec.steps):
        try:
            W = STEPS[name](W)
        except VkError as exc:
            raise PipelineError(k, name, exc) from exc
    return W


@dataclass
class Certificate:
    verdict: str
    counterexample: object
    source_states: int
    result_states: int
    cross_checked: int

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"


def certify(V: ValenceAutomaton, W: ValenceAutomaton, cross_check: int = CROSS_CHECK_LENGTH):
    """Compare minimal DFAs and cross-check by enumerating short words.

    Returns (Certificate, source dfa, result dfa).  A disagreement between
    the DFA verdict and the enumeration raises instead of certifying.
    """
    dv, dw = language_dfa(V), language_dfa(W)
    ok, witness = equivalent(dv, dw)
    short_v = enumerate_words(dv, cross_check)
    short_w = enumerate_words(dw, cross_check)
    if ok and short_v != short_w:
        raise AssertionError("DFA equivalence contradicts word enumeration")
    cert = Certificate(
        verdict="equivalent" if ok else "inequivalent",
        counterexample=None if ok else "".join(witness) if all(len(a) == 1 for a in V.alphabet)
        else " ".join(witness),
        source_states=dv.n,
        result_states=dw.n,
        cross_checked=len(short_v),
    )
    return cert, dv, dw
