"""Segment execution and the semantic side of asserted sequences.

run_segment interprets an instruction sequence directly with a program
counter, starting at entry instruction b.  holds decides an asserted
sequence by enumerating states over the configured algebra and running each
P-state; strongest_post computes the image of the P-states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from . import kernels
from .formulas import (And, BoolLit, EmptyServ, Eq, Formula, NatLit, Nnc, Or,
                       RegOf, Var, FALSE, TRUE, enumerate_states, eval_formula,
                       format_formula, free_foci, free_vars)
from .judgments import AssertedSeq
from .services import (AlgebraConfig, Reply, Service, ServiceFamily, family,
                       format_family, svc_step)
from .syntax import (Basic, CanonicalSequence, Halt, Jump, NegTest, PosTest,
                     SequenceTerm, foci_of_term, format_canonical, normalize)


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class Halted:
    state: ServiceFamily


@dataclass(frozen=True)
class Exited:
    offset: int
    state: ServiceFamily

    def __post_init__(self):
        if self.offset < 1:
            raise ValueError("exit offset must be positive")


@dataclass(frozen=True)
class Inactive:
    pass


@dataclass(frozen=True)
class BudgetOut:
    """The step budget ran out before the run converged or cycled."""


INACTIVE = Inactive()
BUDGET_OUT = BudgetOut()


def format_outcome(o) -> str:
    if isinstance(o, Halted):
        return f"halted in {format_family(o.state)}"
    if isinstance(o, Exited):
        return f"exited at offset {o.offset} in {format_family(o.state)}"
    if isinstance(o, Inactive):
        return "inactive"
    return "budget exhausted"


# ---------------------------------------------------------------------------
# direct interpretation


_DEFAULT_CFG = AlgebraConfig()


def run_segment(s: SequenceTerm, b: int, u: ServiceFamily,
                cfg: AlgebraConfig = _DEFAULT_CFG):
    """Run from instruction b; see the outcome types above.

    Raises ValueError when b lies beyond the segment.
    """
    c = normalize(s)
    return run_canonical(c, b, u, cfg)


def run_canonical(c: CanonicalSequence, b: int, u: ServiceFamily,
                  cfg: AlgebraConfig = _DEFAULT_CFG):
    if b < 1:
        raise ValueError("entry point must be at least 1")
    if b > c.length:
        raise ValueError("entry beyond segment")
    if kernels.encodable_family(u):
        foci, kinds, contents = kernels.encode_family(u)
        enc = kernels.encode_canonical(c, foci, kinds)
        outcome, off, final = kernels.run_segment_kernel(
            *enc, len(c.prefix), len(c.period or ()), b, kinds, contents,
            cfg.state_bound)
        if outcome == kernels.HALTED:
            return Halted(kernels.decode_family(foci, kinds, final))
        if outcome == kernels.EXITED:
            return Exited(off, kernels.decode_family(foci, kinds, final))
        if outcome == kernels.INACTIVE:
            return INACTIVE
        return BUDGET_OUT
    return _run_generic(c, b, u, cfg)


def _run_generic(c: CanonicalSequence, b: int, u: ServiceFamily,
                 cfg: AlgebraConfig):
    # Fallback for families holding custom (registered) service kinds.
    n = len(c.prefix) + len(c.period or ())
    pos = b
    seen = set() if c.period is not None else None
    budget = cfg.state_bound * (n + 1)
    while True:
        if c.period is None and pos > n:
            return Exited(pos - n, u)
        rep = c.representative(pos)
        if seen is not None:
            key = (rep, u)
            if key in seen:
                return INACTIVE
            seen.add(key)
            if len(seen) > budget:
                return BUDGET_OUT
        instr = c.instruction_at(rep)
        if isinstance(instr, Halt):
            return Halted(u)
        if isinstance(instr, Jump):
            if instr.offset == 0:
                return INACTIVE
            pos += instr.offset
            continue
        service = u.get(instr.focus)
        if service is None:
            return INACTIVE
        reply, derived = svc_step(service, instr.method)
        if reply == Reply.D:
            return INACTIVE
        u = u.with_service(instr.focus, derived)
        if isinstance(instr, Basic):
            pos += 1
        elif isinstance(instr, PosTest):
            pos += 1 if reply == Reply.T else 2
        else:
            pos += 2 if reply == Reply.T else 1


# ---------------------------------------------------------------------------
# the semantic checker


@dataclass(frozen=True)
class Verdict:
    kind: str  # holds | fails | unknown
    bounded: bool = False
    bound: Optional[int] = None
    witness: Optional[tuple] = None  # (state, valuation, outcome-or-reason)
    reason: Optional[str] = None

    @property
    def is_holds(self) -> bool:
        return self.kind == "holds"

    def __str__(self) -> str:
        if self.kind == "holds":
            if self.bounded:
                return f"HOLDS (bounded, B={self.bound})"
            return "HOLDS"
        if self.kind == "fails":
            if self.witness is None:
                return f"FAILS ({self.reason})"
            state, valuation, outcome = self.witness
            extra = f", valuation {valuation}" if valuation else ""
            return (f"FAILS (from {format_family(state)}{extra}: "
                    f"{format_outcome(outcome) if not isinstance(outcome, str) else outcome})")
        return f"UNKNOWN ({self.reason})"


def _judgment_space(phi: AssertedSeq, cfg: AlgebraConfig):
    sorts: Dict[str, str] = {}
    for f in (phi.pre, phi.post):
        for name, sort in free_vars(f).items():
            if sorts.get(name, sort) != sort:
                raise ValueError(f"variable {name} used at two sorts")
            sorts[name] = sort
    foci = {n for n, s in sorts.items() if s == "serv"} | set(foci_of_term(phi.term))
    var_sorts = {n: s for n, s in sorts.items() if s != "serv"}
    return enumerate_states(foci, var_sorts, cfg)


def holds(phi: AssertedSeq, cfg: AlgebraConfig = _DEFAULT_CFG) -> Verdict:
    """Decide the asserted sequence over the configured algebra.

    An entry point past the end of the segment makes the judgment fail
    outright.  Otherwise every enumerated P-state must run to an outcome
    compatible with the exit annotation and satisfy Q there.
    """
    c = normalize(phi.term)
    if phi.entry > c.length:
        return Verdict("fails", reason="entry beyond segment",
                       witness=None)
    pairs, exhaustive = _judgment_space(phi, cfg)
    undecided = None
    for state, valuation in pairs:
        pv = eval_formula(phi.pre, state, cfg, valuation)
        if pv is False:
            continue
        if pv is None:
            undecided = "precondition undecided within the quantifier bound"
            continue
        outcome = run_canonical(c, phi.entry, state, cfg)
        if isinstance(outcome, Inactive):
            continue
        if isinstance(outcome, BudgetOut):
            undecided = "step budget exhausted on some run"
            continue
        if phi.exit == 0:
            if not isinstance(outcome, Halted):
                return Verdict("fails", witness=(state, valuation, outcome))
        else:
            if not (isinstance(outcome, Exited) and outcome.offset == phi.exit):
                return Verdict("fails", witness=(state, valuation, outcome))
        qv = eval_formula(phi.post, outcome.state, cfg, valuation)
        if qv is False:
            return Verdict("fails", witness=(state, valuation, outcome))
        if qv is None:
            undecided = "postcondition undecided within the quantifier bound"
    if undecided:
        return Verdict("unknown", reason=undecided, bound=cfg.state_bound)
    return Verdict("holds", bounded=not exhaustive, bound=cfg.state_bound)


# ---------------------------------------------------------------------------
# strongest post-conditions


def _state_formula(state: ServiceFamily) -> Formula:
    parts = []
    for focus, s in state.entries:
        if s.kind == "empty":
            parts.append(Eq(Var(focus), EmptyServ()))
        elif s.kind == "counter":
            parts.append(Eq(Var(focus), Nnc(NatLit(s.content))))
        elif s.kind == "boolreg":
            parts.append(Eq(Var(focus), RegOf(BoolLit(s.content))))
        else:
            raise ValueError(f"no formula literal for service kind {s.kind!r}")
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def states_formula(states) -> Formula:
    states = sorted(states, key=lambda s: s.entries)
    if not states:
        return FALSE
    out = _state_formula(states[0])
    for s in states[1:]:
        out = Or(out, _state_formula(s))
    return out


def strongest_post(pre: Formula, s: SequenceTerm, b: int, e: int,
                   cfg: AlgebraConfig = _DEFAULT_CFG):
    """(states, formula): the image of the P-states under execution.

    Defined only when {b|P} S {e|true} holds; otherwise no post-condition
    exists for this exit and a ValueError is raised.
    """
    guard = holds(AssertedSeq(b, pre, s, e, TRUE), cfg)
    if guard.kind == "fails":
        raise ValueError("no post-condition exists for this e")
    if guard.kind == "unknown":
        raise ValueError(f"existence undecided: {guard.reason}")
    c = normalize(s)
    pairs, _ = _judgment_space(AssertedSeq(b, pre, s, e, TRUE), cfg)
    image: Set[ServiceFamily] = set()
    for state, valuation in pairs:
        if eval_formula(pre, state, cfg, valuation) is not True:
            continue
        outcome = run_canonical(c, b, state, cfg)
        if e == 0 and isinstance(outcome, Halted):
            image.add(outcome.state)
        elif e > 0 and isinstance(outcome, Exited) and outcome.offset == e:
            image.add(outcome.state)
    return image, states_formula(image)
