"""Regular threads: extraction from canonical sequences and application.

A regular thread is a finite graph of Stop/Dead leaves and binary action
branches.  Extraction resolves jump chains ahead of time, so the thread has
one node per useful representative position.  Applying a thread to a service
family runs it to completion; divergence yields the empty family.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

from . import kernels
from .services import (EMPTY_FAMILY, AlgebraConfig, Reply, ServiceFamily,
                       svc_step)
from .syntax import (Basic, CanonicalSequence, Concat, Halt, Instr, Jump,
                     NegTest, PosTest, Repeat, SequenceTerm, concat_all,
                     normalize)


class BudgetExhausted(Exception):
    """The step budget ran out before a verdict was reached."""


@dataclass(frozen=True)
class RegularThread:
    """Nodes are ("stop",), ("dead",), or ("branch", focus, method, t, e)."""

    nodes: Tuple[tuple, ...]
    root: int

    def node(self, i: int) -> tuple:
        return self.nodes[i]

    def is_stop(self) -> bool:
        return self.nodes[self.root][0] == "stop"

    def is_dead(self) -> bool:
        return self.nodes[self.root][0] == "dead"


STOP_THREAD = RegularThread((("stop",),), 0)
DEAD_THREAD = RegularThread((("dead",),), 0)


def _resolve(c: CanonicalSequence, pos: int) -> Optional[int]:
    """Follow jump chains from absolute position pos.

    Returns the representative position of the first non-jump instruction,
    or None if execution becomes inactive (jump 0, jump off the end, or an
    infinite chain of forward jumps).
    """
    visited = set()
    while True:
        rep = c.representative(pos)
        if rep is None or rep in visited:
            return None
        instr = c.instruction_at(rep)
        if not isinstance(instr, Jump):
            return rep
        if instr.offset == 0:
            return None
        visited.add(rep)
        pos = rep + instr.offset


def extract(c: CanonicalSequence) -> RegularThread:
    """Thread extraction: one branch node per useful position."""
    n_positions = len(c.prefix) + len(c.period or ())
    # Pass 1: nodes for non-jump representative positions.
    position_node = {}
    nodes = []

    def _leaf(kind: str) -> int:
        for i, node in enumerate(nodes):
            if node == (kind,):
                return i
        nodes.append((kind,))
        return len(nodes) - 1

    pending = []
    for rep in range(1, n_positions + 1):
        instr = c.instruction_at(rep)
        if isinstance(instr, Jump):
            continue
        if isinstance(instr, Halt):
            position_node[rep] = _leaf("stop")
            continue
        nodes.append(None)  # patched below
        position_node[rep] = len(nodes) - 1
        pending.append((rep, instr))
    # Pass 2: wire successors through jump resolution.
    def _target(pos: int) -> int:
        rep = _resolve(c, pos)
        if rep is None:
            return _leaf("dead")
        return position_node[rep]

    for rep, instr in pending:
        then_i = _target(rep + 1)
        else_i = _target(rep + 2)
        if isinstance(instr, Basic):
            node = ("branch", instr.focus, instr.method, then_i, then_i)
        elif isinstance(instr, PosTest):
            node = ("branch", instr.focus, instr.method, then_i, else_i)
        else:
            assert isinstance(instr, NegTest)
            node = ("branch", instr.focus, instr.method, else_i, then_i)
        nodes[position_node[rep]] = node

    root_rep = _resolve(c, 1)
    root = _leaf("dead") if root_rep is None else position_node[root_rep]
    return _trim(RegularThread(tuple(nodes), root))


def _trim(t: RegularThread) -> RegularThread:
    """Drop unreachable nodes and renumber in BFS order from the root."""
    order = []
    index = {}
    queue = deque([t.root])
    while queue:
        i = queue.popleft()
        if i in index:
            continue
        index[i] = len(order)
        order.append(i)
        node = t.nodes[i]
        if node[0] == "branch":
            queue.append(node[3])
            queue.append(node[4])
    new_nodes = []
    for i in order:
        node = t.nodes[i]
        if node[0] == "branch":
            node = (node[0], node[1], node[2], index[node[3]], index[node[4]])
        new_nodes.append(node)
    return RegularThread(tuple(new_nodes), 0)


def minimize(t: RegularThread) -> RegularThread:
    """Bisimulation quotient via partition refinement, BFS-canonicalized."""
    n = len(t.nodes)
    labels = {}
    block = []
    for i in range(n):
        node = t.nodes[i]
        key = (node[0],) if node[0] != "branch" else ("branch", node[1], node[2])
        block.append(labels.setdefault(key, len(labels)))
    while True:
        sigs = {}
        refined = []
        for i in range(n):
            node = t.nodes[i]
            if node[0] == "branch":
                sig = (block[i], block[node[3]], block[node[4]])
            else:
                sig = (block[i],)
            refined.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == len(set(block)):
            block = refined
            break
        block = refined
    rep_of = {}
    mapped = []
    for i in range(n):
        rep_of.setdefault(block[i], i)
        mapped.append(rep_of[block[i]])
    nodes = list(t.nodes)
    for i in range(n):
        node = nodes[i]
        if node[0] == "branch":
            nodes[i] = (node[0], node[1], node[2], mapped[node[3]],
                        mapped[node[4]])
    return _trim(RegularThread(tuple(nodes), mapped[t.root]))


def bisimilar(a: RegularThread, b: RegularThread) -> bool:
    return minimize(a) == minimize(b)


def sigma(e: int) -> SequenceTerm:
    """The exit-observation suffix: e-1 inactivity jumps then termination."""
    if e < 1:
        raise ValueError("sigma is defined for positive e")
    return concat_all([Instr(Jump(0))] * (e - 1) + [Instr(Halt())])


def embed(s: SequenceTerm, b: int, e: int) -> CanonicalSequence:
    """The segment as entered at its bth instruction with exit offset e.

    e = 0 observes termination inside the segment; e > 0 turns exit at
    offset e into observable termination.
    """
    if b < 1:
        raise ValueError("entry point must be positive")
    term: SequenceTerm = Concat(Instr(Jump(b)), s)
    if e > 0:
        term = Concat(term, sigma(e))
    return normalize(term)


def thread_of(s: SequenceTerm) -> RegularThread:
    return extract(normalize(s))


_DEFAULT_CFG = AlgebraConfig()


def apply(t: RegularThread, u: ServiceFamily,
          cfg: AlgebraConfig = _DEFAULT_CFG) -> ServiceFamily:
    """Run the thread against the family (the apply operator).

    Stop yields the current family, Dead the empty family; a missing focus
    or a D reply also yields the empty family, as does divergence (revisit
    of a (node, family) pair).  Raises BudgetExhausted when a counter grows
    without the state ever repeating.
    """
    if kernels.encodable_family(u):
        foci, kinds, contents = kernels.encode_family(u)
        enc = kernels.encode_thread(t.nodes, foci, kinds)
        outcome, final = kernels.apply_kernel(*enc, t.root, kinds, contents,
                                              cfg.state_bound)
        if outcome == kernels.BUDGET:
            raise BudgetExhausted("apply step budget exhausted")
        if outcome == kernels.HALTED:
            return kernels.decode_family(foci, kinds, final)
        return EMPTY_FAMILY
    return _apply_generic(t, u, cfg)


def _apply_generic(t: RegularThread, u: ServiceFamily,
                   cfg: AlgebraConfig) -> ServiceFamily:
    # Fallback for families holding custom (registered) service kinds.
    seen = set()
    cur = t.root
    budget = cfg.state_bound * (len(t.nodes) + 1)
    while True:
        node = t.nodes[cur]
        if node[0] == "stop":
            return u
        if node[0] == "dead":
            return EMPTY_FAMILY
        key = (cur, u)
        if key in seen:
            return EMPTY_FAMILY
        seen.add(key)
        if len(seen) > budget:
            raise BudgetExhausted("apply step budget exhausted")
        _, focus, method, then_i, else_i = node
        service = u.get(focus)
        if service is None:
            return EMPTY_FAMILY
        reply, derived = svc_step(service, method)
        if reply == Reply.D:
            return EMPTY_FAMILY
        u = u.with_service(focus, derived)
        cur = then_i if reply == Reply.T else else_i


def thread_dump(t: RegularThread) -> str:
    """Adjacency-list dump, one node per line, root first."""
    lines = []
    for i, node in enumerate(t.nodes):
        if node[0] == "stop":
            lines.append(f"n{i}: stop")
        elif node[0] == "dead":
            lines.append(f"n{i}: dead")
        else:
            _, focus, method, then_i, else_i = node
            lines.append(f"n{i}: branch {focus}.{method} -> n{then_i} / n{else_i}")
    return "\n".join(lines)
