"""Proof trees for asserted instruction sequences and their checker.

A proof is a tree of axiom instances (A1-A11) and rule applications
(R1-R10, plus the derived repetition-introduction rule).  The repetition
rule R5 carries hypothetical subderivations: its subproofs may use HYP
leaves referring to the rule's hypotheses, and may not contain a nested
repetition rule.

Sequence matching is term-level: the instruction atoms of the written
terms must line up literally (with ^w kept symbolic), so that S^w and
S ; S^w stay distinct inside repetition subproofs even though they denote
the same sequence.

Proof file format: `name := (node)` bindings, one node per parenthesized
record, `//` comments.  Examples of records:

    (A9 {1 | P} "#3" {3 | P})
    (R1 <node> <node> => {b | P} "S1 ; S2" {e | Q})
    (R9 x y <node> => {b | P} "S" {e | Q})
    (R10 "P -> P'" <node> "Q' -> Q" => {b | P} "S" {e | Q})
    (R5 hyps [{b1 | P1} "S^w" {0 | Q1}] k 1 subproofs [<node>])
    (HYP 1)

where <node> is either a nested record or a previously bound name.  The
root of the proof is the last binding (or the last bare record).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .formulas import (And, Eq, Exists, FALSE, Formula, Implies, Not, Or,
                       ReplyLit, ReplyT, TRUE, Var, alpha_eq, format_formula,
                       free_foci, free_vars, parse_formula, subst_derive,
                       substitute)
from .judgments import AssertedSeq, format_asserted, parse_asserted
from .segments import Verdict
from .services import AlgebraConfig, Reply
from .formulas import EntailVerdict, entails
from .syntax import (Basic, Concat, Halt, Instr, Jump, NegTest, Power,
                     PosTest, Repeat, SequenceTerm, parse_sequence)


# ---------------------------------------------------------------------------
# proof trees


@dataclass(frozen=True)
class ProofNode:
    rule: str  # A1..A11, R1..R10, HYP, REPINTRO
    conclusion: Optional[AssertedSeq] = None
    premises: Tuple["ProofNode", ...] = ()
    hyps: Tuple[AssertedSeq, ...] = ()  # R5 only
    k: int = 0  # R5 only, 1-based
    hyp_index: int = 0  # HYP only, 1-based
    rename: Optional[Tuple[str, str]] = None  # R9 only: (x, y)
    obligations: Optional[Tuple[Formula, Formula]] = None  # R10 only


@dataclass
class CheckResult:
    accepted: bool
    failures: List[Tuple[str, str]] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# term-level sequence atoms

REP = "rep"


def term_atoms(t: SequenceTerm) -> tuple:
    """The term as a flat tuple of instructions, with ^w kept symbolic.

    A repetition becomes a single (REP, body-atoms) marker, so terms that
    denote the same sequence but are written differently (S^w versus
    S ; S^w) stay distinguishable, as the repetition rule requires.
    """
    if isinstance(t, Instr):
        return (t.instruction,)
    if isinstance(t, Concat):
        return term_atoms(t.left) + term_atoms(t.right)
    if isinstance(t, Power):
        if t.count == 0:
            return (Jump(0),)
        return term_atoms(t.body) * t.count
    if isinstance(t, Repeat):
        return ((REP, term_atoms(t.body)),)
    raise TypeError(f"not a sequence term: {t!r}")


def atoms_len(atoms: tuple) -> Optional[int]:
    """Number of instructions, or None when a repetition makes it infinite."""
    for a in atoms:
        if isinstance(a, tuple) and a and a[0] == REP:
            return None
    return len(atoms)


def atoms_foci(atoms: tuple) -> frozenset:
    out = set()
    for a in atoms:
        if isinstance(a, tuple) and a and a[0] == REP:
            out |= atoms_foci(a[1])
        elif isinstance(a, (Basic, PosTest, NegTest)):
            out.add(a.focus)
    return frozenset(out)


# ---------------------------------------------------------------------------
# proof file parsing


class ProofSyntaxError(ValueError):
    pass


_WS_RE = re.compile(r"(?:\s+|//[^\n]*)+")
_NUM_RE = re.compile(r"\d+")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _ProofTokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        m = _WS_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()

    def peek(self) -> Optional[str]:
        self._skip()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def next_token(self):
        self._skip()
        if self.pos >= len(self.text):
            return None
        ch = self.text[self.pos]
        if ch in "()[]":
            self.pos += 1
            return ch
        if self.text.startswith(":=", self.pos):
            self.pos += 2
            return ":="
        if self.text.startswith("=>", self.pos):
            self.pos += 2
            return "=>"
        if ch == '"':
            end = self.text.find('"', self.pos + 1)
            if end < 0:
                raise ProofSyntaxError(f"unterminated string at {self.pos}")
            s = self.text[self.pos + 1 : end]
            self.pos = end + 1
            return ("str", s)
        if ch == "{":
            depth = 0
            for i in range(self.pos, len(self.text)):
                if self.text[i] == "{":
                    depth += 1
                elif self.text[i] == "}":
                    depth -= 1
                    if depth == 0:
                        inner = self.text[self.pos + 1 : i]
                        self.pos = i + 1
                        return ("group", inner)
            raise ProofSyntaxError(f"unbalanced braces at {self.pos}")
        m = _NUM_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return ("num", int(m.group()))
        m = _IDENT_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return ("ident", m.group())
        raise ProofSyntaxError(f"unexpected character {ch!r} at {self.pos}")

    def expect(self, tok):
        got = self.next_token()
        if got != tok:
            raise ProofSyntaxError(f"expected {tok!r}, got {got!r}")


def _annotation(inner: str):
    point, bar, formula = inner.partition("|")
    if not bar:
        raise ProofSyntaxError(f"annotation needs 'point | formula': {inner!r}")
    return int(point.strip()), parse_formula(formula)


class _ProofParser:
    AXIOMS = {f"A{i}" for i in range(1, 12)}
    RULES = {f"R{i}" for i in range(1, 11)}

    def __init__(self, text: str):
        self.toks = _ProofTokens(text)
        self.bindings: Dict[str, ProofNode] = {}

    def parse_file(self) -> ProofNode:
        last = None
        while True:
            tok = self.toks.next_token()
            if tok is None:
                break
            if isinstance(tok, tuple) and tok[0] == "ident":
                self.toks.expect(":=")
                self.toks.expect("(")
                node = self._node_body()
                self.bindings[tok[1]] = node
                last = node
            elif tok == "(":
                last = self._node_body()
            else:
                raise ProofSyntaxError(f"expected a binding or record, got {tok!r}")
        if last is None:
            raise ProofSyntaxError("empty proof file")
        return last

    def _asserted(self, first=None) -> AssertedSeq:
        pre = first if first is not None else self.toks.next_token()
        if not (isinstance(pre, tuple) and pre[0] == "group"):
            raise ProofSyntaxError(f"expected an annotation group, got {pre!r}")
        seq = self.toks.next_token()
        if not (isinstance(seq, tuple) and seq[0] == "str"):
            raise ProofSyntaxError(f"expected a quoted sequence, got {seq!r}")
        post = self.toks.next_token()
        if not (isinstance(post, tuple) and post[0] == "group"):
            raise ProofSyntaxError(f"expected an annotation group, got {post!r}")
        b, p = _annotation(pre[1])
        e, q = _annotation(post[1])
        return AssertedSeq(b, p, parse_sequence(seq[1]), e, q)

    def _operand(self) -> ProofNode:
        tok = self.toks.next_token()
        if tok == "(":
            return self._node_body()
        if isinstance(tok, tuple) and tok[0] == "ident":
            if tok[1] not in self.bindings:
                raise ProofSyntaxError(f"unknown proof name {tok[1]!r}")
            return self.bindings[tok[1]]
        raise ProofSyntaxError(f"expected a proof node, got {tok!r}")

    def _node_body(self) -> ProofNode:
        head = self.toks.next_token()
        if not (isinstance(head, tuple) and head[0] == "ident"):
            raise ProofSyntaxError(f"expected a rule name, got {head!r}")
        rule = head[1].upper()
        if rule in self.AXIOMS:
            concl = self._asserted()
            self.toks.expect(")")
            return ProofNode(rule, concl)
        if rule == "HYP":
            idx = self.toks.next_token()
            if not (isinstance(idx, tuple) and idx[0] == "num"):
                raise ProofSyntaxError("HYP needs a hypothesis index")
            self.toks.expect(")")
            return ProofNode("HYP", hyp_index=idx[1])
        if rule == "R5":
            return self._r5()
        if rule == "R10":
            p_ob = self.toks.next_token()
            prem = self._operand()
            q_ob = self.toks.next_token()
            for ob in (p_ob, q_ob):
                if not (isinstance(ob, tuple) and ob[0] == "str"):
                    raise ProofSyntaxError("R10 needs two quoted obligations")
            self.toks.expect("=>")
            concl = self._asserted()
            self.toks.expect(")")
            return ProofNode("R10", concl, (prem,),
                             obligations=(parse_formula(p_ob[1]),
                                          parse_formula(q_ob[1])))
        if rule == "R9":
            x = self.toks.next_token()
            y = self.toks.next_token()
            for v in (x, y):
                if not (isinstance(v, tuple) and v[0] == "ident"):
                    raise ProofSyntaxError("R9 needs two variable names")
            prem = self._operand()
            self.toks.expect("=>")
            concl = self._asserted()
            self.toks.expect(")")
            return ProofNode("R9", concl, (prem,), rename=(x[1], y[1]))
        if rule in self.RULES or rule == "REPINTRO":
            arity = 2 if rule in ("R1", "R6") else 1
            premises = tuple(self._operand() for _ in range(arity))
            self.toks.expect("=>")
            concl = self._asserted()
            self.toks.expect(")")
            return ProofNode(rule, concl, premises)
        raise ProofSyntaxError(f"unknown rule {rule!r}")

    def _r5(self) -> ProofNode:
        kw = self.toks.next_token()
        if kw != ("ident", "hyps"):
            raise ProofSyntaxError("R5 needs a 'hyps' list")
        self.toks.expect("[")
        hyps = []
        while True:
            tok = self.toks.next_token()
            if tok == "]":
                break
            hyps.append(self._asserted(first=tok))
        kw = self.toks.next_token()
        if kw != ("ident", "k"):
            raise ProofSyntaxError("R5 needs the selected index k")
        k = self.toks.next_token()
        if not (isinstance(k, tuple) and k[0] == "num"):
            raise ProofSyntaxError("R5 index k must be a number")
        kw = self.toks.next_token()
        if kw != ("ident", "subproofs"):
            raise ProofSyntaxError("R5 needs a 'subproofs' list")
        self.toks.expect("[")
        subs = []
        while True:
            if self.toks.peek() == "]":
                self.toks.next_token()
                break
            subs.append(self._operand())
        self.toks.expect(")")
        if not hyps:
            raise ProofSyntaxError("R5 needs at least one hypothesis")
        if not 1 <= k[1] <= len(hyps):
            raise ProofSyntaxError("R5 index k out of range")
        return ProofNode("R5", hyps[k[1] - 1], hyps=tuple(hyps), k=k[1],
                         premises=tuple(subs))


def parse_proof(text: str) -> ProofNode:
    return _ProofParser(text).parse_file()


# ---------------------------------------------------------------------------
# checking


class _Checker:
    def __init__(self, cfg: AlgebraConfig, strict: bool):
        self.cfg = cfg
        self.strict = strict
        self.failures: List[Tuple[str, str]] = []
        self.assumptions: List[str] = []

    def fail(self, path: str, reason: str):
        self.failures.append((path, reason))

    # -- helpers ----------------------------------------------------------

    def _same_seq(self, a: AssertedSeq, b: AssertedSeq, path: str,
                  what: str) -> bool:
        ok = True
        if term_atoms(a.term) != term_atoms(b.term):
            self.fail(path, f"{what}: sequence terms differ")
            ok = False
        if a.entry != b.entry or a.exit != b.exit:
            self.fail(path, f"{what}: entry/exit annotations differ")
            ok = False
        if not alpha_eq(a.pre, b.pre) or not alpha_eq(a.post, b.post):
            self.fail(path, f"{what}: formulas differ")
            ok = False
        return ok

    # -- per-node check; returns True when the node is locally valid ------

    def check(self, node: ProofNode, path: str,
              hyps: Optional[Tuple[AssertedSeq, ...]]) -> bool:
        rule = node.rule
        if rule == "HYP":
            if hyps is None:
                self.fail(path, "HYP outside a repetition subproof")
                return False
            if not 1 <= node.hyp_index <= len(hyps):
                self.fail(path, "HYP index out of range")
                return False
            return True
        if rule.startswith("A"):
            return self._axiom(node, path)
        method = getattr(self, f"_{rule.lower()}", None)
        if method is None:
            self.fail(path, f"unknown rule {rule}")
            return False
        if rule in ("R5", "REPINTRO") and hyps is not None:
            self.fail(path, "repetition rule inside a repetition subproof")
            return False
        ok = method(node, path, hyps)
        if rule != "R5":
            for i, prem in enumerate(node.premises, 1):
                ok = self.check(prem, f"{path}.{rule}[{i}]", hyps) and ok
        return ok

    def _conclusion_of(self, node: ProofNode,
                       hyps: Optional[Tuple[AssertedSeq, ...]]
                       ) -> Optional[AssertedSeq]:
        if node.rule == "HYP":
            if hyps is None or not 1 <= node.hyp_index <= len(hyps):
                return None
            return hyps[node.hyp_index - 1]
        return node.conclusion

    def _premise(self, node: ProofNode, i: int,
                 hyps: Optional[Tuple[AssertedSeq, ...]], path: str
                 ) -> Optional[AssertedSeq]:
        c = self._conclusion_of(node.premises[i], hyps)
        if c is None:
            self.fail(path, f"premise {i + 1} has no usable conclusion")
        return c

    # -- axioms -----------------------------------------------------------

    _TEST_AXIOMS = {
        "A1": (Basic, None, 1),
        "A3": (PosTest, Reply.T, 1),
        "A4": (PosTest, Reply.F, 2),
        "A6": (NegTest, Reply.T, 2),
        "A7": (NegTest, Reply.F, 1),
    }
    _DIV_AXIOMS = {"A2": Basic, "A5": PosTest, "A8": NegTest}

    def _axiom(self, node: ProofNode, path: str) -> bool:
        c = node.conclusion
        atoms = term_atoms(c.term)
        if len(atoms) != 1 or (isinstance(atoms[0], tuple) and atoms[0][0] == REP):
            self.fail(path, f"{node.rule}: the sequence must be one instruction")
            return False
        instr = atoms[0]
        if c.entry != 1:
            self.fail(path, f"{node.rule}: entry point must be 1")
            return False
        rule = node.rule
        if rule in self._TEST_AXIOMS:
            cls, reply, exit_ = self._TEST_AXIOMS[rule]
            if not isinstance(instr, cls):
                self.fail(path, f"{rule}: wrong instruction form")
                return False
            if c.exit != exit_:
                self.fail(path, f"{rule}: exit must be {exit_}")
                return False
            reply_eq = ReplyT(instr.method, Var(instr.focus))
            if reply is None:
                guard: Formula = Not(Eq(reply_eq, ReplyLit(Reply.D)))
            else:
                guard = Eq(reply_eq, ReplyLit(reply))
            expected = And(guard,
                           subst_derive(c.post, instr.focus, instr.method))
            if not alpha_eq(c.pre, expected):
                self.fail(path, f"{rule}: precondition does not match the schema")
                return False
            return True
        if rule in self._DIV_AXIOMS:
            if not isinstance(instr, self._DIV_AXIOMS[rule]):
                self.fail(path, f"{rule}: wrong instruction form")
                return False
            if c.exit != 0:
                self.fail(path, f"{rule}: exit must be 0")
                return False
            guard = Eq(ReplyT(instr.method, Var(instr.focus)),
                       ReplyLit(Reply.D))
            if not alpha_eq(c.pre, guard) or not alpha_eq(c.post, FALSE):
                self.fail(path, f"{rule}: annotations do not match the schema")
                return False
            return True
        if rule == "A9":
            if not (isinstance(instr, Jump) and instr.offset >= 1):
                self.fail(path, "A9: needs a positive jump")
                return False
            if c.exit != instr.offset or not alpha_eq(c.pre, c.post):
                self.fail(path, "A9: exit must equal the offset, P preserved")
                return False
            return True
        if rule == "A10":
            if not (isinstance(instr, Jump) and instr.offset == 0):
                self.fail(path, "A10: needs #0")
                return False
            if c.exit != 0 or not alpha_eq(c.pre, TRUE) or not alpha_eq(c.post, FALSE):
                self.fail(path, "A10: must be {1 | true} #0 {0 | false}")
                return False
            return True
        if rule == "A11":
            if not isinstance(instr, Halt):
                self.fail(path, "A11: needs !")
                return False
            if c.exit != 0 or not alpha_eq(c.pre, c.post):
                self.fail(path, "A11: exit must be 0 with P preserved")
                return False
            return True
        self.fail(path, f"unknown axiom {rule}")
        return False

    # -- concatenation rules ----------------------------------------------

    def _r1(self, node, path, hyps) -> bool:
        p1 = self._premise(node, 0, hyps, path)
        p2 = self._premise(node, 1, hyps, path)
        if p1 is None or p2 is None:
            return False
        c = node.conclusion
        ok = True
        if p1.exit <= 0 or p1.exit != p2.entry:
            self.fail(path, "R1: intermediate exit/entry must match and be > 0")
            ok = False
        if not alpha_eq(p1.post, p2.pre):
            self.fail(path, "R1: intermediate formulas differ")
            ok = False
        if term_atoms(c.term) != term_atoms(p1.term) + term_atoms(p2.term):
            self.fail(path, "R1: conclusion is not the premises' concatenation")
            ok = False
        if c.entry != p1.entry or not alpha_eq(c.pre, p1.pre):
            self.fail(path, "R1: entry annotation must come from premise 1")
            ok = False
        if c.exit != p2.exit or not alpha_eq(c.post, p2.post):
            self.fail(path, "R1: exit annotation must come from premise 2")
            ok = False
        return ok

    def _r2(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        a_c, a_p = term_atoms(c.term), term_atoms(p.term)
        if a_c[: len(a_p)] != a_p or len(a_c) == len(a_p):
            self.fail(path, "R2: the premise term must be a proper prefix")
            return False
        tail_len = atoms_len(a_c[len(a_p):])
        if tail_len is None:
            self.fail(path, "R2: the appended segment must be finite")
            return False
        ok = True
        if c.exit <= 0:
            self.fail(path, "R2: requires exit e > 0")
            ok = False
        if p.exit != c.exit + tail_len:
            self.fail(path, "R2: premise exit must be e + len(S2)")
            ok = False
        if (c.entry != p.entry or not alpha_eq(c.pre, p.pre)
                or not alpha_eq(c.post, p.post)):
            self.fail(path, "R2: entry/formula annotations must carry over")
            ok = False
        return ok

    def _r3(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        a_c, a_p = term_atoms(c.term), term_atoms(p.term)
        ok = True
        if a_c[: len(a_p)] != a_p or len(a_c) == len(a_p):
            self.fail(path, "R3: the premise term must be a proper prefix")
            ok = False
        if p.exit != 0 or c.exit != 0:
            self.fail(path, "R3: both exits must be 0")
            ok = False
        if (c.entry != p.entry or not alpha_eq(c.pre, p.pre)
                or not alpha_eq(c.post, p.post)):
            self.fail(path, "R3: entry/formula annotations must carry over")
            ok = False
        return ok

    def _r4(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        a_c, a_p = term_atoms(c.term), term_atoms(p.term)
        if len(a_c) <= len(a_p) or a_c[len(a_c) - len(a_p):] != a_p:
            self.fail(path, "R4: the premise term must be a proper suffix")
            return False
        head_len = atoms_len(a_c[: len(a_c) - len(a_p)])
        if head_len is None:
            self.fail(path, "R4: the prepended segment must be finite")
            return False
        ok = True
        if c.entry != p.entry + head_len:
            self.fail(path, "R4: entry must shift by len(S1)")
            ok = False
        if (c.exit != p.exit or not alpha_eq(c.pre, p.pre)
                or not alpha_eq(c.post, p.post)):
            self.fail(path, "R4: exit/formula annotations must carry over")
            ok = False
        return ok

    # -- repetition -------------------------------------------------------

    def _r5(self, node, path, hyps) -> bool:
        if len(node.premises) != len(node.hyps):
            self.fail(path, "R5: one subproof per hypothesis is required")
            return False
        bodies = set()
        ok = True
        for i, h in enumerate(node.hyps, 1):
            atoms = term_atoms(h.term)
            if (len(atoms) != 1 or not isinstance(atoms[0], tuple)
                    or atoms[0][0] != REP):
                self.fail(path, f"R5: hypothesis {i} must assert a repetition S^w")
                return False
            if atoms_len(atoms[0][1]) is None:
                self.fail(path, f"R5: hypothesis {i} body must be finite")
                return False
            bodies.add(atoms[0][1])
            if h.exit != 0:
                self.fail(path, f"R5: hypothesis {i} must have exit 0")
                ok = False
        if len(bodies) != 1:
            self.fail(path, "R5: all hypotheses must share the same S")
            return False
        body = next(iter(bodies))
        unrolled = body + ((REP, body),)
        for i, (h, sub) in enumerate(zip(node.hyps, node.premises), 1):
            sub_path = f"{path}.R5.sub[{i}]"
            sc = self._conclusion_of(sub, node.hyps)
            if sc is None:
                self.fail(sub_path, "subproof has no usable conclusion")
                ok = False
                continue
            if term_atoms(sc.term) != unrolled:
                self.fail(sub_path, "subproof must conclude about S ; S^w")
                ok = False
            if (sc.entry != h.entry or sc.exit != 0
                    or not alpha_eq(sc.pre, h.pre)
                    or not alpha_eq(sc.post, h.post)):
                self.fail(sub_path,
                          "subproof conclusion must match its hypothesis")
                ok = False
            ok = self.check(sub, sub_path, node.hyps) and ok
        ok = self._same_seq(node.conclusion, node.hyps[node.k - 1], path,
                            "R5: conclusion must be the k-th hypothesis") and ok
        return ok

    def _repintro(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        body = term_atoms(p.term)
        if atoms_len(body) is None:
            self.fail(path, "repetition introduction needs a finite body")
            return False
        ok = True
        if term_atoms(c.term) != ((REP, body),):
            self.fail(path, "conclusion must be the premise term repeated")
            ok = False
        if p.exit != 0 or c.exit != 0:
            self.fail(path, "repetition introduction requires exit 0")
            ok = False
        if (c.entry != p.entry or not alpha_eq(c.pre, p.pre)
                or not alpha_eq(c.post, p.post)):
            self.fail(path, "entry/formula annotations must carry over")
            ok = False
        return ok

    # -- structural rules -------------------------------------------------

    def _r6(self, node, path, hyps) -> bool:
        p1 = self._premise(node, 0, hyps, path)
        p2 = self._premise(node, 1, hyps, path)
        if p1 is None or p2 is None:
            return False
        c = node.conclusion
        ok = True
        if not isinstance(c.pre, Or):
            self.fail(path, "R6: precondition must be a disjunction")
            return False
        if not (alpha_eq(c.pre.left, p1.pre) and alpha_eq(c.pre.right, p2.pre)):
            self.fail(path, "R6: disjuncts must match the premises")
            ok = False
        for i, p in enumerate((p1, p2), 1):
            if (term_atoms(c.term) != term_atoms(p.term)
                    or c.entry != p.entry or c.exit != p.exit
                    or not alpha_eq(c.post, p.post)):
                self.fail(path, f"R6: premise {i} must differ only in P")
                ok = False
        return ok

    def _r7(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        if not (isinstance(c.pre, And) and isinstance(c.post, And)):
            self.fail(path, "R7: both annotations must be conjunctions")
            return False
        ok = True
        if not (alpha_eq(c.pre.left, p.pre) and alpha_eq(c.post.left, p.post)):
            self.fail(path, "R7: left conjuncts must match the premise")
            ok = False
        invariant = c.pre.right
        if not alpha_eq(invariant, c.post.right):
            self.fail(path, "R7: the invariant must be the same on both sides")
            ok = False
        if free_foci(invariant) & atoms_foci(term_atoms(c.term)):
            self.fail(path, "R7: the invariant mentions a focus of S")
            ok = False
        if (term_atoms(c.term) != term_atoms(p.term)
                or c.entry != p.entry or c.exit != p.exit):
            self.fail(path, "R7: sequence and entry/exit must carry over")
            ok = False
        return ok

    def _r8(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        if not isinstance(c.pre, Exists):
            self.fail(path, "R8: precondition must be existential")
            return False
        ok = True
        x = c.pre.var
        if not alpha_eq(c.pre.body, p.pre):
            self.fail(path, "R8: the body must match the premise precondition")
            ok = False
        if x in atoms_foci(term_atoms(c.term)):
            self.fail(path, "R8: the bound variable is a focus of S")
            ok = False
        try:
            if x in free_vars(c.post):
                self.fail(path, "R8: the bound variable occurs free in Q")
                ok = False
        except Exception:
            pass
        if (term_atoms(c.term) != term_atoms(p.term)
                or c.entry != p.entry or c.exit != p.exit
                or not alpha_eq(c.post, p.post)):
            self.fail(path, "R8: sequence and exit annotation must carry over")
            ok = False
        return ok

    def _r9(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        if node.rename is None:
            self.fail(path, "R9: missing the variable pair")
            return False
        x, y = node.rename
        ok = True
        foci = atoms_foci(term_atoms(c.term))
        if x in foci or y in foci:
            self.fail(path, "R9: renamed variables must not be foci of S")
            ok = False
        if not alpha_eq(c.pre, substitute(p.pre, x, Var(y))):
            self.fail(path, "R9: precondition is not the renamed premise")
            ok = False
        if not alpha_eq(c.post, substitute(p.post, x, Var(y))):
            self.fail(path, "R9: postcondition is not the renamed premise")
            ok = False
        if (term_atoms(c.term) != term_atoms(p.term)
                or c.entry != p.entry or c.exit != p.exit):
            self.fail(path, "R9: sequence and entry/exit must carry over")
            ok = False
        return ok

    def _r10(self, node, path, hyps) -> bool:
        p = self._premise(node, 0, hyps, path)
        if p is None:
            return False
        c = node.conclusion
        ok = True
        if (term_atoms(c.term) != term_atoms(p.term)
                or c.entry != p.entry or c.exit != p.exit):
            self.fail(path, "R10: sequence and entry/exit must carry over")
            ok = False
        if node.obligations is not None:
            ob_pre, ob_post = node.obligations
            if not alpha_eq(ob_pre, Implies(c.pre, p.pre)):
                self.fail(path, "R10: first obligation must be P -> P'")
                ok = False
            if not alpha_eq(ob_post, Implies(p.post, c.post)):
                self.fail(path, "R10: second obligation must be Q' -> Q")
                ok = False
        for what, lhs, rhs in (("P -> P'", c.pre, p.pre),
                               ("Q' -> Q", p.post, c.post)):
            verdict = entails(lhs, rhs, self.cfg)
            if verdict.kind == "valid":
                continue
            if verdict.kind == "bounded" and not self.strict:
                self.assumptions.append(
                    f"{path}: {what}: {format_formula(lhs)} -> "
                    f"{format_formula(rhs)} (bounded, B={verdict.bound})")
                continue
            self.fail(path, f"R10: obligation {what} is {verdict.kind}")
            ok = False
        return ok


def check_proof(p: ProofNode, cfg: AlgebraConfig = AlgebraConfig(),
                strict: bool = False) -> CheckResult:
    """Validate every node of the proof tree against the rule schemata.

    Strict mode refuses entailment obligations that are only valid up to
    the enumeration bound; otherwise they are accepted and recorded.
    """
    checker = _Checker(cfg, strict)
    if p.rule == "HYP":
        checker.fail("root", "a proof cannot be a bare hypothesis")
    else:
        checker.check(p, "root", None)
    return CheckResult(not checker.failures, checker.failures,
                       checker.assumptions)
