"""First-order assertions over the service-algebra signature.

Foci appear as free service-sorted variables.  Terms cover the built-in
algebras (counter: 0, s, p, nnc; boolean register: reg) plus the derive and
reply operators d[m](t) and r[m](t) and the reply literals :t/:f/:d.

Evaluation is three-valued: True, False, or None when a truncated quantifier
domain is the deciding factor.  The entailment oracle enumerates states and
valuations within the configured bounds and reports how far its answer can
be trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from .services import (EMPTY, AlgebraConfig, Reply, Service, ServiceFamily,
                       boolreg, counter, family, svc_step)

SORTS = ("nat", "bool", "serv", "repl")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class SortError(ValueError):
    pass


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class NatLit:
    value: int


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class ReplyLit:
    value: Reply


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Pred:
    arg: "Term"


@dataclass(frozen=True)
class Nnc:
    arg: "Term"


@dataclass(frozen=True)
class RegOf:
    arg: "Term"


@dataclass(frozen=True)
class EmptyServ:
    pass


@dataclass(frozen=True)
class DeriveT:
    method: str
    arg: "Term"


@dataclass(frozen=True)
class ReplyT:
    method: str
    arg: "Term"


Term = Union[Var, NatLit, BoolLit, ReplyLit, Succ, Pred, Nnc, RegOf,
             EmptyServ, DeriveT, ReplyT]


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class FalseF:
    pass


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Exists:
    var: str
    sort: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    sort: str
    body: "Formula"


Formula = Union[TrueF, FalseF, Not, And, Or, Implies, Eq, Exists, Forall]

TRUE = TrueF()
FALSE = FalseF()


# ---------------------------------------------------------------------------
# parsing

_BIN = {"/\\": And, "\\/": Or, "->": Implies}


class _Lexer:
    SYMBOLS = ("->", "/\\", "\\/", "~", "(", ")", "[", "]", "=", ".", ":")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._lex()
        self.i = 0

    def _lex(self):
        t = self.text
        n = len(t)
        p = 0
        while p < n:
            if t[p].isspace():
                p += 1
                continue
            matched = None
            for sym in self.SYMBOLS:
                if t.startswith(sym, p):
                    matched = sym
                    break
            if matched:
                self.tokens.append((matched, p))
                p += len(matched)
                continue
            if t[p].isdigit():
                start = p
                while p < n and t[p].isdigit():
                    p += 1
                self.tokens.append((("num", int(t[start:p])), start))
                continue
            if t[p].isalpha() or t[p] == "_":
                start = p
                while p < n and (t[p].isalnum() or t[p] == "_"):
                    p += 1
                self.tokens.append((("ident", t[start:p]), start))
                continue
            raise FormulaSyntaxError(f"unexpected character {t[p]!r}", p)
        self.tokens.append((("eof", None), n))

    def peek(self):
        return self.tokens[self.i][0]

    def peek2(self):
        return self.tokens[self.i + 1][0] if self.i + 1 < len(self.tokens) else ("eof", None)

    def here(self) -> int:
        return self.tokens[self.i][1]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok[0]

    def expect(self, sym):
        tok = self.next()
        if tok != sym:
            raise FormulaSyntaxError(f"expected {sym!r}, got {tok!r}", self.tokens[self.i - 1][1])


def _is_ident(tok, name=None):
    return isinstance(tok, tuple) and tok[0] == "ident" and (name is None or tok[1] == name)


class _FormulaParser:
    def __init__(self, text: str):
        self.lx = _Lexer(text)

    def parse(self) -> Formula:
        f = self.formula()
        if self.lx.peek() != ("eof", None):
            raise FormulaSyntaxError("trailing input", self.lx.here())
        return f

    def formula(self) -> Formula:
        return self.implication()

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.lx.peek() == "->":
            self.lx.next()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.lx.peek() == "\\/":
            self.lx.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.negation()
        while self.lx.peek() == "/\\":
            self.lx.next()
            left = And(left, self.negation())
        return left

    def negation(self) -> Formula:
        if self.lx.peek() == "~":
            self.lx.next()
            return Not(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.lx.peek()
        if _is_ident(tok, "exists") or _is_ident(tok, "forall"):
            kind = tok[1]
            self.lx.next()
            var_tok = self.lx.next()
            if not _is_ident(var_tok):
                raise FormulaSyntaxError("expected a variable name", self.lx.here())
            self.lx.expect(":")
            sort_tok = self.lx.next()
            if not _is_ident(sort_tok) or sort_tok[1] not in SORTS:
                raise FormulaSyntaxError("expected a sort (nat/bool/serv/repl)",
                                         self.lx.here())
            self.lx.expect(".")
            body = self.formula()
            cls = Exists if kind == "exists" else Forall
            return cls(var_tok[1], sort_tok[1], body)
        if tok == "(":
            self.lx.next()
            inner = self.formula()
            self.lx.expect(")")
            return inner
        if _is_ident(tok, "true") and self.lx.peek2() != "=":
            self.lx.next()
            return TRUE
        if _is_ident(tok, "false") and self.lx.peek2() != "=":
            self.lx.next()
            return FALSE
        left = self.term()
        self.lx.expect("=")
        right = self.term()
        return Eq(left, right)

    def term(self) -> Term:
        tok = self.lx.peek()
        if tok == ":":
            self.lx.next()
            lit = self.lx.next()
            if not _is_ident(lit) or lit[1] not in ("t", "f", "d"):
                raise FormulaSyntaxError("expected :t, :f or :d", self.lx.here())
            return ReplyLit(Reply(lit[1]))
        if isinstance(tok, tuple) and tok[0] == "num":
            self.lx.next()
            return NatLit(tok[1])
        if _is_ident(tok):
            name = tok[1]
            nxt = self.lx.peek2()
            if name in ("d", "r") and nxt == "[":
                self.lx.next()
                self.lx.expect("[")
                method = self._method_name()
                self.lx.expect("]")
                self.lx.expect("(")
                arg = self.term()
                self.lx.expect(")")
                return DeriveT(method, arg) if name == "d" else ReplyT(method, arg)
            if name in ("s", "p", "nnc", "reg") and nxt == "(":
                self.lx.next()
                self.lx.expect("(")
                arg = self.term()
                self.lx.expect(")")
                return {"s": Succ, "p": Pred, "nnc": Nnc, "reg": RegOf}[name](arg)
            self.lx.next()
            if name == "empty":
                return EmptyServ()
            if name == "true":
                return BoolLit(True)
            if name == "false":
                return BoolLit(False)
            return Var(name)
        raise FormulaSyntaxError("expected a term", self.lx.here())

    def _method_name(self) -> str:
        # method names may contain ':' segments (e.g. set:t)
        tok = self.lx.next()
        if not _is_ident(tok):
            raise FormulaSyntaxError("expected a method name", self.lx.here())
        name = tok[1]
        while self.lx.peek() == ":":
            self.lx.next()
            part = self.lx.next()
            if not _is_ident(part):
                raise FormulaSyntaxError("expected a method name part", self.lx.here())
            name += ":" + part[1]
        return name


def parse_formula(text: str) -> Formula:
    return _FormulaParser(text).parse()


# ---------------------------------------------------------------------------
# printing


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, NatLit):
        return str(t.value)
    if isinstance(t, BoolLit):
        return "true" if t.value else "false"
    if isinstance(t, ReplyLit):
        return ":" + t.value.value
    if isinstance(t, Succ):
        return f"s({format_term(t.arg)})"
    if isinstance(t, Pred):
        return f"p({format_term(t.arg)})"
    if isinstance(t, Nnc):
        return f"nnc({format_term(t.arg)})"
    if isinstance(t, RegOf):
        return f"reg({format_term(t.arg)})"
    if isinstance(t, EmptyServ):
        return "empty"
    if isinstance(t, DeriveT):
        return f"d[{t.method}]({format_term(t.arg)})"
    if isinstance(t, ReplyT):
        return f"r[{t.method}]({format_term(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


def format_formula(f: Formula) -> str:
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, Not):
        return f"~{_wrap(f.body)}"
    if isinstance(f, And):
        return f"{_wrap(f.left)} /\\ {_wrap(f.right)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left)} \\/ {_wrap(f.right)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left)} -> {_wrap(f.right)}"
    if isinstance(f, Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, Exists):
        return f"exists {f.var}:{f.sort}. {format_formula(f.body)}"
    if isinstance(f, Forall):
        return f"forall {f.var}:{f.sort}. {format_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula) -> str:
    if isinstance(f, (TrueF, FalseF, Eq, Not)):
        return format_formula(f)
    return f"({format_formula(f)})"


# ---------------------------------------------------------------------------
# free variables and sorts


def _term_vars(t: Term, sort_hint: Optional[str], out: Dict[str, Optional[str]]):
    if isinstance(t, Var):
        prev = out.get(t.name)
        if prev is None:
            out[t.name] = sort_hint
        elif sort_hint is not None and prev != sort_hint:
            raise SortError(f"variable {t.name} used at sorts {prev} and {sort_hint}")
    elif isinstance(t, (Succ, Pred)):
        _term_vars(t.arg, "nat", out)
    elif isinstance(t, Nnc):
        _term_vars(t.arg, "nat", out)
    elif isinstance(t, RegOf):
        _term_vars(t.arg, "bool", out)
    elif isinstance(t, (DeriveT, ReplyT)):
        _term_vars(t.arg, "serv", out)


def _term_sort(t: Term, env: Dict[str, Optional[str]]) -> Optional[str]:
    if isinstance(t, Var):
        return env.get(t.name)
    if isinstance(t, (NatLit, Succ, Pred)):
        return "nat"
    if isinstance(t, BoolLit):
        return "bool"
    if isinstance(t, (ReplyLit, ReplyT)):
        return "repl"
    if isinstance(t, (Nnc, RegOf, EmptyServ, DeriveT)):
        return "serv"
    return None


def _collect(f: Formula, bound: Dict[str, str], out: Dict[str, Optional[str]]):
    if isinstance(f, (TrueF, FalseF)):
        return
    if isinstance(f, Not):
        _collect(f.body, bound, out)
    elif isinstance(f, (And, Or, Implies)):
        _collect(f.left, bound, out)
        _collect(f.right, bound, out)
    elif isinstance(f, (Exists, Forall)):
        saved = bound.get(f.var)
        bound[f.var] = f.sort
        _collect(f.body, bound, out)
        if saved is None:
            del bound[f.var]
        else:
            bound[f.var] = saved
    elif isinstance(f, Eq):
        local: Dict[str, Optional[str]] = {}
        _term_vars(f.left, None, local)
        _term_vars(f.right, None, local)
        lsort = _term_sort(f.left, {**local, **bound})
        rsort = _term_sort(f.right, {**local, **bound})
        sort = lsort or rsort
        if lsort and rsort and lsort != rsort:
            raise SortError(f"ill-sorted equality: {lsort} = {rsort}")
        for side in (f.left, f.right):
            if isinstance(side, Var) and side.name not in local:
                local[side.name] = None
        if sort is not None:
            for side in (f.left, f.right):
                if isinstance(side, Var):
                    local[side.name] = sort
        for name, s in local.items():
            if name in bound:
                if s is not None and bound[name] != s:
                    raise SortError(f"bound variable {name} used at sort {s}, "
                                    f"declared {bound[name]}")
                continue
            prev = out.get(name)
            if prev is None:
                out[name] = s
            elif s is not None and prev != s:
                raise SortError(f"variable {name} used at sorts {prev} and {s}")


def free_vars(f: Formula) -> Dict[str, str]:
    """Free variables with their inferred sorts.

    Free service-sorted variables are exactly the foci.  Raises SortError if
    a variable's sort cannot be determined or is used inconsistently.
    """
    out: Dict[str, Optional[str]] = {}
    _collect(f, {}, out)
    for name, sort in out.items():
        if sort is None:
            raise SortError(f"cannot infer the sort of variable {name}")
    return dict(out)  # type: ignore[arg-type]


def free_foci(f: Formula) -> frozenset:
    return frozenset(n for n, s in free_vars(f).items() if s == "serv")


# ---------------------------------------------------------------------------
# substitution and alpha-equivalence


def _subst_term(t: Term, name: str, repl: Term) -> Term:
    if isinstance(t, Var):
        return repl if t.name == name else t
    if isinstance(t, (Succ, Pred, Nnc, RegOf)):
        return type(t)(_subst_term(t.arg, name, repl))
    if isinstance(t, (DeriveT, ReplyT)):
        return type(t)(t.method, _subst_term(t.arg, name, repl))
    return t


def _repl_free(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, (Succ, Pred, Nnc, RegOf, DeriveT, ReplyT)):
        return _repl_free(t.arg)
    return frozenset()


def _fresh(base: str, avoid) -> str:
    i = 0
    cand = base
    while cand in avoid:
        i += 1
        cand = f"{base}_{i}"
    return cand


def _formula_var_names(f: Formula) -> frozenset:
    if isinstance(f, (TrueF, FalseF)):
        return frozenset()
    if isinstance(f, Not):
        return _formula_var_names(f.body)
    if isinstance(f, (And, Or, Implies)):
        return _formula_var_names(f.left) | _formula_var_names(f.right)
    if isinstance(f, (Exists, Forall)):
        return _formula_var_names(f.body) | {f.var}
    return _repl_free(f.left) | _repl_free(f.right)


def substitute(f: Formula, name: str, repl: Term) -> Formula:
    """Capture-avoiding substitution of repl for free occurrences of name."""
    if isinstance(f, (TrueF, FalseF)):
        return f
    if isinstance(f, Not):
        return Not(substitute(f.body, name, repl))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute(f.left, name, repl),
                       substitute(f.right, name, repl))
    if isinstance(f, Eq):
        return Eq(_subst_term(f.left, name, repl),
                  _subst_term(f.right, name, repl))
    if isinstance(f, (Exists, Forall)):
        if f.var == name:
            return f
        if f.var in _repl_free(repl):
            avoid = _formula_var_names(f.body) | _repl_free(repl) | {name}
            fresh = _fresh(f.var, avoid)
            body = substitute(f.body, f.var, Var(fresh))
            return type(f)(fresh, f.sort, substitute(body, name, repl))
        return type(f)(f.var, f.sort, substitute(f.body, name, repl))
    raise TypeError(f"not a formula: {f!r}")


def subst_derive(f: Formula, focus: str, method: str) -> Formula:
    """P with the focus replaced by its derived service: P<d[m](f)/f>."""
    return substitute(f, focus, DeriveT(method, Var(focus)))


def rename(f: Formula, old: str, new: str) -> Formula:
    return substitute(f, old, Var(new))


def _alpha_term(a: Term, b: Term, env_a: Dict[str, int], env_b: Dict[str, int]) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        ia, ib = env_a.get(a.name), env_b.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia == ib
    if isinstance(a, (NatLit, BoolLit, ReplyLit)):
        return a == b
    if isinstance(a, EmptyServ):
        return True
    if isinstance(a, (DeriveT, ReplyT)):
        return a.method == b.method and _alpha_term(a.arg, b.arg, env_a, env_b)
    return _alpha_term(a.arg, b.arg, env_a, env_b)


def _alpha(a: Formula, b: Formula, env_a, env_b, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, (TrueF, FalseF)):
        return True
    if isinstance(a, Not):
        return _alpha(a.body, b.body, env_a, env_b, depth)
    if isinstance(a, (And, Or, Implies)):
        return (_alpha(a.left, b.left, env_a, env_b, depth)
                and _alpha(a.right, b.right, env_a, env_b, depth))
    if isinstance(a, Eq):
        return (_alpha_term(a.left, b.left, env_a, env_b)
                and _alpha_term(a.right, b.right, env_a, env_b))
    if isinstance(a, (Exists, Forall)):
        if a.sort != b.sort:
            return False
        env_a2 = {**env_a, a.var: depth}
        env_b2 = {**env_b, b.var: depth}
        return _alpha(a.body, b.body, env_a2, env_b2, depth + 1)
    raise TypeError(f"not a formula: {a!r}")


def alpha_eq(a: Formula, b: Formula) -> bool:
    return _alpha(a, b, {}, {}, 0)


# ---------------------------------------------------------------------------
# evaluation


class MissingFocusError(KeyError):
    pass


def _eval_term(t: Term, env: Dict[str, object]):
    if isinstance(t, Var):
        if t.name not in env:
            raise MissingFocusError(t.name)
        return env[t.name]
    if isinstance(t, NatLit):
        return t.value
    if isinstance(t, BoolLit):
        return t.value
    if isinstance(t, ReplyLit):
        return t.value
    if isinstance(t, Succ):
        return _eval_term(t.arg, env) + 1
    if isinstance(t, Pred):
        return max(0, _eval_term(t.arg, env) - 1)
    if isinstance(t, Nnc):
        return counter(_eval_term(t.arg, env))
    if isinstance(t, RegOf):
        return boolreg(_eval_term(t.arg, env))
    if isinstance(t, EmptyServ):
        return EMPTY
    if isinstance(t, DeriveT):
        return svc_step(_eval_term(t.arg, env), t.method)[1]
    if isinstance(t, ReplyT):
        return svc_step(_eval_term(t.arg, env), t.method)[0]
    raise TypeError(f"not a term: {t!r}")


def _not3(v):
    return None if v is None else (not v)


def _and3(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _or3(a, b):
    if a is True or b is True:
        return True
    if a is None or b is None:
        return None
    return False


def sort_domain(sort: str, cfg: AlgebraConfig):
    """(values, exhaustive) for quantification over the given sort."""
    if sort == "bool":
        return [False, True], True
    if sort == "repl":
        return [Reply.T, Reply.F, Reply.D], True
    if sort == "nat":
        return list(range(cfg.quant_bound + 1)), False
    if sort == "serv":
        return cfg.service_domain()
    raise SortError(f"unknown sort {sort!r}")


def _eval(f: Formula, env: Dict[str, object], cfg: AlgebraConfig):
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, Not):
        return _not3(_eval(f.body, env, cfg))
    if isinstance(f, And):
        return _and3(_eval(f.left, env, cfg), _eval(f.right, env, cfg))
    if isinstance(f, Or):
        return _or3(_eval(f.left, env, cfg), _eval(f.right, env, cfg))
    if isinstance(f, Implies):
        return _or3(_not3(_eval(f.left, env, cfg)), _eval(f.right, env, cfg))
    if isinstance(f, Eq):
        return _eval_term(f.left, env) == _eval_term(f.right, env)
    if isinstance(f, (Exists, Forall)):
        values, exhaustive = sort_domain(f.sort, cfg)
        results = []
        for v in values:
            env2 = {**env, f.var: v}
            results.append(_eval(f.body, env2, cfg))
        if isinstance(f, Exists):
            if True in results:
                return True
            if None in results or not exhaustive:
                return None
            return False
        if False in results:
            return False
        if None in results or not exhaustive:
            return None
        return True
    raise TypeError(f"not a formula: {f!r}")


def eval_formula(f: Formula, state: ServiceFamily, cfg: AlgebraConfig,
                 valuation: Optional[Dict[str, object]] = None):
    """Three-valued satisfaction at a state.

    Every focus free in f must be present in the state; other free variables
    come from the valuation.  Returns None when a truncated quantifier
    domain is the deciding factor.
    """
    env: Dict[str, object] = dict(valuation or {})
    sorts = free_vars(f)
    for name, sort in sorts.items():
        if name in env:
            continue
        if sort == "serv":
            service = state.get(name)
            if service is None:
                raise MissingFocusError(name)
            env[name] = service
        else:
            raise ValueError(f"no valuation for free variable {name}:{sort}")
    return _eval(f, env, cfg)


# ---------------------------------------------------------------------------
# entailment oracle


@dataclass(frozen=True)
class EntailVerdict:
    kind: str  # valid | invalid | bounded | unknown
    witness: Optional[Tuple[ServiceFamily, dict]] = None
    bound: Optional[int] = None

    @property
    def is_acceptable(self) -> bool:
        return self.kind in ("valid", "bounded")


def enumerate_states(foci, var_sorts, cfg: AlgebraConfig):
    """Yield (state, valuation) pairs; returns whether enumeration was
    exhaustive via the second element of the generator's final flag.

    Used as: states, exhaustive = state_space(...); kept eager because the
    spaces involved are small by construction.
    """
    services, serv_exhaustive = cfg.service_domain()
    exhaustive = True
    foci = sorted(foci)
    var_sorts = dict(sorted(var_sorts.items()))
    if foci and not serv_exhaustive:
        exhaustive = False
    domains = []
    for _, sort in var_sorts.items():
        if sort == "nat":
            domains.append(list(range(cfg.state_bound + 1)))
            exhaustive = False
        else:
            values, ex = sort_domain(sort, cfg)
            domains.append(values)
            exhaustive = exhaustive and ex
    pairs = []
    for combo in itertools.product(services, repeat=len(foci)):
        state = family(dict(zip(foci, combo)))
        for values in itertools.product(*domains):
            pairs.append((state, dict(zip(var_sorts.keys(), values))))
    return pairs, exhaustive


def entails(p: Formula, q: Formula, cfg: AlgebraConfig) -> EntailVerdict:
    """Does p -> q hold in the algebra, for all states and valuations?

    boolreg with no nat variables is decided exactly; otherwise the check is
    bounded: `bounded` means no countermodel exists within the bounds,
    `unknown` means some case was undecided even within the bounds.
    """
    if alpha_eq(p, q):
        return EntailVerdict("valid")
    sorts = {}
    for f in (p, q):
        for name, sort in free_vars(f).items():
            if name in sorts and sorts[name] != sort:
                raise SortError(f"variable {name} used at two sorts")
            sorts[name] = sort
    foci = {n for n, s in sorts.items() if s == "serv"}
    var_sorts = {n: s for n, s in sorts.items() if s != "serv"}
    pairs, exhaustive = enumerate_states(foci, var_sorts, cfg)
    undecided = False
    for state, valuation in pairs:
        pv = eval_formula(p, state, cfg, valuation)
        if pv is False:
            continue
        qv = eval_formula(q, state, cfg, valuation)
        if pv is True and qv is False:
            return EntailVerdict("invalid", witness=(state, valuation))
        if qv is None or pv is None:
            undecided = True
    if undecided:
        return EntailVerdict("unknown", bound=cfg.state_bound)
    if exhaustive:
        return EntailVerdict("valid")
    return EntailVerdict("bounded", bound=cfg.state_bound)
