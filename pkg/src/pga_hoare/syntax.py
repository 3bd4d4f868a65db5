"""Instruction sequence terms, parsing, and canonical normal forms.

An instruction sequence term is built from primitive instructions with
concatenation, finite powers, and omega-repetition.  Every well-formed term
denotes a non-empty finite or eventually periodic infinite sequence of
primitive instructions; `normalize` computes the unique canonical
representative (minimal prefix plus primitive period), which makes sequence
equality a componentwise comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

OMEGA = float("inf")


class SequenceSyntaxError(ValueError):
    """Raised on malformed sequence text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# primitive instructions


@dataclass(frozen=True)
class Basic:
    focus: str
    method: str


@dataclass(frozen=True)
class PosTest:
    focus: str
    method: str


@dataclass(frozen=True)
class NegTest:
    focus: str
    method: str


@dataclass(frozen=True)
class Jump:
    offset: int


@dataclass(frozen=True)
class Halt:
    pass


Instruction = Union[Basic, PosTest, NegTest, Jump, Halt]

HALT = Halt()


# ---------------------------------------------------------------------------
# sequence terms


@dataclass(frozen=True)
class Instr:
    instruction: Instruction


@dataclass(frozen=True)
class Concat:
    left: "SequenceTerm"
    right: "SequenceTerm"


@dataclass(frozen=True)
class Power:
    body: "SequenceTerm"
    count: int


@dataclass(frozen=True)
class Repeat:
    body: "SequenceTerm"


SequenceTerm = Union[Instr, Concat, Power, Repeat]


def concat_all(terms: list) -> SequenceTerm:
    """Right-nested concatenation of a non-empty list of terms."""
    if not terms:
        raise ValueError("empty term")
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Concat(t, out)
    return out


@dataclass(frozen=True)
class CanonicalSequence:
    """Minimal prefix plus optional primitive period.

    A finite sequence has `period is None`; an infinite one repeats `period`
    forever after `prefix`.  Construct via `make_canonical` so that equal
    sequences compare equal componentwise.
    """

    prefix: tuple
    period: Optional[tuple]

    @property
    def is_finite(self) -> bool:
        return self.period is None

    @property
    def length(self):
        return len(self.prefix) if self.period is None else OMEGA

    def instruction_at(self, i: int) -> Instruction:
        """1-indexed access; i must satisfy 1 <= i <= length."""
        if i < 1 or i > self.length:
            raise IndexError(f"position {i} out of range")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]

    def representative(self, i: int) -> Optional[int]:
        """Map an absolute 1-indexed position to its representative.

        Positions inside the period are shared across unrollings.  Returns
        None for positions past the end of a finite sequence.
        """
        if i <= len(self.prefix):
            return i
        if self.period is None:
            return None
        return len(self.prefix) + (i - len(self.prefix) - 1) % len(self.period) + 1

    def first(self, n: int) -> tuple:
        """The first n instructions (n may exceed the length; truncated)."""
        out = []
        i = 1
        while i <= n and i <= self.length:
            out.append(self.instruction_at(i))
            i += 1
        return tuple(out)


def _primitive_root(word: tuple) -> tuple:
    """Shortest word w such that word = w^k."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[: d] * (n // d):
            return word[:d]
    return word


def make_canonical(prefix, period) -> CanonicalSequence:
    """Build the unique canonical form: primitive period, minimal prefix."""
    prefix = list(prefix)
    if period is None:
        if not prefix:
            raise ValueError("empty sequence")
        return CanonicalSequence(tuple(prefix), None)
    period = list(_primitive_root(tuple(period)))
    # Rotating the last prefix instruction into the period keeps the denoted
    # sequence unchanged; repeat until the prefix is minimal.
    while prefix and prefix[-1] == period[-1]:
        prefix.pop()
        period = [period[-1]] + period[:-1]
    return CanonicalSequence(tuple(prefix), tuple(period))


def drop_canonical(c: CanonicalSequence, k: int) -> CanonicalSequence:
    """The canonical sequence with the first k instructions removed."""
    if k >= c.length:
        raise ValueError("cannot drop the whole sequence")
    if c.period is None:
        return make_canonical(c.prefix[k:], None)
    if k <= len(c.prefix):
        return make_canonical(c.prefix[k:], c.period)
    shift = (k - len(c.prefix)) % len(c.period)
    return make_canonical((), c.period[shift:] + c.period[:shift])


def concat_canonical(a: CanonicalSequence, b: CanonicalSequence) -> CanonicalSequence:
    if a.period is not None:
        return a
    return make_canonical(a.prefix + b.prefix, b.period)


# ---------------------------------------------------------------------------
# parsing

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")
_METHOD_CONT = _IDENT_CONT | {":"}


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str):
        got = self.peek()
        if got != ch:
            raise SequenceSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise SequenceSyntaxError("expected a natural number", start)
        return int(self.text[start : self.pos])

    def ident(self, allow_colon=False) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in _IDENT_START:
            raise SequenceSyntaxError("expected an identifier", self.pos)
        cont = _METHOD_CONT if allow_colon else _IDENT_CONT
        while self.pos < len(self.text) and self.text[self.pos] in cont:
            self.pos += 1
        return self.text[start : self.pos]


def _parse_atom(s: _Scanner) -> SequenceTerm:
    ch = s.peek()
    if ch == "(":
        s.take()
        inner = _parse_seq(s)
        s.expect(")")
        return inner
    if ch == "!":
        s.take()
        return Instr(HALT)
    if ch == "#":
        s.take()
        if s.peek() == "-":
            raise SequenceSyntaxError("negative jump offset", s.pos)
        return Instr(Jump(s.nat()))
    polarity = None
    if ch in "+-":
        polarity = s.take()
    focus = s.ident()
    s.expect(".")
    method = s.ident(allow_colon=True)
    if polarity == "+":
        return Instr(PosTest(focus, method))
    if polarity == "-":
        return Instr(NegTest(focus, method))
    return Instr(Basic(focus, method))


def _parse_item(s: _Scanner) -> SequenceTerm:
    term = _parse_atom(s)
    while s.peek() == "^":
        s.take()
        if s.peek() == "w":
            s.take()
            term = Repeat(term)
        else:
            term = Power(term, s.nat())
    return term


def _parse_seq(s: _Scanner) -> SequenceTerm:
    items = [_parse_item(s)]
    while s.peek() == ";":
        s.take()
        items.append(_parse_item(s))
    return concat_all(items)


def parse_sequence(text: str) -> SequenceTerm:
    if not text.strip():
        raise SequenceSyntaxError("empty term", 0)
    s = _Scanner(text)
    term = _parse_seq(s)
    if s.peek():
        raise SequenceSyntaxError("trailing input", s.pos)
    return term


# ---------------------------------------------------------------------------
# printing


def format_instruction(i: Instruction) -> str:
    if isinstance(i, Basic):
        return f"{i.focus}.{i.method}"
    if isinstance(i, PosTest):
        return f"+{i.focus}.{i.method}"
    if isinstance(i, NegTest):
        return f"-{i.focus}.{i.method}"
    if isinstance(i, Jump):
        return f"#{i.offset}"
    return "!"


def format_term(t: SequenceTerm) -> str:
    if isinstance(t, Instr):
        return format_instruction(t.instruction)
    if isinstance(t, Concat):
        return f"{format_term(t.left)} ; {format_term(t.right)}"
    if isinstance(t, Power):
        return f"({format_term(t.body)})^{t.count}"
    return f"({format_term(t.body)})^w"


def format_canonical(c: CanonicalSequence) -> str:
    parts = [format_instruction(i) for i in c.prefix]
    if c.period is not None:
        body = " ; ".join(format_instruction(i) for i in c.period)
        parts.append(f"({body})^w")
    return " ; ".join(parts)


# ---------------------------------------------------------------------------
# normalization


def _flatten(t: SequenceTerm) -> CanonicalSequence:
    if isinstance(t, Instr):
        return CanonicalSequence((t.instruction,), None)
    if isinstance(t, Power):
        if t.count == 0:
            return CanonicalSequence((Jump(0),), None)
        body = _flatten(t.body)
        if body.period is not None:
            return body
        return CanonicalSequence(body.prefix * t.count, None)
    if isinstance(t, Concat):
        left = _flatten(t.left)
        if left.period is not None:
            return left
        right = _flatten(t.right)
        return CanonicalSequence(left.prefix + right.prefix, right.period)
    if isinstance(t, Repeat):
        body = _flatten(t.body)
        if body.period is not None:
            return body
        return CanonicalSequence((), body.prefix)
    raise TypeError(f"not a sequence term: {t!r}")


def normalize(t: SequenceTerm) -> CanonicalSequence:
    flat = _flatten(t)
    return make_canonical(flat.prefix, flat.period)


def seq_equal(a: SequenceTerm, b: SequenceTerm) -> bool:
    return normalize(a) == normalize(b)


def term_length(t: SequenceTerm):
    return normalize(t).length


def foci_of_term(t: SequenceTerm) -> frozenset:
    """All foci occurring in the term (vars of an instruction sequence)."""
    c = normalize(t)
    out = set()
    for i in c.prefix + (c.period or ()):
        if isinstance(i, (Basic, PosTest, NegTest)):
            out.add(i.focus)
    return frozenset(out)


def iter_instructions(c: CanonicalSequence) -> Iterator[Instruction]:
    """One instruction per representative position, prefix then period."""
    yield from c.prefix
    if c.period is not None:
        yield from c.period
