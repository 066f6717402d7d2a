"""Elements of the free commutative semiring on ``g`` generators.

A :class:`PolyTerm` is a polynomial with positive integer coefficients and
no constant term (unless the ambient presentation is unital).  Values are
immutable and kept in a canonical graded-lex order, so structural equality
is semiring equality in the free semiring.

The term grammar shared by every text format in the package::

    term    := summand ('+' summand)*
    summand := [coeff ['*']] factor ('*' factor)*
    factor  := generator ['^' exponent]

``coeff`` and ``exponent`` are decimals >= 1.  In unital mode a summand may
also be a bare coefficient, which denotes a multiple of the constant ``1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class TermError(ValueError):
    """Malformed term or mismatched ambient data."""


class ParseError(TermError):
    """Syntax error in term text, with a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class _Empty:
    """The empty additive context (``q == l`` in :func:`subterm_difference`)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __bool__(self) -> bool:
        return False


EMPTY = _Empty()


def degree(m: Monomial) -> int:
    return sum(m)


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


@dataclass(frozen=True)
class PolyTerm:
    """Canonical polynomial: ``terms`` is a tuple of ``(monomial, coeff)``."""

    ngens: int
    terms: tuple[tuple[Monomial, int], ...]
    unital: bool = False

    def __post_init__(self):
        if self.ngens < 1:
            raise TermError("generator count must be >= 1")
        if not self.terms:
            raise TermError("a PolyTerm must have at least one monomial")
        prev = None
        for mono, c in self.terms:
            if len(mono) != self.ngens:
                raise TermError(f"monomial {mono} has wrong length for {self.ngens} generators")
            if any(e < 0 for e in mono):
                raise TermError(f"negative exponent in {mono}")
            if not self.unital and sum(mono) == 0:
                raise TermError("constant monomial requires unital mode")
            if c < 1:
                raise TermError(f"coefficient {c} must be positive")
            key = grlex_key(mono)
            if prev is not None and key <= prev:
                raise TermError("terms are not in canonical graded-lex order")
            prev = key

    @classmethod
    def from_dict(cls, coeffs: Mapping[Monomial, int], ngens: int | None = None,
                  unital: bool = False) -> PolyTerm:
        items = [(tuple(m), int(c)) for m, c in coeffs.items() if c != 0]
        if ngens is None:
            if not items:
                raise TermError("cannot infer generator count of an empty map")
            ngens = len(items[0][0])
        items.sort(key=lambda mc: grlex_key(mc[0]))
        return cls(ngens, tuple(items), unital)

    @classmethod
    def generator(cls, i: int, ngens: int = 1, unital: bool = False) -> PolyTerm:
        mono = tuple(1 if j == i else 0 for j in range(ngens))
        return cls(ngens, ((mono, 1),), unital)

    @classmethod
    def monomial(cls, mono: Sequence[int], coeff: int = 1, unital: bool = False) -> PolyTerm:
        mono = tuple(mono)
        return cls(len(mono), ((mono, coeff),), unital)

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max(sum(m) for m, _ in self.terms)

    @property
    def max_coeff(self) -> int:
        return max(c for _, c in self.terms)

    def coeff(self, mono: Monomial) -> int:
        return self.as_dict().get(tuple(mono), 0)

    def __add__(self, other: PolyTerm) -> PolyTerm:
        return add(self, other)

    def __mul__(self, other: PolyTerm) -> PolyTerm:
        return mul(self, other)

    def __rmul__(self, n: int) -> PolyTerm:
        return scale(n, self)

    def __pow__(self, k: int) -> PolyTerm:
        if k < 1:
            raise TermError("only positive powers exist without a unit")
        out = self
        for _ in range(k - 1):
            out = mul(out, self)
        return out

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_term(self, names)

    def __str__(self) -> str:
        return format_term(self)


def _check_compatible(a: PolyTerm, b: PolyTerm) -> None:
    if a.ngens != b.ngens:
        raise TermError(f"generator-count mismatch: {a.ngens} vs {b.ngens}")


def canonicalize(t: PolyTerm) -> PolyTerm:
    return PolyTerm.from_dict(t.as_dict(), t.ngens, t.unital)


def add(a: PolyTerm, b: PolyTerm) -> PolyTerm:
    _check_compatible(a, b)
    out = a.as_dict()
    for m, c in b.terms:
        out[m] = out.get(m, 0) + c
    return PolyTerm.from_dict(out, a.ngens, a.unital or b.unital)


def mul(a: PolyTerm, b: PolyTerm) -> PolyTerm:
    _check_compatible(a, b)
    out: dict[Monomial, int] = {}
    for m1, c1 in a.terms:
        for m2, c2 in b.terms:
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return PolyTerm.from_dict(out, a.ngens, a.unital or b.unital)


def scale(n: int, a: PolyTerm) -> PolyTerm:
    if n < 1:
        raise TermError("scale factor must be >= 1")
    return PolyTerm(a.ngens, tuple((m, n * c) for m, c in a.terms), a.unital)


def subterm_difference(q: PolyTerm, l: PolyTerm) -> PolyTerm | _Empty | None:
    """Return ``s`` with ``q = l + s``; ``EMPTY`` if ``q == l``; ``None`` if absent."""
    _check_compatible(q, l)
    out = q.as_dict()
    for m, c in l.terms:
        left = out.get(m, 0) - c
        if left < 0:
            return None
        if left == 0:
            del out[m]
        else:
            out[m] = left
    if not out:
        return EMPTY
    return PolyTerm.from_dict(out, q.ngens, q.unital)


def default_names(ngens: int) -> list[str]:
    if ngens == 1:
        return ["w"]
    return [f"x{i + 1}" for i in range(ngens)]


def format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_term(t: PolyTerm, names: Sequence[str] | None = None) -> str:
    names = list(names) if names is not None else default_names(t.ngens)
    if len(names) != t.ngens:
        raise TermError("wrong number of generator names")
    out = []
    for mono, c in t.terms:
        body = format_monomial(mono, names)
        if not body:
            out.append(str(c))
        elif c == 1:
            out.append(body)
        else:
            out.append(f"{c}{body}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[+*^]))")


def _tokenize(text: str, line: int, col0: int):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), col0 + start))
        pos = m.end()
    return tokens


def parse_term(text: str, names: Sequence[str] | None = None, unital: bool = False,
               line: int = 1, column: int = 1) -> PolyTerm:
    """Parse ``text`` over the declared generator ``names``.

    ``line``/``column`` give the position of ``text`` inside a larger
    document so that errors point at the right place.
    """
    names = list(names) if names is not None else ["w"]
    index = {n: i for i, n in enumerate(names)}
    g = len(names)
    tokens = _tokenize(text, line, column)
    end_col = column + len(text.rstrip())
    if not tokens:
        raise ParseError("empty term", line, end_col)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ParseError("unexpected end of term", line, end_col)
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want}, found {tok[1]!r}", line, tok[2])
        pos += 1
        return tok

    def positive(tok, what):
        v = int(tok[1])
        if v == 0:
            raise ParseError(f"zero {what} not allowed", line, tok[2])
        return v

    def factor(exps):
        tok = take("ident")
        if tok[1] not in index:
            raise ParseError(f"unknown generator {tok[1]!r}", line, tok[2])
        e = 1
        nxt = peek()
        if nxt is not None and nxt[1] == "^":
            take("op", "^")
            e = positive(take("num"), "exponent")
        exps[index[tok[1]]] += e

    coeffs: dict[Monomial, int] = {}
    while True:
        exps = [0] * g
        c = 1
        tok = peek()
        if tok is None:
            raise ParseError("expected summand", line, end_col)
        if tok[0] == "num":
            c = positive(take("num"), "coefficient")
            nxt = peek()
            if nxt is not None and nxt[1] == "*":
                take("op", "*")
                factor(exps)
            elif nxt is not None and nxt[0] == "ident":
                factor(exps)
            elif not unital:
                where = nxt[2] if nxt is not None else end_col
                raise ParseError("constant summand requires a unital presentation", line, where)
        else:
            factor(exps)
        while peek() is not None and peek()[1] == "*":
            take("op", "*")
            factor(exps)
        mono = tuple(exps)
        coeffs[mono] = coeffs.get(mono, 0) + c
        tok = peek()
        if tok is None:
            break
        take("op", "+")
    return PolyTerm.from_dict(coeffs, g, unital)


def sum_terms(ts: Iterable[PolyTerm]) -> PolyTerm:
    it = iter(ts)
    out = next(it)
    for t in it:
        out = add(out, t)
    return out
