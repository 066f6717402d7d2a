"""Bounded proof-producing congruence closure for finitely presented semirings.

A presentation ``<x_1..x_g | l_i = r_i>`` defines the quotient of the free
commutative semiring by the congruence generated by its relations.  Two
terms are congruent exactly when a chain of elementary rewrites connects
them, each rewrite replacing ``s + m*l`` by ``s + m*r`` (or the reverse) for
a relation ``(l, r)``, a monomial ``m`` and an additive context ``s``.

The engine explores that rewrite graph inside a bounded universe (total
degree <= D, every coefficient <= C), best-first by (degree, max coefficient)
and then graded-lex.  Every union in the union-find is justified by one
rewrite; these proof edges form a spanning forest from which a
:class:`Derivation` is read off.  The search is a sound under-approximation:
``None`` ("not found") after an exhaustive pass means no in-budget chain
exists, never that the terms differ in the presented semiring.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .terms import (
    EMPTY,
    Monomial,
    PolyTerm,
    TermError,
    add,
    format_monomial,
    format_term,
    mul,
    parse_term,
    subterm_difference,
)

L2R = "L2R"
R2L = "R2L"


class BudgetExhausted(RuntimeError):
    """The universe-size or round limit stopped the search before a fixpoint."""

    def __init__(self, reason: str, closure: Closure | None = None):
        super().__init__(reason)
        self.reason = reason
        self.closure = closure


class InvalidStep(ValueError):
    """A derivation step does not follow from its stated justification."""

    def __init__(self, index: int, message: str):
        super().__init__(f"step {index + 1}: {message}")
        self.index = index


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[PolyTerm, PolyTerm], ...] = ()
    unital: bool = False

    def __post_init__(self):
        if len(self.generators) < 1:
            raise TermError("a presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise TermError("duplicate generator names")
        g = len(self.generators)
        for i, (l, r) in enumerate(self.relations):
            for side in (l, r):
                if side.ngens != g:
                    raise TermError(f"relation {i + 1} has the wrong generator count")
                if side.unital and not self.unital:
                    raise TermError(f"relation {i + 1} uses a constant in a non-unital presentation")

    @classmethod
    def from_strings(cls, generators: Sequence[str] | str, relations: Iterable[str] = (),
                     unital: bool = False) -> Presentation:
        if isinstance(generators, str):
            generators = generators.replace(",", " ").split()
        gens = tuple(generators)
        rels = []
        for text in relations:
            lhs, sep, rhs = text.partition("=")
            if not sep:
                raise TermError(f"relation {text!r} has no '='")
            rels.append((parse_term(lhs, gens, unital), parse_term(rhs, gens, unital)))
        return cls(gens, tuple(rels), unital)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def term(self, text: str) -> PolyTerm:
        return parse_term(text, self.generators, self.unital)

    def fmt(self, t: PolyTerm) -> str:
        return format_term(t, self.generators)

    def sides(self, relation: int, direction: str) -> tuple[PolyTerm, PolyTerm]:
        l, r = self.relations[relation]
        return (l, r) if direction == L2R else (r, l)


@dataclass(frozen=True)
class Budget:
    max_degree: int = 4
    max_coeff: int = 64
    max_universe: int = 200_000
    max_rounds: int = 50

    def __post_init__(self):
        for name in ("max_degree", "max_coeff", "max_universe", "max_rounds"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    def admits(self, t: PolyTerm) -> bool:
        return t.degree <= self.max_degree and t.max_coeff <= self.max_coeff

    def combine(self, other: Budget) -> Budget:
        return Budget(max(self.max_degree, other.max_degree), max(self.max_coeff, other.max_coeff),
                      max(self.max_universe, other.max_universe),
                      max(self.max_rounds, other.max_rounds))


REFERENCE_BUDGET = Budget()


@dataclass(frozen=True)
class Step:
    """Rewrite ``context + multiplier*l`` into ``context + multiplier*r``.

    ``context`` is ``None`` for the empty additive context and ``multiplier``
    is ``None`` for the empty multiplicative context.
    """

    relation: int
    direction: str
    context: PolyTerm | None
    multiplier: Monomial | None
    result: PolyTerm


@dataclass(frozen=True)
class Derivation:
    presentation: Presentation
    start: PolyTerm
    steps: tuple[Step, ...] = ()

    @property
    def end(self) -> PolyTerm:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> Derivation:
        terms = [self.start] + [s.result for s in self.steps]
        steps = []
        for i in range(len(self.steps) - 1, -1, -1):
            s = self.steps[i]
            flip = R2L if s.direction == L2R else L2R
            steps.append(Step(s.relation, flip, s.context, s.multiplier, terms[i]))
        return Derivation(self.presentation, self.end, tuple(steps))

    def format(self) -> str:
        return format_derivation(self)


def replay(d: Derivation, start: PolyTerm | None = None) -> PolyTerm:
    """Re-check every step with primitive term operations and return the end term."""
    p = d.presentation
    current = d.start if start is None else start
    for i, step in enumerate(d.steps):
        if not 0 <= step.relation < len(p.relations):
            raise InvalidStep(i, f"no relation {step.relation + 1}")
        if step.direction not in (L2R, R2L):
            raise InvalidStep(i, f"bad direction {step.direction!r}")
        lhs, rhs = p.sides(step.relation, step.direction)
        if step.multiplier is not None:
            m = PolyTerm.monomial(step.multiplier, unital=p.unital)
            lhs, rhs = mul(m, lhs), mul(m, rhs)
        rest = subterm_difference(current, lhs)
        if rest is None:
            raise InvalidStep(i, f"{p.fmt(lhs)} is not contained in {p.fmt(current)}")
        stated = EMPTY if step.context is None else step.context
        if rest != stated:
            raise InvalidStep(i, "additive context does not match")
        nxt = rhs if rest is EMPTY else add(rest, rhs)
        if nxt != step.result:
            raise InvalidStep(i, f"result should be {p.fmt(nxt)}, not {p.fmt(step.result)}")
        current = nxt
    return current


def format_derivation(d: Derivation, header: bool = True) -> str:
    p = d.presentation
    lines = []
    if header:
        lines.append(f"# start: {p.fmt(d.start)}")
        lines.append(f"# end: {p.fmt(d.end)}")
    for s in d.steps:
        parts = [str(s.relation + 1), s.direction]
        if s.context is not None:
            parts += ["+", p.fmt(s.context)]
        if s.multiplier is not None:
            parts += ["*", format_monomial(s.multiplier, p.generators)]
        parts += ["=>", p.fmt(s.result)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_derivation(text: str, p: Presentation, start: PolyTerm | None = None) -> Derivation:
    """Read the line-oriented proof format back into a :class:`Derivation`."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            if key.strip() == "start" and start is None:
                start = p.term(val)
            continue
        left, sep, result = line.partition("=>")
        if not sep:
            raise TermError(f"line {lineno}: missing '=>'")
        words = left.split(None, 2)
        if len(words) < 2:
            raise TermError(f"line {lineno}: expected '<relation-id> <dir>'")
        rel = int(words[0]) - 1
        direction = words[1]
        rest = words[2].strip() if len(words) > 2 else ""
        multiplier = None
        mono_text = None
        if rest.startswith("*"):
            mono_text, rest = rest[1:], ""
        elif " * " in rest:
            rest, _, mono_text = rest.rpartition(" * ")
            rest = rest.strip()
        if mono_text is not None:
            mono_term = p.term(mono_text.strip())
            if len(mono_term.terms) != 1 or mono_term.terms[0][1] != 1:
                raise TermError(f"line {lineno}: multiplicative context must be a monomial")
            multiplier = mono_term.terms[0][0]
        context = None
        if rest:
            if not rest.startswith("+"):
                raise TermError(f"line {lineno}: unexpected {rest!r}")
            context = p.term(rest[1:])
        steps.append(Step(rel, direction, context, multiplier, p.term(result)))
    if start is None:
        raise TermError("proof has no start term")
    return Derivation(p, start, tuple(steps))


# -- dense encoding ---------------------------------------------------------

class MonomialIndex:
    """Dense coordinates for all monomials of degree <= D (graded-lex)."""

    def __init__(self, ngens: int, max_degree: int, unital: bool = False):
        self.ngens = ngens
        self.max_degree = max_degree
        self.unital = unital
        monos = []
        for d in range(0 if unital else 1, max_degree + 1):
            block = [m for m in itertools.product(range(d + 1), repeat=ngens) if sum(m) == d]
            monos.extend(sorted(block))
        self.monomials: list[Monomial] = monos
        self.position = {m: i for i, m in enumerate(monos)}
        self.degrees = [sum(m) for m in monos]

    def __len__(self) -> int:
        return len(self.monomials)

    def encode(self, t: PolyTerm) -> tuple[int, ...] | None:
        v = [0] * len(self.monomials)
        for m, c in t.terms:
            i = self.position.get(m)
            if i is None:
                return None
            v[i] = c
        return tuple(v)

    def decode(self, v: Sequence[int]) -> PolyTerm:
        terms = tuple((self.monomials[i], c) for i, c in enumerate(v) if c)
        return PolyTerm(self.ngens, terms, self.unital)

    def shift(self, v: Sequence[int], mono: Monomial) -> tuple[int, ...] | None:
        out = [0] * len(self.monomials)
        for i, c in enumerate(v):
            if c:
                m = tuple(a + b for a, b in zip(self.monomials[i], mono))
                j = self.position.get(m)
                if j is None:
                    return None
                out[j] = c
        return tuple(out)


@dataclass
class _Rule:
    relation: int
    direction: str
    multiplier: Monomial | None
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    lhs_nz: tuple[int, ...]
    delta: tuple[tuple[int, int], ...]


def _term_key(v: tuple[int, ...], degrees: Sequence[int]) -> tuple:
    deg = max(degrees[i] for i, c in enumerate(v) if c)
    return (deg, max(v), v[::-1])


@dataclass
class Closure:
    """Union-find over the explored terms with a spanning forest of proof edges."""

    presentation: Presentation
    budget: Budget
    index: MonomialIndex
    vectors: list[tuple[int, ...]] = field(default_factory=list)
    ids: dict[tuple[int, ...], int] = field(default_factory=dict)
    parent: list[int] = field(default_factory=list)
    depth: list[int] = field(default_factory=list)
    forest: list[list[tuple[int, int]]] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    rules: list[_Rule] = field(default_factory=list)
    complete: bool = False
    expanded: int = 0

    # union-find
    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def _union(self, a: int, b: int) -> tuple[int, int] | None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra, rb

    def id_of(self, t: PolyTerm) -> int | None:
        v = self.index.encode(t)
        return None if v is None else self.ids.get(v)

    def term(self, i: int) -> PolyTerm:
        return self.index.decode(self.vectors[i])

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, t: PolyTerm) -> bool:
        return self.id_of(t) is not None

    def same_class(self, t1: PolyTerm, t2: PolyTerm) -> bool:
        if t1 == t2:
            return True
        a, b = self.id_of(t1), self.id_of(t2)
        return a is not None and b is not None and self.find(a) == self.find(b)

    def class_of(self, t: PolyTerm) -> set[PolyTerm]:
        a = self.id_of(t)
        if a is None:
            return {t}
        root = self.find(a)
        return {self.term(i) for i in range(len(self.vectors)) if self.find(i) == root}

    def classes(self) -> list[set[PolyTerm]]:
        groups: dict[int, set[PolyTerm]] = {}
        for i in range(len(self.vectors)):
            groups.setdefault(self.find(i), set()).add(self.term(i))
        return list(groups.values())

    def derivation(self, t1: PolyTerm, t2: PolyTerm) -> Derivation | None:
        """Read the forest path from ``t1`` to ``t2`` as a derivation."""
        if t1 == t2:
            return Derivation(self.presentation, t1, ())
        a, b = self.id_of(t1), self.id_of(t2)
        if a is None or b is None or self.find(a) != self.find(b):
            return None
        return self._path(a, b)

    def _path(self, a: int, b: int) -> Derivation:
        back = {a: None}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if x == b:
                break
            for y, e in self.forest[x]:
                if y not in back:
                    back[y] = (x, e)
                    queue.append(y)
        path = []
        x = b
        while back[x] is not None:
            prev, e = back[x]
            path.append((prev, x, e))
            x = prev
        path.reverse()
        steps = [self._step(src, dst, e) for src, dst, e in path]
        return Derivation(self.presentation, self.term(a), tuple(steps))

    def _step(self, src: int, dst: int, e: int) -> Step:
        frm, _, r = self.edges[e]
        rule = self.rules[r]
        direction = rule.direction
        lhs = rule.lhs
        if frm != src:
            direction = R2L if direction == L2R else L2R
            lhs = rule.rhs
        v = self.vectors[src]
        rest = tuple(x - y for x, y in zip(v, lhs))
        context = self.index.decode(rest) if any(rest) else None
        return Step(rule.relation, direction, context, rule.multiplier, self.term(dst))


def _build_rules(p: Presentation, index: MonomialIndex) -> list[_Rule]:
    multipliers: list[Monomial | None] = [None]
    multipliers += [m for m in index.monomials if sum(m) > 0]
    rules = []
    for m in multipliers:
        for rel, (l, r) in enumerate(p.relations):
            lv, rv = index.encode(l), index.encode(r)
            if lv is None or rv is None:
                continue
            if m is not None:
                lv, rv = index.shift(lv, m), index.shift(rv, m)
                if lv is None or rv is None:
                    continue
            for direction, a, b in ((L2R, lv, rv), (R2L, rv, lv)):
                nz = tuple(i for i, c in enumerate(a) if c)
                delta = tuple((i, b[i] - a[i]) for i in range(len(a)) if b[i] != a[i])
                rules.append(_Rule(rel, direction, m, a, b, nz, delta))
    return rules


def _explore(p: Presentation, seeds: Sequence[PolyTerm], budget: Budget,
             on_union: Callable[[Closure, int, int], bool] | None = None,
             on_new: Callable[[Closure, int], bool] | None = None,
             allow_cut: bool = False) -> tuple[Closure, bool]:
    """Saturation in rounds; returns ``(closure, goal_reached)``.

    Round ``r`` rewrites the terms first reached in round ``r - 1``, in
    (degree, max coefficient, graded-lex) order, so ``depth`` is the exact
    rewrite distance from the seeds.
    ``on_new`` sees every newly inserted term id and ``on_union`` the surviving
    and the absorbed root of every merge; either returning true stops the search.  Raises
    :class:`BudgetExhausted` when the universe or round limit ends the search
    before fixpoint without reaching the goal; with ``allow_cut`` the round
    limit instead returns the partial closure with ``complete`` false.
    """
    index = MonomialIndex(p.ngens, budget.max_degree, p.unital)
    cl = Closure(p, budget, index)
    cl.rules = _build_rules(p, index)
    degrees = index.degrees
    C = budget.max_coeff
    heap: list = []

    def insert(v: tuple[int, ...], d: int) -> tuple[int, bool]:
        i = cl.ids.get(v)
        if i is not None:
            return i, False
        i = len(cl.vectors)
        cl.vectors.append(v)
        cl.ids[v] = i
        cl.parent.append(i)
        cl.depth.append(d)
        cl.forest.append([])
        heapq.heappush(heap, (d, _term_key(v, degrees), i))
        return i, True

    for t in seeds:
        if t.ngens != p.ngens:
            raise TermError("seed has the wrong generator count")
        if not budget.admits(t):
            raise ValueError(f"seed {p.fmt(t)} lies outside the budget")
        v = index.encode(t)
        i, fresh = insert(v, 0)
        if fresh and on_new is not None and on_new(cl, i):
            return cl, True

    frontier_cut = False
    while heap:
        _, _, x = heapq.heappop(heap)
        if cl.depth[x] >= budget.max_rounds:
            frontier_cut = True
            continue
        cl.expanded += 1
        v = cl.vectors[x]
        dx = cl.depth[x] + 1
        for r, rule in enumerate(cl.rules):
            lhs = rule.lhs
            ok = True
            for i in rule.lhs_nz:
                if v[i] < lhs[i]:
                    ok = False
                    break
            if not ok:
                continue
            w = list(v)
            for i, dlt in rule.delta:
                c = w[i] + dlt
                if c > C:
                    ok = False
                    break
                w[i] = c
            if not ok:
                continue
            w = tuple(w)
            y, fresh = insert(w, dx)
            roots = cl._union(x, y)
            if roots is None:
                continue
            e = len(cl.edges)
            cl.edges.append((x, y, r))
            cl.forest[x].append((y, e))
            cl.forest[y].append((x, e))
            if fresh and on_new is not None and on_new(cl, y):
                return cl, True
            if on_union is not None and on_union(cl, *roots):
                return cl, True
            if len(cl.vectors) > budget.max_universe:
                raise BudgetExhausted(
                    f"universe limit {budget.max_universe} reached", cl)
    if frontier_cut and not allow_cut:
        raise BudgetExhausted(f"round limit {budget.max_rounds} reached", cl)
    cl.complete = not frontier_cut
    return cl, False


def saturate(p: Presentation, seeds: Sequence[PolyTerm], budget: Budget = REFERENCE_BUDGET) -> Closure:
    """Close ``seeds`` under the relations inside the budget.

    Stops at fixpoint (``complete`` true) or after ``max_rounds`` rounds;
    only the universe limit raises.
    """
    cl, _ = _explore(p, seeds, budget, allow_cut=True)
    return cl


def prove_equal(p: Presentation, t1: PolyTerm, t2: PolyTerm,
                budget: Budget = REFERENCE_BUDGET) -> Derivation | None:
    if t1 == t2:
        return Derivation(p, t1, ())
    if not p.relations:
        return None

    def joined(cl: Closure, root: int, absorbed: int) -> bool:
        return cl.find(0) == cl.find(1)

    cl, found = _explore(p, [t1, t2], budget, on_union=joined)
    return cl.derivation(t1, t2) if found else None


@dataclass(frozen=True)
class OrderWitness:
    m: int
    n: int
    derivation: Derivation


def find_finite_order(p: Presentation, target: PolyTerm,
                      budget: Budget = REFERENCE_BUDGET) -> OrderWitness | None:
    """Search ``m < n`` with ``m*target ~ n*target``.

    Seeds every in-budget multiple of ``target``; at the first merge of two
    seed classes the pair with the smallest ``n`` (then ``m``) among all
    merged seeds is returned.
    """
    top = budget.max_coeff // target.max_coeff
    if top < 1 or not budget.admits(target):
        raise ValueError("target lies outside the budget")
    seeds = [scale_term(k, target) for k in range(1, top + 1)]
    if not p.relations or top < 2:
        return None

    seed_count = {k: 1 for k in range(top)}

    def merged(cl: Closure, root: int, absorbed: int) -> bool:
        moved = seed_count.pop(absorbed, 0)
        if not moved:
            return False
        seed_count[root] = seed_count.get(root, 0) + moved
        return seed_count[root] > 1

    cl, found = _explore(p, seeds, budget, on_union=merged)
    if not found:
        return None
    best = None
    for nidx in range(top):
        for midx in range(nidx):
            if cl.find(midx) == cl.find(nidx):
                best = (midx + 1, nidx + 1)
                break
        if best:
            break
    m, n = best
    d = cl.derivation(seeds[m - 1], seeds[n - 1])
    return OrderWitness(m, n, d)


def scale_term(k: int, t: PolyTerm) -> PolyTerm:
    return PolyTerm(t.ngens, tuple((mono, k * c) for mono, c in t.terms), t.unital)


@dataclass(frozen=True)
class Witness:
    term: PolyTerm
    derivation: Derivation


def divisibility_witness(p: Presentation, n: int, target: PolyTerm,
                         budget: Budget = REFERENCE_BUDGET) -> Witness | None:
    """Find ``f`` with ``target ~ n*f``; the derivation ends at ``n*f``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    hit: list[int] = []

    def divisible(cl: Closure, i: int) -> bool:
        if all(c % n == 0 for c in cl.vectors[i]):
            hit.append(i)
            return True
        return False

    cl, found = _explore(p, [target], budget, on_new=divisible)
    if not found:
        return None
    i = hit[0]
    f = cl.index.decode(tuple(c // n for c in cl.vectors[i]))
    return Witness(f, cl.derivation(target, cl.term(i)))


def detect_unit(p: Presentation, budget: Budget = REFERENCE_BUDGET) -> Witness | None:
    """Find ``u`` with ``w ~ w*u`` in a one-generated presentation.

    Any such ``u`` is the multiplicative unit of the presented semiring.
    The derivation ends at ``w*u``.
    """
    if p.ngens != 1:
        raise ValueError("unit detection needs a one-generated presentation")
    w = PolyTerm.generator(0, 1, p.unital)
    lowest = 0 if p.unital else 1
    hit: list[int] = []

    def multiple_of_w(cl: Closure, i: int) -> bool:
        t = cl.term(i)
        if all(m[0] >= 1 and m[0] - 1 >= lowest for m, _ in t.terms):
            hit.append(i)
            return True
        return False

    if p.unital:
        return Witness(PolyTerm.monomial((0,), unital=True), Derivation(p, w, ()))
    cl, found = _explore(p, [w], budget, on_new=multiple_of_w)
    if not found:
        return None
    t = cl.term(hit[0])
    u = PolyTerm(1, tuple(((m[0] - 1,), c) for m, c in t.terms), p.unital)
    return Witness(u, cl.derivation(w, t))
