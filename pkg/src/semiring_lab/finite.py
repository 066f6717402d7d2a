"""Explicit finite commutative semirings given by addition and multiplication tables.

Elements are the indices ``0..n-1``; ``labels`` only affect printing and the
table file format.  Nothing assumes a zero or a unit: rings such as ``Z_3``
are just semirings whose additive part happens to be a group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .cyclic import CyclicType, cyclic_type_of_sequence, rho_reduce


class SemiringError(ValueError):
    pass


class SizeLimitExceeded(SemiringError):
    pass


def as_table(t) -> np.ndarray:
    a = np.array(t, dtype=np.intp)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise SemiringError(f"table must be a non-empty square matrix, got shape {a.shape}")
    n = a.shape[0]
    if a.min() < 0 or a.max() >= n:
        raise SemiringError("table entries out of range")
    a.setflags(write=False)
    return a


# -- single binary operations ------------------------------------------------

def is_commutative(op: np.ndarray) -> bool:
    return bool((op == op.T).all())


def associativity_failures(op: np.ndarray) -> np.ndarray:
    n = op.shape[0]
    i, j, k = np.indices((n, n, n))
    bad = op[op[i, j], k] != op[i, op[j, k]]
    return np.argwhere(bad)


def is_associative(op: np.ndarray) -> bool:
    return len(associativity_failures(op)) == 0


def op_multiples(op: np.ndarray, a: int) -> list[int]:
    """``[a, 2a, ..., (k+t-1)a]``: one pass through the cyclic subsemigroup."""
    seq = [a]
    seen = {a}
    while True:
        x = int(op[seq[-1], a])
        if x in seen:
            return seq
        seen.add(x)
        seq.append(x)


def op_cyclic_type(op: np.ndarray, a: int) -> CyclicType:
    seq = op_multiples(op, a)
    return cyclic_type_of_sequence(seq + [int(op[seq[-1], a])])


def op_decision_range(op: np.ndarray) -> int:
    """Largest index plus lcm of periods: every map ``x -> m x`` occurs for some m in 1..this."""
    types = [op_cyclic_type(op, a) for a in range(op.shape[0])]
    return max(c.k for c in types) + math.lcm(*(c.t for c in types))


def op_multiple_table(op: np.ndarray, upto: int | None = None) -> np.ndarray:
    """Array ``T`` with ``T[a, m-1] = m*a`` for ``m = 1..upto``."""
    n = op.shape[0]
    upto = op_decision_range(op) if upto is None else upto
    out = np.empty((n, upto), dtype=np.intp)
    out[:, 0] = np.arange(n)
    for m in range(1, upto):
        out[:, m] = op[out[:, m - 1], np.arange(n)]
    return out


def op_is_idempotent(op: np.ndarray) -> bool:
    return bool((np.diag(op) == np.arange(op.shape[0])).all())


def op_is_divisible(op: np.ndarray) -> bool:
    n = op.shape[0]
    mt = op_multiple_table(op)
    return all(len(set(mt[:, m].tolist())) == n for m in range(mt.shape[1]))


def op_is_uniquely_divisible(op: np.ndarray) -> bool:
    n = op.shape[0]
    mt = op_multiple_table(op)
    return all((np.bincount(mt[:, m], minlength=n) == 1).all() for m in range(mt.shape[1]))


def op_is_group(op: np.ndarray) -> bool:
    n = op.shape[0]
    ids = [e for e in range(n) if (op[e] == np.arange(n)).all()]
    if not ids:
        return False
    e = ids[0]
    return all((op[a] == e).any() for a in range(n))


# -- semirings ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    add: np.ndarray
    mul: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "add", as_table(self.add))
        object.__setattr__(self, "mul", as_table(self.mul))
        if self.add.shape != self.mul.shape:
            raise SemiringError("addition and multiplication tables differ in size")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        else:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n or len(set(labels)) != self.n:
                raise SemiringError("labels must be distinct and one per element")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSemiring):
            return NotImplemented
        return np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul)

    def __hash__(self) -> int:
        return hash((self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteSemiring(n={self.n}, add={self.add.tolist()}, mul={self.mul.tolist()})"

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def label(self, a) -> str:
        return self.labels[a]

    @cached_property
    def decision_range(self) -> int:
        return op_decision_range(self.add)

    @cached_property
    def multiple_table(self) -> np.ndarray:
        return op_multiple_table(self.add, self.decision_range)

    def multiple(self, m: int, a: int) -> int:
        """``m*a`` for any ``m >= 1``."""
        if m < 1:
            raise ValueError("m must be >= 1")
        c = element_order(self, a).type
        return int(self.multiple_table[a, rho_reduce(m, c) - 1])


@dataclass(frozen=True)
class ElementOrder:
    element: int
    type: CyclicType

    @property
    def order(self) -> int:
        return self.type.order


def validate(s: FiniteSemiring) -> list[str]:
    """All axiom violations; an empty list means ``s`` is a commutative semiring."""
    out: list[str] = []
    A, M = s.add, s.mul
    n = s.n
    for name, op in (("addition", A), ("multiplication", M)):
        bad = np.argwhere(op != op.T)
        for a, b in bad[:3]:
            if a < b:
                out.append(f"{name} not commutative at ({s.label(a)}, {s.label(b)})")
        for a, b, c in associativity_failures(op)[:3]:
            out.append(f"{name} not associative at ({s.label(a)}, {s.label(b)}, {s.label(c)})")
    i, j, k = np.indices((n, n, n))
    bad = np.argwhere(M[i, A[j, k]] != A[M[i, j], M[i, k]])
    for a, b, c in bad[:3]:
        out.append(f"distributivity fails: {s.label(a)}*({s.label(b)}+{s.label(c)})")
    return out


def is_valid(s: FiniteSemiring) -> bool:
    return not validate(s)


def element_order(s: FiniteSemiring, a: int) -> ElementOrder:
    return ElementOrder(a, op_cyclic_type(s.add, a))


def is_add_idempotent(s: FiniteSemiring) -> bool:
    return op_is_idempotent(s.add)


def is_add_divisible(s: FiniteSemiring) -> bool:
    return op_is_divisible(s.add)


def is_uniquely_divisible(s: FiniteSemiring) -> bool:
    """Every element has exactly one m-th part, for every m in the decision range."""
    mt = s.multiple_table
    return all((np.bincount(mt[:, m], minlength=s.n) == 1).all() for m in range(mt.shape[1]))


def is_bounded_report(s: FiniteSemiring) -> int:
    """Largest additive order of an element (finite semirings are always bounded)."""
    return max(element_order(s, a).order for a in range(s.n))


def is_torsion(s: FiniteSemiring) -> bool:
    return len(torsion_ideal(s)) == s.n


def mul_unit(s: FiniteSemiring) -> int | None:
    idx = np.arange(s.n)
    for e in range(s.n):
        if (s.mul[e] == idx).all():
            return e
    return None


def is_unital(s: FiniteSemiring) -> bool:
    return mul_unit(s) is not None


# -- partitions and congruences ---------------------------------------------

Partition = tuple[int, ...]


def normalize_partition(blocks: Sequence[int]) -> Partition:
    """Relabel block ids by first occurrence, so equal partitions compare equal."""
    ids: dict[int, int] = {}
    return tuple(ids.setdefault(b, len(ids)) for b in blocks)


def partition_blocks(p: Partition) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for x, b in enumerate(p):
        out.setdefault(b, []).append(x)
    return list(out.values())


def identity_partition(n: int) -> Partition:
    return tuple(range(n))


def refines(p: Partition, q: Partition) -> bool:
    """True when every block of ``p`` lies inside a block of ``q``."""
    image: dict[int, int] = {}
    for a, b in zip(p, q):
        if image.setdefault(a, b) != b:
            return False
    return True


def set_partitions(n: int) -> Iterator[Partition]:
    """Restricted growth strings of length ``n``."""
    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()
    if n == 0:
        yield ()
        return
    yield from rec([0], 0)


def is_congruence(s: FiniteSemiring, p: Partition) -> bool:
    p = np.asarray(p)
    for op in (s.add, s.mul):
        img = p[op]
        for a in range(s.n):
            for b in range(a + 1, s.n):
                if p[a] == p[b] and not (img[a] == img[b]).all():
                    return False
    return True


def sigma_congruence(s: FiniteSemiring) -> Partition:
    """Identify ``a`` and ``b`` when ``m*a = m*b`` for some ``m``."""
    mt = s.multiple_table
    n = s.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for a in range(n):
        for b in range(a + 1, n):
            if (mt[a] == mt[b]).any():
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    return normalize_partition([find(x) for x in range(n)])


def quotient(s: FiniteSemiring, p: Partition) -> FiniteSemiring:
    if len(p) != s.n:
        raise SemiringError("partition has the wrong length")
    p = normalize_partition(p)
    if not is_congruence(s, p):
        raise SemiringError("partition is not a congruence")
    blocks = partition_blocks(p)
    rep = [b[0] for b in blocks]
    P = np.asarray(p)
    add = P[s.add[np.ix_(rep, rep)]]
    mul = P[s.mul[np.ix_(rep, rep)]]
    labels = tuple("{" + ",".join(s.label(x) for x in b) + "}" for b in blocks)
    return FiniteSemiring(add, mul, labels)


CONGRUENCE_LIMIT = 6


def enumerate_congruences(s: FiniteSemiring) -> list[Partition]:
    if s.n > CONGRUENCE_LIMIT:
        raise SizeLimitExceeded(f"congruence enumeration supports n <= {CONGRUENCE_LIMIT}")
    return [p for p in set_partitions(s.n) if is_congruence(s, p)]


# -- subsets ----------------------------------------------------------------

def generated_subsemiring(s: FiniteSemiring, gens: Iterable[int]) -> frozenset[int]:
    cur = set(gens)
    if not cur:
        return frozenset()
    while True:
        new = set(cur)
        for a in cur:
            for b in cur:
                new.add(int(s.add[a, b]))
                new.add(int(s.mul[a, b]))
        if new == cur:
            return frozenset(cur)
        cur = new


def one_generators(s: FiniteSemiring) -> list[int]:
    """Elements that generate ``s`` as a semiring."""
    return [w for w in range(s.n) if len(generated_subsemiring(s, [w])) == s.n]


def is_one_generated(s: FiniteSemiring) -> bool:
    return bool(one_generators(s))


def torsion_ideal(s: FiniteSemiring) -> frozenset[int]:
    # every element of a finite semiring has finite order
    return frozenset(a for a in range(s.n) if element_order(s, a).order <= s.n)


def power_set(s: FiniteSemiring, k: int) -> frozenset[int]:
    """``S^k``: the subsemiring generated by all k-fold products."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prods = set(range(s.n))
    for _ in range(k - 1):
        prods = {int(s.mul[a, b]) for a in prods for b in range(s.n)}
    return generated_subsemiring(s, prods)


def is_ideal(s: FiniteSemiring, subset: Iterable[int]) -> bool:
    """Non-empty, closed under addition and absorbing multiplication by ``S``."""
    I = set(subset)
    if not I:
        return False
    return all(int(s.add[a, b]) in I for a in I for b in I) and \
        all(int(s.mul[x, a]) in I for a in I for x in range(s.n))


IDEAL_LIMIT = 16


def ideals(s: FiniteSemiring) -> list[frozenset[int]]:
    if s.n > IDEAL_LIMIT:
        raise SizeLimitExceeded(f"ideal enumeration supports n <= {IDEAL_LIMIT}")
    out = []
    for r in range(1, s.n + 1):
        for sub in itertools.combinations(range(s.n), r):
            if is_ideal(s, sub):
                out.append(frozenset(sub))
    return out


def is_ideal_simple(s: FiniteSemiring) -> bool:
    """Only ideals are ``S`` itself and possibly one one-element ideal."""
    return all(len(I) == s.n or len(I) == 1 for I in ideals(s))


# -- rational scalars --------------------------------------------------------

def qplus_scale(s: FiniteSemiring, q: Fraction | int, a: int) -> int:
    """The unique ``b`` with ``n*b = m*a`` where ``q = m/n``."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("q must be a positive rational")
    if not is_uniquely_divisible(s):
        raise SemiringError("semiring is not additively uniquely divisible")
    target = s.multiple(q.numerator, a)
    sols = [b for b in range(s.n) if s.multiple(q.denominator, b) == target]
    if len(sols) != 1:
        raise SemiringError(f"{len(sols)} solutions for ({q})*{s.label(a)}")
    return sols[0]


# -- idempotent ideal ---------------------------------------------------------

class _AdjoinedZero:
    """Formal zero adjoined to ``S``: ``u + 0*u = u``."""

    def __repr__(self) -> str:
        return "0"


ADJOINED_ZERO = _AdjoinedZero()


def idempotent_set(s: FiniteSemiring, a) -> frozenset[int]:
    if a is ADJOINED_ZERO:
        return frozenset(range(s.n))
    return frozenset(int(s.add[u, s.mul[a, u]]) for u in range(s.n))


def is_idempotent_ideal_witness(s: FiniteSemiring, a) -> bool:
    E = idempotent_set(s, a)
    return all(int(s.add[e, e]) == e for e in E) and is_ideal(s, E)


def idempotent_ideal_witness(s: FiniteSemiring):
    """First ``a`` in ``(0, e_0, e_1, ...)`` whose set ``{u + a*u}`` is an idempotent ideal.

    Returns ``ADJOINED_ZERO``, an element index, or ``None`` when no witness
    exists.
    """
    for a in [ADJOINED_ZERO, *range(s.n)]:
        if is_idempotent_ideal_witness(s, a):
            return a
    return None
