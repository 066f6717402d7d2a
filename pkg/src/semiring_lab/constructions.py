"""Semiring constructions: the unital extension U(S), T_S, U(G) and friends.

``U(S)`` is the set of pairs ``(n, a)`` with ``n >= 0`` and ``a`` in ``S`` or the
adjoined element ``o``, minus ``(0, o)``.  It is infinite, so it is only
exposed element-wise (:func:`u_add`, :func:`u_mul`, :func:`u_act`); the
adjoined ``o`` is represented by ``None``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import finite as fs
from .cyclic import CyclicType, rho_reduce
from .finite import FiniteSemiring, SemiringError

O = None  # the adjoined element o: x + o = x, x*o = o


@dataclass(frozen=True)
class UElement:
    n: int
    a: int | None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.n == 0 and self.a is None:
            raise ValueError("(0, o) is not an element of U(S)")


UNIT = UElement(1, O)


def _plus_o(s: FiniteSemiring, a, b):
    if a is None:
        return b
    if b is None:
        return a
    return s.plus(a, b)


def _times_o(s: FiniteSemiring, a, b):
    if a is None or b is None:
        return None
    return s.times(a, b)


def _nx(s: FiniteSemiring, n: int, x):
    if n == 0 or x is None:
        return None
    return s.multiple(n, x)


def u_add(s: FiniteSemiring, x: UElement, y: UElement) -> UElement:
    return UElement(x.n + y.n, _plus_o(s, x.a, y.a))


def u_mul(s: FiniteSemiring, x: UElement, y: UElement) -> UElement:
    """``(n,a)(m,b) = (nm, ma + nb + ab)``."""
    n, a, m, b = x.n, x.a, y.n, y.a
    second = _plus_o(s, _plus_o(s, _nx(s, m, a), _nx(s, n, b)), _times_o(s, a, b))
    # nm = 0 forces a or b to be in S, and then ma + nb + ab is in S
    assert n * m or second is not None
    return UElement(n * m, second)


def u_act(s: FiniteSemiring, alpha: UElement, x: int) -> int:
    """``(n, a) x = n x + a x``."""
    r = _plus_o(s, _nx(s, alpha.n, x), _times_o(s, alpha.a, x))
    assert r is not None
    return r


def u_elements(s: FiniteSemiring, max_n: int) -> Iterator[UElement]:
    """The truncation ``{0..max_n} x (S + o)`` of U(S)."""
    for n in range(max_n + 1):
        for a in [O, *range(s.n)]:
            if n or a is not None:
                yield UElement(n, a)


def u_axiom_violations(s: FiniteSemiring, max_n: int = 3) -> list[str]:
    """Semiring axioms of U(S) and the action laws, checked on a truncation."""
    out = []
    els = list(u_elements(s, max_n))
    for x, y in itertools.product(els, repeat=2):
        if u_add(s, x, y) != u_add(s, y, x) or u_mul(s, x, y) != u_mul(s, y, x):
            out.append(f"commutativity fails at {x}, {y}")
    for x, y, z in itertools.product(els, repeat=3):
        if u_add(s, u_add(s, x, y), z) != u_add(s, x, u_add(s, y, z)):
            out.append(f"additive associativity fails at {x}, {y}, {z}")
        if u_mul(s, u_mul(s, x, y), z) != u_mul(s, x, u_mul(s, y, z)):
            out.append(f"multiplicative associativity fails at {x}, {y}, {z}")
        if u_mul(s, x, u_add(s, y, z)) != u_add(s, u_mul(s, x, y), u_mul(s, x, z)):
            out.append(f"distributivity fails at {x}, {y}, {z}")
    for x, y in itertools.product(els, repeat=2):
        for e in range(s.n):
            if u_act(s, u_mul(s, x, y), e) != u_act(s, x, u_act(s, y, e)):
                out.append(f"(ab)x = a(bx) fails at {x}, {y}, {e}")
            if u_act(s, u_add(s, x, y), e) != s.plus(u_act(s, x, e), u_act(s, y, e)):
                out.append(f"(a+b)x = ax+bx fails at {x}, {y}, {e}")
    return out


def u_orbit(s: FiniteSemiring, w: int) -> frozenset[int]:
    """``U(S) w``; the multiples ``n w`` repeat with period dividing the decision range."""
    return frozenset(u_act(s, alpha, w) for alpha in u_elements(s, s.decision_range))


# -- small building blocks ----------------------------------------------------

def rho_semiring(k: int, t: int) -> FiniteSemiring:
    """``N/rho(k, t)`` with elements ``1..k+t-1``, both operations inherited from N."""
    c = CyclicType(k, t)
    els = list(range(1, c.order + 1))
    add = [[rho_reduce(i + j, c) - 1 for j in els] for i in els]
    mul = [[rho_reduce(i * j, c) - 1 for j in els] for i in els]
    return FiniteSemiring(add, mul, tuple(str(i) for i in els))


def boolean_semiring() -> FiniteSemiring:
    return FiniteSemiring([[0, 1], [1, 1]], [[0, 0], [0, 1]], ("0", "1"))


def cyclic_group(n: int) -> np.ndarray:
    """Addition table of ``Z_n``."""
    i, j = np.indices((n, n))
    return (i + j) % n


def group_product(g1: np.ndarray, g2: np.ndarray) -> np.ndarray:
    n1, n2 = len(g1), len(g2)
    out = np.empty((n1 * n2, n1 * n2), dtype=np.intp)
    for (a, b), (c, d) in itertools.product(itertools.product(range(n1), range(n2)), repeat=2):
        out[a * n2 + b, c * n2 + d] = g1[a, c] * n2 + g2[b, d]
    return out


def group_identity(g: np.ndarray) -> int:
    g = fs.as_table(g)
    if not (fs.is_commutative(g) and fs.is_associative(g) and fs.op_is_group(g)):
        raise SemiringError("not a finite abelian group table")
    idx = np.arange(len(g))
    return next(e for e in range(len(g)) if (g[e] == idx).all())


def ring_zn(n: int) -> FiniteSemiring:
    i, j = np.indices((n, n))
    return FiniteSemiring((i + j) % n, (i * j) % n)


def u_of_group(g: np.ndarray, labels: Sequence[str] | None = None) -> FiniteSemiring:
    """``G + {o}`` with every sum equal to ``o`` and ``o`` multiplicatively absorbing."""
    group_identity(g)
    n = len(g)
    o = n
    add = np.full((n + 1, n + 1), o, dtype=np.intp)
    mul = np.full((n + 1, n + 1), o, dtype=np.intp)
    mul[:n, :n] = g
    labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n))
    return FiniteSemiring(add, mul, labels + ("o",))


def const_mult_semiring(m: np.ndarray, e: int) -> FiniteSemiring:
    """Commutative semigroup ``m`` with the constant multiplication ``ab = e``."""
    m = fs.as_table(m)
    if not (fs.is_commutative(m) and fs.is_associative(m)):
        raise SemiringError("additive table is not a commutative semigroup")
    if m[e, e] != e:
        raise SemiringError(f"element {e} is not idempotent")
    return FiniteSemiring(m, np.full(m.shape, e, dtype=np.intp))


def zero_mult_semiring(a: np.ndarray) -> FiniteSemiring:
    """Zero multiplication ring on the finite abelian group ``a``."""
    return const_mult_semiring(a, group_identity(a))


def product(s1: FiniteSemiring, s2: FiniteSemiring) -> FiniteSemiring:
    n1, n2 = s1.n, s2.n
    i, j = np.divmod(np.arange(n1 * n2), n2)
    add = s1.add[np.ix_(i, i)] * n2 + s2.add[np.ix_(j, j)]
    mul = s1.mul[np.ix_(i, i)] * n2 + s2.mul[np.ix_(j, j)]
    labels = tuple(f"({s1.label(a)},{s2.label(b)})" for a, b in zip(i, j))
    return FiniteSemiring(add, mul, labels)


def adjoin_o(s: FiniteSemiring) -> FiniteSemiring:
    """``S + {o}`` with ``o`` additively neutral and multiplicatively absorbing."""
    n = s.n
    add = np.empty((n + 1, n + 1), dtype=np.intp)
    mul = np.full((n + 1, n + 1), n, dtype=np.intp)
    add[:n, :n] = s.add
    add[n, :] = np.arange(n + 1)
    add[:, n] = np.arange(n + 1)
    mul[:n, :n] = s.mul
    return FiniteSemiring(add, mul, s.labels + ("o",))


# -- T_S ----------------------------------------------------------------------

@dataclass(frozen=True)
class TSemiring:
    """The semiring of maps ``x -> alpha x`` (alpha in U(S)) with its generators."""

    semiring: FiniteSemiring
    maps: tuple[tuple[int, ...], ...]
    identity: int
    phi_w: int
    sources: tuple[UElement, ...]


def t_s_semiring(s: FiniteSemiring, w: int) -> TSemiring:
    if fs.generated_subsemiring(s, [w]) != frozenset(range(s.n)):
        raise SemiringError(f"{s.label(w)} does not generate the semiring")
    maps: dict[tuple[int, ...], int] = {}
    sources = []
    for alpha in u_elements(s, s.decision_range):
        phi = tuple(u_act(s, alpha, x) for x in range(s.n))
        if phi not in maps:
            maps[phi] = len(maps)
            sources.append(alpha)
    k = len(maps)
    keys = list(maps)
    add = np.empty((k, k), dtype=np.intp)
    mul = np.empty((k, k), dtype=np.intp)
    for i, f in enumerate(keys):
        for j, g in enumerate(keys):
            add[i, j] = maps[tuple(s.plus(f[x], g[x]) for x in range(s.n))]
            mul[i, j] = maps[tuple(f[g[x]] for x in range(s.n))]
    ident = maps[tuple(range(s.n))]
    phi_w = maps[tuple(s.times(w, x) for x in range(s.n))]
    labels = tuple(f"({a.n},{'o' if a.a is None else s.label(a.a)})" for a in sources)
    return TSemiring(FiniteSemiring(add, mul, labels), tuple(keys), ident, phi_w, tuple(sources))
