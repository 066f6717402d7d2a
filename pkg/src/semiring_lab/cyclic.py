"""Congruences rho(k, t) of the additive semigroup of positive integers.

The cyclic semigroup generated by an element of finite order is isomorphic
to ``N/rho(k, t)``: the multiples ``a, 2a, 3a, ...`` run through ``k - 1``
distinct values before entering a cycle of length ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True, order=True)
class CyclicType:
    """Index ``k`` and period ``t`` of a finite cyclic semigroup."""

    k: int
    t: int

    def __post_init__(self):
        if self.k < 1 or self.t < 1:
            raise ValueError(f"index and period must be >= 1, got ({self.k}, {self.t})")

    @property
    def order(self) -> int:
        return self.k + self.t - 1


def rho_reduce(m: int, c: CyclicType) -> int:
    """Canonical representative of ``m`` modulo ``rho(c.k, c.t)``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m < c.k:
        return m
    return c.k + (m - c.k) % c.t


def rho_related(m: int, n: int, c: CyclicType) -> bool:
    return m == n or ((m - n) % c.t == 0 and m >= c.k and n >= c.k)


def ord_of(c: CyclicType | _Infinite) -> int | _Infinite:
    if c is INFINITE:
        return INFINITE
    return c.k + c.t - 1


def lemma12_bound(m: int) -> tuple[int, int]:
    """Return ``(r, n)`` with ``r = (m+1)!`` and ``n = 2r - 1``.

    If every generator of a subsemiring has order at most ``m`` then every
    element ``b`` of it satisfies ``2r*b = r*b`` and ``ord(b) <= n``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    r = math.factorial(m + 1)
    return r, 2 * r - 1


def cyclic_type_of_sequence(seq) -> CyclicType:
    """(k, t) of an eventually periodic sequence ``x_1, x_2, ...``.

    ``seq`` is any iterable of hashables; it is consumed until the first
    repetition.
    """
    seen: dict = {}
    for i, x in enumerate(seq, start=1):
        if x in seen:
            k = seen[x]
            return CyclicType(k, i - k)
        seen[x] = i
    raise ValueError("sequence ended before repeating")
