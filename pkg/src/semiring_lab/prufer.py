"""Exact arithmetic in the Pruefer group Z(p^inf) = Z[1/p]/Z.

Elements are fractions ``u / p^e`` modulo 1 in lowest terms.  The group is
never materialized; every operation acts on the requested elements only.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy


@dataclass(frozen=True, order=True)
class PruferElement:
    p: int
    u: int
    e: int

    def __post_init__(self):
        if self.e < 0 or not 0 <= self.u < self.p ** self.e or (self.e == 0 and self.u):
            raise ValueError(f"{self.u}/{self.p}^{self.e} is not a reduced residue")
        if self.e > 0 and self.u % self.p == 0:
            raise ValueError(f"{self.u}/{self.p}^{self.e} is not in lowest terms")

    @classmethod
    def make(cls, p: int, u: int, e: int) -> PruferElement:
        """Reduce ``u / p^e`` modulo 1 to canonical form."""
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        if e < 0:
            raise ValueError("exponent must be non-negative")
        u %= p ** e
        while e > 0 and u % p == 0:
            u //= p
            e -= 1
        if e == 0:
            u = 0
        return cls(p, u, e)

    @classmethod
    def zero(cls, p: int) -> PruferElement:
        return cls.make(p, 0, 0)

    @property
    def order(self) -> int:
        return self.p ** self.e

    def __add__(self, other: PruferElement) -> PruferElement:
        return prufer_add(self, other)

    def __rmul__(self, n: int) -> PruferElement:
        return prufer_scale(n, self)

    def __str__(self) -> str:
        return "0" if self.e == 0 else f"{self.u}/{self.p ** self.e}"


def prufer_add(x: PruferElement, y: PruferElement) -> PruferElement:
    if x.p != y.p:
        raise ValueError("elements of different Pruefer groups")
    e = max(x.e, y.e)
    u = x.u * x.p ** (e - x.e) + y.u * y.p ** (e - y.e)
    return PruferElement.make(x.p, u, e)


def prufer_scale(n: int, x: PruferElement) -> PruferElement:
    if n < 0:
        raise ValueError("n must be non-negative")
    return PruferElement.make(x.p, n * x.u, x.e)


def p_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prufer_div_witnesses(x: PruferElement, n: int) -> list[PruferElement]:
    """All ``b`` with ``n*b = x``; there are exactly ``p^v`` with ``v = v_p(n)``.

    Writing ``n = p^v n'``, every solution has denominator dividing
    ``p^(e+v)``: ``b = c / p^(e+v)`` with ``n' c = u (mod p^e)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = x.p
    v = p_valuation(n, p)
    rest = n // p ** v
    mod = p ** x.e
    c0 = (x.u * pow(rest, -1, mod)) % mod if mod > 1 else 0
    out = [PruferElement.make(p, c0 + j * mod, x.e + v) for j in range(p ** v)]
    return sorted(out)
