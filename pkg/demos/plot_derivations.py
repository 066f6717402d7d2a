"""
Derivations in a one-generated semiring
=======================================

A semiring generated by ``w`` with ``w = 2w + 2w^2`` and ``w = 3w + 3w^3``
is divisible by 2 and 3 at ``w``.  The engine finds a chain of rewrites
showing ``8w = 19w``, so ``w`` has finite additive order.
"""

from semiring_lab.engine import (
    Presentation,
    find_finite_order,
    format_derivation,
    prove_equal,
    replay,
)
from semiring_lab.terms import scale

p = Presentation.from_strings("w", ["w = 2w + 2w^2", "w = 3w + 3w^3"])

# search a proof, then check it again without the closure machinery
d = prove_equal(p, p.term("8w"), p.term("19w"))
print(format_derivation(d))
print("replayed end:", p.fmt(replay(d)))

# the first pair m < n with m w ~ n w that the search meets
r = find_finite_order(p, p.term("w"))
w = p.term("w")
print(f"order witness: {p.fmt(scale(r.m, w))} ~ {p.fmt(scale(r.n, w))} in {len(r.derivation)} steps")
