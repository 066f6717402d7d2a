"""
Census of small commutative semirings
=====================================

Every commutative semiring with at most three elements, up to isomorphism.
For finite semirings the three additive properties idempotent, divisible and
uniquely divisible coincide.
"""

from collections import Counter

from semiring_lab import finite as fs
from semiring_lab.enumeration import enumerate_semirings

for n in (1, 2, 3):
    reps = list(enumerate_semirings(n))
    kinds = Counter((fs.is_add_idempotent(s), fs.is_add_divisible(s),
                     fs.is_uniquely_divisible(s)) for s in reps)
    print(f"order {n}: {len(reps)} semirings")
    for (idem, div, udiv), count in sorted(kinds.items()):
        print(f"   idempotent={idem!s:5} divisible={div!s:5} uniquely={udiv!s:5}  x{count}")

# sigma collapses each semiring onto its largest idempotent image
s = list(enumerate_semirings(3, filters=["not-idempotent"]))[0]
q = fs.quotient(s, fs.sigma_congruence(s))
print("a non-idempotent example:", s.add.tolist(), "->", q.n, "element quotient")
