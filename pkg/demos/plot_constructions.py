"""
U(G) and the semiring of maps T_S
=================================

Adding an absorbing ``o`` to a finite abelian group, with every sum equal
to ``o``, gives a semiring with no ideals besides itself and ``{o}``.
"""

from semiring_lab import finite as fs
from semiring_lab.constructions import (
    cyclic_group,
    group_product,
    rho_semiring,
    t_s_semiring,
    u_of_group,
)

for name, g in [("Z2", cyclic_group(2)), ("Z3", cyclic_group(3)),
                ("Z2xZ2", group_product(cyclic_group(2), cyclic_group(2)))]:
    u = u_of_group(g)
    print(f"U({name}): {u.n} elements, ideals {len(fs.ideals(u))}, "
          f"ideal-simple {fs.is_ideal_simple(u)}")

# T_S for S = N/rho(2,3): maps x -> nx + ax under + and composition.
# Here w = 1 is also the multiplicative unit of S, so phi_w is the identity.
s = rho_semiring(2, 3)
ts = t_s_semiring(s, 0)
t = ts.semiring
print(f"T_S has {t.n} maps; unit {t.label(ts.identity)}, phi_w {t.label(ts.phi_w)}")
print("idempotent like S:", fs.is_add_idempotent(t) == fs.is_add_idempotent(s))
print("generated by id and phi_w:",
      fs.generated_subsemiring(t, [ts.identity, ts.phi_w]) == frozenset(range(t.n)))
