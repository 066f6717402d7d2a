"""Workbench for commutative semirings with divisible additive part.

Modules:

- :mod:`.terms` -- free commutative semiring terms and the term grammar
- :mod:`.cyclic` -- index/period of cyclic additive semigroups
- :mod:`.engine` -- bounded proof-producing congruence closure over presentations
- :mod:`.finite` -- predicates, congruences and ideals of finite semirings
- :mod:`.enumeration` -- exhaustive census of small semigroups and semirings
- :mod:`.constructions`, :mod:`.prufer` -- U(S), T_S, U(G), products, Z(p^inf)
- :mod:`.io`, :mod:`.cli` -- text formats and the ``semiring-lab`` command
"""

from .cyclic import INFINITE, CyclicType, lemma12_bound, ord_of, rho_reduce
from .engine import (
    REFERENCE_BUDGET,
    Budget,
    BudgetExhausted,
    Derivation,
    InvalidStep,
    Presentation,
    detect_unit,
    divisibility_witness,
    find_finite_order,
    prove_equal,
    replay,
    saturate,
)
from .finite import FiniteSemiring, validate
from .terms import EMPTY, PolyTerm, add, mul, parse_term, scale, subterm_difference

__version__ = "0.1.0"
