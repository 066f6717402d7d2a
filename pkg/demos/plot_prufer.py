"""
Division in the Pruefer 2-group
===============================

In Z(2^inf) every element can be halved, but not uniquely: both 0 and 1/2
double to 0.  Dividing by n has exactly ``p^v`` answers, ``v`` the p-adic
valuation of n.
"""

from semiring_lab.prufer import PruferElement, p_valuation, prufer_div_witnesses

zero = PruferElement.zero(2)
half = PruferElement.make(2, 1, 1)
print("1/2 + 1/2 =", half + half)

for n in (2, 3, 4, 12):
    sols = prufer_div_witnesses(half, n)
    print(f"{n}b = 1/2: {len(sols)} (= 2^{p_valuation(n, 2)}) solutions:",
          ", ".join(map(str, sols)))
print("2b = 0:", ", ".join(map(str, prufer_div_witnesses(zero, 2))))
