import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiring_lab import finite as fs
from semiring_lab.constructions import rho_semiring
from semiring_lab.cyclic import (
    INFINITE,
    CyclicType,
    cyclic_type_of_sequence,
    lemma12_bound,
    ord_of,
    rho_reduce,
    rho_related,
)
from semiring_lab.enumeration import enumerate_semirings


def oracle_reduce(m, k, t):
    # repeated subtraction of t while the result stays >= k
    while m - t >= k:
        m -= t
    return m


types = st.builds(CyclicType, st.integers(1, 6), st.integers(1, 6))


def test_rho_reduce_examples():
    assert rho_reduce(7, CyclicType(2, 3)) == 4
    assert rho_reduce(1, CyclicType(2, 3)) == 1
    assert rho_reduce(5, CyclicType(1, 1)) == 1


def test_ord_examples():
    assert ord_of(CyclicType(2, 3)) == 4
    assert ord_of(CyclicType(1, 1)) == 1
    assert ord_of(INFINITE) is INFINITE
    assert CyclicType(2, 3).order == 4


def test_order_bound_examples():
    assert lemma12_bound(1) == (2, 3)
    assert lemma12_bound(2) == (6, 11)
    assert lemma12_bound(3) == (24, 47)
    assert lemma12_bound(20)[0] == math.factorial(21)
    with pytest.raises(ValueError):
        lemma12_bound(0)


def test_bad_types():
    with pytest.raises(ValueError):
        CyclicType(0, 1)
    with pytest.raises(ValueError):
        rho_reduce(0, CyclicType(1, 1))


@given(st.integers(1, 200), types)
def test_reduce_matches_oracle(m, c):
    r = rho_reduce(m, c)
    assert r == oracle_reduce(m, c.k, c.t)
    assert rho_related(m, r, c)
    assert 1 <= r <= c.order


@given(types, st.integers(1, 30), st.integers(1, 30), st.integers(1, 30))
def test_rho_is_semiring_congruence(c, a, b, d):
    if rho_reduce(a, c) == rho_reduce(b, c):
        assert rho_reduce(a + d, c) == rho_reduce(b + d, c)
        assert rho_reduce(a * d, c) == rho_reduce(b * d, c)


def test_sequence_type():
    assert cyclic_type_of_sequence([5, 6, 7, 6, 7]) == CyclicType(2, 2)
    assert cyclic_type_of_sequence(itertools.cycle([0, 1, 2, 3])) == CyclicType(1, 4)


def additive_congruences(op):
    n = len(op)
    out = []
    for p in fs.set_partitions(n):
        if all(p[op[a, c]] == p[op[b, c]]
               for a, b in itertools.combinations(range(n), 2) if p[a] == p[b]
               for c in range(n)):
            out.append(p)
    return out


@pytest.mark.parametrize("K,T", [(K, T) for K in range(1, 7) for T in range(1, 7) if K + T <= 7])
def test_truncated_model_congruences(K, T):
    # congruences of N/rho(K,T) under + are exactly rho(k,t) with k <= K and t | T
    model = rho_semiring(K, T)
    found = {tuple(p) for p in additive_congruences(model.add)}
    els = range(1, K + T)
    expected = set()
    for k in range(1, K + 1):
        for t in range(1, T + 1):
            if T % t == 0:
                c = CyclicType(k, t)
                expected.add(tuple(fs.normalize_partition([rho_reduce(m, c) for m in els])))
    assert found == expected


def test_subsemigroup_size_matches_order():
    for n in (1, 2, 3):
        for s in enumerate_semirings(n):
            for a in range(s.n):
                seen = set()
                x = a
                for _ in range(2 * s.n + 1):
                    seen.add(x)
                    x = s.plus(x, a)
                assert len(seen) == ord_of(fs.element_order(s, a).type)


def test_order_bound_on_small_semirings():
    for n in (1, 2, 3):
        for s in enumerate_semirings(n):
            for size in range(1, s.n + 1):
                for gens in itertools.combinations(range(s.n), size):
                    m = max(fs.element_order(s, g).type.order for g in gens)
                    r, bound = lemma12_bound(m)
                    for b in fs.generated_subsemiring(s, gens):
                        assert s.multiple(2 * r, b) == s.multiple(r, b)
                        assert fs.element_order(s, b).type.order <= bound
