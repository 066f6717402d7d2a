"""Naive reference implementations, written without numpy or the library code."""

import itertools


def table_from_upper(n, values):
    t = [[0] * n for _ in range(n)]
    it = iter(values)
    for i in range(n):
        for j in range(i, n):
            t[i][j] = t[j][i] = next(it)
    return t


def is_assoc(t):
    r = range(len(t))
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)


def is_distributive(add, mul):
    r = range(len(add))
    return all(mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]] for a in r for b in r for c in r)


def comm_semigroups(n):
    cells = n * (n + 1) // 2
    for values in itertools.product(range(n), repeat=cells):
        t = table_from_upper(n, values)
        if is_assoc(t):
            yield t


def relabel(t, pi):
    n = len(t)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[pi[a]][pi[b]] = pi[t[a][b]]
    return out


def canon(*tables):
    n = len(tables[0])
    forms = []
    for pi in itertools.permutations(range(n)):
        forms.append(tuple(tuple(map(tuple, relabel(t, pi))) for t in tables))
    return min(forms)


def semirings(n):
    """All commutative semirings of order n, as (add, mul) nested lists."""
    sgs = list(comm_semigroups(n))
    for add in sgs:
        for mul in sgs:
            if is_distributive(add, mul):
                yield add, mul


def semiring_classes(n):
    return {canon(a, m) for a, m in semirings(n)}


def semigroup_classes(n):
    return {canon(t) for t in comm_semigroups(n)}


def multiple(add, m, a):
    x = a
    for _ in range(m - 1):
        x = add[x][a]
    return x


def divisible(add, upto=60):
    n = len(add)
    return all({multiple(add, m, x) for x in range(n)} == set(range(n)) for m in range(1, upto + 1))


def uniquely_divisible(add, upto=60):
    n = len(add)
    return all(len({multiple(add, m, x) for x in range(n)}) == n for m in range(1, upto + 1))


def idempotent(add):
    return all(add[a][a] == a for a in range(len(add)))


def sigma(add, upto=60):
    n = len(add)
    return [[any(multiple(add, m, a) == multiple(add, m, b) for m in range(1, upto + 1))
             for b in range(n)] for a in range(n)]
