import itertools

import numpy as np
import pytest

from semiring_lab import finite as fs
from semiring_lab.enumeration import (
    canonical_hash,
    canonical_key,
    enumerate_comm_semigroups,
    enumerate_semirings,
    is_isomorphic,
    relabel,
)
from semiring_lab.finite import FiniteSemiring, SizeLimitExceeded

import oracles


def keys(stream):
    return {oracles.canon(*(t.tolist() for t in x)) for x in stream}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_semirings_match_oracle(n):
    ours = list(enumerate_semirings(n))
    expected = oracles.semiring_classes(n)
    assert len(ours) == len(expected)
    assert keys((s.add, s.mul) for s in ours) == expected


def test_census_counts():
    assert [sum(1 for _ in enumerate_semirings(n)) for n in (1, 2, 3)] == [1, 8, 80]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_labelled_semirings_match_oracle(n):
    ours = sum(1 for _ in enumerate_semirings(n, up_to_iso=False))
    assert ours == sum(1 for _ in oracles.semirings(n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_semigroups_match_oracle(n):
    ours = list(enumerate_comm_semigroups(n))
    assert keys((t,) for t in ours) == oracles.semigroup_classes(n)


def test_semigroup_counts():
    assert [sum(1 for _ in enumerate_comm_semigroups(n)) for n in (1, 2, 3, 4)] == [1, 3, 12, 58]


def test_order_four_semirings():
    # orbit-stabilizer: each class contributes 4!/|Aut| labelled tables
    reps = list(enumerate_semirings(4))
    assert len(reps) == 1067
    perms = list(itertools.permutations(range(4)))
    orbit_sum = 0
    for s in reps:
        autos = sum(1 for pi in perms if (relabel(s.add, pi) == s.add).all()
                    and (relabel(s.mul, pi) == s.mul).all())
        orbit_sum += len(perms) // autos
    assert orbit_sum == sum(1 for _ in enumerate_semirings(4, up_to_iso=False))
    assert all(fs.is_valid(s) for s in reps[::25])
    assert len({canonical_hash(s) for s in reps}) == len(reps)


def test_every_result_validates():
    for n in (1, 2, 3):
        for s in enumerate_semirings(n):
            assert fs.validate(s) == []


def test_divisible_semigroups_are_semilattices():
    for n in range(1, 5):
        for t in enumerate_comm_semigroups(n):
            assert fs.op_is_divisible(t) == fs.op_is_idempotent(t)


def test_filters():
    idem = list(enumerate_semirings(3, filters=["idempotent"]))
    div = list(enumerate_semirings(3, filters=["divisible"]))
    assert {canonical_hash(s) for s in idem} == {canonical_hash(s) for s in div}
    not_idem = list(enumerate_semirings(3, filters=["not-idempotent"]))
    assert len(idem) + len(not_idem) == 80
    assert all(fs.is_unital(s) for s in enumerate_semirings(3, filters=["unital"]))
    with pytest.raises(ValueError):
        list(enumerate_semirings(2, filters=["bogus"]))


def test_jobs_do_not_change_output():
    a = [canonical_hash(s) for s in enumerate_semirings(3)]
    b = [canonical_hash(s) for s in enumerate_semirings(3, jobs=2)]
    assert a == b


def test_limits():
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_semirings(5))
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_comm_semigroups(5))


def test_isomorphism_invariance():
    rng = np.random.default_rng(1)
    for s in list(enumerate_semirings(3))[::7]:
        pi = rng.permutation(3)
        t = FiniteSemiring(relabel(s.add, pi), relabel(s.mul, pi))
        assert fs.is_valid(t)
        assert is_isomorphic(s, t)
        assert canonical_key(s.add, s.mul) == canonical_key(t.add, t.mul)
        assert canonical_hash(s) == canonical_hash(t)
