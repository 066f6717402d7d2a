"""Exhaustive enumeration of small commutative semigroups and semirings.

Commutative tables are generated from their upper triangles and filtered for
associativity in vectorized chunks.  A semiring is a pair (additive table,
multiplicative table) of commutative semigroups linked by distributivity, so
the semiring search pairs each additive semigroup with every labelled
multiplicative one and keeps the distributive pairs.  Isomorphism classes are
identified by the lexicographically least relabelled table pair.
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import finite as fs
from .finite import FiniteSemiring, SizeLimitExceeded

SEMIGROUP_LIMIT = 4
SEMIRING_LIMIT = 4
_CHUNK = 1 << 15


def _upper_pairs(n: int):
    iu, ju = np.triu_indices(n)
    return iu, ju


def _associative_mask(tabs: np.ndarray) -> np.ndarray:
    B, n, _ = tabs.shape
    flat = tabs.reshape(B, n * n).astype(np.intp)
    t = tabs.astype(np.intp)
    k = np.arange(n)
    left = np.take_along_axis(flat, (t[:, :, :, None] * n + k).reshape(B, -1), axis=1)
    right = np.take_along_axis(flat, (np.arange(n)[None, :, None, None] * n
                                      + t[:, None, :, :]).reshape(B, -1), axis=1)
    return (left == right).all(axis=1)


@lru_cache(maxsize=None)
def labelled_comm_semigroups(n: int) -> np.ndarray:
    """Every commutative semigroup table on ``{0..n-1}``, shape ``(N, n, n)``."""
    if not 1 <= n <= SEMIGROUP_LIMIT:
        raise SizeLimitExceeded(f"semigroup enumeration supports 1 <= n <= {SEMIGROUP_LIMIT}")
    iu, ju = _upper_pairs(n)
    cells = len(iu)
    total = n ** cells
    keep = []
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK))
        digits = (codes[:, None] // n ** np.arange(cells - 1, -1, -1)) % n
        tabs = np.empty((len(codes), n, n), dtype=np.int8)
        tabs[:, iu, ju] = digits
        tabs[:, ju, iu] = digits
        keep.append(tabs[_associative_mask(tabs)])
    out = np.concatenate(keep)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations ``pi`` and their inverses as arrays."""
    ps = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    inv = np.argsort(ps, axis=1)
    return ps, inv


def relabel(op: np.ndarray, pi: Sequence[int]) -> np.ndarray:
    """Table of the isomorphic copy in which element ``i`` is renamed ``pi[i]``."""
    pi = np.asarray(pi)
    inv = np.argsort(pi)
    return pi[op[np.ix_(inv, inv)]]


def _all_relabellings(op: np.ndarray) -> np.ndarray:
    ps, inv = _perms(op.shape[0])
    rows = op[inv[:, :, None], inv[:, None, :]]
    return np.take_along_axis(ps[:, None, :], rows.reshape(len(ps), 1, -1), axis=2).reshape(
        len(ps), *op.shape)


def canonical_key(*ops: np.ndarray) -> bytes:
    """Least byte string of the jointly relabelled tables over all permutations."""
    stacks = [_all_relabellings(np.asarray(op, dtype=np.intp)).reshape(
        -1, op.size) for op in ops]
    joined = np.concatenate(stacks, axis=1).astype(np.int8)
    order = np.lexsort(joined.T[::-1])
    return joined[order[0]].tobytes()


def canonical_hash(s: FiniteSemiring) -> str:
    key = canonical_key(s.add, s.mul)
    return hashlib.sha256(bytes([s.n]) + key).hexdigest()[:16]


def is_isomorphic(s1: FiniteSemiring, s2: FiniteSemiring) -> bool:
    return s1.n == s2.n and canonical_key(s1.add, s1.mul) == canonical_key(s2.add, s2.mul)


@lru_cache(maxsize=None)
def comm_semigroup_reps(n: int) -> tuple[np.ndarray, ...]:
    seen = set()
    reps = []
    for t in labelled_comm_semigroups(n):
        key = canonical_key(t)
        if key not in seen:
            seen.add(key)
            reps.append(np.array(t, dtype=np.intp))
    return tuple(reps)


def enumerate_comm_semigroups(n: int, up_to_iso: bool = True) -> Iterator[np.ndarray]:
    if up_to_iso:
        yield from comm_semigroup_reps(n)
    else:
        for t in labelled_comm_semigroups(n):
            yield np.array(t, dtype=np.intp)


def _distributive_mask(add: np.ndarray, muls: np.ndarray) -> np.ndarray:
    n = add.shape[0]
    M = muls.astype(np.intp)
    B = len(M)
    flat = M.reshape(B, n * n)
    a = np.arange(n)[:, None, None]
    # M[a, b + c]
    left = np.take_along_axis(flat, (a * n + add[None, :, :]).reshape(1, -1).repeat(B, 0), axis=1)
    # M[a, b] + M[a, c]
    mab = M[:, :, :, None]
    mac = M[:, :, None, :]
    right = add[mab, mac].reshape(B, -1)
    return (left == right).all(axis=1)


def _automorphisms(op: np.ndarray) -> np.ndarray:
    ps, _ = _perms(op.shape[0])
    rel = _all_relabellings(op)
    return ps[(rel == op[None]).all(axis=(1, 2))]


def _semirings_for_add(args) -> list[tuple[np.ndarray, np.ndarray]]:
    """All distributive partners of one additive table, deduplicated under its automorphisms."""
    add, up_to_iso = args
    n = add.shape[0]
    muls = labelled_comm_semigroups(n)
    good = muls[_distributive_mask(add, muls)].astype(np.intp)
    if not up_to_iso:
        return [(add, m) for m in good]
    autos = _automorphisms(add)
    inv = np.argsort(autos, axis=1)
    seen = set()
    out = []
    for m in good:
        rel = np.take_along_axis(autos[:, None, :], m[inv[:, :, None], inv[:, None, :]].reshape(
            len(autos), 1, -1), axis=2).reshape(len(autos), -1).astype(np.int8)
        key = rel[np.lexsort(rel.T[::-1])[0]].tobytes()
        if key not in seen:
            seen.add(key)
            out.append((add, m))
    return out


FILTERS: dict[str, Callable[[FiniteSemiring], bool]] = {
    "divisible": fs.is_add_divisible,
    "idempotent": fs.is_add_idempotent,
    "uniquely-divisible": fs.is_uniquely_divisible,
    "torsion": fs.is_torsion,
    "unital": fs.is_unital,
    "one-generated": fs.is_one_generated,
}


def resolve_filters(filters: Iterable[str | Callable[[FiniteSemiring], bool]]):
    """Names from :data:`FILTERS`, optionally prefixed ``not-``, or callables."""
    out = []
    for f in filters:
        if callable(f):
            out.append(f)
            continue
        neg = f.startswith("not-")
        name = f[4:] if neg else f
        if name not in FILTERS:
            raise ValueError(f"unknown filter {f!r}; choose from {sorted(FILTERS)}")
        pred = FILTERS[name]
        out.append((lambda p: lambda s: not p(s))(pred) if neg else pred)
    return out


def enumerate_semirings(n: int, up_to_iso: bool = True,
                        filters: Iterable[str | Callable[[FiniteSemiring], bool]] = (),
                        jobs: int = 1) -> Iterator[FiniteSemiring]:
    """Stream every commutative semiring of order ``n`` passing all ``filters``.

    With ``jobs > 1`` the additive tables are sharded over worker processes;
    the output order does not depend on ``jobs``.
    """
    if not 1 <= n <= SEMIRING_LIMIT:
        raise SizeLimitExceeded(f"semiring enumeration supports 1 <= n <= {SEMIRING_LIMIT}")
    preds = resolve_filters(filters)
    adds = list(enumerate_comm_semigroups(n, up_to_iso))
    tasks = [(a, up_to_iso) for a in adds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            shards = pool.map(_semirings_for_add, tasks)
            results = list(shards)
    else:
        results = map(_semirings_for_add, tasks)
    for shard in results:
        for add, mul in shard:
            s = FiniteSemiring(add, mul)
            if all(p(s) for p in preds):
                yield s


def semirings_up_to(max_order: int, **kw) -> Iterator[FiniteSemiring]:
    for n in range(1, max_order + 1):
        yield from enumerate_semirings(n, **kw)
