"""Shared oracles for the test suite, independent of the library internals."""

from __future__ import annotations

import itertools

import numpy as np


def close_under_product(gens: list[tuple], compose) -> set:
    """Naive closure of permutation tuples under a compose function."""
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for b in seen | set(gens):
                for c in (compose(a, b), compose(b, a)):
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    return seen


def compose_perms(p: tuple, q: tuple) -> tuple:
    return tuple(p[x] for x in q)


def element_orders(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    out = []
    for g in range(n):
        k, cur = 1, g
        while cur != 0:
            cur = table[cur, g]
            k += 1
        out.append(k)
    return sorted(out)


def brute_force_homs(table: np.ndarray, inverses: np.ndarray, word,
                     n_generators: int) -> list[tuple]:
    """Every generator assignment satisfying a relator word, by full scan."""
    n = table.shape[0]
    hits = []
    for assign in itertools.product(range(n), repeat=n_generators):
        cur = 0
        for idx, exp in word:
            h = assign[idx] if exp == 1 else inverses[assign[idx]]
            cur = table[cur, h]
        if cur == 0:
            hits.append(assign)
    return hits


def brute_force_z2_cocycles(table: np.ndarray) -> list[np.ndarray]:
    """All normalized sign-valued two-cocycles on a tiny group, by full scan."""
    n = table.shape[0]
    free = [(g, h) for g in range(1, n) for h in range(1, n)]
    out = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        a = np.zeros((n, n), dtype=np.int64)
        for (g, h), b in zip(free, bits):
            a[g, h] = b
        ok = True
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    if (a[g, h] + a[table[g, h], k] - a[h, k] - a[g, table[h, k]]) % 2:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(a)
    return out


def z2_coboundaries(table: np.ndarray) -> list[np.ndarray]:
    n = table.shape[0]
    out = []
    for bits in itertools.product((0, 1), repeat=n - 1):
        b = np.array((0,) + bits, dtype=np.int64)
        out.append((b[:, None] + b[None, :] - b[table]) % 2)
    return out
