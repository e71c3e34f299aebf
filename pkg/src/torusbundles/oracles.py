"""Brute-force reference searches used by the test-suite.

Nothing here reuses the library algorithms: words are reduced by a separate
naive rewriter, matrices are plain nested tuples, lattices are searched by
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class SearchBudget:
    max_word_length: int = 10
    max_matrix_entry: int = 9

    def __post_init__(self):
        if self.max_word_length < 1 or self.max_matrix_entry < 1:
            raise ValueError("budget values must be positive")


DEFAULT_BUDGET = SearchBudget(10, 9)


def _naive_reduce(letters, signature):
    w = [(j, e % signature[j]) for j, e in letters]
    w = [x for x in w if x[1]]
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i][0] == w[i + 1][0]:
                j = w[i][0]
                e = (w[i][1] + w[i + 1][1]) % signature[j]
                w[i:i + 2] = [(j, e)] if e else []
                changed = True
                break
    return tuple(w)


def bfs_subgroup_elements(signature, generators, budget: int) -> set:
    """All reduced products of at most `budget` generators and inverses."""
    letters = []
    for g in generators:
        letters.append(tuple(g))
        letters.append(tuple((j, -e) for j, e in reversed(g)))
    frontier = {()}
    seen = {()}
    for _ in range(budget):
        nxt = set()
        for w in frontier:
            for g in letters:
                r = _naive_reduce(w + g, signature)
                if r not in seen:
                    seen.add(r)
                    nxt.add(r)
        frontier = nxt
    return seen


def _mm(x, y):
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def _adj(x):
    return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))


_S = ((0, 1), (-1, 0))
_T = ((0, 1), (-1, 1))
_STEPS = (_S, _T, _adj(_S), _adj(_T))


def sl_ball(budget: SearchBudget):
    """Matrices reachable by words of bounded length, pruned by entry size."""
    ident = ((1, 0), (0, 1))
    seen = {ident}
    frontier = [ident]
    for _ in range(budget.max_word_length):
        nxt = []
        for m in frontier:
            for g in _STEPS:
                p = _mm(m, g)
                if p in seen or max(abs(v) for row in p for v in row) > budget.max_matrix_entry:
                    continue
                seen.add(p)
                nxt.append(p)
        frontier = nxt
    return seen


def brute_conjugator(a, b, budget: SearchBudget = DEFAULT_BUDGET, ball=None):
    """Some q in the search ball with q a q^-1 = b, as nested tuples, else None."""
    a = tuple(tuple(r) for r in a)
    b = tuple(tuple(r) for r in b)
    ident = ((1, 0), (0, 1))
    if a == b:
        return ident
    for q in sorted(ball if ball is not None else sl_ball(budget)):
        if _mm(_mm(q, a), _adj(q)) == b:
            return q
    return None


def brute_lattice_member(target, generators, bound: int):
    """Coefficients in [-bound, bound] with sum c_i g_i = target, else None."""
    gens = [tuple(g) for g in generators]
    n = len(target)
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        if all(sum(c * g[i] for c, g in zip(coeffs, gens)) == target[i] for i in range(n)):
            return list(coeffs)
    return None


def brute_order(m, limit: int = 12):
    """Smallest n <= limit with m^n = E, else None."""
    m = tuple(tuple(r) for r in m)
    ident = ((1, 0), (0, 1))
    p = m
    for n in range(1, limit + 1):
        if p == ident:
            return n
        p = _mm(p, m)
    return None
