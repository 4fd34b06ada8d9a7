"""Pure-Python twin of the compiled lattice-search kernel.

Must stay behaviorally identical to ``_speedups.pyx``: same enumeration
order, same node accounting, same first result.  The compiled module is the
hot path; this one is the fallback and the reference for the equality tests.
"""

from __future__ import annotations

from math import isqrt

BACKEND = "pure-python"

FOUND, EXHAUSTED, BUDGET = 0, 1, 2


class _OutOfBudget(Exception):
    pass


def _enumerate_vectors(n, norm, bound, state, budget):
    """All integer vectors with |v|^2 = norm, coords in [-bound, bound],
    in descending lexicographic order.  One budget unit per call node."""
    out = []
    prefix = [0] * n

    def rec(i, remaining):
        state[0] += 1
        if state[0] > budget:
            raise _OutOfBudget
        if i == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        if remaining > (n - i) * bound * bound:
            return
        top = min(bound, isqrt(remaining))
        for c in range(top, -top - 1, -1):
            prefix[i] = c
            rec(i + 1, remaining - c * c)
        prefix[i] = 0

    rec(0, norm)
    return out


def _is_canonical(vec):
    """First-vertex symmetry reduction: keep the orbit representative under
    coordinate permutations and sign flips that enumerates first (all
    entries nonnegative and non-increasing)."""
    prev = None
    for x in vec:
        if x < 0:
            return False
        if prev is not None and x > prev:
            return False
        prev = x
    return True


def _dot(u, v):
    total = 0
    for a, b in zip(u, v):
        total += a * b
    return total


def search_clique(n, norm, bound, d, budget):
    """First d-clique (pairwise distance^2 = norm) among the norm-`norm`
    lattice vectors, or the reason there is none.

    Returns (status, clique or None, nodes_used).  Deterministic: vectors in
    descending lex order, cliques extended by later (lex-smaller) vectors,
    first vertices restricted to orbit representatives, first hit returned.
    """
    state = [0]
    try:
        vecs = _enumerate_vectors(n, norm, bound, state, budget)
    except _OutOfBudget:
        return BUDGET, None, state[0]

    if d == 1:
        for v in vecs:
            if _is_canonical(v):
                return FOUND, [v], state[0]
        return EXHAUSTED, None, state[0]

    if norm % 2:
        # pairwise dot would need to be norm/2, impossible over Z
        return EXHAUSTED, None, state[0]
    target = norm // 2

    result = None

    def extend(clique, cand):
        nonlocal result
        for pos, j in enumerate(cand):
            state[0] += 1
            if state[0] > budget:
                raise _OutOfBudget
            clique.append(j)
            if len(clique) == d:
                result = list(clique)
                return True
            rest = [k for k in cand[pos + 1 :] if _dot(vecs[k], vecs[j]) == target]
            if len(rest) >= d - len(clique) and extend(clique, rest):
                return True
            clique.pop()
        return False

    try:
        for i, v in enumerate(vecs):
            state[0] += 1
            if state[0] > budget:
                raise _OutOfBudget
            if not _is_canonical(v):
                continue
            cand = [j for j in range(i + 1, len(vecs)) if _dot(vecs[j], v) == target]
            if len(cand) >= d - 1 and extend([i], cand):
                return FOUND, [vecs[k] for k in result], state[0]
    except _OutOfBudget:
        return BUDGET, None, state[0]
    return EXHAUSTED, None, state[0]
