# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-search kernel.

Behavioral twin of ``_search_py``: identical enumeration order, identical
node accounting, identical first result.  Any divergence between the two is
a bug caught by the backend-equality tests.
"""

from libc.stdlib cimport free, malloc, realloc

BACKEND = "cython"

FOUND, EXHAUSTED, BUDGET = 0, 1, 2


cdef long long _ll_isqrt(long long x):
    cdef long long r
    if x <= 0:
        return 0
    r = <long long> ((<double> x) ** 0.5)
    while r > 0 and r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


cdef struct Buf:
    long long *data
    size_t count
    size_t cap_vecs
    int n


cdef int _push(Buf *buf, long long *vec) except -1:
    cdef size_t i
    cdef long long *nd
    if buf.count == buf.cap_vecs:
        buf.cap_vecs = buf.cap_vecs * 2 if buf.cap_vecs else 256
        nd = <long long *> realloc(buf.data, buf.cap_vecs * buf.n * sizeof(long long))
        if nd == NULL:
            raise MemoryError()
        buf.data = nd
    for i in range(<size_t> buf.n):
        buf.data[buf.count * buf.n + i] = vec[i]
    buf.count += 1
    return 0


cdef int _enum(int i, long long remaining, int n, int bound, long long *prefix,
               Buf *buf, long long *nodes, long long budget) except -1:
    """Descending-lex enumeration; returns 1 when the budget runs out."""
    cdef long long top, c
    nodes[0] += 1
    if nodes[0] > budget:
        return 1
    if i == n:
        if remaining == 0:
            _push(buf, prefix)
        return 0
    if remaining > <long long> (n - i) * bound * bound:
        return 0
    top = _ll_isqrt(remaining)
    if top > bound:
        top = bound
    for c in range(top, -top - 1, -1):
        prefix[i] = c
        if _enum(i + 1, remaining - c * c, n, bound, prefix, buf, nodes, budget):
            return 1
    prefix[i] = 0
    return 0


cdef bint _canonical(long long *v, int n):
    cdef int i
    for i in range(n):
        if v[i] < 0:
            return False
        if i and v[i] > v[i - 1]:
            return False
    return True


cdef long long _dot(long long *u, long long *v, int n):
    cdef long long t = 0
    cdef int i
    for i in range(n):
        t += u[i] * v[i]
    return t


cdef int _extend(long long *data, int n, int d, long long target,
                 int *clique, int clen, int *cand, int cand_len,
                 int *work, size_t vec_count,
                 long long *nodes, long long budget, int *result):
    """Backtracking clique extension; returns 0/1/2 = miss/found/budget."""
    cdef int pos, j, k, rc, r
    cdef int *rest = work + (clen - 1) * vec_count
    for pos in range(cand_len):
        nodes[0] += 1
        if nodes[0] > budget:
            return 2
        j = cand[pos]
        clique[clen] = j
        if clen + 1 == d:
            for k in range(d):
                result[k] = clique[k]
            return 1
        rc = 0
        for k in range(pos + 1, cand_len):
            if _dot(data + cand[k] * n, data + j * n, n) == target:
                rest[rc] = cand[k]
                rc += 1
        if rc >= d - clen - 1:
            r = _extend(data, n, d, target, clique, clen + 1, rest, rc,
                        work, vec_count, nodes, budget, result)
            if r:
                return r
    return 0


def search_clique(int n, long long norm, int bound, int d, long long budget):
    """First d-clique (pairwise distance^2 = norm) among the norm-`norm`
    lattice vectors, or the reason there is none.

    Returns (status, clique or None, nodes_used); see the pure twin for the
    order and accounting contract.
    """
    cdef long long nodes = 0
    cdef long long target
    cdef Buf buf
    cdef long long *prefix
    cdef int *clique = NULL
    cdef int *result = NULL
    cdef int *first_cand = NULL
    cdef int *work = NULL
    cdef size_t i, j2
    cdef int cc, r, t
    cdef int overflow
    cdef list out

    buf.data = NULL
    buf.count = 0
    buf.cap_vecs = 0
    buf.n = n

    prefix = <long long *> malloc(n * sizeof(long long))
    if prefix == NULL:
        raise MemoryError()
    try:
        overflow = _enum(0, norm, n, bound, prefix, &buf, &nodes, budget)
    finally:
        free(prefix)

    try:
        if overflow:
            return BUDGET, None, nodes

        if d == 1:
            for i in range(buf.count):
                if _canonical(buf.data + i * n, n):
                    out = [tuple([buf.data[i * n + t] for t in range(n)])]
                    return FOUND, out, nodes
            return EXHAUSTED, None, nodes

        if norm % 2:
            return EXHAUSTED, None, nodes
        target = norm // 2

        if buf.count:
            clique = <int *> malloc(d * sizeof(int))
            result = <int *> malloc(d * sizeof(int))
            first_cand = <int *> malloc(buf.count * sizeof(int))
            work = <int *> malloc(<size_t> d * buf.count * sizeof(int))
            if clique == NULL or result == NULL or first_cand == NULL or work == NULL:
                raise MemoryError()

        for i in range(buf.count):
            nodes += 1
            if nodes > budget:
                return BUDGET, None, nodes
            if not _canonical(buf.data + i * n, n):
                continue
            cc = 0
            for j2 in range(i + 1, buf.count):
                if _dot(buf.data + j2 * n, buf.data + i * n, n) == target:
                    first_cand[cc] = <int> j2
                    cc += 1
            if cc >= d - 1:
                clique[0] = <int> i
                r = _extend(buf.data, n, d, target, clique, 1, first_cand, cc,
                            work, buf.count, &nodes, budget, result)
                if r == 1:
                    out = [
                        tuple([buf.data[result[k] * n + t] for t in range(n)])
                        for k in range(d)
                    ]
                    return FOUND, out, nodes
                if r == 2:
                    return BUDGET, None, nodes
        return EXHAUSTED, None, nodes
    finally:
        free(buf.data)
        free(clique)
        free(result)
        free(first_cand)
        free(work)
