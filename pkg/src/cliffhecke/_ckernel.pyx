# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled blade kernels; same contract as ``_kernel_py``."""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    PAIR_BASE = 64


cdef inline int _popcount(unsigned long long x) noexcept nogil:
    return __builtin_popcountll(x)


def popcount(unsigned long long x):
    return _popcount(x)


def wedge_sign(unsigned long long a, unsigned long long b):
    cdef unsigned long long low
    cdef int swaps = 0
    if a & b:
        return 0
    while b:
        low = b & (~b + 1)
        swaps += _popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def contract_terms(int i, unsigned long long mask):
    cdef list out = []
    cdef int p = 0
    cdef unsigned long long m = mask, low
    while m:
        low = m & (~m + 1)
        out.append((-1 if p & 1 else 1, __builtin_ctzll(low), mask ^ low))
        p += 1
        m ^= low
    return out


cdef tuple _insert(tuple pairs, long code):
    cdef Py_ssize_t k = len(pairs), lo = 0
    while lo < k and <long>pairs[lo] <= code:
        lo += 1
    return pairs[:lo] + (code,) + pairs[lo:]


cdef inline void _add(dict acc, object key, object c):
    s = acc.get(key, 0) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


cdef dict _gamma(int i, dict terms):
    cdef dict out = {}
    cdef unsigned long long bit = 1ULL << i
    cdef unsigned long long below = bit - 1
    cdef long base = i * PAIR_BASE
    cdef unsigned long long mask, m, low
    cdef int p
    cdef tuple pairs
    for key, c in terms.items():
        mask = <unsigned long long>key[0]
        pairs = <tuple>key[1]
        if not mask & bit:
            _add(out, (mask | bit, pairs), -c if _popcount(mask & below) & 1 else c)
        p = 0
        m = mask
        while m:
            low = m & (~m + 1)
            _add(out, (mask ^ low, _insert(pairs, base + __builtin_ctzll(low))),
                 -c if p & 1 else c)
            p += 1
            m ^= low
    return out


cdef dict _apply(unsigned long long a, dict terms, dict memo):
    cdef unsigned long long low, rest, m, lb
    cdef int x, p
    cdef long code
    cdef dict out, sub
    if a == 0:
        return terms
    hit = memo.get(a)
    if hit is not None:
        return <dict>hit
    low = a & (~a + 1)
    x = __builtin_ctzll(low)
    rest = a ^ low
    out = _gamma(x, _apply(rest, terms, memo))
    p = 0
    m = rest
    while m:
        lb = m & (~m + 1)
        sub = _apply(rest ^ lb, terms, memo)
        code = x * PAIR_BASE + __builtin_ctzll(lb)
        for key, c in sub.items():
            _add(out, (key[0], _insert(<tuple>key[1], code)), c if p & 1 else -c)
        p += 1
        m ^= lb
    memo[a] = out
    return out


def blade_product_expansion(unsigned long long a, unsigned long long b):
    return _apply(a, {(b, ()): 1}, {})
