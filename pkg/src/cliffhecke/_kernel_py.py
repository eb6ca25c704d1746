"""Pure-Python blade kernels (reference implementation and fallback).

Blades are bit masks: generator ``e_{k+1}`` is bit ``k``.  A contraction
``B(e_{i+1}, e_{j+1})`` is encoded as the integer ``i * 64 + j``.

:func:`blade_product_expansion` returns the B-independent structure of the
Clifford product of two blades: a mapping ``(result_mask, pairs) -> int``
such that ``e_a * e_b = sum(k * prod(B[p] for p in pairs) * e_mask)``.
"""

PAIR_BASE = 64


def popcount(x):
    return bin(x).count("1")


def wedge_sign(a, b):
    """Sign of ``e_a ^ e_b`` relative to the ascending blade, 0 on overlap."""
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        swaps += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def contract_terms(i, mask):
    """Derivation-rule terms of ``e_{i+1} _| e_mask``: list of (sign, j, rest)."""
    out = []
    p = 0
    m = mask
    while m:
        low = m & -m
        j = low.bit_length() - 1
        out.append((-1 if p & 1 else 1, j, mask ^ low))
        p += 1
        m ^= low
    return out


def _insert(pairs, code):
    k = len(pairs)
    lst = list(pairs)
    lo = 0
    while lo < k and lst[lo] <= code:
        lo += 1
    lst.insert(lo, code)
    return tuple(lst)


def _add(acc, key, c):
    s = acc.get(key, 0) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _gamma(i, terms):
    out = {}
    bit = 1 << i
    below = bit - 1
    base = i * PAIR_BASE
    for (mask, pairs), c in terms.items():
        if not mask & bit:
            s = -c if popcount(mask & below) & 1 else c
            _add(out, (mask | bit, pairs), s)
        p = 0
        m = mask
        while m:
            low = m & -m
            j = low.bit_length() - 1
            _add(out, (mask ^ low, _insert(pairs, base + j)), -c if p & 1 else c)
            p += 1
            m ^= low
    return out


def _apply(a, terms, memo):
    if a == 0:
        return terms
    hit = memo.get(a)
    if hit is not None:
        return hit
    low = a & -a
    x = low.bit_length() - 1
    rest = a ^ low
    out = _gamma(x, _apply(rest, terms, memo))
    base = x * PAIR_BASE
    p = 0
    m = rest
    while m:
        lb = m & -m
        r = lb.bit_length() - 1
        sub = _apply(rest ^ lb, terms, memo)
        code = base + r
        for (mask, pairs), c in sub.items():
            _add(out, (mask, _insert(pairs, code)), c if p & 1 else -c)
        p += 1
        m ^= lb
    memo[a] = out
    return out


def blade_product_expansion(a, b):
    """Structure of ``e_a * e_b`` as ``{(mask, pairs): int}``."""
    return _apply(a, {(b, ()): 1}, {})
