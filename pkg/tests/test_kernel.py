import random

import pytest

from cliffhecke import kernel
from cliffhecke import _kernel_py as pyk

backends = kernel.backends()


def brute_sign(a, b):
    if a & b:
        return 0
    # inversions between the generators of a (left) and those of b (right)
    inv = sum(1 for i in range(64) if a >> i & 1 for j in range(i) if b >> j & 1)
    return -1 if inv % 2 else 1


def test_backend_reported():
    assert kernel.BACKEND in backends


@pytest.mark.parametrize("name", sorted(backends))
def test_wedge_sign_matches_inversion_count(name):
    impl = backends[name]
    for a in range(64):
        for b in range(64):
            assert impl.wedge_sign(a, b) == brute_sign(a, b)


@pytest.mark.parametrize("name", sorted(backends))
def test_contract_terms_order(name):
    impl = backends[name]
    # e_1 _| e_{1,3,4}: signs alternate over the blade positions
    assert list(impl.contract_terms(0, 0b1101)) == [(1, 0, 0b1100), (-1, 2, 0b1001), (1, 3, 0b0101)]
    assert list(impl.contract_terms(0, 0)) == []


def test_zero_form_expansion_is_wedge():
    for a in range(16):
        for b in range(16):
            exp = pyk.blade_product_expansion(a, b)
            plain = {m: k for (m, pairs), k in exp.items() if not pairs}
            s = pyk.wedge_sign(a, b)
            assert plain == ({a | b: s} if s else {})


@pytest.mark.skipif("cython" not in backends, reason="compiled kernel not built")
def test_cython_matches_python():
    ck = backends["cython"]
    rng = random.Random(3)
    for a in range(64):
        for b in range(64):
            assert ck.blade_product_expansion(a, b) == pyk.blade_product_expansion(a, b)
    for _ in range(200):
        a, b = rng.getrandbits(10), rng.getrandbits(10)
        assert ck.wedge_sign(a, b) == pyk.wedge_sign(a, b)
        assert ck.popcount(a) == pyk.popcount(a)
        i = rng.randrange(10)
        assert list(ck.contract_terms(i, a)) == list(pyk.contract_terms(i, a))
