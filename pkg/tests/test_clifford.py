import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffhecke.clifford import (
    BilinearForm,
    anticommutator,
    antisymmetric_part,
    clifford_mul,
    clifford_product,
    gamma,
    quadratic_form,
    symmetric_part,
)
from cliffhecke.errors import ContextMismatch, NotGradeOne
from cliffhecke.exterior import AlgebraContext, Multivector, wedge
from cliffhecke.hecke import default_form
from cliffhecke.scalars import Scalar
from conftest import rand_form, rand_mv

q = Scalar.var("q")
C1 = AlgebraContext(1)
ctx_st = st.sampled_from([AlgebraContext(1), AlgebraContext(2), AlgebraContext(3)])
seeds = st.integers(0, 2**32 - 1)


def gen(ctx, k):
    return Multivector.generator(ctx, k)


def test_symmetric_part_default_n1():
    B = default_form(1)
    G = symmetric_part(B)
    assert G.entry(1, 2) == (q + 1).scale_div(2)
    x = gen(C1, 1) + gen(C1, 2)
    assert quadratic_form(x, B) == q + 1
    assert symmetric_part(B) + antisymmetric_part(B) == B


def test_quadratic_form_rejects_higher_grade():
    with pytest.raises(NotGradeOne):
        quadratic_form(Multivector.blade(C1, [1, 2]), default_form(1))


def test_gamma_examples():
    B = default_form(1)
    j1, d1 = gen(C1, 1), gen(C1, 2)
    one = Multivector.scalar(C1, 1)
    assert gamma(1, one, B) == j1
    # gamma_{d1}(j1) = B(d1, j1) + d1 ^ j1
    assert gamma(2, j1, B) == one - Multivector.blade(C1, [1, 2])
    assert clifford_mul(j1, d1, B) == Multivector.scalar(C1, q) + wedge(j1, d1)


def test_mismatch():
    with pytest.raises(ContextMismatch):
        clifford_mul(gen(C1, 1), gen(C1, 1), default_form(2))


def test_empty_product_is_unit():
    B = default_form(2)
    assert clifford_product(B) == Multivector.scalar(B.context, 1)


@settings(max_examples=40, deadline=None)
@given(ctx_st, seeds)
def test_clifford_condition(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx, symbolic=True)
    x = rand_mv(rng, ctx, grade=1, terms=ctx.dim)
    assert clifford_mul(x, x, B) == Multivector.scalar(ctx, quadratic_form(x, B))


@settings(max_examples=40, deadline=None)
@given(ctx_st, seeds)
def test_associativity(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx, symbolic=True, density=0.6)
    a, b, c = (rand_mv(rng, ctx, terms=3) for _ in range(3))
    assert clifford_mul(clifford_mul(a, b, B), c, B) == clifford_mul(a, clifford_mul(b, c, B), B)


@settings(max_examples=40, deadline=None)
@given(ctx_st, seeds)
def test_zero_form_is_wedge(ctx, seed):
    rng = random.Random(seed)
    a, b = rand_mv(rng, ctx, symbolic=True), rand_mv(rng, ctx, symbolic=True)
    assert clifford_mul(a, b, BilinearForm.zero(ctx)) == wedge(a, b)


@settings(max_examples=40, deadline=None)
@given(ctx_st, seeds)
def test_generator_left_product_is_gamma(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx)
    u = rand_mv(rng, ctx)
    i = rng.randint(1, ctx.dim)
    assert clifford_mul(gen(ctx, i), u, B) == gamma(i, u, B)


@settings(max_examples=25, deadline=None)
@given(ctx_st, seeds)
def test_anticommutator_depends_on_symmetric_part(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx, symbolic=True)
    for i in range(1, ctx.dim + 1):
        for j in range(1, ctx.dim + 1):
            expect = B.entry(i, j) + B.entry(j, i)
            assert anticommutator(i, j, B) == Multivector.scalar(ctx, expect)


def test_cache_does_not_change_products():
    rng = random.Random(11)
    ctx = AlgebraContext(3)
    rows = rand_form(rng, ctx, symbolic=True).matrix
    on = BilinearForm(ctx, rows, product_cache=True)
    off = BilinearForm(ctx, rows, product_cache=False)
    for _ in range(20):
        a, b = rand_mv(rng, ctx), rand_mv(rng, ctx)
        assert clifford_mul(a, b, on) == clifford_mul(a, b, off)
        assert clifford_mul(a, b, on) == clifford_mul(a, b, on)


def test_form_substitute_and_blocks():
    B = default_form(2)
    assert B.substitute({"q": 2}).entry(1, 4) == 2
    assert B.jd(1, 1) == q and B.dj(1, 1) == 1
    assert B.transpose().entry(4, 1) == q
    assert B.with_entry(1, 4, Fraction(1, 2)).entry(1, 4) == Fraction(1, 2)
