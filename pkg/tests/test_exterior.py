import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffhecke.clifford import BilinearForm
from cliffhecke.errors import ContextMismatch, IndexOutOfRange, NOutOfRange
from cliffhecke.exterior import (
    AlgebraContext,
    Multivector,
    contract,
    contract_generator,
    grade,
    grade_involution,
    wedge,
    wedge_blades,
)
from conftest import rand_form, rand_mv

C2 = AlgebraContext(2)


def gen(ctx, k):
    return Multivector.generator(ctx, k)


def identity_form(ctx):
    return BilinearForm.from_entries(ctx, {(k, k): 1 for k in range(1, ctx.dim + 1)})


def test_basis_order():
    assert C2.generator_names() == ["j1", "j2", "d2", "d1"]
    assert C2.bar(1) == 4 and C2.d(1) == 4 and C2.j(2) == 2


def test_context_errors():
    with pytest.raises(NOutOfRange):
        AlgebraContext(0)
    with pytest.raises(IndexOutOfRange):
        C2.j(3)
    with pytest.raises(IndexOutOfRange):
        gen(C2, 5)


def test_wedge_examples():
    j1, j2, d2, d1 = (gen(C2, k) for k in range(1, 5))
    assert wedge(j1, j1).is_zero()
    assert wedge(j2, j1) == -wedge(j1, j2)
    top = wedge(wedge(j1, j2), wedge(d2, d1))
    assert top == Multivector.blade(C2, [1, 2, 3, 4])
    assert top.terms == {0b1111: 1}
    assert wedge_blades(C2, 0b0010, 0b0001) == (-1, 0b0011)
    assert wedge_blades(C2, 0b0011, 0b0010) is None


def test_blade_constructor_sign():
    assert Multivector.blade(C2, [2, 1]) == -Multivector.blade(C2, [1, 2])
    assert Multivector.blade(C2, [1, 1]).is_zero()


def test_contraction_example():
    B = identity_form(C2)
    form = Multivector.blade(C2, [1, 2])
    u = Multivector.blade(C2, [2, 1])
    assert contract(form, u, B) == Multivector.scalar(C2, 1)


def test_contraction_of_generator_by_generator():
    rng = random.Random(1)
    B = rand_form(rng, C2)
    for i in range(1, 5):
        for j in range(1, 5):
            assert contract_generator(i, gen(C2, j), B) == Multivector.scalar(C2, B.entry(i, j))


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        wedge(gen(C2, 1), gen(AlgebraContext(1), 1))


ctx_st = st.sampled_from([AlgebraContext(1), AlgebraContext(2), AlgebraContext(3)])
seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=50, deadline=None)
@given(ctx_st, seeds)
def test_wedge_associative(ctx, seed):
    rng = random.Random(seed)
    a, b, c = (rand_mv(rng, ctx, symbolic=True) for _ in range(3))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=50, deadline=None)
@given(ctx_st, seeds, st.integers(0, 3), st.integers(0, 3))
def test_graded_commutativity(ctx, seed, k, l):
    k, l = min(k, ctx.dim), min(l, ctx.dim)
    rng = random.Random(seed)
    a = rand_mv(rng, ctx, grade=k)
    b = rand_mv(rng, ctx, grade=l)
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (k * l))


@settings(max_examples=50, deadline=None)
@given(ctx_st, seeds)
def test_involution_is_wedge_automorphism(ctx, seed):
    rng = random.Random(seed)
    a, b = rand_mv(rng, ctx), rand_mv(rng, ctx)
    assert grade_involution(grade_involution(a)) == a
    assert grade_involution(wedge(a, b)) == wedge(grade_involution(a), grade_involution(b))


@settings(max_examples=50, deadline=None)
@given(ctx_st, seeds)
def test_contraction_is_graded_derivation(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx, symbolic=True)
    u, v = rand_mv(rng, ctx), rand_mv(rng, ctx)
    i = rng.randint(1, ctx.dim)
    lhs = contract_generator(i, wedge(u, v), B)
    rhs = wedge(contract_generator(i, u, B), v) + wedge(grade_involution(u), contract_generator(i, v, B))
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(ctx_st, seeds)
def test_contraction_lowers_grade_and_is_nilpotent(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx)
    k = rng.randint(1, ctx.dim)
    u = rand_mv(rng, ctx, grade=k)
    i, j = rng.randint(1, ctx.dim), rng.randint(1, ctx.dim)
    out = contract_generator(i, u, B)
    assert out.is_zero() or out.grades() == {k - 1}
    assert contract_generator(i, out, B).is_zero()
    twice = contract_generator(i, contract_generator(j, u, B), B)
    swapped = contract_generator(j, contract_generator(i, u, B), B)
    assert twice == -swapped


@settings(max_examples=50, deadline=None)
@given(ctx_st, seeds)
def test_multiform_action_composes(ctx, seed):
    rng = random.Random(seed)
    B = rand_form(rng, ctx)
    u = rand_mv(rng, ctx)
    f, g = rand_mv(rng, ctx), rand_mv(rng, ctx)
    assert contract(wedge(f, g), u, B) == contract(f, contract(g, u, B), B)


def test_grade_helper():
    assert grade(0) == 0 and grade(0b1011) == 3
