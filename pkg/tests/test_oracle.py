import random
from fractions import Fraction

import pytest

from cliffhecke.clifford import BilinearForm, clifford_mul
from cliffhecke.errors import BoundExceeded, UnsubstitutedSymbol
from cliffhecke.exterior import AlgebraContext, Multivector
from cliffhecke.hecke import default_form
from cliffhecke.oracle import (
    gamma_matrix,
    hecke_residuals,
    identity,
    is_zero_matrix,
    matadd,
    matmul,
    random_form_entries,
    run_trials,
    word_check,
)


def test_n1_default_anticommutator_matrix():
    B = default_form(1).substitute({"q": 2})
    g1, g2 = gamma_matrix(1, B), gamma_matrix(2, B)
    assert matadd(matmul(g2, g1), matmul(g1, g2)) == [[Fraction(3) if i == j else 0 for j in range(4)] for i in range(4)]
    assert is_zero_matrix(matmul(g1, g1))
    assert is_zero_matrix(matmul(g2, g2))


def test_matrices_need_rational_entries():
    with pytest.raises(UnsubstitutedSymbol):
        gamma_matrix(1, default_form(1))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("qv", [2, 3, Fraction(-1, 2)])
def test_hecke_relations_in_matrix_model(n, qv):
    B = default_form(n).substitute({"q": qv})
    for name, res in hecke_residuals(B, qv).items():
        assert is_zero_matrix(res), name


def test_matrix_model_detects_wrong_q():
    B = default_form(2).substitute({"q": 2})
    assert not is_zero_matrix(hecke_residuals(B, 3)["square(1)"])


def test_word_check_examples():
    rng = random.Random(5)
    ctx = AlgebraContext(2)
    B = BilinearForm(ctx, random_form_entries(ctx, rng, q=3))
    assert word_check([], B)
    assert word_check([1, 4, 2, 2, 3], B)


def test_word_check_catches_broken_engine():
    ctx = AlgebraContext(2)
    B = BilinearForm(ctx, random_form_entries(ctx, random.Random(8), q=2))

    def broken(a, b, form):
        return clifford_mul(b, a, form)  # wrong operand order

    assert not all(word_check(w, B, mul=broken) for w in ([1, 2], [3, 1], [4, 2, 1]))


def test_run_trials_agree():
    out = run_trials(2, 200, seed=0, q_samples=[2, 3, 5])
    assert out["agree"] == 200 and out["failures"] == []


def test_run_trials_excludes_minus_one():
    out = run_trials(1, 10, seed=1, q_samples=[-1, 2])
    assert out["rejected_q"] == ["-1"]
    assert out["accepted_q"] == ["2"]
    assert out["agree"] == 10


def test_run_trials_deterministic():
    assert run_trials(1, 30, seed=4, q_samples=[3]) == run_trials(1, 30, seed=4, q_samples=[3])


def test_bound():
    with pytest.raises(BoundExceeded):
        run_trials(4, 1, seed=0, q_samples=[2])


def test_identity_helper():
    assert matmul(identity(4), identity(4)) == identity(4)
