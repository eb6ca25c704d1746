"""Brute-force cross-check: generators as 2^{2n} x 2^{2n} rational matrices.

Columns are built from the creation/annihilation rules on ascending index
tuples, written out here again on purpose; nothing in this module calls the
product engine except :func:`word_check`, which compares against it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import BoundExceeded, UnsubstitutedSymbol
from .exterior import AlgebraContext, Multivector

Matrix = list  # list of rows of Fractions

EXCLUDED_Q = (Fraction(-1), Fraction(0))


def _basis(context: AlgebraContext) -> list[tuple[int, ...]]:
    dim = context.dim
    blades = []
    for mask in range(1 << dim):
        blades.append(tuple(k + 1 for k in range(dim) if mask >> k & 1))
    return blades


def _index_of(blade: tuple[int, ...]) -> int:
    return sum(1 << (k - 1) for k in blade)


def rational_entries(B) -> list[list[Fraction]]:
    out = []
    for row in B.matrix:
        r = []
        for v in row:
            if not v.is_constant():
                raise UnsubstitutedSymbol(
                    f"form entry {v} still contains {', '.join(v.variables())}"
                )
            r.append(Fraction(v.constant()))
        out.append(r)
    return out


def gamma_matrix(i: int, B) -> Matrix:
    """Matrix of ``e_i _| + e_i ^`` on the blade basis (index = bit mask)."""
    ctx = B.context
    ctx.check_index(i)
    b = rational_entries(B)
    basis = _basis(ctx)
    size = len(basis)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for col, blade in enumerate(basis):
        # creation: e_i ^ (e_k1 ^ ... ), sign from moving e_i into place
        if i not in blade:
            before = sum(1 for k in blade if k < i)
            new = tuple(sorted(blade + (i,)))
            mat[_index_of(new)][col] += -1 if before % 2 else 1
        # annihilation: sum_p (-1)^p B(e_i, e_kp) * blade without k_p
        for p, k in enumerate(blade):
            w = b[i - 1][k - 1]
            if w:
                rest = blade[:p] + blade[p + 1:]
                mat[_index_of(rest)][col] += -w if p % 2 else w
    return mat


def identity(size: int) -> Matrix:
    return [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    size = len(b[0])
    out = []
    for row in a:
        acc = [Fraction(0)] * size
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for c in range(size):
                    if bk[c]:
                        acc[c] += x * bk[c]
        out.append(acc)
    return out


def matadd(a: Matrix, b: Matrix, scale=1) -> Matrix:
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a: Matrix, s) -> Matrix:
    return [[x * s for x in r] for r in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(r, v) if x and y), Fraction(0)) for r in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for r in a for x in r)


def coordinates(mv: Multivector) -> list[Fraction]:
    """Dense coordinate vector of a multivector with constant coefficients."""
    vec = [Fraction(0)] * (1 << mv.context.dim)
    for m, c in mv.items():
        if not c.is_constant():
            raise UnsubstitutedSymbol(f"coefficient {c} is not a rational number")
        vec[m] = Fraction(c.constant())
    return vec


def hecke_generator_matrix(i: int, B) -> Matrix:
    """``j_i ^ d_i = gamma(j_i) gamma(d_i) - B(j_i, d_i)``."""
    ctx = B.context
    a, d = ctx.j(i), ctx.d(i)
    prod = matmul(gamma_matrix(a, B), gamma_matrix(d, B))
    w = rational_entries(B)[a - 1][d - 1]
    return matadd(prod, identity(len(prod)), -w)


def hecke_residuals(B, q) -> dict[str, Matrix]:
    """Hecke relation residual matrices at a numeric ``q``."""
    q = Fraction(q)
    n = B.context.n
    b = [None] + [hecke_generator_matrix(i, B) for i in range(1, n + 1)]
    size = len(b[1])
    one = identity(size)
    out = {}
    for i in range(1, n + 1):
        sq = matmul(b[i], b[i])
        out[f"square({i})"] = matadd(matadd(sq, b[i], -(1 - q)), one, -q)
    for i in range(1, n + 1):
        for k in range(i + 2, n + 1):
            out[f"commute({i},{k})"] = matadd(matmul(b[i], b[k]), matmul(b[k], b[i]), -1)
    for i in range(1, n):
        lhs = matmul(matmul(b[i], b[i + 1]), b[i])
        rhs = matmul(matmul(b[i + 1], b[i]), b[i + 1])
        out[f"braid({i})"] = matadd(lhs, rhs, -1)
    return out


def word_check(word: Iterable[int], B, mul: Callable | None = None) -> bool:
    """Engine fold ``((e_w1 * e_w2) * ...)`` vs. matrix product applied to 1."""
    from .clifford import clifford_mul

    mul = mul or clifford_mul
    ctx = B.context
    word = list(word)
    engine = Multivector.scalar(ctx, 1)
    for k in word:
        engine = mul(engine, Multivector.generator(ctx, k), B)
    vec = [Fraction(0)] * (1 << ctx.dim)
    vec[0] = Fraction(1)
    for k in reversed(word):
        vec = matvec(gamma_matrix(k, B), vec)
    return coordinates(engine) == vec


def random_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_form_entries(context: AlgebraContext, rng: random.Random, q=None, density=1.0):
    """Random rational 2n x 2n entries; ``q`` (if given) is mixed into some."""
    dim = context.dim
    rows = []
    for _ in range(dim):
        r = []
        for _ in range(dim):
            if rng.random() >= density:
                r.append(Fraction(0))
                continue
            x = random_rational(rng)
            if q is not None and rng.random() < 0.3:
                x = x + Fraction(q)
            r.append(x)
        rows.append(r)
    return rows


def run_trials(n: int, trials: int, seed: int, q_samples: Sequence, max_len: int = 6,
               mul: Callable | None = None) -> dict:
    """Word-agreement run used by the ``oracle`` CLI subcommand."""
    from .clifford import BilinearForm

    if n > 3:
        raise BoundExceeded(f"oracle runs are limited to n <= 3 (got {n})")
    rng = random.Random(seed)
    ctx = AlgebraContext(n)
    accepted, rejected = [], []
    for qv in q_samples:
        qv = Fraction(qv)
        (rejected if qv in EXCLUDED_Q else accepted).append(qv)
    agree = 0
    failures = []
    if not accepted:
        return {"n": n, "trials": 0, "agree": 0, "accepted_q": [],
                "rejected_q": [str(x) for x in rejected], "failures": []}
    for t in range(trials):
        qv = accepted[t % len(accepted)]
        B = BilinearForm(ctx, random_form_entries(ctx, rng, q=qv))
        length = rng.randint(1, max_len)
        word = [rng.randint(1, ctx.dim) for _ in range(length)]
        if word_check(word, B, mul=mul):
            agree += 1
        else:
            failures.append({"trial": t, "q": str(qv), "word": word})
    return {
        "n": n,
        "trials": trials,
        "agree": agree,
        "accepted_q": [str(x) for x in accepted],
        "rejected_q": [str(x) for x in rejected],
        "failures": failures,
    }
