import random
from fractions import Fraction

import pytest

from cliffhecke.clifford import BilinearForm
from cliffhecke.exterior import AlgebraContext, Multivector
from cliffhecke.scalars import Scalar

Q = Scalar.var("q")


def rand_rational(rng, span=5):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_scalar(rng, names=("q", "m12", "x"), terms=3, max_exp=2):
    """Random Laurent polynomial; only q gets negative exponents."""
    out = Scalar()
    for _ in range(rng.randint(0, terms)):
        mono = Scalar.const(rand_rational(rng))
        for v in names:
            lo = -1 if v == "q" else 0
            e = rng.randint(lo, max_exp)
            if e:
                mono = mono * (Scalar.var(v, e) if e > 0 else Scalar.var("q", e))
        out = out + mono
    return out


def rand_mv(rng, ctx, terms=4, symbolic=False, grade=None):
    t = {}
    for _ in range(rng.randint(1, terms)):
        if grade is None:
            m = rng.randrange(1 << ctx.dim)
        else:
            idx = rng.sample(range(ctx.dim), grade)
            m = sum(1 << k for k in idx)
        c = rand_scalar(rng, terms=2) if symbolic else Scalar.const(rand_rational(rng))
        t[m] = t.get(m, Scalar()) + c
    return Multivector(ctx, t)


def rand_form(rng, ctx, symbolic=False, density=1.0):
    d = ctx.dim
    rows = []
    for _ in range(d):
        r = []
        for _ in range(d):
            if rng.random() > density:
                r.append(0)
            elif symbolic and rng.random() < 0.3:
                r.append(Scalar.const(rand_rational(rng)) + Q)
            else:
                r.append(rand_rational(rng))
        rows.append(r)
    return BilinearForm(ctx, rows)


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture(params=[1, 2, 3])
def ctx(request):
    return AlgebraContext(request.param)


ACCEPTANCE = []


def record(name, ok, detail=""):
    """Store a pass/fail line for the acceptance summary."""
    ACCEPTANCE.append((name, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
