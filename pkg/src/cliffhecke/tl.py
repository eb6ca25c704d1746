"""Temperley-Lieb generators ``e_i = (q + b_i) / (1 + q)`` in cleared form.

With ``E_i = q + b_i`` (so ``e_i = E_i / (1+q)``) and
``tau = (2 + q + q^-1)^-1 = q / (1+q)^2`` the relations

    e_i e_i = e_i
    e_i e_{i+1} e_i - tau e_i = e_{i+1} e_i e_{i+1} - tau e_{i+1}

become, after multiplying by ``(1+q)^2`` and ``(1+q)^3``,

    E_i E_i = (1+q) E_i
    E_i E_{i+1} E_i - q E_i = E_{i+1} E_i E_{i+1} - q E_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .clifford import BilinearForm, clifford_mul, clifford_product
from .errors import ContextMismatch
from .exterior import AlgebraContext, Multivector
from .hecke import Residual, hecke_generator, q
from .scalars import ONE, Scalar, q_power

CLEARING = ONE + q


@dataclass(frozen=True)
class ClearedTLGenerator:
    element: Multivector
    clearing_factor: Scalar = CLEARING


def tl_generator_cleared(context: AlgebraContext, i: int, B: BilinearForm | None = None):
    if B is not None and B.context != context:
        raise ContextMismatch("form and context disagree")
    b = hecke_generator(context, i)
    return ClearedTLGenerator(b + q)


def tau_cleared_residual() -> Scalar:
    """``q * (2 + q + q^-1) - (1+q)^2``; zero iff ``tau (1+q)^2 = q``."""
    return q * (Scalar.const(2) + q + q_power(-1)) - CLEARING * CLEARING


@dataclass
class TLReport:
    n: int
    residuals: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.is_zero for r in self.residuals)


def idempotent_residual(B: BilinearForm, i: int) -> Multivector:
    E = tl_generator_cleared(B.context, i, B).element
    return clifford_mul(E, E, B) - E.scale(CLEARING)


def tl_braid_residual(B: BilinearForm, i: int) -> Multivector:
    ctx = B.context
    Ei = tl_generator_cleared(ctx, i, B).element
    Ek = tl_generator_cleared(ctx, i + 1, B).element
    lhs = clifford_product(B, Ei, Ek, Ei) - Ei.scale(q)
    rhs = clifford_product(B, Ek, Ei, Ek) - Ek.scale(q)
    return lhs - rhs


def check_tl(n: int, B: BilinearForm) -> TLReport:
    if B.context.n != n:
        raise ContextMismatch(f"form has n={B.context.n}, expected n={n}")
    rep = TLReport(n)
    for i in range(1, n + 1):
        rep.residuals.append(Residual("tl_idempotent", (i,), idempotent_residual(B, i)))
    for i in range(1, n):
        rep.residuals.append(Residual("tl_braid", (i,), tl_braid_residual(B, i)))
    return rep
