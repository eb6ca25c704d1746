"""Clifford algebra of multivectors Cl(V, B) realised on the Grassmann basis.

The product of blades is evaluated with the Cartan recursion

    L(x ^ R) = gamma_x o L(R) - L(x _| R),   L(scalar) = scalar,

carried out once per blade pair by :mod:`cliffhecke.kernel` in a form that
does not depend on B; the entries of B are plugged in afterwards.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import kernel
from .errors import ContextMismatch, IndexOutOfRange, NotGradeOne
from .exterior import (
    AlgebraContext,
    Multivector,
    contract_generator,
    wedge,
)
from .scalars import ONE, ZERO, Scalar

PAIR_BASE = kernel.PAIR_BASE


@lru_cache(maxsize=1 << 16)
def _expansion(a: int, b: int):
    return tuple(kernel.blade_product_expansion(a, b).items())


class BilinearForm:
    """A 2n x 2n matrix of Scalars, ``entry(i, j) = B(e_i, e_j)`` (1-based)."""

    def __init__(
        self,
        context: AlgebraContext,
        entries: Sequence[Sequence[object]],
        product_cache: bool | None = None,
    ):
        dim = context.dim
        rows = [list(r) for r in entries]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise ContextMismatch(f"form must be {dim}x{dim} for n={context.n}")
        self.context = context
        self._m = tuple(tuple(Scalar.coerce(x) for x in r) for r in rows)
        self._codes = {}
        for i in range(dim):
            for j in range(dim):
                if self._m[i][j]:
                    self._codes[i * PAIR_BASE + j] = self._m[i][j]
        if product_cache is None:
            product_cache = context.n >= 3
        self._cache = {} if product_cache else None
        self._lock = threading.Lock()

    # construction ----------------------------------------------------------
    @classmethod
    def zero(cls, context: AlgebraContext, **kw) -> "BilinearForm":
        d = context.dim
        return cls(context, [[ZERO] * d for _ in range(d)], **kw)

    @classmethod
    def from_entries(cls, context: AlgebraContext, entries: Mapping[tuple, object], **kw):
        """Build from ``{(i, j): value}`` with 1-based indices; others are zero."""
        d = context.dim
        rows = [[ZERO] * d for _ in range(d)]
        for (i, j), v in entries.items():
            context.check_index(i)
            context.check_index(j)
            rows[i - 1][j - 1] = Scalar.coerce(v)
        return cls(context, rows, **kw)

    # access ----------------------------------------------------------------
    def entry(self, i: int, j: int) -> Scalar:
        if not (1 <= i <= self.context.dim and 1 <= j <= self.context.dim):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside 1..{self.context.dim}")
        return self._m[i - 1][j - 1]

    __call__ = entry

    @property
    def matrix(self) -> tuple:
        return self._m

    def nonzero_entries(self) -> list[tuple[int, int, Scalar]]:
        out = []
        for i, r in enumerate(self._m, 1):
            for j, v in enumerate(r, 1):
                if v:
                    out.append((i, j, v))
        return out

    def variables(self) -> list[str]:
        from .scalars import var_key

        names = set()
        for r in self._m:
            for v in r:
                names.update(v.variables())
        return sorted(names, key=var_key)

    # typed blocks, indexed by the subscript of j_i / d_i ---------------------
    def jj(self, r: int, s: int) -> Scalar:
        c = self.context
        return self.entry(c.j(r), c.j(s))

    def jd(self, t: int, u: int) -> Scalar:
        c = self.context
        return self.entry(c.j(t), c.d(u))

    def dj(self, v: int, w: int) -> Scalar:
        c = self.context
        return self.entry(c.d(v), c.j(w))

    def dd(self, x: int, y: int) -> Scalar:
        c = self.context
        return self.entry(c.d(x), c.d(y))

    def _block(self, f) -> list[list[Scalar]]:
        n = self.context.n
        return [[f(a, b) for b in range(1, n + 1)] for a in range(1, n + 1)]

    def M(self):
        return self._block(self.jj)

    def B1(self):
        return self._block(self.jd)

    def B2(self):
        return self._block(self.dj)

    def N(self):
        return self._block(self.dd)

    def raw_block(self, rows: str, cols: str) -> list[list[Scalar]]:
        """Literal submatrix of B; ``rows``/``cols`` are ``"j"`` or ``"d"``."""
        n = self.context.n
        ro = 0 if rows == "j" else n
        co = 0 if cols == "j" else n
        return [[self._m[ro + a][co + b] for b in range(n)] for a in range(n)]

    def J(self) -> list[list[int]]:
        n = self.context.n
        return [[1 if b == n - 1 - a else 0 for b in range(n)] for a in range(n)]

    # algebra on forms ------------------------------------------------------
    def transpose(self) -> "BilinearForm":
        d = self.context.dim
        return BilinearForm(self.context, [[self._m[j][i] for j in range(d)] for i in range(d)])

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        self._same(other)
        return BilinearForm(
            self.context,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._m, other._m)],
        )

    def __sub__(self, other: "BilinearForm") -> "BilinearForm":
        self._same(other)
        return BilinearForm(
            self.context,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._m, other._m)],
        )

    def scale_div(self, d) -> "BilinearForm":
        return BilinearForm(self.context, [[a.scale_div(d) for a in r] for r in self._m])

    def substitute(self, bindings) -> "BilinearForm":
        return BilinearForm(self.context, [[a.substitute(bindings) for a in r] for r in self._m])

    def with_entry(self, i: int, j: int, value) -> "BilinearForm":
        rows = [list(r) for r in self._m]
        self.entry(i, j)
        rows[i - 1][j - 1] = Scalar.coerce(value)
        return BilinearForm(self.context, rows)

    def _same(self, other):
        if self.context != other.context:
            raise ContextMismatch("forms live in different contexts")

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.context == other.context and self._m == other._m

    def __hash__(self):
        return hash((self.context, self._m))

    def __repr__(self):
        return f"BilinearForm(n={self.context.n}, nonzero={len(self._codes)})"

    # products --------------------------------------------------------------
    def blade_product(self, a: int, b: int) -> dict:
        """``e_a * e_b`` as ``{mask: Scalar}``."""
        if self._cache is not None:
            hit = self._cache.get((a, b))
            if hit is not None:
                return hit
        codes = self._codes
        out: dict = {}
        for (mask, pairs), k in _expansion(a, b):
            prod = None
            for p in pairs:
                e = codes.get(p)
                if e is None:
                    prod = ZERO
                    break
                prod = e if prod is None else prod * e
            if prod is None:
                prod = ONE
            elif not prod:
                continue
            out[mask] = out.get(mask, ZERO) + prod * k
        out = {m: c for m, c in out.items() if c}
        if self._cache is not None:
            with self._lock:
                out = self._cache.setdefault((a, b), out)
        return out

    def mul(self, a: Multivector, b: Multivector) -> Multivector:
        return clifford_mul(a, b, self)


def symmetric_part(B: BilinearForm) -> BilinearForm:
    return (B + B.transpose()).scale_div(2)


def antisymmetric_part(B: BilinearForm) -> BilinearForm:
    return (B - B.transpose()).scale_div(2)


def quadratic_form(x: Multivector, B: BilinearForm) -> Scalar:
    """``Q(x) = G(x, x)`` for a grade-1 element ``x``."""
    if not x.is_homogeneous(1):
        raise NotGradeOne("quadratic_form needs a grade-1 multivector")
    if x.context != B.context:
        raise ContextMismatch("form and vector live in different contexts")
    comps = [(m.bit_length(), c) for m, c in x.items()]
    total = ZERO
    for i, a in comps:
        for j, b in comps:
            g = B.entry(i, j) + B.entry(j, i)
            if g:
                total = total + a * b * g
    return total.scale_div(2)


def gamma(i: int, u: Multivector, B: BilinearForm) -> Multivector:
    """Chevalley map ``gamma_{e_i} = e_i _| + e_i ^`` applied to ``u``."""
    ctx = u.context
    ctx.check_index(i)
    return contract_generator(i, u, B) + wedge(Multivector.generator(ctx, i), u)


def clifford_mul(a: Multivector, b: Multivector, B: BilinearForm) -> Multivector:
    if a.context != b.context or a.context != B.context:
        raise ContextMismatch("operands and form must share one context")
    acc: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            f = ca * cb
            for m, c in B.blade_product(ma, mb).items():
                acc[m] = acc.get(m, ZERO) + c * f
    return Multivector._raw(a.context, {m: c for m, c in acc.items() if c})


def clifford_product(B: BilinearForm, *factors: Multivector) -> Multivector:
    """Left fold of :func:`clifford_mul` over ``factors``."""
    if not factors:
        return Multivector.scalar(B.context, 1)
    out = factors[0]
    for f in factors[1:]:
        out = clifford_mul(out, f, B)
    return out


def grade_project(u: Multivector, k: int) -> Multivector:
    return u.grade_project(k)


def anticommutator(i: int, j: int, B: BilinearForm) -> Multivector:
    ctx = B.context
    ei = Multivector.generator(ctx, i)
    ej = Multivector.generator(ctx, j)
    return clifford_mul(ei, ej, B) + clifford_mul(ej, ei, B)
