"""Grassmann algebra of K^{2n} on a blade basis, and the B-dependent contraction.

Generator ``e_k`` (1-based) is bit ``k-1`` of a blade mask.  The first
``n`` generators are ``j_1..j_n``; the last ``n`` are ``d_n..d_1`` (the
dual generators, reversed), so ``d_i = e_{2n+1-i}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernel
from .errors import ContextMismatch, GradeOutOfRange, IndexOutOfRange, NOutOfRange
from .scalars import ONE, ZERO, Scalar


@dataclass(frozen=True)
class AlgebraContext:
    """Basis bookkeeping for the 2n generators ``j_1..j_n, d_n..d_1``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise NOutOfRange(f"n must be a positive integer, got {self.n!r}")
        if 2 * self.n > kernel.PAIR_BASE:
            raise NOutOfRange(f"n={self.n} exceeds the supported bound {kernel.PAIR_BASE // 2}")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def bar(self, i: int) -> int:
        self.check_index(i)
        return 2 * self.n + 1 - i

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.dim:
            raise IndexOutOfRange(f"generator index {i!r} outside 1..{self.dim}")

    def j(self, i: int) -> int:
        """Generator index of ``j_i``."""
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise IndexOutOfRange(f"j index {i!r} outside 1..{self.n}")
        return i

    def d(self, i: int) -> int:
        """Generator index of ``d_i`` (the dual of ``j_i``)."""
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise IndexOutOfRange(f"d index {i!r} outside 1..{self.n}")
        return 2 * self.n + 1 - i

    def name(self, k: int) -> str:
        self.check_index(k)
        return f"j{k}" if k <= self.n else f"d{2 * self.n + 1 - k}"

    def generator_names(self) -> list[str]:
        return [self.name(k) for k in range(1, self.dim + 1)]

    def blade_indices(self, mask: int) -> tuple[int, ...]:
        out = []
        k = 1
        while mask:
            if mask & 1:
                out.append(k)
            mask >>= 1
            k += 1
        return tuple(out)

    def blade_mask(self, indices: Iterable[int]) -> int:
        m = 0
        for k in indices:
            self.check_index(k)
            m |= 1 << (k - 1)
        return m

    def blade_name(self, mask: int) -> str:
        return "^".join(self.name(k) for k in self.blade_indices(mask))

    def all_masks(self) -> range:
        return range(1 << self.dim)


def grade(mask: int) -> int:
    return kernel.popcount(mask)


def blade_sort_key(mask: int):
    """Grade first, then lexicographic on ascending indices."""
    idx = []
    k = 1
    m = mask
    while m:
        if m & 1:
            idx.append(k)
        m >>= 1
        k += 1
    return (len(idx), tuple(idx))


def _check_same(a: "Multivector", b: "Multivector") -> None:
    if a.context != b.context:
        raise ContextMismatch(f"contexts differ: n={a.context.n} vs n={b.context.n}")


class Multivector:
    """Immutable sparse map blade mask -> nonzero Scalar."""

    __slots__ = ("context", "_terms")

    def __init__(self, context: AlgebraContext, terms: Mapping[int, object] | None = None):
        self.context = context
        clean = {}
        top = 1 << context.dim
        if terms:
            for m, c in terms.items():
                if not 0 <= m < top:
                    raise IndexOutOfRange(f"blade mask {m} outside the context")
                c = Scalar.coerce(c)
                if c:
                    clean[m] = c
        self._terms = clean

    @classmethod
    def _raw(cls, context, terms):
        mv = cls.__new__(cls)
        mv.context = context
        mv._terms = terms
        return mv

    @classmethod
    def zero(cls, context):
        return cls._raw(context, {})

    @classmethod
    def scalar(cls, context, s) -> "Multivector":
        s = Scalar.coerce(s)
        return cls._raw(context, {0: s} if s else {})

    @classmethod
    def blade(cls, context, indices: Iterable[int], coef=1) -> "Multivector":
        """Wedge of the listed generators, in the given order."""
        mask = 0
        sign = 1
        for k in indices:
            context.check_index(k)
            bit = 1 << (k - 1)
            s = kernel.wedge_sign(mask, bit)
            if s == 0:
                return cls.zero(context)
            sign *= s
            mask |= bit
        c = Scalar.coerce(coef) * sign
        return cls._raw(context, {mask: c} if c else {})

    @classmethod
    def generator(cls, context, k: int) -> "Multivector":
        context.check_index(k)
        return cls._raw(context, {1 << (k - 1): ONE})

    # inspection ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: blade_sort_key(kv[0]))

    def coefficient(self, mask: int) -> Scalar:
        return self._terms.get(mask, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def grades(self) -> set[int]:
        return {grade(m) for m in self._terms}

    def is_homogeneous(self, k: int | None = None) -> bool:
        g = self.grades()
        if k is None:
            return len(g) <= 1
        return g <= {k}

    def scalar_part(self) -> Scalar:
        return self._terms.get(0, ZERO)

    def grade_project(self, k: int) -> "Multivector":
        if not isinstance(k, int) or not 0 <= k <= self.context.dim:
            raise GradeOutOfRange(f"grade {k!r} outside 0..{self.context.dim}")
        return Multivector._raw(
            self.context, {m: c for m, c in self._terms.items() if grade(m) == k}
        )

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Multivector):
            try:
                other = Multivector.scalar(self.context, other)
            except TypeError:
                return NotImplemented
        _check_same(self, other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m, ZERO) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Multivector._raw(self.context, t)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.context, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            try:
                other = Multivector.scalar(self.context, other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Multivector.scalar(self.context, other) - self

    def scale(self, s) -> "Multivector":
        s = Scalar.coerce(s)
        if not s:
            return Multivector.zero(self.context)
        t = {}
        for m, c in self._terms.items():
            v = c * s
            if v:
                t[m] = v
        return Multivector._raw(self.context, t)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            raise TypeError("use clifford_mul(a, b, B) or B.mul(a, b) for the Clifford product")
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            return wedge(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.context == other.context and self._terms == other._terms
        if isinstance(other, (Scalar, int, Fraction)):
            return self == Multivector.scalar(self.context, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.context, frozenset(self._terms.items())))

    def map_coefficients(self, f) -> "Multivector":
        t = {}
        for m, c in self._terms.items():
            v = f(c)
            if v:
                t[m] = v
        return Multivector._raw(self.context, t)

    def substitute(self, bindings) -> "Multivector":
        return self.map_coefficients(lambda c: c.substitute(bindings))

    def __str__(self):
        from .expr import to_text

        return to_text(self)

    def __repr__(self):
        return f"Multivector(n={self.context.n}, {self})"


def wedge_blades(context: AlgebraContext, a: int, b: int):
    """``(sign, mask)`` for ``e_a ^ e_b``, or ``None`` when the blades overlap."""
    top = 1 << context.dim
    if not (0 <= a < top and 0 <= b < top):
        raise ContextMismatch("blade masks do not belong to the context")
    s = kernel.wedge_sign(a, b)
    if s == 0:
        return None
    return s, a | b


def wedge(a: Multivector, b: Multivector) -> Multivector:
    _check_same(a, b)
    acc: dict = {}
    ws = kernel.wedge_sign
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s = ws(ma, mb)
            if not s:
                continue
            m = ma | mb
            v = ca * cb
            acc[m] = acc.get(m, ZERO) + (v if s > 0 else -v)
    return Multivector._raw(a.context, {m: c for m, c in acc.items() if c})


def grade_involution(u: Multivector) -> Multivector:
    return Multivector._raw(
        u.context, {m: (-c if grade(m) & 1 else c) for m, c in u._terms.items()}
    )


def contract_generator(i: int, u: Multivector, B) -> Multivector:
    """``e_i _| u`` via the derivation rule with ``e_i _| e_j = B(e_i, e_j)``."""
    ctx = u.context
    ctx.check_index(i)
    if B.context != ctx:
        raise ContextMismatch("form and multivector live in different contexts")
    acc: dict = {}
    for m, c in u._terms.items():
        for sign, j, rest in kernel.contract_terms(i - 1, m):
            b = B.entry(i, j + 1)
            if not b:
                continue
            v = c * b
            acc[rest] = acc.get(rest, ZERO) + (v if sign > 0 else -v)
    return Multivector._raw(ctx, {m: c for m, c in acc.items() if c})


def contract(form: Multivector, u: Multivector, B) -> Multivector:
    """Action of a multiform: ``(e_i1 ^ ... ^ e_ik) _| u = e_i1 _| (... (e_ik _| u))``."""
    _check_same(form, u)
    out = Multivector.zero(u.context)
    for m, c in form._terms.items():
        v = u
        for k in reversed(u.context.blade_indices(m)):
            v = contract_generator(k, v, B)
            if not v:
                break
        out = out + v.scale(c)
    return out
