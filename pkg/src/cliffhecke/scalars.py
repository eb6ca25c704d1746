"""Exact coefficient ring: Laurent polynomials in ``q`` and free parameters.

Coefficients are :class:`fractions.Fraction` (stored as ``int`` when
integral).  A monomial is a tuple of ``(name, exponent)`` pairs sorted by
:func:`var_key`, so ``q`` always comes first.  Only ``q`` may carry a
negative exponent.

Text grammar::

    poly    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | "+" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := INT ["/" INT] | NAME | "(" poly ")"

Implicit multiplication is rejected.  A negative exponent is only accepted
directly on the name ``q``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ExprSyntaxError, ZeroSubstitutionForLaurentVariable

Q = "q"
NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")

Number = Union[int, Fraction]


def var_key(name: str):
    """Variable ordering: ``q`` first, then natural order on the rest."""
    if name == Q:
        return (0, ())
    parts = re.split(r"(\d+)", name)
    return (1, tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p))


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items(), key=lambda p: var_key(p[0])))


class Scalar:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Number] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _norm(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        s = cls.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    # constructors ----------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "Scalar":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Scalar":
        if not NAME_RE.fullmatch(name):
            raise ValueError(f"invalid variable name {name!r}")
        if exp < 0 and name != Q:
            raise ValueError(f"negative exponent only allowed on {Q}")
        if exp == 0:
            return ONE
        return cls._raw({((name, exp),): 1})

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)

    # inspection --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant(self) -> Number:
        """Coefficient of the empty monomial."""
        return self._terms.get((), 0)

    def as_number(self) -> Number:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.constant()

    def variables(self) -> list[str]:
        names = {v for m in self._terms for v, _ in m}
        return sorted(names, key=var_key)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # arithmetic ----------------------------------------------------------
    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.const(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = _norm(s)
            else:
                del t[m]
        return Scalar._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return ZERO
                return Scalar._raw({m: _norm(c * other) for m, c in self._terms.items()})
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1 and () in b:
            return self * b[()]
        if len(a) == 1 and () in a:
            return other * a[()]
        t: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                s = t.get(m, 0) + ca * cb
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Scalar._raw({m: _norm(c) for m, c in t.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.is_constant() and not self.is_zero():
                return Scalar.const(Fraction(1) / Fraction(self.constant()) ** (-k))
            if self.is_monomial():
                (m, c), = self._terms.items()
                if c in (1, -1) and all(v == Q for v, _ in m):
                    return Scalar._raw({tuple((v, -e) for v, e in m): c ** (-k)})
            raise ValueError(f"negative power only allowed on a nonzero constant or a power of {Q}")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale_div(self, d: Number) -> "Scalar":
        """Divide every coefficient by a nonzero rational."""
        d = Fraction(d)
        return Scalar._raw({m: _norm(Fraction(c) / d) for m, c in self._terms.items()})

    # comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.const(other)
            else:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation ------------------------------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Scalar":
        """Replace variables by rationals (or Scalars); others stay symbolic."""
        if not bindings:
            return self
        vals = {}
        for name, v in bindings.items():
            if isinstance(v, Scalar):
                vals[name] = v
            else:
                vals[name] = Scalar.const(Fraction(v))
        for name, v in vals.items():
            if v.is_zero() and any(
                var == name and e < 0 for m in self._terms for var, e in m
            ):
                raise ZeroSubstitutionForLaurentVariable(
                    f"cannot set {name}=0 in an expression with negative powers of {name}"
                )
        out = ZERO
        for m, c in self._terms.items():
            rest = []
            factor = Scalar.const(c)
            for var, e in m:
                if var in vals:
                    factor = factor * (vals[var] ** e)
                else:
                    rest.append((var, e))
            out = out + factor * Scalar._raw({tuple(rest): 1})
        return out

    # text ------------------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda mc: _mono_order(mc[0]))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            body = _mono_text(m, -c if neg else c)
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Scalar({self.to_text()!r})"


def _mono_order(m: tuple):
    return (sum(e for _, e in m), tuple((var_key(v), -e) for v, e in m))


def format_number(c: Number) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _mono_text(m: tuple, c: Number) -> str:
    """Render ``c * m`` for a positive coefficient ``c``."""
    factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
    if c != 1 or not factors:
        factors.insert(0, format_number(c))
    return "*".join(factors)


ZERO = Scalar._raw({})
ONE = Scalar._raw({(): 1})


def var(name: str) -> Scalar:
    return Scalar.var(name)


def q_power(k: int) -> Scalar:
    return Scalar.var(Q, k) if k else ONE


# parsing ---------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(.))")


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize_scalar(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("NAME", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*^()/":
                line, col = _position(text, m.start(3))
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, line, col)
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("EOF", "", len(text)))
    return toks


class _ScalarParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize_scalar(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        line, col = _position(self.text, tok[2])
        raise ExprSyntaxError(msg, self.text, line, col)

    def expect(self, kind):
        t = self.peek()
        if t[0] != kind:
            self.fail(f"expected {kind!r}, found {t[1] or 'end of input'!r}")
        return self.take()

    def parse(self) -> Scalar:
        if self.peek()[0] == "EOF":
            self.fail("empty expression")
        v = self.poly()
        t = self.peek()
        if t[0] != "EOF":
            if t[0] in ("INT", "NAME", "("):
                self.fail("implicit multiplication is not allowed")
            self.fail(f"unexpected token {t[1]!r}")
        return v

    def poly(self) -> Scalar:
        v = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "EOF":
            op = self.take()[0]
            r = self.term()
            v = v + r if op == "+" else v - r
        return v

    def term(self) -> Scalar:
        v = self.unary()
        while self.peek()[0] == "*":
            self.take()
            v = v * self.unary()
        return v

    def unary(self) -> Scalar:
        k = self.peek()[0]
        if k == "-":
            self.take()
            return -self.unary()
        if k == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        start = self.peek()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            e = int(self.expect("INT")[1])
            if neg:
                if not (start[0] == "NAME" and start[1] == Q):
                    self.fail(f"negative exponent only allowed on {Q}", start)
                return q_power(-e)
            return base ** e
        return base

    def atom(self) -> Scalar:
        t = self.peek()
        if t[0] == "INT":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                d = self.expect("INT")
                if int(d[1]) == 0:
                    self.fail("zero denominator", d)
                return Scalar.const(Fraction(int(t[1]), int(d[1])))
            return Scalar.const(int(t[1]))
        if t[0] == "NAME":
            self.take()
            return Scalar.var(t[1])
        if t[0] == "(":
            self.take()
            v = self.poly()
            self.expect(")")
            return v
        self.fail(f"unexpected {t[1] or 'end of input'!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse polynomial text such as ``"q^2 - 1 + 2*m12"``."""
    return _ScalarParser(text).parse()


def substitute(a: Scalar, bindings: Mapping[str, object]) -> Scalar:
    return a.substitute(bindings)


def scalar_arith(op: str, a, b=None) -> Scalar:
    a = Scalar.coerce(a)
    if op == "neg":
        return -a
    b = Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def sum_scalars(items: Iterable[Scalar]) -> Scalar:
    t: dict = {}
    for s in items:
        for m, c in s._terms.items():
            t[m] = t.get(m, 0) + c
    return Scalar(t)


def _split_q(p: Scalar) -> dict[int, Scalar]:
    out: dict[int, dict] = {}
    for m, c in p.items():
        k = 0
        rest = []
        for v, e in m:
            if v == Q:
                k = e
            else:
                rest.append((v, e))
        out.setdefault(k, {})[tuple(rest)] = c
    return {k: Scalar._raw(t) for k, t in out.items()}


def _join_q(parts: Mapping[int, Scalar]) -> Scalar:
    out = ZERO
    for k, s in parts.items():
        out = out + s * q_power(k)
    return out


def divide_one_plus_q(p: Scalar) -> Scalar | None:
    """Exact quotient ``p / (1 + q)``, or ``None`` when it does not divide."""
    if p.is_zero():
        return ZERO
    parts = _split_q(p)
    lo, hi = min(parts), max(parts)
    if lo == hi:
        return None
    r: dict[int, Scalar] = {}
    carry = parts.get(hi, ZERO)
    for k in range(hi - 1, lo - 1, -1):
        r[k] = carry
        carry = parts.get(k, ZERO) - carry
    if carry:
        return None
    return _join_q(r)


def strip_q_content(p: Scalar) -> Scalar:
    """Remove a common power of q and all factors ``1 + q``."""
    if p.is_zero():
        return p
    parts = _split_q(p)
    lo = min(parts)
    if lo:
        p = p * q_power(-lo)
    while True:
        d = divide_one_plus_q(p)
        if d is None:
            return p
        p = d
