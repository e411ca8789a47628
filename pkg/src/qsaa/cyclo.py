"""Exact arithmetic in the cyclotomic field Q(zeta_l).

The scalar q used by every algebra presentation in this package is the
primitive l-th root of unity zeta_l.  Field elements are stored as
length-phi(l) rational coefficient vectors giving the canonical
representative modulo the l-th cyclotomic polynomial, so equality is a
plain coefficient comparison and every downstream identity check is
exact.  No floating point is used anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidOrderError, OrderMismatchError, ParseError

#: Exact rational scalar substrate.  fractions.Fraction already keeps
#: gcd(|num|, den) = 1 with den >= 1 and canonical 0/1, which is exactly
#: the normal form required here.
Rational = Fraction


def euler_phi(n: int) -> int:
    """Euler totient of ``n``."""
    if n < 1:
        raise InvalidOrderError(f"totient undefined for {n}")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # Exact division of integer polynomials (constant term first),
    # divisor monic.  Remainder must vanish.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(l: int) -> tuple[int, ...]:
    """Coefficients of the l-th cyclotomic polynomial, constant term first.

    Monic of degree phi(l); computed by exact division of x^l - 1 by the
    cyclotomic polynomials of the proper divisors of l.
    """
    if l < 1:
        raise InvalidOrderError(f"cyclotomic polynomial needs l >= 1, got {l}")
    poly = [-1] + [0] * (l - 1) + [1]
    for d in range(1, l):
        if l % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(l: int) -> tuple[tuple[int, ...], ...]:
    # x^k mod Phi_l for k = deg, ..., max(2*deg - 2, l - 1): enough both
    # for reducing a product of two reduced elements and for zeta powers.
    phi = cyclotomic_polynomial(l)
    deg = len(phi) - 1
    top_k = max(2 * deg - 2, l - 1)
    rows: list[tuple[int, ...]] = []
    cur = [-c for c in phi[:-1]]
    rows.append(tuple(cur))
    for _ in range(deg + 1, top_k + 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [a + top * b for a, b in zip(cur, rows[0])]
        rows.append(tuple(cur))
    return tuple(rows)


_ZERO = Fraction(0)
_ONE = Fraction(1)


class CycloNum:
    """An element of Q(zeta_l), always in canonical reduced form.

    Immutable; all operations return new values, so instances are safe
    to share across concurrently running tasks.
    """

    __slots__ = ("l", "coeffs", "_hash")

    def __init__(self, l: int, coeffs: Iterable[Rational | int]):
        if l < 3:
            raise InvalidOrderError(f"CycloNum needs l >= 3, got {l}")
        tup = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(tup) != euler_phi(l):
            raise InvalidOrderError(
                f"need phi({l}) = {euler_phi(l)} coefficients, got {len(tup)}"
            )
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "coeffs", tup)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("CycloNum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(l: int) -> "CycloNum":
        return CycloNum(l, (_ZERO,) * euler_phi(l))

    @staticmethod
    def one(l: int) -> "CycloNum":
        return CycloNum.from_rational(l, _ONE)

    @staticmethod
    def from_rational(l: int, value: Rational | int) -> "CycloNum":
        coeffs = [_ZERO] * euler_phi(l)
        coeffs[0] = Fraction(value)
        return CycloNum(l, coeffs)

    @staticmethod
    def zeta(l: int, k: int = 1) -> "CycloNum":
        """zeta_l^k as a reduced element (k may be any integer)."""
        k %= l
        deg = euler_phi(l)
        if k < deg:
            coeffs = [_ZERO] * deg
            coeffs[k] = _ONE
            return CycloNum(l, coeffs)
        row = _reduction_rows(l)[k - deg]
        return CycloNum(l, row)

    # -- ring structure ------------------------------------------------

    def _check(self, other: "CycloNum") -> None:
        if self.l != other.l:
            raise OrderMismatchError(f"orders differ: {self.l} vs {other.l}")

    def _coerce(self, other) -> "CycloNum | None":
        if isinstance(other, CycloNum):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.l, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.l, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum(self.l, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycloNum(self.l, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycloNum.zero(self.l)
            f = Fraction(other)
            return CycloNum(self.l, tuple(a * f for a in self.coeffs))
        if not isinstance(other, CycloNum):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = len(a)
        conv = [_ZERO] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        if n > 1:
            rows = _reduction_rows(self.l)
            out = conv[:n]
            for k in range(n, 2 * n - 1):
                ck = conv[k]
                if ck:
                    row = rows[k - n]
                    for i, r in enumerate(row):
                        if r:
                            out[i] += ck * r
            return CycloNum(self.l, out)
        return CycloNum(self.l, conv[:n])

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Multiplicative inverse via extended gcd with Phi_l."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        # Extended Euclid in Q[x] for gcd(a, Phi_l) = 1.
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.l)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [_ZERO], [_ONE]  # Bezout coefficients of `self`
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                c = r1[0]
                return CycloNum(
                    self.l,
                    tuple((s1[i] / c if i < len(s1) else _ZERO)
                          for i in range(len(self.coeffs))),
                )
            q = [_ZERO] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for k in range(len(q) - 1, -1, -1):
                c = rem[k + len(r1) - 1] / r1[-1]
                q[k] = c
                if c:
                    for i, d in enumerate(r1):
                        rem[k + i] -= c * d
            while rem and not rem[-1]:
                rem.pop()
            # s_next = s0 - q*s1
            s_next = list(s0) + [_ZERO] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        if sj:
                            s_next[i + j] -= qi * sj
            r0, r1 = r1, rem
            s0, s1 = s1, s_next

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int) -> "CycloNum":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        out = CycloNum.one(self.l)
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- predicates & canonical form -----------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.l == other.l and self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.l, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    # -- text form ------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                term = str(c)
            else:
                var = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = f"-{var}"
                else:
                    term = f"{c}*{var}"
            parts.append(term)
        if not parts:
            return "0"
        text = parts[0]
        for term in parts[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text

    def __repr__(self) -> str:
        return f"CycloNum({self.l}, '{self}')"

    def to_strings(self) -> list[str]:
        """Serialized form: phi(l) rational strings, constant term first."""
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_strings(l: int, items: Sequence[str]) -> "CycloNum":
        return CycloNum(l, tuple(Fraction(s) for s in items))


@dataclass(frozen=True)
class RootOrder:
    """The order l of q together with l1 = ord(q^2)."""

    l: int
    l1: int

    @staticmethod
    def of(l: int) -> "RootOrder":
        return RootOrder(l, ord_q2(l))


def q_power(l: int, k: int) -> CycloNum:
    """q^k = zeta_l^k, reduced; periodic in k with period l."""
    return CycloNum.zeta(l, k)


def q_int(l: int, i: int) -> CycloNum:
    """The sum 1 + q^-2 + ... + q^-2(i-1), i.e. (q^-2i - 1)/(q^-2 - 1)."""
    if i < 0:
        raise ValueError(f"q_int needs i >= 0, got {i}")
    out = CycloNum.zero(l)
    for t in range(i):
        out = out + CycloNum.zeta(l, -2 * t)
    return out


def ord_q2(l: int) -> int:
    """Multiplicative order of q^2: l for odd l, l/2 for even l."""
    if l < 3:
        raise InvalidOrderError(f"ord_q2 needs l >= 3, got {l}")
    return l if l % 2 else l // 2


# -- literal grammar --------------------------------------------------
#
# Expressions over the token `z` (the CLI also accepts `q`) with integer
# and p/q rational literals, operators + - * ^ and parentheses, e.g.
# ``1/2*z^2 - 3``.

_TOKEN = re.compile(r"\s*(?:(\d+)|([zq])|([+\-*^()/])|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.group(4):
            raise ParseError(f"bad character in cyclotomic literal: {text[pos:]!r}")
        if m.group(1):
            tokens.append(("int", m.group(1)))
        elif m.group(2):
            tokens.append(("var", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    return tokens


class _LiteralParser:
    def __init__(self, l: int, tokens: list[tuple[str, str]]):
        self.l = l
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of cyclotomic literal")
        self.pos += 1
        return tok

    def expr(self) -> CycloNum:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> CycloNum:
        value = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> CycloNum:
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            value = value ** self.exponent()
        return value

    def exponent(self) -> int:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, text = self.take()
        if kind != "int":
            raise ParseError(f"integer exponent expected, got {text!r}")
        return sign * int(text)

    def atom(self) -> CycloNum:
        kind, text = self.take()
        if kind == "int":
            value = Fraction(int(text))
            if self.peek() == ("op", "/"):
                self.take()
                kind2, text2 = self.take()
                if kind2 != "int":
                    raise ParseError("rational literal needs integer denominator")
                value = value / int(text2)
            return CycloNum.from_rational(self.l, value)
        if kind == "var":
            return CycloNum.zeta(self.l)
        if (kind, text) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis in cyclotomic literal")
            return value
        if (kind, text) == ("op", "-"):
            return -self.factor()
        raise ParseError(f"unexpected token {text!r} in cyclotomic literal")


def parse_cyclo(text: str, l: int) -> CycloNum:
    """Parse a cyclotomic literal such as ``1/2*z^2 - 3`` over Q(zeta_l)."""
    parser = _LiteralParser(l, _tokenize(text))
    value = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input in cyclotomic literal: {text!r}")
    return value
