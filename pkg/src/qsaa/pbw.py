"""Noncommutative PBW rewriting for the three algebra presentations.

Presentations
-------------
* ``QSAA``   -- generators E, K, K^-1, X, Y of the quantum spatial
  ageing algebra, ordered monomial basis X^a Y^b E^c K^d.
* ``SMASH``  -- the extension by F (smash product with the full
  quantized enveloping algebra), basis X^a Y^b E^c K^d F^e.
* ``PHIPSI`` -- the subalgebra on K^+-1, X, Y and the normal elements
  phi, psi, treated as atomic generators with their own relation table;
  basis X^a Y^b phi^c K^d psi^e.

Words over the generators are rewritten into canonical linear
combinations of ordered monomials by repeatedly replacing an adjacent
out-of-order pair according to the oriented defining relations.  K and
K^-1 merge into a single signed exponent.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .cyclo import CycloNum, q_power
from .errors import (
    InvalidParameterError,
    OrderMismatchError,
    ParseError,
    PresentationMismatchError,
)


class Gen(enum.Enum):
    X = "X"
    Y = "Y"
    E = "E"
    K = "K"
    KINV = "K^-1"
    F = "F"
    PHI = "phi"
    PSI = "psi"

    def __repr__(self):
        return self.value


class PBWMonomial(NamedTuple):
    """Exponents (a, b, c, d, e) of an ordered monomial.

    c is the E-degree (phi-degree for the PHIPSI presentation) and e the
    F-degree (psi-degree); d is the signed K-degree.
    """

    a: int
    b: int
    c: int
    d: int
    e: int

    def word(self, pres: "Presentation") -> tuple[Gen, ...]:
        third, fifth = pres.slots
        k_part = (Gen.K,) * self.d if self.d >= 0 else (Gen.KINV,) * (-self.d)
        return ((Gen.X,) * self.a + (Gen.Y,) * self.b + (third,) * self.c
                + k_part + (fifth,) * self.e)


@dataclass(frozen=True)
class Presentation:
    """A named generator set with its oriented rewriting rules."""

    name: str
    generators: tuple[Gen, ...]
    slots: tuple[Gen, Gen]  # generators filling the E- and F-slots

    def __repr__(self):
        return f"<presentation {self.name}>"


QSAA = Presentation("qsaa", (Gen.X, Gen.Y, Gen.E, Gen.K, Gen.KINV), (Gen.E, Gen.F))
SMASH = Presentation("smash", (Gen.X, Gen.Y, Gen.E, Gen.K, Gen.KINV, Gen.F),
                     (Gen.E, Gen.F))
PHIPSI = Presentation("phipsi", (Gen.X, Gen.Y, Gen.PHI, Gen.K, Gen.KINV, Gen.PSI),
                      (Gen.PHI, Gen.PSI))

PRESENTATIONS = {p.name: p for p in (QSAA, SMASH, PHIPSI)}


def _rules(pres: Presentation, l: int):
    """Map (g1, g2) -> replacement terms [(coeff, word)] for g1*g2."""
    q = lambda k: q_power(l, k)
    one = CycloNum.one(l)
    rules: dict[tuple[Gen, Gen], list[tuple[CycloNum, tuple[Gen, ...]]]] = {
        # quantum plane and K-conjugation, common to all presentations
        (Gen.Y, Gen.X): [(q(-1), (Gen.X, Gen.Y))],
        (Gen.K, Gen.X): [(q(1), (Gen.X, Gen.K))],
        (Gen.K, Gen.Y): [(q(-1), (Gen.Y, Gen.K))],
        (Gen.KINV, Gen.X): [(q(-1), (Gen.X, Gen.KINV))],
        (Gen.KINV, Gen.Y): [(q(1), (Gen.Y, Gen.KINV))],
        (Gen.K, Gen.KINV): [(one, ())],
        (Gen.KINV, Gen.K): [(one, ())],
    }
    if pres is PHIPSI:
        rules.update({
            (Gen.PHI, Gen.X): [(one, (Gen.X, Gen.PHI))],
            (Gen.PHI, Gen.Y): [(q(-1), (Gen.Y, Gen.PHI))],
            (Gen.K, Gen.PHI): [(q(1), (Gen.PHI, Gen.K))],
            (Gen.KINV, Gen.PHI): [(q(-1), (Gen.PHI, Gen.KINV))],
            (Gen.PSI, Gen.X): [(one, (Gen.X, Gen.PSI))],
            (Gen.PSI, Gen.Y): [(q(1), (Gen.Y, Gen.PSI))],
            (Gen.PSI, Gen.K): [(q(1), (Gen.K, Gen.PSI))],
            (Gen.PSI, Gen.KINV): [(q(-1), (Gen.KINV, Gen.PSI))],
            (Gen.PSI, Gen.PHI): [(one, (Gen.PHI, Gen.PSI)),
                                 (q(1) - q(3), (Gen.K, Gen.Y, Gen.X))],
        })
        return rules
    rules.update({
        (Gen.E, Gen.X): [(q(1), (Gen.X, Gen.E))],
        (Gen.E, Gen.Y): [(one, (Gen.X,)), (q(-1), (Gen.Y, Gen.E))],
        (Gen.K, Gen.E): [(q(2), (Gen.E, Gen.K))],
        (Gen.KINV, Gen.E): [(q(-2), (Gen.E, Gen.KINV))],
    })
    if pres is SMASH:
        c = (q(1) - q(-1)).inv()
        rules.update({
            (Gen.F, Gen.X): [(one, (Gen.X, Gen.F)), (one, (Gen.Y, Gen.KINV))],
            (Gen.F, Gen.Y): [(one, (Gen.Y, Gen.F))],
            (Gen.F, Gen.E): [(one, (Gen.E, Gen.F)), (-c, (Gen.K,)), (c, (Gen.KINV,))],
            (Gen.F, Gen.K): [(q(2), (Gen.K, Gen.F))],
            (Gen.F, Gen.KINV): [(q(-2), (Gen.KINV, Gen.F))],
        })
    return rules


@lru_cache(maxsize=None)
def _rules_cached(name: str, l: int):
    return _rules(PRESENTATIONS[name], l)


def _monomial_of(word: Sequence[Gen], pres: Presentation) -> PBWMonomial:
    a = b = c = d = e = 0
    third, fifth = pres.slots
    for g in word:
        if g is Gen.X:
            a += 1
        elif g is Gen.Y:
            b += 1
        elif g is third:
            c += 1
        elif g is Gen.K:
            d += 1
        elif g is Gen.KINV:
            d -= 1
        else:
            e += 1
    return PBWMonomial(a, b, c, d, e)


class AlgebraElement:
    """A canonical linear combination of ordered monomials.

    Instances are always in PBW normal form (the constructors normalize),
    immutable by convention, and support +, -, * (product and scalar
    multiple) and integer powers.
    """

    __slots__ = ("l", "pres", "terms")

    def __init__(self, l: int, pres: Presentation, terms: dict):
        self.l = l
        self.pres = pres
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(pres: Presentation, l: int) -> "AlgebraElement":
        return AlgebraElement(l, pres, {})

    @staticmethod
    def scalar(pres: Presentation, l: int, c) -> "AlgebraElement":
        if isinstance(c, (int, Fraction)):
            c = CycloNum.from_rational(l, c)
        return AlgebraElement(l, pres, {PBWMonomial(0, 0, 0, 0, 0): c})

    @staticmethod
    def generator(pres: Presentation, l: int, g: Gen) -> "AlgebraElement":
        if g not in pres.generators:
            raise PresentationMismatchError(f"{g.value} is not a generator of {pres.name}")
        return AlgebraElement(l, pres, {_monomial_of((g,), pres): CycloNum.one(l)})

    @staticmethod
    def monomial(pres: Presentation, l: int, mono: PBWMonomial, coeff=None) -> "AlgebraElement":
        if mono.e and pres is QSAA:
            raise PresentationMismatchError("qsaa has no fifth-slot generator")
        c = CycloNum.one(l) if coeff is None else coeff
        return AlgebraElement(l, pres, {mono: c})

    # -- comparisons ------------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if self.l != other.l:
            raise OrderMismatchError(f"orders differ: {self.l} vs {other.l}")
        if self.pres.name != other.pres.name:
            raise PresentationMismatchError(
                f"presentations differ: {self.pres.name} vs {other.pres.name}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = AlgebraElement.scalar(self.pres, self.l, other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.l, self.pres.name, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- linear structure -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return AlgebraElement.scalar(self.pres, self.l, other)
        return other if isinstance(other, AlgebraElement) else None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check(o)
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            terms[m] = c if s is None else s + c
        return AlgebraElement(self.l, self.pres, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.l, self.pres,
                              {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.l, other)
        if isinstance(other, CycloNum):
            return AlgebraElement(self.l, self.pres,
                                  {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(self.l, other)
        if isinstance(other, CycloNum):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self._inverse_power(-k)
        out = AlgebraElement.scalar(self.pres, self.l, 1)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def _inverse_power(self, k: int):
        # Negative powers only make sense for invertible monomial terms:
        # scalars and pure K-powers.
        if len(self.terms) != 1:
            raise InvalidParameterError("negative power of a non-invertible element")
        (mono, coeff), = self.terms.items()
        if mono.a or mono.b or mono.c or mono.e:
            raise InvalidParameterError("negative power of a non-invertible element")
        return AlgebraElement(self.l, self.pres,
                              {PBWMonomial(0, 0, 0, -mono.d * k, 0): coeff.inv() ** k})

    def __str__(self):
        if not self.terms:
            return "0"
        names = {0: "X", 1: "Y", 2: self.pres.slots[0].value,
                 4: self.pres.slots[1].value}
        parts = []
        for m in sorted(self.terms):
            factors = []
            for slot, exp in (("X", m.a), ("Y", m.b), (names[2], m.c)):
                if exp:
                    factors.append(slot if exp == 1 else f"{slot}^{exp}")
            if m.d:
                factors.append("K" if m.d == 1 else f"K^{m.d}")
            if m.e:
                factors.append(names[4] if m.e == 1 else f"{names[4]}^{m.e}")
            body = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[m]})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def normal_form(word: Iterable[Gen], l: int, pres: Presentation,
                strategy: str = "leftmost") -> AlgebraElement:
    """Rewrite a generator word into its canonical PBW combination.

    ``strategy`` picks which out-of-order adjacent pair is replaced first
    (``leftmost`` or ``rightmost``); both must give the same result, which
    the test-suite exercises on random words.
    """
    word = tuple(word)
    for g in word:
        if g not in pres.generators:
            raise PresentationMismatchError(
                f"{g.value} is not a generator of {pres.name}")
    if strategy not in ("leftmost", "rightmost"):
        raise InvalidParameterError(f"unknown strategy {strategy!r}")
    rules = _rules_cached(pres.name, l)
    pending: list[tuple[CycloNum, tuple[Gen, ...]]] = [(CycloNum.one(l), word)]
    acc: dict[PBWMonomial, CycloNum] = {}
    while pending:
        coeff, w = pending.pop()
        idx = None
        rng = range(len(w) - 1) if strategy == "leftmost" else range(len(w) - 2, -1, -1)
        for i in rng:
            if (w[i], w[i + 1]) in rules:
                idx = i
                break
        if idx is None:
            mono = _monomial_of(w, pres)
            s = acc.get(mono)
            acc[mono] = coeff if s is None else s + coeff
            continue
        head, tail = w[:idx], w[idx + 2:]
        for c, repl in rules[(w[idx], w[idx + 1])]:
            pending.append((coeff * c, head + repl + tail))
    return AlgebraElement(l, pres, acc)


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Product of two canonical elements (bilinear extension of rewriting)."""
    u._check(v)
    out: dict[PBWMonomial, CycloNum] = {}
    for m1, c1 in u.terms.items():
        w1 = m1.word(u.pres)
        for m2, c2 in v.terms.items():
            nf = normal_form(w1 + m2.word(u.pres), u.l, u.pres)
            c = c1 * c2
            for m, x in nf.terms.items():
                s = out.get(m)
                t = c * x if s is None else s + c * x
                out[m] = t
    return AlgebraElement(u.l, u.pres, out)


def gens(pres: Presentation, l: int) -> dict[Gen, AlgebraElement]:
    return {g: AlgebraElement.generator(pres, l, g) for g in pres.generators}


def phi_element(l: int, pres: Presentation = QSAA) -> AlgebraElement:
    """The normal element phi = EY - qYE, in PBW form."""
    if pres is PHIPSI:
        return AlgebraElement.generator(pres, l, Gen.PHI)
    e = AlgebraElement.generator(pres, l, Gen.E)
    y = AlgebraElement.generator(pres, l, Gen.Y)
    return e * y - q_power(l, 1) * (y * e)


def psi_element(l: int, pres: Presentation = SMASH) -> AlgebraElement:
    """The element psi = XF - q^2 FX, in PBW form (needs an F generator)."""
    if pres is PHIPSI:
        return AlgebraElement.generator(pres, l, Gen.PSI)
    if pres is not SMASH:
        raise PresentationMismatchError("psi needs the smash presentation")
    x = AlgebraElement.generator(pres, l, Gen.X)
    f = AlgebraElement.generator(pres, l, Gen.F)
    return x * f - q_power(l, 2) * (f * x)


def is_central(x: AlgebraElement, pres: Presentation | None = None) -> bool:
    """True iff x commutes with every generator of its presentation."""
    pres = pres or x.pres
    for g in pres.generators:
        ge = AlgebraElement.generator(pres, x.l, g)
        if multiply(x, ge) != multiply(ge, x):
            return False
    return True


def verify_identity(lhs: AlgebraElement, rhs: AlgebraElement) -> bool:
    """True iff both sides have equal normal forms."""
    lhs._check(rhs)
    return lhs == rhs


def embed_to_smash(x: AlgebraElement) -> AlgebraElement:
    """Expand a phipsi element inside the smash presentation.

    phi and psi are replaced by their defining expressions; the result
    lets the atomic relation table be cross-checked against the ambient
    algebra.
    """
    if x.pres is not PHIPSI:
        raise PresentationMismatchError("embed_to_smash expects a phipsi element")
    l = x.l
    images = {
        Gen.X: AlgebraElement.generator(SMASH, l, Gen.X),
        Gen.Y: AlgebraElement.generator(SMASH, l, Gen.Y),
        Gen.K: AlgebraElement.generator(SMASH, l, Gen.K),
        Gen.KINV: AlgebraElement.generator(SMASH, l, Gen.KINV),
        Gen.PHI: phi_element(l, SMASH),
        Gen.PSI: psi_element(l, SMASH),
    }
    out = AlgebraElement.zero(SMASH, l)
    for mono, coeff in x.terms.items():
        term = AlgebraElement.scalar(SMASH, l, 1) * coeff
        for g in mono.word(PHIPSI):
            term = multiply(term, images[g])
        out = out + term
    return out


# -- element text syntax -----------------------------------------------
#
# Generators X Y E K K^-1 F phi psi, explicit * for products, integer ^
# exponents, cyclotomic scalars in the literal grammar (z or q).

_GEN_NAMES = {"X": Gen.X, "Y": Gen.Y, "E": Gen.E, "K": Gen.K, "F": Gen.F,
              "phi": Gen.PHI, "psi": Gen.PSI}

_ELEM_TOKEN = re.compile(
    r"\s*(?:(phi|psi|[XYEKF])|(\d+)|([zq])|([+\-*^()/])|(\S))")


def _tokenize_element(text: str):
    tokens, pos = [], 0
    while pos < len(text):
        m = _ELEM_TOKEN.match(text, pos)
        if not m or m.group(5):
            raise ParseError(f"bad character in element expression: {text[pos:]!r}")
        if m.group(1):
            tokens.append(("gen", m.group(1)))
        elif m.group(2):
            tokens.append(("int", m.group(2)))
        elif m.group(3):
            tokens.append(("var", m.group(3)))
        else:
            tokens.append(("op", m.group(4)))
        pos = m.end()
    return tokens


class _ElementParser:
    def __init__(self, l: int, pres: Presentation, tokens):
        self.l = l
        self.pres = pres
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of element expression")
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, text = self.take()
            if kind != "int":
                raise ParseError("integer exponent expected")
            return value ** (sign * int(text))
        return value

    def atom(self):
        kind, text = self.take()
        if kind == "gen":
            return AlgebraElement.generator(self.pres, self.l, _GEN_NAMES[text])
        if kind == "var":
            return AlgebraElement.scalar(self.pres, self.l, CycloNum.zeta(self.l))
        if kind == "int":
            value = Fraction(int(text))
            if self.peek() == ("op", "/"):
                self.take()
                kind2, text2 = self.take()
                if kind2 != "int":
                    raise ParseError("rational literal needs integer denominator")
                value = value / int(text2)
            return AlgebraElement.scalar(self.pres, self.l, value)
        if (kind, text) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis in element expression")
            return value
        if (kind, text) == ("op", "-"):
            return -self.factor()
        raise ParseError(f"unexpected token {text!r} in element expression")


def parse_element(text: str, l: int, pres: Presentation) -> AlgebraElement:
    """Parse an element expression like ``E*Y - q*Y*E`` over a presentation."""
    parser = _ElementParser(l, pres, _tokenize_element(text))
    value = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input in element expression: {text!r}")
    return value
