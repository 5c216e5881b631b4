"""Exact multivariate Laurent polynomials over the rationals.

A polynomial is stored sparsely as a map from monomials to coefficients.
A monomial is a tuple of (variable, exponent) pairs, sorted by variable
name, with nonzero (possibly negative) integer exponents; the empty tuple
is the monomial 1.  Coefficients are exact rationals, normalised to plain
ints whenever the denominator is 1, so integer-only computations stay on
fast int arithmetic.  The zero polynomial has no terms.

Canonical form is unique: no zero coefficients, no zero exponents, so
structural equality is mathematical equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    MissingVariable,
    NonInvertibleElement,
    PolyParseError,
    ZeroToNegativePower,
)

# ((variable, exponent), ...) sorted by variable, every exponent nonzero.
Monomial = tuple[tuple[str, int], ...]

Scalar = int | Fraction

EMPTY_MONOMIAL: Monomial = ()


def normalize_scalar(value) -> Scalar:
    """Coerce an exact rational to canonical int-or-Fraction form."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, int):
        return value
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def monomial(exponents: Mapping[str, int]) -> Monomial:
    """Build a canonical monomial from an exponent map (zeros dropped)."""
    return tuple(sorted((v, e) for v, e in exponents.items() if e != 0))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for var, e in b:
        ne = exps.get(var, 0) + e
        if ne:
            exps[var] = ne
        else:
            del exps[var]
    return tuple(sorted(exps.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        data: dict[Monomial, Scalar] = {}
        if terms:
            for mono, coeff in terms.items():
                c = normalize_scalar(coeff)
                if c:
                    data[mono] = c
        self._terms = data

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({EMPTY_MONOMIAL: 1})

    @classmethod
    def constant(cls, value) -> LaurentPoly:
        return cls({EMPTY_MONOMIAL: value})

    @classmethod
    def variable(cls, name: str) -> LaurentPoly:
        if not name:
            raise ValueError("variable name must be nonempty")
        return cls({((name, 1),): 1})

    @classmethod
    def from_exponents(cls, exponents: Mapping[str, int], coeff=1) -> LaurentPoly:
        """Single-term polynomial coeff * prod(var**exp)."""
        return cls({monomial(exponents): coeff})

    # -- inspection --------------------------------------------------------

    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(mono, 0)

    def variables(self) -> frozenset[str]:
        return frozenset(v for mono in self._terms for v, _ in mono)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({EMPTY_MONOMIAL: other})
        return None

    def __add__(self, other) -> LaurentPoly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in q._terms.items():
            s = out.get(mono, 0) + coeff
            if s:
                out[mono] = normalize_scalar(s)
            else:
                out.pop(mono, None)
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = {m: -c for m, c in self._terms.items()}
        return result

    def __sub__(self, other) -> LaurentPoly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> LaurentPoly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            result = LaurentPoly.__new__(LaurentPoly)
            result._terms = {
                m: normalize_scalar(c * other) for m, c in self._terms.items()
            }
            return result
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = monomial_mul(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = {m: normalize_scalar(c) for m, c in out.items()}
        return result

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inv(self) -> LaurentPoly:
        """Multiplicative inverse; only single-term polynomials have one."""
        if len(self._terms) != 1:
            raise NonInvertibleElement(
                f"not invertible in the Laurent ring: {self}"
            )
        (mono, coeff), = self._terms.items()
        inv_mono = tuple((v, -e) for v, e in mono)
        return LaurentPoly({inv_mono: Fraction(1, 1) / coeff})

    # -- calculus and evaluation --------------------------------------------

    def partial(self, var: str) -> LaurentPoly:
        """Formal partial derivative (Laurent power rule, exponents may be
        negative)."""
        out: dict[Monomial, Scalar] = {}
        for mono, coeff in self._terms.items():
            for i, (v, e) in enumerate(mono):
                if v == var:
                    rest = mono[:i] + (((v, e - 1),) if e != 1 else ()) + mono[i + 1:]
                    # d/dx is injective on monomials containing x: no merging,
                    # and dropping/decrementing one exponent keeps sort order.
                    out[rest] = normalize_scalar(coeff * e)
                    break
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point.

        Every variable of the polynomial must be assigned, and variables
        with negative exponents must get nonzero values.
        """
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = Fraction(coeff)
            for var, e in mono:
                if var not in assignment:
                    raise MissingVariable(f"no value for variable {var!r}")
                x = Fraction(assignment[var])
                if x == 0 and e < 0:
                    raise ZeroToNegativePower(
                        f"variable {var!r} is 0 but appears with exponent {e}"
                    )
                value *= x ** e
            total += value
        return total

    def substitute(self, assignment: Mapping[str, "LaurentPoly"]) -> LaurentPoly:
        """Substitute polynomials for variables (used for symbol renaming)."""
        out = LaurentPoly.zero()
        for mono, coeff in self._terms.items():
            term = LaurentPoly.constant(coeff)
            for var, e in mono:
                base = assignment.get(var, LaurentPoly.variable(var))
                term = term * base ** e
            out = out + term
        return out

    # -- ordering and rendering ---------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in graded-lex order: total degree descending, then the
        exponent vector (variables sorted by name) ascending."""
        names = sorted(self.variables())
        index = {v: i for i, v in enumerate(names)}

        def key(item):
            mono, _ = item
            vec = [0] * len(names)
            for v, e in mono:
                vec[index[v]] = e
            return (-monomial_degree(mono), tuple(vec))

        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for var, e in mono:
                factors.append(var if e == 1 else f"{var}^{e}")
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if coeff > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self._terms == q._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


class _Parser:
    """Recursive-descent parser for `2*u^3*v^-1 + 1/2*w - 4` style text."""

    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                col = len(text) - len(stripped) + 1
                raise PolyParseError(f"unexpected character {stripped[0]!r}", line, col)
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1) + 1))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2) + 1))
            else:
                self.tokens.append(("op", m.group(3), m.start(3) + 1))
            pos = m.end()

    def error(self, message: str, column: int | None = None):
        if column is None:
            column = self.tokens[self.pos][2] if self.pos < len(self.tokens) else len(self.text) + 1
        raise PolyParseError(message, self.line, column)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("end", "", len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def accept_op(self, *ops: str) -> str | None:
        kind, value, _ = self.peek()
        if kind == "op" and value in ops:
            self.pos += 1
            return value
        return None

    def parse_poly(self) -> LaurentPoly:
        sign = 1
        if self.accept_op("-"):
            sign = -1
        else:
            self.accept_op("+")
        result = self.parse_term() * sign
        while True:
            op = self.accept_op("+", "-")
            if op is None:
                break
            term = self.parse_term()
            result = result + (term if op == "+" else -term)
        kind, value, col = self.peek()
        if kind != "end":
            self.error(f"unexpected {value!r}")
        return result

    def parse_term(self) -> LaurentPoly:
        result = self.parse_factor()
        while self.accept_op("*"):
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> LaurentPoly:
        kind, value, col = self.take()
        if kind == "num":
            num = int(value)
            if self.accept_op("/"):
                dkind, dvalue, dcol = self.take()
                if dkind != "num":
                    self.error("expected denominator after '/'", dcol)
                den = int(dvalue)
                if den == 0:
                    self.error("zero denominator", dcol)
                return LaurentPoly.constant(Fraction(num, den))
            return LaurentPoly.constant(num)
        if kind == "name":
            exponent = 1
            if self.accept_op("^"):
                neg = bool(self.accept_op("-"))
                ekind, evalue, ecol = self.take()
                if ekind != "num":
                    self.error("expected integer exponent after '^'", ecol)
                exponent = -int(evalue) if neg else int(evalue)
            return LaurentPoly.from_exponents({value: exponent})
        self.error("expected a number or variable", col)


def parse_poly(text: str, line: int = 1) -> LaurentPoly:
    """Parse polynomial text: `^` integer exponents, `*` products,
    integer or p/q coefficients, `+`/`-` sums."""
    return _Parser(text, line).parse_poly()
