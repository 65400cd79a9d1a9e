"""Exact multivariate (Laurent) polynomials with rational coefficients.

A :class:`Polynomial` is an immutable map from integer exponent vectors to
nonzero :class:`~fractions.Fraction` coefficients. Arithmetic is exact;
floating point only appears when a polynomial is evaluated at float points.

>>> f = parse("x^4 + y^4 + 1 - 3*x*y", ["x", "y"])
>>> f.evaluate((1, 1))
Fraction(0, 1)
>>> f.gradient()[0].to_string(["x", "y"])
'4*x^3 - 3*y'
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

__all__ = [
    "Exponent",
    "ParseError",
    "Polynomial",
    "descartes_bound",
    "default_variables",
    "glex_key",
    "parse",
]


def glex_key(e: Exponent) -> tuple:
    """Graded-lex sort key: total degree first, then lexicographic."""
    return (sum(e), e)


def default_variables(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _ipow(base: float, k: int) -> float:
    # exponent-by-squaring; negative k handled by the caller
    result = 1.0
    while k:
        if k & 1:
            result *= base
        base *= base
        k >>= 1
    return result


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables.

    Parameters
    ----------
    terms : mapping or iterable of (exponent, coefficient) pairs
        Duplicate exponents are summed and zero coefficients dropped.
    nvars : int, optional
        Number of variables. Required when ``terms`` is empty.
    """

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if nvars is None:
                nvars = len(exp)
            elif len(exp) != nvars:
                raise ValueError(f"exponent {exp} has arity {len(exp)}, expected {nvars}")
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(coef)
        if nvars is None or nvars < 1:
            raise ValueError("number of variables must be given and positive")
        self._nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, value, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coef=1) -> "Polynomial":
        return cls({tuple(exponent): coef})

    # -- basic accessors -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self._nvars)

    def is_zero(self) -> bool:
        return not self._terms

    def is_laurent(self) -> bool:
        """True if some exponent is negative."""
        return any(e < 0 for exp in self._terms for e in exp)

    def sorted_terms(self, descending: bool = True) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: glex_key(t[0]), reverse=descending)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ValueError("polynomials have different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(list(self._terms.items()) + list(other._terms.items()), self._nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        pairs = []
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                pairs.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return Polynomial(pairs, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Polynomial.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self._nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, tuple(self.sorted_terms())))
        return self._hash

    def shift(self, exponent: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial ``x^exponent`` (negative entries allowed)."""
        return self.map_exponents(lambda e: tuple(a + b for a, b in zip(e, exponent)))

    def map_exponents(self, fn) -> "Polynomial":
        """Apply ``fn`` to every exponent vector; coefficients are kept."""
        pairs = [(tuple(fn(e)), c) for e, c in self._terms.items()]
        nvars = len(pairs[0][0]) if pairs else self._nvars
        return Polynomial(pairs, nvars)

    # -- calculus and evaluation ----------------------------------------------

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``.

        Exact when every coordinate is an ``int`` or ``Fraction``; otherwise
        the evaluation is done in floats.
        """
        if len(point) != self._nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self._nvars}")
        exact = all(isinstance(p, (int, Fraction)) for p in point)
        if exact:
            pt = [Fraction(p) for p in point]
            total = Fraction(0)
            for exp, c in self._terms.items():
                term = c
                for x, k in zip(pt, exp):
                    if k < 0 and x == 0:
                        raise ValueError("zero coordinate with negative exponent")
                    term *= x**k
                total += term
            return total
        pt = [float(p) for p in point]
        total = 0.0
        for exp, c in self._terms.items():
            term = float(c)
            for x, k in zip(pt, exp):
                if k >= 0:
                    term *= _ipow(x, k)
                elif x == 0.0:
                    raise ValueError("zero coordinate with negative exponent")
                else:
                    term /= _ipow(x, -k)
            total += term
        return total

    __call__ = evaluate

    def partial(self, i: int) -> "Polynomial":
        pairs = []
        for exp, c in self._terms.items():
            if exp[i] != 0:
                new = list(exp)
                new[i] -= 1
                pairs.append((tuple(new), c * exp[i]))
        return Polynomial(pairs, self._nvars)

    def gradient(self) -> tuple["Polynomial", ...]:
        return tuple(self.partial(i) for i in range(self._nvars))

    def square_substitute(self) -> "Polynomial":
        """The polynomial ``f(x_1^2, ..., x_n^2)``."""
        return self.map_exponents(lambda e: tuple(2 * a for a in e)) if self._terms else self

    # -- printing -------------------------------------------------------------

    def to_string(self, variables: Sequence[str] | None = None) -> str:
        """Canonical text, terms in descending graded-lex order."""
        if variables is None:
            variables = default_variables(self._nvars)
        if len(variables) != self._nvars:
            raise ValueError("wrong number of variable names")
        if not self._terms:
            return "0"
        out = []
        for idx, (exp, coef) in enumerate(self.sorted_terms()):
            factors = []
            for name, k in zip(variables, exp):
                if k == 1:
                    factors.append(name)
                elif k != 0:
                    factors.append(f"{name}^{k}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                out.append(("-" if coef < 0 else "") + body)
            else:
                out.append(("- " if coef < 0 else "+ ") + body)
        return " ".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# -- parsing -------------------------------------------------------------------


class ParseError(ValueError):
    """Raised on malformed polynomial text; ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", text, start)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.index = {name: i for i, name in enumerate(variables)}
        self.n = len(variables)
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self) -> Polynomial:
        pairs = []
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            exp, coef = self.term()
            pairs.append((exp, sign * coef))
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            self.error(f"unexpected token {tok[1]!r}")
        return Polynomial(pairs, self.n)

    def term(self):
        exp = [0] * self.n
        coef = Fraction(1)
        tok = self.peek()
        if tok[0] == "num":
            coef = self.coeff()
        elif tok[0] == "name":
            self.factor(exp)
        else:
            self.error("expected a coefficient or variable")
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            if self.peek()[0] != "name":
                self.error("expected a variable after '*'")
            self.factor(exp)
        return tuple(exp), coef

    def coeff(self) -> Fraction:
        tok = self.take()
        value = Fraction(tok[1])
        if "." in tok[1]:
            return value
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            self.take()
            den = self.peek()
            if den[0] != "num" or "." in den[1]:
                self.error("expected an unsigned integer denominator")
            self.take()
            if int(den[1]) == 0:
                self.error("zero denominator", den)
            value /= int(den[1])
        return value

    def factor(self, exp: list[int]):
        tok = self.take()
        if tok[1] not in self.index:
            self.error(f"unknown variable {tok[1]!r}", tok)
        i = self.index[tok[1]]
        power = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            ptok = self.peek()
            if ptok[0] != "num" or "." in ptok[1]:
                self.error("non-integer exponent")
            self.take()
            power = int(ptok[1])
        exp[i] += power


def parse(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse polynomial text over the ordered ``variables``.

    Raises :class:`ParseError` with a byte offset on malformed input.
    """
    variables = list(variables)
    if not variables or len(set(variables)) != len(variables):
        raise ValueError("variables must be nonempty and distinct")
    return _Parser(text, variables).parse()


def descartes_bound(f: Polynomial) -> int:
    """Number of sign variations of a univariate polynomial's coefficients."""
    if f.nvars != 1:
        raise ValueError("descartes_bound needs a univariate polynomial")
    signs = [c > 0 for _, c in sorted(f.terms.items(), reverse=True)]
    return sum(a != b for a, b in zip(signs, signs[1:]))
