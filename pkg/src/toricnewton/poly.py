"""Sparse multivariate polynomials over Q and the text grammar used for input.

Grammar (whitespace ignored)::

    poly   := term (('+'|'-') term)*        a leading '-' is allowed
    term   := [coeff '*'] factor ('*' factor)* | coeff
    factor := var ['^' nat]
    coeff  := ['-'] nat ['/' nat]
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class PolyParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the offending character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Poly:
    """Immutable polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients;
    ``variables`` names the indeterminates positionally.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Monomial, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {n} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c) -> Poly:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Sequence[int], c=1) -> Poly:
        return cls(variables, {tuple(exp): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> Poly:
        i = list(variables).index(name)
        return cls.monomial(variables, [int(j == i) for j in range(len(variables))])

    # basic protocol --------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variables")
            return other
        return Poly.constant(self.variables, other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.variables, {e: c * a for e, a in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly.constant(self.variables, 1)
        for _ in range(k):
            out = out * self
        return out

    # calculus and evaluation -------------------------------------------------
    def derivative(self, name: str) -> Poly:
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly(self.variables, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term *= Fraction(x) ** k
            total += term
        return total

    def substitute(self, values: Mapping[int, object]) -> Poly:
        """Substitute constants for the variables at the given positions."""
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            coeff = Fraction(c)
            exp = list(e)
            for i, val in values.items():
                coeff *= Fraction(val) ** e[i]
                exp[i] = 0
            exp = tuple(exp)
            out[exp] = out.get(exp, 0) + coeff
        return Poly(self.variables, out)

    def with_variables(self, variables: Sequence[str], positions: Sequence[int] | None = None) -> Poly:
        """Re-embed into a new variable list; ``positions[i]`` is where old var i goes."""
        variables = tuple(variables)
        if positions is None:
            positions = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for i, k in enumerate(e):
                if k and positions[i] is None:
                    raise ValueError("cannot drop a variable that occurs")
                if positions[i] is not None:
                    new[positions[i]] += k
            out[tuple(new)] = c
        return Poly(variables, out)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # printing ----------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in lexicographically descending exponent order."""
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, vars={list(self.variables)})"


def _format_monomial(variables: Sequence[str], exp: Monomial) -> str:
    parts = []
    for name, k in zip(variables, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Render in the input grammar; the output re-parses to the same value."""
    if not p.terms:
        return "0"
    chunks = []
    for i, (exp, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _format_monomial(p.variables, exp)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            if m.group(3) not in "+-*/^":
                raise PolyParseError(f"unexpected character {m.group(3)!r}", m.start(3))
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise PolyParseError(f"expected {want!r}", self.pos())
        self.i += 1
        return tok

    def accept_op(self, value: str) -> bool:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == value:
            self.i += 1
            return True
        return False

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolyParseError("empty input", 0)
        n = len(self.variables)
        terms: dict[Monomial, Fraction] = {}
        sign = -1 if self.accept_op("-") else 1
        while True:
            exp, c = self.term()
            terms[exp] = terms.get(exp, 0) + sign * c
            if self.accept_op("+"):
                sign = 1
            elif self.accept_op("-"):
                sign = -1
            elif self.peek() is None:
                break
            else:
                raise PolyParseError("expected '+' or '-'", self.pos())
        return Poly(self.variables, {e: c for e, c in terms.items() if c} or {(0,) * n: 0})

    def term(self) -> tuple[Monomial, Fraction]:
        exp = [0] * len(self.variables)
        coeff = Fraction(1)
        negate = self.accept_op("-")
        tok = self.peek()
        if negate or (tok and tok[0] == "num"):
            coeff = -self.coeff() if negate else self.coeff()
            if not self.accept_op("*"):
                return tuple(exp), coeff
        self.factor(exp)
        while self.accept_op("*"):
            self.factor(exp)
        return tuple(exp), coeff

    def coeff(self) -> Fraction:
        num = int(self.take("num")[1])
        if self.accept_op("/"):
            pos = self.pos()
            den = int(self.take("num")[1])
            if den == 0:
                raise PolyParseError("zero denominator", pos)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exp: list[int]) -> None:
        tok = self.peek()
        if tok is None or tok[0] != "name":
            raise PolyParseError("expected a variable", self.pos())
        self.i += 1
        if tok[1] not in self.variables:
            raise PolyParseError(f"unknown variable {tok[1]!r}", tok[2])
        k = 1
        if self.accept_op("^"):
            tok_e = self.peek()
            if tok_e is None or tok_e[0] != "num":
                raise PolyParseError("malformed exponent", self.pos())
            self.i += 1
            k = int(tok_e[1])
        exp[self.variables.index(tok[1])] += k


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse ``text`` over the declared ``variables`` into an exact polynomial."""
    if len(set(variables)) != len(variables):
        raise ValueError("variable names must be unique")
    return _Parser(text, variables).parse()


def lcm_monomial(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def polys_over(variables: Sequence[str], polys: Iterable[Poly]) -> list[Poly]:
    return [p.with_variables(variables) for p in polys]
