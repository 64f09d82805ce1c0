"""Sparse polynomial ring Q[t1, t2, ...] graded by weight(t_n) = n.

This ring models the subring of the rationalised complex-cobordism
coefficient ring spanned by products of theta-divisor classes, with t_n
the class of the n-th theta divisor and t0 identified with the unit.
Monomials are Partition keys: (2,1,1) stands for t2*t1^2.

The canonical text form (used by the CLI and golden files) lists terms in
descending graded-lex order -- higher weight first, then descending
lexicographic order on the exponent partition -- with generators inside a
monomial printed in ascending index order, e.g. ``-t2 + 3/2*t1^2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .core import EMPTY, Partition, partition_union


class MissingGeneratorError(ValueError):
    """Raised by substitute() when a generator has no assigned value."""


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be an int or Fraction, got {type(c).__name__}")


class GradedPoly:
    """Immutable sparse polynomial with exact rational coefficients.

    Zero coefficients are never stored.  Instances are value objects: all
    arithmetic returns new polynomials, so sharing across threads is safe.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict[Partition, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce_coeff(c)
                if c == 0:
                    continue
                if not isinstance(mono, Partition):
                    mono = Partition(mono)
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if clean[mono] == 0:
                    del clean[mono]
        object.__setattr__(self, "_terms", clean)

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "GradedPoly":
        return cls({EMPTY: Fraction(c)})

    @classmethod
    def gen(cls, n: int) -> "GradedPoly":
        """The generator t_n (n >= 1); t_0 is the unit by convention."""
        if n == 0:
            return cls.const(1)
        return cls({Partition((n,)): Fraction(1)})

    @classmethod
    def monomial(cls, mu, coeff=1) -> "GradedPoly":
        return cls({Partition(mu): Fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0].weight, kv[0]), reverse=True)

    def coeff(self, mu) -> Fraction:
        return self._terms.get(Partition(mu), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == EMPTY for m in self._terms)

    def is_integral(self) -> bool:
        """True iff every coefficient has denominator 1."""
        return all(c.denominator == 1 for c in self._terms.values())

    def aug(self) -> Fraction:
        """Augmentation: the coefficient of the unit monomial."""
        return self._terms.get(EMPTY, Fraction(0))

    def top_weight(self) -> int:
        return max((m.weight for m in self._terms), default=0)

    def homogeneous_component(self, w: int) -> "GradedPoly":
        return GradedPoly({m: c for m, c in self._terms.items() if m.weight == w})

    def is_homogeneous(self, w: int) -> bool:
        return all(m.weight == w for m in self._terms)

    def generators_used(self) -> set[int]:
        return {part for m in self._terms for part in m}

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: dict[Partition, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = partition_union(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial power must be a non-negative integer")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __bool__(self):
        return bool(self._terms)

    __hash__ = None

    # -- homomorphisms -------------------------------------------------------

    def substitute(self, assign) -> Fraction:
        """Image under the ring homomorphism t_n -> assign(n).

        ``assign`` is a mapping or a callable; for mappings a missing
        generator raises MissingGeneratorError naming it.
        """
        if callable(assign):
            get = assign
        else:
            def get(n, _m=assign):
                try:
                    return _m[n]
                except KeyError:
                    raise MissingGeneratorError(f"no value assigned for generator t{n}") from None
        total = Fraction(0)
        for mono, c in self._terms.items():
            val = Fraction(c)
            for part in mono:
                val *= Fraction(get(part))
            total += val
        return total

    def map_coeff(self, fn) -> "GradedPoly":
        return GradedPoly({m: fn(c) for m, c in self._terms.items()})

    def scale_generators(self, factor_of: Callable[[int], Fraction]) -> "GradedPoly":
        """Ring endomorphism t_n -> factor_of(n) * t_n."""
        out = {}
        for mono, c in self._terms.items():
            val = c
            for part in mono:
                val *= Fraction(factor_of(part))
            if val:
                out[mono] = val
        return _raw(out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"GradedPoly({format_poly(self)!r})"


def _raw(terms: dict) -> GradedPoly:
    p = GradedPoly()
    object.__setattr__(p, "_terms", terms)
    return p


def _as_poly(x):
    if isinstance(x, GradedPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return GradedPoly.const(x)
    return NotImplemented


ZERO = GradedPoly()
ONE = GradedPoly.const(1)


def t(n: int) -> GradedPoly:
    """Shorthand for the generator t_n."""
    return GradedPoly.gen(n)


# -- text form ----------------------------------------------------------------


def format_monomial(mu: Partition, symbol: str = "t") -> str:
    if not mu:
        return "1"
    pieces = []
    for idx in sorted(set(mu)):
        e = mu.count(idx)
        pieces.append(f"{symbol}{idx}" + (f"^{e}" if e > 1 else ""))
    return "*".join(pieces)


def format_poly(p: GradedPoly, symbol: str = "t") -> str:
    """Canonical text form, e.g. ``-t2 + 3/2*t1^2`` (see module docstring)."""
    items = p.items()
    if not items:
        return "0"
    chunks = []
    for i, (mu, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not mu:
            body = str(mag)
        elif mag == 1:
            body = format_monomial(mu, symbol)
        else:
            body = f"{mag}*{format_monomial(mu, symbol)}"
        if i == 0:
            chunks.append(body if sign == "+" else "-" + body)
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


# -- parser --------------------------------------------------------------------
#
# expr   := ['+'|'-'] term { ('+'|'-') term }
# term   := factor { '*' factor }
# factor := atom [ '^' NAT ]
# atom   := NAT [ '/' NAT ] | 't' NAT | '(' expr ')'


class ExprSyntaxError(ValueError):
    """Raised when a polynomial expression cannot be parsed."""


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
            continue
        if ch == "t":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprSyntaxError(f"generator index expected after 't' at position {i}")
            tokens.append(("gen", int(text[i + 1:j])))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self, kind=None):
        k, v = self.tokens[self.pos]
        if kind is not None and k != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {k!r}")
        self.pos += 1
        return v

    def expr(self) -> GradedPoly:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take() == "-" else 1
        acc = sign * self.term()
        while self.peek() in "+-":
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> GradedPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> GradedPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take("num")
            return base ** exp
        return base

    def atom(self) -> GradedPoly:
        kind = self.peek()
        if kind == "num":
            num = self.take()
            if self.peek() == "/":
                self.take()
                den = self.take("num")
                if den == 0:
                    raise ExprSyntaxError("zero denominator")
                return GradedPoly.const(Fraction(num, den))
            return GradedPoly.const(num)
        if kind == "gen":
            return GradedPoly.gen(self.take())
        if kind == "(":
            self.take()
            inner = self.expr()
            if self.peek() != ")":
                raise ExprSyntaxError("missing closing parenthesis")
            self.take()
            return inner
        raise ExprSyntaxError(f"unexpected token {kind!r}")


def parse_poly(text: str) -> GradedPoly:
    """Parse the canonical text form back into a GradedPoly."""
    parser = _Parser(_tokenize(text))
    result = parser.expr()
    if parser.peek() != "end":
        raise ExprSyntaxError("trailing input after expression")
    return result
