"""Truncated power series with GradedPoly coefficients.

TruncSeries holds f_0..f_N for a series sum f_m z^m; every operation is
exact and never reads beyond the truncation order.  Two normalisations
coexist in this package and are never converted silently:

* beta-form: exponential-type series like z + sum t_n z^{n+1}/(n+1)!,
  tagged with grade_shift = 1 (coefficient of z^m is weight-homogeneous
  of weight m-1);
* Q-form: characteristic series 1 + sum a_n z^n, grade_shift = 0.

BiTruncSeries is the bivariate analogue truncated by total degree; it
carries the formal group law F(u, v) = beta(beta^{-1}(u) + beta^{-1}(v)).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .gradedring import GradedPoly, ONE, ZERO, _as_poly, format_poly


class SeriesError(ValueError):
    pass


class NonInvertibleSeriesError(SeriesError):
    """Series has no multiplicative inverse (constant term not a nonzero rational)."""


class CompositionDomainError(SeriesError):
    """Inner series of a composition must have zero constant term."""


class NotNormalizedError(SeriesError):
    """Reversion needs f_0 = 0 and f_1 = 1."""


class TruncationError(SeriesError):
    """Requested coefficient index exceeds the truncation order."""


def _to_poly(c) -> GradedPoly:
    p = _as_poly(c)
    if p is NotImplemented:
        p = _as_poly(Fraction(c))
    return p


class TruncSeries:
    """Series sum_{m=0}^{N} f_m z^m with GradedPoly coefficients.

    ``grade_shift = s`` asserts that f_m is weight-homogeneous of weight
    m - s; the assertion is checked at construction, so it stays true
    through every derived series that can carry it.
    """

    __slots__ = ("coeffs", "order", "grade_shift")

    def __init__(self, coeffs, order=None, grade_shift=None):
        coeffs = [_to_poly(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        if grade_shift is not None:
            for m, f in enumerate(coeffs):
                if not f.is_homogeneous(m - grade_shift):
                    raise ValueError(
                        f"coefficient of z^{m} is not weight-homogeneous of weight {m - grade_shift}"
                    )
        self.grade_shift = grade_shift

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order):
        return cls([], order=order)

    @classmethod
    def const(cls, c, order):
        return cls([_to_poly(c)], order=order, grade_shift=None)

    @classmethod
    def identity(cls, order):
        """The series z."""
        return cls([ZERO, ONE], order=order, grade_shift=1)

    @classmethod
    def from_rationals(cls, values, order):
        return cls([GradedPoly.const(Fraction(v)) for v in values], order=order)

    # -- inspection ---------------------------------------------------------

    def __getitem__(self, m: int) -> GradedPoly:
        if m < 0 or m > self.order:
            raise TruncationError(f"coefficient z^{m} outside truncation order {self.order}")
        return self.coeffs[m]

    def coefficient(self, m: int) -> GradedPoly:
        return self[m]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def truncated(self, order: int, grade_shift="keep") -> "TruncSeries":
        if grade_shift == "keep":
            grade_shift = self.grade_shift
        return TruncSeries(self.coeffs[: order + 1], order=order, grade_shift=grade_shift)

    # -- linear structure -----------------------------------------------------

    def _common_order(self, other):
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = TruncSeries.const(other, self.order)
        n = self._common_order(other)
        shift = self.grade_shift if self.grade_shift == other.grade_shift else None
        return TruncSeries(
            [self.coeffs[m] + other.coeffs[m] for m in range(n + 1)], order=n, grade_shift=shift
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], order=self.order, grade_shift=self.grade_shift)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = TruncSeries.const(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        """Multiply every coefficient by a scalar (rational or polynomial)."""
        p = _to_poly(c)
        shift = self.grade_shift if p.is_constant() else None
        return TruncSeries([p * f for f in self.coeffs], order=self.order, grade_shift=shift)

    # -- multiplicative structure ------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GradedPoly)):
            return self.scale(other)
        n = self._common_order(other)
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        shift = None
        if self.grade_shift is not None and other.grade_shift is not None:
            shift = self.grade_shift + other.grade_shift
        return TruncSeries(out, order=n, grade_shift=shift)

    __rmul__ = __mul__

    def inv(self) -> "TruncSeries":
        """Multiplicative inverse: needs a nonzero rational constant term."""
        f0 = self.coeffs[0]
        if not f0.is_constant() or f0.is_zero():
            raise NonInvertibleSeriesError(
                "series inverse needs a nonzero constant rational leading coefficient"
            )
        c0 = Fraction(1) / f0.aug()
        out = [GradedPoly.const(c0)]
        for m in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, m + 1):
                fk = self.coeffs[k]
                if fk.is_zero():
                    continue
                acc = acc + fk * out[m - k]
            out.append(acc * (-c0))
        shift = -self.grade_shift if self.grade_shift is not None else None
        return TruncSeries(out, order=self.order, grade_shift=shift)

    def __pow__(self, k: int) -> "TruncSeries":
        if not isinstance(k, int):
            raise ValueError("series power must be an integer")
        if k < 0:
            return self.inv() ** (-k)
        result = TruncSeries.const(1, self.order)
        if self.grade_shift is not None:
            result = TruncSeries([ONE], order=self.order, grade_shift=0)
        base = self
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    def divide_by_z(self) -> "TruncSeries":
        """Shift down by one power of z; needs f_0 = 0.  Order drops by one."""
        if not self.coeffs[0].is_zero():
            raise SeriesError("cannot divide by z: nonzero constant term")
        shift = self.grade_shift - 1 if self.grade_shift is not None else None
        return TruncSeries(self.coeffs[1:], order=self.order - 1, grade_shift=shift)

    def mul_by_z(self) -> "TruncSeries":
        shift = self.grade_shift + 1 if self.grade_shift is not None else None
        return TruncSeries([ZERO] + self.coeffs, order=self.order + 1, grade_shift=shift)

    # -- composition ----------------------------------------------------------

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """f(g(z)) truncated; the inner series must have g_0 = 0."""
        if not g.coeffs[0].is_zero():
            raise CompositionDomainError("inner series must have zero constant term")
        n = self._common_order(g)
        acc = TruncSeries.const(self.coeffs[n], n)
        for m in range(n - 1, -1, -1):
            acc = acc * g.truncated(n) + self.coeffs[m]
        shift = None
        if g.grade_shift == 1 and self.grade_shift is not None:
            shift = self.grade_shift
        return TruncSeries(acc.coeffs, order=n, grade_shift=shift)

    def revert(self) -> "TruncSeries":
        """Compositional inverse g with f(g(z)) = g(f(z)) = z.

        Solved order by order: the coefficient of z^m in f(g) is g_m plus
        terms involving only g_1..g_{m-1}, so each step is a triangular
        read-off.  Needs f_0 = 0 and f_1 = 1.
        """
        if not self.coeffs[0].is_zero() or self.coeffs[1] != ONE:
            raise NotNormalizedError("reversion needs f_0 = 0 and f_1 = 1")
        n = self.order
        g = [ZERO, ONE]
        for m in range(2, n + 1):
            partial = TruncSeries(g + [ZERO], order=m)
            h = self.truncated(m, grade_shift=None).compose(partial)
            g.append(-h.coeffs[m])
        shift = 1 if self.grade_shift == 1 else None
        return TruncSeries(g, order=n, grade_shift=shift)

    # -- exp / log ---------------------------------------------------------------

    def exp(self) -> "TruncSeries":
        """Formal exponential; needs f_0 = 0."""
        if not self.coeffs[0].is_zero():
            raise SeriesError("exp needs zero constant term")
        n = self.order
        acc = TruncSeries.const(1, n)
        for k in range(n, 0, -1):
            acc = acc * self.scale(Fraction(1, k)) + 1
        shift = 0 if self.grade_shift == 0 else None
        return TruncSeries(acc.coeffs, order=n, grade_shift=shift)

    def log(self) -> "TruncSeries":
        """Formal logarithm; needs f_0 = 1."""
        if self.coeffs[0] != ONE:
            raise SeriesError("log needs constant term 1")
        n = self.order
        u = self - 1
        acc = TruncSeries.zero(n)
        for k in range(n, 0, -1):
            acc = acc * u + Fraction((-1) ** (k + 1), k)
        acc = acc * u
        shift = 0 if self.grade_shift == 0 else None
        return TruncSeries(acc.coeffs, order=n, grade_shift=shift)

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"TruncSeries({format_series(self)!r})"


def residue_extract(beta_series: TruncSeries, n: int, k: int) -> GradedPoly:
    """(n+1)! times the coefficient of z^{n+1} in beta_series^{k+1}.

    Applied to the universal exponential series this is the class of the
    intersection of a theta divisor with k of its generic translates.
    """
    if n + 1 > beta_series.order:
        raise TruncationError(f"need series order {n + 1}, have {beta_series.order}")
    if k < 0 or k > n:
        raise ValueError("need 0 <= k <= n")
    power = beta_series.truncated(n + 1) ** (k + 1)
    return factorial(n + 1) * power[n + 1]


def format_series(f: TruncSeries, var: str = "z", symbol: str = "t") -> str:
    """Canonical text form, e.g. ``z + 1/2*t1*z^2``.

    Multi-term coefficients are parenthesised; zero series prints "0".
    """
    chunks = []
    for m, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        body = format_poly(c, symbol)
        if m == 0:
            chunks.append(body)
            continue
        zpow = var if m == 1 else f"{var}^{m}"
        if c == ONE:
            piece = zpow
        elif len(c.items()) > 1 or body.startswith("-"):
            piece = f"({body})*{zpow}"
        else:
            piece = f"{body}*{zpow}"
        chunks.append(piece)
    return " + ".join(chunks) if chunks else "0"


# -- bivariate series -------------------------------------------------------------


class BiTruncSeries:
    """Series sum f_{m,l} u^m v^l truncated by total degree m + l <= N."""

    __slots__ = ("terms", "order")

    def __init__(self, terms=None, order=0):
        self.order = order
        clean: dict[tuple[int, int], GradedPoly] = {}
        if terms:
            for (m, l), c in terms.items():
                if m + l > order:
                    continue
                c = _to_poly(c)
                if not c.is_zero():
                    clean[(m, l)] = c
        self.terms = clean

    @classmethod
    def var(cls, which: int, order: int):
        key = (1, 0) if which == 0 else (0, 1)
        return cls({key: ONE}, order=order)

    def coefficient(self, m: int, l: int) -> GradedPoly:
        return self.terms.get((m, l), ZERO)

    def __add__(self, other):
        n = min(self.order, other.order)
        out = {}
        for key in set(self.terms) | set(other.terms):
            if key[0] + key[1] > n:
                continue
            s = self.terms.get(key, ZERO) + other.terms.get(key, ZERO)
            if not s.is_zero():
                out[key] = s
        return BiTruncSeries(out, order=n)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        p = _to_poly(c)
        return BiTruncSeries({k: p * v for k, v in self.terms.items()}, order=self.order)

    def __mul__(self, other):
        n = min(self.order, other.order)
        out: dict[tuple[int, int], GradedPoly] = {}
        for (m1, l1), a in self.terms.items():
            for (m2, l2), b in other.terms.items():
                m, l = m1 + m2, l1 + l2
                if m + l > n:
                    continue
                key = (m, l)
                cur = out.get(key, ZERO) + a * b
                if cur.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = cur
        return BiTruncSeries(out, order=n)

    def is_zero(self) -> bool:
        return not self.terms

    def is_symmetric(self) -> bool:
        return all(self.coefficient(l, m) == c for (m, l), c in self.terms.items())

    def transpose(self):
        return BiTruncSeries({(l, m): c for (m, l), c in self.terms.items()}, order=self.order)

    def restrict_second_to_zero(self) -> TruncSeries:
        """The univariate series F(u, 0)."""
        coeffs = [ZERO] * (self.order + 1)
        for (m, l), c in self.terms.items():
            if l == 0:
                coeffs[m] = c
        return TruncSeries(coeffs, order=self.order)

    def __eq__(self, other):
        if not isinstance(other, BiTruncSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        def key(kv):
            (m, l), _ = kv
            return (m + l, m, l)
        chunks = []
        for (m, l), c in sorted(self.terms.items(), key=key):
            mono = "*".join(filter(None, [
                ("u" if m == 1 else f"u^{m}") if m else "",
                ("v" if l == 1 else f"v^{l}") if l else "",
            ]))
            body = format_poly(c)
            if not mono:
                chunks.append(body)
            elif c == ONE:
                chunks.append(mono)
            elif len(c.items()) > 1 or body.startswith("-"):
                chunks.append(f"({body})*{mono}")
            else:
                chunks.append(f"{body}*{mono}")
        return " + ".join(chunks)


def eval_series_at(f: TruncSeries, x: BiTruncSeries) -> BiTruncSeries:
    """f(x) for a univariate f and a bivariate x with zero constant term."""
    if (0, 0) in x.terms:
        raise CompositionDomainError("inner series must have zero constant term")
    n = x.order
    acc = BiTruncSeries({(0, 0): f.coeffs[min(f.order, n)]}, order=n)
    for m in range(min(f.order, n) - 1, -1, -1):
        acc = acc * x + BiTruncSeries({(0, 0): f.coeffs[m]}, order=n)
    return acc


def fgl(beta_series: TruncSeries, order: int) -> BiTruncSeries:
    """The formal group law F(u, v) = beta(beta^{-1}(u) + beta^{-1}(v)).

    F is the universal group law of geometric cobordisms over the theta
    basis; its exponential is beta.
    """
    if order > beta_series.order:
        raise TruncationError("formal group order exceeds series truncation")
    b = beta_series.truncated(order)
    lg = b.revert()
    u = BiTruncSeries.var(0, order)
    v = BiTruncSeries.var(1, order)
    s = eval_series_at(lg, u) + eval_series_at(lg, v)
    return eval_series_at(b, s)


# -- n-variate helpers for the group-law axioms ------------------------------------


def _mv_mul(a, b, order):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if sum(e) > order:
                continue
            cur = out.get(e, ZERO) + c1 * c2
            if cur.is_zero():
                out.pop(e, None)
            else:
                out[e] = cur
    return out


def _mv_add(a, b):
    out = dict(a)
    for e, c in b.items():
        cur = out.get(e, ZERO) + c
        if cur.is_zero():
            out.pop(e, None)
        else:
            out[e] = cur
    return out


def eval_fgl_at(F: BiTruncSeries, x: dict, y: dict, nvars: int, order: int) -> dict:
    """F(x, y) where x, y are n-variate truncated series as exponent dicts."""
    zero_exp = (0,) * nvars
    if zero_exp in x or zero_exp in y:
        raise CompositionDomainError("arguments must have zero constant term")
    xpow = {zero_exp: ONE}
    xpowers = [xpow]
    for _ in range(order):
        xpow = _mv_mul(xpow, x, order)
        xpowers.append(xpow)
    acc: dict = {}
    ypow = {zero_exp: ONE}
    for l in range(order + 1):
        for m in range(order + 1 - l):
            c = F.coefficient(m, l)
            if not c.is_zero():
                scaled = {e: c * v for e, v in _mv_mul(xpowers[m], ypow, order).items()}
                acc = _mv_add(acc, scaled)
        ypow = _mv_mul(ypow, y, order)
    return {e: c for e, c in acc.items() if not c.is_zero()}


def fgl_axiom_residuals(beta_series: TruncSeries, order: int, assoc_order: int):
    """Residuals of the group-law axioms; all must be exactly zero.

    Returns a dict with keys 'unit', 'commutativity', 'associativity' and
    'exp_identity' (the defining identity F(beta(z), beta(w)) = beta(z+w)),
    each mapping to a boolean "residual is the zero series".
    """
    F = fgl(beta_series, order)

    unit = F.restrict_second_to_zero() - TruncSeries.identity(order)
    comm = F - F.transpose()

    u = {(1, 0, 0): ONE}
    v = {(0, 1, 0): ONE}
    w = {(0, 0, 1): ONE}
    Fa = eval_fgl_at(F, u, v, 3, assoc_order)
    left = eval_fgl_at(F, Fa, w, 3, assoc_order)
    Fb = eval_fgl_at(F, v, w, 3, assoc_order)
    right = eval_fgl_at(F, u, Fb, 3, assoc_order)
    assoc_diff = _mv_add(left, {e: -c for e, c in right.items()})

    b = beta_series.truncated(order)
    bz = eval_series_at(b, BiTruncSeries.var(0, order))
    bw = eval_series_at(b, BiTruncSeries.var(1, order))
    Fsub = eval_fgl_at(F, dict(bz.terms), dict(bw.terms), 2, order)
    zw = BiTruncSeries({(1, 0): ONE, (0, 1): ONE}, order=order)
    bzw = eval_series_at(b, zw)
    exp_diff = _mv_add(Fsub, {e: -c for e, c in bzw.terms.items()})

    return {
        "unit": unit.is_zero(),
        "commutativity": comm.is_zero(),
        "associativity": not assoc_diff,
        "exp_identity": not exp_diff,
    }
