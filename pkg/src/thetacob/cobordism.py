"""Named series and class families of the theta-divisor calculus.

The universal exponential series

    beta(z) = z + sum_{n>=1} t_n z^{n+1}/(n+1)!

encodes the Chern-Dold character over the theta basis.  Its compositional
inverse is the universal logarithm whose coefficients carry the projective
space classes [CP^n]/(n+1); the multiplicative inverse of beta(z)/z
carries the dual classes v_n, and log(beta(z)/z) the power-sum companions
w_n.  decompose() reconstructs any weight-n class from its normal Chern
numbers, decompose_tangent() from the tangent ones via the v family.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .core import Partition, partition_factorial, partitions_of, bernoulli
from .gradedring import GradedPoly, ONE, ZERO, t
from .series import TruncSeries
from .symfun import ChernVector, FrameBasisError


@lru_cache(maxsize=None)
def beta(order: int) -> TruncSeries:
    """The universal exponential series over the theta basis, to z^order."""
    if order < 2:
        raise ValueError("order must be >= 2")
    coeffs = [ZERO, ONE]
    for n in range(1, order):
        coeffs.append(t(n) * Fraction(1, factorial(n + 1)))
    return TruncSeries(coeffs, order=order, grade_shift=1)


@lru_cache(maxsize=None)
def beta_over_z(order: int) -> TruncSeries:
    """The Q-form companion 1 + sum t_n z^n/(n+1)! (grade shift 0)."""
    return beta(order + 1).divide_by_z()


@lru_cache(maxsize=None)
def mischenko_log(order: int) -> TruncSeries:
    """Compositional inverse of beta: the universal logarithm series."""
    return beta(order).revert()


@lru_cache(maxsize=None)
def cp_classes(order: int) -> tuple[GradedPoly, ...]:
    """Projective-space classes in the theta basis, cp[n] for n < order.

    cp[n] is (n+1) times the coefficient of u^{n+1} in the logarithm, so
    cp[1] = -t1 and cp[2] = 3/2*t1^2 - 1/2*t2; cp[0] is the unit.
    """
    lg = mischenko_log(order + 1)
    out = [ONE]
    for n in range(1, order):
        out.append((n + 1) * lg[n + 1])
    return tuple(out)


def _jacobi_trudi_det(matrix: list[list[GradedPoly]]) -> GradedPoly:
    """Determinant by minor expansion, memoised over column subsets."""
    n = len(matrix)
    memo: dict[frozenset, GradedPoly] = {}

    def minor(r: int, cols: frozenset) -> GradedPoly:
        if r == n:
            return ONE
        if cols in memo:
            return memo[cols]
        acc = ZERO
        for idx, c in enumerate(sorted(cols)):
            entry = matrix[r][c]
            if entry.is_zero():
                continue
            sub = minor(r + 1, cols - {c})
            term = entry * sub
            acc = acc + (term if idx % 2 == 0 else -term)
        memo[cols] = acc
        return acc

    return minor(0, frozenset(range(n)))


@lru_cache(maxsize=None)
def v_classes(order: int) -> tuple[GradedPoly, ...]:
    """Dual classes v_n for n <= order, v[0] = 1.

    Computed twice -- from the coefficientwise inverse of beta(z)/z and
    from the h-in-terms-of-e determinant with e_n = t_n/(n+1)! -- and the
    two routes are asserted equal before returning.  A mismatch would mean
    a broken series or determinant kernel, so it stops the computation.
    """
    qv = beta_over_z(order).inv()
    from_series = [ONE]
    for n in range(1, order + 1):
        from_series.append(((-1) ** n * factorial(n + 1)) * qv[n])

    e = [ONE] + [t(n) * Fraction(1, factorial(n + 1)) for n in range(1, order + 1)]

    def e_at(idx: int) -> GradedPoly:
        return e[idx] if 0 <= idx <= order else ZERO

    for n in range(1, order + 1):
        matrix = [[e_at(1 - i + j) for j in range(n)] for i in range(n)]
        h_n = _jacobi_trudi_det(matrix)
        det_value = factorial(n + 1) * h_n
        if det_value != from_series[n]:
            raise AssertionError(
                f"v_{n}: series inversion and determinant disagree; "
                f"{from_series[n]} vs {det_value}"
            )
    return tuple(from_series)


@lru_cache(maxsize=None)
def w_classes(order: int) -> tuple[GradedPoly, ...]:
    """Power-sum companions w_n = n! [z^n] log(beta(z)/z); w[0] = 0."""
    lw = beta_over_z(order).log()
    out = [ZERO]
    for n in range(1, order + 1):
        out.append(factorial(n) * lw[n])
    return tuple(out)


def q_multiplier(n: int) -> int:
    """Denominator of (n+1) B_n: the minimal integer q with q*v_n integral.

    Odd n > 1 give B_n = 0 and q = 1; q_2 = 2 and q_4 = 6.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return ((n + 1) * bernoulli(n)).denominator


def theta_monomial(lam) -> GradedPoly:
    """The product class t^lam for a partition lam."""
    return GradedPoly.monomial(Partition(lam))


def decompose(c: ChernVector) -> GradedPoly:
    """Rebuild a weight-n class from its normal monomial Chern numbers:
    sum over partitions of c_lam * t^lam / (lam+1)!.
    """
    if c.frame != "normal" or c.basis != "monomial":
        raise FrameBasisError("decompose needs a normal-frame, monomial-basis vector")
    acc = ZERO
    for lam in partitions_of(c.weight):
        val = c.values[lam]
        if val:
            acc = acc + theta_monomial(lam) * (val / partition_factorial(lam))
    return acc


def decompose_tangent(c: ChernVector) -> GradedPoly:
    """Rebuild a weight-n class from tangent monomial Chern numbers:
    (-1)^n sum over partitions of c_lam * v^lam / (lam+1)!.

    Agrees with decompose() on the normal data of the same class.
    """
    if c.frame != "tangent" or c.basis != "monomial":
        raise FrameBasisError("decompose_tangent needs a tangent-frame, monomial-basis vector")
    n = c.weight
    vs = v_classes(n)
    acc = ZERO
    for lam in partitions_of(n):
        val = c.values[lam]
        if not val:
            continue
        vprod = ONE
        for part in lam:
            vprod = vprod * vs[part]
        acc = acc + vprod * (((-1) ** n) * val / partition_factorial(lam))
    return acc


def adams_novikov(k: int, order: int) -> TruncSeries:
    """The k-th Adams operation on the universal series: (1/k) beta(k beta^{-1}(u))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lg = mischenko_log(order)
    return beta(order).compose(lg.scale(Fraction(k))).scale(Fraction(1, k))


def psi_on_class(k: int, p: GradedPoly) -> GradedPoly:
    """Grading action of the k-th Adams operation: t_n -> k^n t_n."""
    if k == 0:
        raise ValueError("k must be nonzero")
    return p.scale_generators(lambda n: Fraction(k ** n))


def theta_power_class(n: int, k: int) -> GradedPoly:
    """Class of the degree-k analogue of the n-th theta divisor: k^{n+1} t_n."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    return t(n) * Fraction(k ** (n + 1))


# -- standard reference Chern data for cross-checks ----------------------------------


def cp_tangent_chern_vector(n: int) -> ChernVector:
    """Tangent monomial Chern numbers of complex projective n-space.

    Textbook data from the total Chern class (1+z)^{n+1}: all n+1 Chern
    roots equal the hyperplane class, so the monomial number for lam is
    the count of distinct arrangements of lam in n+1 slots.
    """
    values = {}
    for lam in partitions_of(n):
        mult = 1
        remaining = n + 1
        for part in sorted(set(lam)):
            m = lam.count(part)
            mult *= comb(remaining, m)
            remaining -= m
        values[lam] = Fraction(mult)
    return ChernVector(n, "tangent", "monomial", values)


def product_chern_vector(a: ChernVector, b: ChernVector) -> ChernVector:
    """Chern numbers of a product manifold from those of the factors.

    Valid in the monomial basis in either frame (both frames obey the same
    splitting rule): the value on lam is the sum over weight-respecting
    splittings lam = mu + nu of the factor values.
    """
    if a.basis != "monomial" or b.basis != "monomial" or a.frame != b.frame:
        raise FrameBasisError("product rule needs monomial vectors in a common frame")
    from .core import splittings

    n = a.weight + b.weight
    values = {lam: Fraction(0) for lam in partitions_of(n)}
    for lam in partitions_of(n):
        total = Fraction(0)
        for mu, nu in splittings(lam):
            if mu.weight == a.weight and nu.weight == b.weight:
                total += a.values[mu] * b.values[nu]
        values[lam] = total
    return ChernVector(n, a.frame, "monomial", values)
