"""Hirzebruch genera, theta-divisor invariants, and Chern-number congruences.

A genus is determined by a characteristic series Q(z) = 1 + a_1 z + ...;
its value on the n-th theta class is (n+1)! [z^{n+1}] (z / Q(z)), and on
an arbitrary polynomial class it acts as the induced ring homomorphism.
Presets cover the Todd genus (Q = z/(1 - e^{-z})), the signature
(Q = z/tanh z) and the Euler characteristic (Q = 1 + z), all built from
exact Bernoulli data.

The congruence generator applies every operation S_mu of weight <= n to
the weight-n decomposition formula and takes the Todd genus, producing
rational functionals that must be integral on the normal Chern numbers of
any stably complex manifold.  The integral vectors form a full-rank
sublattice of Z^{p(n)}, canonicalised by its Hermite normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd

from .core import EMPTY, Partition, Rat, bernoulli, catalan, partition_factorial, partitions_of
from .gradedring import GradedPoly
from .series import TruncSeries, TruncationError
from .symfun import (
    ChernVector,
    _to_m_matrix,
    involution_matrix,
    to_normal_monomial,
)
from .cobordism import theta_monomial
from .landweber import ln_apply
from . import lattices


class GenusSpec:
    """A genus given by its characteristic series Q with Q(0) = 1."""

    def __init__(self, q: TruncSeries, name: str = "custom"):
        if not q.coeffs[0].is_constant() or q.coeffs[0].aug() != 1:
            raise ValueError("characteristic series must start with 1")
        for c in q.coeffs:
            if not c.is_constant():
                raise ValueError("characteristic series must have rational coefficients")
        self.q = q
        self.name = name
        self._inv = q.inv()

    @property
    def order(self) -> int:
        return self.q.order

    def coefficients(self) -> list[Fraction]:
        return [c.aug() for c in self.q.coeffs]


@lru_cache(maxsize=None)
def todd_genus(order: int) -> GenusSpec:
    """Q = z/(1 - e^{-z}) = sum (-1)^n B_n z^n / n!, exactly."""
    vals = [Fraction((-1) ** n) * bernoulli(n) / factorial(n) for n in range(order + 1)]
    return GenusSpec(TruncSeries.from_rationals(vals, order), name="todd")


@lru_cache(maxsize=None)
def l_genus(order: int) -> GenusSpec:
    """Q = z/tanh z, from the Bernoulli form of the tanh series."""
    tanh_over_z = [Fraction(0)] * (order + 1)
    tanh_over_z[0] = Fraction(1)
    for k in range(0, order // 2 + 1):
        # coefficient of z^{2k+1} in tanh lands at z^{2k} in tanh/z
        coeff = Fraction(2 ** (2 * k + 2) * (2 ** (2 * k + 2) - 1)) * bernoulli(2 * k + 2) \
            / factorial(2 * k + 2)
        if 2 * k <= order:
            tanh_over_z[2 * k] = coeff
    series = TruncSeries.from_rationals(tanh_over_z, order)
    return GenusSpec(series.inv(), name="l")


@lru_cache(maxsize=None)
def euler_genus(order: int) -> GenusSpec:
    """Q = 1 + z: the genus computing the Euler characteristic."""
    return GenusSpec(TruncSeries.from_rationals([1, 1], order), name="euler")


def custom_genus(coeffs, order=None, name="custom") -> GenusSpec:
    vals = [Fraction(c) for c in coeffs]
    if order is None:
        order = len(vals) - 1
    return GenusSpec(TruncSeries.from_rationals(vals, order), name=name)


def genus_preset(name: str, order: int) -> GenusSpec:
    table = {"todd": todd_genus, "l": l_genus, "euler": euler_genus}
    if name not in table:
        raise ValueError(f"unknown genus {name!r}; expected one of {sorted(table)}")
    return table[name](order)


def genus_of_theta(spec: GenusSpec, n: int) -> Rat:
    """Value on the n-th theta class: (n+1)! [z^{n+1}] (z / Q(z))."""
    if n > spec.order:
        raise TruncationError(f"genus series truncated at order {spec.order}, need {n}")
    return factorial(n + 1) * spec._inv[n].aug()


def genus_of_poly(spec: GenusSpec, p: GradedPoly) -> Rat:
    """Ring-homomorphic extension t_n -> genus_of_theta(spec, n)."""
    return p.substitute(lambda n: genus_of_theta(spec, n))


# -- topological invariants of theta divisors ---------------------------------------------


@dataclass(frozen=True)
class ThetaInvariants:
    n: int
    k: int
    betti: tuple
    euler: int
    signature: Rat | None
    chern_tangent: ChernVector | None
    chern_normal: ChernVector | None


def theta_normal_vector(n: int) -> ChernVector:
    """Normal monomial Chern numbers of the n-th theta divisor.

    The normal bundle is a line bundle whose top power evaluates to
    (n+1)!, so only the one-part partition survives.
    """
    values = {lam: Fraction(0) for lam in partitions_of(n)}
    values[Partition((n,))] = Fraction(factorial(n + 1))
    return ChernVector(n, "normal", "monomial", values)


def theta_tangent_product_vector(n: int) -> ChernVector:
    """Tangent Chern-class products of the n-th theta divisor.

    The total tangent Chern class is 1/(1 + D) with D^n evaluating to
    (n+1)!, so every product c_{i_1}...c_{i_k} equals (-1)^n (n+1)!.
    """
    val = Fraction((-1) ** n * factorial(n + 1))
    values = {lam: val for lam in partitions_of(n)}
    return ChernVector(n, "tangent", "chern_product", values)


def middle_betti(n: int, k: int = 1) -> int:
    """Middle Betti number: k^{n+1} (n+1)! + n/(n+2) * binom(2n+2, n+1).

    The correction term equals n * C_{n+1} with C the Catalan numbers.
    """
    frac = Fraction(n, n + 2) * comb(2 * n + 2, n + 1)
    assert frac.denominator == 1
    value = k ** (n + 1) * factorial(n + 1) + int(frac)
    assert int(frac) == n * catalan(n + 1)
    return value


def theta_signature(n: int, k: int = 1) -> Rat:
    """Signature for even n: 2^{n+2} (2^{n+2} - 1) k^{n+1} B_{n+2} / (n+2)."""
    if n % 2:
        raise ValueError("signature defined for even n")
    return Fraction(2 ** (n + 2) * (2 ** (n + 2) - 1) * k ** (n + 1)) * bernoulli(n + 2) / (n + 2)


def theta_invariants(n: int, k: int = 1) -> ThetaInvariants:
    """Betti numbers, Euler characteristic, signature and Chern data of the
    degree-k theta locus in dimension 2n.

    Betti numbers below the middle agree with the ambient abelian variety
    (binomials), the middle one follows from the Euler characteristic
    (-1)^n k^{n+1} (n+1)!.  Chern vectors are only reported for k = 1.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    betti = [comb(2 * n + 2, j) for j in range(n)]
    betti.append(middle_betti(n, k))
    betti += [comb(2 * n + 2, 2 * n - j) for j in range(n + 1, 2 * n + 1)]
    euler = (-1) ** n * k ** (n + 1) * factorial(n + 1)
    sig = theta_signature(n, k) if n % 2 == 0 else None
    tangent = theta_tangent_product_vector(n) if k == 1 else None
    normal = theta_normal_vector(n) if k == 1 else None
    return ThetaInvariants(n, k, tuple(betti), euler, sig, tangent, normal)


# -- congruence generator -----------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceSystem:
    """Integrality conditions on weight-n normal monomial Chern vectors.

    functionals: rows (mu, {lam: coeff}); a vector passes when every row
    evaluates to an integer.  basis_hnf spans the sublattice of integer
    vectors passing all rows; elementary_divisors describe the quotient.
    """

    weight: int
    functionals: tuple
    basis_hnf: tuple
    elementary_divisors: tuple

    def evaluate(self, c: ChernVector):
        """All (mu, value) evaluations of a vector (converted if needed)."""
        c = to_normal_monomial(c)
        if c.weight != self.weight:
            raise ValueError(f"vector weight {c.weight} != system weight {self.weight}")
        out = []
        for mu, row in self.functionals:
            val = sum((row.get(lam, Fraction(0)) * c.values[lam] for lam in c.values), Fraction(0))
            out.append((mu, val))
        return out

    def check(self, c: ChernVector):
        """Verdict: (passed, failing) with failing = [(mu, value), ...]."""
        failing = [(mu, val) for mu, val in self.evaluate(c) if val.denominator != 1]
        return (not failing, failing)

    def accepts_row(self, row: list[int]) -> bool:
        parts = partitions_of(self.weight)
        vec = {lam: Fraction(x) for lam, x in zip(parts, row)}
        for _, frow in self.functionals:
            val = sum((frow.get(lam, Fraction(0)) * vec[lam] for lam in parts), Fraction(0))
            if val.denominator != 1:
                return False
        return True


@lru_cache(maxsize=None)
def congruence_system(n: int) -> CongruenceSystem:
    """Generate all divisibility conditions on weight-n normal Chern numbers.

    Row for the partition mu: lam -> Td(S_mu(t^lam)) / (lam+1)!.  Because
    every operation image of a manifold class is again a manifold class
    and the Todd genus is integral, each row must evaluate to an integer.
    """
    parts = partitions_of(n)
    todd = todd_genus(n + 1)
    functionals = []
    for w in range(n + 1):
        for mu in partitions_of(w):
            row = {}
            for lam in parts:
                image = ln_apply(mu, theta_monomial(lam))
                val = genus_of_poly(todd, image) / partition_factorial(lam)
                if val:
                    row[lam] = val
            functionals.append((mu, row))
    rows = [[row.get(lam, Fraction(0)) for lam in parts] for _, row in functionals]
    basis = lattices.integrality_lattice(rows, len(parts))
    divisors = lattices.smith_diagonal([list(r) for r in basis])
    return CongruenceSystem(
        weight=n,
        functionals=tuple((mu, dict(row)) for mu, row in functionals),
        basis_hnf=tuple(tuple(r) for r in basis),
        elementary_divisors=tuple(divisors),
    )


def check_chern_vector(c: ChernVector, sys: CongruenceSystem):
    """Evaluate every functional on the vector; integral means pass."""
    return sys.check(c)


# -- classical low-dimension congruence lists ----------------------------------------------


def classical_congruences(n: int):
    """The classical congruences on tangent Chern-class products in
    complex dimension n <= 4 (c1 even; c2 + c1^2 = 0 mod 12; ...).

    Returns (label, modulus, {partition: coeff}) triples, partitions
    indexing products (so (1,1) means c1^2).
    """
    P = Partition
    if n == 1:
        return [("c1 mod 2", 2, {P((1,)): 1})]
    if n == 2:
        return [("c2 + c1^2 mod 12", 12, {P((2,)): 1, P((1, 1)): 1})]
    if n == 3:
        return [
            ("c1*c2 mod 24", 24, {P((2, 1)): 1}),
            ("c3 mod 2", 2, {P((3,)): 1}),
            ("c1^3 mod 2", 2, {P((1, 1, 1)): 1}),
        ]
    if n == 4:
        return [
            (
                "-c4 + c1*c3 + 3*c2^2 + 4*c1^2*c2 - c1^4 mod 720",
                720,
                {P((4,)): -1, P((3, 1)): 1, P((2, 2)): 3, P((2, 1, 1)): 4, P((1, 1, 1, 1)): -1},
            ),
            ("c1^2*c2 + 2*c1^4 mod 12", 12, {P((2, 1, 1)): 1, P((1, 1, 1, 1)): 2}),
            ("-2*c4 + c1*c3 mod 4", 4, {P((4,)): -2, P((3, 1)): 1}),
        ]
    raise ValueError("classical list available for 1 <= n <= 4")


def tangent_product_functional_to_normal_monomial(row: dict, n: int) -> dict:
    """Rewrite a functional on tangent product values as one on normal
    monomial values (product values = e-to-m matrix applied to tangent
    monomial values, which are the involution applied to normal ones).
    """
    parts = partitions_of(n)
    E = _to_m_matrix(n, "e")
    A = involution_matrix(n)
    coeffs = [Fraction(row.get(lam, 0)) for lam in parts]
    # pull back through E then through A (both act on value vectors)
    through_e = [sum((coeffs[i] * E[i][j] for i in range(len(parts))), Fraction(0))
                 for j in range(len(parts))]
    through_a = [sum((through_e[i] * A[i][j] for i in range(len(parts))), Fraction(0))
                 for j in range(len(parts))]
    return {lam: c for lam, c in zip(parts, through_a) if c}


def classical_system(n: int) -> CongruenceSystem:
    """The classical congruence list as a system on normal monomial vectors."""
    parts = partitions_of(n)
    functionals = []
    for label, modulus, row in classical_congruences(n):
        converted = tangent_product_functional_to_normal_monomial(row, n)
        scaled = {lam: c / modulus for lam, c in converted.items()}
        functionals.append((EMPTY, scaled))
    rows = [[row.get(lam, Fraction(0)) for lam in parts] for _, row in functionals]
    basis = lattices.integrality_lattice(rows, len(parts))
    divisors = lattices.smith_diagonal([list(r) for r in basis])
    return CongruenceSystem(
        weight=n,
        functionals=tuple((mu, dict(row)) for mu, row in functionals),
        basis_hnf=tuple(tuple(r) for r in basis),
        elementary_divisors=tuple(divisors),
    )


def lattice_contained_in(inner: CongruenceSystem, outer: CongruenceSystem) -> bool:
    """True iff every vector of the inner lattice passes the outer system."""
    return all(outer.accepts_row(list(row)) for row in inner.basis_hnf)


def integrality_multiplier(p: GradedPoly) -> int:
    """Least q such that q*p passes every Todd-after-operation test.

    By the classical integrality criterion this is the least multiple of p
    lying in the integral cobordism ring.  Computed as the lcm of the
    denominators of Td(S_mu(p)) over all mu up to the weight of p.
    """
    top = p.top_weight()
    todd = todd_genus(top + 1)
    q = 1
    for w in range(top + 1):
        for mu in partitions_of(w):
            val = genus_of_poly(todd, ln_apply(mu, p))
            den = val.denominator
            q = q * den // gcd(q, den)
    return q
