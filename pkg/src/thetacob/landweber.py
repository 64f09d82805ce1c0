"""Landweber-Novikov operations on the theta-class ring.

The operation indexed by a one-part partition (k) sends the generator t_n
to the intersection class of the n-th theta divisor with k of its generic
translates, computed as the residue (n+1)! [z^{n+1}] beta^{k+1}; every
other partition kills generators.  Products follow the Cartan rule

    S_lam(x y) = sum over splittings lam = (mu, nu) of S_mu(x) S_nu(y),

each ordered pair of sub-multisets counted once.  These rules make the
family {t^lam/(lam+1)!} the dual basis of {S_lam} under aug(S_lam(.)),
which is what the quantisation / dequantisation round trip exercises.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import EMPTY, Partition, partition_factorial, partitions_of, splittings
from .gradedring import GradedPoly, ONE, ZERO, format_monomial
from .series import TruncSeries, residue_extract
from .cobordism import beta


@lru_cache(maxsize=None)
def intersection_class(n: int, k: int) -> GradedPoly:
    """The class of the intersection of the n-th theta divisor with k
    generic translates: (n+1)! [z^{n+1}] beta^{k+1}.  Integral with
    positive coefficients; equals (n+1)! for k = n.
    """
    return residue_extract(beta(max(n + 1, 2)), n, k)


def ln_on_generator(lam: Partition, n: int) -> GradedPoly:
    """S_lam(t_n): zero unless lam is empty or a one-part partition (k), k <= n."""
    lam = Partition(lam)
    if lam == EMPTY:
        return GradedPoly.gen(n)
    if lam.length != 1:
        return ZERO
    k = lam[0]
    if k > n:
        return ZERO
    return intersection_class(n, k)


def _ln_on_factors(lam: Partition, factors: tuple[int, ...]) -> GradedPoly:
    if not factors:
        return ONE if lam == EMPTY else ZERO
    head, tail = factors[0], factors[1:]
    acc = ZERO
    for mu, nu in splittings(lam):
        left = ln_on_generator(mu, head)
        if left.is_zero():
            continue
        right = _ln_on_factors(nu, tail)
        if right.is_zero():
            continue
        acc = acc + left * right
    return acc


def ln_apply(lam, p: GradedPoly) -> GradedPoly:
    """Apply the operation S_lam to a polynomial in the theta classes."""
    lam = Partition(lam)
    acc = ZERO
    for mono, coeff in p.items():
        acc = acc + coeff * _ln_on_factors(lam, tuple(mono))
    return acc


def ln_apply_series(lam, f: TruncSeries) -> TruncSeries:
    """Apply S_lam to every coefficient of a series.

    On the universal exponential series the one-part operation (k) must
    reproduce beta^{k+1}; partitions of length > 1 give zero.
    """
    lam = Partition(lam)
    shift = f.grade_shift + lam.weight if f.grade_shift is not None else None
    return TruncSeries([ln_apply(lam, c) for c in f.coeffs], order=f.order, grade_shift=shift)


def dual_pairing(lam, mu) -> Fraction:
    """aug(S_lam(t^mu)) / (mu+1)!; the Kronecker delta on equal weights."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.weight != mu.weight:
        raise ValueError(f"weight mismatch: |{lam}| != |{mu}|")
    image = ln_apply(lam, GradedPoly.monomial(mu))
    return image.aug() / partition_factorial(mu)


# -- quantisation ---------------------------------------------------------------------


class TensorElement:
    """Element of the theta ring tensored with its dual-operation side.

    Terms are keyed by pairs (mu, nu): mu a monomial in the t generators,
    nu a monomial in an independent family t'.  The dual side is stored
    with its canonical rescaling already applied, so dequantisation is the
    plain substitution t'_n -> t_n on the second leg composed with the
    augmentation on the first.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[Partition, Partition], Fraction] = {}
        if terms:
            for (mu, nu), c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                key = (Partition(mu), Partition(nu))
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean

    @classmethod
    def from_pair(cls, left: GradedPoly, right: GradedPoly) -> "TensorElement":
        terms = {}
        for mu, a in left.items():
            for nu, b in right.items():
                terms[(mu, nu)] = terms.get((mu, nu), Fraction(0)) + a * b
        return cls(terms)

    def items(self):
        def key(kv):
            (mu, nu), _ = kv
            return (mu.weight + nu.weight, mu.weight, mu, nu)
        return sorted(self._terms.items(), key=key)

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement(out)

    def __mul__(self, other):
        from .core import partition_union

        out: dict[tuple[Partition, Partition], Fraction] = {}
        for (m1, n1), c1 in self._terms.items():
            for (m2, n2), c2 in other._terms.items():
                key = (partition_union(m1, m2), partition_union(n1, n2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return TensorElement(out)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def is_zero(self):
        return not self._terms

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for (mu, nu), c in self.items():
            left = format_monomial(mu, "t")
            right = _format_primed(nu)
            body = f"{left} (x) {right}"
            if c == 1:
                chunks.append(body)
            elif c == -1:
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{c}*{body}")
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self):
        return f"TensorElement({self.__str__()!r})"


def _format_primed(nu: Partition) -> str:
    if not nu:
        return "1"
    pieces = []
    for idx in sorted(set(nu)):
        e = nu.count(idx)
        pieces.append(f"t{idx}'" + (f"^{e}" if e > 1 else ""))
    return "*".join(pieces)


def quantize(p: GradedPoly) -> TensorElement:
    """x -> sum over partitions lam of S_lam(x) (x) t'^lam/(lam+1)!.

    The lam = empty term is x (x) 1.  The map is an algebra homomorphism,
    and it doubles as the point form of the quantum character: the image
    of x (x) 1 under the deformed character map is exactly this sum.
    """
    top = p.top_weight()
    terms: dict[tuple[Partition, Partition], Fraction] = {}
    for w in range(top + 1):
        for lam in partitions_of(w):
            image = ln_apply(lam, p)
            if image.is_zero():
                continue
            scale = Fraction(1, partition_factorial(lam))
            for mu, c in image.items():
                key = (mu, lam)
                terms[key] = terms.get(key, Fraction(0)) + c * scale
    return TensorElement(terms)


def dequantize(T: TensorElement) -> GradedPoly:
    """Augmentation on the t side, substitution t'_n -> t_n on the other."""
    acc = ZERO
    for (mu, nu), c in T._terms.items():
        if mu == EMPTY:
            acc = acc + GradedPoly.monomial(nu) * c
    return acc


# -- vector-field realisation -----------------------------------------------------------


class Diff1Field:
    """First-order derivation realising S_(1) or S_(2) on the coordinate
    ring of formal line diffeomorphisms x + sum a_k x^{k+1}.

    S_(1) sends a_k to k a_{k-1} and S_(2) sends a_k to (k-1) a_{k-2},
    with a_0 read as 1.  Polynomials reuse GradedPoly with generators
    interpreted as the coordinates a_k.
    """

    def __init__(self, k: int):
        if k not in (1, 2):
            raise ValueError("only the generating fields k = 1, 2 are defined")
        self.k = k

    def on_generator(self, j: int) -> GradedPoly:
        if self.k == 1:
            coeff, idx = j, j - 1
        else:
            coeff, idx = j - 1, j - 2
        if coeff == 0 or idx < 0:
            return ZERO
        if idx == 0:
            return GradedPoly.const(coeff)
        return coeff * GradedPoly.gen(idx)

    def apply(self, p: GradedPoly) -> GradedPoly:
        acc = ZERO
        for mono, c in p.items():
            for value in sorted(set(mono)):
                m = mono.count(value)
                rest = list(mono)
                rest.remove(value)
                acc = acc + (c * m) * GradedPoly.monomial(rest) * self.on_generator(value)
        return acc


def diff1_commutator(max_index: int):
    """Images of a_1..a_max under the commutator [S_(1), S_(2)].

    Returned as a list of (k, polynomial); the observed pattern is
    -(k-2) a_{k-3} with a_0 = 1, reported descriptively.
    """
    s1, s2 = Diff1Field(1), Diff1Field(2)
    out = []
    for k in range(1, max_index + 1):
        ak = GradedPoly.gen(k)
        image = s1.apply(s2.apply(ak)) - s2.apply(s1.apply(ak))
        out.append((k, image))
    return out
