import random
from fractions import Fraction
from math import factorial

import pytest

from thetacob.core import Partition, partitions_of
from thetacob.symfun import (
    BASES,
    ChernVector,
    FrameBasisError,
    IncompleteVectorError,
    SymFunExpr,
    chern_product_to_monomial,
    convert_basis,
    involution_matrix,
    m_expansion,
    monomial_to_chern_product,
    normal_to_tangent,
    sign_involution,
    tangent_to_normal,
    to_normal_monomial,
)

P = Partition


def test_m_expansion_small_goldens():
    assert m_expansion("e", P((2,))) == {P((1, 1)): 1}
    assert m_expansion("h", P((2,))) == {P((2,)): 1, P((1, 1)): 1}
    assert m_expansion("p", P((2,))) == {P((2,)): 1}
    assert m_expansion("e", P((1, 1))) == {P((2,)): 1, P((1, 1)): 2}


def test_convert_basis_goldens():
    e2 = SymFunExpr.element("e", (2,))
    assert convert_basis(e2, "m").terms == {P((1, 1)): 1}
    # 2x2 Jacobi-Trudi determinant: h2 = e1^2 - e2
    h2 = SymFunExpr.element("h", (2,))
    assert convert_basis(h2, "e").terms == {P((1, 1)): 1, P((2,)): -1}
    # Newton identity: p2 = e1^2 - 2 e2
    p2 = SymFunExpr.element("p", (2,))
    assert convert_basis(p2, "e").terms == {P((1, 1)): 1, P((2,)): -2}


def test_all_pairwise_conversions_consistent():
    rng = random.Random(31)
    for n in range(1, 9):
        parts = partitions_of(n)
        terms = {rng.choice(parts): Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                 for _ in range(3)}
        for src in BASES:
            x = SymFunExpr(src, n, dict(terms))
            for dst in BASES:
                direct = convert_basis(x, dst)
                for mid in BASES:
                    via = convert_basis(convert_basis(x, mid), dst)
                    assert via == direct
                assert convert_basis(direct, src) == x


def test_sign_involution_basics():
    p1 = SymFunExpr.element("p", (1,))
    assert sign_involution(p1).terms == {P((1,)): -1}
    e1 = SymFunExpr.element("e", (1,))
    assert sign_involution(e1).terms == {P((1,)): -1}
    e2 = SymFunExpr.element("e", (2,))
    h2_in_e = convert_basis(SymFunExpr.element("h", (2,)), "e")
    assert sign_involution(e2) == h2_in_e
    # e_k -> (-1)^k h_k in general
    for k in range(1, 7):
        img = sign_involution(SymFunExpr.element("e", (k,)))
        hk = convert_basis(SymFunExpr.element("h", (k,)), "e")
        scaled = SymFunExpr("e", k, {lam: (-1) ** k * c for lam, c in hk.terms.items()})
        assert img == scaled


def test_sign_involution_is_ring_homomorphism_on_products():
    # involution(e_lam) must equal the product of involution(e_parts)
    rng = random.Random(37)
    for _ in range(20):
        n = rng.randint(2, 8)
        lam = rng.choice(partitions_of(n))
        img = convert_basis(sign_involution(SymFunExpr.element("e", lam)), "m")
        # product of images of the parts, multiplied in the m basis via e-expansion
        sign = (-1) ** n
        hlam = convert_basis(SymFunExpr.element("h", lam), "m")
        expected = SymFunExpr("m", n, {mu: sign * c for mu, c in hlam.terms.items()})
        assert img == expected


def test_sign_involution_involutive():
    rng = random.Random(41)
    for n in range(1, 8):
        parts = partitions_of(n)
        terms = {rng.choice(parts): Fraction(rng.randint(-4, 4)) for _ in range(3)}
        for basis in BASES:
            x = SymFunExpr(basis, n, dict(terms))
            assert sign_involution(sign_involution(x)) == x


def test_involution_matrix_integral_and_involutive():
    for n in range(1, 7):
        A = involution_matrix(n)
        size = len(A)
        for i in range(size):
            for j in range(size):
                assert A[i][j].denominator == 1
                prod = sum(A[i][k] * A[k][j] for k in range(size))
                assert prod == (1 if i == j else 0)


def test_chern_vector_validation():
    with pytest.raises(IncompleteVectorError):
        ChernVector.build(2, "tangent", "monomial", {(2,): 1})
    with pytest.raises(ValueError):
        ChernVector.build(1, "sideways", "monomial", {(1,): 1})


def test_tangent_normal_exchange_theta_data():
    # the 2n-dimensional theta locus: tangent products all (-1)^n (n+1)!,
    # normal data concentrated on the one-part partition
    for n in range(1, 7):
        val = Fraction((-1) ** n * factorial(n + 1))
        tangent_prod = ChernVector.build(
            n, "tangent", "chern_product", {lam: val for lam in partitions_of(n)})
        mono = chern_product_to_monomial(tangent_prod)
        normal = tangent_to_normal(mono)
        for lam in partitions_of(n):
            expected = factorial(n + 1) if lam == P((n,)) else 0
            assert normal.values[lam] == expected, (n, lam)


def test_tangent_normal_weight_one_and_two():
    c1 = ChernVector.build(1, "tangent", "monomial", {(1,): -2})
    assert tangent_to_normal(c1).values[P((1,))] == 2
    theta2 = ChernVector.build(2, "tangent", "chern_product", {(2,): 6, (1, 1): 6})
    mono = chern_product_to_monomial(theta2)
    assert mono.values == {P((2,)): -6, P((1, 1)): 6}
    normal = tangent_to_normal(mono)
    assert normal.values == {P((2,)): 6, P((1, 1)): 0}


def test_exchange_involutive_on_random_vectors():
    rng = random.Random(43)
    for n in range(1, 6):
        values = {lam: Fraction(rng.randint(-30, 30)) for lam in partitions_of(n)}
        c = ChernVector.build(n, "tangent", "monomial", values)
        back = normal_to_tangent(tangent_to_normal(c))
        assert back.values == c.values and back.frame == "tangent"


def test_chern_product_conversions():
    # c1^2 = m_(2) + 2 m_(1,1) and c2 = m_(1,1)
    mono = ChernVector.build(2, "tangent", "monomial", {(2,): 3, (1, 1): 3})
    prod = monomial_to_chern_product(mono)
    assert prod.values[P((1, 1))] == 3 + 2 * 3  # c1^2
    assert prod.values[P((2,))] == 3            # c2
    assert chern_product_to_monomial(prod) == mono
    c1 = ChernVector.build(1, "tangent", "chern_product", {(1,): 7})
    assert chern_product_to_monomial(c1).values[P((1,))] == 7


def test_to_normal_monomial_paths():
    theta2 = ChernVector.build(2, "tangent", "chern_product", {(2,): 6, (1, 1): 6})
    direct = to_normal_monomial(theta2)
    assert direct.frame == "normal" and direct.basis == "monomial"
    already = ChernVector.build(2, "normal", "monomial", direct.values)
    assert to_normal_monomial(already) == already
    with pytest.raises(FrameBasisError):
        tangent_to_normal(theta2)  # wrong basis
