"""Exact theta-divisor calculus for complex cobordism.

The coefficient ring of rational complex cobordism is modelled on the
polynomial ring in theta-divisor classes t_n (weight n).  This package
computes the universal exponential series beta(z) and its logarithm, the
dual class families v_n / w_n / cp_n, Landweber-Novikov operator actions,
the quantisation of the character map, Hirzebruch genera, topological
invariants of theta divisors, and the full system of Chern-number
divisibility congruences -- all in exact rational arithmetic -- plus a
floating-point Weierstrass module verifying the real-analytic elliptic
constructions.
"""

from .core import Partition, Rat, bernoulli, catalan, partition_factorial, partitions_of
from .gradedring import GradedPoly, format_poly, parse_poly, t
from .series import BiTruncSeries, TruncSeries, fgl, fgl_axiom_residuals, residue_extract
from .symfun import (
    ChernVector,
    SymFunExpr,
    chern_product_to_monomial,
    convert_basis,
    monomial_to_chern_product,
    normal_to_tangent,
    sign_involution,
    tangent_to_normal,
    to_normal_monomial,
)
from .cobordism import (
    adams_novikov,
    beta,
    beta_over_z,
    cp_classes,
    decompose,
    decompose_tangent,
    mischenko_log,
    psi_on_class,
    q_multiplier,
    theta_power_class,
    v_classes,
    w_classes,
)
from .landweber import (
    Diff1Field,
    TensorElement,
    dequantize,
    diff1_commutator,
    dual_pairing,
    intersection_class,
    ln_apply,
    ln_apply_series,
    quantize,
)
from .genera import (
    CongruenceSystem,
    GenusSpec,
    check_chern_vector,
    congruence_system,
    custom_genus,
    euler_genus,
    genus_of_poly,
    genus_of_theta,
    l_genus,
    theta_invariants,
    todd_genus,
)

__version__ = "0.1.0"

__all__ = [
    "Partition", "Rat", "bernoulli", "catalan", "partition_factorial", "partitions_of",
    "GradedPoly", "format_poly", "parse_poly", "t",
    "BiTruncSeries", "TruncSeries", "fgl", "fgl_axiom_residuals", "residue_extract",
    "ChernVector", "SymFunExpr", "chern_product_to_monomial", "convert_basis",
    "monomial_to_chern_product", "normal_to_tangent", "sign_involution",
    "tangent_to_normal", "to_normal_monomial",
    "adams_novikov", "beta", "beta_over_z", "cp_classes", "decompose",
    "decompose_tangent", "mischenko_log", "psi_on_class", "q_multiplier",
    "theta_power_class", "v_classes", "w_classes",
    "Diff1Field", "TensorElement", "dequantize", "diff1_commutator", "dual_pairing",
    "intersection_class", "ln_apply", "ln_apply_series", "quantize",
    "CongruenceSystem", "GenusSpec", "check_chern_vector", "congruence_system",
    "custom_genus", "euler_genus", "genus_of_poly", "genus_of_theta", "l_genus",
    "theta_invariants", "todd_genus",
]
