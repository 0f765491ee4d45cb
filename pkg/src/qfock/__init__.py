"""Exact computations on q-deformed Fock spaces and q-Gaussian algebras."""
from .fock import (
    Basis,
    Contraction,
    FockVector,
    first_quantization,
    inner_product,
    inner_product_bruteforce,
    norm_sq,
    project_pure_e,
)
from .mixing import (
    MixingSeries,
    basis_orthonormality_check,
    bimodularity_check,
    cond_exp_vector,
    mixing_coefficient,
    mixing_series,
)
from .ops import (
    annihilate,
    apply_W,
    apply_W_recursive,
    apply_wick,
    create,
    q_commutation_defect,
    second_quantization_vector,
    shuffle_representatives,
    trace,
    wick_expand,
)
from .scalar import QParam, parse_q, q_binomial, q_factorial, q_int

__version__ = "0.1.0"
