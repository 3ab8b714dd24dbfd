"""Iwahori-Weyl groups of quasi-split groups over local fields, combinatorially.

Affine root systems, the affine and extended affine Weyl groups, unramified
Galois descent with its two length functions, and Bruhat cell counts.
"""

from .affine_weyl import (
    AffineWeylElement,
    bruhat_leq,
    from_word,
    inversion_set,
    length,
    multiply,
    reduced_word,
    reflect,
    translation,
)
from .cells import (
    QPolynomial,
    ball_poincare,
    cell_size,
    demazure_product_count,
    enumerate_double_cosets,
    min_rep,
    parabolic,
)
from .descent import (
    build_descent,
    d_values,
    embed,
    length_F,
    length_nr,
    restrict_element,
    restrict_root,
    standard_action,
)
from .extended_weyl import ExtendedElement, build_extended, kottwitz
from .parsing import GroupSpec, build_group, format_element, parse_element, parse_group_spec
from .root_data import AffineRoot, build_affine_system, build_finite_system

__version__ = "0.1.0"
