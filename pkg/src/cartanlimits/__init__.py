"""Conjugacy limits of the Cartan subgroup of SL(3, R), computed exactly.

The hyperreals are modelled by Puiseux rational functions in an infinitesimal
``t`` (:mod:`cartanlimits.nonarch`).  A conjugator P is read as a nonstandard
triangle (:mod:`cartanlimits.triangle`) and, independently, through the
shadow of the conjugated Cartan algebra in the Grassmannian
(:mod:`cartanlimits.limits`).
"""

from .classes import ConfigClass, LimitClass
from .limits import (
    GAMMA,
    characteristic_configuration,
    classify_abelian_subalgebra,
    conjugated_cartan_plane,
    duality,
    full_classify,
    grassmann_shadow,
    limit_reachable,
    normalizer_dims,
    one_param_path,
)
from .linalg import Plane2, normalizer_dimension, plane_from_plucker, plucker
from .nonarch import HReal, MagnitudeClass, T, parse_hreal, print_hreal, t_power
from .sl2 import Sl2LimitClass, classify_sl2, g_delta_family
from .triangle import (
    classify,
    classify_matrix,
    count_infinitesimal,
    eq1_matrix,
    normalize,
    shadow_config,
    triangle_from_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "LimitClass", "ConfigClass", "Sl2LimitClass", "HReal", "MagnitudeClass", "Plane2", "T",
    "GAMMA", "parse_hreal", "print_hreal", "t_power",
    "triangle_from_matrix", "normalize", "classify", "classify_matrix", "count_infinitesimal",
    "shadow_config", "eq1_matrix",
    "conjugated_cartan_plane", "grassmann_shadow", "classify_abelian_subalgebra",
    "characteristic_configuration", "duality", "limit_reachable", "one_param_path",
    "full_classify", "normalizer_dims", "normalizer_dimension", "plucker", "plane_from_plucker",
    "g_delta_family", "classify_sl2",
]
