"""Discrete E-function analysis on tori of the classical compact simple Lie groups.

Exact point/weight grids of any refinement level, even-Weyl-group folding,
E-function evaluation by roots of unity, and a discretely orthogonal
forward/inverse transform with verifiable Plancherel identity.
"""

from .errors import (EtorusError, GridMismatchError, InvalidTypeError,
                     InvariantViolationError, MalformedDataError, SizeLimitError)
from .estimator import DiscreteETransform
from .grids import (GridPoint, WeightPoint, count_formula, enumerate_Fe_M,
                    enumerate_Lambda_e_M, stabilizer_order_brute,
                    stabilizer_order_diagram)
from .rootdata import (PointCoord, RootSystemData, SimpleType, WeightCoord,
                       build_root_system, even_weyl_order, pairing_phase,
                       weyl_order)
from .transform import (CoefficientVector, ETransform, SampleVector,
                        abelian_orthogonality_oracle)
from .weyl import (BarycentricPoint, WeylElement, apply_to_point,
                   apply_to_weight, enumerate_weyl, even_subgroup, fold_to_F,
                   fold_to_Fe, fold_weight_to_Lambda_e)

__version__ = "0.1.0"

__all__ = [
    "BarycentricPoint", "CoefficientVector", "DiscreteETransform", "ETransform",
    "EtorusError", "GridMismatchError", "GridPoint", "InvalidTypeError",
    "InvariantViolationError", "MalformedDataError", "PointCoord",
    "RootSystemData", "SampleVector", "SimpleType", "SizeLimitError",
    "WeightCoord", "WeightPoint", "WeylElement", "abelian_orthogonality_oracle",
    "apply_to_point", "apply_to_weight", "build_root_system", "count_formula",
    "enumerate_Fe_M", "enumerate_Lambda_e_M", "enumerate_weyl", "even_subgroup",
    "even_weyl_order", "fold_to_F", "fold_to_Fe", "fold_weight_to_Lambda_e",
    "pairing_phase", "stabilizer_order_brute", "stabilizer_order_diagram",
    "weyl_order",
]
