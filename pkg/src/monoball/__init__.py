"""monoball: orthonormal monogenic polynomial systems on the unit ball of R^3.

Exact construction of the spherical-monogenic basis, Fourier analysis of
reduced-quaternion-valued functions from real-part boundary data, and
numerical certification of the associated growth bound.
"""

__version__ = "0.1.0"

from .quaternion import Quaternion, ReducedQuaternion
from .poly3 import QPolynomial, ScalarPoly, apply_D, apply_Dbar, laplacian
from .spherical import MonogenicBasisElement, spherical_monogenic, solid_harmonic
from .integrate import ExactSphereValue, QuadratureRule, inner_product_exact
from .fourier import FourierCoefficients, NormalizedBasis, project, synthesize

__all__ = [
    "__version__",
    "Quaternion", "ReducedQuaternion",
    "QPolynomial", "ScalarPoly", "apply_D", "apply_Dbar", "laplacian",
    "MonogenicBasisElement", "spherical_monogenic", "solid_harmonic",
    "ExactSphereValue", "QuadratureRule", "inner_product_exact",
    "FourierCoefficients", "NormalizedBasis", "project", "synthesize",
]
