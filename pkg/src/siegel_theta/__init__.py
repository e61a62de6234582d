"""Numerical and exact verification of Siegel theta constants, their
transformation laws, and the finite quotients of level-(2,4) congruence
subgroups that act on them."""

import os as _os

__version__ = "0.1.0"

# SIEGEL_THETA_THREADS caps BLAS/OpenMP threads; it must be set before numpy loads.
if _os.environ.get("SIEGEL_THETA_THREADS"):
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["SIEGEL_THETA_THREADS"])

from .characteristics import ThetaCharacteristic, enumerate_characteristics
from .cyclotomic import Cyclotomic8, MonomialMatrix
from .symplectic import SymplecticMatrix, group, member
from .theta import SiegelPoint, ThetaValue, second_order, theta, theta_constant, theta_gradient

__all__ = [
    "Cyclotomic8",
    "MonomialMatrix",
    "SiegelPoint",
    "SymplecticMatrix",
    "ThetaCharacteristic",
    "ThetaValue",
    "enumerate_characteristics",
    "group",
    "member",
    "second_order",
    "theta",
    "theta_constant",
    "theta_gradient",
]
