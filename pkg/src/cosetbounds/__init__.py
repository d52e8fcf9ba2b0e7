"""Distance bounds and coset decoding for two-point algebraic geometry codes."""
from .curve_model import (DivClass, LatticeDivisor, TwoPointCurve, NumericalSemigroup,
                          hermitian_profile, suzuki_profile, curve_from_name)

__all__ = ["DivClass", "LatticeDivisor", "TwoPointCurve", "NumericalSemigroup",
           "hermitian_profile", "suzuki_profile", "curve_from_name"]
__version__ = "0.1.0"
