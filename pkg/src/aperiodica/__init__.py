"""Cut-and-project quasicrystals with exact quadratic-irrational arithmetic."""

from .quadfield import TAU, TAU_CONJ, DecimalParam, QuadReal, parse_real

__version__ = "0.1.0"

__all__ = ["QuadReal", "DecimalParam", "parse_real", "TAU", "TAU_CONJ", "__version__"]
