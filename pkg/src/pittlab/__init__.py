"""pittlab: a numerical workbench for Fourier inequalities.

Building blocks: a small expression DSL for scalar functions on (0, inf),
Bessel functions and their zeros, adaptive and oscillatory quadrature,
variable-exponent Lebesgue (Luxemburg) norms, radial Fourier transforms
with their sharp majorants, decidable weight conditions, and scenario
runners that turn the corresponding theorems into reproducible numeric
experiments.
"""

from . import bessel, experiments, funcdsl, hankel, quad, varlp, weights
from .funcdsl import ScalarFn, parse
from .hankel import RadialProfile, radial_ft
from .quad import QuadResult
from .varlp import ExponentProfile, luxemburg_norm, modular
from .weights import WeightProfile, check_21, check_bp

__version__ = "0.1.0"

__all__ = [
    "bessel", "experiments", "funcdsl", "hankel", "quad", "varlp", "weights",
    "ScalarFn", "parse", "RadialProfile", "radial_ft", "QuadResult",
    "ExponentProfile", "luxemburg_norm", "modular", "WeightProfile",
    "check_21", "check_bp", "__version__",
]
