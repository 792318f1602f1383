"""gkcoh: weight 13 and weight 15 cohomology of moduli spaces of curves.

Submodules
----------
symkit      partitions, characters, Schur and power-sum bases
serieskit   truncated multi-graded power series
euler15     S_n-equivariant Euler characteristics in weight 15
graphcore   blown-up graphs, canonical forms, generator enumeration
exactla     exact, modular and generic-parameter ranks
complex15   the complexes B15, C15 and GC0 with equivariant cohomology
complex13   the weight-13 complex with symbolic coefficients
growth      symmetric powers of weight-zero classes, growth degrees
cli         the ``gkcoh`` command
"""

__version__ = "0.1.0"

from .graphcore import ScopeError  # noqa: E402
from .symkit import Partition  # noqa: E402

__all__ = ["Partition", "ScopeError", "__version__"]
