"""Exact-arithmetic verification engine for the Segre cone.

The package studies the graded algebra Q = k[x1..x4]/(x1x2 - x3x4), its
truncations Q_n = Q/m^n, and the four-chart toric resolution of the cone
Spec Q.  Everything is computed over the rationals with no floating
point: differential modules, chart-by-chart section spaces, pro-system
certificates, and the weight-graded comparison maps between the two
sides.  `cli` exposes the verification driver installed as `segrecone`.
"""

from .errors import BoxInstabilityError, CrossCheckError, EngineError
from .report import ENGINE_VERSION as __version__
from .verdict import Verdict

__all__ = [
    "BoxInstabilityError",
    "CrossCheckError",
    "EngineError",
    "Verdict",
    "__version__",
]
