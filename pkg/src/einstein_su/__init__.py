"""Einstein metrics on SU(l+m+n) and on the complex Stiefel quotients SU(l+m+n)/SU(n)."""

from .algebra_core import FlagSpec, GaugeParams, build_decomposition, center_basis, killing_B, bracket

__version__ = "0.1.0"

__all__ = ["FlagSpec", "GaugeParams", "build_decomposition", "center_basis", "killing_B", "bracket"]
