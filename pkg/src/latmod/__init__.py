"""latmod: exact workbench for lattice-chain local models.

Symbolic construction of the cyclic matrix-equation schemes, chain
local models, blowup charts and torus character lattices, together with
machine-checked certificates (Smith normal form primitivity, Jacobian
smoothness, finite-field censuses) for every desk-scale claim.
"""

from .kernel import KERNEL_KIND

__version__ = "0.1.0"

__all__ = ["KERNEL_KIND", "__version__"]
