"""Exact Lie-algebraic tools for invariant Einstein metrics on homogeneous spaces.

Submodules:

* :mod:`einshom.lie_core`: structure constants, subspaces, Killing forms
* :mod:`einshom.homspace`: reductive decompositions and isotropy modules
* :mod:`einshom.metrics`: invariant inner products and orthonormal frames
* :mod:`einshom.curvature`: Ricci curvature and Einstein residuals
* :mod:`einshom.analysis`: Einstein search and obstruction checks
* :mod:`einshom.catalog`: the catalog of spaces
"""

__version__ = "0.1.0"

from .lie_core import LieAlgebra, Subspace, BilinearForm, killing_form, verify_jacobi  # noqa: E402
from .homspace import HomogeneousPresentation, reductive_complement, decompose_isotropy  # noqa: E402
from .metrics import moduli_space, build_Q, orthonormal_frame  # noqa: E402
from .curvature import ricci, einstein_report  # noqa: E402
from .analysis import SearchConfig, search_einstein  # noqa: E402
from .catalog import build, list_spaces  # noqa: E402

__all__ = [
    "LieAlgebra", "Subspace", "BilinearForm", "killing_form", "verify_jacobi",
    "HomogeneousPresentation", "reductive_complement", "decompose_isotropy",
    "moduli_space", "build_Q", "orthonormal_frame", "ricci", "einstein_report",
    "SearchConfig", "search_einstein", "build", "list_spaces", "__version__",
]
