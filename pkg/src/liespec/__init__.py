"""Joint spectra of finite-dimensional solvable Lie algebra representations.

The homology route builds the Koszul complex of a shifted representation
and reads membership off nonvanishing Betti numbers; the eigencharacter
route triangularizes and collects joint eigenvalues.  For nilpotent
algebras the two must agree, and `cross_validate` enforces that.
"""

from .lie_core import (
    LieAlgebra,
    abelian_algebra,
    algebra_from_json,
    algebra_to_json,
    character,
    is_nilpotent,
    is_solvable,
    jordan_holder_chain,
    lie_algebra,
)
from .numeric import EXACT, FLOAT
# NB: the `representation` factory is not re-exported; the name must keep
# pointing at the submodule for `liespec.representation` imports to work.
from .representation import (
    Representation,
    direct_sum,
    rep_from_json,
    rep_to_json,
    shift,
)
from .representation import representation as build_representation
from .spectra import (
    all_spectra,
    cross_validate,
    joint_eigencharacters,
    parse_kind,
    projection_check,
    spectrum,
    spectrum_via_eigencharacters,
)

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "LieAlgebra",
    "Representation",
    "abelian_algebra",
    "algebra_from_json",
    "algebra_to_json",
    "all_spectra",
    "build_representation",
    "character",
    "cross_validate",
    "direct_sum",
    "is_nilpotent",
    "is_solvable",
    "joint_eigencharacters",
    "jordan_holder_chain",
    "lie_algebra",
    "parse_kind",
    "projection_check",
    "rep_from_json",
    "rep_to_json",
    "shift",
    "spectrum",
    "spectrum_via_eigencharacters",
    "__version__",
]
