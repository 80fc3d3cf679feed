"""Bubbling trees of degenerating K3 / ADE families from exact period data."""

__version__ = "0.1.0"

from .exact import GaussianRational, ParseError, Poly, parse_poly  # noqa: E402
from .rootsys import (  # noqa: E402
    ADEType,
    RootSystem,
    build_root_system,
    irreducible_components,
    perp_roots,
)
from .pbt import FamilyError, FamilyInput, build_pbt, odaka_rescale, validate_family  # noqa: E402
from .ak import BranchConfig, build_dbs_tree, check_equivalence  # noqa: E402

__all__ = [
    "__version__",
    "GaussianRational",
    "ParseError",
    "Poly",
    "parse_poly",
    "ADEType",
    "RootSystem",
    "build_root_system",
    "irreducible_components",
    "perp_roots",
    "FamilyError",
    "FamilyInput",
    "build_pbt",
    "odaka_rescale",
    "validate_family",
    "BranchConfig",
    "build_dbs_tree",
    "check_equivalence",
]
