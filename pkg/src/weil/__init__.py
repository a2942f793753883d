"""weil: Weil algebras, lifts of geometric structures to Weil bundles, and their verification."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    LinearFunctional, WeilAlgebra, WeilElement, algebra_from_spec, functional, make_dual_numbers,
    make_jet_algebra, make_truncated_poly, verify_axioms,
)
from .errors import InputError, WeilError  # noqa: E402
from .expr import Expr, parse, to_string  # noqa: E402
from .report import Check, VerificationReport  # noqa: E402
from .sampling import SamplePolicy  # noqa: E402
from .structures import StructureManifest, lift_structure, verify_structure  # noqa: E402

__all__ = [
    "__version__", "WeilAlgebra", "WeilElement", "LinearFunctional", "algebra_from_spec", "functional",
    "make_dual_numbers", "make_jet_algebra", "make_truncated_poly", "verify_axioms", "InputError", "WeilError",
    "Expr", "parse", "to_string", "Check", "VerificationReport", "SamplePolicy", "StructureManifest",
    "lift_structure", "verify_structure",
]
