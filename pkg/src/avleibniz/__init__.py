"""Exact rational workbench for averaging Leibniz algebras, their representations,
cochain complexes, cohomology and truncated formal deformations."""

from .algebra import (
    AveragingOperator,
    Convention,
    InducedMode,
    InvalidInput,
    LeibnizAlgebra,
    ValidationReport,
    Witness,
    check_morphism,
    induced_algebra,
    search_averaging_diagonal,
    transport,
    validate_averaging,
    validate_leibniz,
)
from .audit import AuditReport, audit
from .cochain import MultilinearMap, matrix_of
from .cohomology import ComplexInvalid, ComplexKind, ComplexSpec, betti, cohomology_report
from .deformation import (
    FormalIsomorphism,
    Rigidity,
    TruncatedDeformation,
    check_cocycle,
    check_deformation_order,
    check_equivalence,
    find_trivializer,
    rigidity_report,
)
from .ratmat import RatMatrix, kernel_basis, rank, rref, solve
from .representation import (
    Representation,
    induced_representation,
    self_representation,
    validate_averaging_representation,
    validate_representation,
)

__version__ = "0.1.0"
