"""Cochain complexes, exact d∘d checks and cohomology dimensions."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import AveragingOperator, InducedMode, InvalidInput
from .cochain import MAX_DEGREE, cochain_dim, cone_dim, matrix_of
from .ratmat import RatMatrix, rank
from .representation import Representation


class ComplexKind(enum.Enum):
    LA = "la"  # algebra cochains with the Loday-Pirashvili differential
    ALO = "alo"  # operator cochains
    AL = "al"  # mapping cone of φ


class ComplexInvalid(Exception):
    """d∘d is not zero where a cohomology dimension was requested."""

    def __init__(self, degree: int, defect_rank: int):
        super().__init__(f"d^{degree + 1} o d^{degree} != 0 (defect rank {defect_rank})")
        self.degree = degree
        self.defect_rank = defect_rank


@dataclass(frozen=True)
class ComplexSpec:
    kind: ComplexKind
    representation: Representation
    operator: AveragingOperator | None = None
    mode: InducedMode = InducedMode.STRICT
    max_degree: int = 3

    def __post_init__(self):
        if not 1 <= self.max_degree <= MAX_DEGREE:
            raise InvalidInput(f"max degree must be in 1..{MAX_DEGREE}")
        if self.kind is not ComplexKind.LA and self.operator is None:
            raise InvalidInput(f"{self.kind.value} complex needs an averaging operator")

    @property
    def _op_name(self) -> str:
        return {ComplexKind.LA: "delta", ComplexKind.ALO: "partial", ComplexKind.AL: "cone"}[self.kind]

    def differential(self, n: int) -> RatMatrix:
        return matrix_of(self._op_name, n, self.representation, self.operator, self.mode)

    def cochain_dim(self, n: int) -> int:
        g, m = self.representation.gdim, self.representation.mdim
        return cone_dim(n, g, m) if self.kind is ComplexKind.AL else cochain_dim(n, g, m)


@dataclass(frozen=True)
class SquareCheck:
    degree: int
    is_zero: bool
    defect_rank: int
    product: RatMatrix = field(repr=False, compare=False)


def square_check(spec: ComplexSpec, n: int) -> SquareCheck:
    prod = spec.differential(n + 1) @ spec.differential(n)
    zero = prod.is_zero()
    return SquareCheck(n, zero, 0 if zero else rank(prod), prod)


def complex_audit(spec: ComplexSpec) -> list[SquareCheck]:
    """d^{n+1} d^n for every n < max_degree."""
    return [square_check(spec, n) for n in range(spec.max_degree)]


def betti(spec: ComplexSpec, n: int) -> int:
    """dim H^n = dim ker d^n - rank d^{n-1}; refuses when d∘d fails at degree n-1 or n."""
    if not 0 <= n <= spec.max_degree - 1:
        raise InvalidInput(f"degree {n} outside 0..{spec.max_degree - 1}")
    for k in (n - 1, n):
        if k >= 0:
            chk = square_check(spec, k)
            if not chk.is_zero:
                raise ComplexInvalid(k, chk.defect_rank)
    dn = spec.differential(n)
    ker = spec.cochain_dim(n) - rank(dn)
    im = rank(spec.differential(n - 1)) if n > 0 else 0
    return ker - im


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    cochain_dim: int
    rank: int
    kernel_dim: int
    betti: int | None  # None where the complex is invalid


@dataclass(frozen=True)
class CohomologyReport:
    spec: ComplexSpec
    rows: tuple[DegreeRow, ...]
    invalid: tuple[SquareCheck, ...]

    @property
    def valid(self) -> bool:
        return not self.invalid

    def to_json(self) -> dict:
        return {
            "complex": self.spec.kind.value,
            "mode": self.spec.mode.value,
            "degrees": [
                {"n": r.degree, "dim_C": r.cochain_dim, "rank_d": r.rank, "dim_ker": r.kernel_dim, "dim_H": r.betti}
                for r in self.rows
            ],
            "invalid": [{"degree": c.degree, "defect_rank": c.defect_rank} for c in self.invalid],
        }


def cohomology_report(spec: ComplexSpec, top: int | None = None) -> CohomologyReport:
    """Ranks and dimensions for degrees 0..top (default max_degree - 1)."""
    top = spec.max_degree - 1 if top is None else top
    if not 0 <= top <= spec.max_degree - 1:
        raise InvalidInput(f"top degree must be in 0..{spec.max_degree - 1}")
    checks = {n: square_check(spec, n) for n in range(top + 1)}
    ranks = {n: rank(spec.differential(n)) for n in range(top + 1)}
    rows = []
    for n in range(top + 1):
        dim = spec.cochain_dim(n)
        ker = dim - ranks[n]
        ok = checks[n].is_zero and (n == 0 or checks[n - 1].is_zero)
        h = ker - (ranks[n - 1] if n > 0 else 0) if ok else None
        rows.append(DegreeRow(n, dim, ranks[n], ker, h))
    invalid = tuple(c for c in checks.values() if not c.is_zero)
    return CohomologyReport(spec, tuple(rows), invalid)
