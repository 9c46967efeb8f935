"""Leibniz algebras by structure constants, averaging operators and their validators.

Basis indices are 0-based here; files and printed witnesses use 1-based
``e1 .. eg``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .ratmat import RatMatrix, as_rational, format_rational, inverse, rank

Vector = tuple[Fraction, ...]


class InvalidInput(ValueError):
    """Inputs with the wrong shape or violating a stated precondition."""


class Convention(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class InducedMode(enum.Enum):
    """How an averaging operator is threaded into brackets and actions.

    STRICT lifts the left argument only: ``[u, v]_* = [θu, v]``.
    SUM uses ``[θu, v] + [u, θv]`` with θ_M-corrected actions.
    """

    STRICT = "strict"
    SUM = "sum"


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, k: int) -> Vector:
    v = [Fraction(0)] * n
    v[k] = Fraction(1)
    return tuple(v)


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(s: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(s * x for x in a)


def format_vector(v: Sequence[Fraction], name: str = "e") -> str:
    """Render a coordinate vector as a combination of basis names, e.g. ``-e3`` or ``1/2*e2``."""
    parts = []
    for k, x in enumerate(v):
        if not x:
            continue
        sign = "-" if x < 0 else "+"
        mag = abs(x)
        coeff = "" if mag == 1 else f"{format_rational(mag)}*"
        parts.append((sign, f"{coeff}{name}{k + 1}"))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


@dataclass(frozen=True)
class Witness:
    """A basis tuple (0-based) where an identity fails, with the exact left-minus-right residual."""

    tag: str
    index: tuple[int, ...]
    residual: Vector
    order: int | None = None

    def describe(self, name: str = "e") -> str:
        where = "(" + ",".join(f"{name}{i + 1}" for i in self.index) + ")"
        prefix = f"n={self.order} " if self.order is not None else ""
        return f"{prefix}{self.tag} at {where}: residual {format_vector(self.residual)}"

    def to_json(self) -> dict:
        out = {
            "tag": self.tag,
            "index": [i + 1 for i in self.index],
            "residual": [format_rational(x) for x in self.residual],
        }
        if self.order is not None:
            out["order"] = self.order
        return out


@dataclass(frozen=True)
class ValidationReport:
    witnesses: tuple[Witness, ...] = ()
    flags: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def failures(self) -> int:
        return len(self.witnesses)

    @property
    def first(self) -> Witness | None:
        return self.witnesses[0] if self.witnesses else None

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def collect(cls, witnesses: Iterable[Witness], **flags) -> "ValidationReport":
        return cls(tuple(witnesses), flags)


@dataclass(frozen=True)
class LeibnizAlgebra:
    """Bilinear bracket on a g-dimensional space: ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""

    dim: int
    c: tuple[tuple[tuple[Fraction, ...], ...], ...]
    convention: Convention = Convention.LEFT

    def __post_init__(self):
        g = self.dim
        if g < 0:
            raise InvalidInput("dimension must be non-negative")
        if len(self.c) != g or any(len(row) != g or any(len(v) != g for v in row) for row in self.c):
            raise InvalidInput(f"structure constants must have shape {g}x{g}x{g}")

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, int, int, object]],
                     convention: Convention = Convention.LEFT) -> "LeibnizAlgebra":
        """Build from sparse ``(i, j, k, coeff)`` entries, 0-based; repeated entries add up."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, v in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise InvalidInput(f"bracket index ({i},{j},{k}) out of range for dimension {dim}")
            c[i][j][k] += as_rational(v)
        return cls(dim, tuple(tuple(tuple(v) for v in row) for row in c), convention)

    @classmethod
    def from_basis_brackets(cls, dim: int, table: dict, convention: Convention = Convention.LEFT):
        """``{(i, j): vector}`` for the nonzero brackets, 0-based."""
        entries = [(i, j, k, x) for (i, j), v in table.items() for k, x in enumerate(v) if x]
        return cls.from_entries(dim, entries, convention)

    @classmethod
    def abelian(cls, dim: int) -> "LeibnizAlgebra":
        return cls.from_entries(dim, [])

    def entries(self) -> list[tuple[int, int, int, Fraction]]:
        g = self.dim
        return [(i, j, k, self.c[i][j][k]) for i in range(g) for j in range(g) for k in range(g) if self.c[i][j][k]]

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        g = self.dim
        out = [Fraction(0)] * g
        for i in range(g):
            if not x[i]:
                continue
            for j in range(g):
                if not y[j]:
                    continue
                s = x[i] * y[j]
                for k, v in enumerate(self.c[i][j]):
                    if v:
                        out[k] += s * v
        return tuple(out)

    def left_matrix(self, i: int) -> RatMatrix:
        """Matrix of ``v -> [e_i, v]``."""
        g = self.dim
        return RatMatrix(g, g, {k: {j: self.c[i][j][k] for j in range(g)} for k in range(g)})

    def right_matrix(self, j: int) -> RatMatrix:
        """Matrix of ``u -> [u, e_j]``."""
        g = self.dim
        return RatMatrix(g, g, {k: {i: self.c[i][j][k] for i in range(g)} for k in range(g)})

    def is_abelian(self) -> bool:
        return not self.entries()

    def with_convention(self, convention: Convention) -> "LeibnizAlgebra":
        return LeibnizAlgebra(self.dim, self.c, convention)


@dataclass(frozen=True)
class AveragingOperator:
    """Linear map θ on the algebra, acting on column coordinates: ``θ(e_i) = sum_j M[j, i] e_j``."""

    matrix: RatMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise InvalidInput("operator matrix must be square")

    @classmethod
    def from_rows(cls, rows) -> "AveragingOperator":
        return cls(RatMatrix.from_rows(rows))

    @classmethod
    def diag(cls, values) -> "AveragingOperator":
        return cls(RatMatrix.diag(values))

    @classmethod
    def identity(cls, n: int) -> "AveragingOperator":
        return cls(RatMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "AveragingOperator":
        return cls(RatMatrix.zeros(n, n))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def image(self, i: int) -> Vector:
        return self.matrix.column(i)


def _check_dims(A: LeibnizAlgebra, T: AveragingOperator) -> None:
    if T.dim != A.dim:
        raise InvalidInput(f"operator of size {T.dim} on an algebra of dimension {A.dim}")


def validate_leibniz(A: LeibnizAlgebra, conv: Convention | None = None) -> ValidationReport:
    """Check the Leibniz identity on every basis triple.

    Left:  [u,[v,w]] = [[u,v],w] + [v,[u,w]]
    Right: [[u,v],w] = [[u,w],v] + [u,[v,w]]
    """
    conv = conv or A.convention
    g = A.dim
    E = [unit_vector(g, i) for i in range(g)]
    br = A.bracket
    witnesses = []
    for u, v, w in product(range(g), repeat=3):
        if conv is Convention.LEFT:
            lhs = br(E[u], A.c[v][w])
            rhs = vadd(br(A.c[u][v], E[w]), br(E[v], A.c[u][w]))
        else:
            lhs = br(A.c[u][v], E[w])
            rhs = vadd(br(A.c[u][w], E[v]), br(E[u], A.c[v][w]))
        res = vsub(lhs, rhs)
        if any(res):
            witnesses.append(Witness(f"leibniz-{conv.value}", (u, v, w), res))
    return ValidationReport.collect(witnesses)


def validate_averaging(A: LeibnizAlgebra, T: AveragingOperator) -> ValidationReport:
    """``[θu, θv] = θ[θu, v] = θ[u, θv]`` on all basis pairs.

    Independent of whether A satisfies any Leibniz identity.
    """
    _check_dims(A, T)
    g = A.dim
    E = [unit_vector(g, i) for i in range(g)]
    images = [T.image(i) for i in range(g)]
    witnesses = []
    for u, v in product(range(g), repeat=2):
        left = A.bracket(images[u], images[v])
        middle = T(A.bracket(images[u], E[v]))
        right = T(A.bracket(E[u], images[v]))
        for tag, other in (("left=middle", middle), ("left=right", right)):
            res = vsub(left, other)
            if any(res):
                witnesses.append(Witness(tag, (u, v), res))
    return ValidationReport.collect(witnesses)


def induced_algebra(A: LeibnizAlgebra, T: AveragingOperator, mode: InducedMode = InducedMode.STRICT) -> LeibnizAlgebra:
    """Bracket obtained by inserting θ: ``[θe_i, e_j]`` (STRICT) or ``[θe_i, e_j] + [e_i, θe_j]`` (SUM)."""
    _check_dims(A, T)
    g = A.dim
    E = [unit_vector(g, i) for i in range(g)]
    images = [T.image(i) for i in range(g)]
    table = {}
    for i, j in product(range(g), repeat=2):
        v = A.bracket(images[i], E[j])
        if mode is InducedMode.SUM:
            v = vadd(v, A.bracket(E[i], images[j]))
        table[(i, j)] = v
    return LeibnizAlgebra.from_basis_brackets(g, table, A.convention)


def lift_symmetry(A: LeibnizAlgebra, T: AveragingOperator) -> ValidationReport:
    """Whether ``[θe_i, e_j] = [e_i, θe_j]`` for all basis pairs (the two lifts agree)."""
    _check_dims(A, T)
    g = A.dim
    E = [unit_vector(g, i) for i in range(g)]
    witnesses = []
    for i, j in product(range(g), repeat=2):
        res = vsub(A.bracket(T.image(i), E[j]), A.bracket(E[i], T.image(j)))
        if any(res):
            witnesses.append(Witness("lift-symmetry", (i, j), res))
    return ValidationReport.collect(witnesses)


def check_morphism(A: LeibnizAlgebra, A2: LeibnizAlgebra, T: AveragingOperator, T2: AveragingOperator,
                   p: RatMatrix) -> ValidationReport:
    """``p[e_i, e_j] = [p e_i, p e_j]'`` on all pairs and ``θ' p = p θ``.

    The report's ``flags["isomorphism"]`` is set when p is a linear isomorphism.
    """
    _check_dims(A, T)
    _check_dims(A2, T2)
    if p.shape != (A2.dim, A.dim):
        raise InvalidInput(f"morphism matrix must be {A2.dim}x{A.dim}, got {p.rows}x{p.cols}")
    witnesses = []
    for i, j in product(range(A.dim), repeat=2):
        res = vsub(p.apply(A.c[i][j]), A2.bracket(p.column(i), p.column(j)))
        if any(res):
            witnesses.append(Witness("homomorphism", (i, j), res))
    commute = T2.matrix @ p - p @ T.matrix
    for i in range(A.dim):
        col = commute.column(i)
        if any(col):
            witnesses.append(Witness("commutes-with-operator", (i,), col))
    iso = A.dim == A2.dim and rank(p) == A.dim
    return ValidationReport.collect(witnesses, isomorphism=iso)


def transport(A: LeibnizAlgebra, P: RatMatrix, T: AveragingOperator | None = None):
    """Move the bracket (and operator) along the linear isomorphism P.

    Returns the algebra with ``[x, y]' = P[P^-1 x, P^-1 y]`` and, when given, ``P θ P^-1``,
    so that P itself is an isomorphism of the resulting structures.
    """
    Pinv = inverse(P)
    g = A.dim
    cols = [Pinv.column(i) for i in range(g)]
    table = {(i, j): P.apply(A.bracket(cols[i], cols[j])) for i, j in product(range(g), repeat=2)}
    A2 = LeibnizAlgebra.from_basis_brackets(g, table, A.convention)
    if T is None:
        return A2
    return A2, AveragingOperator(P @ T.matrix @ Pinv)


def search_averaging_diagonal(A: LeibnizAlgebra, candidate_values: Iterable) -> list[AveragingOperator]:
    """All diagonal operators with entries from ``candidate_values`` that pass the averaging check.

    Values are deduplicated and sorted; results come out in lexicographic order of their diagonals.
    """
    values = sorted({as_rational(v) for v in candidate_values})
    if not values:
        return []
    if len(values) ** A.dim > 10**6:
        raise InvalidInput(f"{len(values)}^{A.dim} candidates exceeds the enumeration bound of 10^6")
    found = []
    for diag in product(values, repeat=A.dim):
        T = AveragingOperator.diag(diag)
        if validate_averaging(A, T).passed:
            found.append(T)
    return found
