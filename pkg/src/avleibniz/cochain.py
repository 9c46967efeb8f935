"""Multilinear cochains and the differentials acting on them.

Coordinate layout (shared by every matrix and file dump): the coefficient of
output basis vector ``p`` at input multi-index ``(i1, ..., in)`` sits at
``rank_lex(i1..in) * m + p``, with ``i1`` most significant.

All operators are assembled once per (structure, degree) as sparse rational
matrices; applying them to a cochain is a matrix-vector product.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, Sequence

from .algebra import (
    AveragingOperator,
    InducedMode,
    InvalidInput,
    LeibnizAlgebra,
    Vector,
    Witness,
)
from .ratmat import RatMatrix
from .representation import Representation, induced_representation

MAX_DEGREE = 4
OPERATORS = ("delta", "partial", "phi", "cone")


def multi_indices(g: int, n: int) -> Iterator[tuple[int, ...]]:
    return product(range(g), repeat=n)


def rank_lex(idx: Sequence[int], g: int) -> int:
    r = 0
    for i in idx:
        r = r * g + i
    return r


def unrank_lex(r: int, g: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        r, i = divmod(r, g)
        out.append(i)
    return tuple(reversed(out))


def cochain_dim(n: int, g: int, m: int) -> int:
    return m * g**n


@dataclass(frozen=True)
class MultilinearMap:
    """An element of Hom(g^{⊗n}, M) stored by its values on basis tuples."""

    n: int
    gdim: int
    mdim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != cochain_dim(self.n, self.gdim, self.mdim):
            raise InvalidInput(f"expected {cochain_dim(self.n, self.gdim, self.mdim)} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, n: int, g: int, m: int) -> "MultilinearMap":
        return cls(n, g, m, (Fraction(0),) * cochain_dim(n, g, m))

    @classmethod
    def basis(cls, n: int, g: int, m: int, idx: Sequence[int], p: int) -> "MultilinearMap":
        c = [Fraction(0)] * cochain_dim(n, g, m)
        c[rank_lex(idx, g) * m + p] = Fraction(1)
        return cls(n, g, m, tuple(c))

    @classmethod
    def from_function(cls, n: int, g: int, m: int, fn: Callable[[tuple[int, ...]], Sequence]) -> "MultilinearMap":
        coeffs = []
        for idx in multi_indices(g, n):
            v = fn(idx)
            if len(v) != m:
                raise InvalidInput("value of wrong length")
            coeffs.extend(Fraction(x) for x in v)
        return cls(n, g, m, tuple(coeffs))

    @classmethod
    def from_bracket(cls, A: LeibnizAlgebra) -> "MultilinearMap":
        return cls.from_function(2, A.dim, A.dim, lambda idx: A.c[idx[0]][idx[1]])

    @classmethod
    def from_matrix(cls, M: RatMatrix) -> "MultilinearMap":
        """Arity-1 cochain ``e_i -> column i``."""
        return cls.from_function(1, M.cols, M.rows, lambda idx: M.column(idx[0]))

    @classmethod
    def from_vector(cls, v: Sequence, g: int) -> "MultilinearMap":
        return cls(0, g, len(v), tuple(Fraction(x) for x in v))

    def eval(self, args: Sequence[int]) -> Vector:
        """Value on a tuple of basis indices."""
        if len(args) != self.n:
            raise InvalidInput(f"arity {self.n} map given {len(args)} arguments")
        if any(not 0 <= a < self.gdim for a in args):
            raise InvalidInput(f"basis index out of range in {tuple(args)}")
        start = rank_lex(args, self.gdim) * self.mdim
        return self.coeffs[start : start + self.mdim]

    def eval_vectors(self, args: Sequence[Sequence[Fraction]]) -> Vector:
        """Multilinear extension to arbitrary vector arguments."""
        out = [Fraction(0)] * self.mdim
        supports = [[(i, x) for i, x in enumerate(a) if x] for a in args]
        for choice in product(*supports):
            w = Fraction(1)
            for _, x in choice:
                w *= x
            val = self.eval([i for i, _ in choice])
            for p, y in enumerate(val):
                out[p] += w * y
        return tuple(out)

    def to_matrix(self) -> RatMatrix:
        if self.n != 1:
            raise InvalidInput("only arity-1 maps are matrices")
        return RatMatrix.from_columns([self.eval((i,)) for i in range(self.gdim)], self.mdim)

    def _like(self, coeffs) -> "MultilinearMap":
        return MultilinearMap(self.n, self.gdim, self.mdim, tuple(coeffs))

    def _check(self, other: "MultilinearMap") -> None:
        if (self.n, self.gdim, self.mdim) != (other.n, other.gdim, other.mdim):
            raise InvalidInput("cochains live in different spaces")

    def __add__(self, other: "MultilinearMap") -> "MultilinearMap":
        self._check(other)
        return self._like(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "MultilinearMap") -> "MultilinearMap":
        self._check(other)
        return self._like(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "MultilinearMap":
        return self._like(-a for a in self.coeffs)

    def scale(self, s) -> "MultilinearMap":
        s = Fraction(s)
        return self._like(s * a for a in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def witnesses(self, tag: str) -> list[Witness]:
        """One witness per basis tuple where the map is nonzero, in lexicographic order."""
        out = []
        for idx in multi_indices(self.gdim, self.n):
            v = self.eval(idx)
            if any(v):
                out.append(Witness(tag, idx, v))
        return out


@dataclass(frozen=True)
class ConeCochain:
    """A degree-n element (f, h) of the mapping cone; h is None in degree 0."""

    f: MultilinearMap
    h: MultilinearMap | None = None

    def __post_init__(self):
        if self.f.n == 0:
            if self.h is not None:
                raise InvalidInput("degree-0 cone cochains have no second component")
        elif self.h is None or self.h.n != self.f.n - 1 or (self.h.gdim, self.h.mdim) != (self.f.gdim, self.f.mdim):
            raise InvalidInput("second component must have arity n-1 and matching spaces")

    @property
    def degree(self) -> int:
        return self.f.n

    def to_vector(self) -> tuple[Fraction, ...]:
        return self.f.coeffs + (self.h.coeffs if self.h is not None else ())

    @classmethod
    def from_vector(cls, v: Sequence[Fraction], n: int, g: int, m: int) -> "ConeCochain":
        split = cochain_dim(n, g, m)
        if len(v) != cone_dim(n, g, m):
            raise InvalidInput("vector length does not match the cone degree")
        f = MultilinearMap(n, g, m, tuple(v[:split]))
        h = MultilinearMap(n - 1, g, m, tuple(v[split:])) if n > 0 else None
        return cls(f, h)

    def is_zero(self) -> bool:
        return self.f.is_zero() and (self.h is None or self.h.is_zero())


def cone_dim(n: int, g: int, m: int) -> int:
    return m if n == 0 else cochain_dim(n, g, m) + cochain_dim(n - 1, g, m)


# --- assembly ---

def _check_degree(n: int) -> None:
    if not 0 <= n <= MAX_DEGREE:
        raise InvalidInput(f"degree {n} outside 0..{MAX_DEGREE}")


@lru_cache(maxsize=256)
def delta_matrix(R: Representation, n: int) -> RatMatrix:
    """Loday-Pirashvili coboundary C^n -> C^{n+1}.

    The bracket term deletes u_i and writes [u_i, u_j] into the slot u_j
    occupies after the deletion.
    """
    A = R.algebra
    g, m = R.gdim, R.mdim
    left = [list(M.items()) for M in R.l]
    right = [list(M.items()) for M in R.r]
    rows: dict[int, dict[int, Fraction]] = {}

    def put(r, c, v):
        row = rows.setdefault(r, {})
        row[c] = row.get(c, 0) + v

    for I in multi_indices(g, n + 1):
        base = rank_lex(I, g) * m
        for i in range(n):
            sign = 1 if i % 2 == 0 else -1
            col0 = rank_lex(I[:i] + I[i + 1 :], g) * m
            for q, p, v in left[I[i]]:
                put(base + q, col0 + p, sign * v)
        sign = -1 if n % 2 == 0 else 1
        col0 = rank_lex(I[:n], g) * m
        for q, p, v in right[I[n]]:
            put(base + q, col0 + p, sign * v)
        for i in range(n + 1):
            sign = -1 if i % 2 == 0 else 1
            for j in range(i + 1, n + 1):
                for k, v in enumerate(A.c[I[i]][I[j]]):
                    if not v:
                        continue
                    col0 = rank_lex(I[:i] + I[i + 1 : j] + (k,) + I[j + 1 :], g) * m
                    for q in range(m):
                        put(base + q, col0 + q, sign * v)
    return RatMatrix(m * g ** (n + 1), m * g**n, rows)


@lru_cache(maxsize=256)
def partial_matrix(R: Representation, T: AveragingOperator, n: int, mode: InducedMode) -> RatMatrix:
    """Operator coboundary: the coboundary of the induced algebra with the induced actions."""
    return delta_matrix(induced_representation(R, T, mode), n)


@lru_cache(maxsize=256)
def phi_matrix(T: AveragingOperator, theta_m: RatMatrix, n: int) -> RatMatrix:
    """f -> f(θu1,..,θun) - sum_k θ_M f(θu1,..,u_k,..,θun); the identity in degree 0."""
    g, m = T.dim, theta_m.rows
    if n == 0:
        return RatMatrix.identity(m)
    preimage = [[(j, v) for j, v in enumerate(T.image(i)) if v] for i in range(g)]
    tm = list(theta_m.items())
    rows: dict[int, dict[int, Fraction]] = {}

    def put(r, c, v):
        row = rows.setdefault(r, {})
        row[c] = row.get(c, 0) + v

    for I in multi_indices(g, n):
        base = rank_lex(I, g) * m
        for choice in product(*(preimage[i] for i in I)):
            w = Fraction(1)
            for _, x in choice:
                w *= x
            col0 = rank_lex([j for j, _ in choice], g) * m
            for q in range(m):
                put(base + q, col0 + q, w)
        for pos in range(n):
            lists = [preimage[i] if k != pos else [(i, Fraction(1))] for k, i in enumerate(I)]
            for choice in product(*lists):
                w = Fraction(1)
                for _, x in choice:
                    w *= x
                col0 = rank_lex([j for j, _ in choice], g) * m
                for q, p, v in tm:
                    put(base + q, col0 + p, -w * v)
    size = m * g**n
    return RatMatrix(size, size, rows)


@lru_cache(maxsize=256)
def cone_matrix(R: Representation, T: AveragingOperator, n: int, mode: InducedMode) -> RatMatrix:
    """d^n(f, h) = (δf, -φf - ∂h); in degree 0, d(a) = (δa, -a)."""
    TM = _theta_m(R)
    g, m = R.gdim, R.mdim
    d = delta_matrix(R, n)
    ph = phi_matrix(T, TM, n)
    if n == 0:
        return RatMatrix.block([[d], [-ph]])
    pa = partial_matrix(R, T, n - 1, mode)
    return RatMatrix.block([[d, RatMatrix.zeros(d.rows, pa.cols)], [-ph, -pa]])


def _theta_m(R: Representation) -> RatMatrix:
    if R.theta_m is None:
        raise InvalidInput("representation has no thetaM")
    return R.theta_m


def _check_operator(R: Representation, T: AveragingOperator) -> None:
    if T.dim != R.gdim:
        raise InvalidInput(f"operator of size {T.dim} for an algebra of dimension {R.gdim}")


def matrix_of(operator: str, n: int, R: Representation, T: AveragingOperator | None = None,
              mode: InducedMode = InducedMode.STRICT) -> RatMatrix:
    """Coordinate matrix of ``delta``, ``partial``, ``phi`` or ``cone`` on degree-n cochains.

    Columns index the degree-n basis; for ``cone`` the f-block comes first.
    """
    _check_degree(n)
    if operator == "delta":
        return delta_matrix(R, n)
    if T is None:
        raise InvalidInput(f"{operator} needs an averaging operator")
    _check_operator(R, T)
    if operator == "partial":
        if mode is InducedMode.SUM:
            _theta_m(R)
        return partial_matrix(R, T, n, mode)
    if operator == "phi":
        return phi_matrix(T, _theta_m(R), n)
    if operator == "cone":
        return cone_matrix(R, T, n, mode)
    raise InvalidInput(f"unknown operator {operator!r}; expected one of {', '.join(OPERATORS)}")


# --- operations on individual cochains ---

def _check_cochain(R: Representation, f: MultilinearMap) -> None:
    if (f.gdim, f.mdim) != (R.gdim, R.mdim):
        raise InvalidInput("cochain does not match the representation")
    _check_degree(f.n)


def eval(f: MultilinearMap, args: Sequence[int]) -> Vector:  # noqa: A001 - mirrors the cochain API
    return f.eval(args)


def delta(R: Representation, f: MultilinearMap) -> MultilinearMap:
    _check_cochain(R, f)
    return MultilinearMap(f.n + 1, f.gdim, f.mdim, delta_matrix(R, f.n).apply(f.coeffs))


def partial_avg(R: Representation, T: AveragingOperator, f: MultilinearMap,
                mode: InducedMode = InducedMode.STRICT) -> MultilinearMap:
    _check_cochain(R, f)
    M = matrix_of("partial", f.n, R, T, mode)
    return MultilinearMap(f.n + 1, f.gdim, f.mdim, M.apply(f.coeffs))


def phi(T: AveragingOperator, theta_m: RatMatrix, f: MultilinearMap) -> MultilinearMap:
    if T.dim != f.gdim or theta_m.shape != (f.mdim, f.mdim):
        raise InvalidInput("operator sizes do not match the cochain")
    _check_degree(f.n)
    return MultilinearMap(f.n, f.gdim, f.mdim, phi_matrix(T, theta_m, f.n).apply(f.coeffs))


def cone_differential(R: Representation, T: AveragingOperator, mode: InducedMode, x: ConeCochain) -> ConeCochain:
    _check_cochain(R, x.f)
    n = x.degree
    out = matrix_of("cone", n, R, T, mode).apply(x.to_vector())
    return ConeCochain.from_vector(out, n + 1, R.gdim, R.mdim)


def chain_map_residual(R: Representation, T: AveragingOperator, mode: InducedMode, f: MultilinearMap) -> MultilinearMap:
    """φ^{n+1}(δf) - ∂(φ^n f); zero exactly when φ commutes with the differentials at f."""
    TM = _theta_m(R)
    lhs = phi(T, TM, delta(R, f))
    rhs = partial_avg(R, T, phi(T, TM, f), mode)
    return lhs - rhs


def chain_map_defect(R: Representation, T: AveragingOperator, n: int, mode: InducedMode) -> RatMatrix:
    """Matrix of f -> chain_map_residual(f) on degree n."""
    _check_degree(n + 1)
    TM = _theta_m(R)
    return phi_matrix(T, TM, n + 1) @ delta_matrix(R, n) - partial_matrix(R, T, n, mode) @ phi_matrix(T, TM, n)


def clear_caches() -> None:
    for fn in (delta_matrix, partial_matrix, phi_matrix, cone_matrix):
        fn.cache_clear()
