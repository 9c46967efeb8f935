"""Truncated formal deformations of an averaging Leibniz algebra.

A deformation of order N is the jet (μ_0..μ_N, θ_0..θ_N) with (μ_0, θ_0) the
base structure.  Passing at order N means the coefficient identities hold for
every power t^n with n <= N; nothing is claimed about higher powers.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import (
    AveragingOperator,
    InducedMode,
    InvalidInput,
    LeibnizAlgebra,
    ValidationReport,
    Witness,
    unit_vector,
    vadd,
    vsub,
    zero_vector,
)
from .cochain import ConeCochain, MultilinearMap, cone_differential, cone_matrix
from .cohomology import ComplexInvalid, ComplexKind, ComplexSpec, SquareCheck, betti, square_check
from .ratmat import RatMatrix, solve
from .representation import self_representation


def _as_bracket(mu: MultilinearMap) -> LeibnizAlgebra:
    g = mu.gdim
    return LeibnizAlgebra.from_basis_brackets(g, {(i, j): mu.eval((i, j)) for i, j in product(range(g), repeat=2)})


@dataclass(frozen=True)
class TruncatedDeformation:
    mu: tuple[MultilinearMap, ...]
    theta: tuple[RatMatrix, ...]

    def __post_init__(self):
        if not self.mu or len(self.mu) != len(self.theta):
            raise InvalidInput("mu and theta must both list orders 0..N")
        g = self.mu[0].gdim
        for k, m in enumerate(self.mu):
            if (m.n, m.gdim, m.mdim) != (2, g, g):
                raise InvalidInput(f"mu[{k}] must be a bilinear map on a {g}-dimensional space")
        for k, t in enumerate(self.theta):
            if t.shape != (g, g):
                raise InvalidInput(f"theta[{k}] must be {g}x{g}")

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    @property
    def dim(self) -> int:
        return self.mu[0].gdim

    @classmethod
    def from_base(cls, A: LeibnizAlgebra, T: AveragingOperator, mu=(), theta=()) -> "TruncatedDeformation":
        """Base structure plus higher coefficients; missing entries of the shorter list are zero."""
        g = A.dim
        N = max(len(mu), len(theta))
        mus = [MultilinearMap.from_bracket(A)] + list(mu) + [MultilinearMap.zero(2, g, g)] * (N - len(mu))
        ths = [T.matrix] + list(theta) + [RatMatrix.zeros(g, g)] * (N - len(theta))
        return cls(tuple(mus), tuple(ths))

    @classmethod
    def constant(cls, A: LeibnizAlgebra, T: AveragingOperator, order: int) -> "TruncatedDeformation":
        g = A.dim
        return cls.from_base(A, T, [MultilinearMap.zero(2, g, g)] * order)

    def truncate(self, order: int) -> "TruncatedDeformation":
        if not 0 <= order <= self.order:
            raise InvalidInput("can only truncate to a lower order")
        return TruncatedDeformation(self.mu[: order + 1], self.theta[: order + 1])

    def base(self) -> tuple[LeibnizAlgebra, AveragingOperator]:
        return _as_bracket(self.mu[0]), AveragingOperator(self.theta[0])

    def first_nonzero_order(self) -> int | None:
        """Index of the n-infinitesimal: the first n >= 1 with (μ_n, θ_n) nonzero."""
        for n in range(1, self.order + 1):
            if not self.mu[n].is_zero() or not self.theta[n].is_zero():
                return n
        return None


@dataclass(frozen=True)
class FormalIsomorphism:
    psi: tuple[RatMatrix, ...]

    def __post_init__(self):
        if not self.psi:
            raise InvalidInput("psi must list orders 0..N")
        g = self.psi[0].rows
        if self.psi[0] != RatMatrix.identity(g):
            raise InvalidInput("psi[0] must be the identity")
        if any(p.shape != (g, g) for p in self.psi):
            raise InvalidInput(f"every psi[k] must be {g}x{g}")

    @property
    def order(self) -> int:
        return len(self.psi) - 1

    @classmethod
    def identity(cls, g: int, order: int) -> "FormalIsomorphism":
        return cls((RatMatrix.identity(g),) + (RatMatrix.zeros(g, g),) * order)


def check_deformation_order(D: TruncatedDeformation) -> ValidationReport:
    """Coefficient of t^n in the Leibniz identity and in both averaging equalities, n = 0..N."""
    g, N = D.dim, D.order
    mus = [_as_bracket(m) for m in D.mu]
    ths = [AveragingOperator(t) for t in D.theta]
    E = [unit_vector(g, i) for i in range(g)]
    witnesses = []
    for n in range(N + 1):
        splits2 = [(i, n - i) for i in range(n + 1)]
        splits3 = [(i, j, n - i - j) for i in range(n + 1) for j in range(n + 1 - i)]
        for u, v, w in product(range(g), repeat=3):
            res = zero_vector(g)
            for i, j in splits2:
                mi, mj = mus[i], mus[j]
                res = vadd(res, mi.bracket(E[u], mj.c[v][w]))
                res = vsub(res, mi.bracket(mj.c[u][v], E[w]))
                res = vsub(res, mi.bracket(E[v], mj.c[u][w]))
            if any(res):
                witnesses.append(Witness("leibniz", (u, v, w), res, order=n))
        for u, v in product(range(g), repeat=2):
            left = middle = right = zero_vector(g)
            for i, j, k in splits3:
                left = vadd(left, mus[i].bracket(ths[j].image(u), ths[k].image(v)))
                middle = vadd(middle, ths[i](mus[j].bracket(ths[k].image(u), E[v])))
                right = vadd(right, ths[i](mus[j].bracket(E[u], ths[k].image(v))))
            for tag, other in (("averaging:left=middle", middle), ("averaging:left=right", right)):
                res = vsub(left, other)
                if any(res):
                    witnesses.append(Witness(tag, (u, v), res, order=n))
    return ValidationReport.collect(witnesses)


def check_cocycle(A: LeibnizAlgebra, T: AveragingOperator, mu1: MultilinearMap, theta1: RatMatrix,
                  mode: InducedMode = InducedMode.STRICT) -> ValidationReport:
    """Whether d^2(μ1, θ1) = 0 in the mapping cone with coefficients in the algebra itself.

    Witnesses tagged ``delta`` come from δ²μ1, those tagged ``operator`` from -φ²μ1 - ∂¹θ1;
    ``flags`` carries the per-component verdicts.
    """
    R = self_representation(A, T)
    x = ConeCochain(mu1, MultilinearMap.from_matrix(theta1))
    y = cone_differential(R, T, mode, x)
    first = y.f.witnesses("delta")
    second = y.h.witnesses("operator")
    return ValidationReport.collect(first + second, delta=not first, operator=not second)


def check_equivalence(D: TruncatedDeformation, D2: TruncatedDeformation, P: FormalIsomorphism) -> ValidationReport:
    """ψ_t∘μ'_t = μ_t∘(ψ_t⊗ψ_t) on basis pairs and ψ_t∘θ'_t = θ_t∘ψ_t, coefficient by coefficient."""
    if not (D.order == D2.order == P.order):
        raise InvalidInput(f"orders differ: {D.order}, {D2.order}, {P.order}")
    if not (D.dim == D2.dim == P.psi[0].rows):
        raise InvalidInput("dimensions differ")
    g, N = D.dim, D.order
    mus = [_as_bracket(m) for m in D.mu]
    mus2 = [_as_bracket(m) for m in D2.mu]
    psi = P.psi
    witnesses = []
    for n in range(N + 1):
        splits2 = [(i, n - i) for i in range(n + 1)]
        splits3 = [(i, j, n - i - j) for i in range(n + 1) for j in range(n + 1 - i)]
        for u, v in product(range(g), repeat=2):
            lhs = zero_vector(g)
            for i, j in splits2:
                lhs = vadd(lhs, psi[i].apply(mus2[j].c[u][v]))
            rhs = zero_vector(g)
            for i, j, k in splits3:
                rhs = vadd(rhs, mus[i].bracket(psi[j].column(u), psi[k].column(v)))
            res = vsub(lhs, rhs)
            if any(res):
                witnesses.append(Witness("bracket", (u, v), res, order=n))
        diff = RatMatrix.zeros(g, g)
        for i, j in splits2:
            diff = diff + psi[i] @ D2.theta[j] - D.theta[i] @ psi[j]
        for u in range(g):
            col = diff.column(u)
            if any(col):
                witnesses.append(Witness("operator", (u,), col, order=n))
    return ValidationReport.collect(witnesses)


def find_trivializer(A: LeibnizAlgebra, T: AveragingOperator, mu1: MultilinearMap, theta1: RatMatrix,
                     mode: InducedMode = InducedMode.STRICT):
    """Some (ψ1, u) with d^1(ψ1, u) = (μ1, θ1), or None when (μ1, θ1) is not a coboundary.

    Free variables of the linear system are set to zero, so the answer is deterministic.
    """
    R = self_representation(A, T)
    rhs = mu1.coeffs + MultilinearMap.from_matrix(theta1).coeffs
    x = solve(cone_matrix(R, T, 1, mode), rhs)
    if x is None:
        return None
    g = A.dim
    psi1 = MultilinearMap(1, g, g, tuple(x[: g * g])).to_matrix()
    return psi1, tuple(x[g * g :])


def coboundary_of(A: LeibnizAlgebra, T: AveragingOperator, psi1: RatMatrix, u: Sequence,
                  mode: InducedMode = InducedMode.STRICT) -> tuple[MultilinearMap, RatMatrix]:
    """d^1(ψ1, u) split back into (μ1, θ1)."""
    R = self_representation(A, T)
    x = ConeCochain(MultilinearMap.from_matrix(psi1), MultilinearMap.from_vector(u, A.dim))
    y = cone_differential(R, T, mode, x)
    return y.f, y.h.to_matrix()


class Rigidity(enum.Enum):
    RIGID = "rigid"
    INCONCLUSIVE = "inconclusive"
    COMPLEX_INVALID = "complex-invalid"


@dataclass(frozen=True)
class RigidityVerdict:
    kind: Rigidity
    dim_h2: int | None = None
    defect: SquareCheck | None = None

    def describe(self) -> str:
        if self.kind is Rigidity.RIGID:
            return "rigid (dim H^2 = 0)"
        if self.kind is Rigidity.INCONCLUSIVE:
            return f"inconclusive (dim H^2 = {self.dim_h2})"
        return f"complex invalid: d^{self.defect.degree + 1} o d^{self.defect.degree} != 0 (defect rank {self.defect.defect_rank})"


def rigidity_report(A: LeibnizAlgebra, T: AveragingOperator, mode: InducedMode = InducedMode.STRICT) -> RigidityVerdict:
    """Rigid when the cone complex is valid through degree 2 and H^2 vanishes.

    A nonzero H^2 proves nothing either way, hence INCONCLUSIVE rather than "not rigid".
    """
    spec = ComplexSpec(ComplexKind.AL, self_representation(A, T), T, mode, max_degree=3)
    for n in range(3):
        chk = square_check(spec, n)
        if not chk.is_zero:
            return RigidityVerdict(Rigidity.COMPLEX_INVALID, defect=chk)
    try:
        h2 = betti(spec, 2)
    except ComplexInvalid as exc:  # unreachable after the loop above, kept for safety
        return RigidityVerdict(Rigidity.COMPLEX_INVALID, defect=square_check(spec, exc.degree))
    return RigidityVerdict(Rigidity.RIGID if h2 == 0 else Rigidity.INCONCLUSIVE, h2)


# --- the three readings of the first-order averaging condition ---

READINGS = ("left=middle", "left=right", "display")


def first_order_terms(A: LeibnizAlgebra, T: AveragingOperator, mu1: MultilinearMap, theta1: RatMatrix):
    """The three coefficient-of-t sums of the averaging chain, as bilinear maps.

    left   = μ1(θu,θv) + μ(θ1u,θv) + μ(θu,θ1v)
    middle = θ1 μ(θu,v) + θ μ(θ1u,v) + θ μ1(θu,v)
    right  = θ1 μ(u,θv) + θ μ1(u,θv) + θ μ(u,θ1v)
    """
    g = A.dim
    m1 = _as_bracket(mu1)
    t1 = AveragingOperator(theta1)
    E = [unit_vector(g, i) for i in range(g)]
    out = {"left": {}, "middle": {}, "right": {}}
    for u, v in product(range(g), repeat=2):
        tu, tv, t1u, t1v = T.image(u), T.image(v), t1.image(u), t1.image(v)
        out["left"][u, v] = vadd(vadd(m1.bracket(tu, tv), A.bracket(t1u, tv)), A.bracket(tu, t1v))
        out["middle"][u, v] = vadd(vadd(t1(A.bracket(tu, E[v])), T(A.bracket(t1u, E[v]))), T(m1.bracket(tu, E[v])))
        out["right"][u, v] = vadd(vadd(t1(A.bracket(E[u], tv)), T(m1.bracket(E[u], tv))), T(A.bracket(E[u], t1v)))
    return {k: MultilinearMap.from_function(2, g, g, lambda idx, d=d: d[idx]) for k, d in out.items()}


def reading_residuals(A: LeibnizAlgebra, T: AveragingOperator, mu1: MultilinearMap,
                      theta1: RatMatrix) -> dict[str, MultilinearMap]:
    """left - middle, left - right, and the merged nine-term display left - middle - right."""
    t = first_order_terms(A, T, mu1, theta1)
    return {
        "left=middle": t["left"] - t["middle"],
        "left=right": t["left"] - t["right"],
        "display": t["left"] - t["middle"] - t["right"],
    }


def display_matches_cone(A: LeibnizAlgebra, T: AveragingOperator, mode: InducedMode) -> ValidationReport:
    """Whether -φ²μ1 - ∂¹θ1 equals minus the nine-term display for every (μ1, θ1).

    Checked on the basis of C² ⊕ C¹; a witness names the basis cochain (index = column) where the
    two linear maps differ, with the difference evaluated at the first failing pair.
    """
    g = A.dim
    R = self_representation(A, T)
    d2 = cone_matrix(R, T, 2, mode)
    split = g**3
    witnesses = []
    for col in range(d2.cols):
        if col < split:
            mu1 = MultilinearMap(2, g, g, tuple(Fraction(int(k == col)) for k in range(split)))
            theta1 = RatMatrix.zeros(g, g)
        else:
            e = MultilinearMap(1, g, g, tuple(Fraction(int(k == col - split)) for k in range(g * g)))
            mu1, theta1 = MultilinearMap.zero(2, g, g), e.to_matrix()
        cone_part = MultilinearMap(2, g, g, d2.column(col)[g**4:])  # rows: C^3 then C^2
        diff = cone_part + reading_residuals(A, T, mu1, theta1)["display"]
        bad = diff.witnesses("display")
        if bad:
            witnesses.append(Witness("display", (col,), bad[0].residual))
    return ValidationReport.collect(witnesses)
