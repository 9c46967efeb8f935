"""Representations of (averaging) Leibniz algebras and the induced representation.

Actions are stored as one m x m matrix per basis element of the algebra:
``l[i]`` is ``a -> l(e_i, a)`` and ``r[j]`` is ``a -> r(a, e_j)``.
"""
from __future__ import annotations

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
    Vector,
    Witness,
    induced_algebra,
    unit_vector,
    vadd,
    vsub,
)
from .ratmat import RatMatrix


def _combine(mats: Sequence[RatMatrix], coeffs: Sequence[Fraction], size: int) -> RatMatrix:
    out = RatMatrix.zeros(size, size)
    for M, s in zip(mats, coeffs):
        if s:
            out = out + M.scale(s)
    return out


@dataclass(frozen=True)
class Representation:
    algebra: LeibnizAlgebra
    mdim: int
    l: tuple[RatMatrix, ...]
    r: tuple[RatMatrix, ...]
    theta_m: RatMatrix | None = None

    def __post_init__(self):
        g, m = self.algebra.dim, self.mdim
        if len(self.l) != g or len(self.r) != g:
            raise InvalidInput(f"need {g} left and {g} right action matrices")
        for M in (*self.l, *self.r):
            if M.shape != (m, m):
                raise InvalidInput(f"action matrices must be {m}x{m}")
        if self.theta_m is not None and self.theta_m.shape != (m, m):
            raise InvalidInput(f"thetaM must be {m}x{m}")

    @property
    def gdim(self) -> int:
        return self.algebra.dim

    def left(self, u: Sequence[Fraction], a: Sequence[Fraction]) -> Vector:
        """l(u, a) for arbitrary vectors."""
        return _combine(self.l, u, self.mdim).apply(a)

    def right(self, a: Sequence[Fraction], u: Sequence[Fraction]) -> Vector:
        """r(a, u) for arbitrary vectors."""
        return _combine(self.r, u, self.mdim).apply(a)

    def left_of(self, u: Sequence[Fraction]) -> RatMatrix:
        return _combine(self.l, u, self.mdim)

    def right_of(self, u: Sequence[Fraction]) -> RatMatrix:
        return _combine(self.r, u, self.mdim)

    def with_theta(self, theta_m: RatMatrix | None) -> "Representation":
        return Representation(self.algebra, self.mdim, self.l, self.r, theta_m)


def self_representation(A: LeibnizAlgebra, T: AveragingOperator | None = None) -> Representation:
    """The algebra acting on itself by left and right brackets."""
    g = A.dim
    l = tuple(A.left_matrix(i) for i in range(g))
    r = tuple(A.right_matrix(j) for j in range(g))
    return Representation(A, g, l, r, T.matrix if T is not None else None)


def validate_representation(R: Representation) -> ValidationReport:
    """The three action identities on all (u, v, a) basis tuples, tagged 1-3.

    1. l(u, l(v,a)) = l([u,v], a) + l(v, l(u,a))
    2. l(u, r(a,v)) = r(l(u,a), v) + r(a, [u,v])
    3. r(a, [u,v]) = r(r(a,u), v) + l(u, r(a,v))
    """
    A, g, m = R.algebra, R.gdim, R.mdim
    L = [R.l[i] for i in range(g)]
    Rt = [R.r[j] for j in range(g)]
    bl = {(u, v): R.left_of(A.c[u][v]) for u, v in product(range(g), repeat=2)}
    br = {(u, v): R.right_of(A.c[u][v]) for u, v in product(range(g), repeat=2)}
    witnesses = []
    for u, v, a in product(range(g), range(g), range(m)):
        ea = unit_vector(m, a)
        la = L[u].apply(ea)
        ra_v = Rt[v].apply(ea)
        checks = (
            (L[u].apply(L[v].apply(ea)), vadd(bl[u, v].apply(ea), L[v].apply(la))),
            (L[u].apply(ra_v), vadd(Rt[v].apply(la), br[u, v].apply(ea))),
            (br[u, v].apply(ea), vadd(Rt[v].apply(Rt[u].apply(ea)), L[u].apply(ra_v))),
        )
        for tag, (lhs, rhs) in enumerate(checks, start=1):
            res = vsub(lhs, rhs)
            if any(res):
                witnesses.append(Witness(f"identity-{tag}", (u, v, a), res))
    witnesses.sort(key=lambda w: (w.index, w.tag))
    return ValidationReport.collect(witnesses)


def validate_averaging_representation(R: Representation, T: AveragingOperator) -> ValidationReport:
    """Compatibility of θ_M with θ on all (u, a) basis pairs:

    l(θu, θ_M a) = θ_M l(θu, a) = θ_M l(u, θ_M a)
    r(θ_M a, θu) = θ_M r(θ_M a, u) = θ_M r(a, θu)
    """
    if R.theta_m is None:
        raise InvalidInput("representation has no thetaM")
    if T.dim != R.gdim:
        raise InvalidInput("operator dimension does not match the algebra")
    TM = R.theta_m
    g, m = R.gdim, R.mdim
    witnesses = []
    for u, a in product(range(g), range(m)):
        ea = unit_vector(m, a)
        lt = R.left_of(T.image(u))
        rt = R.right_of(T.image(u))
        tma = TM.apply(ea)
        l_left = lt.apply(tma)
        r_left = rt.apply(tma)
        chains = (
            ("left-action:left=middle", l_left, TM.apply(lt.apply(ea))),
            ("left-action:left=right", l_left, TM.apply(R.l[u].apply(tma))),
            ("right-action:left=middle", r_left, TM.apply(R.r[u].apply(tma))),
            ("right-action:left=right", r_left, TM.apply(rt.apply(ea))),
        )
        for tag, lhs, rhs in chains:
            res = vsub(lhs, rhs)
            if any(res):
                witnesses.append(Witness(tag, (u, a), res))
    return ValidationReport.collect(witnesses)


def induced_representation(R: Representation, T: AveragingOperator,
                           mode: InducedMode = InducedMode.STRICT) -> Representation:
    """Actions with θ inserted, over the matching induced algebra.

    STRICT: l'(u, a) = l(θu, a), r'(a, u) = r(a, θu).
    SUM:    l'(u, a) = l(θu, a) - θ_M l(u, a), likewise for r'.
    θ_M is carried over unchanged.
    """
    if T.dim != R.gdim:
        raise InvalidInput("operator dimension does not match the algebra")
    g = R.gdim
    l = [R.left_of(T.image(i)) for i in range(g)]
    r = [R.right_of(T.image(j)) for j in range(g)]
    if mode is InducedMode.SUM:
        if R.theta_m is None:
            raise InvalidInput("SUM mode needs thetaM")
        l = [li - R.theta_m @ R.l[i] for i, li in enumerate(l)]
        r = [rj - R.theta_m @ R.r[j] for j, rj in enumerate(r)]
    return Representation(induced_algebra(R.algebra, T, mode), R.mdim, tuple(l), tuple(r), R.theta_m)


def action_sign_claim(R: Representation, T: AveragingOperator) -> ValidationReport:
    """Whether ``l(θu, a) = -θ_M l(u, a)`` and ``r(a, θu) = -θ_M r(a, u)`` on all basis pairs.

    Kept as a recorded check only: it already fails for θ = θ_M = id with a nonzero action.
    """
    if R.theta_m is None:
        raise InvalidInput("representation has no thetaM")
    TM = R.theta_m
    witnesses = []
    for u, a in product(range(R.gdim), range(R.mdim)):
        ea = unit_vector(R.mdim, a)
        lhs_l = R.left_of(T.image(u)).apply(ea)
        lhs_r = R.right_of(T.image(u)).apply(ea)
        res_l = vadd(lhs_l, TM.apply(R.l[u].apply(ea)))
        res_r = vadd(lhs_r, TM.apply(R.r[u].apply(ea)))
        if any(res_l):
            witnesses.append(Witness("left-action", (u, a), res_l))
        if any(res_r):
            witnesses.append(Witness("right-action", (u, a), res_r))
    return ValidationReport.collect(witnesses)
