"""Bridges from package objects to the oracle's plain-list layout, plus shared corpora."""
from fractions import Fraction

import oracle
from avleibniz import AveragingOperator, Convention, fixtures as fx, validate_averaging, validate_leibniz
from avleibniz.ratmat import RatMatrix


def to_c(A):
    return [[list(v) for v in row] for row in A.c]


def to_T(M):
    if isinstance(M, AveragingOperator):
        M = M.matrix
    return [list(r) for r in M.to_rows()]


def to_rep(R):
    g, m = R.gdim, R.mdim
    lt = [[[R.l[i][b, a] for b in range(m)] for a in range(m)] for i in range(g)]
    rt = [[[R.r[j][b, a] for b in range(m)] for j in range(g)] for a in range(m)]
    return oracle.Rep(g, m, lt, rt)


def rows(M: RatMatrix):
    return [list(r) for r in M.to_rows()]


def diag(*xs):
    return AveragingOperator(RatMatrix.diag([Fraction(x) for x in xs]))


def operators_for(dim):
    """A small stock of operators of the given dimension (names for test ids)."""
    ops = {"zero": AveragingOperator.zero(dim), "id": AveragingOperator.identity(dim)}
    if dim == 2:
        ops["e2"] = diag(0, 1)
        ops["half"] = diag(Fraction(1, 2), Fraction(1, 2))
    if dim == 4:
        ops["good"] = fx.load_operator("good_theta")
        ops["ex2_4"] = fx.load_operator("ex2_4_theta")
    return ops


ALGEBRAS = ("lie2", "abelian1", "abelian2", "ex2_2", "leib4")


def all_pairs():
    """Every (algebra name, operator name, A, T) of matching dimension."""
    out = []
    for name in ALGEBRAS:
        A = fx.load_algebra(name)
        for op, T in operators_for(A.dim).items():
            out.append((name, op, A, T))
    return out


def valid_pairs():
    return [p for p in all_pairs()
            if validate_leibniz(p[2], Convention.LEFT).passed and validate_averaging(p[2], p[3]).passed]


def pair_id(p):
    return f"{p[0]}-{p[1]}"
