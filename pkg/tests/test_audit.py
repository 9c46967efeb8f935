import pytest

import oracle
from avleibniz import AveragingOperator, InducedMode, LeibnizAlgebra, audit, fixtures as fx, self_representation
from avleibniz.audit import FAIL, PASS, SKIPPED
from avleibniz.cochain import MultilinearMap
from avleibniz.deformation import TruncatedDeformation
from avleibniz.ratmat import RatMatrix
from helpers import to_c, to_rep, to_T


def test_ex22_with_ex24_operator():
    r = audit(fx.load_algebra("ex2_2"), fx.load_operator("ex2_4_theta"))
    assert r.get("leibniz", "left").verdict == FAIL
    assert r.get("leibniz", "right").verdict == PASS
    avg = r.get("averaging")
    assert avg.verdict == FAIL and avg.witness.describe() == "left=middle at (e1,e1): residual 1/2*e2"


def test_invalid_inputs_skip_dependents():
    r = audit(fx.load_algebra("ex2_2"), fx.load_operator("ex2_4_theta"))
    for mode in ("strict", "sum"):
        c = r.get("chain-map", mode)
        assert c.verdict == SKIPPED
        assert "leibniz[left]" in c.detail and "averaging" in c.detail


def test_abelian_theta_zero_all_pass():
    r = audit(LeibnizAlgebra.abelian(1), AveragingOperator.zero(1))
    assert not r.any_failed
    assert all(c.verdict == PASS for c in r.checks)


def test_every_check_listed():
    r = audit(fx.load_algebra("lie2"), AveragingOperator.identity(2),
              deformation=fx.load_deformation("lie2_base_def", fx.load_algebra("lie2"), AveragingOperator.identity(2)))
    labels = [c.label for c in r.checks]
    assert len(labels) == len(set(labels)) == 7 + 2 * 3 + 2 * 5 + 2 + 3


def test_does_not_mutate_inputs():
    A = fx.load_algebra("lie2")
    T = AveragingOperator.identity(2)
    before = (A.c, T.matrix.to_rows())
    audit(A, T)
    assert (A.c, T.matrix.to_rows()) == before


@pytest.mark.parametrize("name, T", [("lie2", AveragingOperator.identity(2)),
                                     ("lie2", AveragingOperator.from_rows([[0, 0], [0, 1]])),
                                     ("lie2", AveragingOperator.zero(2)),
                                     ("abelian2", AveragingOperator.from_rows([[1, 1], [0, 1]]))])
def test_verdicts_match_oracle(name, T):
    A = fx.load_algebra(name)
    R = self_representation(A, T)
    c, orep, t = to_c(A), to_rep(R), to_T(T)
    r = audit(A, T)
    for mode in InducedMode:
        m = mode.value
        expect = {
            "chain-map": all(oracle.chain_map_holds(c, orep, t, t, n, m) for n in range(3)),
            "induced-averaging": oracle.induced_averaging_holds(c, t, m),
            "induced-morphism": oracle.induced_morphism_holds(c, t, m),
            "operator-square-zero": all(oracle.partial_square_zero(c, orep, t, t, n, m) for n in range(3)),
        }
        for claim, ok in expect.items():
            assert r.get(claim, m).verdict == (PASS if ok else FAIL), (claim, m)
    assert r.get("action-sign-claim").verdict == (PASS if oracle.action_sign_claim_holds(orep, t, t) else FAIL)


def test_deformation_readings():
    A = fx.load_algebra("lie2")
    T = fx.load_operator("lie2_theta_e2")
    r = audit(A, T, deformation=fx.load_deformation("lie2_shifted_def", A, T))
    for reading in ("left=middle", "left=right", "display"):
        assert r.get(f"deformation-reading:{reading}").verdict == PASS

    # μ1 = 0, θ1 = diag(0,1) over θ = id: the two equalities fail, their merged display holds
    T = AveragingOperator.identity(2)
    D = TruncatedDeformation.from_base(A, T, [MultilinearMap.zero(2, 2, 2)], [RatMatrix.diag([0, 1])])
    r = audit(A, T, deformation=D)
    assert r.get("deformation-reading:left=middle").witness.describe() == "left=middle at (e1,e2): residual e1"
    assert r.get("deformation-reading:left=right").witness.describe() == "left=right at (e2,e1): residual -e1"
    assert r.get("deformation-reading:display").verdict == PASS
