"""Mechanical re-examination of the structural claims on concrete inputs.

A failing check carries its first witness; a check whose precondition failed is
marked skipped rather than failed.  Output order is fixed, so reports are byte-stable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AveragingOperator,
    Convention,
    InducedMode,
    LeibnizAlgebra,
    ValidationReport,
    Witness,
    check_morphism,
    induced_algebra,
    lift_symmetry,
    validate_averaging,
    validate_leibniz,
)
from .cochain import chain_map_defect, cochain_dim, unrank_lex
from .cohomology import ComplexKind, ComplexSpec, square_check
from .deformation import READINGS, TruncatedDeformation, display_matches_cone, reading_residuals
from .ratmat import RatMatrix
from .representation import (
    Representation,
    action_sign_claim,
    induced_representation,
    self_representation,
    validate_averaging_representation,
    validate_representation,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
AUDIT_DEGREE = 3
MODES = (InducedMode.STRICT, InducedMode.SUM)


@dataclass(frozen=True)
class AuditCheck:
    claim: str
    verdict: str
    mode: str | None = None
    witness: Witness | None = None
    failures: int = 0
    detail: str = ""

    @property
    def label(self) -> str:
        return f"{self.claim}[{self.mode}]" if self.mode else self.claim

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "mode": self.mode,
            "verdict": self.verdict,
            "failures": self.failures,
            "witness": self.witness.to_json() if self.witness else None,
            "detail": self.detail,
        }

    def line(self) -> str:
        text = f"{self.verdict.upper():8} {self.label}"
        if self.verdict == FAIL:
            text += f": {self.failures} failure(s)"
            if self.witness is not None:
                text += f"; first {self.witness.describe()}"
        if self.detail:
            text += f" ({self.detail})"
        return text


@dataclass
class AuditReport:
    checks: list[AuditCheck] = field(default_factory=list)

    def add(self, check: AuditCheck) -> AuditCheck:
        self.checks.append(check)
        return check

    def get(self, claim: str, mode: str | None = None) -> AuditCheck:
        for c in self.checks:
            if c.claim == claim and c.mode == mode:
                return c
        raise KeyError((claim, mode))

    def verdicts(self) -> dict[str, str]:
        return {c.label: c.verdict for c in self.checks}

    @property
    def any_failed(self) -> bool:
        return any(c.verdict == FAIL for c in self.checks)

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks]}

    def text(self) -> str:
        return "\n".join(c.line() for c in self.checks) + "\n"


def _from_report(claim: str, rep: ValidationReport, mode: InducedMode | str | None = None) -> AuditCheck:
    if isinstance(mode, InducedMode):
        mode = mode.value
    return AuditCheck(claim, PASS if rep.passed else FAIL, mode, rep.first, rep.failures)


def _skipped(claim: str, missing: list[str], mode: InducedMode | None = None) -> AuditCheck:
    return AuditCheck(claim, SKIPPED, mode.value if mode else None,
                      detail="precondition failed: " + ", ".join(missing))


def _matrix_witness(M: RatMatrix, n_in: int, n_out: int, g: int, m: int, cone: bool) -> Witness:
    """First failing basis cochain of a defect matrix, evaluated at its first failing argument tuple."""
    r, c, _ = M.first_nonzero()

    def locate(pos: int, n: int) -> tuple[str, int, int]:
        part = ""
        if cone:
            part = "f" if n else "a"
            if n > 0 and pos >= cochain_dim(n, g, m):
                pos -= cochain_dim(n, g, m)
                n, part = n - 1, "h"
        return part, n, pos

    src_part, src_n, src_pos = locate(c, n_in)
    idx, p = divmod(src_pos, m)
    args = ",".join(f"e{i + 1}" for i in unrank_lex(idx, g, src_n))
    source = f"{src_part or 'f'}({args}) = f{p + 1}" if src_n else f"{src_part or 'a'} = f{p + 1}"
    out_part, out_n, out_pos = locate(r, n_out)
    block = out_pos // m
    base = r - out_pos % m
    residual = tuple(M[base + q, c] for q in range(m))
    tag = f"basis cochain {source}, output {out_part or 'value'}" if cone else f"basis cochain {source}"
    return Witness(tag, unrank_lex(block, g, out_n), residual)


def _square_zero(claim: str, spec: ComplexSpec, mode: InducedMode) -> AuditCheck:
    g, m = spec.representation.gdim, spec.representation.mdim
    bad = []
    for n in range(AUDIT_DEGREE):
        chk = square_check(spec, n)
        if not chk.is_zero:
            bad.append(chk)
    if not bad:
        return AuditCheck(claim, PASS, mode.value, detail=f"degrees 0..{AUDIT_DEGREE - 1}")
    first = bad[0]
    w = _matrix_witness(first.product, first.degree, first.degree + 2, g, m, spec.kind is ComplexKind.AL)
    detail = "; ".join(f"degree {c.degree}: defect rank {c.defect_rank}" for c in bad)
    return AuditCheck(claim, FAIL, mode.value, w, len(bad), detail)


def _chain_map(R: Representation, T: AveragingOperator, mode: InducedMode) -> AuditCheck:
    g, m = R.gdim, R.mdim
    bad = []
    for n in range(AUDIT_DEGREE):
        M = chain_map_defect(R, T, n, mode)
        if not M.is_zero():
            bad.append((n, M))
    if not bad:
        return AuditCheck("chain-map", PASS, mode.value, detail=f"degrees 0..{AUDIT_DEGREE - 1}")
    n, M = bad[0]
    w = _matrix_witness(M, n, n + 1, g, m, cone=False)
    detail = "failing degrees " + ",".join(str(k) for k, _ in bad)
    return AuditCheck("chain-map", FAIL, mode.value, w, len(bad), detail)


def audit(A: LeibnizAlgebra, T: AveragingOperator, R: Representation | None = None,
          deformation: TruncatedDeformation | None = None) -> AuditReport:
    """Run every check, in both induced modes where the mode matters.

    R defaults to the self-representation with θ_M = θ.  The deformation, when given,
    must be over (A, T); its first-order terms are tested against the three readings
    of the first-order averaging condition.
    """
    report = AuditReport()
    if R is None:
        R = self_representation(A, T)
    self_rep = self_representation(A, T)

    left = report.add(_from_report("leibniz", validate_leibniz(A, Convention.LEFT), "left")).verdict == PASS
    report.add(_from_report("leibniz", validate_leibniz(A, Convention.RIGHT), "right"))
    averaging = report.add(_from_report("averaging", validate_averaging(A, T))).verdict == PASS
    rep_ok = report.add(_from_report("representation", validate_representation(R))).verdict == PASS

    has_tm = R.theta_m is not None
    if rep_ok and has_tm:
        avg_rep = report.add(_from_report("averaging-representation",
                                          validate_averaging_representation(R, T))).verdict == PASS
    else:
        missing = (["representation"] if not rep_ok else []) + (["thetaM present"] if not has_tm else [])
        report.add(_skipped("averaging-representation", missing))
        avg_rep = False

    report.add(_from_report("lift-symmetry", lift_symmetry(A, T)))
    if has_tm:
        report.add(_from_report("action-sign-claim", action_sign_claim(R, T)))
    else:
        report.add(_skipped("action-sign-claim", ["thetaM present"]))

    base_missing = [name for name, ok in (("leibniz[left]", left), ("averaging", averaging)) if not ok]
    rep_missing = base_missing + [name for name, ok in (("representation", rep_ok),
                                                          ("averaging-representation", avg_rep)) if not ok]
    self_ok = validate_representation(self_rep).passed and validate_averaging_representation(self_rep, T).passed
    self_missing = base_missing + ([] if self_ok else ["self-representation"])

    for mode in MODES:
        if base_missing:
            for claim in ("induced-leibniz", "induced-averaging", "induced-morphism"):
                report.add(_skipped(claim, base_missing, mode))
            continue
        B = induced_algebra(A, T, mode)
        report.add(_from_report("induced-leibniz", validate_leibniz(B, Convention.LEFT), mode))
        report.add(_from_report("induced-averaging", validate_averaging(B, T), mode))
        report.add(_from_report("induced-morphism", check_morphism(A, B, T, T, T.matrix), mode))

    for mode in MODES:
        if rep_missing:
            for claim in ("induced-representation", "induced-averaging-representation",
                          "operator-square-zero", "chain-map", "cone-square-zero"):
                report.add(_skipped(claim, rep_missing, mode))
            continue
        Ri = induced_representation(R, T, mode)
        report.add(_from_report("induced-representation", validate_representation(Ri), mode))
        report.add(_from_report("induced-averaging-representation", validate_averaging_representation(Ri, T), mode))
        report.add(_square_zero("operator-square-zero", ComplexSpec(ComplexKind.ALO, R, T, mode, AUDIT_DEGREE), mode))
        report.add(_chain_map(R, T, mode))
        report.add(_square_zero("cone-square-zero", ComplexSpec(ComplexKind.AL, R, T, mode, AUDIT_DEGREE), mode))

    for mode in MODES:
        if self_missing:
            report.add(_skipped("cocycle-display", self_missing, mode))
        else:
            report.add(_from_report("cocycle-display", display_matches_cone(A, T, mode), mode))

    if deformation is not None:
        if deformation.order < 1:
            for reading in READINGS:
                report.add(_skipped(f"deformation-reading:{reading}", ["order >= 1"]))
        else:
            res = reading_residuals(A, T, deformation.mu[1], deformation.theta[1])
            for reading in READINGS:
                ws = res[reading].witnesses(reading)
                report.add(AuditCheck(f"deformation-reading:{reading}", FAIL if ws else PASS, None,
                                      ws[0] if ws else None, len(ws)))
    return report
