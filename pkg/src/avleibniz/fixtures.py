"""JSON fixture files: parsing with field-level diagnostics, and serialization.

Indices in files are 1-based; rationals are integers or "p/q" strings.

  algebra         {"dimension": g, "brackets": [{"i", "j", "k", "c"}, ...], "convention": "left"|"right"}
  operator        {"matrix": [[...], ...]}
  representation  {"mdim": m, "l": [{"i", "j", "k", "c"}], "r": [...], "thetaM": [[...]]}
                  l entry: l(e_i, f_j) has coefficient c on f_k;  r entry: r(f_i, e_j) has c on f_k
  deformation     {"order": N, "mu": [[brackets of μ_1], ..., [brackets of μ_N]], "theta": [θ_1, ..., θ_N]}
  isomorphism     {"order": N, "psi": [ψ_1, ..., ψ_N]}

Deformation and isomorphism files list orders 1..N; the base structure and ψ_0 = id are implied.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import AveragingOperator, Convention, InvalidInput, LeibnizAlgebra
from .cochain import MultilinearMap
from .deformation import FormalIsomorphism, TruncatedDeformation
from .ratmat import RatMatrix, as_rational, format_rational
from .representation import Representation

MAX_DIM = 6


class ParseError(InvalidInput):
    def __init__(self, source: str, message: str):
        super().__init__(f"{source}: {message}")
        self.source = source


def fixture_dir() -> Path:
    return Path(str(resources.files("avleibniz") / "fixtures"))


def bundled_fixtures() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def resolve(path: str | Path) -> Path:
    """A filesystem path, or the name of a bundled fixture (with or without .json)."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (fixture_dir() / p.name, fixture_dir() / f"{p.name}.json"):
        if cand.exists():
            return cand
    raise ParseError(str(path), "no such file or bundled fixture")


def read_json(path: str | Path) -> tuple[str, dict]:
    p = resolve(path)
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ParseError(str(path), str(exc)) from None
    if not isinstance(doc, dict):
        raise ParseError(str(path), "top level must be a JSON object")
    return str(path), doc


# --- field readers ---

def _keys(src: str, doc: dict, where: str, required: set, optional: set = frozenset()) -> None:
    missing = required - doc.keys()
    if missing:
        raise ParseError(src, f"{where}: missing key(s) {', '.join(sorted(missing))}")
    unknown = doc.keys() - required - optional
    if unknown:
        raise ParseError(src, f"{where}: unknown key(s) {', '.join(sorted(unknown))}")


def _int(src: str, value: Any, where: str, lo: int, hi: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(src, f"{where}: expected an integer, got {value!r}")
    if not lo <= value <= hi:
        raise ParseError(src, f"{where}: {value} outside {lo}..{hi}")
    return value


def _rat(src: str, value: Any, where: str):
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(src, f"{where}: {value!r} is not an exact rational (use an integer or \"p/q\")") from None


def _matrix(src: str, value: Any, where: str, size: int | None = None) -> RatMatrix:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError(src, f"{where}: expected a non-empty list of rows")
    n = len(value)
    if size is not None and n != size:
        raise ParseError(src, f"{where}: expected {size} rows, got {n}")
    rows = []
    for r, row in enumerate(value):
        if len(row) != n:
            raise ParseError(src, f"{where}[{r}]: expected {n} entries (matrices are square), got {len(row)}")
        rows.append([_rat(src, x, f"{where}[{r}][{c}]") for c, x in enumerate(row)])
    return RatMatrix.from_rows(rows)


def _triples(src: str, value: Any, where: str, dims: tuple[int, int, int]) -> list[tuple[int, int, int, Any]]:
    if not isinstance(value, list):
        raise ParseError(src, f"{where}: expected a list of entries")
    out = []
    for n, entry in enumerate(value):
        at = f"{where}[{n}]"
        if not isinstance(entry, dict):
            raise ParseError(src, f"{at}: expected an object with i, j, k, c")
        _keys(src, entry, at, {"i", "j", "k", "c"})
        i = _int(src, entry["i"], f"{at}.i", 1, dims[0])
        j = _int(src, entry["j"], f"{at}.j", 1, dims[1])
        k = _int(src, entry["k"], f"{at}.k", 1, dims[2])
        out.append((i - 1, j - 1, k - 1, _rat(src, entry["c"], f"{at}.c")))
    return out


# --- typed loaders ---

def algebra_from_doc(src: str, doc: dict) -> LeibnizAlgebra:
    _keys(src, doc, "algebra", {"dimension", "brackets"}, {"convention"})
    g = _int(src, doc["dimension"], "dimension", 1, MAX_DIM)
    conv = doc.get("convention", "left")
    if conv not in ("left", "right"):
        raise ParseError(src, f"convention: expected \"left\" or \"right\", got {conv!r}")
    return LeibnizAlgebra.from_entries(g, _triples(src, doc["brackets"], "brackets", (g, g, g)), Convention(conv))


def operator_from_doc(src: str, doc: dict, dim: int | None = None) -> AveragingOperator:
    _keys(src, doc, "operator", {"matrix"})
    M = _matrix(src, doc["matrix"], "matrix", dim)
    if M.rows > MAX_DIM:
        raise ParseError(src, f"matrix: size {M.rows} exceeds {MAX_DIM}")
    return AveragingOperator(M)


def representation_from_doc(src: str, doc: dict, algebra: LeibnizAlgebra) -> Representation:
    _keys(src, doc, "representation", {"mdim", "l", "r"}, {"thetaM"})
    g = algebra.dim
    m = _int(src, doc["mdim"], "mdim", 1, MAX_DIM)
    l = [[[0] * m for _ in range(m)] for _ in range(g)]
    r = [[[0] * m for _ in range(m)] for _ in range(g)]
    for i, a, b, c in _triples(src, doc["l"], "l", (g, m, m)):
        l[i][b][a] += c
    for a, j, b, c in _triples(src, doc["r"], "r", (m, g, m)):
        r[j][b][a] += c
    tm = _matrix(src, doc["thetaM"], "thetaM", m) if "thetaM" in doc else None
    return Representation(algebra, m, tuple(RatMatrix.from_rows(x) for x in l),
                          tuple(RatMatrix.from_rows(x) for x in r), tm)


def deformation_from_doc(src: str, doc: dict, algebra: LeibnizAlgebra, operator: AveragingOperator) -> TruncatedDeformation:
    _keys(src, doc, "deformation", {"order", "mu", "theta"})
    g = algebra.dim
    N = _int(src, doc["order"], "order", 0, 64)
    mu, theta = doc["mu"], doc["theta"]
    if not isinstance(mu, list) or len(mu) != N:
        raise ParseError(src, f"mu: expected {N} per-order bracket lists (orders 1..{N})")
    if not isinstance(theta, list) or len(theta) != N:
        raise ParseError(src, f"theta: expected {N} matrices (orders 1..{N})")
    mus = []
    for n, entries in enumerate(mu, start=1):
        mus.append(MultilinearMap.from_bracket(
            LeibnizAlgebra.from_entries(g, _triples(src, entries, f"mu[{n - 1}]", (g, g, g)))))
    ths = [_matrix(src, t, f"theta[{n}]", g) for n, t in enumerate(theta)]
    return TruncatedDeformation.from_base(algebra, operator, mus, ths)


def isomorphism_from_doc(src: str, doc: dict, dim: int) -> FormalIsomorphism:
    _keys(src, doc, "isomorphism", {"order", "psi"})
    N = _int(src, doc["order"], "order", 0, 64)
    psi = doc["psi"]
    if not isinstance(psi, list) or len(psi) != N:
        raise ParseError(src, f"psi: expected {N} matrices (orders 1..{N})")
    return FormalIsomorphism((RatMatrix.identity(dim),) + tuple(_matrix(src, p, f"psi[{n}]", dim) for n, p in enumerate(psi)))


def load_algebra(path) -> LeibnizAlgebra:
    return algebra_from_doc(*read_json(path))


def load_operator(path, dim: int | None = None) -> AveragingOperator:
    return operator_from_doc(*read_json(path), dim)


def load_representation(path, algebra: LeibnizAlgebra) -> Representation:
    src, doc = read_json(path)
    return representation_from_doc(src, doc, algebra)


def load_deformation(path, algebra: LeibnizAlgebra, operator: AveragingOperator) -> TruncatedDeformation:
    src, doc = read_json(path)
    return deformation_from_doc(src, doc, algebra, operator)


def load_isomorphism(path, dim: int) -> FormalIsomorphism:
    src, doc = read_json(path)
    return isomorphism_from_doc(src, doc, dim)


KINDS = {
    "dimension": "algebra",
    "matrix": "operator",
    "mdim": "representation",
    "mu": "deformation",
    "psi": "isomorphism",
}


def fixture_kind(doc: dict) -> str:
    for key, kind in KINDS.items():
        if key in doc:
            return kind
    raise InvalidInput("unrecognised fixture: none of " + ", ".join(KINDS) + " present")


def parse_fixture(path, algebra: LeibnizAlgebra | None = None, operator: AveragingOperator | None = None):
    """Load any fixture kind; representations need ``algebra``, deformations also ``operator``."""
    src, doc = read_json(path)
    try:
        kind = fixture_kind(doc)
    except InvalidInput as exc:
        raise ParseError(src, str(exc)) from None
    if kind == "algebra":
        return algebra_from_doc(src, doc)
    if kind == "operator":
        return operator_from_doc(src, doc, algebra.dim if algebra else None)
    if algebra is None:
        raise ParseError(src, f"a {kind} fixture needs its algebra")
    if kind == "representation":
        return representation_from_doc(src, doc, algebra)
    if kind == "isomorphism":
        return isomorphism_from_doc(src, doc, algebra.dim)
    if operator is None:
        raise ParseError(src, "a deformation fixture needs its base operator")
    return deformation_from_doc(src, doc, algebra, operator)


# --- serialization ---

def _rat_json(x) -> int | str:
    return x.numerator if x.denominator == 1 else format_rational(x)


def matrix_to_json(M: RatMatrix) -> list[list]:
    return [[_rat_json(x) for x in row] for row in M.to_rows()]


def _entries_to_json(entries) -> list[dict]:
    return [{"i": i + 1, "j": j + 1, "k": k + 1, "c": _rat_json(c)} for i, j, k, c in entries]


def algebra_to_json(A: LeibnizAlgebra) -> dict:
    doc = {"dimension": A.dim, "brackets": _entries_to_json(A.entries())}
    if A.convention is not Convention.LEFT:
        doc["convention"] = A.convention.value
    return doc


def operator_to_json(T: AveragingOperator) -> dict:
    return {"matrix": matrix_to_json(T.matrix)}


def representation_to_json(R: Representation) -> dict:
    l = sorted((i, a, b, v) for i, M in enumerate(R.l) for b, a, v in M.items())
    r = sorted((a, j, b, v) for j, M in enumerate(R.r) for b, a, v in M.items())
    doc = {"mdim": R.mdim, "l": _entries_to_json(l), "r": _entries_to_json(r)}
    if R.theta_m is not None:
        doc["thetaM"] = matrix_to_json(R.theta_m)
    return doc


def _bilinear_entries(mu: MultilinearMap) -> list[dict]:
    g = mu.gdim
    entries = [(i, j, k, x) for i in range(g) for j in range(g) for k, x in enumerate(mu.eval((i, j))) if x]
    return _entries_to_json(entries)


def deformation_to_json(D: TruncatedDeformation) -> dict:
    return {
        "order": D.order,
        "mu": [_bilinear_entries(m) for m in D.mu[1:]],
        "theta": [matrix_to_json(t) for t in D.theta[1:]],
    }


def isomorphism_to_json(P: FormalIsomorphism) -> dict:
    return {"order": P.order, "psi": [matrix_to_json(p) for p in P.psi[1:]]}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class Fixture:
    """A bundled fixture name with its kind, for listing."""

    name: str
    kind: str


def list_fixtures() -> list[Fixture]:
    out = []
    for name in bundled_fixtures():
        _, doc = read_json(fixture_dir() / f"{name}.json")
        out.append(Fixture(name, fixture_kind(doc)))
    return out
