"""Request/response models and one handler per verb.

The handlers are plain functions from a pydantic request to a ``Response``;
``suboplex.service`` mounts them as HTTP routes and ``suboplex.cli`` calls them
directly (or through the service with ``--server``).
"""

from __future__ import annotations

from contextlib import nullcontext
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from . import algebra as A
from . import classes as K
from . import geometry as G
from . import resolutions as R
from . import separation as S
from .errors import CrossCheckError, InputError, SuboplexError
from .topology import (
    BettiTable,
    betti_table,
    face_limit,
    has_pure_betti,
    homological_dimension,
    sr_dimension,
)

FieldName = Literal["rational", "gf2", "both"]

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_DISCREPANCY = 0, 1, 2, 3


class ClassQuery(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    class_spec: dict[str, Any] = Field(alias="class")
    field: FieldName = "rational"
    threads: int = Field(default=1, ge=1, le=64)
    limit_faces: Optional[int] = Field(default=None, ge=1)


class SeparateQuery(ClassQuery):
    target: str


class FarkasQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subspace: Optional[dict[str, Any]] = None
    arrangement: Optional[dict[str, Any]] = None
    affine: Optional[dict[str, Any]] = None
    cross_check: bool = True


class ResolveQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    resolution: dict[str, Any]
    check: bool = True
    limit_faces: Optional[int] = Field(default=None, ge=1)


class VerifyQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    filter: Optional[str] = None


class Response(BaseModel):
    verb: str
    ok: bool
    exit_code: int
    result: dict[str, Any]


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
    exit_code: int


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, CrossCheckError):
        return EXIT_DISCREPANCY
    return EXIT_USAGE


def error_response(exc: SuboplexError) -> ErrorResponse:
    return ErrorResponse(error=ErrorBody(code=exc.code, message=str(exc)), exit_code=exit_code_for(exc))


def _respond(verb: str, ok: bool, result: dict[str, Any], negative_code: int = EXIT_NEGATIVE) -> Response:
    return Response(verb=verb, ok=ok, exit_code=EXIT_OK if ok else negative_code, result=result)


def _limit(n: Optional[int]):
    return face_limit(n) if n else nullcontext()


def load_class(spec: dict[str, Any]) -> K.PartialClass:
    C = K.build_class(spec)
    C.require_nonempty()
    return C


def _tables(C: K.PartialClass, field_name: str, threads: int) -> dict[str, BettiTable]:
    if field_name != "both":
        return {field_name: betti_table(C, field_name, threads)}
    out = {f: betti_table(C, f, threads) for f in ("rational", "gf2")}
    if not out["rational"].same_entries(out["gf2"]):
        raise CrossCheckError("rational and GF(2) Betti tables differ")
    return out


def _class_info(C: K.PartialClass) -> dict[str, Any]:
    return {"n": C.n, "m": C.m, "size": len(C), "tag": C.tag}


def _dims(C: K.PartialClass, T: BettiTable) -> dict[str, Any]:
    return {
        "dim_h": homological_dimension(T),
        "dim_SR": sr_dimension(T),
        "dim_VC": A.vc_dimension(C) if C.m == 2 else None,
    }


def _check_neighbors(C: K.PartialClass, T: BettiTable) -> None:
    """beta_1 sits exactly at meets of neighbor pairs, with rank 1."""
    if len(C) < 2 or not C.is_total:
        return
    meets = set()
    for pair in K.neighbors(C):
        f, g = sorted(pair, key=K.pf_key)
        meets.add(f.meet(g))
    first = {pf: r for (i, pf), r in T.entries.items() if i == 1}
    if set(first) != meets or any(r != 1 for r in first.values()):
        raise CrossCheckError("first Betti numbers do not match the neighbor pairs")


# ----------------------------------------------------------------------------
# handlers


def analyze(q: ClassQuery) -> Response:
    with _limit(q.limit_faces):
        C = load_class(q.class_spec)
        tables = _tables(C, q.field, q.threads)
        T = next(iter(tables.values()))
        _check_neighbors(C, T)
        result: dict[str, Any] = {"class": _class_info(C)}
        result["betti"] = {f: t.to_json() for f, t in tables.items()}
        result["dims"] = _dims(C, T)
        result["pure_betti"] = has_pure_betti(T)
        result["extentures"] = [str(p) for p in A.extentures(C)]
        if C.m == 2:
            result["dims"]["rad_VC"] = A.vc_radius(C)
            cm = A.is_cm_class(C, T)
            result["cm_class"] = cm.cm
            result["cm_canonical"] = A.is_cm_canonical(C, T)
        result["euler"] = {str(pf): c for pf, c in sorted(A.euler_characteristic(C, T).items(), key=lambda kv: K.pf_key(kv[0]))}
    return _respond("analyze", True, result)


def betti(q: ClassQuery) -> Response:
    with _limit(q.limit_faces):
        C = load_class(q.class_spec)
        tables = _tables(C, q.field, q.threads)
    result: dict[str, Any] = {"class": _class_info(C)}
    if q.field == "both":
        result["tables"] = {f: t.to_json() for f, t in tables.items()}
        result["fields_agree"] = True
    else:
        result["field"] = q.field
        result["table"] = tables[q.field].to_json()
    return _respond("betti", True, result)


def dims(q: ClassQuery) -> Response:
    with _limit(q.limit_faces):
        C = load_class(q.class_spec)
        T = next(iter(_tables(C, q.field, q.threads).values()))
        return _respond("dims", True, _dims(C, T))


def ideal(q: ClassQuery) -> Response:
    with _limit(q.limit_faces):
        C = load_class(q.class_spec)
        ex = A.extentures(C)
        result = {
            "stanley_reisner": A.sr_generators(C).to_json(),
            "canonical": A.canonical_generators(C).to_json(),
            "extentures": [str(p) for p in ex],
        }
        if C.is_total:
            result["is_class_ideal"] = A.is_class_ideal(ex, C.n, C.m)
    return _respond("ideal", True, result)


def cm(q: ClassQuery) -> Response:
    with _limit(q.limit_faces):
        C = load_class(q.class_spec)
        T = next(iter(_tables(C, q.field, q.threads).values()))
        rep = A.is_cm_class(C, T)
        result: dict[str, Any] = {"cm_class": rep.cm, "cm_canonical": A.is_cm_canonical(C, T)}
        if rep.cm:
            result["cublex"] = [str(p) for p in rep.cublex]
        elif rep.witness is not None:
            i, pf = rep.witness
            result["witness"] = {"i": i, "pf": str(pf), "expected_i": C.n - len(pf.dom)}
    return _respond("cm", rep.cm, result)


def _geometry_of(spec: dict[str, Any]) -> Optional[G.Geometry]:
    kind = str(spec.get("kind", "")).lower()
    if kind == "polythr":
        return G.cube_lift(int(spec["d"]), int(spec["k"]))
    if kind == "linthr":
        return G.PointConfig.from_json(spec) if "points" in spec else G.cube_points(int(spec["d"]))
    return None


def separate(q: SeparateQuery) -> Response:
    with _limit(q.limit_faces):
        C = load_class(q.class_spec)
        if not C.is_total:
            raise InputError("separate needs a class of total functions")
        f = K.named_function(q.target, C.n, C.m)
        field_name = "rational" if q.field == "both" else q.field
        rep = S.compare_betti(C, f, field_name)
        if C.m == 2:
            rep.local_maximum = S.maximal_principle(C, f, field_name)
        X = _geometry_of(q.class_spec)
        if X is not None:
            rep.weakly_representable = S.weak_representation_test(X, f, C, field_name)
        result = rep.to_json()
        if K.is_full(C):
            result["membership_conditions"] = S.membership_conditions(C, f, field_name)
            if len(set(result["membership_conditions"].values())) != 1:
                raise CrossCheckError("membership conditions disagree")
        if X is not None and not rep.member:
            result["projection"] = S.top_betti_check(X, f, C, rep.box).to_json()
            if not result["projection"]["holds"]:
                raise CrossCheckError("Betti numbers at the projection do not match the closed form")
    return _respond("separate", rep.member, result)


def farkas(q: FarkasQuery) -> Response:
    if q.subspace is not None:
        if q.arrangement is not None or q.affine is not None:
            raise InputError("give either a subspace or an arrangement with an affine subspace")
        L = G.LinearSubspace.from_json(q.subspace)
        cert = G.hom_farkas(L, q.cross_check)
        result: dict[str, Any] = {"certificate": cert.to_json(), "subspace": L.to_json()}
        if cert.kind == "hole":
            result["cells"] = [G.sign_str(t) for t in cert.cells]
            if q.cross_check and not G.verify_hole(L, cert):
                raise CrossCheckError("hole certificate does not re-verify")
    else:
        if q.arrangement is None or q.affine is None:
            raise InputError("affine Farkas needs both 'arrangement' and 'affine'")
        Aff = G.AffineArrangement.from_json(q.arrangement)
        N = G.AffineSubspace.from_json(q.affine)
        cert = G.affine_hom_farkas(Aff, N, q.cross_check)
        result = {"certificate": cert.to_json()}
        if cert.kind == "hole":
            result["cells"] = [G.sign_str(t) for t in cert.cells]
    return _respond("farkas", cert.kind == "witness", result)


def _build_resolution(spec: dict[str, Any]) -> tuple[R.LabeledComplex, K.PartialClass, str]:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("resolution spec needs a 'kind'")
    kind = str(spec["kind"]).lower()
    if kind == "point":
        f = K.PartialFunction.parse(str(spec.get("f", "")))
        return R.point_res(f), K.singleton(f), "canonical"
    if kind in ("join", "product"):
        X, C, _ = _build_resolution(spec.get("left", {}))
        Y, D, _ = _build_resolution(spec.get("right", {}))
        if kind == "join":
            return R.join_res(X, Y), K.union_class(C, D), "canonical"
        return R.product_res(X, Y), K.cartesian_union(C, D), "canonical"
    if kind == "restrict":
        X, C, _ = _build_resolution(spec.get("of", {}))
        U = spec.get("inputs")
        if not isinstance(U, list):
            raise InputError("restrict needs an 'inputs' list")
        return R.restrict_res(X, U), K.restrict_class(C, U), "canonical"
    params = {k: v for k, v in spec.items() if k != "kind"}
    return R.build_named_resolution(kind, params), R.class_for_named(kind, params), R.ideal_for_named(kind)


def resolve(q: ResolveQuery) -> Response:
    with _limit(q.limit_faces):
        X, C, which = _build_resolution(q.resolution)
        result: dict[str, Any] = {"complex": X.to_json(), "ideal": which}
        ok = True
        if q.check:
            rep = R.check_resolution(X, C, which)
            result["report"] = rep.to_json()
            ok = rep.ok
            result["top_cells"] = [{"id": c.id, "dim": c.dim} for c in X.top_cells()]
            if ok and not X.monomial:
                B = R.betti_table_from_resolution(X)
                if not B.same_entries(betti_table(C)):
                    raise CrossCheckError("Betti numbers from the resolution differ from the Hochster table")
                result["betti"] = B.to_json()
    return _respond("resolve", ok, result)


def verify_paper(q: VerifyQuery) -> Response:
    from .acceptance import run_all, select

    nums = select(q.filter)
    if not nums:
        raise InputError(f"no criterion matches filter {q.filter!r}")
    results = run_all(numbers=nums)
    passed = all(r.passed for r in results)
    result = {"criteria": [r.to_json() for r in results], "all_passed": passed, "lines": [r.line() for r in results]}
    return _respond("verify-paper", passed, result, negative_code=EXIT_DISCREPANCY)


HANDLERS = {
    "analyze": (ClassQuery, analyze),
    "betti": (ClassQuery, betti),
    "dims": (ClassQuery, dims),
    "ideal": (ClassQuery, ideal),
    "cm": (ClassQuery, cm),
    "separate": (SeparateQuery, separate),
    "farkas": (FarkasQuery, farkas),
    "resolve": (ResolveQuery, resolve),
    "verify-paper": (VerifyQuery, verify_paper),
}
