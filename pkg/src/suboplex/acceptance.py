"""Replication suite: twelve numbered criteria, each a list of exact checks.

Shared by ``suboplex verify-paper`` and ``tests/test_acceptance.py``.  A
criterion passes when all its checks pass and it finishes within its time
budget.
"""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any

from . import algebra as A
from . import classes as K
from . import geometry as G
from . import resolutions as R
from . import separation as S
from .classes import PartialClass, PartialFunction
from .errors import SuboplexError
from .lp import fm_feasible
from .topology import (
    BettiTable,
    betti_at,
    betti_table,
    has_pure_betti,
    homological_dimension,
    restriction_sequence_check,
    sr_dimension,
)

DAGGER4 = PartialFunction.empty(4)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class CriterionResult:
    number: int
    title: str
    budget: float
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    error: str | None = None

    @property
    def in_budget(self) -> bool:
        return self.seconds <= self.budget

    @property
    def passed(self) -> bool:
        return self.error is None and self.in_budget and all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.error:
            extra = f"  error: {self.error}"
        elif not self.passed:
            bad = self.failures()
            extra = "  failing: " + "; ".join(f"{c.name} ({c.detail})" for c in bad) if bad else "  over budget"
        return f"[{tag}] criterion {self.number:2d}: {self.title} ({len(self.checks)} checks, {self.seconds:.1f}s){extra}"

    def to_json(self) -> dict[str, Any]:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "budget_seconds": self.budget,
            "error": self.error,
            "checks": [c.to_json() for c in self.checks],
        }


class _Collector:
    def __init__(self) -> None:
        self.checks: list[Check] = []

    def eq(self, name: str, got: Any, want: Any) -> bool:
        ok = got == want
        self.checks.append(Check(name, ok, f"got {got!r}, want {want!r}" if not ok else repr(got)))
        return ok

    def true(self, name: str, cond: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(cond), detail))
        return bool(cond)


@lru_cache(maxsize=None)
def _betti(C: PartialClass, field_name: str = "rational") -> BettiTable:
    return betti_table(C, field_name)


# ----------------------------------------------------------------------------
# shared class lists


def table1_classes() -> list[tuple[str, PartialClass, tuple[int, int, int]]]:
    """Classes of criterion 1 with (dim_h, dim_SR, dim_VC) from the closed formulas."""

    def sig(d: int, a: int, b: int) -> int:
        return sum(comb(d, i) for i in range(a, b + 1))

    n, d = 3, 2
    return [
        ("complete(3)", K.complete(n), (n, n, n)),
        ("singleton(n=3)", K.singleton("010"), (0, n, 0)),
        ("delta(3)", K.delta(n), (n - 1, n + 1, 1)),
        ("monconj(2)", K.monconj(d), (d, 2 ** (d + 1) - d - 1, d)),
        ("conj(2)", K.conj(d), (d + 1, 2 ** (d + 1) - d - 1, d)),
        ("linthr(cube2)", G.linthr_class(G.cube_points(d)), (d + 1, 2 ** (d + 1) - d - 1, d + 1)),
        ("polythr(2,1)", G.polythr_class(d, 1), (sig(d, 0, 1), 2 ** (d + 1) - sig(d, 0, 1), sig(d, 0, 1))),
        ("polythr(2,2)", G.polythr_class(d, 2), (sig(d, 0, 2), 2 ** (d + 1) - sig(d, 0, 2), sig(d, 0, 2))),
        ("linfun(2,2)", K.linfun(2, d), (d, 2 ** (d + 1) - d - 1, d)),
    ]


def random_classes(count: int = 200, seed: int = 20240601) -> list[PartialClass]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 6)
        size = rng.randint(1, min(20, 1 << n))
        mem = rng.sample(range(1 << n), size)
        out.append(K.make_class(n, [K.bits(u, n) for u in mem], 2, f"random(n={n},k={size})"))
    return out


def abnormal_classes() -> list[tuple[str, PartialClass]]:
    return [("deltas_plus_one(4)", R.deltas_plus_one_class(4)), ("segment_triangle(3)", R.segment_triangle_class(3))]


def threshold_box_classes() -> list[tuple[str, PartialClass]]:
    par = K.parity(2)
    return [
        ("linthr(cube2) x parity", K.box_target(G.linthr_class(G.cube_points(2)), par)),
        ("polythr(2,1) x parity", K.box_target(G.polythr_class(2, 1), par)),
        ("polythr(2,1) + parity", K.add_function(G.polythr_class(2, 1), par)),
        ("linfun(2,2) + ind1", K.add_function(K.linfun(2, 2), K.indicator(4, 3))),
    ]


# ----------------------------------------------------------------------------
# criteria


def criterion_1(c: _Collector) -> None:
    for name, C, want in table1_classes():
        T = _betti(C)
        c.eq(f"{name} (dim_h, dim_SR, dim_VC)", (homological_dimension(T), sr_dimension(T), A.vc_dimension(C)), want)


def _delta_expected(n: int) -> dict[tuple[int, PartialFunction], int]:
    """Top simplex at the empty function, one facet ``u -> 0`` per input, the deltas themselves."""
    out = {(n - 1, PartialFunction.empty(n)): 1}
    for i in range(n):
        out[(0, PartialFunction(tuple(int(u == i) for u in range(n))))] = 1
        out[(1, PartialFunction(tuple(0 if u == i else -1 for u in range(n))))] = 1
    return out


def criterion_2(c: _Collector) -> None:
    T = _betti(K.delta(3))
    c.eq("delta(3) beta_{2,+}", T.get(2, "..."), 1)
    c.eq("delta(3) full table", dict(T.entries), _delta_expected(3))
    M = _betti(K.monconj(2))
    c.eq("monconj(2) beta_{2,...1}", M.get(2, "...1"), 1)
    lam = {}
    for w in itertools.product((-1, 0, 1), repeat=2):
        lam[(sum(1 for x in w if x == -1), R.monconj_face_label(w))] = 1
    c.eq("monconj(2) table = Lambda(w) pattern", dict(M.entries), lam)
    c.eq("conj(2) beta_{3,+}", _betti(K.conj(2)).get(3, "...."), 1)
    L = _betti(K.linfun(2, 2))
    c.eq("linfun(2,2) beta_{2,0...} (zero-subspace functional)", L.get(2, "0..."), 3)
    c.eq("linfun(2,2) beta_{2,0...} = U_2(2)", L.get(2, "0..."), R.flag_top_count(2, 2))
    lines = [pf for (i, pf) in L.entries if i == 1]
    want = set()
    for v in (1, 2, 3):
        for b in (0, 1):
            vals = [-1] * 4
            vals[0], vals[v] = 0, b
            want.add(PartialFunction(tuple(vals)))
    c.eq("linfun(2,2) beta_1 at the six line functionals", set(lines), want)
    c.true("linfun(2,2) beta_1 ranks all 1", all(L.get(1, pf) == 1 for pf in want))
    restricted = K.filter_class(K.linfun(2, 2), PartialFunction.parse("0..."))
    c.eq("linfun(2,2) filtered at input 0: beta_{2,+}", _betti(restricted).get(2, "..."), 3)


def criterion_3(c: _Collector) -> None:
    for d, tops in ((2, 3), (3, 21)):
        X = R.flag_resolution(2, d)
        rep = R.check_resolution(X, K.linfun(2, d))
        c.true(f"flag(2,{d}) resolves linfun minimally", rep.ok and rep.is_minimal, "; ".join(rep.mismatches))
        top = [cell for cell in X.top_cells() if cell.dim == d]
        c.eq(f"flag(2,{d}) top cells", len(top), tops)
        c.eq(f"flag(2,{d}) U_2({d})", R.flag_top_count(2, d), tops)
    U = G.cube_points(2)
    closed = G.linthr_betti_closed_form(U)
    c.true("linthr(cube2) closed form = Hochster table", closed.same_entries(_betti(G.linthr_class(U))))


def criterion_4(c: _Collector) -> None:
    P = G.polythr_class(2, 1)
    par = K.parity(2)
    c.eq("beta_{3,+}(polythr(2,1))", _betti(P).at(DAGGER4), {3: 1})
    c.eq("beta_{*,+}(polythr(2,1) + parity)", betti_at(K.add_function(P, par), DAGGER4), {})
    g = PartialFunction.parse("0..1")
    Lf = K.linfun(2, 2)
    c.eq("beta_{*,g}(linfun(2,2))", _betti(Lf).at(g), {1: 1})
    c.eq("beta_{*,g}(linfun(2,2) + ind1)", betti_at(K.add_function(Lf, K.indicator(4, 3)), g), {})


def criterion_5(c: _Collector) -> None:
    par = K.parity(2)
    c.eq("linthr(cube2) x parity at parity^1", S.parity_box_betti(G.linthr_class(G.cube_points(2)), par), {1: 2 ** (2 - 1) - 1})
    c.eq("polythr(2,1) x parity at parity^1", S.parity_box_betti(G.polythr_class(2, 1), par), {2 ** (2 - 1) - 1: 1})


def criterion_6(c: _Collector) -> None:
    D = R.deltas_plus_one_class(4)
    T = _betti(D)
    c.eq("D beta_{2,+} (as stated: 1)", T.get(2, DAGGER4), 1)
    c.eq("D beta_{3,+}", T.get(3, DAGGER4), 1)
    c.eq("D has pure Betti numbers", has_pure_betti(T), False)
    X = R.deltas_plus_one_resolution(4)
    rep = R.check_resolution(X, D)
    c.true("D spanning-tree complex resolves minimally", rep.ok and rep.is_minimal, "; ".join(rep.mismatches))
    c.eq("D census at +", {i: v for (i, e), v in R.census(X).items() if e == frozenset(DAGGER4.gamma)}, {2: 3, 3: 1})
    Y = R.segment_triangle_resolution(3)
    rep = R.check_resolution(Y, R.segment_triangle_class(3))
    c.true("segment+triangle resolves minimally", rep.ok and rep.is_minimal, "; ".join(rep.mismatches))
    c.eq("segment+triangle top cell dimensions", sorted(cell.dim for cell in Y.top_cells()), [1, 2])
    c.true("segment+triangle census = Hochster", R.betti_table_from_resolution(Y).same_entries(_betti(R.segment_triangle_class(3))))


def criterion_7(c: _Collector) -> None:
    bad: dict[str, list[str]] = {"dim_h >= dim_VC": [], "rad_VC": [], "extenture size": [], "shattering": []}
    for C in random_classes():
        T = _betti(C)
        dh = homological_dimension(T)
        vc = A.vc_dimension(C)
        if dh < vc:
            bad["dim_h >= dim_VC"].append(str(C.tag))
        ex = A.extentures(C)
        try:
            rad = A.vc_radius(C)
        except SuboplexError as e:
            bad["rad_VC"].append(f"{C.tag}: {e}")
            rad = None
        if rad is not None and ex and rad != min(len(p.dom) for p in ex) - 1:
            bad["rad_VC"].append(str(C.tag))
        if any(len(p.dom) > dh + 1 for p in ex):
            bad["extenture size"].append(str(C.tag))
        for k in range(C.n + 1):
            for U in itertools.combinations(range(C.n), k):
                crit = A.shatter_criteria(C, U, T)
                if len(set(crit.values())) != 1:
                    bad["shattering"].append(f"{C.tag} U={U}")
    for name, fails in bad.items():
        c.true(name, not fails, ", ".join(fails[:5]))


def criterion_8(c: _Collector) -> None:
    for n in range(1, 5):
        c.true(f"complete({n}) CM class", A.is_cm_class(K.complete(n), _betti(K.complete(n))).cm)
        C = K.nb(n, 1)
        c.true(f"nb(o,1,{n}) canonical ideal CM (tree)", A.is_cm_canonical(C, _betti(C)))
        o = "".join("01"[(u * 7 + 3) % 2] for u in range(n))
        C = K.nb(n, 1, o)
        c.true(f"nb({o},1,{n}) canonical ideal CM (tree)", A.is_cm_canonical(C, _betti(C)))
    for f in ("0", "10", "011", "0110"):
        S1 = K.singleton(f)
        c.true(f"singleton({f}) CM class", A.is_cm_class(S1, _betti(S1)).cm)
    found = eq_bad = restr_bad = 0
    for C in random_classes():
        if not A.is_cm_class(C, _betti(C)).cm:
            continue
        found += 1
        if homological_dimension(_betti(C)) != A.vc_dimension(C):
            eq_bad += 1
        for u in range(C.n):
            if C.n < 2:
                break
            D = K.restrict_class(C, [v for v in range(C.n) if v != u])
            if not A.is_cm_class(D, _betti(D)).cm:
                restr_bad += 1
    c.true("random CM classes found", found > 0, f"{found} CM classes")
    c.eq("dim_h = dim_VC on random CM classes (failures)", eq_bad, 0)
    c.eq("CM preserved under restriction (failures)", restr_bad, 0)


def random_subspace(rng: random.Random, n: int, l: int) -> G.LinearSubspace:
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(l)]
        L = G.LinearSubspace.from_rows(rows, n)
        if L.dim == l and not L.in_coordinate_hyperplane():
            return L


def fm_positive(L: G.LinearSubspace) -> bool:
    cols = [[r[u] for r in L.basis] for u in range(L.n)]
    return fm_feasible(cols, [1] * L.n, L.dim)


def criterion_9(c: _Collector, per: int = 100) -> None:
    rng = random.Random(97)
    disagree, unverified, holes, total = [], [], 0, 0
    for n in (3, 4, 5, 6):
        for l in (2, 3):
            for _ in range(per):
                L = random_subspace(rng, n, l)
                certs = G.hole_search(L)
                hom = not certs
                if hom != fm_positive(L):
                    disagree.append(str(L.to_json()))
                cert = G.hom_farkas(L)
                if (cert.kind == "witness") != hom:
                    disagree.append(f"verdict {cert.kind} for {L.to_json()}")
                if cert.kind == "hole":
                    holes += 1
                    if not G.verify_hole(L, cert):
                        unverified.append(str(L.to_json()))
                total += 1
    c.eq("random subspaces: homological = Fourier-Motzkin verdict (disagreements)", len(disagree), 0)
    c.eq("hole certificates re-verify (failures)", len(unverified), 0)
    c.true("both verdicts occur", 0 < holes < total, f"{holes} holes of {total}")
    W = G.hom_farkas(G.LinearSubspace.from_rows([[1, 1, 1], [1, 0, 0]]))
    c.eq("span{(1,1,1),(1,0,0)}", W.kind, "witness")
    H = G.hom_farkas(G.LinearSubspace.from_rows([[1, -1, 0], [0, 0, 1]]))
    c.eq("span{(1,-1,0),(0,0,1)}", (H.kind, G.sign_str(H.g or ()), H.degree), ("hole", "+--", 0))


def criterion_10(c: _Collector) -> None:
    g = S.maximal_principle(G.polythr_class(2, 1), K.parity(2))
    c.true("maximal principle witness for (polythr(2,1), parity_2)", g is not None, str(g))
    for d in range(1, 5):
        rep = S.thrdeg_symmetric_report(K.parity(d))
        c.eq(f"thrdeg(parity_{d})", rep.degree, d)
        c.true(f"thrdeg(parity_{d}) both directions verified", bool(rep.upper_verified and rep.lower_verified), str(rep.lower_method))
        if d <= 3:
            c.eq(f"thrdeg(parity_{d}) lower bound method", rep.lower_method, "betti+lp")
    rep = S.thrdeg_symmetric_report(K.majority(3))
    c.eq("thrdeg(majority_3)", rep.degree, 1)
    c.true("thrdeg(majority_3) both directions verified", bool(rep.upper_verified and rep.lower_verified))


def _classes_1_to_7() -> list[PartialClass]:
    out = [C for _, C, _ in table1_classes()]
    out += [C for _, C in abnormal_classes()]
    out += [C for _, C in threshold_box_classes()]
    out += random_classes()
    return out


def shipped_combinations() -> list[tuple[str, R.LabeledComplex, PartialClass]]:
    return [
        ("join(delta(3), point(111))", R.join_res(R.delta_resolution(3), R.point_res(PartialFunction.parse("111"))),
         K.add_function(K.delta(3), PartialFunction.parse("111"))),
        ("join(flag(2,2), point(ind1))", R.join_res(R.flag_resolution(2, 2), R.point_res(K.indicator(4, 3))),
         K.add_function(K.linfun(2, 2), K.indicator(4, 3))),
        ("join(cube(2), cube(2))", R.join_res(R.cube_resolution(2), R.cube_resolution(2)), K.complete(2)),
        ("product(cube(1), cube(2))", R.product_res(R.cube_resolution(1), R.cube_resolution(2)),
         K.cartesian_union(K.complete(1), K.complete(2))),
        ("product(delta(3), flag(2,2))", R.product_res(R.delta_resolution(3), R.flag_resolution(2, 2)),
         K.cartesian_union(K.delta(3), K.linfun(2, 2))),
        ("restrict(wt(4,2), {0,1,2})", R.restrict_res(R.wt_resolution(4, 2), [0, 1, 2]), K.restrict_class(K.wt(4, 2), [0, 1, 2])),
        ("restrict(coc(2), {0,1,3})", R.restrict_res(R.coc_resolution(2), [0, 1, 3]), K.restrict_class(K.conj(2), [0, 1, 3])),
    ]


def criterion_11(c: _Collector) -> None:
    rng = random.Random(11)
    classes = [C for C in _classes_1_to_7() if C.m == 2]
    by_shape: dict[int, list[PartialClass]] = {}
    for C in classes:
        by_shape.setdefault(C.n, []).append(C)
    mv_bad, seq_bad = [], []
    for C in classes:
        D = rng.choice(by_shape[C.n])
        if not S.mayer_vietoris_check(C, D):
            mv_bad.append(str(C.tag))
        if C.n >= 2 and C.is_total and not restriction_sequence_check(C):
            seq_bad.append(str(C.tag))
    c.eq("Mayer-Vietoris identity (failures)", mv_bad, [])
    c.eq("restriction exact sequence identity (failures)", seq_bad, [])
    for name, X, C in shipped_combinations():
        rep = R.check_resolution(X, C)
        c.true(f"{name} resolves", rep.ok, "; ".join(rep.mismatches))


def criterion_12(c: _Collector) -> None:
    classes = [(n, C) for n, C, _ in table1_classes()] + abnormal_classes() + threshold_box_classes()
    classes += [("delta(3)", K.delta(3)), ("monconj(2)", K.monconj(2))]
    for name, C in classes:
        c.true(f"{name}: GF(2) table = rational table", _betti(C, "gf2").same_entries(_betti(C, "rational")))


CRITERIA: list[tuple[int, str, float, Callable[[_Collector], None], tuple[str, ...]]] = [
    (1, "Table 1 dimensions", 60, criterion_1, ("dims", "table1")),
    (2, "Betti closed forms", 120, criterion_2, ("betti", "delta", "monconj", "conj", "linfun")),
    (3, "flag resolutions and threshold closed form", 180, criterion_3, ("flag", "resolution", "linthr")),
    (4, "parity and ind1 separations", 30, criterion_4, ("separation", "parity", "linfun")),
    (5, "Cartesian intersection with parity", 30, criterion_5, ("box", "parity")),
    (6, "nonpure examples", 30, criterion_6, ("nonpure", "abnormal", "resolution")),
    (7, "dimension theorems on random classes", 600, criterion_7, ("random", "vc", "shatter")),
    (8, "Cohen-Macaulay", 300, criterion_8, ("cm",)),
    (9, "homological Farkas", 600, criterion_9, ("farkas",)),
    (10, "maximal principle and thrdeg", 300, criterion_10, ("thrdeg", "maximal", "parity")),
    (11, "combinator identities", 600, criterion_11, ("combinators", "resolution", "join", "product")),
    (12, "field independence", 60, criterion_12, ("field", "gf2")),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, budget, fn, _keys in CRITERIA:
        if num == number:
            res = CriterionResult(num, title, budget)
            col = _Collector()
            t0 = time.perf_counter()
            try:
                fn(col)
            except SuboplexError as e:
                res.error = f"{type(e).__name__}: {e}"
            res.seconds = time.perf_counter() - t0
            res.checks = col.checks
            return res
    raise KeyError(number)


def select(filter_text: str | None) -> list[int]:
    if not filter_text:
        return [n for n, *_ in CRITERIA]
    key = filter_text.strip().lower()
    out = []
    for num, title, _b, _fn, keys in CRITERIA:
        if key == str(num) or key in keys or key in title.lower():
            out.append(num)
    return out


def run_all(filter_text: str | None = None, numbers: Iterable[int] | None = None) -> list[CriterionResult]:
    nums = list(numbers) if numbers is not None else select(filter_text)
    return [run_criterion(n) for n in nums]
