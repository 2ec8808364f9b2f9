"""Separation certificates: how adding a target function changes Betti numbers.

Most checks here run two independent computations and raise
``CrossCheckError`` when they disagree.  Threshold-specific routines take the
geometry (a point configuration or a linear subspace) so that the class
``thr L`` and the exact LP oracles are built from the same data.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import lp
from .classes import (
    UNDEF,
    FunctionClass,
    PartialClass,
    PartialFunction,
    add_function,
    bits,
    box_target,
    is_full,
    pf_key,
)
from .errors import CrossCheckError, InputError, PreconditionError, ShapeError
from .geometry import (
    Geometry,
    _space,
    cube_lift,
    linthr_class,
    projection_pi,
    realizable,
    sigma,
    sigma_inv,
)
from .topology import BettiTable, betti_at, betti_table


def _check_target(C: PartialClass, f: PartialFunction) -> None:
    if f.n != C.n or f.m != C.m:
        raise ShapeError(f"target has shape ({f.n},{f.m}), class has ({C.n},{C.m})")
    if not f.is_total:
        raise InputError("the target must be a total function")


def _alternating(T: BettiTable, pf: PartialFunction) -> int:
    return sum((-1) ** i * r for i, r in T.at(pf).items())


@dataclass
class SeparationReport:
    target: PartialFunction
    tag: str | None
    member: bool
    before: BettiTable
    after: BettiTable
    box: BettiTable
    diff: list[tuple[int, PartialFunction, int, int]] = field(default_factory=list)
    weakly_representable: bool | None = None
    local_maximum: PartialFunction | None = None

    @property
    def separated(self) -> bool:
        return bool(self.diff)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "target": str(self.target),
            "class": self.tag,
            "member": self.member,
            "separated": self.separated,
            "diff": [{"i": i, "pf": str(pf), "before": a, "after": b} for i, pf, a, b in self.diff],
            "box_betti": self.box.to_json(),
            "certificate": [f"beta_{{{i},{pf}}}: {a} -> {b}" for i, pf, a, b in self.diff],
        }
        if self.weakly_representable is not None:
            out["weakly_representable"] = self.weakly_representable
        if self.local_maximum is not None:
            out["local_maximum"] = str(self.local_maximum)
        return out


def mayer_vietoris_check(C: PartialClass, D: PartialClass, field_name: str = "rational") -> bool:
    """Alternating sums over ``C``, ``D``, ``C u D`` and ``C x D`` cancel at every pf."""
    from .classes import cartesian_intersection, union_class

    TC, TD = betti_table(C, field_name), betti_table(D, field_name)
    TU = betti_table(union_class(C, D), field_name)
    TX = betti_table(cartesian_intersection(C, D), field_name)
    pfs = set(TC.pfs()) | set(TD.pfs()) | set(TU.pfs()) | set(TX.pfs())
    return all(
        _alternating(TC, p) + _alternating(TD, p) - _alternating(TU, p) - _alternating(TX, p) == 0 for p in pfs
    )


def compare_betti(C: PartialClass, f: PartialFunction, field_name: str = "rational") -> SeparationReport:
    """Betti tables of ``C`` and ``C u {f}``, their difference, and the table of ``C x {f}``."""
    C.require_nonempty()
    _check_target(C, f)
    before = betti_table(C, field_name)
    after = betti_table(add_function(C, f), field_name)
    box = betti_table(box_target(C, f), field_name)
    single = {(0, f): 1}
    keys = set(before.entries) | set(after.entries)
    diff = [
        (i, pf, before.get(i, pf), after.get(i, pf))
        for (i, pf) in sorted(keys, key=lambda k: (k[0], pf_key(k[1])))
        if before.get(i, pf) != after.get(i, pf)
    ]
    for pf in set(before.pfs()) | set(after.pfs()) | set(box.pfs()) | {f}:
        s = _alternating(before, pf) + single.get((0, pf), 0) - _alternating(after, pf) - _alternating(box, pf)
        if s:
            raise CrossCheckError(f"Mayer-Vietoris alternating sum is {s} at {pf}")
    member = f in C.members
    if member and diff:
        raise CrossCheckError("a member of the class changed the Betti table")
    return SeparationReport(f, C.tag, member, before, after, box, diff)


# ----------------------------------------------------------------------------
# membership through the canonical ideal of C x {f}

CONDITIONS = (
    "member",
    "principal_by_gamma_f",
    "principal",
    "single_zeroth_betti",
    "no_higher_betti",
    "no_higher_betti_off_f",
)


def membership_conditions(C: PartialClass, f: PartialFunction, field_name: str = "rational") -> dict[str, bool]:
    """The six equivalent membership conditions, evaluated independently."""
    C.require_nonempty()
    _check_target(C, f)
    if not is_full(C):
        raise PreconditionError("the class is not full: some (input, value) pair is never attained")
    B = box_target(C, f)
    gens = B.maximal().members
    T = betti_table(B, field_name)
    higher = [(i, pf) for (i, pf) in T.entries if i >= 1]
    zeroth = [(pf, r) for (i, pf), r in T.entries.items() if i == 0]
    return {
        "member": f in C.members,
        "principal_by_gamma_f": gens == frozenset([f]),
        "principal": len(gens) == 1,
        "single_zeroth_betti": len(zeroth) == 1 and zeroth[0][1] == 1 and not higher,
        "no_higher_betti": not higher,
        "no_higher_betti_off_f": all(pf == f for _, pf in higher),
    }


def membership_equivalences(C: PartialClass, f: PartialFunction, field_name: str = "rational") -> bool:
    conds = membership_conditions(C, f, field_name)
    vals = set(conds.values())
    if len(vals) != 1:
        raise CrossCheckError(f"membership conditions disagree: {conds}")
    return vals.pop()


# ----------------------------------------------------------------------------
# threshold classes


def _thr(X: Geometry, C: PartialClass | None) -> PartialClass:
    return C if C is not None else linthr_class(X)


def weak_representation_lp(X: Geometry, f: PartialFunction) -> list[Fraction] | None:
    """A nonzero ``phi`` in the space with ``phi(u) f(u) >= 0`` everywhere, or None."""
    L = _space(X)
    s = sigma(f)
    if len(s) != L.n or not all(s):
        raise ShapeError("weak representation needs a total boolean target of matching length")
    if not L.basis:
        return None
    cols = lp.columns(L.basis, range(L.n))
    ge = [[t * x for x in cols[u]] for u, t in enumerate(s)]
    total = [sum(ge[u][j] for u in range(L.n)) for j in range(L.dim)]
    y = lp.feasible(ge + [total], [0] * L.n + [1], nvars=L.dim)
    return None if y is None else L.point(y)


def weak_representation_test(
    X: Geometry, f: PartialFunction, C: PartialClass | None = None, field_name: str = "rational"
) -> bool:
    """Homological verdict (no Betti numbers at the empty function) checked against the LP."""
    C = _thr(X, C)
    _check_target(C, f)
    hom = not betti_at(box_target(C, f), PartialFunction.empty(C.n), field_name)
    oracle = weak_representation_lp(X, f) is not None
    if hom != oracle:
        raise CrossCheckError(f"weak representation: Betti verdict {hom}, LP verdict {oracle}")
    return hom


def is_local_maximum(C: PartialClass, f: PartialFunction, g: PartialFunction) -> bool:
    """Every member one flip away from ``g`` disagrees with ``f`` at the flipped input."""
    for u in range(C.n):
        h = g.flip(u)
        if h in C.members and g.values[u] != f.values[u]:
            return False
    return True


def maximal_principle(C: PartialClass, f: PartialFunction, field_name: str = "rational") -> PartialFunction | None:
    """Lexicographically least local maximum ``g != f``; certifies ``f`` is not in ``C``."""
    C.require_nonempty()
    _check_target(C, f)
    if C.m != 2:
        raise ShapeError("the maximal principle is stated for boolean classes")
    B = None
    for g in sorted(C.members, key=lambda h: h.values):
        if g == f or not is_local_maximum(C, f, g):
            continue
        if f in C.members:
            raise CrossCheckError(f"{g} is a local maximum for a member {f}")
        B = B or box_target(C, f)
        b = betti_at(B, f.meet(g), field_name)
        if b != {0: 1}:
            raise CrossCheckError(f"local maximum {g} has Betti numbers {b} at {f.meet(g)}")
        return g
    return None


def covector_rank(X: Geometry, tau: tuple[int, ...]) -> int:
    L = _space(X)
    return L.dim - L.zero_rank(u for u in range(L.n) if tau[u] == 0) - 1


@dataclass
class TopBettiReport:
    projection: PartialFunction
    rank: int
    degree: int
    holds: bool

    def to_json(self) -> dict[str, Any]:
        return {"projection": str(self.projection), "rank": self.rank, "degree": self.degree, "holds": self.holds}


def top_betti_check(
    X: Geometry, f: PartialFunction, C: PartialClass | None = None, table: BettiTable | None = None
) -> TopBettiReport:
    """For ``f`` outside ``thr L``: one Betti number at the projection, nothing below it."""
    C = _thr(X, C)
    _check_target(C, f)
    if f in C.members:
        raise PreconditionError("the target lies in the threshold class")
    L = _space(X)
    tau = projection_pi(sigma(f), X)
    g = sigma_inv(tau)
    s = covector_rank(X, tau)
    T = table or betti_table(box_target(C, f))
    deg = L.dim - 1 - s
    ok = T.at(g) == {deg: 1} and all(pf.extends(g) for pf in T.pfs())
    return TopBettiReport(g, s, deg, ok)


@dataclass
class StabilityReport:
    projection: PartialFunction
    degree: int
    checked: list[tuple[PartialFunction, int]]
    holds: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "projection": str(self.projection),
            "degree": self.degree,
            "flips_checked": [{"pf": str(p), "u": u} for p, u in self.checked],
            "holds": self.holds,
        }


def codim1_stability_check(
    X: Geometry, f: PartialFunction, C: PartialClass | None = None, field_name: str = "rational"
) -> StabilityReport:
    C = _thr(X, C)
    _check_target(C, f)
    L = _space(X)
    if L.dim < 2:
        raise PreconditionError("needs a space of dimension at least 2")
    if not is_full(C):
        raise PreconditionError("the threshold class is not full")
    if f in C.members:
        raise PreconditionError("the target lies in the threshold class")
    tau = projection_pi(sigma(f), X)
    g = sigma_inv(tau)
    s = covector_rank(X, tau)
    deg = L.dim - s - 2
    T = betti_table(box_target(C, f), field_name)
    ok = True
    checked = []
    for pf in T.pfs():
        r = T.get(deg, pf)
        if not r:
            continue
        if r != 1:
            ok = False
            continue
        extra = [u for u in pf.dom if g.values[u] == UNDEF]
        if len(extra) <= 1:
            continue
        for u in extra:
            fu = f.flip(u)
            b = betti_at(box_target(C, fu), pf.forget([u]), field_name)
            checked.append((pf, u))
            if b.get(deg, 0) != 1:
                ok = False
    return StabilityReport(g, deg, checked, ok)


def parity_box_betti(C: PartialClass, f: PartialFunction, field_name: str = "rational") -> dict[int, int]:
    """Betti numbers of ``C x {f}`` at ``f`` meet the all-plus function (all zero bits)."""
    one = PartialFunction((0,) * C.n)
    return betti_at(box_target(C, f), f.meet(one), field_name)


# ----------------------------------------------------------------------------
# symmetric threshold degree


def symmetric_profile(f: PartialFunction) -> list[int]:
    """``fbar(s)`` for ``s = 0..d``, where ``s`` counts the -1 coordinates (one bits)."""
    n = f.n
    d = n.bit_length() - 1
    if f.m != 2 or 1 << d != n or not f.is_total:
        raise InputError("symmetric functions live on the cube: 2^d inputs, total, boolean")
    prof: dict[int, int] = {}
    for u in range(n):
        s = sum(bits(u, d))
        if prof.setdefault(s, f.values[u]) != f.values[u]:
            raise PreconditionError(f"{f} is not symmetric")
    return [prof[s] for s in range(d + 1)]


def sign_changes(profile: Iterable[int]) -> list[int]:
    p = list(profile)
    return [s for s in range(len(p) - 1) if p[s] != p[s + 1]]


def _q_signs(profile: list[int], ts: list[int], d: int) -> PartialFunction:
    """Bits of ``fbar(0) * prod (t + 1/2 - s)`` on the cube."""
    lead = 1 if profile[0] == 0 else -1
    vals = []
    for u in range(1 << d):
        s = sum(bits(u, d))
        q = Fraction(lead)
        for t in ts:
            q *= Fraction(2 * t + 1, 2) - s
        vals.append(0 if q > 0 else 1)
    return PartialFunction(tuple(vals))


@dataclass
class ThrdegReport:
    degree: int
    changes: list[int]
    upper_verified: bool | None
    lower_verified: bool | None
    lower_method: str | None

    def to_json(self) -> dict[str, Any]:
        return {
            "thrdeg": self.degree,
            "sign_changes": self.changes,
            "realizable_at_degree": self.upper_verified,
            "not_weakly_representable_below": self.lower_verified,
            "lower_bound_method": self.lower_method,
        }


def thrdeg_symmetric_report(f: PartialFunction, verify: bool = True, homological_upto: int = 3) -> ThrdegReport:
    """Sign-change count with both bounds checked by exact LPs.

    Up to ``homological_upto`` the lower bound is also read off the Betti
    numbers at the empty function; above it only the LP and the projection
    are used, since building the lifted threshold class is expensive there.
    """
    prof = symmetric_profile(f)
    d = len(prof) - 1
    ts = sign_changes(prof)
    r = len(ts)
    if not verify or d > 4:
        return ThrdegReport(r, ts, None, None, None)
    Q = _q_signs(prof, ts, d)
    if Q != f:
        raise CrossCheckError("the product construction does not reproduce the target signs")
    upper = realizable(cube_lift(d, r), sigma(f))
    if not upper:
        raise CrossCheckError(f"target not realizable at degree {r}")
    if r == 0:
        return ThrdegReport(r, ts, True, True, "trivial")
    X = cube_lift(d, r - 1)
    if d <= homological_upto:
        weak = weak_representation_test(X, f, linthr_class(X))
        method = "betti+lp"
    else:
        weak = weak_representation_lp(X, f) is not None
        if weak != any(projection_pi(sigma(f), X)):
            raise CrossCheckError("projection and weak-representation LP disagree")
        method = "lp+projection"
    if weak:
        raise CrossCheckError(f"target weakly representable at degree {r - 1}")
    return ThrdegReport(r, ts, True, True, method)


def thrdeg_symmetric(f: PartialFunction, verify: bool = True) -> int:
    return thrdeg_symmetric_report(f, verify).degree
