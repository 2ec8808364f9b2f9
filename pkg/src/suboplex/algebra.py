"""Ideal generators, shattering, VC invariants, Cohen-Macaulay tests, Euler data.

Monomials in ``k[x_{u,j}]`` are squarefree and stored as frozensets of
``(u, j)`` pairs.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field

from .classes import (
    UNDEF,
    PartialClass,
    PartialFunction,
    box_target,
    make_class,
    neighbors,
    pf_key,
    restrict_class,
)
from .errors import CrossCheckError, InputError, ShapeError
from .topology import BettiTable, SimplicialComplex, betti_table, euler_from_faces, sr_betti, suboplex_faces

Monomial = frozenset[tuple[int, int]]


@dataclass(frozen=True)
class MonomialSet:
    role: str
    monomials: frozenset[Monomial]

    def sorted(self) -> list[list[tuple[int, int]]]:
        return sorted((sorted(m) for m in self.monomials), key=lambda m: (len(m), m))

    def to_json(self) -> dict[str, object]:
        return {"role": self.role, "monomials": [[list(p) for p in m] for m in self.sorted()]}

    def __len__(self) -> int:
        return len(self.monomials)

    def __contains__(self, m: object) -> bool:
        return m in self.monomials


def _need_binary(C: PartialClass) -> None:
    if C.m != 2:
        raise ShapeError("this invariant is defined for boolean classes (m = 2)")


# ----------------------------------------------------------------------------
# extentures and generators


def extentures(C: PartialClass) -> list[PartialFunction]:
    """Minimal partial functions with no extension in ``C``.

    A candidate is a face of the suboplex grown by one point; it is an
    extenture when it is not a face but every one-point deletion is.
    """
    if not C.members:
        return [PartialFunction.empty(C.n, C.m)]
    faces = suboplex_faces(C)
    found: set[tuple[int, ...]] = set()
    for pf in faces:
        for u, v in enumerate(pf):
            if v != UNDEF:
                continue
            for j in range(C.m):
                cand = pf[:u] + (j,) + pf[u + 1 :]
                if cand in faces or cand in found:
                    continue
                if all(cand[:w] + (UNDEF,) + cand[w + 1 :] in faces for w, x in enumerate(cand) if x != UNDEF):
                    found.add(cand)
    return sorted((PartialFunction(t, C.m) for t in found), key=lambda p: (len(p.dom), pf_key(p)))


def sr_generators(C: PartialClass) -> MonomialSet:
    """Minimal generators of the Stanley-Reisner ideal of the suboplex."""
    C.require_nonempty()
    ex = extentures(C)
    singles = {next(iter(p.graph)) for p in ex if len(p.dom) == 1}
    mons: set[Monomial] = {frozenset(p.graph) for p in ex}
    for u in range(C.n):
        for i, j in itertools.combinations(range(C.m), 2):
            if (u, i) not in singles and (u, j) not in singles:
                mons.add(frozenset({(u, i), (u, j)}))
    return MonomialSet("stanley-reisner", frozenset(mons))


def canonical_generators(C: PartialClass) -> MonomialSet:
    """Minimal generators ``x^{Gamma f}`` of the canonical ideal."""
    C.require_nonempty()
    return MonomialSet("canonical", frozenset(frozenset(f.gamma) for f in C.maximal().members))


def _f_values(F: Iterable[PartialFunction], u: int) -> set[int]:
    return {p.values[u] for p in F if p.values[u] != UNDEF}


def is_class_ideal(F: Iterable[PartialFunction], n: int, m: int = 2) -> bool:
    """Does the extenture candidate set ``F`` come from a class of total functions?

    Checks the subset condition for every ``u``.  The condition is monotone in
    the chosen subset, so only subsets with exactly one member per value at
    ``u`` are examined.
    """
    fs = sorted(set(F), key=pf_key)
    for p in fs:
        if p.n != n or p.m != m:
            raise ShapeError("candidate partial functions do not match (n, m)")
    for a, b in itertools.permutations(fs, 2):
        if a.extends(b):
            raise InputError(f"{a} extends {b}: the candidate set is not an antichain")
    for u in range(n):
        by_value = [[p for p in fs if p.values[u] == j] for j in range(m)]
        if any(not group for group in by_value):
            continue
        for pick in itertools.product(*by_value):
            if any(len(_f_values(pick, v)) > 1 for v in range(n) if v != u):
                continue
            join = [UNDEF] * n
            for p in pick:
                for v, x in enumerate(p.values):
                    if v != u and x != UNDEF:
                        join[v] = x
            jp = PartialFunction(tuple(join), m)
            if not any(jp.extends(h) for h in fs):
                return False
    return True


# ----------------------------------------------------------------------------
# shattering and VC invariants


def shatters_direct(C: PartialClass, U: Iterable[int]) -> bool:
    _need_binary(C)
    Us = sorted(set(U))
    R = restrict_class(C, Us)
    return sum(1 for f in R.members if f.is_total) == 1 << len(Us)


def collapsed_generators(C: PartialClass) -> list[frozenset[int]]:
    """Supports of the collapsed Stanley-Reisner generators, squares omitted."""
    return sorted({frozenset(p.dom) for p in extentures(C)}, key=lambda s: (len(s), sorted(s)))


def shatter_criteria(C: PartialClass, U: Iterable[int], table: BettiTable | None = None) -> dict[str, bool]:
    """The four shattering tests: direct, collapsed ideal, canonical Betti, SR Betti."""
    _need_binary(C)
    C.require_nonempty()
    Us = sorted(set(U))
    if any(not 0 <= u < C.n for u in Us):
        raise InputError("shattering set outside the domain")
    direct = shatters_direct(C, Us)
    Uset = set(Us)
    collapsed = not any(s <= Uset for s in collapsed_generators(C))
    T = table if table is not None else betti_table(C)
    betti_ok = True
    for vals in itertools.product((UNDEF, 0, 1), repeat=len(Us)):
        full = [UNDEF] * C.n
        for u, v in zip(Us, vals):
            full[u] = v
        pf = PartialFunction(tuple(full), 2)
        need = len(Us) - len(pf.dom)
        if not any(i == need and g.extends(pf) for (i, g) in T.entries):
            betti_ok = False
            break
    tau = [(u, j) for u in Us for j in range(2)]
    sr = sr_betti(C, tau).get(len(Us) - 1, 0) != 0 if Us else True
    return {"direct": direct, "collapsed_ideal": collapsed, "betti": betti_ok, "sr_betti": sr}


def shatters(C: PartialClass, U: Iterable[int], table: BettiTable | None = None) -> bool:
    crit = shatter_criteria(C, U, table)
    if len(set(crit.values())) != 1:
        raise CrossCheckError(f"shattering criteria disagree: {crit}")
    return crit["direct"]


def shattered_sets(C: PartialClass) -> list[tuple[int, ...]]:
    """All shattered subsets, grown level by level (the family is down-closed)."""
    _need_binary(C)
    C.require_nonempty()
    out: list[tuple[int, ...]] = [()]
    seen = {()}
    level: list[tuple[int, ...]] = [()]
    while level:
        nxt = set()
        for S in level:
            for u in range(S[-1] + 1 if S else 0, C.n):
                T = S + (u,)
                if all(T[:i] + T[i + 1 :] in seen for i in range(len(T))) and shatters_direct(C, T):
                    nxt.add(T)
        level = sorted(nxt)
        seen.update(level)
        out.extend(level)
    return out


def shatter_complex(C: PartialClass) -> SimplicialComplex:
    return SimplicialComplex(shattered_sets(C), vertices=list(range(C.n)))


def vc_dimension(C: PartialClass) -> int:
    return max(len(S) for S in shattered_sets(C))


def vc_radius(C: PartialClass) -> int:
    """Largest ``k`` with every ``k``-set shattered, cross-checked against extentures."""
    _need_binary(C)
    C.require_nonempty()
    sets = set(shattered_sets(C))
    k = 0
    while k < C.n and all(S in sets for S in itertools.combinations(range(C.n), k + 1)):
        k += 1
    ex = extentures(C)
    via = C.n if not ex else min(len(p.dom) for p in ex) - 1
    if via != k:
        raise CrossCheckError(f"VC radius {k} differs from extenture bound {via}")
    return k


# ----------------------------------------------------------------------------
# Cohen-Macaulay tests


@dataclass(frozen=True)
class CMReport:
    cm: bool
    cublex: tuple[PartialFunction, ...] = field(default=())
    witness: tuple[int, PartialFunction] | None = None


def is_cm_class(C: PartialClass, table: BettiTable | None = None) -> CMReport:
    """Reisner-type test: ``beta_{i,pf}`` vanishes unless ``i = n - |dom pf|``.

    When the test passes the cublex (the partial functions carrying a Betti
    number, i.e. faces of the n-cube) is returned.
    """
    _need_binary(C)
    C.require_nonempty()
    T = table if table is not None else betti_table(C)
    for i, pf, _r in T.rows():
        if i != C.n - len(pf.dom):
            return CMReport(False, witness=(i, pf))
    return CMReport(True, cublex=tuple(T.pfs()))


def neighbor_tree_failure(C: PartialClass) -> PartialFunction | None:
    """First ``pf`` whose extension set is not a tree under the neighbor relation."""
    _need_binary(C)
    C.require_nonempty()
    edges = neighbors(C)
    faces = sorted(suboplex_faces(C))
    for vals in faces:
        pf = PartialFunction(vals, 2)
        V = {f for f in C.members if f.extends(pf)}
        E = [e for e in edges if e <= V]
        if len(E) != len(V) - 1 or not _connected(V, E):
            return pf
    return None


def _connected(V: set, E: list) -> bool:
    if not V:
        return True
    adj: dict = {v: [] for v in V}
    for e in E:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(V))
    seen = {start}
    stack = [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(V)


def is_cm_canonical(C: PartialClass, table: BettiTable | None = None) -> bool:
    """Tree criterion for the canonical ideal, checked against ``dim_h <= 1``."""
    tree = neighbor_tree_failure(C) is None
    T = table if table is not None else betti_table(C)
    low = max(i for (i, _pf) in T.entries) <= 1
    if tree != low:
        raise CrossCheckError(f"tree criterion says {tree} but dim_h <= 1 is {low}")
    return tree


# ----------------------------------------------------------------------------
# Euler characteristic and approximation hardness


def euler_characteristic(C: PartialClass, table: BettiTable | None = None) -> dict[PartialFunction, int]:
    """Nonzero coefficients ``sum_i (-1)^i beta_{i,pf}``, checked against face counts."""
    C.require_nonempty()
    T = table if table is not None else betti_table(C)
    out = {}
    for vals in sorted(suboplex_faces(C)):
        pf = PartialFunction(vals, C.m)
        e = T.euler(pf)
        if e != euler_from_faces(C, pf):
            raise CrossCheckError(f"Euler coefficient at {pf} disagrees with face counts")
        if e:
            out[pf] = e
    return out


def aleph(f: PartialFunction, C: PartialClass) -> int:
    """Least Hamming distance from ``f`` to a member of ``C`` (checked via Euler data of ``C boxtimes f``)."""
    C.require_nonempty()
    if f.n != C.n or f.m != C.m or not f.is_total:
        raise ShapeError("aleph needs a total function of the class shape")
    direct = min(C.n - len(f.meet(h).dom) for h in C.members)
    chi = euler_characteristic(box_target(C, f))
    via = C.n - max(len(pf.dom) for pf in chi)
    if via != direct:
        raise CrossCheckError(f"aleph {direct} differs from Euler bound {via}")
    return direct


def brute_extentures(C: PartialClass) -> list[PartialFunction]:
    """Extentures by exhaustive search over all partial functions (small n only)."""
    from .classes import all_partial_functions

    faces = suboplex_faces(C) if C.members else set()
    out = []
    for pf in all_partial_functions(C.n, C.m):
        if pf.values in faces:
            continue
        if all(pf.forget([u]).values in faces for u in pf.dom):
            out.append(pf)
    return sorted(out, key=lambda p: (len(p.dom), pf_key(p)))


def class_of_ideal(F: Iterable[PartialFunction], n: int, m: int = 2) -> PartialClass:
    """Total functions containing no member of ``F``."""
    fs = list(F)
    members = [
        vals
        for vals in itertools.product(range(m), repeat=n)
        if not any(all(x == UNDEF or x == vals[u] for u, x in enumerate(p.values)) for p in fs)
    ]
    return make_class(n, members, m)


__all__ = [
    "MonomialSet",
    "CMReport",
    "extentures",
    "brute_extentures",
    "sr_generators",
    "canonical_generators",
    "is_class_ideal",
    "class_of_ideal",
    "shatters",
    "shatter_criteria",
    "shatters_direct",
    "shattered_sets",
    "shatter_complex",
    "collapsed_generators",
    "vc_dimension",
    "vc_radius",
    "is_cm_class",
    "is_cm_canonical",
    "neighbor_tree_failure",
    "euler_characteristic",
    "aleph",
]
