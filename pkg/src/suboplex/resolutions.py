"""Labeled cell complexes and cellular resolutions of canonical ideals.

Cells are given by their vertex sets; the empty cell is always present and
kept implicit.  Labels are exponent sets ``Gamma`` (squarefree monomials in
``x_{u,j}``): a vertex carries ``Gamma f`` for a partial function ``f`` (or a
plain monomial for Stanley-Reisner resolutions) and a cell carries the union
of its vertex labels, which for partial-function labels is ``Gamma`` of the
meet.  Homology of subcomplexes is computed on the simplicial structure when
the complex is simplicial and on the order complex of the cell poset
otherwise.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .classes import (
    UNDEF,
    FunctionClass,
    PartialClass,
    PartialFunction,
    bits,
    conj_function,
    digits,
    make_class,
    pf_coproduct,
    restrict_class,
)
from .errors import CrossCheckError, InputError, ShapeError
from .topology import BettiTable, SimplicialComplex, order_complex

Exponent = frozenset[tuple[int, int]]


def gamma_of(pf: PartialFunction) -> Exponent:
    return frozenset(pf.gamma)


def pf_of(exp: Exponent, n: int, m: int) -> PartialFunction:
    """Inverse of ``gamma_of``; raises if ``exp`` is not of the form ``Gamma pf``."""
    vals = []
    for u in range(n):
        missing = [j for j in range(m) if (u, j) not in exp]
        if len(missing) > 1:
            raise ShapeError("exponent is not the complement of a partial function graph")
        vals.append(missing[0] if missing else UNDEF)
    return PartialFunction(tuple(vals), m)


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    vertices: tuple[int, ...]
    facets: tuple[int, ...]


class LabeledComplex:
    """A regular cell complex with vertex labels and induced cell labels."""

    def __init__(
        self,
        n: int,
        m: int,
        vertex_labels: Sequence[PartialFunction | Exponent],
        cells: Iterable[tuple[int, Iterable[int]]],
        simplicial: bool = False,
        name: str = "X",
    ):
        self.n, self.m, self.name, self.simplicial = n, m, name, simplicial
        self.monomial = any(not isinstance(v, PartialFunction) for v in vertex_labels)
        self.vertex_exps: list[Exponent] = [
            gamma_of(v) if isinstance(v, PartialFunction) else frozenset(v) for v in vertex_labels
        ]
        nv = len(self.vertex_exps)
        raw = {(0, (i,)) for i in range(nv)}
        for dim, vs in cells:
            vt = tuple(sorted(set(vs)))
            if not vt or any(not 0 <= v < nv for v in vt):
                raise InputError(f"cell {vt} refers to unknown vertices")
            raw.add((dim, vt))
        ordered = sorted(raw)
        by_dim: dict[int, list[tuple[int, frozenset[int]]]] = {}
        self.cells: list[Cell] = []
        for i, (dim, vt) in enumerate(ordered):
            by_dim.setdefault(dim, []).append((i, frozenset(vt)))
        for i, (dim, vt) in enumerate(ordered):
            s = frozenset(vt)
            facets = tuple(j for j, t in by_dim.get(dim - 1, []) if t < s) if dim > 0 else ()
            self.cells.append(Cell(i, dim, vt, facets))
        self._validate()
        self.exps: list[Exponent] = [self._union(c.vertices) for c in self.cells]

    def _union(self, vs: Iterable[int]) -> Exponent:
        out: set[tuple[int, int]] = set()
        for v in vs:
            out |= self.vertex_exps[v]
        return frozenset(out)

    def _validate(self) -> None:
        for c in self.cells:
            if c.dim == 0:
                if len(c.vertices) != 1:
                    raise InputError(f"0-cell {c.id} must have exactly one vertex")
                continue
            if not c.facets:
                raise InputError(f"cell {c.vertices} of dim {c.dim} has no facets")
            covered = set()
            for j in c.facets:
                covered |= set(self.cells[j].vertices)
            if covered != set(c.vertices):
                raise InputError(f"facets of cell {c.vertices} do not cover its vertices")
            if self.simplicial and len(c.vertices) != c.dim + 1:
                raise InputError(f"simplicial cell {c.vertices} has dimension {c.dim}")

    # labels -----------------------------------------------------------------

    def label(self, cid: int) -> PartialFunction | Exponent:
        e = self.exps[cid]
        return e if self.monomial else pf_of(e, self.n, self.m)

    def vertex_ids(self) -> list[int]:
        return [c.id for c in self.cells if c.dim == 0]

    def top_cells(self) -> list[Cell]:
        covered = {j for c in self.cells for j in c.facets}
        return [c for c in self.cells if c.id not in covered]

    @property
    def dimension(self) -> int:
        return max(c.dim for c in self.cells) if self.cells else -1

    def __len__(self) -> int:
        return len(self.cells)

    def to_json(self) -> dict[str, Any]:
        vid = {c.vertices[0]: c.id for c in self.cells if c.dim == 0}
        out = []
        for c in self.cells:
            lab = self.label(c.id)
            out.append(
                {
                    "id": c.id,
                    "dim": c.dim,
                    "vertices": [vid[v] for v in c.vertices],
                    "facets": list(c.facets),
                    "label": str(lab) if isinstance(lab, PartialFunction) else [list(p) for p in sorted(lab)],
                }
            )
        return {"name": self.name, "n": self.n, "m": self.m, "cells": out}

    # subcomplexes -----------------------------------------------------------

    def homology(self, keep: Callable[[Cell], bool]) -> dict[int, int]:
        """Reduced homology of the subcomplex of cells selected by ``keep`` (a down-set)."""
        S = [c for c in self.cells if keep(c)]
        if self.simplicial:
            h = SimplicialComplex([c.vertices for c in S] or [()]).reduced_homology()
        else:
            ids = {c.id for c in S}
            covers = {c.id: [j for j in c.facets if j in ids] for c in S}
            h = order_complex([c.id for c in S], covers).reduced_homology()
        return {k: r for k, r in h.items() if r}

    def below(self, b: Exponent, strict: bool = False) -> dict[int, int]:
        if strict:
            return self.homology(lambda c: self.exps[c.id] < b)
        return self.homology(lambda c: self.exps[c.id] <= b)

    def lcm_closure(self) -> set[Exponent]:
        """Unions of vertex labels over all vertex subsets, plus the full ground set."""
        seen = set(self.vertex_exps)
        frontier = set(seen)
        while frontier:
            nxt = set()
            for a in frontier:
                for v in self.vertex_exps:
                    u = a | v
                    if u not in seen:
                        nxt.add(u)
            seen |= nxt
            frontier = nxt
        seen.add(frozenset((u, j) for u in range(self.n) for j in range(self.m)))
        return seen


@dataclass
class ResolutionReport:
    is_resolution: bool
    is_minimal: bool
    generators_match: bool
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.is_resolution and self.generators_match

    def to_json(self) -> dict[str, Any]:
        return {
            "is_resolution": self.is_resolution,
            "is_minimal": self.is_minimal,
            "generators_match": self.generators_match,
            "mismatches": self.mismatches,
        }


def _target_generators(C: PartialClass, ideal: str) -> set[Exponent]:
    if ideal == "canonical":
        return {gamma_of(f) for f in C.maximal().members}
    if ideal == "stanley-reisner":
        from .algebra import sr_generators

        return set(sr_generators(C).monomials)
    raise InputError(f"unknown ideal {ideal!r}")


def check_resolution(X: LabeledComplex, C: PartialClass, ideal: str = "canonical") -> ResolutionReport:
    """Is ``X`` a (minimal) cellular resolution of the chosen ideal of ``C``?"""
    if (X.n, X.m) != (C.n, C.m):
        raise ShapeError(f"complex has shape ({X.n},{X.m}), class has ({C.n},{C.m})")
    mism: list[str] = []
    want = _target_generators(C, ideal)
    have = set(X.vertex_exps)
    gens_ok = want == have
    if not gens_ok:
        for e in sorted(have - want, key=sorted):
            mism.append(f"vertex label {_fmt(X, e)} is not a generator")
        for e in sorted(want - have, key=sorted):
            mism.append(f"generator {_fmt(X, e)} is missing")
    acyclic = True
    for b in sorted(X.lcm_closure(), key=lambda e: (len(e), sorted(e))):
        h = X.below(b)
        if h and h != {-1: 1}:
            acyclic = False
            mism.append(f"subcomplex below {_fmt(X, b)} has homology {h}")
    minimal = all(X.exps[c.id] != X.exps[j] for c in X.cells for j in c.facets)
    if not minimal:
        mism.append("some cell shares its label with a facet")
    return ResolutionReport(acyclic, minimal, gens_ok, mism)


def _fmt(X: LabeledComplex, e: Exponent) -> str:
    if X.monomial:
        return "x^" + str(sorted(e))
    try:
        return str(pf_of(e, X.n, X.m))
    except ShapeError:
        return "x^" + str(sorted(e))


def census(X: LabeledComplex) -> dict[tuple[int, Exponent], int]:
    out: dict[tuple[int, Exponent], int] = {}
    for c in X.cells:
        k = (c.dim, X.exps[c.id])
        out[k] = out.get(k, 0) + 1
    return out


def betti_from_resolution(X: LabeledComplex, minimal: bool | None = None) -> dict[tuple[int, Exponent], int]:
    """``beta_{i,b} = dim H~_{i-1}(X_{<b})`` for ``i >= 1``; ``beta_0`` counts vertex labels.

    For a minimal complex the result is compared with the cell census.
    """
    out: dict[tuple[int, Exponent], int] = {}
    for e in X.vertex_exps:
        out[(0, e)] = out.get((0, e), 0) + 1
    for b in X.lcm_closure():
        for k, r in X.below(b, strict=True).items():
            if k >= 0 and r:
                out[(k + 1, b)] = r
    if minimal is None:
        minimal = all(X.exps[c.id] != X.exps[j] for c in X.cells for j in c.facets)
    if minimal and out != census(X):
        raise CrossCheckError("Betti numbers of a minimal resolution differ from its cell census")
    return out


def betti_table_from_resolution(X: LabeledComplex) -> BettiTable:
    if X.monomial:
        raise InputError("Betti tables are keyed by partial functions; this complex has monomial labels")
    raw = betti_from_resolution(X)
    return BettiTable(X.n, X.m, {(i, pf_of(e, X.n, X.m)): r for (i, e), r in raw.items()})


# ----------------------------------------------------------------------------
# named constructions


def _simplex_cells(tops: Iterable[Iterable[int]]) -> set[tuple[int, tuple[int, ...]]]:
    out = set()
    for t in tops:
        t = tuple(sorted(t))
        for r in range(1, len(t) + 1):
            for S in itertools.combinations(t, r):
                out.add((r - 1, S))
    return out


def _cube_cells(d: int, vertex_of: Callable[[tuple[int, ...]], int]) -> list[tuple[int, list[int]]]:
    """Faces of ``[0,1]^d`` as partial functions ``w``; vertices are the total extensions."""
    cells = []
    for w in itertools.product((UNDEF, 0, 1), repeat=d):
        free = [i for i in range(d) if w[i] == UNDEF]
        vs = []
        for fill in itertools.product((0, 1), repeat=len(free)):
            v = list(w)
            for i, b in zip(free, fill):
                v[i] = b
            vs.append(vertex_of(tuple(v)))
        cells.append((len(free), vs))
    return cells


def _index(v: Sequence[int], base: int = 2) -> int:
    x = 0
    for b in v:
        x = x * base + b
    return x


def cube_resolution(n: int) -> LabeledComplex:
    labels = [PartialFunction(bits(u, n)) for u in range(1 << n)]
    return LabeledComplex(n, 2, labels, _cube_cells(n, _index), name=f"cube({n})")


def singleton_sr_resolution(f: PartialFunction) -> LabeledComplex:
    """Simplex with vertex ``i`` labeled ``x_{i, not f(i)}``; resolves the Stanley-Reisner ideal of ``{f}``."""
    if not f.is_total or f.m != 2:
        raise InputError("needs a total boolean function")
    labels = [frozenset({(i, 1 - f.values[i])}) for i in range(f.n)]
    return LabeledComplex(f.n, 2, labels, _simplex_cells([range(f.n)]), simplicial=True, name=f"simplex({f})")


def delta_resolution(n: int) -> LabeledComplex:
    labels = [PartialFunction(tuple(int(u == i) for u in range(n))) for i in range(n)]
    return LabeledComplex(n, 2, labels, _simplex_cells([range(n)]), simplicial=True, name=f"delta({n})")


def wt_resolution(n: int, k: int, o: PartialFunction | None = None) -> LabeledComplex:
    """The slice ``[0,1]^n`` cut by ``sum v = k``; labels shifted by ``o``."""
    if not 0 <= k <= n:
        raise InputError("wt resolution needs 0 <= k <= n")
    base = o.values if o is not None else (0,) * n
    verts = [v for v in itertools.product((0, 1), repeat=n) if sum(v) == k]
    vid = {v: i for i, v in enumerate(verts)}
    labels = [PartialFunction(tuple(a ^ b for a, b in zip(v, base))) for v in verts]
    cells = []
    for w in itertools.product((UNDEF, 0, 1), repeat=n):
        ones = sum(1 for x in w if x == 1)
        free = [i for i in range(n) if w[i] == UNDEF]
        if not ones < k < ones + len(free):
            continue
        vs = [vid[v] for v in verts if all(x == UNDEF or x == y for x, y in zip(w, v))]
        cells.append((len(free) - 1, vs))
    return LabeledComplex(n, 2, labels, cells, name=f"wt({n},{k})")


def wt_cell_label(w: Sequence[int], o: Sequence[int] | None = None) -> PartialFunction:
    """Closed-form label of the slice cell over the cube face ``w``."""
    base = o or (0,) * len(w)
    return PartialFunction(tuple(UNDEF if x == UNDEF else x ^ b for x, b in zip(w, base)))


def monconj_resolution(d: int) -> LabeledComplex:
    pts = [bits(u, d) for u in range(1 << d)]
    labels = []
    for V in itertools.product((0, 1), repeat=d):
        labels.append(PartialFunction(tuple(int(all(v[i] for i in range(d) if V[i])) for v in pts)))
    return LabeledComplex(1 << d, 2, labels, _cube_cells(d, _index), name=f"monconj({d})")


def monconj_face_label(w: Sequence[int]) -> PartialFunction:
    """``Lambda(w)`` for a partial literal pattern ``w`` on ``[d]``."""
    d = len(w)
    vals = []
    for u in range(1 << d):
        v = bits(u, d)
        if any(v[i] == 0 for i in range(d) if w[i] == 1):
            vals.append(0)
        elif all(v[i] == 1 for i in range(d) if w[i] != 0):
            vals.append(1)
        else:
            vals.append(UNDEF)
    return PartialFunction(tuple(vals))


def _le_coc(V: Sequence[int], W: Sequence[int]) -> bool:
    return all(a == 0 or a == b for a, b in zip(V, W))


def coc_resolution(d: int) -> LabeledComplex:
    """Cone over the pile of ``2^d`` unit cubes in ``{-1,0,1}^d``, apex labeled by the null function."""
    base = list(itertools.product((-1, 0, 1), repeat=d))
    vid = {V: i for i, V in enumerate(base)}
    apex = len(base)
    labels = [PartialFunction(conj_function(V)) for V in base] + [PartialFunction((0,) * (1 << d))]
    cells = []
    for V in base:
        for W in base:
            if _le_coc(V, W):
                vs = [vid[U] for U in base if _le_coc(V, U) and _le_coc(U, W)]
                cells.append((sum(1 for a, b in zip(V, W) if a != b), vs))
    for w in itertools.product((0, -1, 1), repeat=d):
        vs = [vid[U] for U in base if all(x == 0 or U[i] == x for i, x in enumerate(w))]
        cells.append((d + 1 - sum(1 for x in w if x), vs + [apex]))
    return LabeledComplex(1 << d, 2, labels, cells, name=f"coc({d})")


def coc_base_label(V: Sequence[int], W: Sequence[int]) -> PartialFunction:
    """``Lambda(V, W)`` for an interval ``V <= W`` of the pile."""
    d = len(V)
    vals = []
    for u in range(1 << d):
        b = bits(u, d)
        if any(b[i] == (1 - V[i]) // 2 for i in range(d) if V[i]):
            vals.append(0)
        elif all(b[i] == (1 + W[i]) // 2 for i in range(d) if W[i]):
            vals.append(1)
        else:
            vals.append(UNDEF)
    return PartialFunction(tuple(vals))


def coc_cone_label(w: Sequence[int]) -> PartialFunction:
    """``Lambda'(w)``: the center conjunction restricted to its zeros."""
    f = conj_function(tuple(w))
    return PartialFunction(tuple(0 if x == 0 else UNDEF for x in f))


# flag resolution -------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def order_key(name: str, p: int) -> Callable[[tuple[int, ...]], Any]:
    if name == "weight":
        return lambda a: (sum(1 for x in a if x), a)
    if name == "lex":
        return lambda a: a
    raise InputError(f"unknown covector order {name!r}; use weight or lex")


def _affine_points(base: tuple[int, ...], basis: Sequence[tuple[int, ...]], p: int) -> list[tuple[int, ...]]:
    out = []
    for t in itertools.product(range(p), repeat=len(basis)):
        out.append(tuple((b + sum(ti * v[i] for ti, v in zip(t, basis))) % p for i, b in enumerate(base)))
    return out


def flag_paths(p: int, d: int, order: str = "weight") -> list[tuple[tuple[int, ...], ...]]:
    """Maximal root-to-leaf paths of the DAG ``T_d``, as covector sequences."""
    if not _is_prime(p):
        raise InputError("flag resolution needs a prime p")
    key = order_key(order, p)
    std = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    paths: list[tuple[tuple[int, ...], ...]] = []

    def normalized(phi: tuple[int, ...]) -> bool:
        first = next(x for x in phi if x)
        return first == 1

    def walk(base: tuple[int, ...], basis: list[tuple[int, ...]], path: tuple[tuple[int, ...], ...]) -> None:
        pts = _affine_points(base, basis, p)
        f = min(pts, key=key)
        path = path + (f,)
        k = len(basis)
        if k == 0:
            paths.append(path)
            return
        coords = {pt: t for pt, t in zip(pts, itertools.product(range(p), repeat=k))}
        tf = coords[f]
        seen = set()
        for phi in itertools.product(range(p), repeat=k):
            if not any(phi) or not normalized(phi):
                continue
            cf = sum(a * b for a, b in zip(phi, tf)) % p
            for c in range(p):
                if c == cf:
                    continue
                W = sorted(pt for pt, t in coords.items() if sum(a * b for a, b in zip(phi, t)) % p == c)
                fz = frozenset(W)
                if fz in seen:
                    continue
                seen.add(fz)
                b0 = W[0]
                dirs = _basis_of([tuple((x - y) % p for x, y in zip(w, b0)) for w in W], p)
                walk(b0, dirs, path)

    walk((0,) * d, std, ())
    return paths


def _basis_of(vectors: Sequence[tuple[int, ...]], p: int) -> list[tuple[int, ...]]:
    """Independent subset spanning the same F_p space (greedy, row reduction mod p)."""
    basis: list[tuple[int, ...]] = []
    reduced: list[tuple[int, list[int]]] = []
    for v in vectors:
        r = list(v)
        for piv, row in reduced:
            if r[piv]:
                f = r[piv]
                r = [(a - f * b) % p for a, b in zip(r, row)]
        nz = next((i for i, x in enumerate(r) if x), None)
        if nz is None:
            continue
        inv = pow(r[nz], p - 2, p)
        r = [(x * inv) % p for x in r]
        reduced.append((nz, r))
        basis.append(tuple(v))
    return basis


def flag_resolution(p: int, d: int, order: str = "weight") -> LabeledComplex:
    n = p**d
    pts = [digits(u, d, p) for u in range(n)]
    covs = list(itertools.product(range(p), repeat=d))
    vid = {a: i for i, a in enumerate(covs)}
    labels = [PartialFunction(tuple(sum(x * y for x, y in zip(a, pt)) % p for pt in pts), p) for a in covs]
    tops = {tuple(sorted(vid[f] for f in path)) for path in flag_paths(p, d, order)}
    return LabeledComplex(n, p, labels, _simplex_cells(tops), simplicial=True, name=f"flag({p},{d})")


def flag_top_count(p: int, d: int) -> int:
    out = 1
    for i in range(d):
        out *= p ** (d - i) - 1
    return out


# abnormal examples -------------------------------------------------------------


def segment_triangle_class(n: int = 3) -> FunctionClass:
    """``{not delta_i : i < n} + {g}`` on ``n+1`` inputs, ``g`` vanishing at the last two."""
    mem = [tuple(int(u != i) for u in range(n + 1)) for i in range(n)]
    mem.append(tuple(int(u not in (n - 1, n)) for u in range(n + 1)))
    return make_class(n + 1, mem, 2, f"segment_triangle({n})")


def segment_triangle_resolution(n: int = 3) -> LabeledComplex:
    C = segment_triangle_class(n)
    labels = [PartialFunction(v) for v in sorted(f.values for f in C.members)]
    order = {f.values: i for i, f in enumerate(labels)}
    negs = [order[tuple(int(u != i) for u in range(n + 1))] for i in range(n)]
    g = order[tuple(int(u not in (n - 1, n)) for u in range(n + 1))]
    tops = [negs, [order[tuple(int(u != n - 1) for u in range(n + 1))], g]]
    return LabeledComplex(n + 1, 2, labels, _simplex_cells(tops), simplicial=True, name=f"segment_triangle({n})")


def deltas_plus_one_class(n: int = 4) -> FunctionClass:
    mem = [tuple(int(u == i) for u in range(n)) for i in range(n)] + [(1,) * n]
    return make_class(n, mem, 2, f"deltas_plus_one({n})")


def deltas_plus_one_resolution(n: int = 4) -> LabeledComplex:
    """Simplex on the deltas plus the triangles ``{delta_0, delta_j, 1}``."""
    labels = [PartialFunction(tuple(int(u == i) for u in range(n))) for i in range(n)] + [PartialFunction((1,) * n)]
    one = n
    tops = [list(range(n))] + [[0, j, one] for j in range(1, n)]
    return LabeledComplex(n, 2, labels, _simplex_cells(tops), simplicial=True, name=f"deltas_plus_one({n})")


# ----------------------------------------------------------------------------
# combinators


def join_res(X: LabeledComplex, Y: LabeledComplex) -> LabeledComplex:
    """Join; the cell over ``(F, G)`` carries the meet of the two labels."""
    if (X.n, X.m) != (Y.n, Y.m) or X.monomial or Y.monomial:
        raise ShapeError("join needs two partial-function labeled complexes of the same shape")
    off = len(X.vertex_exps)
    labels = [pf_of(e, X.n, X.m) for e in X.vertex_exps + Y.vertex_exps]
    xs = [(c.dim, c.vertices) for c in X.cells] + [(-1, ())]
    ys = [(c.dim, tuple(v + off for v in c.vertices)) for c in Y.cells] + [(-1, ())]
    cells = [(a + b + 1, va + vb) for a, va in xs for b, vb in ys if va or vb]
    simp = X.simplicial and Y.simplicial
    return LabeledComplex(X.n, X.m, labels, cells, simplicial=simp, name=f"join({X.name},{Y.name})")


def product_res(X: LabeledComplex, Y: LabeledComplex) -> LabeledComplex:
    """Product; labels are coproducts on the disjoint union of domains and codomains."""
    if X.monomial or Y.monomial:
        raise ShapeError("product needs partial-function labeled complexes")
    xv = X.vertex_exps
    yv = Y.vertex_exps
    pairs = [(i, j) for i in range(len(xv)) for j in range(len(yv))]
    pid = {p: k for k, p in enumerate(pairs)}
    labels = [pf_coproduct(pf_of(xv[i], X.n, X.m), pf_of(yv[j], Y.n, Y.m)) for i, j in pairs]
    cells = [
        (a.dim + b.dim, [pid[(i, j)] for i in a.vertices for j in b.vertices]) for a in X.cells for b in Y.cells
    ]
    return LabeledComplex(X.n + Y.n, X.m + Y.m, labels, cells, name=f"product({X.name},{Y.name})")


def restrict_res(X: LabeledComplex, U: Iterable[int]) -> LabeledComplex:
    """Same cells, vertex labels restricted to the inputs ``U``."""
    if X.monomial:
        raise ShapeError("restriction needs partial-function labels")
    keep = sorted(set(U))
    if any(not 0 <= u < X.n for u in keep):
        raise InputError("restriction set outside the domain")
    labels = [pf_of(e, X.n, X.m).restrict(keep) for e in X.vertex_exps]
    cells = [(c.dim, c.vertices) for c in X.cells]
    return LabeledComplex(len(keep), X.m, labels, cells, simplicial=X.simplicial, name=f"restrict({X.name})")


def point_res(f: PartialFunction) -> LabeledComplex:
    return LabeledComplex(f.n, f.m, [f], [], simplicial=True, name=f"point({f})")


def build_named_resolution(kind: str, params: Mapping[str, Any]) -> LabeledComplex:
    kind = kind.lower()

    def need_int(key: str, lo: int, hi: int) -> int:
        v = params.get(key)
        if not isinstance(v, int) or isinstance(v, bool) or not lo <= v <= hi:
            raise InputError(f"resolution {kind!r} needs integer {key!r} in [{lo},{hi}]")
        return v

    if kind == "cube":
        return cube_resolution(need_int("n", 0, 10))
    if kind in ("simplex_singleton", "singleton"):
        f = params.get("f")
        if not isinstance(f, str):
            raise InputError("singleton resolution needs a dot-string 'f'")
        return singleton_sr_resolution(PartialFunction.parse(f))
    if kind == "delta":
        return delta_resolution(need_int("n", 1, 12))
    if kind == "wt":
        n = need_int("n", 1, 10)
        o = params.get("o")
        return wt_resolution(n, need_int("k", 0, n), PartialFunction.parse(o) if o else None)
    if kind == "monconj":
        return monconj_resolution(need_int("d", 0, 4))
    if kind == "coc":
        return coc_resolution(need_int("d", 0, 3))
    if kind == "flag":
        return flag_resolution(need_int("p", 2, 7), need_int("d", 0, 3), str(params.get("order", "weight")))
    if kind == "segment_triangle":
        return segment_triangle_resolution(need_int("n", 2, 8) if "n" in params else 3)
    if kind == "deltas_plus_one":
        return deltas_plus_one_resolution(need_int("n", 2, 8) if "n" in params else 4)
    raise InputError(f"unknown resolution kind {kind!r}")


def class_for_named(kind: str, params: Mapping[str, Any]) -> PartialClass:
    """The class a named construction is meant to resolve."""
    from . import classes as K

    kind = kind.lower()
    if kind == "cube":
        return K.complete(params["n"])
    if kind in ("simplex_singleton", "singleton"):
        return K.singleton(params["f"])
    if kind == "delta":
        return K.delta(params["n"])
    if kind == "wt":
        return K.wt(params["n"], params["k"], params.get("o"))
    if kind == "monconj":
        return K.monconj(params["d"])
    if kind == "coc":
        return K.conj(params["d"])
    if kind == "flag":
        return K.linfun(params["p"], params["d"])
    if kind == "segment_triangle":
        return segment_triangle_class(params.get("n", 3))
    if kind == "deltas_plus_one":
        return deltas_plus_one_class(params.get("n", 4))
    raise InputError(f"unknown resolution kind {kind!r}")


def ideal_for_named(kind: str) -> str:
    return "stanley-reisner" if kind.lower() in ("simplex_singleton", "singleton") else "canonical"
