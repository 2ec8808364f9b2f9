"""Simplicial complexes, exact reduced homology and Betti tables of classes.

Betti numbers of a class are computed face by face with the dual Hochster
formula ``beta_{i,pf}(C) = dim H~_{i-1}(S_{C filtered by pf})``.  Reduced
homology is computed from boundary-matrix ranks, over GF(2) with packed
integer rows or over the rationals with fraction-free integer elimination.
"""

from __future__ import annotations

import contextlib
import functools
import itertools
import os
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from contextvars import ContextVar
from dataclasses import dataclass, field as dc_field
from math import gcd

from .classes import (
    UNDEF,
    FunctionClass,
    PartialClass,
    PartialFunction,
    extends_tuple,
    filter_class,
    pf_key,
    restrict_class,
)
from .errors import CrossCheckError, EmptyClassError, InputError, PreconditionError, SizeLimitError

FIELDS = ("rational", "gf2")
DEFAULT_FACE_LIMIT = 10**6

_face_limit: ContextVar[int | None] = ContextVar("suboplex_face_limit", default=None)


def current_face_limit() -> int:
    v = _face_limit.get()
    if v is not None:
        return v
    env = os.environ.get("SUBOPLEX_LIMIT_FACES")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError("SUBOPLEX_LIMIT_FACES must be an integer") from exc
    return DEFAULT_FACE_LIMIT


@contextlib.contextmanager
def face_limit(limit: int | None) -> Iterator[None]:
    """Temporarily override the face budget used by homology computations."""
    token = _face_limit.set(limit)
    try:
        yield
    finally:
        _face_limit.reset(token)


def check_field(field_name: str) -> str:
    f = field_name.lower()
    if f not in FIELDS + ("both",):
        raise InputError(f"unknown field {field_name!r}; use gf2, rational or both")
    return f


# ----------------------------------------------------------------------------
# rank kernels


def rank_gf2(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix whose rows are packed into integers."""
    basis: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            h = row.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = row
                r += 1
                break
            row ^= b
    return r


def rank_rational(rows: Iterable[Mapping[int, int]]) -> int:
    """Exact rank over Q of a sparse integer matrix (fraction-free elimination)."""
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for src in rows:
        row = {k: v for k, v in src.items() if v}
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                pivots[c] = row
                r += 1
                break
            a, b = row[c], p[c]
            new = {k: b * v for k, v in row.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - a * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
    return r


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _faces_of(facets: Iterable[int], limit: int) -> set[int]:
    seen: set[int] = set()
    for F in facets:
        if F in seen:
            continue
        sub = F
        while True:
            seen.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & F
        if len(seen) > limit:
            raise SizeLimitError(f"complex has more than {limit} faces")
    return seen


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    ms = sorted(set(masks), key=_popcount, reverse=True)
    out: list[int] = []
    for x in ms:
        if not any(x & y == x for y in out):
            out.append(x)
    return out


def _homology_from_faces(faces: set[int], field_name: str) -> dict[int, int]:
    """Nonzero reduced Betti numbers of the complex with the given face masks."""
    if not faces:
        return {}
    by_dim: dict[int, list[int]] = {}
    for F in faces:
        by_dim.setdefault(_popcount(F) - 1, []).append(F)
    top = max(by_dim)
    if top == -1:
        return {-1: 1}
    index = {k: {F: i for i, F in enumerate(sorted(v))} for k, v in by_dim.items()}
    ranks = {0: 1 if by_dim.get(0) else 0}
    for k in range(1, top + 1):
        rows_f = by_dim.get(k, [])
        cols = index.get(k - 1, {})
        if not rows_f:
            ranks[k] = 0
            continue
        packed = []
        for F in rows_f:
            x = 0
            b = F
            while b:
                low = b & -b
                x |= 1 << cols[F ^ low]
                b ^= low
            packed.append(x)
        r2 = rank_gf2(packed)
        if field_name == "gf2" or r2 == min(len(rows_f), len(cols)):
            ranks[k] = r2
            continue
        sparse = []
        for F in rows_f:
            row = {}
            b = F
            pos = 0
            while b:
                low = b & -b
                row[cols[F ^ low]] = -1 if pos % 2 else 1
                pos += 1
                b ^= low
            sparse.append(row)
        ranks[k] = rank_rational(sparse)
    out = {}
    for k in range(-1, top + 1):
        fk = 1 if k == -1 else len(by_dim.get(k, ()))
        h = fk - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h < 0:
            raise CrossCheckError("negative homology rank")
        if h:
            out[k] = h
    return out


def homology_of_facets(facets: Iterable[int], field_name: str = "rational") -> dict[int, int]:
    """Reduced homology of the complex generated by facet bitmasks.

    An empty facet list is the void complex (no faces); a single empty
    facet is the irrelevant complex, whose only homology sits in degree -1.
    """
    field_name = check_field(field_name)
    masks = list(facets)
    if not masks:
        return {}
    if field_name == "both":
        a = homology_of_facets(masks, "gf2")
        b = homology_of_facets(masks, "rational")
        if a != b:
            raise CrossCheckError(f"GF(2) homology {a} differs from rational homology {b}")
        return b
    mx = _maximal_masks(masks)
    if mx == [0]:
        return {-1: 1}
    common = mx[0]
    for F in mx[1:]:
        common &= F
    if common:
        return {}
    faces = _faces_of(mx, current_face_limit())
    return _homology_from_faces(faces, field_name)


# ----------------------------------------------------------------------------
# simplicial complexes


def _vertex_sort(vs: Iterable[Hashable]) -> list[Hashable]:
    vs = list(vs)
    try:
        return sorted(vs)
    except TypeError:
        return sorted(vs, key=repr)


class SimplicialComplex:
    """A finite abstract simplicial complex given by generating faces.

    ``SimplicialComplex([])`` is the void complex with no faces at all, and
    ``SimplicialComplex([()])`` is the irrelevant complex holding only the
    empty face.
    """

    def __init__(self, facets: Iterable[Iterable[Hashable]] = (), vertices: Sequence[Hashable] | None = None):
        fs = [frozenset(F) for F in facets]
        used = set().union(*fs) if fs else set()
        if vertices is None:
            vertices = _vertex_sort(used)
        else:
            missing = used - set(vertices)
            if missing:
                raise InputError(f"faces use unknown vertices {sorted(map(repr, missing))}")
        self.vertices: tuple[Hashable, ...] = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.is_void = not fs
        self._masks = _maximal_masks(self._mask(F) for F in fs) if fs else []

    def _mask(self, F: Iterable[Hashable]) -> int:
        x = 0
        for v in F:
            x |= 1 << self._index[v]
        return x

    def _unmask(self, x: int) -> frozenset[Hashable]:
        return frozenset(self.vertices[i] for i in range(len(self.vertices)) if x >> i & 1)

    @property
    def facets(self) -> list[frozenset[Hashable]]:
        return sorted((self._unmask(x) for x in self._masks), key=lambda F: (-len(F), _vertex_sort(F)))

    def faces(self) -> set[frozenset[Hashable]]:
        if self.is_void:
            return set()
        return {self._unmask(x) for x in _faces_of(self._masks, current_face_limit())}

    def face_count(self) -> int:
        """Number of faces, the empty face included."""
        if self.is_void:
            return 0
        return len(_faces_of(self._masks, current_face_limit()))

    def f_vector(self) -> dict[int, int]:
        out: dict[int, int] = {}
        if self.is_void:
            return out
        for x in _faces_of(self._masks, current_face_limit()):
            k = _popcount(x) - 1
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    @property
    def dimension(self) -> int:
        if self.is_void:
            return -2
        return max(_popcount(x) for x in self._masks) - 1

    def __contains__(self, face: Iterable[Hashable]) -> bool:
        try:
            x = self._mask(face)
        except KeyError:
            return False
        return any(x & F == x for F in self._masks)

    def link(self, sigma: Iterable[Hashable]) -> "SimplicialComplex":
        """Faces disjoint from ``sigma`` whose union with ``sigma`` is a face."""
        sigma = frozenset(sigma)
        if sigma not in self:
            return SimplicialComplex([], vertices=self.vertices)
        s = self._mask(sigma)
        fs = [self._unmask(F & ~s) for F in self._masks if F & s == s]
        return SimplicialComplex(fs, vertices=self.vertices)

    def restrict(self, sigma: Iterable[Hashable]) -> "SimplicialComplex":
        """Faces contained in ``sigma``."""
        if self.is_void:
            return SimplicialComplex([], vertices=self.vertices)
        s = self._mask(v for v in sigma if v in self._index)
        return SimplicialComplex([self._unmask(F & s) for F in self._masks], vertices=self.vertices)

    def reduced_homology(self, field_name: str = "rational") -> dict[int, int]:
        """Rank of reduced homology in every degree from -1 to the dimension."""
        nz = homology_of_facets(self._masks, field_name)
        return {k: nz.get(k, 0) for k in range(-1, self.dimension + 1)}

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in self.f_vector().items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.is_void == other.is_void and set(self.facets) == set(other.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={len(self._masks)}, dim={self.dimension})"


def reduced_homology(K: SimplicialComplex, field_name: str = "rational") -> dict[int, int]:
    return K.reduced_homology(field_name)


def link(K: SimplicialComplex, sigma: Iterable[Hashable]) -> SimplicialComplex:
    return K.link(sigma)


def restrict_complex(K: SimplicialComplex, sigma: Iterable[Hashable]) -> SimplicialComplex:
    return K.restrict(sigma)


def order_complex(nodes: Sequence[Hashable], covers: Mapping[Hashable, Iterable[Hashable]]) -> SimplicialComplex:
    """Order complex of a finite poset given by its cover relation.

    ``covers[x]`` lists the elements directly below ``x``.  Facets are the
    maximal chains, found as maximal downward paths.
    """
    if not nodes:
        return SimplicialComplex([()])
    below = {x: list(covers.get(x, ())) for x in nodes}
    above: set[Hashable] = set()
    for x in nodes:
        above.update(below[x])
    tops = [x for x in nodes if x not in above]
    chains: list[tuple[Hashable, ...]] = []

    def walk(x: Hashable, path: tuple[Hashable, ...]) -> None:
        nxt = below[x]
        if not nxt:
            chains.append(path)
            return
        for y in nxt:
            walk(y, path + (y,))

    for t in tops:
        walk(t, (t,))
    return SimplicialComplex(chains, vertices=list(nodes))


# ----------------------------------------------------------------------------
# canonical suboplex and Betti tables


def _vertex_bits(values: tuple[int, ...], m: int) -> int:
    x = 0
    for u, v in enumerate(values):
        if v != UNDEF:
            x |= 1 << (u * m + v)
    return x


@functools.lru_cache(maxsize=200_000)
def _members_homology(members: frozenset[tuple[int, ...]], m: int, field_name: str) -> tuple[tuple[int, int], ...]:
    masks = [_vertex_bits(g, m) for g in members]
    return tuple(sorted(homology_of_facets(masks, field_name).items()))


def class_homology(members: Iterable[tuple[int, ...]], m: int, field_name: str = "rational") -> dict[int, int]:
    """Reduced homology of the suboplex generated by the given value tuples."""
    field_name = check_field(field_name)
    fs = frozenset(members)
    if field_name == "both":
        a = dict(_members_homology(fs, m, "gf2"))
        b = dict(_members_homology(fs, m, "rational"))
        if a != b:
            raise CrossCheckError(f"GF(2) homology {a} differs from rational homology {b}")
        return b
    return dict(_members_homology(fs, m, field_name))


def canonical_suboplex(C: PartialClass) -> SimplicialComplex:
    """The complex whose faces are the partial functions extendable in ``C``."""
    C.require_nonempty()
    verts = [(u, j) for u in range(C.n) for j in range(C.m)]
    used = set()
    for f in C.members:
        used |= f.graph
    return SimplicialComplex([f.graph for f in C.maximal().members], vertices=[v for v in verts if v in used])


def suboplex_faces(C: PartialClass) -> set[tuple[int, ...]]:
    """All partial functions (as value tuples) with an extension in ``C``."""
    out: set[tuple[int, ...]] = set()
    limit = current_face_limit()
    for g in C.maximal().members:
        dom = [u for u, v in enumerate(g.values) if v != UNDEF]
        for r in range(len(dom) + 1):
            for S in itertools.combinations(dom, r):
                vals = [UNDEF] * C.n
                for u in S:
                    vals[u] = g.values[u]
                out.add(tuple(vals))
        if len(out) > limit:
            raise SizeLimitError(f"suboplex has more than {limit} faces")
    return out


@dataclass(frozen=True)
class BettiTable:
    """Nonzero multigraded Betti numbers ``beta_{i,pf}`` of a class."""

    n: int
    m: int
    entries: Mapping[tuple[int, PartialFunction], int]
    field: str = "rational"
    _by_pf: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        by: dict[PartialFunction, dict[int, int]] = {}
        for (i, pf), r in self.entries.items():
            if r <= 0:
                raise CrossCheckError("Betti tables store positive ranks only")
            by.setdefault(pf, {})[i] = r
        self._by_pf.update(by)

    def get(self, i: int, pf: PartialFunction | str) -> int:
        if isinstance(pf, str):
            pf = PartialFunction.parse(pf, self.m)
        return self.entries.get((i, pf), 0)

    def at(self, pf: PartialFunction | str) -> dict[int, int]:
        if isinstance(pf, str):
            pf = PartialFunction.parse(pf, self.m)
        return dict(self._by_pf.get(pf, {}))

    def pfs(self) -> list[PartialFunction]:
        return sorted(self._by_pf, key=pf_key)

    def rows(self) -> list[tuple[int, PartialFunction, int]]:
        return [(i, pf, r) for (i, pf), r in sorted(self.entries.items(), key=lambda kv: (kv[0][0], pf_key(kv[0][1])))]

    def to_json(self) -> list[dict[str, object]]:
        return [{"i": i, "pf": str(pf), "rank": r} for i, pf, r in self.rows()]

    def euler(self, pf: PartialFunction) -> int:
        return sum((-1) ** i * r for i, r in self._by_pf.get(pf, {}).items())

    def same_entries(self, other: "BettiTable") -> bool:
        return dict(self.entries) == dict(other.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _filtered_tuples(gens: Sequence[tuple[int, ...]], pf: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    keep = [u for u, v in enumerate(pf) if v == UNDEF]
    return frozenset(tuple(g[u] for u in keep) for g in gens if extends_tuple(g, pf))


def betti_at(C: PartialClass, pf: PartialFunction, field_name: str = "rational") -> dict[int, int]:
    """Nonzero ``beta_{i,pf}(C)`` for one partial function, keyed by ``i``."""
    if pf.n != C.n or pf.m != C.m:
        raise InputError("partial function shape does not match the class")
    gens = [g.values for g in C.maximal().members]
    h = class_homology(_filtered_tuples(gens, pf.values), C.m, field_name)
    return {k + 1: r for k, r in h.items()}


def betti_table(C: PartialClass, field_name: str = "rational", threads: int = 1) -> BettiTable:
    """Full Betti table via one filtered-suboplex homology per face."""
    field_name = check_field(field_name)
    if not C.members:
        raise EmptyClassError("Betti numbers of the empty class are not defined")
    gens = sorted(g.values for g in C.maximal().members)
    faces = sorted(suboplex_faces(C))
    limit = current_face_limit()
    if len(faces) > limit:
        raise SizeLimitError(f"class has {len(faces)} faces, limit {limit}")

    def one(pf: tuple[int, ...]) -> tuple[tuple[int, ...], dict[int, int]]:
        with face_limit(limit):
            return pf, class_homology(_filtered_tuples(gens, pf), C.m, field_name)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, faces))
    else:
        results = [one(pf) for pf in faces]
    entries: dict[tuple[int, PartialFunction], int] = {}
    for pf, h in results:
        p = PartialFunction(pf, C.m)
        for k, r in h.items():
            entries[(k + 1, p)] = r
    return BettiTable(C.n, C.m, entries, field_name)


def _table(C_or_T: PartialClass | BettiTable, field_name: str = "rational") -> BettiTable:
    return C_or_T if isinstance(C_or_T, BettiTable) else betti_table(C_or_T, field_name)


def homological_dimension(C: PartialClass | BettiTable, field_name: str = "rational") -> int:
    T = _table(C, field_name)
    return max(i for (i, _pf) in T.entries)


def sr_dimension(C: PartialClass | BettiTable, field_name: str = "rational") -> int:
    T = _table(C, field_name)
    return max(T.n * T.m - len(pf.dom) - i for (i, pf) in T.entries)


def has_pure_betti(C: PartialClass | BettiTable, field_name: str = "rational") -> bool:
    T = _table(C, field_name)
    return all(len(T.at(pf)) <= 1 for pf in T.pfs())


def euler_from_faces(C: PartialClass, pf: PartialFunction) -> int:
    """``sum_i (-1)^i beta_{i,pf}`` computed from face counts alone."""
    F = filter_class(C, pf)
    if not F.members:
        return 0
    K = SimplicialComplex([g.graph for g in F.maximal().members])
    return -K.reduced_euler_characteristic()


def sr_betti(C: PartialClass, sigma: Iterable[tuple[int, int]], field_name: str = "rational") -> dict[int, int]:
    """Betti numbers ``beta_{i,sigma}`` of the Stanley-Reisner ideal (Hochster)."""
    C.require_nonempty()
    sig = frozenset(sigma)
    for u, j in sig:
        if not (0 <= u < C.n and 0 <= j < C.m):
            raise InputError(f"vertex {(u, j)} outside [n]x[m]")
    verts = sorted(sig)
    idx = {v: i for i, v in enumerate(verts)}
    masks = []
    for g in C.maximal().members:
        x = 0
        for v in g.graph & sig:
            x |= 1 << idx[v]
        masks.append(x)
    h = homology_of_facets(masks, field_name)
    return {len(sig) - k - 2: r for k, r in h.items() if len(sig) - k - 2 >= 0}


def restriction_sequence_check(C: PartialClass, field_name: str = "rational") -> bool:
    """Check the Euler-level identity tying ``C``, ``C|[n-1]`` and the two filters.

    For every ``pf`` on the first ``n-1`` inputs, writing ``E`` for the
    alternating sum of Betti numbers at a degree,
    ``E_C(pf) - E_{C|[n-1]}(pf) + sum_b E_C(pf + (n-1 -> b)) = 0``.
    When a single value ``b`` occurs at the last input, the filter by
    ``(n-1 -> b)`` must also coincide with the restriction.
    """
    C.require_nonempty()
    if C.n < 2:
        raise InputError("the restriction identity needs n >= 2")
    if not C.is_total:
        raise PreconditionError("the restriction identity is stated for classes of total functions")
    last = C.n - 1
    R = restrict_class(C, range(last))
    TC = betti_table(C, field_name)
    TR = betti_table(R, field_name)
    used = {f.values[last] for f in C.members if f.values[last] != UNDEF}
    if len(used) == 1:
        (b,) = used
        pin = PartialFunction.from_graph(C.n, [(last, b)], C.m)
        F = filter_class(C, pin)
        if F.members != R.members:
            return False
    ok = True
    for vals in suboplex_faces(R):
        base = PartialFunction(vals + (UNDEF,), C.m)
        total = TC.euler(base) - TR.euler(PartialFunction(vals, C.m))
        for b in range(C.m):
            total += TC.euler(PartialFunction(vals + (b,), C.m))
        if total != 0:
            ok = False
    return ok


def top_homology_nonzero(C: FunctionClass, field_name: str = "rational") -> bool:
    h = canonical_suboplex(C).reduced_homology(field_name)
    return h.get(C.n - 1, 0) != 0


def map_over(items: Sequence, fn: Callable, threads: int = 1) -> list:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]
