"""Partial functions, function classes and the named class constructors.

A partial function on ``[n]`` with codomain ``[m]`` is stored as a tuple of
``n`` integers where ``-1`` marks an undefined position.  Its text form is the
dot-string used throughout the package, e.g. ``"0.1"``.

Inputs of a boolean cube ``{0,1}^d`` are indexed by their binary expansion,
most significant bit first, so input ``5`` of ``[2^4]`` is ``(0, 1, 0, 1)``.
For threshold-flavoured classes a bit ``a`` stands for the sign ``(-1)^a``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Any

from .errors import EmptyClassError, InputError, ShapeError, SizeLimitError

UNDEF = -1
MAX_N = 24
MAX_MEMBERS = 1 << 20


@dataclass(frozen=True)
class PartialFunction:
    """A partial map ``[n] -> [m]``; ``values[u] == -1`` means undefined."""

    values: tuple[int, ...]
    m: int = 2

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InputError("codomain size must be positive")
        for v in self.values:
            if v != UNDEF and not 0 <= v < self.m:
                raise InputError(f"value {v} outside codomain [{self.m}]")

    @classmethod
    def parse(cls, text: str, m: int = 2) -> "PartialFunction":
        """Read a dot-string such as ``"01.1"``."""
        if m > 10:
            raise InputError("dot-strings support codomains of size at most 10")
        vals = []
        for ch in text.strip():
            if ch == ".":
                vals.append(UNDEF)
            elif ch.isdigit() and int(ch) < m:
                vals.append(int(ch))
            else:
                raise InputError(f"bad character {ch!r} in dot-string {text!r}")
        return cls(tuple(vals), m)

    @classmethod
    def empty(cls, n: int, m: int = 2) -> "PartialFunction":
        return cls((UNDEF,) * n, m)

    @classmethod
    def from_graph(cls, n: int, pairs: Iterable[tuple[int, int]], m: int = 2) -> "PartialFunction":
        vals = [UNDEF] * n
        for u, v in pairs:
            if vals[u] not in (UNDEF, v):
                raise InputError(f"input {u} assigned twice")
            vals[u] = v
        return cls(tuple(vals), m)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def dom(self) -> frozenset[int]:
        return frozenset(u for u, v in enumerate(self.values) if v != UNDEF)

    @property
    def is_total(self) -> bool:
        return UNDEF not in self.values

    @property
    def graph(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v in enumerate(self.values) if v != UNDEF)

    @property
    def gamma(self) -> frozenset[tuple[int, int]]:
        """Complement of the graph inside ``[n] x [m]``."""
        g = self.graph
        return frozenset((u, j) for u in range(self.n) for j in range(self.m) if (u, j) not in g)

    def _check(self, other: "PartialFunction") -> None:
        if self.n != other.n or self.m != other.m:
            raise ShapeError(f"shape ({self.n},{self.m}) vs ({other.n},{other.m})")

    def meet(self, other: "PartialFunction") -> "PartialFunction":
        """Largest common restriction of ``self`` and ``other``."""
        self._check(other)
        return PartialFunction(
            tuple(a if a == b else UNDEF for a, b in zip(self.values, other.values)), self.m
        )

    def extends(self, other: "PartialFunction") -> bool:
        """True iff ``self`` agrees with ``other`` on all of ``dom(other)``."""
        self._check(other)
        return all(b == UNDEF or a == b for a, b in zip(self.values, other.values))

    def restrict(self, positions: Iterable[int]) -> "PartialFunction":
        """Restriction to ``positions``, reindexed in increasing order."""
        return PartialFunction(tuple(self.values[u] for u in sorted(positions)), self.m)

    def forget(self, positions: Iterable[int]) -> "PartialFunction":
        """Same domain size, with ``positions`` made undefined."""
        drop = set(positions)
        return PartialFunction(
            tuple(UNDEF if u in drop else v for u, v in enumerate(self.values)), self.m
        )

    def flip(self, u: int) -> "PartialFunction":
        """Boolean negation at input ``u``."""
        if self.m != 2 or self.values[u] == UNDEF:
            raise InputError("flip needs a defined boolean value")
        vals = list(self.values)
        vals[u] = 1 - vals[u]
        return PartialFunction(tuple(vals), 2)

    def union(self, other: "PartialFunction") -> "PartialFunction":
        """Join of two consistent partial functions."""
        self._check(other)
        out = []
        for a, b in zip(self.values, other.values):
            if a != UNDEF and b != UNDEF and a != b:
                raise InputError("inconsistent partial functions")
            out.append(a if a != UNDEF else b)
        return PartialFunction(tuple(out), self.m)

    def __str__(self) -> str:
        return "".join("." if v == UNDEF else str(v) for v in self.values)

    def __repr__(self) -> str:
        return f"PF({str(self)!r})"


def pf_meet(f: PartialFunction, g: PartialFunction) -> PartialFunction:
    return f.meet(g)


def pf_extends(g: PartialFunction, pf: PartialFunction) -> bool:
    return g.extends(pf)


def pf_key(pf: PartialFunction) -> str:
    """Sort key used for every stable ordering of partial functions."""
    return str(pf)


def meet_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x if x == y else UNDEF for x, y in zip(a, b))


def extends_tuple(g: tuple[int, ...], pf: tuple[int, ...]) -> bool:
    return all(b == UNDEF or a == b for a, b in zip(g, pf))


def _guard(n: int, count: int, allow_large: bool = False) -> None:
    if allow_large:
        return
    if n > MAX_N:
        raise SizeLimitError(f"domain size {n} exceeds {MAX_N}")
    if count > MAX_MEMBERS:
        raise SizeLimitError(f"class size {count} exceeds {MAX_MEMBERS}")


@dataclass(frozen=True)
class PartialClass:
    """A finite set of partial functions sharing ``(n, m)``."""

    n: int
    m: int
    members: frozenset[PartialFunction]
    tag: str | None = field(default=None, compare=False)
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for f in self.members:
            if f.n != self.n or f.m != self.m:
                raise ShapeError(f"member {f} does not have shape ({self.n},{self.m})")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[PartialFunction]:
        return iter(self.sorted())

    def __contains__(self, f: object) -> bool:
        return f in self.members

    def sorted(self) -> list[PartialFunction]:
        return sorted(self.members, key=pf_key)

    def tuples(self) -> frozenset[tuple[int, ...]]:
        return frozenset(f.values for f in self.members)

    @property
    def is_total(self) -> bool:
        return all(f.is_total for f in self.members)

    def maximal(self) -> "PartialClass":
        """Members not strictly extended by another member."""
        mem = self.members
        keep = frozenset(
            f for f in mem if not any(g != f and g.extends(f) for g in mem)
        )
        return PartialClass(self.n, self.m, keep, self.tag, self.origin)

    def require_nonempty(self) -> None:
        if not self.members:
            raise EmptyClassError("the class is empty")


@dataclass(frozen=True)
class FunctionClass(PartialClass):
    """A finite set of total functions ``[n] -> [m]``."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for f in self.members:
            if not f.is_total:
                raise InputError(f"member {f} is not total")

    def maximal(self) -> "FunctionClass":
        return self

    def as_partial(self) -> PartialClass:
        return PartialClass(self.n, self.m, self.members, self.tag, self.origin)


AnyClass = PartialClass


def make_class(
    n: int,
    members: Iterable[PartialFunction | tuple[int, ...]],
    m: int = 2,
    tag: str | None = None,
    allow_large: bool = False,
) -> PartialClass:
    """Build a ``FunctionClass`` when all members are total, else a ``PartialClass``."""
    mem = frozenset(
        f if isinstance(f, PartialFunction) else PartialFunction(tuple(f), m) for f in members
    )
    _guard(n, len(mem), allow_large)
    if all(f.is_total for f in mem):
        return FunctionClass(n, m, mem, tag)
    return PartialClass(n, m, mem, tag)


def _total(n: int, members: Iterable[tuple[int, ...]], m: int, tag: str, allow_large: bool = False) -> FunctionClass:
    mem = frozenset(PartialFunction(tuple(v), m) for v in members)
    _guard(n, len(mem), allow_large)
    return FunctionClass(n, m, mem, tag)


def bits(u: int, d: int) -> tuple[int, ...]:
    """Binary expansion of ``u`` with ``d`` digits, most significant first."""
    return tuple((u >> (d - 1 - i)) & 1 for i in range(d))


def digits(u: int, d: int, p: int) -> tuple[int, ...]:
    """Base-``p`` expansion of ``u`` with ``d`` digits, most significant first."""
    out = []
    for _ in range(d):
        out.append(u % p)
        u //= p
    return tuple(reversed(out))


def _log2(n: int) -> int:
    d = n.bit_length() - 1
    if n < 1 or 1 << d != n:
        raise InputError(f"{n} is not a power of two")
    return d


# ----------------------------------------------------------------------------
# named constructors


def complete(n: int, m: int = 2) -> FunctionClass:
    _guard(n, m**n)
    return _total(n, itertools.product(range(m), repeat=n), m, f"complete(n={n})")


def singleton(f: PartialFunction | str) -> FunctionClass:
    if isinstance(f, str):
        f = PartialFunction.parse(f)
    if not f.is_total:
        raise InputError("singleton needs a total function")
    return FunctionClass(f.n, f.m, frozenset([f]), f"singleton({f})")


def delta(n: int) -> FunctionClass:
    if n < 1:
        raise InputError("delta needs n >= 1")
    return _total(n, (tuple(int(u == i) for u in range(n)) for i in range(n)), 2, f"delta(n={n})")


def _offset(o: PartialFunction | str | None, n: int) -> tuple[int, ...]:
    if o is None:
        return (0,) * n
    if isinstance(o, str):
        o = PartialFunction.parse(o)
    if o.n != n or not o.is_total or o.m != 2:
        raise InputError("center function must be a total boolean function on n inputs")
    return o.values


def wt(n: int, k: int, o: PartialFunction | str | None = None) -> FunctionClass:
    """Functions differing from ``o`` on exactly ``k`` inputs."""
    if not 0 <= k <= n:
        raise InputError("wt needs 0 <= k <= n")
    base = _offset(o, n)
    mem = []
    for S in itertools.combinations(range(n), k):
        mem.append(tuple(1 - b if u in S else b for u, b in enumerate(base)))
    return _total(n, mem, 2, f"wt(n={n},k={k})")


def nb(n: int, k: int, o: PartialFunction | str | None = None) -> FunctionClass:
    """Functions differing from ``o`` on at most ``k`` inputs."""
    if not 0 <= k <= n:
        raise InputError("nb needs 0 <= k <= n")
    base = _offset(o, n)
    mem = []
    for j in range(k + 1):
        for S in itertools.combinations(range(n), j):
            mem.append(tuple(1 - b if u in S else b for u, b in enumerate(base)))
    return _total(n, mem, 2, f"nb(n={n},k={k})")


def monconj(d: int) -> FunctionClass:
    """Monotone conjunctions of ``d`` variables on ``[2^d]``."""
    if d < 0:
        raise InputError("monconj needs d >= 0")
    n = 1 << d
    pts = [bits(u, d) for u in range(n)]
    mem = []
    for S in itertools.product((0, 1), repeat=d):
        mem.append(tuple(int(all(v[i] for i in range(d) if S[i])) for v in pts))
    return _total(n, mem, 2, f"monconj(d={d})")


def conj_function(w: tuple[int, ...]) -> tuple[int, ...]:
    """Conjunction with literal pattern ``w`` in ``{-1,0,1}^d``."""
    d = len(w)
    out = []
    for u in range(1 << d):
        v = bits(u, d)
        out.append(int(all((wi == 0) or (wi == 1 and vi == 1) or (wi == -1 and vi == 0) for wi, vi in zip(w, v))))
    return tuple(out)


def conj(d: int) -> FunctionClass:
    """Conjunctions of literals on ``[2^d]``, including the null function."""
    if d < 0:
        raise InputError("conj needs d >= 0")
    mem = {conj_function(w) for w in itertools.product((-1, 0, 1), repeat=d)}
    mem.add((0,) * (1 << d))
    return _total(1 << d, mem, 2, f"conj(d={d})")


def linfun(p: int, d: int) -> FunctionClass:
    """Linear functionals ``F_p^d -> F_p`` on ``[p^d]`` (``p`` prime)."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise InputError("linfun needs a prime p")
    if p > 10:
        raise InputError("linfun supports p <= 7")
    n = p**d
    pts = [digits(u, d, p) for u in range(n)]
    mem = []
    for a in itertools.product(range(p), repeat=d):
        mem.append(tuple(sum(ai * xi for ai, xi in zip(a, x)) % p for x in pts))
    return _total(n, mem, p, f"linfun(p={p},d={d})")


def explicit(functions: Iterable[str], m: int = 2) -> FunctionClass:
    fs = [PartialFunction.parse(s, m) for s in functions]
    if not fs:
        raise EmptyClassError("explicit class has no functions")
    n = fs[0].n
    seen: set[PartialFunction] = set()
    for f in fs:
        if f.n != n:
            raise ShapeError("explicit functions have different lengths")
        if not f.is_total:
            raise InputError(f"explicit function {f} is not total")
        if f in seen:
            raise InputError(f"duplicate function {f}")
        seen.add(f)
    _guard(n, len(seen))
    return FunctionClass(n, m, frozenset(seen), "explicit")


# ----------------------------------------------------------------------------
# named single functions


def parity(d: int) -> PartialFunction:
    return PartialFunction(tuple(bin(u).count("1") % 2 for u in range(1 << d)))


def majority(d: int) -> PartialFunction:
    return PartialFunction(tuple(int(2 * bin(u).count("1") > d) for u in range(1 << d)))


def indicator(n: int, u: int) -> PartialFunction:
    return PartialFunction(tuple(int(v == u) for v in range(n)))


def constant(n: int, b: int, m: int = 2) -> PartialFunction:
    return PartialFunction((b,) * n, m)


def named_function(name: str, n: int, m: int = 2) -> PartialFunction:
    """Resolve a target given by name or dot-string for a domain of size ``n``."""
    key = name.strip().lower()
    if key == "parity":
        return parity(_log2(n))
    if key == "majority":
        return majority(_log2(n))
    if key in ("ind_one", "ind1"):
        return indicator(n, n - 1)
    # bit 0 is the sign +1, so the all-plus function is the all-zeros string
    if key in ("zeros", "plus", "bot"):
        return constant(n, 0, m)
    if key in ("ones", "minus"):
        return constant(n, 1, m)
    f = PartialFunction.parse(name, m)
    if f.n != n:
        raise ShapeError(f"target has {f.n} inputs, class has {n}")
    return f


# ----------------------------------------------------------------------------
# class operations


def filter_class(C: PartialClass, pf: PartialFunction) -> PartialClass:
    """``C`` filtered by ``pf``: extensions of ``pf`` with ``dom(pf)`` deleted."""
    if pf.n != C.n or pf.m != C.m:
        raise ShapeError("filter shape mismatch")
    keep = [u for u in range(C.n) if pf.values[u] == UNDEF]
    mem = frozenset(g.restrict(keep) for g in C.members if g.extends(pf))
    cls = FunctionClass if isinstance(C, FunctionClass) else PartialClass
    return cls(len(keep), C.m, mem, C.tag, tuple(keep))


def restrict_class(C: PartialClass, U: Iterable[int]) -> PartialClass:
    """Restriction of every member to the inputs ``U``."""
    keep = sorted(set(U))
    if any(not 0 <= u < C.n for u in keep):
        raise InputError("restriction set outside the domain")
    mem = frozenset(g.restrict(keep) for g in C.members)
    cls = FunctionClass if isinstance(C, FunctionClass) else PartialClass
    return cls(len(keep), C.m, mem, C.tag, tuple(keep))


def _same_shape(C: PartialClass, D: PartialClass) -> None:
    if C.n != D.n or C.m != D.m:
        raise ShapeError(f"class shapes ({C.n},{C.m}) and ({D.n},{D.m}) differ")


def union_class(C: PartialClass, D: PartialClass) -> PartialClass:
    _same_shape(C, D)
    cls = FunctionClass if isinstance(C, FunctionClass) and isinstance(D, FunctionClass) else PartialClass
    return cls(C.n, C.m, C.members | D.members)


def add_function(C: PartialClass, f: PartialFunction) -> PartialClass:
    return union_class(C, make_class(C.n, [f], C.m))


def cartesian_intersection(C: PartialClass, D: PartialClass) -> PartialClass:
    """All pairwise meets ``f ⊓ g`` with ``f`` in ``C`` and ``g`` in ``D``."""
    _same_shape(C, D)
    mem = frozenset(PartialFunction(meet_tuples(f.values, g.values), C.m) for f in C.members for g in D.members)
    return PartialClass(C.n, C.m, mem)


def box_target(C: PartialClass, f: PartialFunction) -> PartialClass:
    """The partial class of meets with a single function ``f``."""
    return cartesian_intersection(C, PartialClass(C.n, C.m, frozenset([f])))


def pf_coproduct(f: PartialFunction, g: PartialFunction) -> PartialFunction:
    """Concatenation on disjoint domains with the codomains placed side by side."""
    vals = list(f.values) + [UNDEF if v == UNDEF else v + f.m for v in g.values]
    return PartialFunction(tuple(vals), f.m + g.m)


def cartesian_union(C: PartialClass, D: PartialClass) -> PartialClass:
    mem = frozenset(pf_coproduct(f, g) for f in C.members for g in D.members)
    cls = FunctionClass if isinstance(C, FunctionClass) and isinstance(D, FunctionClass) else PartialClass
    return cls(C.n + D.n, C.m + D.m, mem)


def extensions(C: PartialClass, pf: PartialFunction) -> list[PartialFunction]:
    return [g for g in C.sorted() if g.extends(pf)]


def neighbors(C: PartialClass) -> set[frozenset[PartialFunction]]:
    """Pairs ``{f, g}`` whose meet is extended by no other member."""
    mem = C.sorted()
    out: set[frozenset[PartialFunction]] = set()
    for f, g in itertools.combinations(mem, 2):
        h = f.meet(g)
        if sum(1 for x in mem if x.extends(h)) == 2:
            out.add(frozenset((f, g)))
    return out


def is_full(C: PartialClass) -> bool:
    """Every pair ``(u, v)`` is hit by some member."""
    hit = set()
    for f in C.members:
        hit |= f.graph
    return len(hit) == C.n * C.m


def all_partial_functions(n: int, m: int = 2) -> Iterator[PartialFunction]:
    for vals in itertools.product(range(-1, m), repeat=n):
        yield PartialFunction(vals, m)


# ----------------------------------------------------------------------------
# class specs


def build_class(spec: Mapping[str, Any]) -> PartialClass:
    """Construct a class from a ``ClassSpec`` mapping (see the README)."""
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise InputError("class spec needs a 'kind'")
    kind = str(spec["kind"]).lower()

    def need(key: str) -> Any:
        if key not in spec:
            raise InputError(f"class kind {kind!r} needs parameter {key!r}")
        return spec[key]

    def need_int(key: str, lo: int = 0, hi: int = 64) -> int:
        v = need(key)
        if not isinstance(v, int) or isinstance(v, bool) or not lo <= v <= hi:
            raise InputError(f"parameter {key!r} must be an integer in [{lo},{hi}]")
        return v

    if kind == "complete":
        return complete(need_int("n", 0, MAX_N), spec.get("m", 2))
    if kind == "singleton":
        if "f" in spec:
            return singleton(PartialFunction.parse(spec["f"]))
        return singleton(constant(need_int("n", 1, MAX_N), 0))
    if kind == "delta":
        return delta(need_int("n", 1, MAX_N))
    if kind == "wt":
        return wt(need_int("n", 1, MAX_N), need_int("k", 0, MAX_N), spec.get("o"))
    if kind == "nb":
        return nb(need_int("n", 1, MAX_N), need_int("k", 0, MAX_N), spec.get("o"))
    if kind == "monconj":
        return monconj(need_int("d", 0, 4))
    if kind == "conj":
        return conj(need_int("d", 0, 4))
    if kind == "linfun":
        return linfun(need_int("p", 2, 7), need_int("d", 0, 4))
    if kind in ("linthr", "polythr"):
        from . import geometry

        if kind == "polythr":
            return geometry.polythr_class(need_int("d", 0, 4), need_int("k", 0, 4))
        if "points" in spec:
            U = geometry.PointConfig.from_json(spec)
        else:
            U = geometry.cube_points(need_int("d", 0, 4))
        return geometry.linthr_class(U)
    if kind == "explicit":
        return explicit(need("functions"), spec.get("m", 2))
    raise InputError(f"unknown class kind {kind!r}")
