"""Exact rational geometry behind the threshold classes.

A point configuration ``U`` in ``Q^d`` and a linear subspace ``L`` of ``Q^n``
are both stored through a basis matrix ``B`` whose row space is the space of
functionals restricted to the ``n`` points (for ``U``: the vectorized points
``(p, 1)`` as columns).  A covector is the sign pattern of one element of
that row space, written as a tuple over ``{-1, 0, 1}``.

Signs and bits are related by the package convention: bit ``0`` is ``+`` and
bit ``1`` is ``-``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

from . import lp
from .classes import UNDEF, FunctionClass, PartialFunction, _total, bits
from .errors import InputError, PreconditionError, ShapeError, SizeLimitError
from .topology import BettiTable, order_complex

Sign = tuple[int, ...]

COVECTOR_LIMIT = 12
TOPE_LIMIT = 16

_SIGN_CHARS = {"+": 1, "-": -1, "−": -1, "0": 0}


# ----------------------------------------------------------------------------
# sign vectors


def parse_signs(text: str) -> Sign:
    try:
        return tuple(_SIGN_CHARS[c] for c in text.strip())
    except KeyError as exc:
        raise InputError(f"bad sign character {exc.args[0]!r} in {text!r}") from None


def sign_str(tau: Sign) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in tau)


def sigma(pf: PartialFunction) -> Sign:
    """Sign vector of a boolean partial function (0 is +, 1 is -, undefined is 0)."""
    if pf.m != 2:
        raise ShapeError("sign vectors need codomain 2")
    return tuple(0 if v == UNDEF else (1 if v == 0 else -1) for v in pf.values)


def sigma_inv(tau: Sign) -> PartialFunction:
    return PartialFunction(tuple(UNDEF if s == 0 else (0 if s > 0 else 1) for s in tau), 2)


def compose(v: Sign, w: Sign) -> Sign:
    return tuple(a if a else b for a, b in zip(v, w))


def conformal_le(v: Sign, w: Sign) -> bool:
    """``v <= w`` in the face order: v agrees with w wherever v is nonzero."""
    return all(a == 0 or a == b for a, b in zip(v, w))


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


# ----------------------------------------------------------------------------
# point configurations and subspaces


def _rat(x: Any) -> Fraction:
    try:
        return lp.as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational: {x!r}") from None


@dataclass(frozen=True)
class LinearSubspace:
    """Row space of ``basis`` inside ``Q^n``."""

    basis: tuple[tuple[Fraction, ...], ...]
    n: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]], n: int | None = None) -> "LinearSubspace":
        R = [tuple(_rat(x) for x in r) for r in rows]
        if n is None:
            if not R:
                raise InputError("empty basis needs an explicit ambient dimension")
            n = len(R[0])
        if any(len(r) != n for r in R):
            raise ShapeError("basis rows have different lengths")
        E, _ = lp.row_echelon(R)
        return cls(tuple(tuple(r) for r in E), n)

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "LinearSubspace":
        if "basis" not in data:
            raise InputError("subspace JSON needs 'basis'")
        return cls.from_rows(data["basis"], data.get("n"))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def in_coordinate_hyperplane(self) -> bool:
        return any(all(r[u] == 0 for r in self.basis) for u in range(self.n))

    def point(self, y: Sequence[Fraction]) -> list[Fraction]:
        return lp.combine(y, self.basis) if self.basis else [Fraction(0)] * self.n

    def zero_rank(self, zeros: Iterable[int]) -> int:
        Z = list(zeros)
        return lp.rank(lp.columns(self.basis, Z)) if Z and self.basis else 0

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "basis": [[str(x) for x in r] for r in self.basis]}


@dataclass(frozen=True)
class PointConfig:
    """Finitely many points of ``Q^d``; covectors are signs of affine functionals."""

    points: tuple[tuple[Fraction, ...], ...]
    tag: str = field(default="U", compare=False)

    def __post_init__(self) -> None:
        if not self.points:
            raise InputError("a point configuration needs at least one point")
        if len({len(p) for p in self.points}) != 1:
            raise ShapeError("points have different dimensions")

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "PointConfig":
        if "points" not in data:
            raise InputError("point configuration JSON needs 'points'")
        U = cls(tuple(tuple(_rat(x) for x in p) for p in data["points"]))
        k = data.get("lift_degree")
        return U if k is None else U.lift(int(k))

    def to_json(self) -> dict[str, Any]:
        return {"points": [[str(x) for x in p] for p in self.points]}

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def ambient(self) -> int:
        return len(self.points[0])

    def vectorized(self) -> list[list[Fraction]]:
        """The ``(ambient + 1) x n`` matrix with columns ``(p, 1)``."""
        rows = [[p[i] for p in self.points] for i in range(self.ambient)]
        rows.append([Fraction(1)] * self.n)
        return rows

    @cached_property
    def subspace(self) -> LinearSubspace:
        return LinearSubspace.from_rows(self.vectorized(), self.n)

    @property
    def affine_dim(self) -> int:
        return self.subspace.dim - 1

    def lift(self, k: int) -> "PointConfig":
        """Monomial lift of degree 1..k, ordered by (degree, lexicographic)."""
        if k < 0:
            raise InputError("lift degree must be nonnegative")
        monos = [c for deg in range(1, k + 1) for c in itertools.combinations_with_replacement(range(self.ambient), deg)]
        return PointConfig(tuple(tuple(_monomial(p, c) for c in monos) for p in self.points), f"{self.tag}^{k}")


def _monomial(p: Sequence[Fraction], idx: Iterable[int]) -> Fraction:
    out = Fraction(1)
    for i in idx:
        out *= p[i]
    return out


def cube_points(d: int) -> PointConfig:
    """``{-1,1}^d`` with input ``u`` at ``((-1)^b for b in bits(u))``."""
    if not 0 <= d <= 4:
        raise InputError("cube dimension must be in [0,4]")
    pts = tuple(tuple(Fraction(1 - 2 * b) for b in bits(u, d)) for u in range(1 << d))
    return PointConfig(pts, f"cube{d}")


def cube_lift(d: int, k: int) -> PointConfig:
    """Multilinear monomials of degree 1..k on ``{-1,1}^d`` (squares are 1 there)."""
    C = cube_points(d)
    monos = [c for deg in range(1, min(k, d) + 1) for c in itertools.combinations(range(d), deg)]
    return PointConfig(tuple(tuple(_monomial(p, c) for c in monos) for p in C.points), f"cube{d}^{k}")


Geometry = PointConfig | LinearSubspace


def _space(X: Geometry) -> LinearSubspace:
    return X.subspace if isinstance(X, PointConfig) else X


# ----------------------------------------------------------------------------
# realizability and covectors


def realizing_point(X: Geometry, tau: Sign) -> list[Fraction] | None:
    """An element of the space with sign pattern exactly ``tau``, or None."""
    L = _space(X)
    if len(tau) != L.n:
        raise ShapeError(f"sign vector has length {len(tau)}, expected {L.n}")
    if not L.basis:
        return [Fraction(0)] * L.n if not any(tau) else None
    cols = lp.columns(L.basis, range(L.n))
    ge, eq = [], []
    for u, s in enumerate(tau):
        if s == 0:
            eq.append(cols[u])
        else:
            ge.append([s * x for x in cols[u]])
    y = lp.feasible(ge, [1] * len(ge), eq, [0] * len(eq), nvars=L.dim)
    return None if y is None else L.point(y)


def realizable(X: Geometry, tau: Sign) -> bool:
    return realizing_point(X, tau) is not None


@dataclass(frozen=True)
class CovectorPoset:
    """All covectors of a space with their ranks (zero vector has rank -1)."""

    n: int
    dim: int
    ranks: Mapping[Sign, int]

    @property
    def vectors(self) -> frozenset[Sign]:
        return frozenset(self.ranks)

    def rank(self, tau: Sign) -> int:
        return self.ranks[tau]

    def __contains__(self, tau: object) -> bool:
        return tau in self.ranks

    def __len__(self) -> int:
        return len(self.ranks)

    def nonzero(self) -> list[Sign]:
        return sorted(t for t in self.ranks if any(t))

    def cocircuits(self) -> list[Sign]:
        return sorted(t for t, r in self.ranks.items() if r == 0)

    def topes(self) -> list[Sign]:
        return sorted(t for t in self.ranks if all(t))

    def below(self, g: Sign) -> list[Sign]:
        return sorted(t for t in self.ranks if conformal_le(t, g))

    def covers(self, cells: Iterable[Sign]) -> dict[Sign, list[Sign]]:
        """Cover relation of the face order restricted to ``cells``."""
        S = list(cells)
        return {
            a: [b for b in S if b != a and self.ranks[b] == self.ranks[a] - 1 and conformal_le(b, a)] for a in S
        }


def covectors(X: Geometry, limit: int = COVECTOR_LIMIT) -> CovectorPoset:
    """Covectors as compositions of cocircuits; cocircuits from hyperplanes spanned by columns."""
    L = _space(X)
    if L.n > limit:
        raise SizeLimitError(f"covector enumeration limited to n <= {limit}")
    r = L.dim
    zero = (0,) * L.n
    if r == 0:
        return CovectorPoset(L.n, 0, {zero: -1})
    cols = lp.columns(L.basis, range(L.n))
    cocirc: set[Sign] = set()
    for S in itertools.combinations(range(L.n), r - 1):
        sub = [cols[u] for u in S]
        if r > 1 and lp.rank(sub) != r - 1:
            continue
        ys = lp.nullspace(sub, r) if sub else [[Fraction(int(i == 0)) for i in range(r)]]
        if len(ys) != 1:
            continue
        tau = tuple(_sgn(x) for x in L.point(ys[0]))
        cocirc.add(tau)
        cocirc.add(tuple(-s for s in tau))
    found = {zero} | cocirc
    frontier = set(cocirc)
    cc = sorted(cocirc)
    while frontier:
        nxt = set()
        for v in frontier:
            for c in cc:
                w = compose(v, c)
                if w not in found:
                    found.add(w)
                    nxt.add(w)
        frontier = nxt
    ranks = {t: r - L.zero_rank(u for u in range(L.n) if t[u] == 0) - 1 for t in found}
    return CovectorPoset(L.n, r, ranks)


def topes(X: Geometry, limit: int = TOPE_LIMIT) -> list[Sign]:
    """Nowhere-zero covectors, built one coordinate at a time with witnesses."""
    L = _space(X)
    if L.n > limit:
        raise SizeLimitError(f"tope enumeration limited to n <= {limit}")
    if L.in_coordinate_hyperplane():
        return []
    cols = lp.columns(L.basis, range(L.n))
    states: list[tuple[Sign, list[Fraction] | None]] = [((), None)]
    for u in range(L.n):
        nxt: list[tuple[Sign, list[Fraction] | None]] = []
        for t, w in states:
            known = 0
            if w is not None:
                known = _sgn(sum((a * b for a, b in zip(w, cols[u])), Fraction(0)))
                if known:
                    nxt.append((t + (known,), w))
            for s in (1, -1):
                if s == known:
                    continue
                y = _nudge(w, t, cols, u, s) if w is not None else None
                if y is None:
                    ge = [[x * tt for x in cols[v]] for v, tt in enumerate(t)] + [[s * x for x in cols[u]]]
                    y = lp.feasible(ge, [1] * len(ge), nvars=L.dim)
                if y is not None:
                    nxt.append((t + (s,), y))
        states = nxt
    return sorted(t for t, _ in states)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _nudge(w: list[Fraction], t: Sign, cols: list[list[Fraction]], u: int, s: int) -> list[Fraction] | None:
    """Move the witness ``w`` along ``s * cols[u]`` just past hyperplane ``u`` if the move stays in cell ``t``."""
    z = [s * x for x in cols[u]]
    zz = _dot(z, cols[u]) * s
    if zz <= 0:
        return None
    need = -s * _dot(w, cols[u]) / zz  # step at which w crosses hyperplane u
    cap = None
    for v, tv in enumerate(t):
        rate = tv * _dot(z, cols[v])
        if rate < 0:
            lim = tv * _dot(w, cols[v]) / -rate
            cap = lim if cap is None or lim < cap else cap
    eps = need + 1 if cap is None else (need + cap) / 2
    if cap is not None and eps >= cap or eps <= need:
        return None
    return [a + eps * b for a, b in zip(w, z)]


def linthr_class(X: Geometry, limit: int = TOPE_LIMIT) -> FunctionClass:
    """Threshold class ``thr L``: the nowhere-zero sign patterns, as bit functions."""
    L = _space(X)
    tag = f"linthr({getattr(X, 'tag', 'L')})"
    return _total(L.n, (sigma_inv(t).values for t in topes(L, limit)), 2, tag)


def polythr_class(d: int, k: int) -> FunctionClass:
    C = linthr_class(cube_lift(d, k))
    return FunctionClass(C.n, C.m, C.members, f"polythr({d},{k})")


def linthr_betti_closed_form(X: Geometry, limit: int = COVECTOR_LIMIT) -> BettiTable:
    """One entry ``beta_{dim - 1 - rank(tau), tau} = 1`` per covector ``tau``."""
    P = covectors(X, limit)
    top = P.dim - 1
    entries = {(top - rk, sigma_inv(t)): 1 for t, rk in P.ranks.items()}
    return BettiTable(P.n, 2, entries)


# ----------------------------------------------------------------------------
# projection and homological Farkas


def projection_pi(f: Sign, X: Geometry) -> Sign:
    """Largest covector conformally below the total sign vector ``f``."""
    L = _space(X)
    if len(f) != L.n or not all(f):
        raise ShapeError("projection needs a total sign vector of matching length")
    if not L.basis:
        return (0,) * L.n
    cols = lp.columns(L.basis, range(L.n))
    base = [[s * x for x in cols[u]] for u, s in enumerate(f)]
    out = []
    for u in range(L.n):
        rhs = [0] * L.n
        rhs[u] = 1
        out.append(f[u] if lp.feasible(base, rhs, nvars=L.dim) is not None else 0)
    return tuple(out)


def _farkas_pre(L: LinearSubspace) -> None:
    if L.dim < 2:
        raise PreconditionError("homological Farkas needs a subspace of dimension >= 2")
    if L.in_coordinate_hyperplane():
        raise PreconditionError("subspace lies in a coordinate hyperplane")


def lambda_cells(L: LinearSubspace, g: Sign, P: CovectorPoset | None = None) -> list[Sign]:
    """Cells of ``L`` meeting the part of the boundary of ``Delta_g`` seen from ``Delta_1``."""
    _farkas_pre(L)
    if len(g) != L.n or not all(g):
        raise ShapeError("g must be a total sign vector of matching length")
    if all(s > 0 for s in g) or all(s < 0 for s in g):
        raise PreconditionError("g must differ from the all-plus and all-minus vectors")
    P = P or covectors(L)
    neg = [u for u in range(L.n) if g[u] < 0]
    return [t for t in P.below(g) if any(t) and any(t[u] == 0 for u in neg)]


def cells_homology(P: CovectorPoset, cells: Sequence[Sign]) -> dict[int, int]:
    """Reduced homology of a closed union of open cells, via its order complex."""
    K = order_complex(list(cells), P.covers(cells))
    return K.reduced_homology()


@dataclass(frozen=True)
class Certificate:
    kind: str  # "witness" or "hole"
    x: tuple[Fraction, ...] | None = None
    g: Sign | None = None
    degree: int | None = None
    rank: int | None = None
    cells: tuple[Sign, ...] = ()

    def to_json(self) -> dict[str, Any]:
        if self.kind == "witness":
            return {"kind": "witness", "x": [str(v) for v in self.x or ()]}
        return {"kind": "hole", "g": sign_str(self.g or ()), "degree": self.degree, "rank": self.rank}


def positive_point(L: LinearSubspace) -> list[Fraction] | None:
    """A point of ``L`` with every coordinate at least 1, or None."""
    return realizing_point(L, (1,) * L.n)


def hole_search(L: LinearSubspace, P: CovectorPoset | None = None, first: bool = True) -> list[Certificate]:
    """Every admissible ``g`` whose nonempty ``Lambda(g)`` cells carry reduced homology."""
    _farkas_pre(L)
    P = P or covectors(L)
    out = []
    for code in range(1, (1 << L.n) - 1):
        g = tuple(-1 if b else 1 for b in bits(code, L.n))
        cells = lambda_cells(L, g, P)
        if not cells:
            continue
        H = {j: r for j, r in cells_homology(P, cells).items() if j >= 0 and r}
        if H:
            j = min(H)
            out.append(Certificate("hole", g=g, degree=j, rank=H[j], cells=tuple(cells)))
            if first:
                break
    return out


def hom_farkas(L: LinearSubspace, cross_check: bool = False) -> Certificate:
    """Positive witness if ``L`` meets the open positive orthant, else a hole certificate.

    With ``cross_check`` the opposite branch is also evaluated: a witness must
    come with hole-free ``Lambda`` cells everywhere, and a missing witness must
    come with some hole.
    """
    _farkas_pre(L)
    x = positive_point(L)
    if x is not None:
        if cross_check and hole_search(L):
            from .errors import CrossCheckError

            raise CrossCheckError("positive witness found but some Lambda cell set has holes")
        return Certificate("witness", x=_normalize(x))
    holes = hole_search(L)
    if not holes:
        from .errors import CrossCheckError

        raise CrossCheckError("no positive point and no homological certificate")
    return holes[0]


def _normalize(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a positive vector to the smallest integer multiple."""
    from math import gcd, lcm

    den = 1
    for v in x:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(Fraction(v // (g or 1)) for v in ints)


def verify_hole(L: LinearSubspace, cert: Certificate) -> bool:
    """Recompute the homology behind a hole certificate."""
    if cert.kind != "hole" or cert.g is None:
        return False
    P = covectors(L)
    cells = lambda_cells(L, cert.g, P)
    H = cells_homology(P, cells) if cells else {}
    return bool(cells) and H.get(cert.degree or 0, 0) == cert.rank and (cert.rank or 0) > 0


@dataclass(frozen=True)
class AffineArrangement:
    """Oriented affine hyperplanes ``a_i . x + c_i = 0``; the positive side is ``> 0``."""

    normals: tuple[tuple[Fraction, ...], ...]
    offsets: tuple[Fraction, ...]

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "AffineArrangement":
        hs = data.get("hyperplanes")
        if not hs:
            raise InputError("arrangement JSON needs a nonempty 'hyperplanes' list")
        normals = tuple(tuple(_rat(x) for x in h["normal"]) for h in hs)
        offsets = tuple(_rat(h.get("offset", 0)) for h in hs)
        if len({len(a) for a in normals}) != 1:
            raise ShapeError("normals have different dimensions")
        return cls(normals, offsets)

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    def essential(self) -> bool:
        return lp.rank(self.normals) == self.dim


@dataclass(frozen=True)
class AffineSubspace:
    """``base + span(directions)``."""

    base: tuple[Fraction, ...]
    directions: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "AffineSubspace":
        if "base" not in data:
            raise InputError("affine subspace JSON needs 'base'")
        base = tuple(_rat(x) for x in data["base"])
        dirs = tuple(tuple(_rat(x) for x in d) for d in data.get("directions", ()))
        if any(len(d) != len(base) for d in dirs):
            raise ShapeError("directions must match the base point dimension")
        return cls(base, dirs)


def vectorize(A: AffineArrangement, N: AffineSubspace) -> LinearSubspace:
    """Image of the vectorized ``N`` under ``(x, t) -> (a_i.x + c_i t, ..., t)``."""
    if len(N.base) != A.dim:
        raise ShapeError("affine subspace and arrangement live in different dimensions")

    def W(x: Sequence[Fraction], t: Fraction) -> list[Fraction]:
        return [sum((a * b for a, b in zip(an, x)), Fraction(0)) + c * t for an, c in zip(A.normals, A.offsets)] + [t]

    rows = [W(N.base, Fraction(1))] + [W(d, Fraction(0)) for d in N.directions]
    return LinearSubspace.from_rows(rows, len(A.normals) + 1)


def affine_hom_farkas(A: AffineArrangement, N: AffineSubspace, cross_check: bool = False) -> Certificate:
    """Does ``N`` meet the all-positive region of ``A``?  Witness point or hole certificate."""
    if not A.essential():
        raise PreconditionError("arrangement is not essential (normals do not span)")
    L = vectorize(A, N)
    if L.dim < 2:
        raise PreconditionError("affine subspace must have dimension >= 1")
    if L.in_coordinate_hyperplane():
        raise PreconditionError("affine subspace lies inside one of the hyperplanes")
    cert = hom_farkas(L, cross_check)
    if cert.kind == "witness" and cert.x is not None:
        t = cert.x[-1]
        pt = _affine_point(A, N, cert.x)
        return Certificate("witness", x=pt) if t > 0 else cert
    return cert


def _affine_point(A: AffineArrangement, N: AffineSubspace, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Recover the point of ``N`` whose image under the vectorization is a multiple of ``x``."""
    rows = [[Fraction(1)] + [Fraction(0)] * len(N.directions)]
    rhs = [x[-1]]
    for an, c in zip(A.normals, A.offsets):
        rows.append([sum((a * b for a, b in zip(an, N.base)), Fraction(0)) + c] + [
            sum((a * b for a, b in zip(an, d)), Fraction(0)) for d in N.directions
        ])
    rhs = [x[-1]] + list(x[:-1])
    y = lp.feasible([], [], rows, rhs, nvars=1 + len(N.directions))
    if y is None:  # pragma: no cover - the witness came from this very space
        raise ArithmeticError("witness does not lie in the vectorized subspace")
    t = y[0]
    return tuple((b * t + sum((yy * d[i] for yy, d in zip(y[1:], N.directions)), Fraction(0))) / t for i, b in enumerate(N.base))
