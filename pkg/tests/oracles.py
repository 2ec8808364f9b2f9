"""Brute-force reference computations, written independently of the package internals."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy
from scipy.optimize import linprog


def _boundary(faces_by_dim, k):
    rows = {f: i for i, f in enumerate(faces_by_dim.get(k - 1, []))}
    cols = faces_by_dim.get(k, [])
    M = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        for pos, v in enumerate(f):
            M[rows[f[:pos] + f[pos + 1:]]][j] = (-1) ** pos
    return M


def _rank_q(M):
    if not M or not M[0]:
        return 0
    return sympy.Matrix(M).rank()


def _rank_2(M):
    if not M or not M[0]:
        return 0
    A = (np.array(M, dtype=np.int64) % 2).astype(np.uint8)
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


def reduced_homology(facets, field="rational"):
    """Reduced Betti numbers of the complex generated by ``facets``; {} for the void complex."""
    facets = [tuple(sorted(f)) for f in facets]
    if not facets:
        return {}
    faces = set()
    for f in facets:
        for k in range(len(f) + 1):
            faces.update(itertools.combinations(f, k))
    by_dim = {}
    for f in sorted(faces):
        by_dim.setdefault(len(f) - 1, []).append(f)
    rank = _rank_q if field == "rational" else _rank_2
    top = max(by_dim)
    ranks = {k: rank(_boundary(by_dim, k)) for k in range(0, top + 1)}
    out = {}
    for k in range(-1, top + 1):
        h = len(by_dim.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


# ----------------------------------------------------------------------------
# multigraded Betti numbers through upper Koszul complexes of the canonical ideal


def _gamma(values, m):
    return frozenset((u, j) for u, v in enumerate(values) for j in range(m) if v != j)


def _meet(a, b):
    return tuple(x if x == y else -1 for x, y in zip(a, b))


def meet_closure(members):
    seen = set(members)
    frontier = set(members)
    while frontier:
        new = {_meet(a, b) for a in frontier for b in seen} - seen
        seen |= new
        frontier = new
    return seen


def koszul_betti(members, m=2, field="rational"):
    """``{(i, values): rank}`` for the ideal generated by ``x^Gamma(f)``, f in ``members``.

    beta_i at degree b is the reduced homology in degree i-1 of the complex of
    subsets W of supp(b) with x^(b - W) in the ideal.
    """
    gens = [_gamma(f, m) for f in members]
    out = {}
    for pf in meet_closure(list(members)):
        b = _gamma(pf, m)
        support = sorted(b)
        in_ideal = lambda S: any(g <= S for g in gens)  # noqa: E731
        simplices = [W for k in range(len(support) + 1) for W in itertools.combinations(support, k)
                     if in_ideal(b - frozenset(W))]
        maximal = [W for W in simplices if not any(set(W) < set(V) for V in simplices)]
        for j, r in reduced_homology(maximal, field).items():
            out[(j + 1, pf)] = r
    return out


# ----------------------------------------------------------------------------
# linear programming and sign vectors in floating point


def scipy_feasible(G, h):
    """Whether ``G y >= h`` is feasible, by the HiGHS solver."""
    G = np.array([[float(x) for x in r] for r in G])
    res = linprog(np.zeros(G.shape[1]), A_ub=-G, b_ub=-np.array([float(x) for x in h]),
                  bounds=[(None, None)] * G.shape[1], method="highs")
    return res.status == 0


def realizable_sign(basis, tau):
    """Some ``y`` with sign(y B_u) = tau_u for all u (B the basis matrix)."""
    B = np.array([[float(x) for x in r] for r in basis])
    k, n = B.shape
    ge = [tau[u] * B[:, u] for u in range(n) if tau[u]]
    eq = [B[:, u] for u in range(n) if not tau[u]]
    if not ge:
        return True
    res = linprog(np.zeros(k), A_ub=-np.array(ge), b_ub=-np.ones(len(ge)),
                  A_eq=np.array(eq) if eq else None, b_eq=np.zeros(len(eq)) if eq else None,
                  bounds=[(None, None)] * k, method="highs")
    return res.status == 0


def brute_covectors(basis, n):
    return {t for t in itertools.product((-1, 0, 1), repeat=n) if realizable_sign(basis, t)}


def in_row_space(basis, x):
    M = sympy.Matrix([[Fraction(v) for v in r] for r in basis])
    return M.rank() == M.col_join(sympy.Matrix([[Fraction(v) for v in x]])).rank()
