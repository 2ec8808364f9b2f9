import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_covectors, in_row_space, scipy_feasible
from suboplex import geometry as G
from suboplex import lp
from suboplex import topology as T
from suboplex.errors import InputError, PreconditionError, ShapeError

small_int = st.integers(-3, 3)


def systems(max_rows=6, max_vars=3):
    return st.integers(1, max_vars).flatmap(
        lambda k: st.lists(st.tuples(st.lists(small_int, min_size=k, max_size=k), small_int),
                           min_size=1, max_size=max_rows).map(lambda rows: (k, rows)))


@settings(max_examples=150, deadline=None)
@given(systems())
def test_simplex_agrees_with_fourier_motzkin_and_highs(system):
    k, rows = system
    G_, h = [r for r, _ in rows], [b for _, b in rows]
    y = lp.feasible(G_, h, nvars=k)
    assert (y is not None) == lp.fm_feasible(G_, h, k) == scipy_feasible(G_, h)
    if y is not None:
        assert all(sum(Fraction(a) * v for a, v in zip(r, y)) >= b for r, b in zip(G_, h))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_int, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_and_nullspace(rows):
    import sympy

    assert lp.rank(rows) == sympy.Matrix(rows).rank()
    for v in lp.nullspace(rows, 4):
        assert all(sum(Fraction(a) * x for a, x in zip(r, v)) == 0 for r in rows)
    assert len(lp.nullspace(rows, 4)) == 4 - lp.rank(rows)


def test_sign_parsing_and_bit_convention():
    assert G.parse_signs("+-0") == (1, -1, 0)
    assert G.parse_signs("+−0") == (1, -1, 0)
    with pytest.raises(InputError):
        G.parse_signs("+x")
    f = G.sigma_inv((1, -1, 0))
    assert str(f) == "01."
    assert G.sigma(f) == (1, -1, 0)


def random_subspace(rng, n, l):
    return G.LinearSubspace.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(l)], n)


SUBSPACES = [random_subspace(random.Random(s), n, l) for s, (n, l) in enumerate([(3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 3)] * 3)]


@pytest.mark.parametrize("L", SUBSPACES, ids=lambda L: str([[str(x) for x in r] for r in L.basis]))
def test_covectors_match_brute_force(L):
    P = G.covectors(L)
    assert set(P.vectors) == (brute_covectors(L.basis, L.n) if L.basis else {(0,) * L.n})
    assert sorted(G.topes(L)) == sorted(P.topes())
    for t, r in P.ranks.items():
        assert r == L.dim - L.zero_rank(u for u in range(L.n) if t[u] == 0) - 1


@pytest.mark.parametrize("L", SUBSPACES[:9], ids=lambda L: str([[str(x) for x in r] for r in L.basis]))
def test_projection_is_pointwise_max_of_conformal_covectors(L):
    P = G.covectors(L)
    for f in itertools.product((1, -1), repeat=L.n):
        below = [t for t in P.vectors if G.conformal_le(t, f)]
        expect = tuple(f[u] if any(t[u] for t in below) else 0 for u in range(L.n))
        assert G.projection_pi(f, L) == expect
        assert expect in P


def test_realizing_point_has_the_requested_signs():
    L = G.LinearSubspace.from_rows([[1, -1, 0, 2], [0, 1, 1, -1]])
    for t in G.covectors(L).vectors:
        x = G.realizing_point(L, t)
        assert tuple((v > 0) - (v < 0) for v in x) == t
        assert in_row_space(L.basis, x)


def test_threshold_classes():
    assert len(G.linthr_class(G.cube_points(2))) == 14
    assert len(G.polythr_class(2, 2)) == 16
    assert len(G.linthr_class(G.cube_points(3))) == 104


@pytest.mark.parametrize("X", [G.cube_points(2), G.cube_lift(2, 1), G.PointConfig.from_json({"points": [[0], [1], [3]]})],
                         ids=["cube2", "lift21", "line3"])
def test_threshold_closed_form_matches_hochster(X):
    C = G.linthr_class(X)
    assert G.linthr_betti_closed_form(X).same_entries(T.betti_table(C))


def test_farkas_hole_example():
    L = G.LinearSubspace.from_rows([[1, -1, 0], [0, 0, 1]])
    cert = G.hom_farkas(L, cross_check=True)
    assert cert.kind == "hole" and G.sign_str(cert.g) == "+--"
    assert G.verify_hole(L, cert)


def test_farkas_witness_is_exact_and_positive():
    L = G.LinearSubspace.from_rows([[1, 2, -1], [0, 1, 1]])
    cert = G.hom_farkas(L, cross_check=True)
    assert cert.kind == "witness"
    assert all(v > 0 for v in cert.x) and in_row_space(L.basis, cert.x)


def test_farkas_agrees_with_lp_on_random_subspaces():
    rng = random.Random(21)
    seen = set()
    for _ in range(60):
        n, l = rng.choice([(3, 2), (4, 2), (4, 3), (5, 2)])
        L = random_subspace(rng, n, l)
        if L.dim < 2 or L.in_coordinate_hyperplane():
            continue
        cert = G.hom_farkas(L, cross_check=True)
        cols = lp.columns(L.basis, range(L.n))
        positive = scipy_feasible(cols, [1] * L.n)
        assert (cert.kind == "witness") == positive
        if cert.kind == "hole":
            assert G.verify_hole(L, cert)
        seen.add(cert.kind)
    assert seen == {"witness", "hole"}


def test_forged_hole_is_rejected():
    L = G.LinearSubspace.from_rows([[1, -1, 0], [0, 0, 1]])
    cert = G.hom_farkas(L)
    forged = G.Certificate("hole", g=cert.g, degree=cert.degree, rank=(cert.rank or 0) + 1)
    assert not G.verify_hole(L, forged)


@pytest.mark.parametrize("rows", [[[1, 1, 1]], [[1, 0, 0], [0, 1, 0]]], ids=["dim1", "coordinate"])
def test_farkas_preconditions(rows):
    with pytest.raises(PreconditionError):
        G.hom_farkas(G.LinearSubspace.from_rows(rows))


def test_affine_farkas_witness_and_hole():
    # half-planes x > 0, y > 0, 1 - x - y > 0 in the plane
    A = G.AffineArrangement.from_json({"hyperplanes": [
        {"normal": [1, 0], "offset": 0}, {"normal": [0, 1], "offset": 0}, {"normal": [-1, -1], "offset": 1}]})
    through = G.AffineSubspace.from_json({"base": ["1/4", "1/4"], "directions": [[1, -1]]})
    cert = G.affine_hom_farkas(A, through, cross_check=True)
    assert cert.kind == "witness"
    x, y = cert.x
    assert x > 0 and y > 0 and 1 - x - y > 0 and x + y == Fraction(1, 2)
    outside = G.AffineSubspace.from_json({"base": [2, 0], "directions": [[0, 1]]})
    assert G.affine_hom_farkas(A, outside, cross_check=True).kind == "hole"


def test_affine_farkas_preconditions():
    A = G.AffineArrangement.from_json({"hyperplanes": [{"normal": [1, 0]}, {"normal": [2, 0], "offset": 1}]})
    N = G.AffineSubspace.from_json({"base": [0, 0], "directions": [[0, 1]]})
    with pytest.raises(PreconditionError):
        G.affine_hom_farkas(A, N)
    with pytest.raises(ShapeError):
        G.AffineSubspace.from_json({"base": [0, 0], "directions": [[1]]})
