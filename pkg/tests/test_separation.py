import itertools
import random

import numpy as np
import pytest
from scipy.optimize import linprog

from suboplex import classes as K
from suboplex import geometry as G
from suboplex import separation as S
from suboplex import topology as T
from suboplex.errors import InputError, PreconditionError

PAR2 = K.parity(2)
PAR3 = K.parity(3)


def lifted_points(d, k):
    """Rows (1, monomials of degree 1..k) on {-1,1}^d, in floating point."""
    monos = [c for j in range(1, min(k, d) + 1) for c in itertools.combinations(range(d), j)]
    pts = []
    for u in range(1 << d):
        x = [-1 if (u >> (d - 1 - i)) & 1 else 1 for i in range(d)]
        pts.append([1.0] + [float(np.prod([x[i] for i in c])) for c in monos])
    return np.array(pts)


def lp_sign_representable(f, d, k):
    """Some polynomial of degree <= k with sign pattern of f (bit 0 is +)."""
    P = lifted_points(d, k)
    s = np.array([1 if v == 0 else -1 for v in f.values])
    res = linprog(np.zeros(P.shape[1]), A_ub=-(s[:, None] * P), b_ub=-np.ones(len(s)),
                  bounds=[(None, None)] * P.shape[1], method="highs")
    return res.status == 0


def lp_weakly_representable(f, d, k):
    P = lifted_points(d, k)
    s = np.array([1 if v == 0 else -1 for v in f.values])
    A = s[:, None] * P
    res = linprog(np.zeros(P.shape[1]), A_ub=np.vstack([-A, -A.sum(axis=0)]),
                  b_ub=np.concatenate([np.zeros(len(s)), [-1.0]]),
                  bounds=[(None, None)] * P.shape[1], method="highs")
    return res.status == 0


@pytest.mark.parametrize("d", [2, 3])
def test_parity_separated_from_linear_threshold(d):
    # the top Betti number at the empty function disappears once parity is added
    C = G.linthr_class(G.cube_points(d))
    rep = S.compare_betti(C, K.parity(d))
    assert not rep.member and rep.separated
    empty = "." * (1 << d)
    assert [(i, a, b) for i, pf, a, b in rep.diff if str(pf) == empty] == [(d + 1, 1, 0)]


def test_indicator_separation_site():
    C = K.linfun(2, 2)
    rep = S.compare_betti(C, K.indicator(4, 3))
    assert any(i == 1 and str(pf) == "0..1" for i, pf, _, _ in rep.diff)


def test_member_changes_nothing():
    C = K.wt(4, 2)
    rep = S.compare_betti(C, K.PartialFunction.parse("0011"))
    assert rep.member and not rep.diff


def test_mayer_vietoris_on_random_pairs():
    rng = random.Random(5)
    pool = list(itertools.product((0, 1), repeat=3))
    for _ in range(25):
        C = K.make_class(3, rng.sample(pool, rng.randint(1, 5)))
        D = K.make_class(3, rng.sample(pool, rng.randint(1, 5)))
        assert S.mayer_vietoris_check(C, D)


def test_membership_conditions_agree_on_full_classes():
    rng = random.Random(6)
    pool = list(itertools.product((0, 1), repeat=3))
    seen = set()
    for _ in range(60):
        C = K.make_class(3, rng.sample(pool, rng.randint(2, 6)))
        if not K.is_full(C):
            continue
        f = K.PartialFunction(rng.choice(pool))
        conds = S.membership_conditions(C, f)
        assert set(conds.values()) == {f in C.members}, conds
        seen.add(f in C.members)
    assert seen == {True, False}


def test_membership_needs_a_full_class():
    with pytest.raises(PreconditionError):
        S.membership_conditions(K.linfun(2, 2), K.indicator(4, 3))


@pytest.mark.parametrize("d, k", [(2, 1), (3, 1), (3, 2)])
def test_weak_representation_matches_float_lp(d, k):
    X = G.cube_lift(d, k)
    C = G.linthr_class(X)
    for f in [K.parity(d), K.majority(d), K.indicator(1 << d, 0), K.constant(1 << d, 1)]:
        assert S.weak_representation_test(X, f, C) == lp_weakly_representable(f, d, k)


def test_maximal_principle_witness():
    C = G.linthr_class(G.cube_points(2))
    g = S.maximal_principle(C, PAR2)
    assert g is not None and S.is_local_maximum(C, PAR2, g)
    assert T.betti_at(K.box_target(C, PAR2), PAR2.meet(g)) == {0: 1}
    assert S.maximal_principle(C, K.PartialFunction.parse("0001")) is None


@pytest.mark.parametrize("d", [2, 3])
def test_top_betti_at_projection(d):
    X = G.cube_points(d)
    C = G.linthr_class(X)
    rep = S.top_betti_check(X, K.parity(d), C)
    assert rep.holds
    assert rep.degree == X.subspace.dim - 1 - rep.rank


def test_codim1_stability_for_parity():
    X = G.cube_points(3)
    rep = S.codim1_stability_check(X, PAR3)
    assert rep.holds and len(rep.checked) == 32


def test_parity_box_betti_numbers():
    assert S.parity_box_betti(G.linthr_class(G.cube_points(2)), PAR2) == {1: 1}
    assert S.parity_box_betti(G.linthr_class(G.cube_points(3)), PAR3) == {1: 3}
    assert S.parity_box_betti(G.polythr_class(3, 2), PAR3) == {3: 1}


def _symmetric(profile):
    d = len(profile) - 1
    return K.PartialFunction(tuple(profile[bin(u).count("1")] for u in range(1 << d)))


SYMMETRIC = [(d, p) for d in (1, 2, 3) for p in itertools.product((0, 1), repeat=d + 1)]


@pytest.mark.parametrize("d, profile", SYMMETRIC, ids=lambda v: str(v))
def test_thrdeg_matches_float_lp_search(d, profile):
    f = _symmetric(profile)
    expect = next(k for k in range(d + 1) if lp_sign_representable(f, d, k))
    assert S.thrdeg_symmetric(f) == expect


def test_thrdeg_parity_four():
    rep = S.thrdeg_symmetric_report(K.parity(4))
    assert rep.degree == 4 and rep.lower_method == "lp+projection"


def test_thrdeg_rejects_non_symmetric():
    with pytest.raises(PreconditionError):
        S.symmetric_profile(K.PartialFunction.parse("0100"))
    with pytest.raises(InputError):
        S.symmetric_profile(K.PartialFunction.parse("010"))
