import itertools
import random

import pytest

from suboplex import algebra as A
from suboplex import classes as K
from suboplex import topology as T
from suboplex.errors import InputError, ShapeError

UNDEF = K.UNDEF


def random_total(rng, n, size, m=2):
    pool = list(itertools.product(range(m), repeat=n))
    return K.make_class(n, rng.sample(pool, min(size, len(pool))), m)


def RANDOM(count=40, seed=11):
    rng = random.Random(seed)
    return [random_total(rng, rng.choice([2, 3, 4]), rng.randint(1, 7)) for _ in range(count)]


def is_face(C, vals):
    return any(all(v == UNDEF or v == g[u] for u, v in enumerate(vals)) for g in C.tuples())


def oracle_extentures(C):
    out = set()
    for vals in itertools.product([UNDEF, *range(C.m)], repeat=C.n):
        if is_face(C, vals):
            continue
        if all(is_face(C, vals[:u] + (UNDEF,) + vals[u + 1:]) for u in range(C.n) if vals[u] != UNDEF):
            out.add(vals)
    return out


def oracle_minimal_nonfaces(C):
    """Minimal subsets of [n]x[m] not contained in the graph of any member."""
    ground = [(u, j) for u in range(C.n) for j in range(C.m)]
    graphs = [set(f.graph) for f in C.members]
    nonfaces = [frozenset(S) for k in range(len(ground) + 1) for S in itertools.combinations(ground, k)
                if not any(set(S) <= g for g in graphs)]
    return {S for S in nonfaces if not any(R < S for R in nonfaces)}


def oracle_vc(C):
    best = 0
    for k in range(C.n + 1):
        for U in itertools.combinations(range(C.n), k):
            if len({tuple(f[u] for u in U) for f in C.tuples()}) == 1 << k:
                best = k
    return best


@pytest.mark.parametrize("C", RANDOM(), ids=lambda C: ",".join(sorted(str(f) for f in C)))
def test_extentures_match_oracles(C):
    got = {p.values for p in A.extentures(C)}
    assert got == oracle_extentures(C)
    assert got == {p.values for p in A.brute_extentures(C)}


@pytest.mark.parametrize("C", RANDOM(20, seed=5), ids=lambda C: ",".join(sorted(str(f) for f in C)))
def test_sr_generators_are_minimal_nonfaces(C):
    assert set(A.sr_generators(C).monomials) == oracle_minimal_nonfaces(C)


def test_canonical_generators_are_graph_complements():
    C = K.delta(3)
    assert set(A.canonical_generators(C).monomials) == {frozenset(f.gamma) for f in C.members}


def test_canonical_generators_drop_non_maximal_partial_members():
    C = K.make_class(2, [(0, 1), (0, UNDEF)])
    assert set(A.canonical_generators(C).monomials) == {frozenset(K.PartialFunction((0, 1)).gamma)}


def test_delta_extentures():
    # two ones anywhere, or the all-zero function
    got = sorted(str(p) for p in A.extentures(K.delta(3)))
    assert got == sorted(["11.", "1.1", ".11", "000"])


def test_class_ideal_round_trip():
    for C in RANDOM(30, seed=2):
        ex = A.extentures(C)
        assert A.is_class_ideal(ex, C.n, C.m)
        assert A.class_of_ideal(ex, C.n, C.m).members == C.members


def test_class_ideal_brute_force():
    # F comes from a class iff it is the extenture set of the functions avoiding it
    rng = random.Random(9)
    pfs = [K.PartialFunction(v) for v in itertools.product((UNDEF, 0, 1), repeat=3) if any(x != UNDEF for x in v)]
    checked = 0
    while checked < 150:
        F = rng.sample(pfs, rng.randint(1, 4))
        if any(a != b and a.extends(b) for a in F for b in F):
            continue
        checked += 1
        D = A.class_of_ideal(F, 3)
        truth = bool(D.members) and {p.values for p in A.extentures(D)} == {p.values for p in F}
        assert A.is_class_ideal(F, 3) == truth, [str(p) for p in F]


def test_class_ideal_input_errors():
    with pytest.raises(InputError):
        A.is_class_ideal([K.PartialFunction.parse("1."), K.PartialFunction.parse("11")], 2)
    with pytest.raises(ShapeError):
        A.is_class_ideal([K.PartialFunction.parse("1.")], 3)


@pytest.mark.parametrize("C", RANDOM(30, seed=4), ids=lambda C: ",".join(sorted(str(f) for f in C)))
def test_vc_dimension_and_shatter_criteria(C):
    assert A.vc_dimension(C) == oracle_vc(C)
    table = T.betti_table(C)
    for k in range(C.n + 1):
        for U in itertools.combinations(range(C.n), k):
            A.shatters(C, U, table)  # raises if the four criteria disagree
    A.vc_radius(C)  # raises if the extenture bound disagrees
    assert T.homological_dimension(table) >= A.vc_dimension(C)


def test_shatter_complex_of_complete_is_full_simplex():
    S = A.shatter_complex(K.complete(3))
    assert S.facets == [frozenset({0, 1, 2})]


@pytest.mark.parametrize("C", [K.complete(3), K.nb(4, 1), K.nb(4, 2), K.singleton("0101")], ids=lambda C: C.tag)
def test_cohen_macaulay_classes(C):
    rep = A.is_cm_class(C)
    assert rep.cm and rep.witness is None
    for pf in rep.cublex:
        assert all(i == C.n - len(pf.dom) for i in T.betti_table(C).at(pf))


@pytest.mark.parametrize("C", [K.delta(3), K.wt(4, 2), K.explicit(["00", "11"])], ids=lambda C: C.tag)
def test_non_cohen_macaulay_classes_have_witness(C):
    rep = A.is_cm_class(C)
    assert not rep.cm
    i, pf = rep.witness
    assert T.betti_table(C).get(i, pf) and i != C.n - len(pf.dom)


def test_canonical_cm_tree_criterion_on_random_classes():
    for C in RANDOM(40, seed=8):
        A.is_cm_canonical(C)  # raises if the tree test and dim_h <= 1 disagree


def test_euler_and_aleph():
    rng = random.Random(12)
    for C in RANDOM(15, seed=13):
        A.euler_characteristic(C)
        f = K.PartialFunction(tuple(rng.randint(0, 1) for _ in range(C.n)))
        direct = min(sum(a != b for a, b in zip(f.values, g)) for g in C.tuples())
        assert A.aleph(f, C) == direct


def test_binary_only_invariants_reject_larger_codomains():
    with pytest.raises(ShapeError):
        A.vc_dimension(K.complete(2, 3))
