import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import koszul_betti, reduced_homology
from suboplex import classes as K
from suboplex import topology as T
from suboplex.errors import CrossCheckError, PreconditionError, SizeLimitError

RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]


def masks(facets):
    return [sum(1 << v for v in f) for f in facets]


@pytest.mark.parametrize(
    "facets, rational, gf2",
    [
        ([], {}, {}),
        ([()], {-1: 1}, {-1: 1}),
        ([(0,), (1,)], {0: 1}, {0: 1}),
        ([(0, 1), (1, 2), (0, 2)], {1: 1}, {1: 1}),
        ([(0, 1, 2)], {}, {}),
        (RP2, {}, {1: 1, 2: 1}),
    ],
)
def test_homology_of_known_complexes(facets, rational, gf2):
    assert T.homology_of_facets(masks(facets), "rational") == rational
    assert T.homology_of_facets(masks(facets), "gf2") == gf2
    assert reduced_homology(facets, "rational") == rational
    assert reduced_homology(facets, "gf2") == gf2


def test_both_fields_flags_torsion():
    with pytest.raises(CrossCheckError):
        T.homology_of_facets(masks(RP2), "both")


facet_lists = st.lists(st.frozensets(st.integers(0, 5), min_size=1, max_size=4), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(facet_lists, st.sampled_from(["rational", "gf2"]))
def test_homology_matches_oracle(facets, field):
    assert T.homology_of_facets(masks(facets), field) == reduced_homology(facets, field)


@settings(max_examples=40, deadline=None)
@given(facet_lists)
def test_simplicial_complex_class_agrees(facets):
    K_ = T.SimplicialComplex(facets)
    dense = T.reduced_homology(K_)
    assert set(dense) == set(range(-1, K_.dimension + 1))
    assert {k: r for k, r in dense.items() if r} == reduced_homology(facets)


def _random_class(rng, n, m, size):
    pool = list(itertools.product(range(m), repeat=n))
    return K.make_class(n, rng.sample(pool, min(size, len(pool))), m)


def _as_values(table):
    return {(i, pf.values): r for (i, pf), r in table.entries.items()}


NAMED = [K.delta(4), K.wt(4, 2), K.wt(4, 1, "0110"), K.nb(3, 1), K.monconj(2), K.conj(2), K.complete(2),
         K.linfun(2, 2), K.linfun(3, 1), K.explicit(["0000", "1111"])]


@pytest.mark.parametrize("C", NAMED, ids=lambda C: C.tag)
def test_betti_table_matches_koszul_oracle(C):
    assert _as_values(T.betti_table(C)) == koszul_betti(C.tuples(), C.m)


def test_betti_table_random_classes_match_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n, m = rng.choice([(2, 2), (3, 2), (4, 2), (2, 3)])
        C = _random_class(rng, n, m, rng.randint(1, 6))
        for field in ("rational", "gf2"):
            assert _as_values(T.betti_table(C, field)) == koszul_betti(C.tuples(), C.m, field), C


def test_partial_class_betti_matches_oracle():
    C = K.make_class(3, [(0, -1, 1), (1, 1, -1), (0, 0, 0)])
    assert _as_values(T.betti_table(C)) == koszul_betti(C.tuples(), 2)


def test_delta_table_closed_form():
    # one beta_1 per pair of deltas, one top number at the empty function
    B = T.betti_table(K.delta(4))
    assert B.at("....") == {3: 1}
    assert sum(r for (i, _), r in B.entries.items() if i == 1) == 6
    assert T.homological_dimension(B) == 3


def test_threads_do_not_change_the_table():
    C = K.wt(5, 2)
    a, b = T.betti_table(C, threads=1), T.betti_table(C, threads=4)
    assert a.same_entries(b) and a.rows() == b.rows()


def test_euler_from_faces_matches_table():
    for C in NAMED[:6]:
        B = T.betti_table(C)
        for pf in B.pfs():
            assert T.euler_from_faces(C, pf) == B.euler(pf)


def test_face_limit_context_and_env(monkeypatch):
    C = K.complete(4)
    with T.face_limit(3), pytest.raises(SizeLimitError):
        T.betti_table(C)
    monkeypatch.setenv("SUBOPLEX_LIMIT_FACES", "3")
    with pytest.raises(SizeLimitError):
        T.betti_table(C)
    monkeypatch.delenv("SUBOPLEX_LIMIT_FACES")
    assert T.current_face_limit() == T.DEFAULT_FACE_LIMIT


def test_restriction_sequence_identity_on_total_classes():
    rng = random.Random(3)
    for _ in range(15):
        C = _random_class(rng, 3, 2, rng.randint(2, 6))
        assert T.restriction_sequence_check(C)


def test_restriction_sequence_rejects_partial_classes():
    C = K.make_class(2, [(0, -1), (1, 1)])
    with pytest.raises(PreconditionError):
        T.restriction_sequence_check(C)


def test_sr_betti_is_hochster_on_the_suboplex():
    # complete class: the suboplex is a cross-polytope boundary, so the SR ideal
    # is generated by the n antipodal pairs (a complete intersection); the
    # ideal is indexed with generators in degree 0
    C = K.complete(2)
    assert T.sr_betti(C, [(0, 0), (0, 1)]) == {0: 1}
    assert T.sr_betti(C, [(0, 0), (0, 1), (1, 0), (1, 1)]) == {1: 1}
    assert T.sr_betti(C, [(0, 0), (1, 0)]) == {}


def test_order_complex_of_a_chain_is_a_cone():
    K_ = T.order_complex(["a", "b", "c"], {"a": [], "b": ["a"], "c": ["b"]})
    assert not any(T.reduced_homology(K_).values())


def test_deltas_plus_ones_betti_at_empty_function():
    # four point indicators and the all-ones function
    D = K.explicit(["0001", "0010", "0100", "1000", "1111"])
    empty = K.PartialFunction.empty(4)
    assert T.betti_at(D, empty) == {2: 3, 3: 1}
    oracle = koszul_betti([f.values for f in D.members])
    assert {i: r for (i, vals), r in oracle.items() if all(v == K.UNDEF for v in vals)} == {2: 3, 3: 1}
