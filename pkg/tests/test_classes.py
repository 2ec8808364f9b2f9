import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from suboplex import classes as K
from suboplex.errors import EmptyClassError, InputError, ShapeError, SizeLimitError

pf_values = st.integers(1, 6).flatmap(lambda n: st.tuples(*[st.integers(-1, 2)] * n))


@given(pf_values)
def test_dot_string_round_trip(vals):
    f = K.PartialFunction(vals, 3)
    assert K.PartialFunction.parse(str(f), 3) == f


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.tuples(*[st.integers(-1, 1)] * n),
                                                      st.tuples(*[st.integers(-1, 1)] * n))))
def test_meet_is_greatest_common_restriction(pair):
    f, g = (K.PartialFunction(v) for v in pair)
    h = f.meet(g)
    assert h == g.meet(f)
    assert f.extends(h) and g.extends(h)
    # anything both extend is below the meet
    for u in range(f.n):
        if h.values[u] == K.UNDEF:
            assert f.values[u] != g.values[u] or f.values[u] == K.UNDEF


def test_gamma_is_graph_complement():
    f = K.PartialFunction.parse("0.1")
    assert f.graph == {(0, 0), (2, 1)}
    assert f.gamma == {(0, 1), (1, 0), (1, 1), (2, 0)}


def test_parse_rejects_bad_characters():
    with pytest.raises(InputError):
        K.PartialFunction.parse("01x")
    with pytest.raises(InputError):
        K.PartialFunction.parse("012", m=2)


def test_meet_shape_mismatch():
    with pytest.raises(ShapeError):
        K.PartialFunction.parse("01").meet(K.PartialFunction.parse("011"))


@pytest.mark.parametrize(
    "C, size",
    [
        (K.complete(3), 8),
        (K.complete(2, 3), 9),
        (K.delta(5), 5),
        (K.wt(5, 2), comb(5, 2)),
        (K.nb(4, 1), 5),
        (K.monconj(3), 8),
        (K.conj(2), 3**2 + 1),
        (K.linfun(3, 1), 3),
        (K.linfun(2, 3), 8),
    ],
)
def test_constructor_sizes(C, size):
    assert len(C) == size


def test_wt_with_one_is_delta():
    assert K.wt(3, 1).members == K.delta(3).members


def test_wt_offset_counts_disagreements():
    o = K.PartialFunction.parse("0110")
    for g in K.wt(4, 2, o):
        assert sum(a != b for a, b in zip(g.values, o.values)) == 2


def test_linfun_kills_zero():
    for f in K.linfun(3, 2):
        assert f.values[0] == 0


def test_named_functions():
    assert str(K.named_function("parity", 4)) == "0110"
    assert str(K.named_function("majority", 8)) == "00010111"
    assert str(K.named_function("ind1", 4)) == "0001"
    assert str(K.named_function("zeros", 3)) == "000"
    assert str(K.named_function("1.0", 3)) == "1.0"
    with pytest.raises(ShapeError):
        K.named_function("10", 3)


@pytest.mark.parametrize(
    "spec, err",
    [
        ({"kind": "nope"}, InputError),
        ({"n": 3}, InputError),
        ({"kind": "delta"}, InputError),
        ({"kind": "delta", "n": "3"}, InputError),
        ({"kind": "delta", "n": 99}, InputError),
        ({"kind": "explicit", "functions": []}, EmptyClassError),
        ({"kind": "explicit", "functions": ["01", "011"]}, ShapeError),
        ({"kind": "explicit", "functions": ["01", "0."]}, InputError),
    ],
)
def test_build_class_errors(spec, err):
    with pytest.raises(err):
        K.build_class(spec)


def test_build_class_matches_constructors():
    assert K.build_class({"kind": "wt", "n": 4, "k": 2}).members == K.wt(4, 2).members
    assert K.build_class({"kind": "explicit", "functions": ["00", "11"]}).members == {
        K.PartialFunction.parse("00"), K.PartialFunction.parse("11")}


def test_filter_and_restrict():
    C = K.complete(3)
    F = K.filter_class(C, K.PartialFunction.parse("1.."))
    assert (F.n, len(F), F.origin) == (2, 4, (1, 2))
    R = K.restrict_class(K.delta(4), [0, 1])
    assert {str(f) for f in R} == {"00", "01", "10"}


def test_cartesian_operations():
    C, D = K.delta(3), K.singleton("111")
    X = K.cartesian_intersection(C, D)
    assert {str(f) for f in X} == {"..1", ".1.", "1.."}
    U = K.cartesian_union(K.complete(1), K.complete(1))
    assert (U.n, U.m, len(U)) == (2, 4, 4)
    assert {str(f) for f in U} == {"02", "03", "12", "13"}


def test_union_shape_mismatch():
    with pytest.raises(ShapeError):
        K.union_class(K.delta(3), K.delta(4))


def test_neighbors_of_delta_are_all_pairs():
    C = K.delta(4)
    assert K.neighbors(C) == {frozenset(p) for p in itertools.combinations(C.members, 2)}


def test_neighbors_skip_pairs_with_a_middle_member():
    C = K.explicit(["000", "001", "011"])
    assert frozenset(K.PartialFunction.parse(s) for s in ("000", "011")) not in K.neighbors(C)
    assert len(K.neighbors(C)) == 2


def test_is_full():
    assert K.is_full(K.complete(2))
    assert not K.is_full(K.singleton("01"))
    assert K.is_full(K.delta(3))
    assert not K.is_full(K.explicit(["001", "010"]))


def test_all_partial_functions_count():
    assert sum(1 for _ in K.all_partial_functions(3, 2)) == 3**3


def test_size_guard():
    with pytest.raises(SizeLimitError):
        K.complete(30)
