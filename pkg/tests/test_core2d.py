from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from orbisum.core2d import (
    MaximalityViolation,
    SphericalType,
    TwoOrbifold,
    cap_punctured_discal,
    classify_two_orbifold,
    complexity_class,
    is_admissible_vertex_triple,
    more_complicated,
    orbifold_euler_characteristic,
    punctured_spherical_is_discal,
)

O = SphericalType.ordinary()
C = SphericalType.cyclic
V = SphericalType.vertex


@pytest.mark.parametrize("triple, ok", [
    ((2, 2, 9), True),
    ((2, 3, 5), True),
    ((3, 3, 3), False),
    ((2, 3, 6), False),
    ((9, 2, 2), True),
    ((5, 2, 3), True),
    ((2, 4, 4), False),
])
def test_admissible_triples(triple, ok):
    assert is_admissible_vertex_triple(*triple) is ok


def test_vertex_type_sorted_and_checked():
    assert V(5, 2, 3) == V(2, 3, 5)
    assert V(3, 2, 2).orders == (2, 2, 3)
    with pytest.raises(ValueError):
        V(2, 3, 7)
    with pytest.raises(ValueError):
        C(1)


def test_type_strings():
    assert str(O) == "ordinary"
    assert str(C(5)) == "cyclic(5)"
    assert str(V(2, 2, 3)) == "vertex(2,2,3)"


@pytest.mark.parametrize("genus, orders, expected", [
    (0, [], "spherical ordinary"),
    (0, [7], "bad"),
    (0, [2, 3], "bad"),
    (0, [5, 5], "spherical cyclic(5)"),
    (0, [2, 3, 7], "hyperbolic"),
    (1, [], "euclidean"),
    (0, [2, 2, 2, 2], "euclidean"),
    (0, [2, 3, 4], "spherical vertex(2,3,4)"),
    (0, [3, 3, 3], "euclidean"),
    (2, [], "hyperbolic"),
])
def test_classification_examples(genus, orders, expected):
    assert str(classify_two_orbifold(TwoOrbifold(genus, orders))) == expected


def test_euler_characteristic_is_exact():
    assert orbifold_euler_characteristic(TwoOrbifold(0, (2, 3, 7))) == Fraction(-1, 42)
    assert orbifold_euler_characteristic(TwoOrbifold(0, (2, 2, 2, 2))) == 0


def test_bad_exactly_on_one_or_two_unequal_points():
    for n in range(0, 4):
        for orders in combinations_with_replacement(range(2, 21), n):
            bad = classify_two_orbifold((0, orders)).kind == "bad"
            assert bad == (n == 1 or (n == 2 and orders[0] != orders[1])), orders
    for genus in (1, 2):
        for orders in combinations_with_replacement(range(2, 21), 2):
            assert classify_two_orbifold((genus, orders)).kind != "bad"


def test_positive_characteristic_iff_spherical_or_bad():
    for n in range(0, 6):
        for orders in combinations_with_replacement(range(2, 10), n):
            c = classify_two_orbifold((0, orders))
            chi = orbifold_euler_characteristic(TwoOrbifold(0, orders))
            assert (chi > 0) == (c.kind in ("spherical", "bad")), orders


def test_complexity_preorder():
    assert complexity_class(O) < complexity_class(C(7))
    assert complexity_class(C(2)) == complexity_class(C(9))
    assert complexity_class(V(2, 2, 3)) > complexity_class(C(5))
    assert more_complicated(V(2, 2, 3), C(5))
    assert not more_complicated(C(2), C(9))


def test_cap_punctured_discal():
    assert cap_punctured_discal([C(3), O, O], 0) == C(3)
    assert cap_punctured_discal([O], 0) == O
    with pytest.raises(MaximalityViolation):
        cap_punctured_discal([V(2, 2, 3), C(2)], 1)


types = st.one_of(
    st.just(O),
    st.integers(2, 9).map(C),
    st.integers(2, 9).map(lambda p: V(2, 2, p)),
    st.sampled_from([V(2, 3, 3), V(2, 3, 4), V(2, 3, 5)]),
)


@given(st.lists(types, min_size=1, max_size=6), st.data())
def test_cap_succeeds_iff_keep_is_maximal(boundary, data):
    keep = data.draw(st.integers(0, len(boundary) - 1))
    top = max(map(complexity_class, boundary))
    if complexity_class(boundary[keep]) == top:
        assert cap_punctured_discal(boundary, keep) == boundary[keep]
        other = [boundary[keep] if i == keep else O for i in range(len(boundary))]
        assert cap_punctured_discal(other, keep) == boundary[keep]
    else:
        with pytest.raises(MaximalityViolation):
            cap_punctured_discal(boundary, keep)


@given(types, types)
def test_discal_criterion_is_equality(a, b):
    assert punctured_spherical_is_discal(a, b) == (a == b)
    assert punctured_spherical_is_discal(a, a)
    assert punctured_spherical_is_discal(a, b) == punctured_spherical_is_discal(b, a)


def test_discal_examples():
    assert punctured_spherical_is_discal(C(5), C(5))
    assert not punctured_spherical_is_discal(V(2, 2, 5), C(5))
    assert punctured_spherical_is_discal(O, O)
