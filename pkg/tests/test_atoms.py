import pytest
from hypothesis import given, strategies as st

from orbisum.atoms import (
    Atom,
    AtomError,
    Circle,
    Graph,
    builtin_identity,
    identity_name,
    puncture_capabilities,
)
from orbisum.core2d import SphericalType

O = SphericalType.ordinary()
C = SphericalType.cyclic
V = SphericalType.vertex


def test_identity_shapes():
    assert builtin_identity(O).components == ()
    assert builtin_identity(C(5)).components == (Circle(5),)
    (g,) = builtin_identity(V(2, 3, 4)).components
    assert g.edge_orders == (2, 3, 4)
    assert g.vertex_triples == ((2, 3, 4), (2, 3, 4))


def test_identity_names():
    assert identity_name(O) == "S3o"
    assert identity_name(C(5)) == "S3c(5)"
    assert identity_name(V(4, 2, 2)) == "S3v(2,2,4)"
    assert builtin_identity(C(7)).is_identity


def test_reserved_names_rejected():
    with pytest.raises(AtomError):
        Atom("S3c(3)", (Circle(3),))
    with pytest.raises(AtomError):
        Atom("X", (Circle(3), Circle(3)), identity_of=C(3))


def test_graph_constraints():
    with pytest.raises(AtomError):
        Graph((2, 2), ((2, 2, 3),))
    with pytest.raises(AtomError):
        Graph((2, 3, 7), ((2, 3, 7),))
    with pytest.raises(AtomError):
        Graph((2, 2, 3), ())
    with pytest.raises(ValueError):
        Circle(1)


def test_puncture_capabilities_examples():
    assert puncture_capabilities(builtin_identity(O)) == {O}
    assert puncture_capabilities(Atom("K", (Circle(5),))) == {O, C(5)}
    g = Graph((2, 3, 5), ((2, 3, 5), (2, 3, 5)))
    assert puncture_capabilities(Atom("T", (g,))) == {O, C(2), C(3), C(5), V(2, 3, 5)}


def test_mixed_triples_on_one_component():
    g = Graph((2, 2, 3, 4), ((2, 2, 3), (2, 2, 4)))
    assert V(2, 2, 3) in puncture_capabilities(Atom("Z", (g,)))
    assert V(2, 2, 4) in puncture_capabilities(Atom("Z", (g,)))


types = st.one_of(
    st.just(O),
    st.integers(2, 9).map(C),
    st.integers(2, 9).map(lambda p: V(2, 2, p)),
    st.sampled_from([V(2, 3, 3), V(2, 3, 4), V(2, 3, 5)]),
)

components = st.one_of(
    st.integers(2, 9).map(Circle),
    st.integers(2, 9).map(lambda p: Graph((2, 2, p), ((2, 2, p), (2, 2, p)))),
)


@given(types)
def test_identity_can_be_punctured_by_its_type(t):
    assert t in puncture_capabilities(builtin_identity(t))


@given(st.lists(components, max_size=4), components)
def test_capabilities_monotone(comps, extra):
    small = puncture_capabilities(Atom("A", tuple(comps)))
    big = puncture_capabilities(Atom("A", tuple(comps) + (extra,)))
    assert small <= big
