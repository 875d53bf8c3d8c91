import random

import pytest

from orbisum import generate as gen
from orbisum.atoms import Atom, Circle, Graph
from orbisum.core2d import SphericalType
from orbisum.nu import HasVertexSums, nu, nu_replay
from orbisum.sumtree import build_orders, efficiency_violations, make_tree, reordered
from orbisum.verify import check_negative_control, vertex_sum_control
from orbisum.vertexsums import ExplicitGraph, replay_explicit

C = SphericalType.cyclic
THETA = ExplicitGraph(((0, 1, 2), (0, 1, 2), (0, 1, 3)), 2)


def test_control_counts_depend_on_order():
    t, topo = vertex_sum_control()
    counts = {o: replay_explicit(reordered(t, o), topo, 2) for o in build_orders(t)}
    assert counts == {(0, 1): 1, (1, 0): 0}
    with pytest.raises(HasVertexSums):
        nu(t, 2)
    assert check_negative_control().ok


def test_shape_checked():
    h = gen.H
    t = make_tree([("a", h)], [])
    with pytest.raises(ValueError):
        replay_explicit(t, {("a", 0): ExplicitGraph(((0, 1, 2), (0, 1, 2), (0, 1, 2)), 2)}, 2)
    with pytest.raises(ValueError):
        replay_explicit(t, {("a", 0): ExplicitGraph(((0, 0, 2), (0, 1, 3)), 2)}, 2)


def test_explicit_replay_matches_replay_without_vertex_sums():
    # with a fixed explicit shape per graph component, the explicit replay and
    # the component-merging replay agree whenever no vertex sum occurs
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        t = gen.random_realization(rng, rng.randint(1, 6), gen.NU_ALPHABET, allow_vertex=False)
        if efficiency_violations(t):
            continue
        topo = {
            (n, ci): THETA
            for n, a in t.nodes
            for ci, comp in enumerate(a.components)
            if isinstance(comp, Graph)
        }
        for p in (2, 3):
            assert replay_explicit(t, topo, p) == nu_replay(t, p)
        checked += 1


def test_circles_need_no_topology():
    k = Atom("K", (Circle(2),))
    t = make_tree([("a", k), ("b", k)], [("b", "a", C(2), 0, 0)])
    assert replay_explicit(t, {}, 2) == 1
    assert replay_explicit(t, {}, 3) == 0
