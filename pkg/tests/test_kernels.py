from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from orbisum import _kernels_py, kernels

try:
    from orbisum import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


@st.composite
def flagged_forests(draw, max_edges=6):
    m = draw(st.integers(0, max_edges))
    n = m + draw(st.integers(1, 3))
    us, vs = [], []
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    while len(us) < m:
        a, b = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if find(a) != find(b):
            parent[find(a)] = find(b)
            us.append(a)
            vs.append(b)
    flags = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return n, us, vs, flags


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_python_kernel_by_hand():
    # path 0-1-2 with node 1 flagged: the second edge joins iff it comes second
    assert _kernels_py.flagged_joins(3, [0, 1], [1, 2], [0, 1, 0], [[0, 1], [1, 0]]) == [0, 0]
    # star around unflagged 0 with flagged leaves 1, 2
    assert _kernels_py.flagged_joins(3, [0, 0], [1, 2], [0, 1, 1], [[0, 1], [1, 0]]) == [1, 1]
    assert _kernels_py.flagged_join_range(3, [0, 0], [1, 2], [0, 1, 1]) == (1, 1, 2)


@needs_ext
@settings(max_examples=200, deadline=None)
@given(flagged_forests())
def test_backends_agree(forest):
    n, us, vs, flags = forest
    orders = [list(p) for p in permutations(range(len(us)))][:50]
    if orders and orders[0]:
        assert compiled.flagged_joins(n, us, vs, flags, orders) == \
            _kernels_py.flagged_joins(n, us, vs, flags, orders)
    assert compiled.flagged_join_range(n, us, vs, flags) == \
        _kernels_py.flagged_join_range(n, us, vs, flags)


@needs_ext
def test_compiled_edge_cases():
    assert compiled.flagged_join_range(1, [], [], [1]) == _kernels_py.flagged_join_range(1, [], [], [1])
    assert compiled.flagged_joins(2, [0], [1], [1, 1], [[0], [0]]) == [1, 1]
