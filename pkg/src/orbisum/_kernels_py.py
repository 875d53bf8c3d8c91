"""Pure-Python versions of the ordering kernels (fallback for ``_kernels``).

Both kernels score an edge ordering of a forest whose nodes carry a boolean
flag: edge ``k`` is a *flagged join* when both of its ends are already
connected to some flagged node by edges ``0..k-1``. The count of flagged joins
is the quantity every order-independence check in :mod:`orbisum.nu` needs.
"""
from itertools import permutations


def _score(n_nodes, us, vs, flags, order):
    parent = list(range(n_nodes))
    flag = [bool(f) for f in flags]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    joins = 0
    for k in order:
        a, b = find(us[k]), find(vs[k])
        if flag[a] and flag[b]:
            joins += 1
        if a != b:
            parent[b] = a
            flag[a] = flag[a] or flag[b]
    return joins


def flagged_joins(n_nodes, us, vs, flags, orders):
    """Flagged-join count for each ordering in ``orders`` (a list of rows)."""
    us, vs = list(us), list(vs)
    return [_score(n_nodes, us, vs, flags, list(row)) for row in orders]


def flagged_join_range(n_nodes, us, vs, flags):
    """``(min, max, n_orderings)`` of the flagged-join count over all orderings."""
    us, vs = list(us), list(vs)
    lo = hi = None
    count = 0
    for order in permutations(range(len(us))):
        s = _score(n_nodes, us, vs, flags, order)
        lo = s if lo is None else min(lo, s)
        hi = s if hi is None else max(hi, s)
        count += 1
    return lo, hi, count
