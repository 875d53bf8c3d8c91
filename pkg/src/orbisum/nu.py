"""Order-invariant count of p-cyclic sums touching a vertex-free component.

For a realization without vertex sums, :func:`build_cyclicity_graph` builds
the graph with one C node per order-p singular circle of each summand, one N
node per summand carrying vertices, and one edge per p-cyclic sum. Scoring an
edge ordering with :func:`alpha_sum` (1 unless both ends already reach N
through earlier edges) gives :func:`nu`, which :func:`nu_replay` recomputes
independently by replaying the sums on the actual singular components.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from . import kernels
from .atoms import Circle
from .core2d import check_order
from .sumtree import InvalidTree, RealizationTree, efficiency_violations, validate

Node = Hashable
Edge = tuple[Node, Node]


class HasVertexSums(ValueError):
    pass


class Inefficient(ValueError):
    pass


class NotATree(ValueError):
    pass


class NotBlowable(ValueError):
    pass


@dataclass(frozen=True)
class CyclicityGraph:
    c_nodes: tuple[Node, ...]
    n_nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]

    @property
    def nodes(self) -> tuple[Node, ...]:
        return self.c_nodes + self.n_nodes

    def valence(self, node: Node) -> int:
        return sum((a == node) + (b == node) for a, b in self.edges)


def _indexed(nodes: Sequence[Node], edges: Sequence[Edge], flagged: Iterable[Node]):
    index = {n: i for i, n in enumerate(nodes)}
    us = [index[a] for a, _ in edges]
    vs = [index[b] for _, b in edges]
    flagged = set(flagged)
    flags = [1 if n in flagged else 0 for n in nodes]
    return len(nodes), us, vs, flags


def _identity(m: int) -> tuple[int, ...]:
    return tuple(range(m))


def _check_ordering(order: Sequence[int], m: int) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(m)):
        raise ValueError(f"{order} is not an ordering of {m} edges")
    return order


# --------------------------------------------------------------------------
# cyclicity graph


def build_cyclicity_graph(t: RealizationTree, p: int) -> tuple[CyclicityGraph, tuple[int, ...]]:
    """The p-cyclicity graph of ``t`` and the ordering its build order induces."""
    p = check_order(p)
    vs = validate(t)
    if vs:
        raise InvalidTree(vs)
    if any(e.sum_type.is_vertex for e in t.edges):
        raise HasVertexSums("realization uses vertex connected sums")
    if efficiency_violations(t):
        raise Inefficient("realization is not efficient")
    c_nodes, n_nodes = [], []
    for node, atom in t.nodes:
        for ci, comp in enumerate(atom.components):
            if isinstance(comp, Circle) and comp.order == p:
                c_nodes.append(("c", node, ci))
        if atom.has_vertices:
            n_nodes.append(("n", node))

    def end(att):
        comp = t.atom(att.node).components[att.component]
        if isinstance(comp, Circle):
            return ("c", att.node, att.component)
        return ("n", att.node)

    edges = tuple(
        (end(e.at_new), end(e.at_old))
        for e in t.edges
        if e.sum_type.is_cyclic and e.sum_type.order == p
    )
    g = CyclicityGraph(tuple(c_nodes), tuple(n_nodes), edges)
    return g, _identity(len(edges))


build_Tp = build_cyclicity_graph


def alpha_sum(g: CyclicityGraph, order: Sequence[int] | None = None) -> int:
    """Number of edges, in ``order``, whose ends do not both reach N through earlier edges."""
    m = len(g.edges)
    order = _identity(m) if order is None else _check_ordering(order, m)
    n, us, vs, flags = _indexed(g.nodes, g.edges, g.n_nodes)
    return m - kernels.flagged_joins(n, us, vs, flags, [order])[0]


def alpha_sums(g: CyclicityGraph, orders: Sequence[Sequence[int]]) -> list[int]:
    m = len(g.edges)
    n, us, vs, flags = _indexed(g.nodes, g.edges, g.n_nodes)
    return [m - j for j in kernels.flagged_joins(n, us, vs, flags, orders)]


def alpha_range(g: CyclicityGraph) -> tuple[int, int, int]:
    """``(min, max, count)`` of :func:`alpha_sum` over every ordering of the edges."""
    m = len(g.edges)
    n, us, vs, flags = _indexed(g.nodes, g.edges, g.n_nodes)
    lo, hi, count = kernels.flagged_join_range(n, us, vs, flags)
    return m - hi, m - lo, count


def _reaches(nodes, edges, start, targets) -> bool:
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x in targets:
            return True
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def alpha_sum_reference(g: CyclicityGraph, order: Sequence[int] | None = None) -> int:
    """Definition-level :func:`alpha_sum`: breadth-first search on each prefix."""
    m = len(g.edges)
    order = _identity(m) if order is None else _check_ordering(order, m)
    targets = set(g.n_nodes)
    total = 0
    for k, idx in enumerate(order):
        prefix = [g.edges[j] for j in order[:k]]
        a, b = g.edges[idx]
        if not (_reaches(g.nodes, prefix, a, targets) and _reaches(g.nodes, prefix, b, targets)):
            total += 1
    return total


def blow_up(g: CyclicityGraph, n: Node) -> CyclicityGraph:
    """Split the N node ``n`` into one N node per incident edge.

    Edge positions are unchanged, so an ordering of ``g`` is also an ordering
    of the result.
    """
    if n not in g.n_nodes:
        raise NotBlowable(f"{n!r} is not an N node")
    v = g.valence(n)
    if v < 2:
        raise NotBlowable(f"{n!r} has valence {v}")
    fresh = []
    edges = []
    for a, b in g.edges:
        if a == n:
            a = (n, len(fresh))
            fresh.append(a)
        if b == n:
            b = (n, len(fresh))
            fresh.append(b)
        edges.append((a, b))
    n_nodes = tuple(x for x in g.n_nodes if x != n) + tuple(fresh)
    return CyclicityGraph(g.c_nodes, n_nodes, tuple(edges))


# --------------------------------------------------------------------------
# nu


def nu(t: RealizationTree, p: int) -> int:
    g, order = build_cyclicity_graph(t, p)
    return alpha_sum(g, order)


def nu_replay(t: RealizationTree, p: int) -> int:
    """:func:`nu` by replaying the sums in build order on the singular components.

    A cyclic sum merges the two punctured components; the merged component
    carries vertices iff either did. A p-cyclic sum counts when at least one
    of the two components is vertex-free at that moment.
    """
    p = check_order(p)
    vs = validate(t)
    if vs:
        raise InvalidTree(vs)
    if any(e.sum_type.is_vertex for e in t.edges):
        raise HasVertexSums("realization uses vertex connected sums")
    if efficiency_violations(t):
        raise Inefficient("realization is not efficient")
    parent: dict = {}
    has_vertex: dict = {}
    for node, atom in t.nodes:
        for ci, comp in enumerate(atom.components):
            parent[(node, ci)] = (node, ci)
            has_vertex[(node, ci)] = comp.has_vertices

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    count = 0
    for e in t.edges:
        if not e.sum_type.is_cyclic:
            continue
        a = find((e.at_new.node, e.at_new.component))
        b = find((e.at_old.node, e.at_old.component))
        if e.sum_type.order == p and not (has_vertex[a] and has_vertex[b]):
            count += 1
        parent[b] = a
        has_vertex[a] = has_vertex[a] or has_vertex[b]
    return count


# --------------------------------------------------------------------------
# the tree lemma


def _tree_nodes(edges: Sequence[Edge]) -> list[Node]:
    if not edges:
        raise NotATree("a tree for the lemma needs at least one edge")
    nodes = []
    seen = set()
    for a, b in edges:
        if a == b:
            raise NotATree(f"loop at {a!r}")
        for x in (a, b):
            if x not in seen:
                seen.add(x)
                nodes.append(x)
    if len(nodes) != len(edges) + 1 or not _connected(nodes, edges):
        raise NotATree("edges do not form a tree")
    return nodes


def _connected(nodes, edges) -> bool:
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def leaves(edges: Sequence[Edge]) -> frozenset:
    deg = defaultdict(int)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return frozenset(x for x, d in deg.items() if d == 1)


def beta_sum(edges: Sequence[Edge], order: Sequence[int] | None = None,
             external: Iterable[Node] | None = None) -> int:
    """Edges whose ends both reach the external nodes through earlier edges.

    ``external`` defaults to the leaves of the tree.
    """
    nodes = _tree_nodes(edges)
    ext = leaves(edges) if external is None else frozenset(external)
    m = len(edges)
    order = _identity(m) if order is None else _check_ordering(order, m)
    n, us, vs, flags = _indexed(nodes, edges, ext)
    return kernels.flagged_joins(n, us, vs, flags, [order])[0]


def beta_range(edges: Sequence[Edge], external: Iterable[Node] | None = None):
    """``(min, max, count)`` of :func:`beta_sum` over every ordering."""
    nodes = _tree_nodes(edges)
    ext = leaves(edges) if external is None else frozenset(external)
    n, us, vs, flags = _indexed(nodes, edges, ext)
    return kernels.flagged_join_range(n, us, vs, flags)


@dataclass(frozen=True)
class EulerCheck:
    chi_start: int
    chi_end: int
    beta_total: int
    drops: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.beta_total == self.chi_start - self.chi_end


def euler_check(edges: Sequence[Edge], order: Sequence[int] | None = None,
                external: Iterable[Node] | None = None) -> EulerCheck:
    """Glue a circle to the external nodes and track the Euler characteristic
    of the piece containing the circle as the edges arrive in ``order``.

    The circle is a cycle through the external nodes (one arc per node), so its
    characteristic is 0. ``drops[k]`` is the decrease caused by edge ``k``.
    """
    nodes = _tree_nodes(edges)
    ext = sorted(leaves(edges) if external is None else frozenset(external), key=nodes.index)
    m = len(edges)
    order = _identity(m) if order is None else _check_ordering(order, m)
    arcs = [(ext[i], ext[(i + 1) % len(ext)]) for i in range(len(ext))]

    def chi_of_circle_piece(present):
        all_edges = arcs + present
        if not ext:
            return 0
        adj = defaultdict(list)
        for a, b in all_edges:
            adj[a].append(b)
            adj[b].append(a)
        piece = {ext[0]}
        stack = [ext[0]]
        while stack:
            for y in adj[stack.pop()]:
                if y not in piece:
                    piece.add(y)
                    stack.append(y)
        n_edges = sum(1 for a, b in all_edges if a in piece)
        return len(piece) - n_edges

    chis = [chi_of_circle_piece([])]
    for k in range(1, m + 1):
        chis.append(chi_of_circle_piece([edges[j] for j in order[:k]]))
    drops = tuple(chis[k - 1] - chis[k] for k in range(1, m + 1))
    return EulerCheck(chis[0], chis[-1], sum(drops), drops)
