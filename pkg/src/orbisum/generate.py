"""Generators of small instances for the exhaustive and random checks."""
from __future__ import annotations

import random
from typing import Iterator, Sequence

from .atoms import Atom, Circle, Graph, builtin_identity
from .core2d import SphericalType
from .sumtree import Attachment, RealizationTree, SumEdge, renormalize

# --------------------------------------------------------------------------
# unlabeled trees and forests


def _ahu(adj, root, parent=None, label=None) -> str:
    kids = sorted(_ahu(adj, c, root, label) for c in adj[root] if c != parent)
    tag = "" if label is None else label(root)
    return f"({tag}{''.join(kids)})"


def _centers(adj) -> list:
    n = len(adj)
    if n <= 2:
        return list(adj)
    deg = {v: len(adj[v]) for v in adj}
    layer = [v for v in adj if deg[v] == 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def tree_signature(edges, nodes=None, label=None) -> str:
    """Isomorphism-invariant string of a free tree (optionally node-labelled)."""
    nodes = list(nodes) if nodes is not None else sorted({x for e in edges for x in e})
    adj = {v: [] for v in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return min(_ahu(adj, c, label=label) for c in _centers(adj))


def free_trees(n_nodes: int) -> list[tuple[tuple[int, int], ...]]:
    """One edge list per isomorphism class of trees on nodes ``0..n_nodes-1``."""
    if n_nodes < 1:
        return []
    level = {"()": ()}
    for n in range(1, n_nodes):
        nxt = {}
        for edges in level.values():
            for v in range(n):
                grown = edges + ((v, n),)
                sig = tree_signature(grown, range(n + 1))
                nxt.setdefault(sig, grown)
        level = nxt
    return list(level.values())


def cn_trees(n_edges: int) -> list[tuple[tuple, tuple, tuple]]:
    """C/N-labelled trees with ``n_edges`` edges, one per isomorphism class."""
    out = {}
    for edges in free_trees(n_edges + 1):
        for mask in range(1 << (n_edges + 1)):
            nn = tuple(v for v in range(n_edges + 1) if mask >> v & 1)
            c = tuple(v for v in range(n_edges + 1) if not mask >> v & 1)
            sig = tree_signature(edges, range(n_edges + 1),
                                 label=lambda v: "N" if mask >> v & 1 else "C")
            out.setdefault(sig, (c, nn, edges))
    return list(out.values())


def cn_forests(max_edges: int) -> Iterator[tuple[tuple, tuple, tuple]]:
    """C/N-labelled forests with 1..max_edges edges, as ``(c_nodes, n_nodes, edges)``.

    Components are trees with at least one edge; each forest is produced once
    up to isomorphism.
    """
    labelled = [(k, tr) for k in range(1, max_edges + 1) for tr in cn_trees(k)]

    def rec(start, budget, chosen):
        if chosen:
            yield chosen
        for i in range(start, len(labelled)):
            if labelled[i][0] <= budget:
                yield from rec(i, budget - labelled[i][0], chosen + [i])

    for combo in rec(0, max_edges, []):
        c_nodes, n_nodes, edges = [], [], []
        for ti, i in enumerate(combo):
            c, nn, es = labelled[i][1]
            c_nodes += [(ti, v) for v in c]
            n_nodes += [(ti, v) for v in nn]
            edges += [((ti, a), (ti, b)) for a, b in es]
        yield tuple(c_nodes), tuple(n_nodes), tuple(edges)


# --------------------------------------------------------------------------
# realization trees

P = 2
VTRIPLE = (2, 2, 2)

M = Atom("M")
K = Atom("K", (Circle(P),))
G = Atom("G", (Graph((2, 2, 2), (VTRIPLE, VTRIPLE)),))
W = Atom("W", (Circle(P), Graph((2, 2, 2), (VTRIPLE, VTRIPLE))))
ALPHABET = (M, K, G, W)
IDENTITIES = (
    builtin_identity(SphericalType.ordinary()),
    builtin_identity(SphericalType.cyclic(P)),
    builtin_identity(SphericalType.vertex(*VTRIPLE)),
)


def _sum_options(a: Atom, b: Atom, used_a: set, used_b: set):
    """Ways to sum a new node carrying ``a`` onto a built node carrying ``b``.

    Yields ``(sum_type, at_new, at_old)`` with attachments as ``(comp, vertex)``.
    Vertices of the same triple on one component are interchangeable, so only
    the lowest unused one is offered.
    """
    yield SphericalType.ordinary(), None, None
    for order in sorted({o for c in a.components for o in c.orders}
                        & {o for c in b.components for o in c.orders}):
        for ca, compa in enumerate(a.components):
            if order not in compa.orders:
                continue
            for cb, compb in enumerate(b.components):
                if order in compb.orders:
                    yield SphericalType.cyclic(order), (ca, None), (cb, None)
    for ca, compa in enumerate(a.components):
        for cb, compb in enumerate(b.components):
            for triple in sorted(set(compa.vertex_triples) & set(compb.vertex_triples)):
                va = _free_vertex(compa, ca, triple, used_a)
                vb = _free_vertex(compb, cb, triple, used_b)
                if va is not None and vb is not None:
                    yield SphericalType.vertex(*triple), (ca, va), (cb, vb)


def _free_vertex(comp, ci, triple, used):
    for vi, t in enumerate(comp.vertex_triples):
        if t == triple and (ci, vi) not in used:
            return vi
    return None


def _edge(new, old, st, at_new, at_old) -> SumEdge:
    def att(node, spec):
        if spec is None:
            return None
        return Attachment(node, spec[0], spec[1])

    return SumEdge(st, new, old, att(new, at_new), att(old, at_old))


def realization_signature(t: RealizationTree) -> str:
    """Isomorphism class of the labelled tree, ignoring build order and root.

    Each edge is subdivided by a pseudo-node naming the sum type and the
    attachment (component, vertex triple) seen from each end.
    """
    nodes = list(t.node_ids)
    labels = {n: t.atom(n).name for n in nodes}
    edges = []
    for i, e in enumerate(t.edges):
        mid = f"#e{i}"
        nodes.append(mid)
        labels[mid] = str(e.sum_type)
        for end in e.endpoints:
            at = e.attachment_at(end)
            tag = "" if at is None else f"c{at.component}"
            if at is not None and at.vertex is not None:
                comp = t.atom(end).components[at.component]
                tag += "v" + ",".join(map(str, comp.vertex_triples[at.vertex]))
            port = f"#p{i}{end}"
            nodes.append(port)
            labels[port] = tag
            edges += [(end, port), (port, mid)]
    return tree_signature(edges, nodes, label=lambda v: labels[v] + ";")


def realization_trees(
    max_edges: int,
    alphabet: Sequence[Atom] = ALPHABET + IDENTITIES,
    allow_vertex: bool = True,
) -> Iterator[RealizationTree]:
    """Every valid realization tree with at most ``max_edges`` sums over
    ``alphabet``, one per isomorphism class of labelled tree."""
    level = {}
    for a in alphabet:
        t = RealizationTree((("n0", a),), (), "n0")
        level[realization_signature(t)] = t
    yield from level.values()
    for k in range(1, max_edges + 1):
        nxt = {}
        for t in level.values():
            used = _used_vertices(t)
            new = f"n{k}"
            for old, b in t.nodes:
                for a in alphabet:
                    for st, at_new, at_old in _sum_options(a, b, set(), used.get(old, set())):
                        if st.is_vertex and not allow_vertex:
                            continue
                        e = _edge(new, old, st, at_new, at_old)
                        grown = RealizationTree(t.nodes + ((new, a),), t.edges + (e,), t.root)
                        sig = realization_signature(grown)
                        if sig not in nxt:
                            nxt[sig] = grown
                            yield grown
        level = nxt


def _used_vertices(t: RealizationTree) -> dict[str, set]:
    used: dict[str, set] = {}
    for e in t.edges:
        if e.sum_type.is_vertex:
            for n in e.endpoints:
                at = e.attachment_at(n)
                used.setdefault(n, set()).add((at.component, at.vertex))
    return used


def random_realization(
    rng: random.Random,
    n_edges: int,
    alphabet: Sequence[Atom],
    allow_vertex: bool = True,
) -> RealizationTree:
    """A random valid realization: each new node is summed onto a random built node."""
    root_atom = rng.choice(alphabet)
    nodes = [("n0", root_atom)]
    edges = []
    used: dict[str, set] = {}
    for k in range(1, n_edges + 1):
        new = f"n{k}"
        while True:
            old, b = rng.choice(nodes)
            a = rng.choice(alphabet)
            opts = [o for o in _sum_options(a, b, set(), used.get(old, set()))
                    if allow_vertex or not o[0].is_vertex]
            st, at_new, at_old = rng.choice(opts)
            break
        if st.is_vertex:
            used.setdefault(old, set()).add(at_old)
            used.setdefault(new, set()).add(at_new)
        nodes.append((new, a))
        edges.append(_edge(new, old, st, at_new, at_old))
    return RealizationTree(tuple(nodes), tuple(edges), "n0")


def shuffled_realization(rng: random.Random, t: RealizationTree) -> RealizationTree:
    """``t`` with a random root and a random valid build order."""
    edges = list(t.edges)
    rng.shuffle(edges)
    return renormalize(t.nodes, edges, rng.choice(t.node_ids))


# atoms for the cyclic-count checks: two orders, circles, vertex-bearing graphs
L = Atom("L", (Circle(3),))
H = Atom("H", (Graph((2, 2, 3), ((2, 2, 3), (2, 2, 3))),))
U = Atom("U", (Circle(2), Graph((2, 2, 3), ((2, 2, 3), (2, 2, 3)))))
NU_ALPHABET = (M, K, L, H, U) + (
    builtin_identity(SphericalType.ordinary()),
    builtin_identity(SphericalType.cyclic(2)),
    builtin_identity(SphericalType.cyclic(3)),
    builtin_identity(SphericalType.vertex(2, 2, 3)),
)
