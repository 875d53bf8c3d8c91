"""Replay of connected sums on explicit singular graphs, vertex sums included.

Atoms only record order multisets, which is enough as long as no vertex sum
occurs. A vertex sum can cut a singular component into pieces and leave some
of them without vertices, so counting "p-cyclic sums touching a vertex-free
component" then depends on the order of the sums. This module replays a
realization on explicit multigraphs to exhibit that dependence.

Conventions:

* ``ExplicitGraph.edges`` are ``(u, v, order)`` with ``u``/``v`` indices into
  the component's ``vertex_triples`` (a loop has ``u == v``); a circle is the
  component ``ExplicitGraph(edges=((None, None, p),))``.
* A cyclic sum on a component uses the first current strand of the right
  order that came from that component, by original edge index.
* A vertex sum matches the germs at the two vertices by order; germs of equal
  order are paired in the order they are listed.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .atoms import Circle, Graph
from .core2d import check_order
from .sumtree import InvalidTree, RealizationTree, validate


@dataclass(frozen=True)
class ExplicitGraph:
    edges: tuple[tuple[int | None, int | None, int], ...]
    n_vertices: int = 0

    @classmethod
    def circle(cls, order: int) -> "ExplicitGraph":
        return cls(((None, None, check_order(order)),), 0)


@dataclass
class _Strand:
    a: object  # vertex key or None when closed
    b: object
    order: int
    origins: set = field(default_factory=set)  # {(node, comp, edge_index)}


class _State:
    """Explicit singular set of the orbifold built so far."""

    def __init__(self):
        self.strands: list[_Strand] = []
        self.vertices: set = set()

    def add(self, node, comp_index, g: ExplicitGraph):
        for v in range(g.n_vertices):
            self.vertices.add((node, comp_index, v))
        for ei, (u, v, order) in enumerate(g.edges):
            ka = None if u is None else (node, comp_index, u)
            kb = None if v is None else (node, comp_index, v)
            self.strands.append(_Strand(ka, kb, order, {(node, comp_index, ei)}))

    def pick(self, node, comp_index, order) -> int:
        best = None
        for i, s in enumerate(self.strands):
            if s.order != order:
                continue
            mine = [o[2] for o in s.origins if o[:2] == (node, comp_index)]
            if mine and (best is None or min(mine) < best[0]):
                best = (min(mine), i)
        if best is None:
            raise ValueError(f"no strand of order {order} from {node}.c{comp_index}")
        return best[1]

    def component_has_vertex(self, i: int) -> bool:
        comp = self._components()
        root = comp[("s", i)]
        return any(comp[("v", v)] == root for v in self.vertices)

    def _components(self):
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in self.vertices:
            find(("v", v))
        for i, s in enumerate(self.strands):
            find(("s", i))
            for end in (s.a, s.b):
                if end is not None:
                    parent[find(("s", i))] = find(("v", end))
        return {k: find(k) for k in list(parent)}

    def cyclic_sum(self, i: int, j: int):
        s, t = self.strands[i], self.strands[j]
        if s.a is None and s.b is None:
            merged = [_Strand(t.a, t.b, t.order, s.origins | t.origins)]
        elif t.a is None and t.b is None:
            merged = [_Strand(s.a, s.b, s.order, s.origins | t.origins)]
        else:
            merged = [
                _Strand(s.a, t.a, s.order, s.origins | t.origins),
                _Strand(s.b, t.b, s.order, set(s.origins | t.origins)),
            ]
        self.strands = [x for k, x in enumerate(self.strands) if k not in (i, j)] + merged

    def _germs(self, vertex):
        out = []
        for i, s in enumerate(self.strands):
            if s.a == vertex:
                out.append((s.order, i, 0))
            if s.b == vertex:
                out.append((s.order, i, 1))
        return sorted(out, key=lambda g: g[0])

    def vertex_sum(self, x, y):
        gx, gy = self._germs(x), self._germs(y)
        if [g[0] for g in gx] != [g[0] for g in gy]:
            raise ValueError(f"vertices {x} and {y} have different triples")
        # half-edge gluing: end (i, side) of a strand at x is glued to the matching end at y
        glue = {}
        for (_, i, si), (_, j, sj) in zip(gx, gy):
            glue[(i, si)] = (j, sj)
            glue[(j, sj)] = (i, si)
        self.vertices -= {x, y}
        touched = {i for i, _ in glue}
        old = self.strands
        kept = [s for k, s in enumerate(old) if k not in touched]
        done = set()
        new = []

        def end_vertex(i, side):
            s = old[i]
            return s.a if side == 0 else s.b

        for start in sorted(touched):
            for side in (0, 1):
                if (start, side) in done or (start, side) in glue:
                    continue
                # walk from a free end through glued strands
                origins = set()
                i, sd = start, side
                first = end_vertex(i, sd)
                while True:
                    done.add((i, sd))
                    origins |= old[i].origins
                    other = 1 - sd
                    done.add((i, other))
                    if (i, other) not in glue:
                        last = end_vertex(i, other)
                        break
                    i, sd = glue[(i, other)]
                new.append(_Strand(first, last, old[start].order, origins))
        # leftover glued ends form closed circles
        for start in sorted(touched):
            if (start, 0) in done:
                continue
            origins = set()
            i, sd = start, 0
            while (i, sd) not in done:
                done.add((i, sd))
                done.add((i, 1 - sd))
                origins |= old[i].origins
                i, sd = glue[(i, 1 - sd)]
            new.append(_Strand(None, None, old[start].order, origins))
        self.strands = kept + new


def replay_explicit(
    t: RealizationTree,
    topology: Mapping[tuple[str, int], ExplicitGraph],
    p: int,
) -> int:
    """Count p-cyclic sums touching a vertex-free component, replaying ``t``
    in its build order on explicit singular graphs.

    ``topology`` maps ``(node, component index)`` of every graph component to
    its explicit graph; circles need no entry.
    """
    p = check_order(p)
    vs = validate(t)
    if vs:
        raise InvalidTree(vs)
    state = _State()
    for node, atom in t.nodes:
        for ci, comp in enumerate(atom.components):
            if isinstance(comp, Circle):
                g = topology.get((node, ci), ExplicitGraph.circle(comp.order))
            else:
                g = topology[(node, ci)]
                _check_shape(node, ci, comp, g)
            state.add(node, ci, g)
    count = 0
    for e in t.edges:
        st = e.sum_type
        if st.is_cyclic:
            i = state.pick(e.at_new.node, e.at_new.component, st.order)
            j = state.pick(e.at_old.node, e.at_old.component, st.order)
            if st.order == p and not (
                state.component_has_vertex(i) and state.component_has_vertex(j)
            ):
                count += 1
            state.cyclic_sum(i, j)
        elif st.is_vertex:
            x = (e.at_new.node, e.at_new.component, e.at_new.vertex)
            y = (e.at_old.node, e.at_old.component, e.at_old.vertex)
            state.vertex_sum(x, y)
    return count


def _check_shape(node, ci, comp: Graph, g: ExplicitGraph):
    if g.n_vertices != len(comp.vertex_triples):
        raise ValueError(f"{node}.c{ci}: explicit graph has {g.n_vertices} vertices")
    germs = defaultdict(list)
    for u, v, order in g.edges:
        if u is None or v is None:
            raise ValueError(f"{node}.c{ci}: a graph component cannot contain a closed circle")
        germs[u].append(order)
        germs[v].append(order)
    for vi, triple in enumerate(comp.vertex_triples):
        if tuple(sorted(germs[vi])) != triple:
            raise ValueError(f"{node}.c{ci}: vertex {vi} has germs {sorted(germs[vi])}, expected {triple}")
    if sorted(o for _, _, o in g.edges) != sorted(comp.edge_orders):
        raise ValueError(f"{node}.c{ci}: explicit edge orders differ from the declared ones")
