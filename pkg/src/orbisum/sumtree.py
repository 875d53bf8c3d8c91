"""Realization trees of connected sums and their moves.

A :class:`RealizationTree` is the tree of a successive connected sum
``X0 # X1 # ... # Xn``: nodes carry atoms, edges carry the sum type plus the
singular component (and vertex) each end is punctured at, and the edge
sequence is the build order. Edge ``k`` must join a new node to the part
already built from the root by edges ``0..k-1``.

Moves (:func:`slide`, :func:`contract_trivial`) return new trees and always
re-normalise the edge sequence to the least valid build order that keeps the
surviving edges in their previous relative order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .atoms import Atom, Circle, Graph
from .core2d import SphericalType, complexity_class


class InvalidTree(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "invalid tree")


class IllegalSlide(ValueError):
    pass


class NotTrivial(ValueError):
    pass


class ReattachmentImpossible(AssertionError):
    pass


@dataclass(frozen=True)
class Attachment:
    """Puncture position on one end of a cyclic or vertex sum."""

    node: str
    component: int
    vertex: int | None = None

    def __str__(self) -> str:
        s = f"{self.node}.c{self.component}"
        return s if self.vertex is None else f"{s}.v{self.vertex}"


@dataclass(frozen=True)
class SumEdge:
    """A connected sum joining ``new`` (attached later) to ``old``.

    The orientation only reflects the current build order; the edge itself is
    identified by its unordered endpoint pair (see :attr:`key`).
    """

    sum_type: SphericalType
    new: str
    old: str
    at_new: Attachment | None = None
    at_old: Attachment | None = None

    @classmethod
    def make(cls, new, old, sum_type, at_new=None, at_old=None) -> "SumEdge":
        """Convenience constructor; attachments may be ``comp`` or ``(comp, vertex)``."""
        return cls(sum_type, new, old, _attachment(new, at_new), _attachment(old, at_old))

    @property
    def key(self) -> frozenset[str]:
        return frozenset((self.new, self.old))

    @property
    def endpoints(self) -> tuple[str, str]:
        return (self.new, self.old)

    def other(self, node: str) -> str:
        if node == self.new:
            return self.old
        if node == self.old:
            return self.new
        raise KeyError(node)

    def attachment_at(self, node: str) -> Attachment | None:
        if node == self.new:
            return self.at_new
        if node == self.old:
            return self.at_old
        raise KeyError(node)

    def oriented(self, new: str) -> "SumEdge":
        """The same edge with ``new`` as the later-attached end."""
        if new == self.new:
            return self
        if new != self.old:
            raise KeyError(new)
        return SumEdge(self.sum_type, self.old, self.new, self.at_old, self.at_new)

    def __str__(self) -> str:
        s = f"{self.new} -> {self.old} : {self.sum_type}"
        ats = [str(a) for a in (self.at_new, self.at_old) if a is not None]
        return s + (" at " + ", ".join(ats) if ats else "")


def _attachment(node, spec) -> Attachment | None:
    if spec is None or isinstance(spec, Attachment):
        return spec
    if isinstance(spec, int):
        return Attachment(node, spec)
    comp, vertex = spec
    return Attachment(node, comp, vertex)


EdgeRef = Union[SumEdge, Sequence[str], frozenset]


@dataclass(frozen=True)
class RealizationTree:
    nodes: tuple[tuple[str, Atom], ...]
    edges: tuple[SumEdge, ...] = ()
    root: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple((str(n), a) for n, a in self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.root is None and self.nodes:
            object.__setattr__(self, "root", self.nodes[0][0])

    @cached_property
    def atoms(self) -> dict[str, Atom]:
        return dict(self.nodes)

    @cached_property
    def _violations(self) -> tuple["Violation", ...]:
        # trees are immutable, so validation runs once per instance
        return _violations(self)

    @property
    def node_ids(self) -> list[str]:
        return [n for n, _ in self.nodes]

    def atom(self, node: str) -> Atom:
        return self.atoms[node]

    def find_edge(self, ref: EdgeRef) -> int:
        """Index of the edge given as a :class:`SumEdge` or endpoint pair."""
        key = ref.key if isinstance(ref, SumEdge) else frozenset(ref)
        for i, e in enumerate(self.edges):
            if e.key == key:
                return i
        raise KeyError(f"no edge between {sorted(key)}")

    def incident(self, node: str) -> list[int]:
        return [i for i, e in enumerate(self.edges) if node in e.key]

    def __str__(self) -> str:
        lines = [f"root {self.root}"]
        lines += [f"node {n} = {a.name}" for n, a in self.nodes]
        lines += [f"sum {e}" for e in self.edges]
        return "\n".join(lines)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class CanonicalForm:
    summands: tuple[str, ...]
    sum_labels: tuple[SphericalType, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))
        object.__setattr__(
            self, "sum_labels", tuple(sorted(self.sum_labels, key=SphericalType.sort_key))
        )
        if self.summands and len(self.sum_labels) != len(self.summands) - 1:
            raise ValueError("a connected sum of n summands has n - 1 sums")

    def __str__(self) -> str:
        labels = ", ".join(str(t) for t in self.sum_labels) or "-"
        return f"summands: {', '.join(self.summands)}; labels: {labels}"


# --------------------------------------------------------------------------
# validation


def _check_attachment(t: RealizationTree, i: int, e: SumEdge, node: str) -> list[Violation]:
    at = e.attachment_at(node)
    where = f"edge {i} ({e.new}-{e.old}) at {node}"
    st = e.sum_type
    if st.is_ordinary:
        if at is not None:
            return [Violation("bad attachment", f"{where}: ordinary sums carry no attachment")]
        return []
    if at is None:
        return [Violation("bad attachment", f"{where}: {st} sum needs an attachment")]
    if at.node != node:
        return [Violation("bad attachment", f"{where}: attachment names node {at.node}")]
    comps = t.atom(node).components
    if not 0 <= at.component < len(comps):
        return [Violation("bad attachment", f"{where}: no component {at.component}")]
    comp = comps[at.component]
    if st.is_cyclic:
        if at.vertex is not None:
            return [Violation("bad attachment", f"{where}: cyclic sum cannot use a vertex")]
        if st.order not in comp.orders:
            return [Violation(
                "order mismatch",
                f"{where}: component {at.component} has no strand of order {st.order}",
            )]
        return []
    if not isinstance(comp, Graph):
        return [Violation("bad attachment", f"{where}: component {at.component} has no vertices")]
    if at.vertex is None or not 0 <= at.vertex < len(comp.vertex_triples):
        return [Violation("bad attachment", f"{where}: vertex index {at.vertex} out of range")]
    if comp.vertex_triples[at.vertex] != st.orders:
        return [Violation(
            "order mismatch",
            f"{where}: vertex {at.vertex} has triple {comp.vertex_triples[at.vertex]}, sum is {st}",
        )]
    return []


def validate(t: RealizationTree) -> list[Violation]:
    """Every violated tree invariant; an empty list means the tree is valid."""
    return list(t._violations)


def _violations(t: RealizationTree) -> tuple[Violation, ...]:
    out: list[Violation] = []
    ids = t.node_ids
    if not ids:
        return (Violation("empty", "realization has no nodes"),)
    seen = set()
    for n in ids:
        if n in seen:
            out.append(Violation("duplicate node", f"node {n} declared twice"))
        seen.add(n)
    if t.root not in seen:
        out.append(Violation("unknown node", f"root {t.root} is not a node"))
    if len(t.edges) != len(seen) - 1:
        out.append(Violation(
            "not a tree", f"{len(seen)} nodes need {len(seen) - 1} edges, found {len(t.edges)}"
        ))
    built = {t.root}
    used_vertices = {}
    for i, e in enumerate(t.edges):
        bad_ends = [n for n in e.endpoints if n not in seen]
        if bad_ends:
            out.append(Violation("unknown node", f"edge {i} uses undeclared {bad_ends}"))
            continue
        if e.new == e.old:
            out.append(Violation("not a tree", f"edge {i} is a loop at {e.new}"))
            continue
        inside = [n in built for n in e.endpoints]
        if all(inside):
            out.append(Violation(
                "not a growth order", f"edge {i} ({e.new}-{e.old}) joins two built nodes"
            ))
        elif not any(inside):
            out.append(Violation(
                "not a growth order", f"edge {i} ({e.new}-{e.old}) does not touch the built part"
            ))
        built.update(e.endpoints)
        for n in e.endpoints:
            out.extend(_check_attachment(t, i, e, n))
            at = e.attachment_at(n)
            if e.sum_type.is_vertex and at is not None and at.vertex is not None:
                slot = (n, at.component, at.vertex)
                if slot in used_vertices:
                    out.append(Violation(
                        "vertex reused",
                        f"edges {used_vertices[slot]} and {i} both use vertex {at}",
                    ))
                used_vertices[slot] = i
    missing = seen - built
    if missing:
        out.append(Violation("not a tree", f"nodes {sorted(missing)} are not connected"))
    return tuple(out)


def require_valid(t: RealizationTree) -> None:
    vs = validate(t)
    if vs:
        raise InvalidTree(vs)


def efficiency_violations(t: RealizationTree) -> list[tuple[str, SumEdge]]:
    """Identity nodes incident to an edge of their own class."""
    require_valid(t)
    out = []
    for e in t.edges:
        for n in e.endpoints:
            ident = t.atom(n).identity_of
            if ident is None or complexity_class(ident) != complexity_class(e.sum_type):
                continue
            if ident != e.sum_type:
                # attachment compatibility forces the orders to agree
                raise AssertionError(f"identity {n} carries a {e.sum_type} sum")
            out.append((n, e))
    return out


def is_efficient(t: RealizationTree) -> bool:
    return not efficiency_violations(t)


# --------------------------------------------------------------------------
# build orders


def renormalize(
    nodes: Sequence[tuple[str, Atom]], edges: Sequence[SumEdge], root: str
) -> RealizationTree:
    """Reorder ``edges`` into the least valid build order from ``root``.

    At each step the earliest edge (by position in ``edges``) that joins the
    built part to a new node is taken and oriented towards the new node.
    """
    pending = list(edges)
    built = {root}
    ordered = []
    while pending:
        for i, e in enumerate(pending):
            a, b = e.endpoints
            if (a in built) != (b in built):
                new = b if a in built else a
                ordered.append(e.oriented(new))
                built.add(new)
                del pending[i]
                break
        else:
            raise InvalidTree([Violation("not a tree", "edges do not form a tree on the nodes")])
    return RealizationTree(tuple(nodes), tuple(ordered), root)


def reordered(t: RealizationTree, order: Sequence[int], root: str | None = None) -> RealizationTree:
    """The tree with edges taken in ``order`` (indices into ``t.edges``) from ``root``.

    The result must be a valid build order as given; no re-normalisation happens.
    """
    root = t.root if root is None else root
    built = {root}
    out = []
    for i in order:
        e = t.edges[i]
        a, b = e.endpoints
        new = b if a in built else a
        out.append(e.oriented(new))
        built.update(e.endpoints)
    return RealizationTree(t.nodes, tuple(out), root)


def build_orders(t: RealizationTree, root: str | None = None) -> Iterator[tuple[int, ...]]:
    """All valid build orders from ``root`` as tuples of edge indices."""
    root = t.root if root is None else root
    n = len(t.edges)
    ends = [e.endpoints for e in t.edges]
    built = {root}
    used = [False] * n
    prefix: list[int] = []

    def rec():
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for i in range(n):
            if used[i]:
                continue
            a, b = ends[i]
            if (a in built) == (b in built):
                continue
            new = b if a in built else a
            used[i] = True
            built.add(new)
            prefix.append(i)
            yield from rec()
            prefix.pop()
            built.discard(new)
            used[i] = False

    yield from rec()


def all_realization_orders(t: RealizationTree) -> Iterator[RealizationTree]:
    """The same tree under every choice of root and every valid build order."""
    for root in t.node_ids:
        for order in build_orders(t, root):
            yield reordered(t, order, root)


# --------------------------------------------------------------------------
# moves


def slide(t: RealizationTree, e: EdgeRef, moved_end: str, across: EdgeRef) -> RealizationTree:
    """Slide the ``moved_end`` of edge ``e`` across the adjacent edge ``across``.

    Ordinary edges slide across anything; a cyclic edge slides across a cyclic
    edge of the same order attached to the same singular component at the
    shared node; vertex edges never slide.
    """
    require_valid(t)
    ie, jf = t.find_edge(e), t.find_edge(across)
    if ie == jf:
        raise IllegalSlide("cannot slide an edge across itself")
    e, f = t.edges[ie], t.edges[jf]
    a = moved_end
    if a not in e.key or a not in f.key:
        raise IllegalSlide(f"edges do not share the node {a}")
    b, c = f.other(a), e.other(a)
    st = e.sum_type
    if st.is_ordinary:
        at_b = None
    elif st.is_cyclic:
        if f.sum_type != st:
            raise IllegalSlide(f"a {st} sum only slides across another {st} sum")
        if e.attachment_at(a).component != f.attachment_at(a).component:
            raise IllegalSlide(f"{st} sums at {a} lie on different singular components")
        fb = f.attachment_at(b)
        at_b = Attachment(b, fb.component)
    else:
        raise IllegalSlide("vertex sums never slide")
    moved = SumEdge(st, c, b, e.attachment_at(c), at_b)
    edges = list(t.edges)
    edges[ie] = moved
    out = renormalize(t.nodes, edges, t.root)
    require_valid(out)
    return out


def trivial_end(t: RealizationTree, e: SumEdge) -> str | None:
    """The identity endpoint a trivial sum would remove, or ``None``.

    If both ends are the identity of ``e``'s type, the later-attached one goes.
    """
    for n in (e.new, e.old):
        if t.atom(n).identity_of == e.sum_type:
            return n
    return None


def contract_trivial(t: RealizationTree, e: EdgeRef) -> RealizationTree:
    """Omit the trivial sum ``e``: delete its identity node and re-attach the
    other edges of that node to the surviving end."""
    require_valid(t)
    ie = t.find_edge(e)
    e = t.edges[ie]
    gone = trivial_end(t, e)
    if gone is None:
        raise NotTrivial(f"neither end of {e.new}-{e.old} is the identity for {e.sum_type}")
    keep = e.other(gone)
    at_keep = e.attachment_at(keep)
    edges = []
    for j, f in enumerate(t.edges):
        if j == ie:
            continue
        if gone in f.key:
            f = _reattach(f, gone, keep, at_keep)
        edges.append(f)
    nodes = [(n, a) for n, a in t.nodes if n != gone]
    root = keep if t.root == gone else t.root
    out = renormalize(nodes, edges, root)
    require_valid(out)
    return out


def _reattach(f: SumEdge, gone: str, keep: str, at_keep: Attachment | None) -> SumEdge:
    other = f.other(gone)
    st = f.sum_type
    if st.is_ordinary:
        new_at = None
    elif at_keep is None:
        raise ReattachmentImpossible(f"{st} sum at {gone} has no strand to move onto {keep}")
    elif st.is_cyclic:
        new_at = Attachment(keep, at_keep.component)
    else:
        if at_keep.vertex is None:
            raise ReattachmentImpossible(f"{st} sum at {gone} has no vertex to move onto {keep}")
        new_at = Attachment(keep, at_keep.component, at_keep.vertex)
    return SumEdge(st, other, keep, f.attachment_at(other), new_at)


def trivial_edges(t: RealizationTree) -> list[int]:
    return [i for i, e in enumerate(t.edges) if trivial_end(t, e) is not None]


def reduce_trivial(t: RealizationTree) -> RealizationTree:
    """Contract trivial sums (first in build order each time) until none is left."""
    require_valid(t)
    while True:
        idx = trivial_edges(t)
        if not idx:
            return t
        t = contract_trivial(t, t.edges[idx[0]])


def form_of(t: RealizationTree) -> CanonicalForm:
    """Summand names and sum labels of ``t`` as it stands, without rewriting."""
    return CanonicalForm(
        tuple(a.name for _, a in t.nodes), tuple(e.sum_type for e in t.edges)
    )


def canonicalize(t: RealizationTree) -> CanonicalForm:
    return form_of(reduce_trivial(t))


def equivalent(t1: RealizationTree, t2: RealizationTree) -> bool:
    return canonicalize(t1) == canonicalize(t2)


# --------------------------------------------------------------------------
# cutting


def split_at(t: RealizationTree, e: EdgeRef) -> tuple[RealizationTree, RealizationTree]:
    """Cut edge ``e``: the side holding the root, then the other side.

    The far side is rooted at its end of ``e``; each side keeps the relative
    build order of its edges.
    """
    ie = t.find_edge(e)
    e = t.edges[ie]
    far = e.new  # in a valid build order the new end is away from the root
    adj: dict[str, list[str]] = {n: [] for n in t.node_ids}
    for j, f in enumerate(t.edges):
        if j != ie:
            adj[f.new].append(f.old)
            adj[f.old].append(f.new)
    side = {far}
    stack = [far]
    while stack:
        for m in adj[stack.pop()]:
            if m not in side:
                side.add(m)
                stack.append(m)
    near_nodes = [(n, a) for n, a in t.nodes if n not in side]
    far_nodes = [(n, a) for n, a in t.nodes if n in side]
    near_edges = [f for j, f in enumerate(t.edges) if j != ie and f.new not in side]
    far_edges = [f for j, f in enumerate(t.edges) if j != ie and f.new in side]
    return (
        renormalize(near_nodes, near_edges, t.root),
        renormalize(far_nodes, far_edges, far),
    )


def make_tree(
    nodes: Iterable[tuple[str, Atom]], sums: Iterable, root: str | None = None
) -> RealizationTree:
    """Build a tree from ``(new, old, sum_type[, at_new[, at_old]])`` tuples."""
    edges = [s if isinstance(s, SumEdge) else SumEdge.make(*s) for s in sums]
    return RealizationTree(tuple(nodes), tuple(edges), root)


def component_of(t: RealizationTree, at: Attachment) -> Circle | Graph:
    return t.atom(at.node).components[at.component]
