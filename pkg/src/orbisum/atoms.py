"""Irreducible summand descriptors.

An :class:`Atom` records only what the connected-sum calculus consumes: its
name and, for each singular component, the edge orders and vertex triples.
Embeddings and knotting are not modelled; two atoms are the same summand
exactly when their names agree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core2d import ORDINARY_TYPE, SphericalType, check_order, is_admissible_vertex_triple


class AtomError(ValueError):
    pass


@dataclass(frozen=True)
class Circle:
    """Vertex-free singular circle of a single order."""

    order: int

    def __post_init__(self):
        object.__setattr__(self, "order", check_order(self.order))

    @property
    def orders(self) -> frozenset[int]:
        return frozenset((self.order,))

    @property
    def has_vertices(self) -> bool:
        return False

    @property
    def vertex_triples(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Graph:
    """Singular component with at least one trivalent vertex.

    ``edge_orders`` and ``vertex_triples`` are multisets stored sorted. A vertex
    is addressed by its index into ``vertex_triples``.
    """

    edge_orders: tuple[int, ...]
    vertex_triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        edges = tuple(sorted(check_order(o) for o in self.edge_orders))
        if not edges:
            raise AtomError("graph component needs at least one edge")
        triples = []
        for t in self.vertex_triples:
            if len(t) != 3:
                raise AtomError(f"vertex triple must have three orders, got {t!r}")
            t = tuple(sorted(check_order(o) for o in t))
            if not is_admissible_vertex_triple(*t):
                raise AtomError(f"inadmissible vertex triple {t}")
            missing = set(t) - set(edges)
            if missing:
                raise AtomError(f"vertex triple {t} uses orders {sorted(missing)} not among edges")
            triples.append(t)
        if not triples:
            raise AtomError("graph component needs at least one vertex")
        object.__setattr__(self, "edge_orders", edges)
        object.__setattr__(self, "vertex_triples", tuple(sorted(triples)))

    @property
    def orders(self) -> frozenset[int]:
        return frozenset(self.edge_orders)

    @property
    def has_vertices(self) -> bool:
        return True


SingularComponent = Union[Circle, Graph]

_IDENTITY_NAME = re.compile(r"^S3(o|c\(\d+\)|v\(\d+,\d+,\d+\))$")


def identity_name(t: SphericalType) -> str:
    if t.is_ordinary:
        return "S3o"
    if t.is_cyclic:
        return f"S3c({t.order})"
    return "S3v({},{},{})".format(*t.orders)


def is_reserved_name(name: str) -> bool:
    return bool(_IDENTITY_NAME.match(name))


@dataclass(frozen=True)
class Atom:
    """An irreducible summand (declared, not verified) or a built-in identity."""

    name: str
    components: tuple[SingularComponent, ...] = ()
    identity_of: SphericalType | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.identity_of is None:
            if is_reserved_name(self.name):
                raise AtomError(f"name {self.name!r} is reserved for built-in identities")
            return
        expected = _identity_components(self.identity_of)
        if self.components != expected:
            raise AtomError(
                f"identity {identity_name(self.identity_of)} must have components {expected}"
            )
        if self.name != identity_name(self.identity_of):
            raise AtomError(f"identity atom must be named {identity_name(self.identity_of)}")

    @property
    def is_identity(self) -> bool:
        return self.identity_of is not None

    @property
    def has_vertices(self) -> bool:
        return any(c.has_vertices for c in self.components)


def _identity_components(t: SphericalType) -> tuple[SingularComponent, ...]:
    if t.is_ordinary:
        return ()
    if t.is_cyclic:
        return (Circle(t.order),)
    # double of the Y-graph: a theta graph with two vertices of the same triple
    return (Graph(t.orders, (t.orders, t.orders)),)


def builtin_identity(t: SphericalType) -> Atom:
    return Atom(identity_name(t), _identity_components(t), t)


def puncture_capabilities(a: Atom) -> frozenset[SphericalType]:
    """Types of connected sum the atom can take part in."""
    caps = {ORDINARY_TYPE}
    for comp in a.components:
        caps.update(SphericalType.cyclic(o) for o in comp.orders)
        caps.update(SphericalType.vertex(*t) for t in comp.vertex_triples)
    return frozenset(caps)

