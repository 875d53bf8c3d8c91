"""Closed 2-orbifolds, spherical type tags and the complexity preorder.

Everything here is a pure function of immutable values. Euler characteristics
are exact :class:`fractions.Fraction` values so the sign test at zero is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

ORDINARY = "ordinary"
CYCLIC = "cyclic"
VERTEX = "vertex"

_KIND_RANK = {ORDINARY: 0, CYCLIC: 1, VERTEX: 2}

# (2,3,p) vertex triples are only admissible for these p.
_PLATONIC_THIRD = (3, 4, 5)


class MaximalityViolation(ValueError):
    """The kept boundary component is not of maximal complexity."""


def check_order(p) -> int:
    """Return ``p`` as an int, raising ``ValueError`` unless it is an order >= 2."""
    if isinstance(p, bool) or int(p) != p:
        raise ValueError(f"cone order must be an integer, got {p!r}")
    p = int(p)
    if p < 2:
        raise ValueError(f"cone order must be >= 2, got {p}")
    return p


def is_admissible_vertex_triple(p: int, q: int, r: int) -> bool:
    a, b, c = sorted((check_order(p), check_order(q), check_order(r)))
    if (a, b) == (2, 2):
        return True
    return (a, b) == (2, 3) and c in _PLATONIC_THIRD


@dataclass(frozen=True, order=False)
class SphericalType:
    """Type of a spherical 2-orbifold, discal/identity 3-orbifold, puncture or sum.

    Use the :meth:`ordinary`, :meth:`cyclic` and :meth:`vertex` constructors;
    vertex triples are stored sorted so equality is structural.
    """

    kind: str
    orders: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind == ORDINARY:
            if self.orders:
                raise ValueError("ordinary type carries no orders")
        elif self.kind == CYCLIC:
            if len(self.orders) != 1:
                raise ValueError("cyclic type carries exactly one order")
            object.__setattr__(self, "orders", (check_order(self.orders[0]),))
        elif self.kind == VERTEX:
            if len(self.orders) != 3:
                raise ValueError("vertex type carries exactly three orders")
            triple = tuple(sorted(check_order(o) for o in self.orders))
            if not is_admissible_vertex_triple(*triple):
                raise ValueError(f"inadmissible vertex triple {triple}")
            object.__setattr__(self, "orders", triple)
        else:
            raise ValueError(f"unknown spherical kind {self.kind!r}")

    @classmethod
    def ordinary(cls) -> "SphericalType":
        return cls(ORDINARY)

    @classmethod
    def cyclic(cls, p: int) -> "SphericalType":
        return cls(CYCLIC, (p,))

    @classmethod
    def vertex(cls, p: int, q: int, r: int) -> "SphericalType":
        return cls(VERTEX, (p, q, r))

    @property
    def is_ordinary(self) -> bool:
        return self.kind == ORDINARY

    @property
    def is_cyclic(self) -> bool:
        return self.kind == CYCLIC

    @property
    def is_vertex(self) -> bool:
        return self.kind == VERTEX

    @property
    def order(self) -> int:
        """The order of a cyclic type."""
        if self.kind != CYCLIC:
            raise AttributeError("only cyclic types have a single order")
        return self.orders[0]

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.orders)

    def __str__(self) -> str:
        if self.kind == ORDINARY:
            return "ordinary"
        if self.kind == CYCLIC:
            return f"cyclic({self.orders[0]})"
        return "vertex({},{},{})".format(*self.orders)


ORDINARY_TYPE = SphericalType.ordinary()


def complexity_class(t: SphericalType) -> int:
    """0 for ordinary, 1 for cyclic, 2 for vertex. Orders are ignored."""
    return _KIND_RANK[t.kind]


def more_complicated(a: SphericalType, b: SphericalType) -> bool:
    return complexity_class(a) > complexity_class(b)


def cap_punctured_discal(boundary: Sequence[SphericalType], keep: int) -> SphericalType:
    """Type of the discal 3-orbifold left after capping every boundary
    component of a punctured discal orbifold except ``boundary[keep]``.

    Raises :class:`MaximalityViolation` if another component is strictly more
    complicated than the kept one.
    """
    if not boundary:
        raise ValueError("boundary must be non-empty")
    if not 0 <= keep < len(boundary):
        raise IndexError(f"keep index {keep} out of range")
    kept = boundary[keep]
    for i, other in enumerate(boundary):
        if more_complicated(other, kept):
            raise MaximalityViolation(
                f"boundary[{i}] = {other} is more complicated than kept {kept}"
            )
    return kept


def punctured_spherical_is_discal(orbifold_type: SphericalType, puncture_type: SphericalType) -> bool:
    """A once-punctured spherical 3-orbifold is discal iff the puncture has its type."""
    return orbifold_type == puncture_type


@dataclass(frozen=True)
class TwoOrbifold:
    """Closed orientable 2-orbifold: support genus plus the multiset of cone orders."""

    genus: int
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if isinstance(self.genus, bool) or int(self.genus) != self.genus or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")
        object.__setattr__(self, "genus", int(self.genus))
        object.__setattr__(
            self, "cone_orders", tuple(sorted(check_order(p) for p in self.cone_orders))
        )


BAD = "bad"
SPHERICAL = "spherical"
EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Classification:
    kind: str
    spherical: SphericalType | None = None

    def __str__(self) -> str:
        if self.kind == SPHERICAL:
            return f"spherical {self.spherical}"
        return self.kind


def orbifold_euler_characteristic(s: TwoOrbifold) -> Fraction:
    chi = Fraction(2 - 2 * s.genus)
    for p in s.cone_orders:
        chi -= 1 - Fraction(1, p)
    return chi


def classify_two_orbifold(s: TwoOrbifold | tuple[int, Iterable[int]]) -> Classification:
    """Bad / spherical (with bounding type) / Euclidean / hyperbolic."""
    if not isinstance(s, TwoOrbifold):
        genus, orders = s
        s = TwoOrbifold(genus, tuple(orders))
    orders = s.cone_orders
    if s.genus == 0:
        n = len(orders)
        if n == 1 or (n == 2 and orders[0] != orders[1]):
            return Classification(BAD)
        if n == 0:
            return Classification(SPHERICAL, ORDINARY_TYPE)
        if n == 2:
            return Classification(SPHERICAL, SphericalType.cyclic(orders[0]))
        if n == 3 and is_admissible_vertex_triple(*orders):
            return Classification(SPHERICAL, SphericalType.vertex(*orders))
    chi = orbifold_euler_characteristic(s)
    if chi > 0:
        # Good closed orientable 2-orbifolds with chi > 0 are all listed above.
        raise AssertionError(f"unlisted positive-characteristic 2-orbifold {s}")
    return Classification(EUCLIDEAN if chi == 0 else HYPERBOLIC)
