"""Symbolic split-and-cap process.

The process runs in three phases (ordinary, cyclic, vertex). In each phase it
cuts essential sums of that type, one at a time, and omits trivial ones, until
every sum of that type in every current piece is inessential. Cutting caps
both sides symbolically: the cut end simply disappears from each side.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .core2d import CYCLIC, ORDINARY, VERTEX, SphericalType, punctured_spherical_is_discal
from .sumtree import (
    CanonicalForm,
    EdgeRef,
    RealizationTree,
    SumEdge,
    contract_trivial,
    reduce_trivial,
    require_valid,
    split_at,
    trivial_end,
)

PHASES = ((1, ORDINARY), (2, CYCLIC), (3, VERTEX))
CUT = "cut"
CONTRACT = "contract"


@dataclass(frozen=True)
class Step:
    phase: int
    action: str
    edge: SumEdge

    def __str__(self) -> str:
        return f"phase {self.phase} {self.action} {self.edge.new}-{self.edge.old} {self.edge.sum_type}"


@dataclass(frozen=True)
class SplitTrace:
    steps: tuple[Step, ...]
    final: CanonicalForm
    components: tuple[RealizationTree, ...]


def side_caps_to_discal(side: RealizationTree, puncture: SphericalType) -> bool:
    """Whether ``side``, punctured by a sum of type ``puncture``, is discal.

    That happens iff the side reduces to a single identity atom whose type is
    the puncture type.
    """
    reduced = reduce_trivial(side)
    if len(reduced.nodes) != 1:
        return False
    ident = reduced.nodes[0][1].identity_of
    return ident is not None and punctured_spherical_is_discal(ident, puncture)


@lru_cache(maxsize=1 << 16)
def _essential(t: RealizationTree, key: frozenset) -> bool:
    e = t.edges[t.find_edge(key)]
    return not any(side_caps_to_discal(s, e.sum_type) for s in split_at(t, key))


def edge_essential(t: RealizationTree, e: EdgeRef) -> bool:
    """Whether the sum sphere of ``e`` bounds no discal orbifold on either side."""
    require_valid(t)
    return _essential(t, t.edges[t.find_edge(e)].key)


def _actions(comps, kind):
    cuts, contracts = [], []
    for ci, c in enumerate(comps):
        for e in c.edges:
            if e.sum_type.kind != kind:
                continue
            if _essential(c, e.key):
                cuts.append((CUT, ci, e))
            if trivial_end(c, e) is not None:
                contracts.append((CONTRACT, ci, e))
    return cuts, contracts


def run_split(
    t: RealizationTree,
    strategy: str = "first-fit",
    seed: int | None = None,
) -> SplitTrace:
    """Simulate the process on ``t``.

    ``first-fit`` takes the first essential sum in build order (cuts before
    omissions); ``random`` draws uniformly among all available cuts and
    omissions of the current phase using ``random.Random(seed)``.
    """
    require_valid(t)
    if strategy not in ("first-fit", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    comps = [t]
    steps: list[Step] = []
    cut_labels: list[SphericalType] = []
    done_kinds: list[str] = []
    for phase, kind in PHASES:
        for k in done_kinds:
            cuts, _ = _actions(comps, k)
            assert not cuts, f"essential {k} sum left after its phase"
        while True:
            cuts, contracts = _actions(comps, kind)
            if not cuts and not contracts:
                break
            if strategy == "first-fit":
                action, ci, e = (cuts or contracts)[0]
            else:
                action, ci, e = rng.choice(cuts + contracts)
            c = comps[ci]
            if action == CUT:
                near, far = split_at(c, e)
                comps[ci:ci + 1] = [near, far]
                cut_labels.append(e.sum_type)
            else:
                comps[ci] = contract_trivial(c, e)
            steps.append(Step(phase, action, e))
        done_kinds.append(kind)
    names = [a.name for c in comps for _, a in c.nodes]
    labels = cut_labels + [e.sum_type for c in comps for e in c.edges]
    return SplitTrace(tuple(steps), CanonicalForm(tuple(names), tuple(labels)), tuple(comps))


def all_split_finals(t: RealizationTree) -> set[CanonicalForm]:
    """Final forms over every possible sequence of choices of the process.

    This covers what any strategy or seed can produce. States are memoized as
    multisets of pieces plus cut labels.
    """
    require_valid(t)
    memo: dict = {}

    def explore(pi: int, comps: tuple, labels: tuple) -> frozenset:
        key = (pi, frozenset(Counter(comps).items()), labels)
        if key in memo:
            return memo[key]
        if pi == len(PHASES):
            names = [a.name for c in comps for _, a in c.nodes]
            rest = [e.sum_type for c in comps for e in c.edges]
            out = frozenset({CanonicalForm(tuple(names), labels + tuple(rest))})
        else:
            cuts, contracts = _actions(list(comps), PHASES[pi][1])
            if not cuts and not contracts:
                out = explore(pi + 1, comps, labels)
            else:
                found = set()
                for action, ci, e in cuts + contracts:
                    c = comps[ci]
                    if action == CUT:
                        new = comps[:ci] + split_at(c, e) + comps[ci + 1:]
                        lab = tuple(sorted(labels + (e.sum_type,), key=SphericalType.sort_key))
                    else:
                        new = comps[:ci] + (contract_trivial(c, e),) + comps[ci + 1:]
                        lab = labels
                    found |= explore(pi, new, lab)
                out = frozenset(found)
        memo[key] = out
        return out

    return set(explore(0, (t,), ()))
