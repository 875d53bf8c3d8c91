"""Invariance suites behind ``orbisum verify`` and ``orbisum lemma-check``.

Each suite returns a :class:`SuiteReport` with the number of instances
checked and the failures found. Instance-level checkers are public so the
test-suite can call them on hand-made cases.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterable

from . import generate as gen
from . import nu as nu_mod
from .atoms import Atom
from .core2d import (
    BAD,
    SPHERICAL,
    SphericalType,
    TwoOrbifold,
    classify_two_orbifold,
    is_admissible_vertex_triple,
    orbifold_euler_characteristic,
)
from .splitproc import all_split_finals, run_split
from .sumtree import (
    CanonicalForm,
    IllegalSlide,
    RealizationTree,
    build_orders,
    reordered,
    canonicalize,
    contract_trivial,
    efficiency_violations,
    form_of,
    reduce_trivial,
    slide,
    trivial_edges,
    validate,
)
from .vertexsums import ExplicitGraph, replay_explicit


@dataclass
class SuiteReport:
    name: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def lines(self) -> list[str]:
        status = "pass" if self.ok else "FAIL"
        out = [f"suite: {self.name}; instances: {self.instances}; "
               f"failures: {len(self.failures)}; status: {status}"]
        out += [f"  note: {n}" for n in self.notes]
        out += [f"  failure: {f}" for f in self.failures[:20]]
        if len(self.failures) > 20:
            out.append(f"  failure: ... {len(self.failures) - 20} more")
        return out


# --------------------------------------------------------------------------
# 2-orbifolds


def expected_classification(genus: int, orders: tuple[int, ...]) -> str:
    """Independent statement of which closed 2-orbifolds are bad or spherical."""
    if genus == 0 and (len(orders) == 1 or (len(orders) == 2 and orders[0] != orders[1])):
        return "bad"
    if genus == 0 and (
        len(orders) == 0
        or (len(orders) == 2 and orders[0] == orders[1])
        or (len(orders) == 3 and is_admissible_vertex_triple(*orders))
    ):
        return "spherical"
    return "other"


def check_classifier(max_genus=2, max_cones=4, max_order=9) -> SuiteReport:
    rep = SuiteReport("classifier")
    for genus in range(max_genus + 1):
        for n in range(max_cones + 1):
            for orders in product(range(2, max_order + 1), repeat=n):
                if list(orders) != sorted(orders):
                    continue
                rep.instances += 1
                s = TwoOrbifold(genus, orders)
                try:
                    c = classify_two_orbifold(s)
                except AssertionError as exc:
                    rep.fail(f"{genus} {orders}: {exc}")
                    continue
                want = expected_classification(genus, orders)
                got = c.kind if c.kind in (BAD, SPHERICAL) else "other"
                if got != want:
                    rep.fail(f"{genus} {orders}: got {c}, expected {want}")
                chi = orbifold_euler_characteristic(s)
                if got == "other" and chi > 0:
                    rep.fail(f"{genus} {orders}: positive characteristic outside the list")
                if got == "spherical" and chi <= 0:
                    rep.fail(f"{genus} {orders}: spherical with characteristic {chi}")
    return rep


# --------------------------------------------------------------------------
# tree lemma, alpha invariance, blow-up


def check_tree_lemma(max_edges: int = 6, euler: bool = True) -> SuiteReport:
    rep = SuiteReport("tree-lemma")
    for m in range(1, max_edges + 1):
        for edges in gen.free_trees(m + 1):
            n_ext = len(nu_mod.leaves(edges))
            lo, hi, count = nu_mod.beta_range(edges)
            rep.instances += count
            if (lo, hi) != (n_ext - 1, n_ext - 1):
                rep.fail(f"{edges}: beta ranges over [{lo}, {hi}], expected {n_ext - 1}")
            if not euler:
                continue
            for order in permutations(range(m)):
                ec = nu_mod.euler_check(edges, order)
                b = nu_mod.beta_sum(edges, order)
                if (ec.chi_start, ec.chi_end, ec.beta_total) != (0, 1 - n_ext, n_ext - 1) or b != ec.beta_total:
                    rep.fail(f"{edges} order {order}: {ec}, beta {b}")
    return rep


def _all_orders(m: int) -> list[tuple[int, ...]]:
    return list(permutations(range(m)))


def check_alpha_invariance(max_edges: int = 5, reference_every: int = 7) -> SuiteReport:
    """Order independence of the alpha sum and its preservation by blow-ups.

    Every ``reference_every``-th ordering is also scored by the breadth-first
    reference implementation.
    """
    rep = SuiteReport("alpha-invariance")
    perms_cache: dict[int, list] = {}
    for c, n, edges in gen.cn_forests(max_edges):
        g = nu_mod.CyclicityGraph(c, n, edges)
        m = len(edges)
        orders = perms_cache.setdefault(m, _all_orders(m))
        vals = nu_mod.alpha_sums(g, orders)
        rep.instances += len(orders)
        if len(set(vals)) != 1:
            rep.fail(f"{g}: alpha sums {sorted(set(vals))}")
        for k in range(0, len(orders), reference_every):
            ref = nu_mod.alpha_sum_reference(g, orders[k])
            if ref != vals[k]:
                rep.fail(f"{g} order {orders[k]}: kernel {vals[k]}, reference {ref}")
        for node in n:
            if g.valence(node) < 2:
                continue
            blown = nu_mod.blow_up(g, node)
            if nu_mod.alpha_sums(blown, orders) != vals:
                rep.fail(f"{g}: blowing up {node} changes alpha")
    return rep


def check_external_c(max_edges: int = 5) -> SuiteReport:
    """An edge ending at a C leaf scores 1 wherever it sits, and removing it
    leaves the scores of the other edges unchanged."""
    rep = SuiteReport("external-c-reduction")
    for m in range(1, max_edges + 1):
        for c, n, edges in gen.cn_trees(m):
            g = nu_mod.CyclicityGraph(c, n, edges)
            for ei, (a, b) in enumerate(edges):
                if not ((a in c and g.valence(a) == 1) or (b in c and g.valence(b) == 1)):
                    continue
                rest = tuple(x for j, x in enumerate(edges) if j != ei)
                g2 = nu_mod.CyclicityGraph(c, n, rest)
                for order in permutations(range(m)):
                    rep.instances += 1
                    full = alpha_terms(g, order)
                    if full[order.index(ei)] != 1:
                        rep.fail(f"{edges} order {order}: leaf edge scored 0")
                    sub_order = [j - (j > ei) for j in order if j != ei]
                    sub = alpha_terms(g2, sub_order)
                    if [full[k] for k, j in enumerate(order) if j != ei] != sub:
                        rep.fail(f"{edges} order {order}: other edges changed")
    return rep


def alpha_terms(g: nu_mod.CyclicityGraph, order) -> list[int]:
    """Per-position alpha values, by definition."""
    vals = []
    for k in range(1, len(order) + 1):
        sub = nu_mod.CyclicityGraph(g.c_nodes, g.n_nodes, tuple(g.edges[j] for j in order[:k]))
        before = nu_mod.alpha_sum_reference(
            nu_mod.CyclicityGraph(g.c_nodes, g.n_nodes, tuple(g.edges[j] for j in order[:k - 1]))
        )
        vals.append(nu_mod.alpha_sum_reference(sub) - before)
    return vals


# --------------------------------------------------------------------------
# realization trees


def all_contraction_results(t: RealizationTree, memo=None) -> set[CanonicalForm]:
    """Forms reached by every maximal sequence of trivial contractions."""
    if memo is None:
        memo = {}
    if t in memo:
        return memo[t]
    idx = trivial_edges(t)
    if not idx:
        out = {form_of(t)}
    else:
        out = set()
        for i in idx:
            nxt = contract_trivial(t, t.edges[i])
            if len(nxt.edges) != len(t.edges) - 1:
                raise AssertionError("a contraction must remove exactly one sum")
            out |= all_contraction_results(nxt, memo)
    memo[t] = out
    return out


def check_realization(t: RealizationTree, seeds: Iterable[int] = (), all_choices: bool = False) -> list[str]:
    """Confluence, split agreement, efficiency soundness and move bookkeeping for one tree.

    ``all_choices`` also explores every choice sequence of the split process.
    """
    errs = []
    if validate(t):
        return [f"generated tree is invalid: {validate(t)}"]
    canon = canonicalize(t)
    forms = all_contraction_results(t)
    if forms != {canon}:
        errs.append(f"contractions reach {sorted(map(str, forms))}, canonical {canon}")
    residual = reduce_trivial(t)
    if efficiency_violations(residual):
        errs.append("residual tree is still inefficient")
    kept = sorted(a.name for _, a in t.nodes if not a.is_identity)
    if sorted(n for n in canon.summands if not n.startswith("S3")) != kept:
        errs.append("non-identity summands changed")
    for i in trivial_edges(t):
        after = contract_trivial(t, t.edges[i])
        before_names = sorted(a.name for _, a in t.nodes)
        after_names = sorted(a.name for _, a in after.nodes)
        removed = list(before_names)
        for n in after_names:
            removed.remove(n)
        labels = sorted(map(str, (e.sum_type for e in t.edges)))
        for e in after.edges:
            labels.remove(str(e.sum_type))
        if len(removed) != 1 or not removed[0].startswith("S3") or labels != [str(t.edges[i].sum_type)]:
            errs.append(f"contracting edge {i} removed {removed} and labels {labels}")
    for strategy, seed in [("first-fit", None)] + [("random", s) for s in seeds]:
        tr = run_split(t, strategy, seed)
        if tr.final != canon:
            errs.append(f"split {strategy} {seed}: {tr.final} != {canon}")
        if len(tr.steps) > len(t.edges):
            errs.append(f"split {strategy} {seed}: {len(tr.steps)} steps for {len(t.edges)} sums")
        phases = [s.phase for s in tr.steps]
        if phases != sorted(phases):
            errs.append(f"split {strategy} {seed}: phases out of order")
        if any(len(c.nodes) != 1 for c in tr.components):
            errs.append(f"split {strategy} {seed}: a final piece is not a single summand")
    if all_choices:
        finals = all_split_finals(t)
        if finals != {canon}:
            errs.append(f"split choices reach {sorted(map(str, finals))}")
    return errs


def check_confluence(trees: Iterable[RealizationTree], seeds=(), name="confluence",
                     deadline: Callable[[], bool] | None = None,
                     all_choices: bool = False) -> SuiteReport:
    rep = SuiteReport(name)
    for t in trees:
        if deadline is not None and deadline():
            rep.fail(f"time budget exhausted after {rep.instances} instances")
            break
        rep.instances += 1
        for err in check_realization(t, seeds, all_choices):
            rep.fail(f"{_short(t)}: {err}")
    return rep


def slide_closure(t: RealizationTree, limit: int = 5000) -> list[RealizationTree]:
    """Every realization reachable from ``t`` by legal slides (breadth first)."""
    seen = {_slide_key(t): t}
    queue = [t]
    while queue:
        cur = queue.pop(0)
        for s in legal_slides(cur):
            k = _slide_key(s)
            if k not in seen:
                seen[k] = s
                queue.append(s)
                if len(seen) > limit:
                    raise RuntimeError("slide closure too large")
    return list(seen.values())


def legal_slides(t: RealizationTree) -> list[RealizationTree]:
    out = []
    for e in t.edges:
        for a in e.endpoints:
            for f in t.edges:
                if f is e or a not in f.key:
                    continue
                try:
                    out.append(slide(t, e, a, f))
                except IllegalSlide:
                    pass
    return out


def _slide_key(t: RealizationTree):
    return frozenset(
        (e.sum_type, frozenset(((e.new, e.at_new), (e.old, e.at_old)))) for e in t.edges
    )


def check_slides(t: RealizationTree) -> list[str]:
    errs = []
    canon = canonicalize(t)
    for e in t.edges:
        for a in e.endpoints:
            for f in t.edges:
                if f is e or a not in f.key:
                    continue
                try:
                    s = slide(t, e, a, f)
                except IllegalSlide:
                    if e.sum_type.is_ordinary:
                        errs.append(f"ordinary slide of {e.new}-{e.old} refused")
                    continue
                if e.sum_type.is_vertex:
                    errs.append("a vertex sum slid")
                if validate(s):
                    errs.append(f"slide produced an invalid tree: {validate(s)}")
                if canonicalize(s) != canon:
                    errs.append(f"slide of {e.new}-{e.old} across {f.new}-{f.old} changed the form")
                if sorted(n for n, _ in s.nodes) != sorted(n for n, _ in t.nodes):
                    errs.append("slide changed the summands")
    return errs


def check_slide_suite(trees: Iterable[RealizationTree]) -> SuiteReport:
    rep = SuiteReport("slide-invariance")
    for t in trees:
        rep.instances += 1
        for err in check_slides(t):
            rep.fail(f"{_short(t)}: {err}")
    return rep


def check_nu_instance(t: RealizationTree, closure_nodes: int = 5) -> tuple[int, list[str]]:
    """Check one efficient vertex-free realization; returns (#orderings, errors)."""
    errs = []
    orders_checked = 0
    ps = sorted({e.sum_type.order for e in t.edges if e.sum_type.is_cyclic}) or [2]
    for p in ps:
        g, _ = nu_mod.build_cyclicity_graph(t, p)
        pos = {}
        k = 0
        for i, e in enumerate(t.edges):
            if e.sum_type.is_cyclic and e.sum_type.order == p:
                pos[i] = k
                k += 1
        cyc = [i for i, e in enumerate(t.edges) if e.sum_type.is_cyclic]
        induced, replayed = set(), {}
        for root in t.node_ids:
            for order in build_orders(t, root):
                orders_checked += 1
                induced.add(tuple(pos[i] for i in order if i in pos))
                sub = tuple(i for i in order if i in cyc)
                if sub not in replayed:
                    replayed[sub] = (root, order)
        alphas = set(nu_mod.alpha_sums(g, sorted(induced)))
        replays = set()
        for root, order in replayed.values():
            replays.add(nu_mod.nu_replay(reordered(t, order, root), p))
        if len(alphas) != 1 or alphas != replays:
            errs.append(f"p={p}: alpha sums {sorted(alphas)}, replays {sorted(replays)}")
        if len(t.nodes) <= closure_nodes:
            vals = set()
            for s in slide_closure(t):
                if efficiency_violations(s):
                    errs.append("a slide made the realization inefficient")
                    continue
                vals.add(nu_mod.nu(s, p))
                vals.add(nu_mod.nu_replay(s, p))
            if vals != alphas:
                errs.append(f"p={p}: slide-equivalent realizations give {sorted(vals)}, expected {sorted(alphas)}")
    return orders_checked, errs


def nu_instances(rng: random.Random, count: int, max_edges: int = 7) -> list[RealizationTree]:
    """Random efficient realizations without vertex sums, with at least one cyclic sum."""
    out = []
    while len(out) < count:
        m = rng.randint(1, max_edges)
        t = gen.random_realization(rng, m, gen.NU_ALPHABET, allow_vertex=False)
        if efficiency_violations(t):
            continue
        if not any(e.sum_type.is_cyclic for e in t.edges):
            continue
        out.append(t)
    return out


def check_nu_suite(trees: Iterable[RealizationTree], closure_nodes: int = 5) -> SuiteReport:
    rep = SuiteReport("nu-invariance")
    orderings = 0
    for t in trees:
        rep.instances += 1
        n, errs = check_nu_instance(t, closure_nodes)
        orderings += n
        for err in errs:
            rep.fail(f"{_short(t)}: {err}")
    rep.notes.append(f"build orderings checked: {orderings}")
    return rep


# --------------------------------------------------------------------------
# negative control


def vertex_sum_control():
    """A realization with one vertex sum whose cyclic count depends on the order.

    Three copies of a dumbbell graph (a vertex with an order-2 loop, joined by
    an order-3 edge to another such vertex). Summing two dumbbells at a vertex
    fuses their loops into a vertex-free order-2 circle, so an order-2 cyclic
    sum on that loop touches a vertex-free component only if the vertex sum
    came first.
    """
    from .atoms import Graph
    from .sumtree import make_tree

    dumbbell = Graph((2, 2, 3), ((2, 2, 3), (2, 2, 3)))
    explicit = ExplicitGraph(((0, 0, 2), (0, 1, 3), (1, 1, 2)), 2)
    nodes = [("a", Atom("A", (dumbbell,))), ("b", Atom("B", (dumbbell,))),
             ("d", Atom("D", (dumbbell,)))]
    t = make_tree(nodes, [
        ("b", "a", SphericalType.vertex(2, 2, 3), (0, 0), (0, 0)),
        ("d", "a", SphericalType.cyclic(2), 0, 0),
    ])
    topology = {(n, 0): explicit for n in "abd"}
    return t, topology


def check_negative_control() -> SuiteReport:
    rep = SuiteReport("vertex-sum-control")
    t, topology = vertex_sum_control()
    counts = {}
    for order in build_orders(t):
        rep.instances += 1
        counts[order] = replay_explicit(reordered(t, order), topology, 2)
    if len(set(counts.values())) < 2:
        rep.fail(f"replay counts do not depend on the order: {counts}")
    rep.notes.append("replay counts by order: " + ", ".join(
        f"{list(o)}={c}" for o, c in sorted(counts.items())))
    try:
        nu_mod.nu(t, 2)
        rep.fail("nu accepted a realization with a vertex sum")
    except nu_mod.HasVertexSums:
        pass
    return rep


def _short(t: RealizationTree) -> str:
    nodes = ",".join(f"{n}={a.name}" for n, a in t.nodes)
    edges = ",".join(f"{e.new}>{e.old}:{e.sum_type}" for e in t.edges)
    return f"[{nodes} | {edges}]"


# --------------------------------------------------------------------------
# driver


SMALL_ALPHABET = (gen.M, gen.K) + gen.IDENTITIES[:2]


def run_all(max_edges: int = 5, exhaustive: bool = True, seed: int = 0, iters: int = 200,
            split_seeds: int = 3) -> list[SuiteReport]:
    """Every suite at the given size.

    Exhaustive mode enumerates realization trees up to ``max_edges`` sums over
    a four-letter alphabet (two atoms, two identities) and up to
    ``min(max_edges, 3)`` over the full alphabet, where every choice sequence
    of the split process is explored; random mode draws ``iters``
    trees per suite from ``random.Random(seed)``.
    """
    rng = random.Random(seed)
    seeds = list(range(split_seeds))
    reports = [
        check_classifier(),
        check_tree_lemma(max_edges, euler=max_edges <= 6),
        check_alpha_invariance(min(max_edges, 5)),
        check_external_c(min(max_edges, 5)),
    ]
    if exhaustive:
        small = list(gen.realization_trees(max_edges, SMALL_ALPHABET))
        full = list(gen.realization_trees(min(max_edges, 3)))
        conf = check_confluence(small, seeds)
        conf.notes.append(f"alphabet: {', '.join(a.name for a in SMALL_ALPHABET)}")
        choices = check_confluence(full, seeds, name="split-choices", all_choices=True)
        choices.notes.append(f"alphabet: {', '.join(a.name for a in gen.ALPHABET + gen.IDENTITIES)}")
        slides = check_slide_suite(
            t for t in small + full if len(t.nodes) <= 5
        )
        nu_trees = [
            t for t in gen.realization_trees(min(max_edges, 3), gen.NU_ALPHABET, allow_vertex=False)
            if any(e.sum_type.is_cyclic for e in t.edges) and not efficiency_violations(t)
        ]
    else:
        alpha = gen.ALPHABET + gen.IDENTITIES
        rand = [gen.random_realization(rng, rng.randint(0, max_edges), alpha) for _ in range(iters)]
        conf = check_confluence(rand, seeds)
        choices = check_confluence([t for t in rand if len(t.edges) <= 4], name="split-choices",
                                   all_choices=True)
        slides = check_slide_suite(t for t in rand if len(t.nodes) <= 5)
        nu_trees = nu_instances(rng, iters, max_edges)
    reports += [conf, choices, slides, check_nu_suite(nu_trees), check_negative_control()]
    return reports
