"""Text format for atom and realization declarations.

::

    # comments run to end of line
    atom Kp { circle 3 }
    atom T { graph { edges 2 2 3; vertices (2,2,3) (2,2,3) } }
    realization A {
      node a = S3c(3)
      node b = S3c(5)
      node k = Kp
      sum b -> a : ordinary
      sum k -> a : cyclic(3) at k.c0, a.c0
    }

``sum X -> Y`` attaches the new node ``X`` to the part containing ``Y``; the
build order is the declaration order and the root is the first node unless a
``root`` line names another. ``cN`` addresses component ``N`` of the node's
atom when it is a circle, ``gN`` when it is a graph and ``gN.vM`` its vertex
``M``. Attachments left out are filled in when the choice is forced.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .atoms import Atom, AtomError, Circle, Graph, builtin_identity, is_reserved_name
from .core2d import SphericalType, is_admissible_vertex_triple
from .sumtree import Attachment, RealizationTree, SumEdge

KEYWORDS = {
    "atom", "realization", "node", "sum", "root", "circle", "graph", "edges",
    "vertices", "at", "ordinary", "cyclic", "vertex",
}


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line, self.column, self.message = line, column, message
        super().__init__(f"{line}:{column}: {message}")


@dataclass(frozen=True)
class Document:
    atoms: tuple[Atom, ...] = ()
    realizations: tuple[tuple[str, RealizationTree], ...] = ()

    def atom(self, name: str) -> Atom:
        for a in self.atoms:
            if a.name == name:
                return a
        raise KeyError(name)

    def realization(self, name: str) -> RealizationTree:
        for n, t in self.realizations:
            if n == name:
                return t
        raise KeyError(f"no realization named {name!r}")


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<arrow>->)|(?P<punct>[{}();:,.=])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                toks.append(_Tok(kind if kind != "arrow" else "punct", s, line, col))
            col += len(s)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.atoms: dict[str, Atom] = {}
        self.reals: dict[str, RealizationTree] = {}

    # token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(tok.line, tok.col, msg)

    def accept(self, text) -> bool:
        if self.tok.text == text and self.tok.kind in ("punct", "name"):
            self.i += 1
            return True
        return False

    def expect(self, text) -> _Tok:
        tok = self.tok
        if not self.accept(text):
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def integer(self) -> int:
        tok = self.tok
        if tok.kind != "int":
            raise self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text)

    def order(self) -> int:
        tok = self.tok
        p = self.integer()
        if p < 2:
            raise self.error(f"order must be at least 2, got {p}", tok)
        return p

    def ident(self, what="identifier") -> str:
        tok = self.tok
        if tok.kind != "name" or tok.text in KEYWORDS:
            raise self.error(f"expected {what}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def triple(self) -> tuple[int, int, int]:
        start = self.expect("(")
        p = self.order()
        self.expect(",")
        q = self.order()
        self.expect(",")
        r = self.order()
        self.expect(")")
        if not is_admissible_vertex_triple(p, q, r):
            raise self.error(f"inadmissible vertex triple ({p},{q},{r})", start)
        return (p, q, r)

    # grammar
    def document(self) -> Document:
        while self.tok.kind != "eof":
            if self.tok.text == "atom":
                self.atom_decl()
            elif self.tok.text == "realization":
                self.real_decl()
            else:
                raise self.error(f"expected 'atom' or 'realization', found {self.tok.text!r}")
        return Document(tuple(self.atoms.values()), tuple(self.reals.items()))

    def atom_decl(self):
        self.expect("atom")
        tok = self.tok
        name = self.ident("atom name")
        if is_reserved_name(name) or name in ("S3c", "S3v"):
            raise self.error(f"atom name {name!r} is reserved", tok)
        if name in self.atoms:
            raise self.error(f"atom {name!r} declared twice", tok)
        self.expect("{")
        comps = []
        while not self.accept("}"):
            ctok = self.tok
            if self.accept("circle"):
                comps.append(Circle(self.order()))
            elif self.accept("graph"):
                self.expect("{")
                self.expect("edges")
                edges = [self.order()]
                while self.tok.kind == "int":
                    edges.append(self.order())
                self.expect(";")
                self.expect("vertices")
                triples = [self.triple()]
                while self.tok.text == "(":
                    triples.append(self.triple())
                self.expect("}")
                try:
                    comps.append(Graph(tuple(edges), tuple(triples)))
                except AtomError as exc:
                    raise self.error(str(exc), ctok) from None
            else:
                raise self.error(f"expected 'circle', 'graph' or '}}', found {self.tok.text!r}")
            self.accept(";")
        self.atoms[name] = Atom(name, tuple(comps))

    def atomref(self) -> Atom:
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected an atom, found {tok.text or 'end of input'!r}")
        self.i += 1
        if tok.text == "S3o":
            return builtin_identity(SphericalType.ordinary())
        if tok.text == "S3c":
            self.expect("(")
            p = self.order()
            self.expect(")")
            return builtin_identity(SphericalType.cyclic(p))
        if tok.text == "S3v":
            return builtin_identity(SphericalType.vertex(*self.triple()))
        if tok.text not in self.atoms:
            raise self.error(f"unknown atom {tok.text!r}", tok)
        return self.atoms[tok.text]

    def sumtype(self) -> SphericalType:
        if self.accept("ordinary"):
            return SphericalType.ordinary()
        if self.accept("cyclic"):
            self.expect("(")
            p = self.order()
            self.expect(")")
            return SphericalType.cyclic(p)
        if self.accept("vertex"):
            return SphericalType.vertex(*self.triple())
        raise self.error(f"expected a sum type, found {self.tok.text or 'end of input'!r}")

    def compref(self, node: str, atom: Atom) -> Attachment:
        tok = self.tok
        text = self.ident("component reference")
        m = re.fullmatch(r"([cg])(\d+)", text)
        if not m:
            raise self.error(f"expected cN or gN, found {text!r}", tok)
        kind, idx = m.group(1), int(m.group(2))
        if idx >= len(atom.components):
            raise self.error(f"{atom.name} has no component {idx}", tok)
        comp = atom.components[idx]
        if (kind == "c") != isinstance(comp, Circle):
            want = "circle" if kind == "c" else "graph"
            raise self.error(f"component {idx} of {atom.name} is not a {want}", tok)
        vertex = None
        if kind == "g" and self.accept("."):
            vtok = self.tok
            vtext = self.ident("vertex reference")
            vm = re.fullmatch(r"v(\d+)", vtext)
            if not vm:
                raise self.error(f"expected vN, found {vtext!r}", vtok)
            vertex = int(vm.group(1))
        return Attachment(node, idx, vertex)

    def real_decl(self):
        self.expect("realization")
        tok = self.tok
        name = self.ident("realization name")
        if name in self.reals:
            raise self.error(f"realization {name!r} declared twice", tok)
        self.expect("{")
        nodes: dict[str, Atom] = {}
        edges: list[SumEdge] = []
        root = None
        while not self.accept("}"):
            if self.accept("node"):
                ntok = self.tok
                nid = self.ident("node id")
                if nid in nodes:
                    raise self.error(f"node {nid!r} declared twice", ntok)
                self.expect("=")
                nodes[nid] = self.atomref()
            elif self.accept("root"):
                rtok = self.tok
                root = self.ident("node id")
                if root not in nodes:
                    raise self.error(f"unknown node {root!r}", rtok)
            elif self.accept("sum"):
                edges.append(self.sum_decl(nodes, edges))
            else:
                raise self.error(f"expected 'node', 'sum', 'root' or '}}', found {self.tok.text!r}")
            self.accept(";")
        if not nodes:
            raise self.error(f"realization {name!r} has no nodes", tok)
        self.reals[name] = RealizationTree(tuple(nodes.items()), tuple(edges), root)

    def sum_decl(self, nodes, edges) -> SumEdge:
        ends = []
        for k in range(2):
            tok = self.tok
            nid = self.ident("node id")
            if nid not in nodes:
                raise self.error(f"unknown node {nid!r}", tok)
            ends.append(nid)
            if k == 0:
                self.expect("->")
        self.expect(":")
        st = self.sumtype()
        given = {}
        if self.accept("at"):
            while True:
                tok = self.tok
                nid = self.ident("node id")
                if nid not in ends:
                    raise self.error(f"{nid!r} is not an end of this sum", tok)
                self.expect(".")
                given[nid] = self.compref(nid, nodes[nid])
                if not self.accept(","):
                    break
        new, old = ends
        ats = []
        for n in (new, old):
            ats.append(given.get(n) or _infer(n, nodes[n], st, edges))
        return SumEdge(st, new, old, ats[0], ats[1])


def _infer(node: str, atom: Atom, st: SphericalType, edges) -> Attachment | None:
    if st.is_ordinary:
        return None
    if st.is_cyclic:
        cands = [i for i, c in enumerate(atom.components) if st.order in c.orders]
        return Attachment(node, cands[0]) if len(cands) == 1 else None
    used = {
        (e.attachment_at(node).component, e.attachment_at(node).vertex)
        for e in edges
        if e.sum_type.is_vertex and node in e.key and e.attachment_at(node) is not None
    }
    cands = [
        i for i, c in enumerate(atom.components)
        if isinstance(c, Graph) and st.orders in c.vertex_triples
    ]
    if len(cands) != 1:
        return None
    comp = atom.components[cands[0]]
    for vi, t in enumerate(comp.vertex_triples):
        if t == st.orders and (cands[0], vi) not in used:
            return Attachment(node, cands[0], vi)
    return None


def parse(text: str) -> Document:
    return _Parser(text).document()


# --------------------------------------------------------------------------
# serialization


def _atomref(a: Atom) -> str:
    return a.name


def _compref(at: Attachment, atom: Atom) -> str:
    comp = atom.components[at.component]
    if isinstance(comp, Circle):
        return f"{at.node}.c{at.component}"
    s = f"{at.node}.g{at.component}"
    return s if at.vertex is None else f"{s}.v{at.vertex}"


def serialize_atom(a: Atom) -> str:
    parts = []
    for c in a.components:
        if isinstance(c, Circle):
            parts.append(f"circle {c.order}")
        else:
            edges = " ".join(map(str, c.edge_orders))
            verts = " ".join("({},{},{})".format(*t) for t in c.vertex_triples)
            parts.append(f"graph {{ edges {edges}; vertices {verts} }}")
    body = "; ".join(parts)
    return f"atom {a.name} {{ {body} }}" if body else f"atom {a.name} {{ }}"


def serialize_realization(name: str, t: RealizationTree) -> str:
    lines = [f"realization {name} {{"]
    for n, a in t.nodes:
        lines.append(f"  node {n} = {_atomref(a)}")
    if t.nodes and t.root != t.nodes[0][0]:
        lines.append(f"  root {t.root}")
    for e in t.edges:
        s = f"  sum {e.new} -> {e.old} : {e.sum_type}"
        ats = [
            _compref(at, t.atom(n))
            for n, at in ((e.new, e.at_new), (e.old, e.at_old))
            if at is not None
        ]
        if ats:
            s += " at " + ", ".join(ats)
        lines.append(s)
    lines.append("}")
    return "\n".join(lines)


def serialize(doc: Document) -> str:
    """Text that :func:`parse` maps back to ``doc``.

    Atoms used by realizations but missing from ``doc.atoms`` are emitted too.
    """
    atoms = list(doc.atoms)
    names = {a.name for a in atoms}
    for _, t in doc.realizations:
        for _, a in t.nodes:
            if not a.is_identity and a.name not in names:
                atoms.append(a)
                names.add(a.name)
    chunks = [serialize_atom(a) for a in atoms]
    chunks += [serialize_realization(n, t) for n, t in doc.realizations]
    return "\n".join(chunks) + ("\n" if chunks else "")
