import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from orbisum import generate as gen
from orbisum.core2d import SphericalType
from orbisum.sumtree import canonicalize, efficiency_violations, validate
from orbisum.textfmt import Document, ParseError, parse, serialize

FIXTURES = sorted((Path(__file__).parent.parent / "fixtures").glob("*.orb"))

EXAMPLE = """
atom Kp { circle 3 }   # a knot with cone order 3
realization X {
  node a = S3c(3)
  node b = S3c(5)
  node k = Kp
  sum b -> a : ordinary
  sum k -> a : cyclic(3) at k.c0, a.c0
}
"""


def test_empty_input():
    assert parse("") == Document()
    assert parse("  # only a comment\n") == Document()


def test_example_parses():
    doc = parse(EXAMPLE)
    t = doc.realization("X")
    assert [n for n, _ in t.nodes] == ["a", "b", "k"]
    assert [e.sum_type for e in t.edges] == [SphericalType.ordinary(), SphericalType.cyclic(3)]
    assert validate(t) == []
    assert [n for n, _ in efficiency_violations(t)] == ["a"]
    assert str(canonicalize(t)) == "summands: Kp, S3c(5); labels: ordinary"


def test_inferred_attachment():
    t = parse(EXAMPLE.replace(" at k.c0, a.c0", "")).realization("X")
    assert t.edges[1].at_new.component == 0 and t.edges[1].at_old.component == 0


@pytest.mark.parametrize("text, line", [
    ("atom A { circle 1 }", 1),
    ("atom A { circle 3 }\natom A { circle 3 }", 2),
    ("realization R {\n  node a = Nope\n}", 2),
    ("atom S3o { }", 1),
    ("atom G { graph { edges 2 3 7; vertices (2,3,7) } }", 1),
    ("realization R { node a = S3v(2,3,6) }", 1),
    ("realization R { node a = S3o\n sum b -> a : ordinary }", 2),
    ("atom A { circle 3 ", 1),
    ("atom A { circle 3 } @", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line
    assert exc.value.column >= 1


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    doc = parse(path.read_text())
    text = serialize(doc)
    assert parse(text) == doc
    assert serialize(parse(text)) == text


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    trees = [gen.shuffled_realization(rng, gen.random_realization(
        rng, rng.randint(0, 6), gen.ALPHABET + gen.IDENTITIES)) for _ in range(3)]
    doc = Document(
        atoms=gen.ALPHABET,
        realizations=tuple((f"R{i}", t) for i, t in enumerate(trees)),
    )
    assert parse(serialize(doc)) == doc
