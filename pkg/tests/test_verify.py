import random

from orbisum import generate as gen
from orbisum import verify
from orbisum.cli import main


def test_generator_counts():
    assert [len(gen.free_trees(n)) for n in range(1, 9)] == [1, 1, 1, 2, 3, 6, 11, 23]
    assert [len(gen.cn_trees(k)) for k in range(1, 6)] == [3, 6, 18, 54, 189]


def test_realization_trees_are_distinct():
    trees = list(gen.realization_trees(2))
    sigs = {gen.realization_signature(t) for t in trees}
    assert len(sigs) == len(trees)
    rng = random.Random(2)
    for t in trees[:200]:
        s = gen.shuffled_realization(rng, t)
        assert gen.realization_signature(s) in sigs


def test_expected_classification_table():
    assert verify.expected_classification(0, (2, 3)) == "bad"
    assert verify.expected_classification(0, (2, 3, 5)) == "spherical"
    assert verify.expected_classification(1, ()) == "other"


def test_slide_closure_of_a_chain():
    k = gen.K
    from orbisum.core2d import SphericalType
    from orbisum.sumtree import make_tree

    c2 = SphericalType.cyclic(2)
    t = make_tree([("a", k), ("b", k), ("c", k)], [("b", "a", c2, 0, 0), ("c", "b", c2, 0, 0)])
    # the three edge sets of a tree on three nodes are all reachable
    assert len(verify.slide_closure(t)) == 3


def test_run_all_exhaustive_two_edges():
    reports = verify.run_all(2, exhaustive=True)
    assert [r.name for r in reports if not r.ok] == []
    assert all(r.instances > 0 for r in reports)


def test_cli_verify_five_edges_exhaustive(capsys):
    assert main(["verify", "--max-edges", "5", "--exhaustive"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "suites: 9; failed: 0"
