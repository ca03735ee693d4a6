import pytest

from distgraph import (
    DistinguishedGraph,
    Edge,
    Family,
    HalfEdge,
    InvalidReferenceError,
    Letter,
    Patch,
    ValidationError,
    corners,
    degree,
    graph,
    make_word,
    validate,
)
from distgraph.model import ensure_valid, family_degree, graph_connected


def test_make_word_parses_exponents():
    assert make_word("u v^-1 w^+1") == (Letter("u", 1), Letter("v", -1), Letter("w", 1))
    assert make_word([("u", 1), ("v", -1)]) == (Letter("u", 1), Letter("v", -1))


def test_letter_ends():
    assert Letter("u", 1).leaving == HalfEdge("u", "tail")
    assert Letter("u", 1).arriving == HalfEdge("u", "head")
    assert Letter("u", -1).leaving == HalfEdge("u", "head")
    assert Letter("u", -1).inverse() == Letter("u", 1)
    assert str(Letter("u", -1)) == "u^-1"


def test_fixtures_are_valid(A, B, C, D):
    for g in (A, B, C, D):
        assert validate(g).ok


def test_degree_counts_loop_twice(A, B):
    assert degree(A, "P") == 4
    assert degree(B, "P") == 2
    assert family_degree(A, "P") == (2, 2)


def test_degree_unknown_vertex(A):
    with pytest.raises(InvalidReferenceError):
        degree(A, "Z")


def test_corners_of_fix_a(A):
    got = {(c.arriving, c.leaving) for c in corners(A)}
    assert got == {
        (HalfEdge("u", "head"), HalfEdge("v", "tail")),
        (HalfEdge("v", "head"), HalfEdge("u", "head")),
        (HalfEdge("u", "tail"), HalfEdge("v", "head")),
        (HalfEdge("v", "tail"), HalfEdge("u", "tail")),
    }
    assert all(c.vertex == "P" for c in corners(A))


def test_single_letter_word_has_one_corner(B):
    cs = [c for c in corners(B) if c.patch == 0]
    assert len(cs) == 1
    assert cs[0].arriving == HalfEdge("u", "head") and cs[0].leaving == HalfEdge("u", "tail")


def test_dangling_reference_reported():
    g = graph(["P"], [("u", "U", "P", "P")], [(0, ["u x"])])
    assert "dangling_edge_reference" in validate(g).kinds()


def test_broken_chaining_reported():
    g = graph(["P", "Q"], [("u", "U", "P", "Q"), ("v", "V", "P", "P")], [(0, ["u v u^-1 v^-1"])])
    assert "broken_chaining" in validate(g).kinds()


def test_empty_patch_and_word_reported():
    g = DistinguishedGraph(("P",), (Edge("u", Family.U, "P", "P"),), (Patch(0, ()), Patch(0, ((),))))
    assert {"empty_patch", "empty_word"} <= validate(g).kinds()


def test_disconnected_complex_reported():
    g = graph(["P", "Q"], [("u", "U", "P", "P"), ("v", "V", "Q", "Q")],
              [(0, ["u"]), (0, ["u^-1"]), (0, ["v"]), (0, ["v^-1"])])
    assert validate(g).kinds() == {"disconnected_complex"}


def test_all_problems_listed():
    g = DistinguishedGraph(("P", "P"), (Edge("u", Family.U, "P", "Q"),), (Patch(-1, ((Letter("u", 2),),)),))
    assert {"duplicate_vertex", "unknown_vertex", "negative_genus", "bad_exponent"} <= validate(g).kinds()


def test_no_edges_rejected():
    g = DistinguishedGraph(("P",), (), ())
    assert "no_edges" in validate(g).kinds()


def test_ensure_valid_raises_with_problems():
    g = graph(["P"], [("u", "U", "P", "P")], [(0, ["u x"])])
    with pytest.raises(ValidationError) as info:
        ensure_valid(g)
    assert info.value.problems[0].kind == "dangling_edge_reference"


def test_fix_b_graph_is_disconnected_but_valid(B):
    assert validate(B).ok
    assert not graph_connected(B)


def test_family_helpers():
    assert Family.U is Family.UNSTABLE
    assert Family("V").other() is Family.U
    assert str(Family.V) == "V"
