"""
Tests for graphs, cycles, plane embeddings and the input formats:
- Graph construction and structural operations
- Cycle search and alternating cycles
- Rotation systems, face tracing and planarity
- Graph and PD text parsing with line/column diagnostics
"""

import json
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.cycles import CycleWitness, find_alternating_cycle, find_cycle, iter_cycles
from core.exceptions import EmbeddingError, GraphError, ParseError
from core.graph import (
    SignedBipartiteGraph,
    attach_pendant,
    block_sum,
    blocks,
    bridge_join,
    collapse_parallel,
    component_count,
    components,
    contract_vertex,
    delete_edges,
    delete_vertex,
    disjoint_union,
    forget_signs,
    is_forest,
    is_homogeneous,
    parallel_classes,
    with_signs,
)
from core.median import PlaneEmbedding
from utils.formats import (
    DIAGRAM_KIND,
    GRAPH_KIND,
    detect_kind,
    format_graph_text,
    graph_payload,
    load_graph,
    load_input,
    parse_graph_json,
    parse_graph_text,
    parse_pd_text,
)

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

# Test markers
PASS = "[PASS]"
FAIL = "[FAIL]"
INFO = "[INFO]"


def print_test(message, success=None):
    """Print test result."""
    if success is None:
        print(f"{INFO} {message}")
    elif success:
        print(f"{PASS} {message}")
    else:
        print(f"{FAIL} {message}")


def fixture(name):
    """Load a graph fixture and its rotation system."""
    return load_graph(os.path.join(FIXTURES, name))


def expect_error(error_type, func, *args):
    """Call func and return the raised error; fail if nothing is raised."""
    try:
        func(*args)
    except error_type as e:
        return e
    raise AssertionError(f"{func.__name__} did not raise {error_type.__name__}")


# ---------------------------------------------------------------- graphs

def test_build_defaults():
    """Edge ids default to the 1-based position and signs to +1."""
    g = SignedBipartiteGraph.build(["e1"], ["v1", "v2"], [("e1", "v1"), ("e1", "v2", -1)])
    assert g.edge_ids == ("1", "2")
    assert g.edge("1").sign == 1
    assert g.edge("2").sign == -1
    assert g.vertex_count == 3
    assert g.neighbors("e1") == ("v1", "v2")
    assert g.degree("e1") == 2
    assert [edge.id for edge in g.negative_edges] == ["2"]
    assert SignedBipartiteGraph.from_dict(g.to_dict()) == g
    print_test("Graph construction defaults", True)


def test_build_rejects_bad_input():
    """Duplicate labels, wrong classes, duplicate ids and bad signs are rejected."""
    expect_error(GraphError, SignedBipartiteGraph.build, ["a"], ["a"], [])
    expect_error(GraphError, SignedBipartiteGraph.build, ["e1"], ["v1"], [("v1", "e1")])
    expect_error(GraphError, SignedBipartiteGraph.build, ["e1"], ["v1"], [("e1", "v1", 1, "x"), ("e1", "v1", 1, "x")])
    expect_error(GraphError, SignedBipartiteGraph.build, ["e1"], ["v1"], [("e1", "v1", 0)])
    g = SignedBipartiteGraph.build(["e1"], ["v1"], [("e1", "v1")])
    expect_error(GraphError, g.edge, "missing")
    expect_error(GraphError, g.color_of, "missing")
    print_test("Invalid graphs rejected", True)


def test_components_and_forests():
    """Component splitting on the forest fixture."""
    g, _ = fixture("forest.graph")
    parts = components(g)
    assert component_count(g) == 3
    assert [part.vertex_count for part in parts] == [3, 2, 1]
    assert is_forest(g)

    k23, _ = fixture("k23.graph")
    assert not is_forest(k23)
    assert is_forest(delete_vertex(k23, "e2"))
    print_test("Components and forests", True)


def test_delete_keeps_vertices():
    """Deleting edges never removes vertices."""
    g, _ = fixture("hexagon.graph")
    smaller = delete_edges(g, ["h1", "h4"])
    assert smaller.vertex_count == 6
    assert smaller.edge_count == 4
    assert component_count(smaller) == 2
    expect_error(GraphError, delete_edges, g, ["nope"])
    print_test("Edge deletion keeps every vertex", True)


def test_sign_operations():
    """forget_signs and with_signs."""
    g, _ = fixture("hub_negative.graph")
    assert len(g.negative_edges) == 3
    assert forget_signs(g).is_all_positive()
    flipped = with_signs(g, {"h1": -1, "n1": 1})
    assert flipped.edge("h1").sign == -1
    assert flipped.edge("n1").sign == 1
    assert flipped.edge("n2").sign == -1
    print_test("Sign operations", True)


def test_block_sum_and_union():
    """One-vertex sums and disjoint unions rename clashing labels of the second graph."""
    k23, _ = fixture("k23.graph")
    hexagon, _ = fixture("hexagon.graph")

    summed = block_sum(k23, hexagon, "e1", "e1")
    assert summed.vertex_count == 10
    assert summed.edge_count == 12
    assert component_count(summed) == 1
    assert "2.v1" in summed.v_vertices
    assert summed.edge("h1").e_endpoint == "e1"
    expect_error(GraphError, block_sum, k23, hexagon, "e1", "v1")

    union = disjoint_union(k23, hexagon)
    assert union.vertex_count == 11
    assert component_count(union) == 2
    print_test("Block sum and disjoint union", True)


def test_contract_and_pendants():
    """Vertex contraction, pendant vertices, bridges and parallel classes."""
    hexagon, _ = fixture("hexagon.graph")
    contracted = contract_vertex(hexagon, "v1")
    assert contracted.e_vertices == ("e1", "e3")
    assert contracted.v_vertices == ("v2", "v3")
    assert contracted.edge_count == 4
    assert contracted.edge("h3").e_endpoint == "e1"

    k23, _ = fixture("k23.graph")
    enlarged = attach_pendant(k23, "v1", [1, -1], "p")
    assert enlarged.e_vertices[-1] == "p"
    assert enlarged.degree("p") == 2
    assert [edge.sign for edge in enlarged.incident_edges("p")] == [1, -1]

    joined = bridge_join(hexagon, hexagon, "e1", "v1", sign=-1)
    assert joined.vertex_count == 12
    assert joined.edge_count == 13
    assert joined.edge("bridge").sign == -1
    assert component_count(joined) == 1
    expect_error(GraphError, bridge_join, hexagon, hexagon, "e1", "e1")

    trefoil, _ = fixture("trefoil.graph")
    assert len(parallel_classes(trefoil)) == 1
    assert collapse_parallel(trefoil).edge_count == 1
    print_test("Contraction, pendants and bridges", True)


def test_blocks_and_homogeneity():
    """Blocks of 2-connected graphs and trees; homogeneity per block."""
    hub, _ = fixture("hub.graph")
    assert len(blocks(hub)) == 1
    assert is_homogeneous(hub)

    hub_negative, _ = fixture("hub_negative.graph")
    assert not is_homogeneous(hub_negative)

    tree, _ = fixture("tree.graph")
    assert len(blocks(tree)) == 4
    assert is_homogeneous(with_signs(tree, {"1": -1, "3": -1}))

    summed = block_sum(fixture("hexagon.graph")[0], with_signs(fixture("k23.graph")[0], {
        "a1": -1, "a2": -1, "a3": -1, "b1": -1, "b2": -1, "b3": -1,
    }), "e1", "e1")
    assert len(blocks(summed)) == 2
    assert is_homogeneous(summed)
    print_test("Blocks and homogeneity", True)


# ---------------------------------------------------------------- cycles

def test_find_cycle():
    """Shortest cycles, parallel pairs count as cycles of length 2."""
    hopf, _ = fixture("hopf.graph")
    cycle = find_cycle(hopf)
    assert cycle.length == 2
    assert set(cycle.edge_ids) == {"1", "2"}
    assert cycle.is_valid_in(hopf)

    k23, _ = fixture("k23.graph")
    cycle = find_cycle(k23)
    assert cycle.length == 4
    assert cycle.is_valid_in(k23)

    tree, _ = fixture("tree.graph")
    assert find_cycle(tree) is None
    print_test("Shortest cycle search", True)


def test_iter_cycles():
    """Each simple cycle is reported once."""
    k23, _ = fixture("k23.graph")
    cycles = list(iter_cycles(k23))
    assert len(cycles) == 3
    assert len({frozenset(c.edge_ids) for c in cycles}) == 3
    assert all(c.is_valid_in(k23) for c in cycles)

    trefoil, _ = fixture("trefoil.graph")
    assert len(list(iter_cycles(trefoil))) == 3

    hexagon, _ = fixture("hexagon.graph")
    assert len(list(iter_cycles(hexagon))) == 1
    print_test("Cycle enumeration", True)


def test_alternating_cycles():
    """Alternating cycles are found exactly when signs alternate around some cycle."""
    hopf, _ = fixture("hopf.graph")
    assert find_alternating_cycle(hopf) is None
    mixed = with_signs(hopf, {"2": -1})
    witness = find_alternating_cycle(mixed)
    assert witness is not None and witness.is_alternating(mixed)

    hub_negative, _ = fixture("hub_negative.graph")
    assert find_alternating_cycle(hub_negative) is None

    hexagon, _ = fixture("hexagon.graph")
    planted = with_signs(hexagon, {"h2": -1, "h4": -1, "h6": -1})
    witness = find_alternating_cycle(planted)
    assert witness is not None
    assert witness.length == 6
    assert len(list(iter_cycles(planted, alternating=True))) == 1
    print_test("Alternating cycle detection", True)


def test_cycle_witness_validation():
    """Malformed witnesses are recognised."""
    k23, _ = fixture("k23.graph")
    good = CycleWitness(("e1", "v1", "e2", "v2"), ("a1", "b1", "b2", "a2"))
    assert good.is_valid_in(k23)
    assert good.alternate_edges(0) == ("a1", "b2")
    assert good.alternate_edges(1) == ("b1", "a2")
    assert not CycleWitness(("e1", "v1", "e2"), ("a1", "b1", "b2")).is_valid_in(k23)
    assert not CycleWitness(("e1", "v1", "e2", "v2"), ("a1", "b1", "b2", "a3")).is_valid_in(k23)
    print_test("Cycle witness validation", True)


# ---------------------------------------------------------------- embeddings

def test_plane_embeddings():
    """Face counts of the shipped plane graphs satisfy Euler's formula."""
    k23, emb = fixture("k23.graph")
    full = emb.completed(k23)
    assert len(full.faces(k23)) == 3
    assert full.is_planar(k23)

    for name, faces in (("hub.graph", 4), ("hub_negative.graph", 4), ("hexagon.graph", 2), ("trefoil.graph", 3)):
        g, given = fixture(name)
        full = (given or PlaneEmbedding()).completed(g)
        full.check(g)
        assert len(full.faces(g)) == faces, name
    print_test("Plane embeddings of fixtures", True)


def test_nonplanar_rotation():
    """K(2,3) with both rotations in the same sense has genus one."""
    k23, _ = fixture("k23.graph")
    twisted = PlaneEmbedding.from_mapping({"e1": ["a1", "a2", "a3"], "e2": ["b1", "b2", "b3"]})
    full = twisted.completed(k23)
    assert len(full.faces(k23)) == 1
    assert not full.is_planar(k23)
    expect_error(EmbeddingError, full.check, k23)
    print_test("Non-planar rotation detected", True)


def test_embedding_errors():
    """Missing rotations and wrong edge lists."""
    k23, _ = fixture("k23.graph")
    expect_error(EmbeddingError, PlaneEmbedding().completed, k23)
    wrong = PlaneEmbedding.from_mapping({"e1": ["a1", "a2"], "e2": ["b1", "b2", "b3"]})
    expect_error(EmbeddingError, wrong.completed(k23).validate, k23)
    unknown = PlaneEmbedding.from_mapping({"zz": []})
    expect_error(EmbeddingError, unknown.completed, k23)
    print_test("Embedding errors", True)


# ---------------------------------------------------------------- formats

def test_parse_graph_text():
    """Declarations, default ids, comments and rotations."""
    text = "# demo\nE e1 e2\nV v1\n+ e1 v1\n- e2 v1 x  # named\nR v1 : 1 x\n"
    g, emb = parse_graph_text(text)
    assert g.edge_ids == ("1", "x")
    assert g.edge("x").sign == -1
    assert emb.at("v1") == ("1", "x")

    g2, emb2 = parse_graph_text(format_graph_text(g, emb))
    assert g2 == g and emb2 == emb

    plain, none = parse_graph_text("E e1\nV v1\n+ e1 v1\n")
    assert none is None and plain.edge_count == 1
    print_test("Graph text parsing", True)


def test_parse_graph_errors():
    """Every error carries line and column."""
    cases = [
        ("E e1\nV v1\n+ e1 x1\n", 3, 6),
        ("E e1\nV e1\n", 2, 3),
        ("E e1\nV v1\n+ v1 e1\n", 3, 3),
        ("E e1\nV v1\n+ e1 v1 a\n+ e1 v1 a\n", 4, 9),
        ("E e1\nV v1\nQ e1\n", 3, 1),
        ("E e1\nV v1\n+ e1 v1\nR e1: 7\n", 4, 7),
        ("E e1\nV v1\n+ e1 v1\n+ e1 v1\nR e1: 1 1\n", 5, 9),
        ("E e1\nV v1\n+ e1 v1\n+ e1 v1\nR e1: 1\n", 5, 3),
        ("E e1\nV v1\n+ e1 v1\nR e1: 1\nR e1: 1\n", 5, 3),
    ]
    for text, line, column in cases:
        error = expect_error(ParseError, parse_graph_text, text, "t.graph")
        assert (error.line, error.column) == (line, column), (text, error.line, error.column)
        assert str(error).startswith(f"t.graph:{line}:{column}: ")
    print_test(f"Graph parse errors ({len(cases)} cases)", True)


def test_parse_graph_json():
    """JSON graphs with rotations; unsupported versions are refused."""
    k23, emb = fixture("k23.graph")
    text = json.dumps(graph_payload(k23, emb))
    g, parsed = parse_graph_json(text)
    assert g == k23
    assert parsed.at("e2") == ("b3", "b2", "b1")

    expect_error(ParseError, parse_graph_json, '{"format": 2, "E": []}')
    error = expect_error(ParseError, parse_graph_json, '{"E": [}')
    assert error.line == 1
    print_test("Graph JSON parsing", True)


def test_parse_pd_text():
    """PD crossings, loops, hints and default crossing ids."""
    d = parse_pd_text("X 1 5 2 4 +\nX 3 1 4 6 +\nX 5 3 6 2 +\nO 7\n")
    assert [c.id for c in d.crossings] == ["x1", "x2", "x3"]
    assert d.component_count == 2
    assert d.writhe == 3

    error = expect_error(ParseError, parse_pd_text, "X 1 2 3 4 *\n")
    assert (error.line, error.column) == (1, 11)
    error = expect_error(ParseError, parse_pd_text, "O 1\nC 1 W e1\n")
    assert (error.line, error.column) == (2, 5)
    # wrong sign for the orientation
    expect_error(ParseError, parse_pd_text, "X 1 5 2 4 -\nX 3 1 4 6 +\nX 5 3 6 2 +\n")
    print_test("PD text parsing", True)


def test_detect_kind():
    """File kind from extension or content."""
    assert detect_kind("a.graph", "") == GRAPH_KIND
    assert detect_kind("a.pd", "") == DIAGRAM_KIND
    assert detect_kind("a.txt", "# c\nX 1 2 2 1 +\n") == DIAGRAM_KIND
    assert detect_kind("a.txt", "E e1\n") == GRAPH_KIND
    assert detect_kind("a.json", '{"crossings": []}') == DIAGRAM_KIND
    kind, d, _ = load_input(os.path.join(FIXTURES, "trefoil.pd"))
    assert kind == DIAGRAM_KIND and d.crossing_count == 3
    print_test("Input kind detection", True)


TESTS = [
    test_build_defaults,
    test_build_rejects_bad_input,
    test_components_and_forests,
    test_delete_keeps_vertices,
    test_sign_operations,
    test_block_sum_and_union,
    test_contract_and_pendants,
    test_blocks_and_homogeneity,
    test_find_cycle,
    test_iter_cycles,
    test_alternating_cycles,
    test_cycle_witness_validation,
    test_plane_embeddings,
    test_nonplanar_rotation,
    test_embedding_errors,
    test_parse_graph_text,
    test_parse_graph_errors,
    test_parse_graph_json,
    test_parse_pd_text,
    test_detect_kind,
]


def run_all_tests():
    """Run all tests and return a process exit code."""
    print("=" * 70)
    print("Graph, Cycle and Format Tests")
    print("=" * 70)

    results = []
    for test in TESTS:
        try:
            test()
            results.append(True)
        except Exception as e:
            print_test(f"{test.__name__}: {e!r}", False)
            results.append(False)

    print("=" * 70)
    passed = sum(results)
    if passed == len(results):
        print(f"All tests passed! ({passed}/{len(results)})")
        return 0
    print(f"Some tests failed: {passed}/{len(results)} passed")
    return 1


if __name__ == "__main__":
    sys.exit(run_all_tests())
