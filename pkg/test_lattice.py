"""
Tests for root polytope lattice counting and Ehrhart data:
- Counts at small dilations
- Binomial-basis coefficients equal the interior polynomial
- Ehr(x) = I'(x) / (1 - x)^(|E| + |V| - 1)
- Weight systems behind lattice points
- Signed Ehrhart series
"""

import os
import random
import sys
from fractions import Fraction

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.cycles import find_cycle
from core.exceptions import GraphError
from core.generators import random_signed_graph
from core.graph import SignedBipartiteGraph, collapse_parallel, disjoint_union, forget_signs, with_signs
from core.interior import interior_prime
from core.lattice import (
    EhrhartCounter,
    LatticePoint,
    WeightSystem,
    compositions,
    count_lattice_points,
    ehrhart_data,
    ehrhart_series,
    interior_via_ehrhart,
    lattice_points,
    signed_ehrhart_counts,
    signed_ehrhart_poly_coeffs,
    signed_ehrhart_series,
    solve_binomial_basis,
)
from core.poly import IntPolynomial, series_from_poly_over_power
from core.signed import signed_interior
from utils.formats import load_graph

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


def graph(name):
    return load_graph(os.path.join(FIXTURES, name))[0]


def test_compositions():
    """Bounded compositions."""
    assert sorted(compositions(2, [1, 1, 1])) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert list(compositions(3, [1, 1])) == []
    assert list(compositions(0, [])) == [()]
    assert len(list(compositions(4, [4, 4, 4]))) == 15
    print_test("Bounded compositions", True)


def test_small_dilations():
    """s = 0 gives one point, s = 1 one point per adjacent pair."""
    for name in ("k23.graph", "hexagon.graph", "hub.graph", "trefoil.graph", "forest.graph"):
        g = graph(name)
        assert count_lattice_points(g, 0) == 1, name
        assert count_lattice_points(g, 1) == collapse_parallel(g).edge_count, name
    assert count_lattice_points(SignedBipartiteGraph.build(["e1"], ["v1"], []), 3) == 0

    points = lattice_points(graph("hopf.graph"), 4)
    assert len(points) == 1
    assert points[0].to_dict() == {"E": {"e1": 4}, "V": {"v1": 4}}
    assert all(p.is_balanced() and p.level == 2 for p in lattice_points(graph("k23.graph"), 2))
    print_test("Counts at small dilations", True)


def test_ehrhart_data_k23():
    """K(2,3): counts 1, 6, 18, 40 and basis coefficients 1, 2, 0, 0."""
    data = ehrhart_data(graph("k23.graph"))
    assert data.degree_bound == 3
    assert data.counts == (1, 6, 18, 40)
    assert data.basis_coeffs == (Fraction(1), Fraction(2), Fraction(0), Fraction(0))
    assert data.interior_polynomial().coeffs == (1, 2)
    assert data.value(4) == 75
    assert data.to_dict()["basis_coeffs"] == [1, 2, 0, 0]
    print_test("Ehrhart data of K(2,3)", True)


def test_solve_binomial_basis():
    """Forward substitution recovers the coefficients exactly."""
    assert solve_binomial_basis([1, 6, 18, 40], 3) == (1, 2, 0, 0)
    assert solve_binomial_basis([1, 3, 6], 2) == (1, 0, 0)
    try:
        solve_binomial_basis([1, 2], 3)
    except ValueError:
        pass
    else:
        raise AssertionError("short value list accepted")
    print_test("Binomial basis solver", True)


def test_ehrhart_matches_recursion_on_fixtures():
    """Binomial-basis coefficients agree with the cycle-deletion recursion."""
    for name in ("k23.graph", "hexagon.graph", "tree.graph", "forest.graph", "hopf.graph", "trefoil.graph"):
        g = forget_signs(graph(name))
        assert interior_via_ehrhart(g) == interior_prime(g), name
    isolated = SignedBipartiteGraph.build(["e1", "e2"], ["v1"], [])
    assert interior_via_ehrhart(isolated) == interior_prime(isolated)
    try:
        ehrhart_data(SignedBipartiteGraph.build([], [], []))
    except GraphError:
        pass
    else:
        raise AssertionError("empty graph accepted")
    print_test("Ehrhart route matches recursion on fixtures", True)


def test_edgeless_graphs():
    """Without edges Ehr = 1 and I' = (1 - x)^(k - 1)."""
    for e_labels, v_labels in ((["e1"], []), (["e1"], ["v1"]), (["e1", "e2"], ["v1"])):
        g = SignedBipartiteGraph.build(e_labels, v_labels, [])
        k = g.vertex_count
        data = ehrhart_data(g)
        assert data.interior_polynomial() == IntPolynomial.one_minus_x_power(k - 1)
        assert [data.value(s) for s in range(5)] == [1, 0, 0, 0, 0]
        assert ehrhart_series(g, 5).integer_coeffs() == (1, 0, 0, 0, 0, 0)
        expected = series_from_poly_over_power(interior_prime(g), k - 1, 5)
        assert ehrhart_series(g, 5) == expected, k
        assert signed_ehrhart_counts(g, 3) == (1, 0, 0, 0)
    print_test("Edgeless graphs follow Ehr = 1", True)


def test_ehrhart_matches_recursion_random():
    """Both routes agree on 50 random graphs."""
    rng = random.Random(2024)
    for _ in range(50):
        g = forget_signs(random_signed_graph(rng, max_edges=8, max_side=3))
        assert interior_via_ehrhart(g) == interior_prime(g), repr(g)
    print_test("Ehrhart route matches recursion (50 random graphs)", True)


def test_series_identity():
    """Ehr(x) agrees with I'(x) / (1 - x)^n up to x^8."""
    for name in ("k23.graph", "hexagon.graph", "tree.graph", "forest.graph", "hopf.graph", "hub.graph"):
        g = graph(name)
        n = g.vertex_count - 1
        expected = series_from_poly_over_power(interior_prime(forget_signs(g)), n, 8)
        assert ehrhart_series(g, 8) == expected, name

    rng = random.Random(2025)
    for _ in range(50):
        g = forget_signs(random_signed_graph(rng, max_edges=8, max_side=3))
        expected = series_from_poly_over_power(interior_prime(g), g.vertex_count - 1, 8)
        assert ehrhart_series(g, 8) == expected, repr(g)
    print_test("Series identity up to x^8 (fixtures and 50 random graphs)", True)


def test_direct_counts_match_interpolation():
    """Counting beyond the degree bound gives the interpolated values."""
    for name in ("k23.graph", "hexagon.graph"):
        g = graph(name)
        assert ehrhart_series(g, 6, direct=True) == ehrhart_series(g, 6), name
    print_test("Direct counting matches interpolation", True)


def test_disjoint_union_multiplicative():
    """Ehr(G1 + G2) = Ehr(G1) Ehr(G2)."""
    k23, hopf = graph("k23.graph"), graph("hopf.graph")
    union = disjoint_union(k23, hopf)
    assert ehrhart_series(union, 5) == ehrhart_series(k23, 5) * ehrhart_series(hopf, 5)

    tree = graph("tree.graph")
    union = disjoint_union(tree, hopf)
    assert ehrhart_series(union, 5) == ehrhart_series(tree, 5) * ehrhart_series(hopf, 5)

    # 25 pairs, at most 8 edges in each union
    rng = random.Random(31)
    for _ in range(25):
        g1 = random_signed_graph(rng, max_edges=4, max_side=2)
        g2 = random_signed_graph(rng, max_edges=4, max_side=2)
        union = disjoint_union(g1, g2)
        assert ehrhart_series(union, 4) == ehrhart_series(g1, 4) * ehrhart_series(g2, 4), (g1, g2)
    print_test("Disjoint unions multiply Ehrhart series (fixtures and 50 random graphs)", True)


def test_weight_systems():
    """Each lattice point is realised by weights with matching marginals."""
    g = graph("k23.graph")
    counter = EhrhartCounter(g)
    cycle = find_cycle(g)
    for point in counter.points(3):
        weights = counter.weight_system_for(point)
        assert weights.total == 3
        e_sums, v_sums = weights.marginals(g)
        assert e_sums == {label: Fraction(value) for label, value in point.e_coords}
        assert v_sums == {label: Fraction(value) for label, value in point.v_coords}

        for offset in (0, 1):
            moved = weights.cycle_change(cycle, offset)
            assert moved.marginals(g) == (e_sums, v_sums)
            assert moved.total == 3
            assert min(moved.weight(edge_id) for edge_id in cycle.alternate_edges(offset)) == 0
    print_test("Weight systems and cycle changes", True)


def test_weight_system_validation():
    """Negative weights and infeasible points are refused."""
    try:
        WeightSystem.from_mapping({"a1": -1})
    except ValueError:
        pass
    else:
        raise AssertionError("negative weight accepted")

    g = graph("tree.graph")
    counter = EhrhartCounter(g)
    # e1 is adjacent to v1 only, so (e1: 1, v2: 1) is not in Q_G
    bad = LatticePoint((("e1", 1), ("e2", 0), ("e3", 0)), (("v1", 0), ("v2", 1)))
    assert not counter.is_feasible([1, 0, 0], [0, 1])
    try:
        counter.weight_system_for(bad)
    except ValueError:
        pass
    else:
        raise AssertionError("infeasible point accepted")
    assert WeightSystem.from_mapping({"x": Fraction(1, 2)}).to_dict() == {"weights": {"x": "1/2"}}
    print_test("Weight system validation", True)


def test_signed_series():
    """Ehr+(x) = I+(x) / (1 - x)^n; the negative-hub graph gives x^3 / (1 - x)^6."""
    hub_negative = graph("hub_negative.graph")
    expected = series_from_poly_over_power(IntPolynomial.monomial(3), 6, 4)
    assert signed_ehrhart_series(hub_negative, 4) == expected
    assert signed_ehrhart_series(hub_negative, 4).integer_coeffs() == (0, 0, 0, 1, 6)

    for name in ("k23.graph", "hexagon.graph", "tree.graph", "hopf.graph", "hub.graph"):
        g = graph(name)
        expected = series_from_poly_over_power(signed_interior(g), g.vertex_count - 1, 8)
        assert signed_ehrhart_series(g, 8) == expected, name

    rng = random.Random(4096)
    for _ in range(50):
        g = random_signed_graph(rng, max_edges=8, max_side=3, negative_probability=0.3)
        expected = series_from_poly_over_power(signed_interior(g), g.vertex_count - 1, 8)
        assert signed_ehrhart_series(g, 8) == expected, repr(g)
    print_test("Signed Ehrhart series identity (fixtures and 50 random graphs)", True)


def test_signed_coefficients():
    """Binomial-basis coefficients of eps+ equal the subset-sum I+."""
    k23 = graph("k23.graph")
    cases = [
        with_signs(k23, {"b1": -1, "b2": -1, "b3": -1}),
        with_signs(k23, {"a1": -1, "b2": -1}),
        with_signs(graph("hexagon.graph"), {"h2": -1, "h4": -1}),
        with_signs(graph("trefoil.graph"), {"1": -1, "2": -1, "3": -1}),
        with_signs(graph("tree.graph"), {"2": -1}),
    ]
    rng = random.Random(77)
    cases += [random_signed_graph(rng, max_edges=6, max_side=3) for _ in range(10)]
    for g in cases:
        assert signed_ehrhart_poly_coeffs(g) == signed_interior(g, use_shortcut=False), repr(g)

    counts = signed_ehrhart_counts(with_signs(graph("hopf.graph"), {"2": -1}), 3)
    assert counts == (0, 0, 0, 0)
    print_test(f"Signed Ehrhart coefficients ({len(cases)} graphs)", True)


TESTS = [
    test_compositions,
    test_small_dilations,
    test_ehrhart_data_k23,
    test_solve_binomial_basis,
    test_ehrhart_matches_recursion_on_fixtures,
    test_edgeless_graphs,
    test_ehrhart_matches_recursion_random,
    test_series_identity,
    test_direct_counts_match_interpolation,
    test_disjoint_union_multiplicative,
    test_weight_systems,
    test_weight_system_validation,
    test_signed_series,
    test_signed_coefficients,
]


def run_all_tests():
    """Run all tests and return a process exit code."""
    print("=" * 70)
    print("Lattice Point and Ehrhart Tests")
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
