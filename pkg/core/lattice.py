"""
Root polytopes of bipartite graphs and their Ehrhart data.

The root polytope Q_G is the convex hull of the points e + v over the edges ev
of G. A lattice point (a, b) of s * Q_G (E-marginals a, V-marginals b, both
summing to s) is present exactly when some nonnegative edge weighting has
those vertex marginals, which is a transportation problem decided by max-flow.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterator, List, Mapping, Sequence, Tuple

import networkx as nx

from core.cycles import CycleWitness
from core.exceptions import GraphError
from core.graph import (
    SignedBipartiteGraph,
    components,
    delete_edges,
    forget_signs,
)
from core.poly import IntPolynomial, PowerSeriesTrunc
from utils.logger import get_logger


SOURCE = "source"
SINK = "sink"


@dataclass(frozen=True)
class LatticePoint:
    """Integer point of a dilated root polytope."""

    e_coords: Tuple[Tuple[str, int], ...]
    v_coords: Tuple[Tuple[str, int], ...]

    @property
    def level(self) -> int:
        return sum(value for _, value in self.e_coords)

    def is_balanced(self) -> bool:
        return self.level == sum(value for _, value in self.v_coords)

    def to_dict(self) -> Dict[str, Any]:
        return {"E": dict(self.e_coords), "V": dict(self.v_coords)}


@dataclass(frozen=True)
class WeightSystem:
    """Nonnegative rational weights on edges; the total is the dilation level."""

    weights: Tuple[Tuple[str, Fraction], ...]

    def __post_init__(self):
        normalized = tuple((edge_id, Fraction(w)) for edge_id, w in self.weights)
        for edge_id, w in normalized:
            if w < 0:
                raise ValueError(f"Negative weight {w} on edge {edge_id}")
        object.__setattr__(self, "weights", normalized)

    @classmethod
    def from_mapping(cls, weights: Mapping[str, Any]) -> "WeightSystem":
        return cls(tuple(weights.items()))

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def weight(self, edge_id: str) -> Fraction:
        return dict(self.weights).get(edge_id, Fraction(0))

    def marginals(self, g: SignedBipartiteGraph) -> Tuple[Dict[str, Fraction], Dict[str, Fraction]]:
        """Vertex sums of the weights, one map per color class."""
        e_sums = {label: Fraction(0) for label in g.e_vertices}
        v_sums = {label: Fraction(0) for label in g.v_vertices}
        for edge_id, w in self.weights:
            edge = g.edge(edge_id)
            e_sums[edge.e_endpoint] += w
            v_sums[edge.v_endpoint] += w
        return e_sums, v_sums

    def cycle_change(self, cycle: CycleWitness, offset: int = 1) -> "WeightSystem":
        """
        Move weight around a cycle without changing any vertex marginal.

        The minimum weight among the alternate edges at `offset` is subtracted
        from each of them and added to each of the other cycle edges, so at
        least one cycle edge ends with weight zero.
        """
        decreasing = set(cycle.alternate_edges(offset))
        increasing = set(cycle.alternate_edges(1 - offset))
        current = dict(self.weights)
        amount = min(current.get(edge_id, Fraction(0)) for edge_id in decreasing)
        for edge_id in decreasing:
            current[edge_id] = current.get(edge_id, Fraction(0)) - amount
        for edge_id in increasing:
            current[edge_id] = current.get(edge_id, Fraction(0)) + amount
        return WeightSystem(tuple(current.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weights": {
                edge_id: (w.numerator if w.denominator == 1 else f"{w.numerator}/{w.denominator}")
                for edge_id, w in self.weights
            }
        }


@dataclass(frozen=True)
class EhrhartData:
    """Lattice counts of s * Q_G for s = 0..d and the binomial-basis coefficients."""

    degree_bound: int
    counts: Tuple[int, ...]
    basis_coeffs: Tuple[Fraction, ...]

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.basis_coeffs)

    def value(self, s: int) -> int:
        """Ehrhart polynomial evaluated at s >= 0."""
        if s < len(self.counts):
            return self.counts[s]
        d = self.degree_bound
        if d < 0:
            return 0
        total = sum(a * comb(s + d - k, d) for k, a in enumerate(self.basis_coeffs))
        return int(total)

    def interior_polynomial(self) -> IntPolynomial:
        if not self.is_integral():
            raise ArithmeticError(f"Non-integral basis coefficients: {self.basis_coeffs}")
        return IntPolynomial(tuple(a.numerator for a in self.basis_coeffs))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree_bound": self.degree_bound,
            "counts": list(self.counts),
            "basis_coeffs": [
                a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
                for a in self.basis_coeffs
            ],
        }


def compositions(total: int, bounds: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Tuples of nonnegative integers below the given bounds that sum to total."""
    n = len(bounds)
    if n == 0:
        if total == 0:
            yield ()
        return
    room = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        room[i] = room[i + 1] + bounds[i]

    def build(i: int, remaining: int) -> Iterator[Tuple[int, ...]]:
        if i == n - 1:
            if remaining <= bounds[i]:
                yield (remaining,)
            return
        low = max(0, remaining - room[i + 1])
        for x in range(low, min(bounds[i], remaining) + 1):
            for rest in build(i + 1, remaining - x):
                yield (x,) + rest

    if total <= room[0]:
        yield from build(0, total)


def solve_binomial_basis(values: Sequence[int], d: int) -> Tuple[Fraction, ...]:
    """
    Coefficients a_0..a_d with values[s] = sum_k a_k C(s + d - k, d) for s = 0..d.

    The system is triangular, so forward substitution is exact.
    """
    if len(values) != d + 1:
        raise ValueError(f"Need {d + 1} values, got {len(values)}")
    coeffs: List[Fraction] = []
    for s in range(d + 1):
        known = sum(a * comb(s + d - k, d) for k, a in enumerate(coeffs))
        coeffs.append(Fraction(values[s]) - known)
    return tuple(coeffs)


class EhrhartCounter:
    """Counts lattice points of the dilations of one graph's root polytope."""

    def __init__(self, g: SignedBipartiteGraph):
        """
        Args:
            g: Graph; edge signs are ignored
        """
        self.graph = g
        self.logger = get_logger()
        self._e = list(g.e_vertices)
        self._v = list(g.v_vertices)
        self._neighbors = {label: g.neighbors(label) for label in g.vertices}

        self._component_of: Dict[str, int] = {}
        for index, part in enumerate(components(g)):
            for label in part.vertices:
                self._component_of[label] = index

        self._network = nx.DiGraph()
        self._network.add_node(SOURCE)
        self._network.add_node(SINK)
        for edge in g.edges:
            # no capacity attribute means unbounded
            self._network.add_edge(("E", edge.e_endpoint), ("V", edge.v_endpoint))

    @property
    def degree_bound(self) -> int:
        return self.graph.vertex_count - 2

    def _flow_network(self, a: Sequence[int], b: Sequence[int]) -> nx.DiGraph:
        network = self._network.copy()
        for label, value in zip(self._e, a):
            if value:
                network.add_edge(SOURCE, ("E", label), capacity=value)
        for label, value in zip(self._v, b):
            if value:
                network.add_edge(("V", label), SINK, capacity=value)
        return network

    def is_feasible(self, a: Sequence[int], b: Sequence[int]) -> bool:
        """Whether marginals a (on E) and b (on V) are realized by nonnegative edge weights."""
        s = sum(a)
        if s != sum(b):
            return False
        if s == 0:
            return True
        value = nx.maximum_flow_value(self._flow_network(a, b), SOURCE, SINK)
        return value == s

    def _balanced(self, a: Sequence[int], b: Sequence[int]) -> bool:
        sums: Dict[int, int] = {}
        for label, value in zip(self._e, a):
            index = self._component_of[label]
            sums[index] = sums.get(index, 0) + value
        for label, value in zip(self._v, b):
            index = self._component_of[label]
            sums[index] = sums.get(index, 0) - value
        return not any(sums.values())

    def points(self, s: int) -> Iterator[LatticePoint]:
        """All lattice points of s * Q_G."""
        if s < 0:
            raise ValueError(f"Dilation must be nonnegative, got {s}")
        if not self.graph.edges:
            return

        e_bounds = [s if self._neighbors[label] else 0 for label in self._e]
        for a in compositions(s, e_bounds):
            a_map = dict(zip(self._e, a))
            v_bounds = [
                min(s, sum(a_map[other] for other in self._neighbors[label])) for label in self._v
            ]
            for b in compositions(s, v_bounds):
                if self._balanced(a, b) and self.is_feasible(a, b):
                    yield LatticePoint(tuple(zip(self._e, a)), tuple(zip(self._v, b)))

    def count(self, s: int) -> int:
        return sum(1 for _ in self.points(s))

    def counts(self, up_to: int) -> Tuple[int, ...]:
        return tuple(self.count(s) for s in range(up_to + 1))

    def weight_system_for(self, point: LatticePoint) -> WeightSystem:
        """
        An integral weight system realizing a lattice point.

        Raises:
            ValueError: the point is not in the dilated polytope
        """
        a = [value for _, value in point.e_coords]
        b = [value for _, value in point.v_coords]
        if not self.is_feasible(a, b):
            raise ValueError(f"Point {point.to_dict()} is not in the dilated root polytope")
        weights = {edge.id: 0 for edge in self.graph.edges}
        if point.level:
            _, flow = nx.maximum_flow(self._flow_network(a, b), SOURCE, SINK)
            assigned = set()
            for edge in self.graph.edges:
                pair = (edge.e_endpoint, edge.v_endpoint)
                if pair in assigned:
                    continue
                assigned.add(pair)
                weights[edge.id] = flow[("E", edge.e_endpoint)][("V", edge.v_endpoint)]
        return WeightSystem.from_mapping(weights)


def count_lattice_points(g: SignedBipartiteGraph, s: int) -> int:
    """Number of lattice points in s * Q_G (0 for a graph without edges)."""
    return EhrhartCounter(g).count(s)


def lattice_points(g: SignedBipartiteGraph, s: int) -> List[LatticePoint]:
    return list(EhrhartCounter(g).points(s))


def ehrhart_data(g: SignedBipartiteGraph) -> EhrhartData:
    """
    Counts for s = 0..d and the binomial-basis coefficients, d = |E| + |V| - 2.

    A graph without edges has an empty root polytope and is given Ehr = 1, so
    its coefficients are those of (1 - x)^(k - 1) for k vertices.

    Raises:
        GraphError: g has no vertices
    """
    if g.is_empty():
        raise GraphError("The root polytope is not defined for the empty graph")
    if not g.edges:
        d = g.vertex_count - 2
        forest = IntPolynomial.one_minus_x_power(g.vertex_count - 1)
        counts = (1,) + (0,) * max(d, 0)
        return EhrhartData(d, counts, tuple(Fraction(c) for c in forest.coeffs))

    logger = get_logger()
    counter = EhrhartCounter(g)
    d = counter.degree_bound
    logger.log_operation_start("Ehrhart", f"{g.edge_count} edges, degree bound {d}")
    counts = counter.counts(d)
    coeffs = solve_binomial_basis(counts, d)
    data = EhrhartData(d, counts, coeffs)
    logger.log_operation_end("Ehrhart", True, f"counts {list(counts)}")

    if not data.is_integral():
        raise ArithmeticError(f"Non-integral basis coefficients {coeffs} for {g!r}")
    return data


def interior_via_ehrhart(g: SignedBipartiteGraph) -> IntPolynomial:
    """I' read off the binomial-basis coefficients of the Ehrhart polynomial."""
    if g.is_empty():
        raise GraphError("The interior polynomial is not defined for the empty graph")
    return ehrhart_data(g).interior_polynomial()


def ehrhart_series(g: SignedBipartiteGraph, order: int, direct: bool = False) -> PowerSeriesTrunc:
    """
    Ehr(x) = 1 + sum_{s >= 1} eps(s) x^s truncated at x^order.

    Counts up to the degree bound are enumerated; beyond it they are read from
    the interpolated Ehrhart polynomial unless direct is set.
    """
    if not g.edges:
        return PowerSeriesTrunc(order, (1,))

    counter = EhrhartCounter(g)
    d = counter.degree_bound
    if direct or order <= d:
        counts = list(counter.counts(order))
    else:
        data = ehrhart_data(g)
        counts = list(data.counts) + [data.value(s) for s in range(d + 1, order + 1)]
    counts[0] = 1
    return PowerSeriesTrunc(order, tuple(counts))


def _negative_subsets(g: SignedBipartiteGraph) -> Iterator[Tuple[Tuple[str, ...], int]]:
    negative = [edge.id for edge in g.negative_edges]
    for size in range(len(negative) + 1):
        for subset in combinations(negative, size):
            yield subset, (-1) ** size


def signed_ehrhart_series(g: SignedBipartiteGraph, order: int, direct: bool = False) -> PowerSeriesTrunc:
    """Ehr+(x): alternating sum of Ehr over deletions of negative-edge subsets."""
    total = PowerSeriesTrunc(order)
    for subset, sign in _negative_subsets(g):
        total = total + ehrhart_series(forget_signs(delete_edges(g, subset)), order, direct) * sign
    return total


def signed_ehrhart_counts(g: SignedBipartiteGraph, up_to: int) -> Tuple[int, ...]:
    """eps+(s) for s = 0..up_to; every term counts 1 at s = 0, as in Ehr."""
    totals = [0] * (up_to + 1)
    for subset, sign in _negative_subsets(g):
        counts = list(EhrhartCounter(delete_edges(g, subset)).counts(up_to))
        counts[0] = 1
        for s, value in enumerate(counts):
            totals[s] += sign * value
    return tuple(totals)


def signed_ehrhart_poly_coeffs(g: SignedBipartiteGraph) -> IntPolynomial:
    """
    I+ read off the binomial-basis coefficients of eps+.

    Needs at least one positive and one negative edge; otherwise the unsigned
    route (no negative edges) or a term-by-term sum (no positive edges) is used.
    """
    if not g.negative_edges:
        return interior_via_ehrhart(g)
    if not g.positive_edges:
        total = IntPolynomial()
        for subset, sign in _negative_subsets(g):
            total = total + interior_via_ehrhart(forget_signs(delete_edges(g, subset))) * sign
        return total

    d = g.vertex_count - 2
    coeffs = solve_binomial_basis(signed_ehrhart_counts(g, d), d)
    if any(a.denominator != 1 for a in coeffs):
        raise ArithmeticError(f"Non-integral signed basis coefficients {coeffs}")
    return IntPolynomial(tuple(a.numerator for a in coeffs))
