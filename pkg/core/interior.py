"""
Interior polynomial of unsigned bipartite graphs by cycle deletion.

A forest with c components evaluates to (1 - x)^(c - 1). Any other graph has
a cycle eps1, d1, ..., epsn, dn and

    I'(G) = sum over nonempty S of {eps1..epsn} of (-1)^(|S|-1) I'(G - S)

The result for a disconnected graph is the normalized I' = (1 - x)^(k - 1)
times the product over components.
"""

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from core.cycles import CycleWitness, find_cycle, iter_cycles
from core.exceptions import GraphError
from core.graph import SignedBipartiteGraph, component_count, delete_edges, label_key
from core.poly import IntPolynomial
from utils.logger import get_logger


CycleFinder = Callable[[SignedBipartiteGraph], Optional[CycleWitness]]


def canonical_key(g: SignedBipartiteGraph) -> bytes:
    """Byte key that is equal for equal labeled graphs regardless of declaration order."""
    edges = sorted(
        ((edge.e_endpoint, edge.v_endpoint, edge.sign, edge.id) for edge in g.edges),
        key=lambda t: (label_key(t[0]), label_key(t[1]), t[2], label_key(t[3])),
    )
    payload = {
        "E": sorted(g.e_vertices, key=label_key),
        "V": sorted(g.v_vertices, key=label_key),
        "edges": [list(t) for t in edges],
    }
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def forest_polynomial(component_total: int) -> IntPolynomial:
    """(1 - x)^(c - 1) for a forest with c components."""
    return IntPolynomial.one_minus_x_power(component_total - 1)


def random_cycle_finder(rng: random.Random) -> CycleFinder:
    """Cycle finder that picks a uniformly random simple cycle (for invariance checks)."""

    def finder(g: SignedBipartiteGraph) -> Optional[CycleWitness]:
        cycles = list(iter_cycles(g))
        if not cycles:
            return None
        return rng.choice(cycles)

    return finder


@dataclass
class RecursionNode:
    """One node of a cycle-deletion computation tree."""

    edges: Tuple[str, ...]
    polynomial: IntPolynomial
    cycle: Optional[CycleWitness] = None
    components: Optional[int] = None
    branches: List[Tuple[Tuple[str, ...], int, "RecursionNode"]] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return self.cycle is None

    def leaves(self, sign: int = 1) -> Iterable[Tuple[int, "RecursionNode"]]:
        """(accumulated sign, leaf) pairs in depth-first order."""
        if self.is_leaf:
            yield sign, self
            return
        for _, branch_sign, child in self.branches:
            yield from child.leaves(sign * branch_sign)

    def signed_sum(self) -> IntPolynomial:
        total = IntPolynomial()
        for sign, leaf in self.leaves():
            total = total + leaf.polynomial * sign
        return total

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"edges": list(self.edges)}
        if self.is_leaf:
            data["forest"] = True
            data["components"] = self.components
        else:
            data["cycle"] = self.cycle.to_dict()
            data["branches"] = [
                {"deleted": list(deleted), "sign": sign, "node": child.to_dict()}
                for deleted, sign, child in self.branches
            ]
        data["polynomial"] = self.polynomial.to_dict()
        return data


class InteriorCalculator:
    """
    Evaluates I' by the cycle-deletion recursion.

    The memo is keyed on canonical_key and lives as long as the calculator,
    so one instance can be reused across related graphs (e.g. all deletion
    subgraphs of a signed graph).
    """

    def __init__(
        self,
        cycle_finder: Optional[CycleFinder] = None,
        offset: int = 0,
        memoize: bool = True,
        cache: Optional[Dict[bytes, IntPolynomial]] = None
    ):
        """
        Initialize the calculator.

        Args:
            cycle_finder: Cycle selection strategy (default: shortest cycle)
            offset: Which alternate edges of the cycle are deleted (0 or 1)
            memoize: Cache results on canonical keys
            cache: Externally owned memo to share between calculators
        """
        if offset not in (0, 1):
            raise ValueError(f"Cycle offset must be 0 or 1, got {offset}")
        self.cycle_finder = cycle_finder or find_cycle
        self.offset = offset
        self.memoize = memoize
        self.cache: Dict[bytes, IntPolynomial] = cache if cache is not None else {}
        self.evaluations = 0
        self.cache_hits = 0
        self.logger = get_logger()

    @staticmethod
    def _check_input(g: SignedBipartiteGraph) -> None:
        if g.is_empty():
            raise GraphError("The interior polynomial is not defined for the empty graph")
        if not g.is_all_positive():
            negative = ", ".join(edge.id for edge in g.negative_edges)
            raise GraphError(f"Negative edges present ({negative}); forget signs first")

    def compute(self, g: SignedBipartiteGraph) -> IntPolynomial:
        """
        Compute I'(g).

        Args:
            g: Graph with all edge signs +1

        Returns:
            The interior polynomial
        """
        self._check_input(g)
        result = self._compute(g)
        self.logger.log_cache_stats("interior", self.evaluations, self.cache_hits)
        return result

    def _compute(self, g: SignedBipartiteGraph) -> IntPolynomial:
        key = canonical_key(g) if self.memoize else None
        if key is not None and key in self.cache:
            self.cache_hits += 1
            return self.cache[key]
        self.evaluations += 1

        cycle = self.cycle_finder(g)
        if cycle is None:
            result = forest_polynomial(component_count(g))
        else:
            result = IntPolynomial()
            for subset, sign in self._subsets(cycle):
                result = result + self._compute(delete_edges(g, subset)) * sign

        if key is not None:
            self.cache[key] = result
        return result

    def _subsets(self, cycle: CycleWitness) -> Iterable[Tuple[Tuple[str, ...], int]]:
        chosen = cycle.alternate_edges(self.offset)
        n = len(chosen)
        for mask in range(1, 1 << n):
            subset = tuple(chosen[i] for i in range(n) if mask >> i & 1)
            yield subset, (-1) ** (len(subset) - 1)

    def trace(self, g: SignedBipartiteGraph) -> RecursionNode:
        """Full computation tree of g (no memo, every branch expanded)."""
        self._check_input(g)
        return self._trace(g)

    def _trace(self, g: SignedBipartiteGraph) -> RecursionNode:
        cycle = self.cycle_finder(g)
        if cycle is None:
            count = component_count(g)
            return RecursionNode(g.edge_ids, forest_polynomial(count), components=count)

        node = RecursionNode(g.edge_ids, IntPolynomial(), cycle=cycle)
        total = IntPolynomial()
        for subset, sign in self._subsets(cycle):
            child = self._trace(delete_edges(g, subset))
            node.branches.append((subset, sign, child))
            total = total + child.polynomial * sign
        node.polynomial = total
        return node


def interior_prime(
    g: SignedBipartiteGraph,
    cycle_finder: Optional[CycleFinder] = None,
    offset: int = 0,
    cache: Optional[Dict[bytes, IntPolynomial]] = None
) -> IntPolynomial:
    """
    Interior polynomial I' of an unsigned bipartite graph.

    Args:
        g: Graph whose edges are all positive
        cycle_finder: Optional cycle selection strategy
        offset: 0 deletes the edges at even positions of the cycle, 1 the others
        cache: Optional memo shared with other computations

    Returns:
        I'(g)

    Raises:
        GraphError: g is empty or has a negative edge
    """
    return InteriorCalculator(cycle_finder=cycle_finder, offset=offset, cache=cache).compute(g)


def recursion_trace(g: SignedBipartiteGraph, offset: int = 0) -> RecursionNode:
    """Computation tree of the cycle-deletion recursion for g."""
    return InteriorCalculator(offset=offset, memoize=False).trace(g)
