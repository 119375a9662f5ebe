"""
Cycle search in signed bipartite multigraphs.

find_cycle returns a shortest cycle (a pair of parallel edges counts as a
cycle of length 2); iter_cycles enumerates every simple cycle once, optionally
restricted to cycles whose edge signs alternate.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from core.graph import SignedBipartiteGraph, SignedEdge


@dataclass(frozen=True)
class CycleWitness:
    """
    A simple cycle.

    edge_ids[i] joins vertices[i] and vertices[(i + 1) % length].
    """

    vertices: Tuple[str, ...]
    edge_ids: Tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    def signs(self, g: SignedBipartiteGraph) -> Tuple[int, ...]:
        return tuple(g.edge(edge_id).sign for edge_id in self.edge_ids)

    def alternate_edges(self, offset: int = 0) -> Tuple[str, ...]:
        """Every second edge, starting at position offset (0 or 1)."""
        return self.edge_ids[offset::2]

    def is_valid_in(self, g: SignedBipartiteGraph) -> bool:
        """Check the cycle invariants against g."""
        n = self.length
        if n < 2 or n % 2 or len(self.vertices) != n:
            return False
        if len(set(self.vertices)) != n or len(set(self.edge_ids)) != n:
            return False
        for i, edge_id in enumerate(self.edge_ids):
            if not g.has_edge(edge_id):
                return False
            ends = set(g.edge(edge_id).endpoints)
            if ends != {self.vertices[i], self.vertices[(i + 1) % n]}:
                return False
        return True

    def is_alternating(self, g: SignedBipartiteGraph) -> bool:
        signs = self.signs(g)
        return all(signs[i] != signs[(i + 1) % len(signs)] for i in range(len(signs)))

    def to_dict(self) -> Dict[str, Any]:
        return {"vertices": list(self.vertices), "edges": list(self.edge_ids)}


def _connecting_edge(g: SignedBipartiteGraph, a: str, b: str, exclude: str) -> SignedEdge:
    for edge in g.edges:
        if edge.id != exclude and set(edge.endpoints) == {a, b}:
            return edge
    raise LookupError(f"No edge between {a} and {b}")


def find_cycle(g: SignedBipartiteGraph) -> Optional[CycleWitness]:
    """
    Return a shortest simple cycle of g, or None if g is a forest.

    For every edge in order, the edge is removed and a breadth-first shortest
    path between its endpoints closes the cycle; the first shortest cycle found
    wins, so the result is deterministic for a given edge order.
    """
    graph = g.to_networkx()
    best: Optional[Tuple[SignedEdge, List[str]]] = None

    for edge in g.edges:
        e_label, v_label = edge.endpoints
        graph.remove_edge(e_label, v_label, key=edge.id)
        try:
            path = nx.shortest_path(graph, v_label, e_label)
        except nx.NetworkXNoPath:
            path = None
        graph.add_edge(e_label, v_label, key=edge.id, sign=edge.sign)

        if path is not None and (best is None or len(path) < len(best[1])):
            best = (edge, path)
            if len(path) == 2:
                break

    if best is None:
        return None

    edge, path = best
    vertices = [edge.e_endpoint] + path[:-1]
    edge_ids = [edge.id]
    for a, b in zip(path, path[1:]):
        edge_ids.append(_connecting_edge(g, a, b, exclude=edge.id).id)
    return CycleWitness(tuple(vertices), tuple(edge_ids))


def iter_cycles(g: SignedBipartiteGraph, alternating: bool = False) -> Iterator[CycleWitness]:
    """
    Enumerate all simple cycles of g, each exactly once.

    A cycle is reported from its first vertex in class order, in the direction
    whose first edge precedes its closing edge in edge order.

    Args:
        g: Graph to search
        alternating: Only report cycles whose edge signs alternate

    Yields:
        CycleWitness objects
    """
    order = {label: i for i, label in enumerate(g.vertices)}
    position = {edge.id: i for i, edge in enumerate(g.edges)}
    adjacency: Dict[str, List[Tuple[SignedEdge, str]]] = {label: [] for label in g.vertices}
    for edge in g.edges:
        adjacency[edge.e_endpoint].append((edge, edge.v_endpoint))
        adjacency[edge.v_endpoint].append((edge, edge.e_endpoint))

    for start in g.vertices:
        floor = order[start]
        path_vertices = [start]
        path_edges: List[SignedEdge] = []
        on_path: Set[str] = {start}

        def extend(current: str) -> Iterator[CycleWitness]:
            for edge, nxt in adjacency[current]:
                if path_edges and edge.id == path_edges[-1].id:
                    continue
                if alternating and path_edges and edge.sign == path_edges[-1].sign:
                    continue
                if nxt == start:
                    if not path_edges or position[path_edges[0].id] > position[edge.id]:
                        continue
                    if alternating and edge.sign == path_edges[0].sign:
                        continue
                    yield CycleWitness(
                        tuple(path_vertices), tuple(e.id for e in path_edges) + (edge.id,)
                    )
                    continue
                if nxt in on_path or order[nxt] < floor:
                    continue
                path_vertices.append(nxt)
                path_edges.append(edge)
                on_path.add(nxt)
                yield from extend(nxt)
                on_path.discard(nxt)
                path_edges.pop()
                path_vertices.pop()

        yield from extend(start)


def find_alternating_cycle(g: SignedBipartiteGraph) -> Optional[CycleWitness]:
    """First cycle whose edge signs alternate, or None."""
    if not g.positive_edges or not g.negative_edges:
        return None
    return next(iter_cycles(g, alternating=True), None)
