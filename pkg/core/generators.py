"""
Random inputs for property checks and the verification suite.

Plane graphs are grown from an even cycle by moves that keep the rotation
system planar: parallel edges, pendant vertices with parallel edges, edge
subdivision and block sums with a fresh cycle.
"""

import random
from typing import Dict, List, Optional, Tuple

from core.cycles import find_cycle
from core.diagram import LinkDiagram, braid_closure
from core.graph import E_CLASS, V_CLASS, SignedBipartiteGraph, SignedEdge, with_signs
from core.median import PlaneEmbedding


def random_signed_graph(
    rng: random.Random,
    max_edges: int = 10,
    max_side: int = 4,
    negative_probability: float = 0.5,
    min_edges: int = 1
) -> SignedBipartiteGraph:
    """
    A random signed bipartite multigraph, not necessarily connected or planar.

    Args:
        rng: Random source
        max_edges: Upper bound on the number of edges
        max_side: Upper bound on the size of each color class
        negative_probability: Chance that an edge is negative
        min_edges: Lower bound on the number of edges
    """
    e_vertices = tuple(f"e{i}" for i in range(1, rng.randint(1, max_side) + 1))
    v_vertices = tuple(f"v{i}" for i in range(1, rng.randint(1, max_side) + 1))
    edges = []
    for position in range(1, rng.randint(min_edges, max(min_edges, max_edges)) + 1):
        sign = -1 if rng.random() < negative_probability else 1
        edges.append(SignedEdge(str(position), rng.choice(e_vertices), rng.choice(v_vertices), sign))
    return SignedBipartiteGraph(e_vertices, v_vertices, tuple(edges))


class _PlaneBuilder:
    """Mutable graph plus rotation system under planarity-preserving moves."""

    def __init__(self, rng: random.Random, negative_probability: float):
        self.rng = rng
        self.negative_probability = negative_probability
        self.classes: Dict[str, List[str]] = {E_CLASS: [], V_CLASS: []}
        self.edges: Dict[str, Tuple[str, str, int]] = {}
        self.rotation: Dict[str, List[str]] = {}
        self.next_id = 1

    def vertex(self, color: str) -> str:
        label = f"{color.lower()}{len(self.classes[color]) + 1}"
        self.classes[color].append(label)
        self.rotation[label] = []
        return label

    def color_of(self, label: str) -> str:
        return E_CLASS if label in self.classes[E_CLASS] else V_CLASS

    def edge(self, a: str, b: str) -> str:
        edge_id = str(self.next_id)
        self.next_id += 1
        e_label, v_label = (a, b) if self.color_of(a) == E_CLASS else (b, a)
        sign = -1 if self.rng.random() < self.negative_probability else 1
        self.edges[edge_id] = (e_label, v_label, sign)
        return edge_id

    def cycle(self, start: Optional[str], half_length: int) -> None:
        """Even cycle through start (a new vertex when None), inserted at one corner of start."""
        first = start or self.vertex(E_CLASS)
        color = self.color_of(first)
        path = [first]
        for i in range(1, 2 * half_length):
            path.append(self.vertex(color if i % 2 == 0 else _other(color)))
        ids = [self.edge(path[i], path[(i + 1) % len(path)]) for i in range(len(path))]
        for i in range(1, len(path)):
            self.rotation[path[i]] = [ids[i - 1], ids[i]]
        corner = self.rng.randint(0, len(self.rotation[first]))
        self.rotation[first][corner:corner] = [ids[0], ids[-1]]

    def parallel(self) -> None:
        edge_id = self.rng.choice(list(self.edges))
        e_label, v_label, _ = self.edges[edge_id]
        new_id = self.edge(e_label, v_label)
        at_e, at_v = self.rotation[e_label], self.rotation[v_label]
        at_e.insert(at_e.index(edge_id), new_id)
        at_v.insert(at_v.index(edge_id) + 1, new_id)

    def pendant(self, multiplicity: int) -> None:
        at = self.rng.choice(self.classes[E_CLASS] + self.classes[V_CLASS])
        new_label = self.vertex(_other(self.color_of(at)))
        ids = [self.edge(at, new_label) for _ in range(multiplicity)]
        self.rotation[new_label] = list(ids)
        corner = self.rng.randint(0, len(self.rotation[at]))
        self.rotation[at][corner:corner] = list(reversed(ids))

    def subdivide(self) -> None:
        edge_id = self.rng.choice(list(self.edges))
        e_label, v_label, sign = self.edges.pop(edge_id)
        middle_v, middle_e = self.vertex(V_CLASS), self.vertex(E_CLASS)
        first = self.edge(e_label, middle_v)
        second = self.edge(middle_e, middle_v)
        third = self.edge(middle_e, v_label)
        self.edges[first] = (e_label, middle_v, sign)
        at_e, at_v = self.rotation[e_label], self.rotation[v_label]
        at_e[at_e.index(edge_id)] = first
        at_v[at_v.index(edge_id)] = third
        self.rotation[middle_v] = [first, second]
        self.rotation[middle_e] = [second, third]

    def result(self) -> Tuple[SignedBipartiteGraph, PlaneEmbedding]:
        g = SignedBipartiteGraph(
            tuple(self.classes[E_CLASS]),
            tuple(self.classes[V_CLASS]),
            tuple(SignedEdge(edge_id, e, v, sign) for edge_id, (e, v, sign) in self.edges.items()),
        )
        return g, PlaneEmbedding.from_mapping(self.rotation)


def _other(color: str) -> str:
    return V_CLASS if color == E_CLASS else E_CLASS


def random_plane_graph(
    rng: random.Random,
    max_edges: int = 10,
    negative_probability: float = 0.5
) -> Tuple[SignedBipartiteGraph, PlaneEmbedding]:
    """
    A random connected plane signed bipartite graph with a cycle.

    Returns:
        The graph (at most max_edges edges, at least 2) and its rotation system
    """
    builder = _PlaneBuilder(rng, negative_probability)
    builder.cycle(None, rng.randint(1, max(1, min(3, max_edges // 2))))
    while True:
        room = max_edges - len(builder.edges)
        moves = []
        if room >= 1:
            moves += ["parallel", "pendant"]
        if room >= 2:
            moves += ["subdivide", "pendant2", "cycle"]
        if not moves or rng.random() < 0.2:
            break
        move = rng.choice(moves)
        if move == "parallel":
            builder.parallel()
        elif move == "pendant":
            builder.pendant(1)
        elif move == "pendant2":
            builder.pendant(2)
        elif move == "subdivide":
            builder.subdivide()
        else:
            start = rng.choice(builder.classes[E_CLASS] + builder.classes[V_CLASS])
            builder.cycle(start, 1 if room < 4 else rng.randint(1, 2))
    return builder.result()


def plant_alternating_cycle(
    rng: random.Random,
    g: SignedBipartiteGraph
) -> SignedBipartiteGraph:
    """
    Re-sign the edges of one cycle of g so that their signs alternate.

    Raises:
        ValueError: g is a forest
    """
    cycle = find_cycle(g)
    if cycle is None:
        raise ValueError("A forest has no cycle to re-sign")
    first = rng.choice((1, -1))
    signs = {edge_id: first * (-1) ** i for i, edge_id in enumerate(cycle.edge_ids)}
    return with_signs(g, signs)


def random_braid_word(rng: random.Random, strands: int, length: int) -> List[int]:
    """Random word in the braid generators, i for sigma_i and -i for its inverse."""
    if strands < 2:
        return []
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


def random_diagram(rng: random.Random, max_crossings: int = 8, max_strands: int = 4) -> LinkDiagram:
    """Closure of a random braid with 1..max_crossings crossings."""
    strands = rng.randint(2, max_strands)
    return braid_closure(random_braid_word(rng, strands, rng.randint(1, max_crossings)), strands)
