"""
Signed bipartite multigraphs and the structural operations on them.

A graph has two color classes of vertices, E and V, and an ordered multiset of
signed edges, each joining an E-vertex to a V-vertex. Vertex labels are unique
across both classes, edge ids are unique, and parallel edges are allowed.
"""

import re
from dataclasses import dataclass, field, replace
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from core.exceptions import GraphError


E_CLASS = "E"
V_CLASS = "V"
COLORS = (E_CLASS, V_CLASS)


def label_key(label: str) -> Tuple:
    """Natural sort key, so that 'e2' sorts before 'e10'."""
    parts = re.split(r"(\d+)", label)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)


def fresh_label(base: str, taken: Set[str]) -> str:
    """Return base, or base with a numeric suffix, avoiding every label in taken."""
    if base not in taken:
        return base
    index = 2
    while f"{base}_{index}" in taken:
        index += 1
    return f"{base}_{index}"


def opposite(color: str) -> str:
    return V_CLASS if color == E_CLASS else E_CLASS


@dataclass(frozen=True)
class SignedEdge:
    """Edge record joining an E-vertex to a V-vertex."""

    id: str
    e_endpoint: str
    v_endpoint: str
    sign: int = 1

    @property
    def endpoints(self) -> Tuple[str, str]:
        return (self.e_endpoint, self.v_endpoint)

    def other_end(self, label: str) -> str:
        return self.v_endpoint if label == self.e_endpoint else self.e_endpoint

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "e": self.e_endpoint, "v": self.v_endpoint, "sign": self.sign}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SignedEdge":
        return cls(
            id=str(data["id"]),
            e_endpoint=str(data["e"]),
            v_endpoint=str(data["v"]),
            sign=int(data.get("sign", 1)),
        )


EdgeSpec = Union[SignedEdge, Tuple]


@dataclass(frozen=True)
class SignedBipartiteGraph:
    """Bipartite multigraph with signed edges."""

    e_vertices: Tuple[str, ...] = ()
    v_vertices: Tuple[str, ...] = ()
    edges: Tuple[SignedEdge, ...] = ()
    _colors: Dict[str, str] = field(default_factory=dict, init=False, repr=False, compare=False)
    _edge_index: Dict[str, SignedEdge] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "e_vertices", tuple(self.e_vertices))
        object.__setattr__(self, "v_vertices", tuple(self.v_vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

        colors: Dict[str, str] = {}
        for color, labels in ((E_CLASS, self.e_vertices), (V_CLASS, self.v_vertices)):
            for label in labels:
                if label in colors:
                    raise GraphError(f"Duplicate vertex label: {label}")
                colors[label] = color

        index: Dict[str, SignedEdge] = {}
        for edge in self.edges:
            if edge.id in index:
                raise GraphError(f"Duplicate edge id: {edge.id}")
            if colors.get(edge.e_endpoint) != E_CLASS:
                raise GraphError(f"Edge {edge.id}: '{edge.e_endpoint}' is not an E-vertex")
            if colors.get(edge.v_endpoint) != V_CLASS:
                raise GraphError(f"Edge {edge.id}: '{edge.v_endpoint}' is not a V-vertex")
            if edge.sign not in (1, -1):
                raise GraphError(f"Edge {edge.id}: sign must be +1 or -1, got {edge.sign}")
            index[edge.id] = edge

        object.__setattr__(self, "_colors", colors)
        object.__setattr__(self, "_edge_index", index)

    @classmethod
    def build(
        cls,
        e_vertices: Iterable[str],
        v_vertices: Iterable[str],
        edges: Iterable[EdgeSpec] = ()
    ) -> "SignedBipartiteGraph":
        """
        Build a graph from plain tuples.

        Args:
            e_vertices: Labels of color class E
            v_vertices: Labels of color class V
            edges: SignedEdge records or tuples (e, v), (e, v, sign) or
                (e, v, sign, id); missing ids default to the 1-based position

        Returns:
            The validated graph
        """
        records = []
        for position, spec in enumerate(edges, start=1):
            if isinstance(spec, SignedEdge):
                records.append(spec)
                continue
            e_label, v_label = spec[0], spec[1]
            sign = spec[2] if len(spec) > 2 else 1
            edge_id = spec[3] if len(spec) > 3 else str(position)
            records.append(SignedEdge(str(edge_id), e_label, v_label, int(sign)))
        return cls(tuple(e_vertices), tuple(v_vertices), tuple(records))

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.e_vertices + self.v_vertices

    @property
    def vertex_count(self) -> int:
        return len(self.e_vertices) + len(self.v_vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(edge.id for edge in self.edges)

    @property
    def positive_edges(self) -> Tuple[SignedEdge, ...]:
        return tuple(edge for edge in self.edges if edge.sign > 0)

    @property
    def negative_edges(self) -> Tuple[SignedEdge, ...]:
        return tuple(edge for edge in self.edges if edge.sign < 0)

    def is_empty(self) -> bool:
        return self.vertex_count == 0

    def is_all_positive(self) -> bool:
        return all(edge.sign > 0 for edge in self.edges)

    def has_vertex(self, label: str) -> bool:
        return label in self._colors

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_index

    def color_of(self, label: str) -> str:
        try:
            return self._colors[label]
        except KeyError:
            raise GraphError(f"Unknown vertex label: {label}") from None

    def edge(self, edge_id: str) -> SignedEdge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise GraphError(f"Unknown edge id: {edge_id}") from None

    def incident_edges(self, label: str) -> Tuple[SignedEdge, ...]:
        self.color_of(label)
        return tuple(edge for edge in self.edges if label in edge.endpoints)

    def degree(self, label: str) -> int:
        return len(self.incident_edges(label))

    def neighbors(self, label: str) -> Tuple[str, ...]:
        """Distinct neighbors of a vertex, in the order of their color class."""
        adjacent = {edge.other_end(label) for edge in self.incident_edges(label)}
        order = self.v_vertices if self.color_of(label) == E_CLASS else self.e_vertices
        return tuple(other for other in order if other in adjacent)

    def to_networkx(self) -> nx.MultiGraph:
        """MultiGraph view: nodes are labels (with a color attribute), edge keys are ids."""
        graph = nx.MultiGraph()
        for label in self.vertices:
            graph.add_node(label, color=self._colors[label])
        for edge in self.edges:
            graph.add_edge(edge.e_endpoint, edge.v_endpoint, key=edge.id, sign=edge.sign)
        return graph

    def to_dict(self) -> Dict[str, Any]:
        return {
            "E": list(self.e_vertices),
            "V": list(self.v_vertices),
            "edges": [edge.to_dict() for edge in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SignedBipartiteGraph":
        return cls(
            tuple(str(label) for label in data.get("E", [])),
            tuple(str(label) for label in data.get("V", [])),
            tuple(SignedEdge.from_dict(edge) for edge in data.get("edges", [])),
        )

    def __repr__(self) -> str:
        return (
            f"SignedBipartiteGraph(E={list(self.e_vertices)}, V={list(self.v_vertices)}, "
            f"edges={[(e.id, e.e_endpoint, e.v_endpoint, e.sign) for e in self.edges]})"
        )


def induced_subgraph(g: SignedBipartiteGraph, labels: Iterable[str]) -> SignedBipartiteGraph:
    keep = set(labels)
    return SignedBipartiteGraph(
        tuple(label for label in g.e_vertices if label in keep),
        tuple(label for label in g.v_vertices if label in keep),
        tuple(edge for edge in g.edges if edge.e_endpoint in keep and edge.v_endpoint in keep),
    )


def components(g: SignedBipartiteGraph) -> List[SignedBipartiteGraph]:
    """Connected components, ordered by their smallest label."""
    groups = [set(group) for group in nx.connected_components(g.to_networkx())]
    groups.sort(key=lambda group: min(label_key(label) for label in group))
    return [induced_subgraph(g, group) for group in groups]


def component_count(g: SignedBipartiteGraph) -> int:
    return nx.number_connected_components(g.to_networkx())


def is_forest(g: SignedBipartiteGraph) -> bool:
    return g.edge_count == g.vertex_count - component_count(g)


def delete_edges(g: SignedBipartiteGraph, ids: Iterable[str]) -> SignedBipartiteGraph:
    """Remove the given edges; every vertex is kept."""
    doomed = set(ids)
    for edge_id in doomed:
        g.edge(edge_id)
    if not doomed:
        return g
    return replace(g, edges=tuple(edge for edge in g.edges if edge.id not in doomed))


def add_edges(g: SignedBipartiteGraph, edges: Iterable[SignedEdge]) -> SignedBipartiteGraph:
    return replace(g, edges=g.edges + tuple(edges))


def forget_signs(g: SignedBipartiteGraph) -> SignedBipartiteGraph:
    if g.is_all_positive():
        return g
    return replace(g, edges=tuple(replace(edge, sign=1) for edge in g.edges))


def set_sign(g: SignedBipartiteGraph, edge_id: str, sign: int) -> SignedBipartiteGraph:
    """Copy of g with one edge's sign replaced."""
    g.edge(edge_id)
    return replace(
        g, edges=tuple(replace(edge, sign=sign) if edge.id == edge_id else edge for edge in g.edges)
    )


def with_signs(g: SignedBipartiteGraph, signs: Mapping[str, int]) -> SignedBipartiteGraph:
    """Copy of g with the signs of the listed edges replaced."""
    for edge_id in signs:
        g.edge(edge_id)
    return replace(
        g, edges=tuple(replace(edge, sign=signs.get(edge.id, edge.sign)) for edge in g.edges)
    )


def _relabel(
    g: SignedBipartiteGraph,
    vertex_map: Mapping[str, str],
    edge_map: Mapping[str, str]
) -> SignedBipartiteGraph:
    return SignedBipartiteGraph(
        tuple(vertex_map.get(label, label) for label in g.e_vertices),
        tuple(vertex_map.get(label, label) for label in g.v_vertices),
        tuple(
            SignedEdge(
                edge_map.get(edge.id, edge.id),
                vertex_map.get(edge.e_endpoint, edge.e_endpoint),
                vertex_map.get(edge.v_endpoint, edge.v_endpoint),
                edge.sign,
            )
            for edge in g.edges
        ),
    )


def _disambiguate(
    g1: SignedBipartiteGraph,
    g2: SignedBipartiteGraph,
    keep: Sequence[str] = (),
    prefix: str = "2."
) -> SignedBipartiteGraph:
    """Rename labels and ids of g2 that clash with g1 by prefixing them."""
    taken_vertices = set(g1.vertices) | set(g2.vertices)
    vertex_map: Dict[str, str] = {}
    for label in g2.vertices:
        if label in keep or label not in g1.vertices:
            continue
        new_label = fresh_label(prefix + label, taken_vertices)
        taken_vertices.add(new_label)
        vertex_map[label] = new_label

    taken_ids = set(g1.edge_ids) | set(g2.edge_ids)
    edge_map: Dict[str, str] = {}
    for edge_id in g2.edge_ids:
        if not g1.has_edge(edge_id):
            continue
        new_id = fresh_label(prefix + edge_id, taken_ids)
        taken_ids.add(new_id)
        edge_map[edge_id] = new_id

    if not vertex_map and not edge_map:
        return g2
    return _relabel(g2, vertex_map, edge_map)


def disjoint_union(g1: SignedBipartiteGraph, g2: SignedBipartiteGraph) -> SignedBipartiteGraph:
    """Disjoint union; clashing labels and ids of g2 are prefixed with '2.'."""
    other = _disambiguate(g1, g2)
    return SignedBipartiteGraph(
        g1.e_vertices + other.e_vertices,
        g1.v_vertices + other.v_vertices,
        g1.edges + other.edges,
    )


def block_sum(
    g1: SignedBipartiteGraph,
    g2: SignedBipartiteGraph,
    v1: str,
    v2: str
) -> SignedBipartiteGraph:
    """
    Identify vertex v1 of g1 with vertex v2 of g2.

    The merged vertex keeps the label v1.

    Args:
        g1: First graph
        g2: Second graph
        v1: Label in g1
        v2: Label in g2, same color class as v1

    Returns:
        The one-vertex sum
    """
    color = g1.color_of(v1)
    if g2.color_of(v2) != color:
        raise GraphError(f"Cannot identify {v1} ({color}) with {v2} ({g2.color_of(v2)})")

    # every g2 label clashing with g1 is renamed except v2, which becomes v1
    other = _disambiguate(g1, g2, keep=(v2,))
    if v2 != v1:
        other = _relabel(other, {v2: v1}, {})

    return SignedBipartiteGraph(
        g1.e_vertices + tuple(label for label in other.e_vertices if label != v1),
        g1.v_vertices + tuple(label for label in other.v_vertices if label != v1),
        g1.edges + other.edges,
    )


def delete_vertex(g: SignedBipartiteGraph, v: str) -> SignedBipartiteGraph:
    """G - v: drop v and all of its edges."""
    g.color_of(v)
    return SignedBipartiteGraph(
        tuple(label for label in g.e_vertices if label != v),
        tuple(label for label in g.v_vertices if label != v),
        tuple(edge for edge in g.edges if v not in edge.endpoints),
    )


def contract_vertex(g: SignedBipartiteGraph, v: str) -> SignedBipartiteGraph:
    """
    G / v: delete v and merge all of its former neighbors into one vertex.

    The merged vertex takes the label of the first neighbor in class order.
    """
    neighbors = g.neighbors(v)
    reduced = delete_vertex(g, v)
    if len(neighbors) <= 1:
        return reduced

    merged, absorbed = neighbors[0], set(neighbors[1:])
    return SignedBipartiteGraph(
        tuple(label for label in reduced.e_vertices if label not in absorbed),
        tuple(label for label in reduced.v_vertices if label not in absorbed),
        tuple(
            SignedEdge(
                edge.id,
                merged if edge.e_endpoint in absorbed else edge.e_endpoint,
                merged if edge.v_endpoint in absorbed else edge.v_endpoint,
                edge.sign,
            )
            for edge in reduced.edges
        ),
    )


def parallel_classes(g: SignedBipartiteGraph) -> List[Tuple[SignedEdge, ...]]:
    """Edges grouped by endpoint pair, in order of first appearance."""
    groups: Dict[Tuple[str, str], List[SignedEdge]] = {}
    for edge in g.edges:
        groups.setdefault(edge.endpoints, []).append(edge)
    return [tuple(group) for group in groups.values()]


def collapse_parallel(g: SignedBipartiteGraph) -> SignedBipartiteGraph:
    """Keep only the first edge of every parallel class."""
    return replace(g, edges=tuple(group[0] for group in parallel_classes(g)))


def bridge_join(
    g1: SignedBipartiteGraph,
    g2: SignedBipartiteGraph,
    a: str,
    b: str,
    sign: int = 1,
    edge_id: Optional[str] = None
) -> SignedBipartiteGraph:
    """
    Disjoint union of g1 and g2 plus one new edge between a (in g1) and b (in g2).

    a and b must lie in different color classes.
    """
    color_a, color_b = g1.color_of(a), g2.color_of(b)
    if color_a == color_b:
        raise GraphError(f"Bridge endpoints {a} and {b} are both in class {color_a}")
    other = _disambiguate(g1, g2)
    union = SignedBipartiteGraph(
        g1.e_vertices + other.e_vertices,
        g1.v_vertices + other.v_vertices,
        g1.edges + other.edges,
    )
    b_label = other.vertices[g2.vertices.index(b)]
    new_id = fresh_label(edge_id or "bridge", set(union.edge_ids))
    e_label, v_label = (a, b_label) if color_a == E_CLASS else (b_label, a)
    return add_edges(union, [SignedEdge(new_id, e_label, v_label, sign)])


def attach_pendant(
    g: SignedBipartiteGraph,
    at: str,
    signs: Sequence[int],
    label: Optional[str] = None
) -> SignedBipartiteGraph:
    """
    Add a new vertex joined to `at` by one parallel edge per entry of signs.

    Returns:
        The enlarged graph; the new vertex is appended to the opposite class.
    """
    color = g.color_of(at)
    new_label = fresh_label(label or "p", set(g.vertices))
    taken = set(g.edge_ids)
    new_edges = []
    for sign in signs:
        edge_id = fresh_label(f"{new_label}.{len(new_edges) + 1}", taken)
        taken.add(edge_id)
        if color == E_CLASS:
            new_edges.append(SignedEdge(edge_id, at, new_label, sign))
        else:
            new_edges.append(SignedEdge(edge_id, new_label, at, sign))
    if color == E_CLASS:
        enlarged = replace(g, v_vertices=g.v_vertices + (new_label,))
    else:
        enlarged = replace(g, e_vertices=g.e_vertices + (new_label,))
    return add_edges(enlarged, new_edges)


def blocks(g: SignedBipartiteGraph) -> List[FrozenSet[str]]:
    """
    Biconnected blocks as sets of edge ids.

    Parallel edges always share a block; a bridge is a block of its own.
    """
    simple = nx.Graph()
    for edge in g.edges:
        simple.add_edge(edge.e_endpoint, edge.v_endpoint)

    position = {edge.id: i for i, edge in enumerate(g.edges)}
    result = []
    for block_edges in nx.biconnected_component_edges(simple):
        pairs = {frozenset(pair) for pair in block_edges}
        ids = frozenset(edge.id for edge in g.edges if frozenset(edge.endpoints) in pairs)
        result.append(ids)
    result.sort(key=lambda ids: min(position[edge_id] for edge_id in ids))
    return result


def is_homogeneous(g: SignedBipartiteGraph) -> bool:
    """True when every block carries edges of a single sign."""
    for block in blocks(g):
        if len({g.edge(edge_id).sign for edge_id in block}) > 1:
            return False
    return True
