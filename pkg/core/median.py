"""
Plane embeddings of bipartite graphs and the median construction.

A plane embedding is given as a rotation system: the counterclockwise order
of the edges around every vertex. The median construction draws a Seifert
circle around every vertex (counterclockwise around E-vertices, clockwise
around V-vertices) and puts one crossing on every edge, with the edge's sign.
"""

from dataclasses import dataclass
from itertools import count
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from core.diagram import CircleHint, Crossing, LinkDiagram
from core.exceptions import EmbeddingError
from core.graph import E_CLASS, SignedBipartiteGraph, components


Dart = Tuple[str, str]  # (edge id, tail vertex)


@dataclass(frozen=True)
class PlaneEmbedding:
    """Counterclockwise rotation of edge ids around each vertex."""

    rotation: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Sequence[str]]) -> "PlaneEmbedding":
        return cls(tuple((label, tuple(edge_ids)) for label, edge_ids in mapping.items()))

    def as_dict(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self.rotation)

    def at(self, label: str) -> Tuple[str, ...]:
        try:
            return self.as_dict()[label]
        except KeyError:
            raise EmbeddingError(f"No rotation given for vertex {label}") from None

    def completed(self, g: SignedBipartiteGraph) -> "PlaneEmbedding":
        """
        Fill in rotations of vertices with degree at most 2, whose cyclic order is forced.

        Rotations are listed in the vertex order of g.
        """
        given = self.as_dict()
        for label in given:
            if not g.has_vertex(label):
                raise EmbeddingError(f"Rotation given for unknown vertex {label}")
        rotation = []
        for label in g.vertices:
            if label in given:
                rotation.append((label, given[label]))
                continue
            incident = tuple(edge.id for edge in g.incident_edges(label))
            if len(incident) > 2:
                raise EmbeddingError(f"Vertex {label} has degree {len(incident)} but no rotation")
            rotation.append((label, incident))
        return PlaneEmbedding(tuple(rotation))

    def validate(self, g: SignedBipartiteGraph) -> None:
        """Every vertex lists each incident edge exactly once."""
        given = self.as_dict()
        for label in g.vertices:
            if label not in given:
                raise EmbeddingError(f"No rotation given for vertex {label}")
            listed = given[label]
            incident = sorted(edge.id for edge in g.incident_edges(label))
            if sorted(listed) != incident:
                raise EmbeddingError(
                    f"Rotation at {label} lists {list(listed)} but the incident edges are {incident}"
                )

    def successor(self, label: str, edge_id: str) -> str:
        order = self.at(label)
        return order[(order.index(edge_id) + 1) % len(order)]

    def faces(self, g: SignedBipartiteGraph) -> List[Tuple[Dart, ...]]:
        """
        Trace the faces: dart (edge, tail) is followed by the successor of
        that edge in the rotation at its head.
        """
        self.validate(g)
        darts = [(edge.id, end) for edge in g.edges for end in edge.endpoints]
        seen = set()
        result = []
        for dart in darts:
            if dart in seen:
                continue
            face = []
            current = dart
            while current not in seen:
                seen.add(current)
                face.append(current)
                edge_id, tail = current
                head = g.edge(edge_id).other_end(tail)
                current = (self.successor(head, edge_id), head)
            result.append(tuple(face))
        return result

    def is_planar(self, g: SignedBipartiteGraph) -> bool:
        """Euler check V - E + F = 2 on every connected component."""
        for part in components(g):
            if not part.edges:
                continue
            restricted = PlaneEmbedding(tuple((label, self.at(label)) for label in part.vertices))
            face_count = len(restricted.faces(part))
            if part.vertex_count - part.edge_count + face_count != 2:
                return False
        return True

    def check(self, g: SignedBipartiteGraph) -> None:
        """
        Raises:
            EmbeddingError: malformed rotations or a positive-genus embedding
        """
        self.validate(g)
        if not self.is_planar(g):
            raise EmbeddingError("The rotation system does not describe a plane embedding")

    def to_dict(self) -> Dict[str, Any]:
        return {label: list(edge_ids) for label, edge_ids in self.rotation}


def median_construct(g: SignedBipartiteGraph, emb: PlaneEmbedding) -> LinkDiagram:
    """
    Link diagram of a plane signed bipartite graph.

    Each circle carries a hint naming its vertex, so the Seifert graph of the
    result is g itself with the same labels and edge ids.

    Args:
        g: Signed bipartite graph
        emb: Rotation system; vertices of degree <= 2 may be omitted

    Returns:
        The diagram, one crossing per edge

    Raises:
        EmbeddingError: the rotation system is not a plane embedding of g
    """
    emb = emb.completed(g)
    emb.check(g)

    labels = (str(n) for n in count(1))
    arriving: Dict[Tuple[str, str], str] = {}
    leaving: Dict[Tuple[str, str], str] = {}
    loops: List[str] = []
    hints: List[CircleHint] = []

    for vertex in g.vertices:
        color = g.color_of(vertex)
        order = list(emb.at(vertex))
        if color != E_CLASS:
            order.reverse()
        if not order:
            arc = next(labels)
            loops.append(arc)
            hints.append(CircleHint(arc, color, vertex))
            continue
        arcs = [next(labels) for _ in order]
        for i, edge_id in enumerate(order):
            leaving[(vertex, edge_id)] = arcs[i]
            arriving[(vertex, order[(i + 1) % len(order)])] = arcs[i]
        hints.append(CircleHint(arcs[0], color, vertex))

    crossings = []
    for edge in g.edges:
        e_in, e_out = arriving[(edge.e_endpoint, edge.id)], leaving[(edge.e_endpoint, edge.id)]
        v_in, v_out = arriving[(edge.v_endpoint, edge.id)], leaving[(edge.v_endpoint, edge.id)]
        if edge.sign > 0:
            arcs = (v_in, v_out, e_out, e_in)
        else:
            arcs = (e_in, v_in, v_out, e_out)
        crossings.append(Crossing(edge.id, arcs, edge.sign))

    return LinkDiagram(tuple(crossings), tuple(loops), tuple(hints))
