"""
Seifert circles and the Seifert graph of a link diagram.

Smoothing every crossing along the orientation leaves disjoint circles; they
are the vertices of the Seifert graph, and each crossing becomes an edge
carrying the crossing sign between the two circles it touches.
"""

from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from core.diagram import LinkDiagram
from core.exceptions import DiagramError
from core.graph import E_CLASS, V_CLASS, SignedBipartiteGraph, SignedEdge, label_key, opposite


@dataclass(frozen=True)
class SeifertDecomposition:
    """Seifert circles (as arc sets) and the resulting signed bipartite graph."""

    circles: Tuple[Tuple[str, ...], ...]
    labels: Tuple[str, ...]
    graph: SignedBipartiteGraph

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def circle_of(self, arc: str) -> str:
        """Vertex label of the circle through an arc."""
        for label, circle in zip(self.labels, self.circles):
            if arc in circle:
                return label
        raise DiagramError(f"Unknown arc: {arc}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "circles": [
                {"label": label, "class": self.graph.color_of(label), "arcs": list(circle)}
                for label, circle in zip(self.labels, self.circles)
            ],
            "circle_count": self.circle_count,
            "graph": self.graph.to_dict(),
        }


class _ArcUnion:
    def __init__(self, arcs):
        self.parent = {arc: arc for arc in arcs}

    def find(self, arc: str) -> str:
        while self.parent[arc] != arc:
            self.parent[arc] = self.parent[self.parent[arc]]
            arc = self.parent[arc]
        return arc

    def union(self, a: str, b: str) -> None:
        root_a, root_b = self.find(a), self.find(b)
        if root_a != root_b:
            self.parent[root_b] = root_a


def seifert_decompose(d: LinkDiagram) -> SeifertDecomposition:
    """
    Seifert circles and Seifert graph of a diagram.

    Circles named by circle hints keep those labels and classes. Otherwise
    circles are labeled c1, c2, ... in order of first appearance and every
    connected part of the graph is 2-colored starting from class E.

    Raises:
        DiagramError: a crossing touches a single circle, or the circle graph
            is not bipartite (neither happens for planar diagrams)
    """
    union = _ArcUnion(d.arcs)
    for crossing in d.crossings:
        for first, second in crossing.smoothing_pairs():
            union.union(first, second)

    order: List[str] = []
    members: Dict[str, List[str]] = {}
    appearance = [arc for crossing in d.crossings for arc in crossing.arcs] + list(d.loops)
    for arc in appearance:
        root = union.find(arc)
        if root not in members:
            members[root] = []
            order.append(root)
        if arc not in members[root]:
            members[root].append(arc)

    ends: List[Tuple[str, str]] = []
    for crossing in d.crossings:
        (a, _), (b, _) = crossing.smoothing_pairs()
        root_a, root_b = union.find(a), union.find(b)
        if root_a == root_b:
            raise DiagramError(f"Crossing {crossing.id} joins a Seifert circle to itself")
        ends.append((root_a, root_b))

    if d.hints:
        names, order = _names_from_hints(d, union, order)
    else:
        names = _generic_names(order, ends)

    e_vertices = tuple(names[root][1] for root in order if names[root][0] == E_CLASS)
    v_vertices = tuple(names[root][1] for root in order if names[root][0] == V_CLASS)
    edges = []
    for crossing, (root_a, root_b) in zip(d.crossings, ends):
        (color_a, label_a), (color_b, label_b) = names[root_a], names[root_b]
        if color_a == color_b:
            raise DiagramError(f"Crossing {crossing.id} joins two circles of class {color_a}")
        e_label, v_label = (label_a, label_b) if color_a == E_CLASS else (label_b, label_a)
        edges.append(SignedEdge(crossing.id, e_label, v_label, crossing.sign))

    graph = SignedBipartiteGraph(e_vertices, v_vertices, tuple(edges))
    circles = tuple(tuple(sorted(members[root], key=label_key)) for root in order)
    labels = tuple(names[root][1] for root in order)
    return SeifertDecomposition(circles, labels, graph)


def _names_from_hints(
    d: LinkDiagram,
    union: _ArcUnion,
    order: List[str]
) -> Tuple[Dict[str, Tuple[str, str]], List[str]]:
    names: Dict[str, Tuple[str, str]] = {}
    hinted_order: List[str] = []
    for hint in d.hints:
        root = union.find(hint.arc)
        name = (hint.color, hint.label)
        if root in names:
            if names[root] != name:
                raise DiagramError(
                    f"Conflicting circle hints {names[root]} and {name} on one Seifert circle"
                )
            continue
        names[root] = name
        hinted_order.append(root)

    missing = [root for root in order if root not in names]
    if missing:
        raise DiagramError(f"{len(missing)} Seifert circle(s) have no circle hint")
    if len({label for _, label in names.values()}) != len(names):
        raise DiagramError("Circle hints reuse a vertex label for different circles")
    return names, hinted_order


def _generic_names(order: List[str], ends: List[Tuple[str, str]]) -> Dict[str, Tuple[str, str]]:
    adjacency: Dict[str, List[str]] = {root: [] for root in order}
    for a, b in ends:
        adjacency[a].append(b)
        adjacency[b].append(a)

    colors: Dict[str, str] = {}
    for start in order:
        if start in colors:
            continue
        colors[start] = E_CLASS
        queue = deque([start])
        while queue:
            root = queue.popleft()
            for other in adjacency[root]:
                if other not in colors:
                    colors[other] = opposite(colors[root])
                    queue.append(other)
                elif colors[other] == colors[root]:
                    raise DiagramError("The Seifert circles do not form a bipartite graph")

    return {root: (colors[root], f"c{index}") for index, root in enumerate(order, start=1)}


def seifert_circle_count(d: LinkDiagram) -> int:
    return seifert_decompose(d).circle_count
