"""
Readers and writers for graph files and PD diagram files.

Graph text (*.graph)::

    E e1 e2            # class E labels
    V v1 v2            # class V labels
    + e1 v1 h1         # positive edge, optional id
    - e2 v1            # negative edge, id defaults to its position
    R v1: h1 2         # counterclockwise rotation at v1

PD text (*.pd)::

    X 1 2 3 4 + x1     # crossing, arcs counterclockwise from the incoming under-arc
    O 5                # crossingless component
    C 1 E e1           # arc 1 lies on the Seifert circle of vertex e1 (class E)

Both have a JSON form carrying "format": 1.
"""

import json
import os
import re
from typing import Any, Dict, List, Mapping, Optional, Tuple

from core.diagram import CircleHint, Crossing, LinkDiagram
from core.exceptions import DiagramError, GraphError, ParseError
from core.graph import E_CLASS, V_CLASS, COLORS, SignedBipartiteGraph, SignedEdge
from core.median import PlaneEmbedding


FORMAT_VERSION = 1
GRAPH_KIND = "graph"
DIAGRAM_KIND = "pd"

_TOKEN = re.compile(r"\S+")
_SIGNS = {"+": 1, "-": -1, "+1": 1, "-1": -1}

Token = Tuple[int, str]  # (1-based column, text)


def _tokenize(line: str) -> List[Token]:
    body = line.split("#", 1)[0]
    return [(match.start() + 1, match.group()) for match in _TOKEN.finditer(body)]


def _lines(text: str):
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(line)
        if tokens:
            yield number, tokens


def _load_json(text: str, source: str) -> Mapping[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, source) from None
    if not isinstance(data, dict):
        raise ParseError("Top-level JSON value must be an object", 1, 1, source)
    version = data.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"Unsupported format version {version}", source=source)
    return data


def _looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")


# ---------------------------------------------------------------- graphs

class _GraphReader:
    """Line-by-line graph text parser keeping token positions for diagnostics."""

    def __init__(self, source: str):
        self.source = source
        self.colors: Dict[str, str] = {}
        self.e_vertices: List[str] = []
        self.v_vertices: List[str] = []
        self.edges: List[SignedEdge] = []
        self.edge_ids: Dict[str, Tuple[str, str]] = {}
        self.rotations: List[Tuple[int, Token, List[Token]]] = []

    def fail(self, message: str, line: int, column: int) -> ParseError:
        return ParseError(message, line, column, self.source)

    def read(self, text: str) -> Tuple[SignedBipartiteGraph, Optional[PlaneEmbedding]]:
        for number, tokens in _lines(text):
            column, keyword = tokens[0]
            if keyword in COLORS:
                self._declare(keyword, number, tokens[1:])
            elif keyword in _SIGNS:
                self._edge(_SIGNS[keyword], number, tokens)
            elif keyword == "R":
                if len(tokens) < 2:
                    raise self.fail("Rotation line needs a vertex label", number, column)
                self.rotations.append((number, tokens[1], tokens[2:]))
            else:
                raise self.fail(f"Unknown keyword '{keyword}'", number, column)

        g = SignedBipartiteGraph(tuple(self.e_vertices), tuple(self.v_vertices), tuple(self.edges))
        if not self.rotations:
            return g, None
        return g, self._embedding(g)

    def _declare(self, color: str, number: int, tokens: List[Token]) -> None:
        for column, label in tokens:
            if label in self.colors:
                raise self.fail(f"Duplicate vertex label '{label}'", number, column)
            self.colors[label] = color
            (self.e_vertices if color == E_CLASS else self.v_vertices).append(label)

    def _edge(self, sign: int, number: int, tokens: List[Token]) -> None:
        if len(tokens) not in (3, 4):
            raise self.fail("Edge line needs two endpoints and an optional id", number, tokens[0][0])
        for (column, label), color in zip(tokens[1:3], (E_CLASS, V_CLASS)):
            if label not in self.colors:
                raise self.fail(f"Unknown vertex '{label}'", number, column)
            if self.colors[label] != color:
                raise self.fail(f"Vertex '{label}' is not in class {color}", number, column)
        edge_id = tokens[3][1] if len(tokens) == 4 else str(len(self.edges) + 1)
        if edge_id in self.edge_ids:
            column = tokens[3][0] if len(tokens) == 4 else tokens[0][0]
            raise self.fail(f"Duplicate edge id '{edge_id}'", number, column)
        e_label, v_label = tokens[1][1], tokens[2][1]
        self.edge_ids[edge_id] = (e_label, v_label)
        self.edges.append(SignedEdge(edge_id, e_label, v_label, sign))

    def _embedding(self, g: SignedBipartiteGraph) -> PlaneEmbedding:
        rotation: Dict[str, Tuple[str, ...]] = {}
        for number, (column, raw_label), tokens in self.rotations:
            label = raw_label.rstrip(":")
            if tokens and tokens[0][1] == ":":
                tokens = tokens[1:]
            if label not in self.colors:
                raise self.fail(f"Rotation for unknown vertex '{label}'", number, column)
            if label in rotation:
                raise self.fail(f"Second rotation for vertex '{label}'", number, column)
            listed: List[str] = []
            for edge_column, edge_id in tokens:
                if edge_id not in self.edge_ids:
                    raise self.fail(f"Unknown edge id '{edge_id}'", number, edge_column)
                if label not in self.edge_ids[edge_id]:
                    raise self.fail(f"Edge '{edge_id}' is not incident to '{label}'", number, edge_column)
                if edge_id in listed:
                    raise self.fail(f"Edge '{edge_id}' listed twice", number, edge_column)
                listed.append(edge_id)
            if len(listed) != g.degree(label):
                raise self.fail(
                    f"Rotation at '{label}' lists {len(listed)} of {g.degree(label)} edges", number, column
                )
            rotation[label] = tuple(listed)
        return PlaneEmbedding.from_mapping(rotation)


def parse_graph_text(
    text: str,
    source: str = "<input>"
) -> Tuple[SignedBipartiteGraph, Optional[PlaneEmbedding]]:
    """
    Parse graph text.

    Returns:
        The graph and its rotation system (None when the file has no R lines)

    Raises:
        ParseError: syntax or content error, with line and column
    """
    try:
        return _GraphReader(source).read(text)
    except GraphError as e:
        raise ParseError(str(e), source=source) from None


def parse_graph_json(
    text: str,
    source: str = "<input>"
) -> Tuple[SignedBipartiteGraph, Optional[PlaneEmbedding]]:
    data = _load_json(text, source)
    try:
        g = SignedBipartiteGraph.from_dict(data)
    except (GraphError, KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Invalid graph: {e}", source=source) from None
    rotation = data.get("rotation")
    return g, PlaneEmbedding.from_mapping(rotation) if rotation else None


def format_graph_text(g: SignedBipartiteGraph, emb: Optional[PlaneEmbedding] = None) -> str:
    lines = []
    if g.e_vertices:
        lines.append("E " + " ".join(g.e_vertices))
    if g.v_vertices:
        lines.append("V " + " ".join(g.v_vertices))
    for edge in g.edges:
        lines.append(f"{'+' if edge.sign > 0 else '-'} {edge.e_endpoint} {edge.v_endpoint} {edge.id}")
    if emb is not None:
        for label, edge_ids in emb.rotation:
            lines.append(f"R {label}: " + " ".join(edge_ids))
    return "\n".join(lines) + "\n"


def graph_payload(g: SignedBipartiteGraph, emb: Optional[PlaneEmbedding] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {"format": FORMAT_VERSION}
    data.update(g.to_dict())
    if emb is not None:
        data["rotation"] = emb.to_dict()
    return data


# ---------------------------------------------------------------- diagrams

def parse_pd_text(text: str, source: str = "<input>") -> LinkDiagram:
    """
    Parse PD text.

    Raises:
        ParseError: syntax error with line and column, or a diagram that
            fails validation
    """
    crossings: List[Crossing] = []
    loops: List[str] = []
    hints: List[CircleHint] = []

    for number, tokens in _lines(text):
        column, keyword = tokens[0]
        values = [value for _, value in tokens[1:]]
        if keyword == "X":
            if len(values) not in (5, 6):
                raise ParseError("Crossing line needs four arcs, a sign and an optional id", number, column, source)
            sign_column, sign_text = tokens[5]
            if sign_text not in _SIGNS:
                raise ParseError(f"Bad crossing sign '{sign_text}'", number, sign_column, source)
            crossing_id = values[5] if len(values) == 6 else f"x{len(crossings) + 1}"
            crossings.append(Crossing(crossing_id, tuple(values[:4]), _SIGNS[sign_text]))
        elif keyword == "O":
            if len(values) != 1:
                raise ParseError("Loop line needs exactly one arc", number, column, source)
            loops.append(values[0])
        elif keyword == "C":
            if len(values) != 3:
                raise ParseError("Circle hint needs an arc, a class and a label", number, column, source)
            if values[1] not in COLORS:
                raise ParseError(f"Unknown class '{values[1]}'", number, tokens[2][0], source)
            hints.append(CircleHint(values[0], values[1], values[2]))
        else:
            raise ParseError(f"Unknown keyword '{keyword}'", number, column, source)

    try:
        return LinkDiagram(tuple(crossings), tuple(loops), tuple(hints))
    except DiagramError as e:
        raise ParseError(str(e), source=source) from None


def parse_pd_json(text: str, source: str = "<input>") -> LinkDiagram:
    data = _load_json(text, source)
    try:
        return LinkDiagram.from_dict(data)
    except (DiagramError, KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Invalid diagram: {e}", source=source) from None


def format_pd_text(d: LinkDiagram) -> str:
    lines = []
    for crossing in d.crossings:
        lines.append(f"X {' '.join(crossing.arcs)} {'+' if crossing.sign > 0 else '-'} {crossing.id}")
    for arc in d.loops:
        lines.append(f"O {arc}")
    for hint in d.hints:
        lines.append(f"C {hint.arc} {hint.color} {hint.label}")
    return "\n".join(lines) + "\n"


def diagram_payload(d: LinkDiagram) -> Dict[str, Any]:
    data: Dict[str, Any] = {"format": FORMAT_VERSION}
    data.update(d.to_dict())
    return data


# ---------------------------------------------------------------- files

def detect_kind(path: str, text: str) -> str:
    """'graph' or 'pd', from the extension or else from the content."""
    extension = os.path.splitext(path)[1].lower()
    if extension == ".graph":
        return GRAPH_KIND
    if extension == ".pd":
        return DIAGRAM_KIND
    if _looks_like_json(text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            return GRAPH_KIND
        return DIAGRAM_KIND if isinstance(data, dict) and "crossings" in data else GRAPH_KIND
    for _, tokens in _lines(text):
        return DIAGRAM_KIND if tokens[0][1] in ("X", "O", "C") else GRAPH_KIND
    return GRAPH_KIND


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def load_graph(path: str) -> Tuple[SignedBipartiteGraph, Optional[PlaneEmbedding]]:
    text = _read(path)
    if _looks_like_json(text):
        return parse_graph_json(text, path)
    return parse_graph_text(text, path)


def load_diagram(path: str) -> LinkDiagram:
    text = _read(path)
    if _looks_like_json(text):
        return parse_pd_json(text, path)
    return parse_pd_text(text, path)


def load_input(path: str):
    """
    Load either kind of file.

    Returns:
        ("graph", graph, embedding) or ("pd", diagram, None)
    """
    text = _read(path)
    if detect_kind(path, text) == DIAGRAM_KIND:
        return DIAGRAM_KIND, load_diagram(path), None
    g, emb = load_graph(path)
    return GRAPH_KIND, g, emb
