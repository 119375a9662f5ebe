"""
Oriented link diagrams in planar-diagram (PD) notation.

A crossing lists four arc labels counterclockwise, starting from the incoming
under-arc, so the under strand runs from slot 0 to slot 2. At a positive
crossing the over strand runs from slot 3 to slot 1, at a negative crossing
from slot 1 to slot 3. Crossingless components are carried as loop arcs.
"""

from dataclasses import dataclass, field
from itertools import count
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from core.exceptions import DiagramError
from core.graph import COLORS, label_key


Slot = Tuple[int, int]  # (crossing index, slot index)


@dataclass(frozen=True)
class Crossing:
    """One signed crossing."""

    id: str
    arcs: Tuple[str, str, str, str]
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(str(arc) for arc in self.arcs))
        if len(self.arcs) != 4:
            raise DiagramError(f"Crossing {self.id} needs four arcs, got {len(self.arcs)}")
        if self.sign not in (1, -1):
            raise DiagramError(f"Crossing {self.id}: sign must be +1 or -1, got {self.sign}")

    @property
    def over_in_slot(self) -> int:
        return 3 if self.sign > 0 else 1

    def smoothing_pairs(self) -> Tuple[Tuple[str, str], Tuple[str, str]]:
        """(incoming, outgoing) arc pairs joined by the oriented smoothing."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return ((a, b), (d, c))
        return ((a, d), (b, c))

    def switched(self) -> "Crossing":
        """Same strands with the over/under roles exchanged."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return Crossing(self.id, (d, a, b, c), -1)
        return Crossing(self.id, (b, c, d, a), 1)

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "arcs": list(self.arcs), "sign": self.sign}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Crossing":
        return cls(str(data["id"]), tuple(data["arcs"]), int(data["sign"]))


@dataclass(frozen=True)
class CircleHint:
    """Names the Seifert circle through an arc: color class and vertex label."""

    arc: str
    color: str
    label: str

    def to_dict(self) -> Dict[str, Any]:
        return {"arc": self.arc, "color": self.color, "label": self.label}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CircleHint":
        return cls(str(data["arc"]), str(data["color"]), str(data["label"]))


@dataclass(frozen=True)
class LinkDiagram:
    """
    Oriented link diagram.

    Construction validates that every crossing arc occurs exactly twice, that
    every strand can be oriented consistently, and that declared crossing
    signs agree with the orientation.
    """

    crossings: Tuple[Crossing, ...] = ()
    loops: Tuple[str, ...] = ()
    hints: Tuple[CircleHint, ...] = ()
    _components: Tuple[Tuple[str, ...], ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "loops", tuple(str(arc) for arc in self.loops))
        object.__setattr__(self, "hints", tuple(self.hints))
        occurrences = self._check_structure()
        incoming = _orient(self.crossings, occurrences)
        object.__setattr__(self, "_components", self._trace_components(incoming))

    def _check_structure(self) -> Dict[str, List[Slot]]:
        ids = set()
        occurrences: Dict[str, List[Slot]] = {}
        for i, crossing in enumerate(self.crossings):
            if crossing.id in ids:
                raise DiagramError(f"Duplicate crossing id: {crossing.id}")
            ids.add(crossing.id)
            for k, arc in enumerate(crossing.arcs):
                occurrences.setdefault(arc, []).append((i, k))

        for arc, places in occurrences.items():
            if len(places) != 2:
                raise DiagramError(f"Arc {arc} occurs {len(places)} time(s); every arc must occur twice")

        seen_loops = set()
        for arc in self.loops:
            if arc in occurrences or arc in seen_loops:
                raise DiagramError(f"Loop arc {arc} is already in use")
            seen_loops.add(arc)

        for hint in self.hints:
            if hint.color not in COLORS:
                raise DiagramError(f"Circle hint for arc {hint.arc}: unknown class {hint.color}")
            if hint.arc not in occurrences and hint.arc not in seen_loops:
                raise DiagramError(f"Circle hint names unknown arc {hint.arc}")
        return occurrences

    def _trace_components(self, incoming: Dict[str, Slot]) -> Tuple[Tuple[str, ...], ...]:
        result = []
        done = set()
        for arc in sorted(incoming, key=label_key):
            if arc in done:
                continue
            strand = []
            current = arc
            while current not in done:
                done.add(current)
                strand.append(current)
                i, k = incoming[current]
                current = self.crossings[i].arcs[(k + 2) % 4]
            result.append(tuple(strand))
        result.extend((arc,) for arc in self.loops)
        result.sort(key=lambda strand: label_key(strand[0]))
        return tuple(result)

    @property
    def arcs(self) -> Tuple[str, ...]:
        labels = {arc for crossing in self.crossings for arc in crossing.arcs}
        labels.update(self.loops)
        return tuple(sorted(labels, key=label_key))

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def components(self) -> Tuple[Tuple[str, ...], ...]:
        """Arcs of each link component in traversal order."""
        return self._components

    @property
    def component_count(self) -> int:
        return len(self._components)

    @property
    def writhe(self) -> int:
        return sum(crossing.sign for crossing in self.crossings)

    def crossing(self, crossing_id: str) -> Crossing:
        for crossing in self.crossings:
            if crossing.id == crossing_id:
                return crossing
        raise DiagramError(f"Unknown crossing id: {crossing_id}")

    def switch(self, crossing_id: str) -> "LinkDiagram":
        """Diagram with one crossing changed; circle hints are dropped."""
        target = self.crossing(crossing_id)
        return LinkDiagram(
            tuple(c.switched() if c is target else c for c in self.crossings),
            self.loops,
        )

    def with_sign(self, crossing_id: str, sign: int) -> "LinkDiagram":
        """Diagram in which the crossing has the given sign."""
        if self.crossing(crossing_id).sign == sign:
            return self
        return self.switch(crossing_id)

    def smooth(self, crossing_id: str) -> "LinkDiagram":
        """Diagram with one crossing smoothed along the orientation; hints are dropped."""
        target = self.crossing(crossing_id)
        parent: Dict[str, str] = {arc: arc for arc in target.arcs}

        def find(arc: str) -> str:
            while parent[arc] != arc:
                parent[arc] = parent[parent[arc]]
                arc = parent[arc]
            return arc

        for first, second in target.smoothing_pairs():
            root_a, root_b = find(first), find(second)
            if root_a != root_b:
                low, high = sorted((root_a, root_b), key=label_key)
                parent[high] = low

        def rename(arc: str) -> str:
            return find(arc) if arc in parent else arc

        remaining = tuple(
            Crossing(c.id, tuple(rename(arc) for arc in c.arcs), c.sign)
            for c in self.crossings if c is not target
        )
        used = {arc for c in remaining for arc in c.arcs}
        roots = sorted({find(arc) for arc in target.arcs}, key=label_key)
        new_loops = tuple(root for root in roots if root not in used)
        return LinkDiagram(remaining, self.loops + new_loops)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"crossings": [c.to_dict() for c in self.crossings]}
        data["loops"] = list(self.loops)
        if self.hints:
            data["hints"] = [hint.to_dict() for hint in self.hints]
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LinkDiagram":
        return cls(
            tuple(Crossing.from_dict(c) for c in data.get("crossings", [])),
            tuple(str(arc) for arc in data.get("loops", [])),
            tuple(CircleHint.from_dict(h) for h in data.get("hints", [])),
        )


def _orient(crossings: Sequence[Crossing], occurrences: Dict[str, List[Slot]]) -> Dict[str, Slot]:
    """
    Orient every strand and check the declared signs.

    Returns:
        For each arc, the (crossing, slot) where it ends, i.e. enters a crossing
    """
    incoming: Dict[str, Slot] = {}

    def other_place(arc: str, place: Slot) -> Slot:
        first, second = occurrences[arc]
        return second if first == place else first

    for start in sorted(occurrences, key=label_key):
        if start in incoming:
            continue
        # walk the strand in the direction that enters the first occurrence
        steps: List[Tuple[str, Slot]] = []
        arc, place = start, occurrences[start][0]
        while True:
            steps.append((arc, place))
            i, k = place
            nxt = crossings[i].arcs[(k + 2) % 4]
            arc, place = nxt, other_place(nxt, (i, (k + 2) % 4))
            if (arc, place) == steps[0]:
                break

        under_entries = {k for _, (_, k) in steps if k in (0, 2)}
        if under_entries == {0, 2}:
            first_arc = steps[0][0]
            raise DiagramError(f"Inconsistent orientation on the strand through arc {first_arc}")
        if under_entries == {2}:
            forward = False
        elif under_entries == {0}:
            forward = True
        else:
            # only over-passes: follow the first crossing's declared sign
            _, (i, k) = steps[0]
            forward = k == crossings[i].over_in_slot

        for arc, place in steps:
            incoming[arc] = place if forward else other_place(arc, place)

    for i, crossing in enumerate(crossings):
        over_in = 3 if incoming[crossing.arcs[3]] == (i, 3) else 1
        if incoming[crossing.arcs[over_in]] != (i, over_in):
            raise DiagramError(f"Crossing {crossing.id}: over strand has no consistent direction")
        derived = 1 if over_in == 3 else -1
        if derived != crossing.sign:
            raise DiagramError(
                f"Crossing {crossing.id}: declared sign {crossing.sign:+d} but the orientation "
                f"gives {derived:+d}"
            )
    return incoming


def braid_closure(word: Iterable[int], strands: int) -> LinkDiagram:
    """
    PD diagram of the closure of a braid.

    Args:
        word: Generators; i stands for sigma_i and -i for its inverse (1-based)
        strands: Number of strands

    Returns:
        The closed braid diagram; untouched strands become loops
    """
    if strands < 1:
        raise DiagramError(f"A braid needs at least one strand, got {strands}")
    labels = (str(n) for n in count(1))
    top = [next(labels) for _ in range(strands)]
    current = list(top)
    raw: List[Tuple[str, Tuple[str, str, str, str], int]] = []

    for index, generator in enumerate(word, start=1):
        i = abs(generator) - 1
        if generator == 0 or i + 1 >= strands:
            raise DiagramError(f"Generator {generator} is out of range for {strands} strands")
        left, right = current[i], current[i + 1]
        new_left, new_right = next(labels), next(labels)
        # strands run downward: left goes to the right and vice versa
        if generator > 0:
            arcs = (left, new_left, new_right, right)
        else:
            arcs = (right, left, new_left, new_right)
        raw.append((f"x{index}", arcs, 1 if generator > 0 else -1))
        current[i], current[i + 1] = new_left, new_right

    closing = {bottom: head for bottom, head in zip(current, top) if bottom != head}
    crossings = tuple(
        Crossing(crossing_id, tuple(closing.get(arc, arc) for arc in arcs), sign)
        for crossing_id, arcs, sign in raw
    )
    loops = tuple(head for bottom, head in zip(current, top) if bottom == head)
    return LinkDiagram(crossings, loops)


def unknot() -> LinkDiagram:
    return LinkDiagram((), ("1",))


def unlink(components_total: int) -> LinkDiagram:
    return LinkDiagram((), tuple(str(n) for n in range(1, components_total + 1)))
