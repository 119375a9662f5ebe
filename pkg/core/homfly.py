"""
HOMFLY polynomial by skein recursion.

Normalization: P(unknot) = 1 and v^-1 P(D+) - v P(D-) = z P(D0), hence

    positive crossing:  P(D) = v^2 P(D switched) + v z P(D smoothed)
    negative crossing:  P(D) = v^-2 P(D switched) - v^-1 z P(D smoothed)

Components are walked in a fixed order from fixed basepoints. The first
crossing met on its under-strand is switched and smoothed; once every crossing
is met first on its over-strand the diagram is a split unlink of k components
and evaluates to ((v^-1 - v) / z)^(k - 1).
"""

from typing import Dict, List, Optional, Tuple

from core.diagram import LinkDiagram
from core.exceptions import ComputationLimitError, DiagramError
from core.poly import LaurentPoly2
from utils.logger import get_logger


MAX_CROSSINGS = 16

CodeCrossing = Tuple[int, int, int, int, int]
Code = Tuple[CodeCrossing, ...]

DELTA = LaurentPoly2.from_terms({(-1, -1): 1, (1, -1): -1})
_V2 = LaurentPoly2.monomial(1, 2, 0)
_VZ = LaurentPoly2.monomial(1, 1, 1)
_V_MINUS2 = LaurentPoly2.monomial(1, -2, 0)
_MINUS_V_MINUS1_Z = LaurentPoly2.monomial(-1, -1, 1)


def _incoming(code: Code) -> Dict[int, Tuple[int, int]]:
    heads = {}
    for i, (a, b, _, d, sign) in enumerate(code):
        heads[a] = (i, 0)
        if sign > 0:
            heads[d] = (i, 3)
        else:
            heads[b] = (i, 1)
    return heads


def _canonical(code: Code) -> Code:
    """Renumber arcs 0, 1, ... along the components, smallest arc first."""
    heads = _incoming(code)
    renumber: Dict[int, int] = {}
    for start in sorted(heads):
        arc = start
        while arc not in renumber:
            renumber[arc] = len(renumber)
            i, k = heads[arc]
            arc = code[i][(k + 2) % 4]
    return tuple(sorted(
        (renumber[a], renumber[b], renumber[c], renumber[d], sign) for a, b, c, d, sign in code
    ))


def _scan(code: Code) -> Tuple[Optional[int], int]:
    """
    Walk a canonical code in arc order.

    Returns:
        Index of the first crossing first met on its under-strand (None when
        the diagram is descending) and the number of components
    """
    heads = _incoming(code)
    seen = set()
    first_under = None
    components_total = 0
    for arc in range(len(heads)):
        i, k = heads[arc]
        # a new component starts wherever the previous arc does not lead here
        if arc == 0 or code[heads[arc - 1][0]][(heads[arc - 1][1] + 2) % 4] != arc:
            components_total += 1
        if i in seen:
            continue
        seen.add(i)
        if k == 0 and first_under is None:
            first_under = i
    return first_under, components_total


def _switch(crossing: CodeCrossing) -> CodeCrossing:
    a, b, c, d, sign = crossing
    if sign > 0:
        return (d, a, b, c, -1)
    return (b, c, d, a, 1)


def _smooth(code: Code, index: int) -> Tuple[Code, int]:
    """Smooth one crossing; returns the remaining crossings and the number of new loops."""
    a, b, c, d, sign = code[index]
    pairs = ((a, b), (d, c)) if sign > 0 else ((a, d), (b, c))
    parent = {arc: arc for arc in (a, b, c, d)}

    def find(arc: int) -> int:
        while parent[arc] != arc:
            arc = parent[arc]
        return arc

    for first, second in pairs:
        root_a, root_b = find(first), find(second)
        if root_a != root_b:
            parent[max(root_a, root_b)] = min(root_a, root_b)

    def rename(arc: int) -> int:
        return find(arc) if arc in parent else arc

    rest = tuple(
        (rename(p), rename(q), rename(r), rename(t), s)
        for j, (p, q, r, t, s) in enumerate(code) if j != index
    )
    used = {arc for crossing in rest for arc in crossing[:4]}
    loops = len({find(arc) for arc in (a, b, c, d)} - used)
    return rest, loops


def _pieces(code: Code) -> List[Code]:
    """Split a code into groups of crossings connected through shared arcs."""
    parent = list(range(len(code)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: Dict[int, int] = {}
    for i, crossing in enumerate(code):
        for arc in crossing[:4]:
            if arc in owner:
                root_a, root_b = find(owner[arc]), find(i)
                if root_a != root_b:
                    parent[root_b] = root_a
            else:
                owner[arc] = i

    groups: Dict[int, List[CodeCrossing]] = {}
    for i, crossing in enumerate(code):
        groups.setdefault(find(i), []).append(crossing)
    return [tuple(group) for group in groups.values()]


class HomflyEvaluator:
    """Skein-recursion evaluator with a memo on canonical codes."""

    def __init__(self, max_crossings: int = MAX_CROSSINGS, split: bool = True):
        """
        Initialize the evaluator.

        Args:
            max_crossings: Largest diagram accepted
            split: Factor split diagrams into pieces before recursing
        """
        self.max_crossings = max_crossings
        self.split = split
        self.memo: Dict[Code, LaurentPoly2] = {}
        self.evaluations = 0
        self.cache_hits = 0
        self.logger = get_logger()

    def evaluate(self, d: LinkDiagram) -> LaurentPoly2:
        """
        HOMFLY polynomial of a diagram.

        Raises:
            ComputationLimitError: more crossings than max_crossings
            DiagramError: the diagram has no components
        """
        if d.crossing_count > self.max_crossings:
            raise ComputationLimitError(
                f"Diagram has {d.crossing_count} crossings; the limit is {self.max_crossings}"
            )
        if not d.crossings and not d.loops:
            raise DiagramError("The empty diagram has no HOMFLY polynomial")

        self.logger.log_operation_start("HOMFLY", f"{d.crossing_count} crossing(s)")
        index = {arc: i for i, arc in enumerate(d.arcs)}
        code = tuple(
            tuple(index[arc] for arc in crossing.arcs) + (crossing.sign,) for crossing in d.crossings
        )
        result = self._value(code, len(d.loops))
        self.logger.log_cache_stats("homfly", self.evaluations, self.cache_hits)
        self.logger.log_operation_end("HOMFLY", True, result.to_text())
        return result

    def _value(self, code: Code, loops: int) -> LaurentPoly2:
        if not code:
            return DELTA ** (loops - 1)
        canon = _canonical(code)
        if self.split:
            pieces = _pieces(canon)
            if len(pieces) > 1 or loops:
                result = DELTA ** (len(pieces) + loops - 1)
                for piece in pieces:
                    result = result * self._skein(_canonical(piece))
                return result
        elif loops:
            return DELTA ** loops * self._skein(canon)
        return self._skein(canon)

    def _skein(self, canon: Code) -> LaurentPoly2:
        cached = self.memo.get(canon)
        if cached is not None:
            self.cache_hits += 1
            return cached
        self.evaluations += 1

        first_under, components_total = _scan(canon)
        if first_under is None:
            value = DELTA ** (components_total - 1)
        else:
            sign = canon[first_under][4]
            switched = canon[:first_under] + (_switch(canon[first_under]),) + canon[first_under + 1:]
            smoothed, new_loops = _smooth(canon, first_under)
            p_switched = self._value(switched, 0)
            p_smoothed = self._value(smoothed, new_loops)
            if sign > 0:
                value = _V2 * p_switched + _VZ * p_smoothed
            else:
                value = _V_MINUS2 * p_switched + _MINUS_V_MINUS1_Z * p_smoothed

        self.memo[canon] = value
        return value


def homfly(d: LinkDiagram, max_crossings: int = MAX_CROSSINGS, split: bool = True) -> LaurentPoly2:
    """HOMFLY polynomial of a link diagram (P(unknot) = 1)."""
    return HomflyEvaluator(max_crossings, split).evaluate(d)


def skein_residual(d: LinkDiagram, crossing_id: str, max_crossings: int = MAX_CROSSINGS) -> LaurentPoly2:
    """
    v^-1 P(D+) - v P(D-) - z P(D0) at one crossing; zero when the skein relation holds.
    """
    evaluator = HomflyEvaluator(max_crossings)
    positive = evaluator.evaluate(d.with_sign(crossing_id, 1))
    negative = evaluator.evaluate(d.with_sign(crossing_id, -1))
    smoothed = evaluator.evaluate(d.smooth(crossing_id))
    return (
        LaurentPoly2.monomial(1, -1, 0) * positive
        - LaurentPoly2.monomial(1, 1, 0) * negative
        - LaurentPoly2.monomial(1, 0, 1) * smoothed
    )
