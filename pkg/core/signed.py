"""
Signed interior polynomial.

    I+(G) = sum over subsets S of the negative edges of (-1)^|S| I'(G - S)

where every term is evaluated on the unsigned deletion. A graph with a cycle
whose edge signs alternate has I+ = 0; that test runs first unless disabled.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from core.cycles import CycleWitness, find_alternating_cycle
from core.exceptions import ComputationLimitError, GraphError
from core.graph import (
    SignedBipartiteGraph,
    add_edges,
    delete_edges,
    forget_signs,
    set_sign,
)
from core.interior import InteriorCalculator, canonical_key
from core.poly import IntPolynomial
from utils.logger import get_logger


MAX_NEGATIVE_EDGES = 20
X = IntPolynomial.monomial(1)


@dataclass(frozen=True)
class LedgerTerm:
    """One subset term of the alternating sum."""

    deleted: Tuple[str, ...]
    sign: int
    polynomial: IntPolynomial

    def to_dict(self) -> Dict[str, Any]:
        return {
            "deleted": list(self.deleted),
            "sign": self.sign,
            "polynomial": self.polynomial.to_dict(),
            "text": self.polynomial.to_text(),
        }


@dataclass(frozen=True)
class LedgerRow:
    """Terms with the same subset size and the same polynomial, collected."""

    size: int
    sign: int
    polynomial: IntPolynomial
    multiplicity: int

    @property
    def contribution(self) -> IntPolynomial:
        return self.polynomial * (self.sign * self.multiplicity)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "sign": self.sign,
            "multiplicity": self.multiplicity,
            "polynomial": self.polynomial.to_dict(),
            "text": self.polynomial.to_text(),
        }


@dataclass
class SignedInteriorResult:
    """Value of I+ together with how it was obtained."""

    polynomial: IntPolynomial
    shortcut: Optional[CycleWitness] = None
    terms: List[LedgerTerm] = field(default_factory=list)

    def rows(self) -> List[LedgerRow]:
        grouped: Dict[Tuple[int, IntPolynomial], List[LedgerTerm]] = {}
        for term in self.terms:
            grouped.setdefault((len(term.deleted), term.polynomial), []).append(term)
        rows = [
            LedgerRow(size, (-1) ** size, polynomial, len(members))
            for (size, polynomial), members in grouped.items()
        ]
        rows.sort(key=lambda row: row.size)
        return rows

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = dict(self.polynomial.to_dict())
        data["text"] = self.polynomial.to_text()
        data["shortcut"] = self.shortcut.to_dict() if self.shortcut else None
        if self.terms:
            data["ledger"] = {
                "rows": [row.to_dict() for row in self.rows()],
                "terms": [term.to_dict() for term in self.terms],
            }
        return data


def gray_code_toggles(n: int) -> Iterator[int]:
    """Bit flipped at each step of the reflected Gray code on n bits (2^n - 1 steps)."""
    for step in range(1, 1 << n):
        yield (step & -step).bit_length() - 1


class SignedInteriorCalculator:
    """Evaluates I+ by the subset sum over negative edges."""

    def __init__(
        self,
        use_shortcut: bool = True,
        max_negative_edges: int = MAX_NEGATIVE_EDGES,
        keep_terms: bool = False
    ):
        """
        Initialize the calculator.

        Args:
            use_shortcut: Return 0 straight away when an alternating cycle exists
            max_negative_edges: Refuse the subset sum above this many negative edges
            keep_terms: Record every subset term for the ledger
        """
        self.use_shortcut = use_shortcut
        self.max_negative_edges = max_negative_edges
        self.keep_terms = keep_terms
        self.cache: Dict[bytes, IntPolynomial] = {}
        self.logger = get_logger()

    def compute(self, g: SignedBipartiteGraph) -> SignedInteriorResult:
        """
        Compute I+(g).

        Raises:
            GraphError: g is empty
            ComputationLimitError: too many negative edges for the subset sum
        """
        if g.is_empty():
            raise GraphError("The signed interior polynomial is not defined for the empty graph")

        if self.use_shortcut:
            witness = find_alternating_cycle(g)
            if witness is not None:
                self.logger.info(f"Alternating cycle {list(witness.edge_ids)}: I+ vanishes")
                return SignedInteriorResult(IntPolynomial(), shortcut=witness)

        negative = list(g.negative_edges)
        if len(negative) > self.max_negative_edges:
            raise ComputationLimitError(
                f"{len(negative)} negative edges exceed the subset-sum limit of "
                f"{self.max_negative_edges}"
            )

        self.logger.log_operation_start("Signed interior", f"{len(negative)} negative edge(s)")
        interior = InteriorCalculator(cache=self.cache)
        present = [True] * len(negative)
        current = forget_signs(g)

        result = SignedInteriorResult(IntPolynomial())
        self._add_term(result, (), interior.compute(current))

        for bit in gray_code_toggles(len(negative)):
            edge = negative[bit]
            if present[bit]:
                current = delete_edges(current, [edge.id])
            else:
                current = add_edges(current, [replace(edge, sign=1)])
            present[bit] = not present[bit]
            deleted = tuple(e.id for e, kept in zip(negative, present) if not kept)
            self._add_term(result, deleted, interior.compute(current))

        self.logger.log_operation_end("Signed interior", True, result.polynomial.to_text())
        return result

    def _add_term(
        self,
        result: SignedInteriorResult,
        deleted: Tuple[str, ...],
        polynomial: IntPolynomial
    ) -> None:
        sign = (-1) ** len(deleted)
        result.polynomial = result.polynomial + polynomial * sign
        if self.keep_terms:
            result.terms.append(LedgerTerm(deleted, sign, polynomial))


def signed_interior(
    g: SignedBipartiteGraph,
    use_shortcut: bool = True,
    max_negative_edges: int = MAX_NEGATIVE_EDGES
) -> IntPolynomial:
    """
    Signed interior polynomial I+ of g.

    Args:
        g: Signed bipartite graph
        use_shortcut: Test for an alternating cycle before summing
        max_negative_edges: Largest number of negative edges for the subset sum

    Returns:
        I+(g)
    """
    calculator = SignedInteriorCalculator(use_shortcut, max_negative_edges)
    return calculator.compute(g).polynomial


def signed_interior_ledger(g: SignedBipartiteGraph, use_shortcut: bool = True) -> SignedInteriorResult:
    """I+ with every subset term recorded."""
    return SignedInteriorCalculator(use_shortcut, keep_terms=True).compute(g)


def signed_interior_recursive(g: SignedBipartiteGraph, use_shortcut: bool = True) -> IntPolynomial:
    """
    I+ by the skein lemma I+(G) = I+(G + eps) - I+(G - eps) on a negative edge eps.

    G + eps makes eps positive. Alternating cycles are detected at every node.
    """
    if g.is_empty():
        raise GraphError("The signed interior polynomial is not defined for the empty graph")

    memo: Dict[bytes, IntPolynomial] = {}
    interior_cache: Dict[bytes, IntPolynomial] = {}

    def evaluate(h: SignedBipartiteGraph) -> IntPolynomial:
        key = canonical_key(h)
        if key in memo:
            return memo[key]
        if use_shortcut and find_alternating_cycle(h) is not None:
            value = IntPolynomial()
        elif not h.negative_edges:
            value = InteriorCalculator(cache=interior_cache).compute(h)
        else:
            edge_id = h.negative_edges[0].id
            value = evaluate(set_sign(h, edge_id, 1)) - evaluate(delete_edges(h, [edge_id]))
        memo[key] = value
        return value

    return evaluate(g)


def skein_triple_identity_check(
    g: SignedBipartiteGraph,
    edge_id: str
) -> Tuple[IntPolynomial, IntPolynomial]:
    """
    Both sides of I+(G) = I+(G + eps) - I+(G - eps), computed independently.

    Raises:
        GraphError: the edge is not negative
    """
    if g.edge(edge_id).sign > 0:
        raise GraphError(f"Edge {edge_id} is not negative")
    lhs = signed_interior(g, use_shortcut=False)
    rhs = (
        signed_interior(set_sign(g, edge_id, 1), use_shortcut=False)
        - signed_interior(delete_edges(g, [edge_id]), use_shortcut=False)
    )
    return lhs, rhs


def pendant_factor(signs: Sequence[int]) -> IntPolynomial:
    """
    I+ of two vertices joined by parallel edges with the given signs.

    All positive gives 1, m negative edges give (-1)^(m + 1) x, mixed gives 0.
    Attaching such a pendant vertex multiplies I+ by this factor.
    """
    if not signs:
        raise ValueError("A pendant vertex needs at least one edge")
    if all(sign > 0 for sign in signs):
        return IntPolynomial.constant(1)
    if all(sign < 0 for sign in signs):
        return X * (-1) ** (len(signs) + 1)
    return IntPolynomial()
