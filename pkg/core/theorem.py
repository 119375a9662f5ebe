"""
Morton's bound and the top of the HOMFLY polynomial.

For a diagram D with c crossings and s Seifert circles the z-degree of the
HOMFLY polynomial is at most c - s + 1. The coefficient of that power of z
(the top) equals v^e I+(v^2), where I+ is the signed interior polynomial of
the Seifert graph and e = |positive| - |negative| - (|E| + |V|) + 1.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.cycles import CycleWitness, find_alternating_cycle
from core.diagram import LinkDiagram
from core.exceptions import ComputationLimitError
from core.graph import SignedBipartiteGraph, is_homogeneous
from core.homfly import MAX_CROSSINGS, HomflyEvaluator
from core.poly import IntPolynomial, LaurentPoly2, substitute_v_squared
from core.seifert import seifert_decompose
from core.signed import MAX_NEGATIVE_EDGES, signed_interior, signed_interior_recursive
from utils.logger import get_logger


def morton_bound(d: LinkDiagram) -> int:
    """c(D) - s(D) + 1."""
    return d.crossing_count - seifert_decompose(d).circle_count + 1


def homfly_top(d: LinkDiagram, max_crossings: int = MAX_CROSSINGS) -> LaurentPoly2:
    """Coefficient of z^(c - s + 1) in the HOMFLY polynomial; zero when the bound is not attained."""
    return HomflyEvaluator(max_crossings).evaluate(d).coeff_of_z(morton_bound(d))


def top_exponent(g: SignedBipartiteGraph) -> int:
    return len(g.positive_edges) - len(g.negative_edges) - g.vertex_count + 1


def signed_interior_any(
    g: SignedBipartiteGraph,
    use_shortcut: bool = True,
    max_negative_edges: int = MAX_NEGATIVE_EDGES
) -> IntPolynomial:
    """I+ by the subset sum, falling back to the skein-lemma recursion above the edge limit."""
    try:
        return signed_interior(g, use_shortcut, max_negative_edges)
    except ComputationLimitError as e:
        get_logger().info(f"{e}; using the skein-lemma recursion")
        return signed_interior_recursive(g, use_shortcut)


def predicted_top(g: SignedBipartiteGraph, use_shortcut: bool = True) -> LaurentPoly2:
    """v^e I+(v^2) for a Seifert graph g."""
    return substitute_v_squared(signed_interior_any(g, use_shortcut), top_exponent(g))


@dataclass
class VerificationReport:
    """Both sides of the top-coefficient identity and everything computed on the way."""

    equal: bool
    crossings: int
    seifert_circles: int
    morton_bound: int
    max_z_degree: Optional[int]
    exponent: int
    positive_edges: int
    negative_edges: int
    signed_interior: IntPolynomial
    top: LaurentPoly2
    predicted_top: LaurentPoly2
    homfly: LaurentPoly2
    graph: SignedBipartiteGraph
    alternating_cycle: Optional[CycleWitness] = None
    homogeneous: bool = False
    errors: List[str] = field(default_factory=list)

    @property
    def sharp(self) -> bool:
        """Morton's inequality is an equality."""
        return not self.top.is_zero()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "equal": self.equal,
            "crossings": self.crossings,
            "seifert_circles": self.seifert_circles,
            "morton_bound": self.morton_bound,
            "max_z_degree": self.max_z_degree,
            "sharp": self.sharp,
            "exponent": self.exponent,
            "positive_edges": self.positive_edges,
            "negative_edges": self.negative_edges,
            "signed_interior": self.signed_interior.to_dict(),
            "top": self.top.to_dict(),
            "predicted_top": self.predicted_top.to_dict(),
            "alternating_cycle": self.alternating_cycle.to_dict() if self.alternating_cycle else None,
            "homogeneous": self.homogeneous,
            "homfly": self.homfly.to_dict(),
            "graph": self.graph.to_dict(),
            "errors": list(self.errors),
        }


def verify_main_theorem(
    d: LinkDiagram,
    max_crossings: int = MAX_CROSSINGS,
    use_shortcut: bool = True
) -> VerificationReport:
    """
    Compute the top of the HOMFLY polynomial and v^e I+(v^2) independently and compare.

    Args:
        d: Link diagram
        max_crossings: Crossing budget for the HOMFLY evaluation
        use_shortcut: Let I+ vanish on an alternating cycle without summing

    Returns:
        VerificationReport

    Raises:
        ComputationLimitError: the diagram exceeds the crossing budget
    """
    logger = get_logger()
    logger.log_operation_start("Verify", f"{d.crossing_count} crossing(s)")

    decomposition = seifert_decompose(d)
    g = decomposition.graph
    bound = d.crossing_count - decomposition.circle_count + 1

    polynomial = HomflyEvaluator(max_crossings).evaluate(d)
    top = polynomial.coeff_of_z(bound)

    interior = signed_interior_any(g, use_shortcut)
    exponent = top_exponent(g)
    predicted = substitute_v_squared(interior, exponent)

    report = VerificationReport(
        equal=top == predicted,
        crossings=d.crossing_count,
        seifert_circles=decomposition.circle_count,
        morton_bound=bound,
        max_z_degree=polynomial.max_z_degree(),
        exponent=exponent,
        positive_edges=len(g.positive_edges),
        negative_edges=len(g.negative_edges),
        signed_interior=interior,
        top=top,
        predicted_top=predicted,
        homfly=polynomial,
        graph=g,
        alternating_cycle=find_alternating_cycle(g),
        homogeneous=is_homogeneous(g),
    )
    if polynomial.max_z_degree() is not None and polynomial.max_z_degree() > bound:
        report.errors.append(
            f"z-degree {polynomial.max_z_degree()} exceeds the Morton bound {bound}"
        )
        report.equal = False
    if not report.equal and not report.errors:
        report.errors.append(f"top {top.to_text()} differs from v^e I+(v^2) = {predicted.to_text()}")

    logger.log_operation_end("Verify", report.equal, f"exponent {exponent}, top {top.to_text()}")
    return report
