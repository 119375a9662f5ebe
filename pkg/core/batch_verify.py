"""
Batch verification of the top-coefficient identity.

Features:
- Every sign pattern on the designated edges of each catalogue template
- Optional random plane graphs from a seeded generator
- Progress callbacks
- Per-case error recording without aborting the run
"""

import random
from dataclasses import dataclass, field
from datetime import datetime
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from core.generators import random_plane_graph
from core.graph import SignedBipartiteGraph, with_signs
from core.homfly import MAX_CROSSINGS
from core.median import PlaneEmbedding, median_construct
from core.theorem import VerificationReport, verify_main_theorem
from database.catalog import FixtureCatalog, get_catalog
from utils.formats import load_graph
from utils.logger import get_logger


@dataclass
class SuiteCase:
    """One plane signed graph to verify."""
    name: str
    graph: SignedBipartiteGraph
    embedding: PlaneEmbedding

    @property
    def signature(self) -> str:
        return "".join("+" if edge.sign > 0 else "-" for edge in self.graph.edges)


@dataclass
class BatchVerifyResult:
    """Result of a verification run."""
    total_cases: int
    passed: int = 0
    failed: int = 0
    errored: int = 0
    results: List[Tuple[SuiteCase, VerificationReport]] = field(default_factory=list)
    errors: List[Tuple[str, str]] = field(default_factory=list)  # (case name, message)
    start_time: Optional[datetime] = None
    end_time: Optional[datetime] = None

    @property
    def duration(self) -> float:
        """Get duration in seconds."""
        if self.start_time and self.end_time:
            return (self.end_time - self.start_time).total_seconds()
        return 0.0

    @property
    def success(self) -> bool:
        return self.failed == 0 and self.errored == 0

    def to_dict(self) -> Dict:
        return {
            "total": self.total_cases,
            "passed": self.passed,
            "failed": self.failed,
            "errored": self.errored,
            "failures": [
                {"case": case.name, "errors": report.errors}
                for case, report in self.results if not report.equal
            ],
            "errors": [{"case": name, "message": message} for name, message in self.errors],
        }


def sign_assignments(g: SignedBipartiteGraph, designated: Sequence[str]) -> Iterator[SignedBipartiteGraph]:
    """All 2^k re-signings of the designated edges, the others keep their signs."""
    for signs in product((1, -1), repeat=len(designated)):
        yield with_signs(g, dict(zip(designated, signs)))


def generate_suite(
    catalog: Optional[FixtureCatalog] = None,
    max_edges: int = 10,
    random_cases: int = 0,
    seed: int = 0
) -> List[SuiteCase]:
    """
    Build the suite: catalogue templates over all designated sign patterns,
    then random plane graphs.

    Templates with more than max_edges edges are skipped.
    """
    logger = get_logger()
    catalog = catalog or get_catalog()
    cases: List[SuiteCase] = []
    for info in catalog.suite_templates():
        g, emb = load_graph(catalog.path_of(info))
        if g.edge_count > max_edges:
            logger.info(f"Skipping template {info.name}: {g.edge_count} edges")
            continue
        emb = emb or PlaneEmbedding()
        for signed in sign_assignments(g, info.designated):
            case = SuiteCase(info.name, signed, emb)
            case.name = f"{info.name}[{case.signature}]"
            cases.append(case)

    rng = random.Random(seed)
    for index in range(1, random_cases + 1):
        g, emb = random_plane_graph(rng, max_edges)
        cases.append(SuiteCase(f"random{index}", g, emb))
    return cases


class BatchVerifier:
    """
    Runs verify_main_theorem over many cases.

    Features:
    - Sequential verification
    - Progress callbacks
    - Detailed error reporting
    """

    def __init__(
        self,
        progress_callback: Optional[Callable[[str, int, int], None]] = None,
        max_crossings: int = MAX_CROSSINGS,
        use_shortcut: bool = True
    ):
        """
        Initialize the verifier.

        Args:
            progress_callback: Callback function(message, current, total)
            max_crossings: Crossing budget per case
            use_shortcut: Alternating-cycle shortcut for I+
        """
        self.logger = get_logger()
        self.progress_callback = progress_callback
        self.max_crossings = max_crossings
        self.use_shortcut = use_shortcut

    def verify_cases(self, cases: List[SuiteCase]) -> BatchVerifyResult:
        """
        Verify every case.

        Returns:
            BatchVerifyResult object
        """
        result = BatchVerifyResult(total_cases=len(cases), start_time=datetime.now())
        self.logger.log_operation_start("Verification suite", f"{len(cases)} cases")

        for index, case in enumerate(cases, 1):
            self._report_progress(f"Verifying {case.name}... ({index}/{len(cases)})", index, len(cases))
            try:
                diagram = median_construct(case.graph, case.embedding)
                report = verify_main_theorem(diagram, self.max_crossings, self.use_shortcut)
            except Exception as e:
                result.errored += 1
                result.errors.append((case.name, str(e)))
                self.logger.error(f"Error verifying {case.name}: {e}")
                continue

            result.results.append((case, report))
            if report.equal:
                result.passed += 1
            else:
                result.failed += 1
                self.logger.error(f"Mismatch on {case.name}: {'; '.join(report.errors)}")

        result.end_time = datetime.now()
        self.logger.log_operation_end(
            "Verification suite",
            result.success,
            f"Passed: {result.passed}, Failed: {result.failed}, Errors: {result.errored}"
        )
        return result

    def _report_progress(self, message: str, current: int, total: int):
        if self.progress_callback:
            try:
                self.progress_callback(message, current, total)
            except Exception as e:
                self.logger.warning(f"Error in progress callback: {e}")


def verify_suite(
    catalog: Optional[FixtureCatalog] = None,
    max_edges: int = 10,
    random_cases: int = 0,
    seed: int = 0,
    max_crossings: int = MAX_CROSSINGS,
    progress_callback: Optional[Callable[[str, int, int], None]] = None
) -> BatchVerifyResult:
    """
    Convenience function: generate the suite and verify it.

    Returns:
        BatchVerifyResult object
    """
    cases = generate_suite(catalog, max_edges, random_cases, seed)
    return BatchVerifier(progress_callback, max_crossings).verify_cases(cases)
