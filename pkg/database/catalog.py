"""
Catalogue of the shipped fixtures.

Each entry names a fixture file under fixtures/ together with the values it
is known to produce and the edges whose signs the verification suite varies.
"""

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.poly import IntPolynomial, LaurentPoly2
from utils.logger import get_logger


PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_CATALOG = os.path.join(PACKAGE_DIR, "catalog.json")
DEFAULT_FIXTURE_DIR = os.path.join(os.path.dirname(PACKAGE_DIR), "fixtures")


@dataclass
class FixtureInfo:
    """One catalogue entry."""
    name: str
    file: str
    kind: str
    description: str = ""
    interior: Optional[List[int]] = None
    signed_interior: Optional[List[int]] = None
    homfly: Optional[List[List[int]]] = None
    designated: List[str] = field(default_factory=list)
    suite: bool = False

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "FixtureInfo":
        """Create from dictionary."""
        return FixtureInfo(
            name=data["name"],
            file=data["file"],
            kind=data.get("kind", "graph"),
            description=data.get("description", ""),
            interior=data.get("interior"),
            signed_interior=data.get("signed_interior"),
            homfly=data.get("homfly"),
            designated=[str(edge_id) for edge_id in data.get("designated", [])],
            suite=bool(data.get("suite", False)),
        )

    def expected_interior(self) -> Optional[IntPolynomial]:
        return IntPolynomial(tuple(self.interior)) if self.interior is not None else None

    def expected_signed_interior(self) -> Optional[IntPolynomial]:
        if self.signed_interior is None:
            return None
        return IntPolynomial(tuple(self.signed_interior))

    def expected_homfly(self) -> Optional[LaurentPoly2]:
        if self.homfly is None:
            return None
        return LaurentPoly2(tuple(tuple(term) for term in self.homfly))


class FixtureCatalog:
    """
    Fixture catalogue loaded from JSON.

    Missing or malformed entries are logged and skipped, the rest stay usable.
    """

    def __init__(self, db_path: Optional[str] = None, fixture_dir: Optional[str] = None):
        """
        Initialize the catalogue.

        Args:
            db_path: Path to the JSON catalogue
            fixture_dir: Directory holding the fixture files
        """
        self.logger = get_logger()
        self.db_path = db_path or DEFAULT_CATALOG
        self.fixture_dir = fixture_dir or DEFAULT_FIXTURE_DIR
        self.fixtures: List[FixtureInfo] = []
        self.load()

    def load(self) -> bool:
        """
        Load the catalogue.

        Returns:
            True if successful
        """
        if not os.path.exists(self.db_path):
            self.logger.warning(f"Fixture catalogue not found: {self.db_path}")
            return False
        try:
            with open(self.db_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            self.logger.error(f"Error loading fixture catalogue: {e}")
            return False

        self.fixtures = []
        for entry in data.get("fixtures", []):
            try:
                self.fixtures.append(FixtureInfo.from_dict(entry))
            except (KeyError, TypeError) as e:
                self.logger.warning(f"Skipping malformed catalogue entry {entry!r}: {e}")
        self.logger.debug(f"Loaded {len(self.fixtures)} fixtures from {self.db_path}")
        return True

    def get(self, name: str) -> Optional[FixtureInfo]:
        for info in self.fixtures:
            if info.name == name:
                return info
        return None

    def path_of(self, info: FixtureInfo) -> str:
        return os.path.join(self.fixture_dir, info.file)

    def by_kind(self, kind: str) -> List[FixtureInfo]:
        return [info for info in self.fixtures if info.kind == kind]

    def suite_templates(self) -> List[FixtureInfo]:
        """Graph fixtures that take part in the verification suite."""
        return [info for info in self.fixtures if info.kind == "graph" and info.suite]


_catalog: Optional[FixtureCatalog] = None


def get_catalog() -> FixtureCatalog:
    """Get the shared catalogue instance."""
    global _catalog
    if _catalog is None:
        _catalog = FixtureCatalog()
    return _catalog
