"""
Exception types raised by the toolkit.

Every class also derives from the matching built-in exception, so code that
only catches ValueError or RuntimeError keeps working.
"""

from typing import Optional


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(ToolkitError, ValueError):
    """Invalid graph data or graph operation (unknown label, color mismatch, ...)."""


class DiagramError(ToolkitError, ValueError):
    """Malformed or inconsistently oriented link diagram."""


class EmbeddingError(ToolkitError, ValueError):
    """Rotation system that is malformed or does not describe a plane embedding."""


class SeriesOrderError(ToolkitError, ValueError):
    """Arithmetic between power series truncated at different orders."""


class ComputationLimitError(ToolkitError, RuntimeError):
    """A configured computation budget was exceeded."""


class ParseError(ToolkitError, ValueError):
    """Syntax or content error in an input file."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        source: Optional[str] = None
    ):
        """
        Initialize the error.

        Args:
            message: Human readable description
            line: 1-based line number, if known
            column: 1-based column number, if known
            source: File name or other input description
        """
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.source = source

    def __str__(self) -> str:
        location = [self.source or "<input>"]
        if self.line is not None:
            location.append(str(self.line))
            if self.column is not None:
                location.append(str(self.column))
        return f"{':'.join(location)}: {self.message}"
