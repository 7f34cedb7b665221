"""Bisimilarity tools for Basic Process Algebra."""

from ._core import (
    System,
    canonicalize,
    parse_system,
)

__all__ = ["System", "canonicalize", "parse_system"]
