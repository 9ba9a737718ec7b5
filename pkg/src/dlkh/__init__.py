"""Diagramless Khovanov homology from state surfaces."""
from .diagram import LinkDiagram, parse_pd, serialize, validate, mirror

__all__ = ["LinkDiagram", "parse_pd", "serialize", "validate", "mirror"]
