"""Solvable Lie algebras of dimension <= 4: exact construction, identification,
isomorphism testing and finite-field censuses."""

from solvlie.field import GF, QQ, FieldElement, FieldSpec, field_from_text

__all__ = ["GF", "QQ", "FieldElement", "FieldSpec", "field_from_text"]

__version__ = "0.1.0"
