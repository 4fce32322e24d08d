"""Planar sl2/sl3 web bases, tableau posets and the Specht-to-web transition matrix."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    Capacity,
    CoefficientOverflow,
    CycleDetected,
    InvalidEmbedding,
    InvalidShape,
    MalformedWord,
    NotGraded,
    NotManifold,
    PathInconsistent,
    SolveFailed,
    Unbalanced,
    WeblabError,
    YamanouchiViolation,
)
from .tableaux import Shape, StandardTableau, boundary_word, build_poset, enumerate_syt, word_to_tableau

__all__ = [
    "Capacity",
    "CoefficientOverflow",
    "CycleDetected",
    "InvalidEmbedding",
    "InvalidShape",
    "MalformedWord",
    "NotGraded",
    "NotManifold",
    "PathInconsistent",
    "Shape",
    "SolveFailed",
    "StandardTableau",
    "Unbalanced",
    "WeblabError",
    "YamanouchiViolation",
    "boundary_word",
    "build_poset",
    "enumerate_syt",
    "word_to_tableau",
]
