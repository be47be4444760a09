"""Exact computations with finite rings, their modules, and the torsion
theory generated by the small modules."""

from ringlab._core import (
    __version__,
    additive_description,
    analyze,
    check,
    default_corpus,
    hull,
    predicate_names,
    scan,
    suite_ids,
)

__all__ = [
    "__version__",
    "additive_description",
    "analyze",
    "check",
    "default_corpus",
    "hull",
    "predicate_names",
    "scan",
    "suite_ids",
]
