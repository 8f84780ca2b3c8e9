"""Exact geometric hypergraphs: pattern detectors, witness extraction and extremal search."""
from .detect import PatternKind, PatternSpec, Witness, detect
from .exact import Point2, Point3, Segment2
from .hypergraph import GeometricHypergraph, PointSet, generate_convex, generate_random, star_construction

__all__ = [
    "GeometricHypergraph", "PatternKind", "PatternSpec", "Point2", "Point3", "PointSet",
    "Segment2", "Witness", "detect", "generate_convex", "generate_random", "star_construction",
]
