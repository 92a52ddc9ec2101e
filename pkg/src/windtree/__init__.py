"""Rational billiards and periodic planar wind-tree models.

Exact planar primitives, translation surfaces from polygon gluings,
billiard unfolding, relative homology with the intersection pairing,
Z^k-covers, the wind-tree pipeline with recurrence certification, and
a floating-point trajectory simulator.
"""

from .cover import (CoverDescriptor, DeckCoordinate, DependentClasses,
                    NonIntegralDecomposition, cover_descriptor, cross_edge,
                    lifts_cylinder, tau_decomposition, torus_cover_cycles)
from .exactgeom import (DihedralElement, DihedralGroup, RatAngle, Vec2,
                        angle_diff_set, apply, dihedral_group,
                        unfolding_constant, vec)
from .flow import (StartInsideObstacle, Trajectory, cover_trace,
                   diffusion_exponent, direction_battery, envelope_slope,
                   first_hit_brute, first_hit_lattice, free_point,
                   recurrence_stats, trace, write_stats_csv)
from .homology import (DualClass, EdgeBasis, InducedMap, NotAutomorphism,
                       NotInvolution, RelHomologyClass, dual_class_from_exits,
                       dual_of_pair, edge_basis, h, holonomy, induced_map,
                       intersection, iota_split, rel_class_from_walks)
from .modelfile import (EmbeddingParams, ParseError, SemanticError,
                        SimulationParams, parse_model, serialize_model)
from .models import (BreaksRationality, CertCondition, DisconnectedComplement,
                     GoodCylinder, Irrational, LEmbedding, ModelObstacle,
                     ModelSurface, NoValidPlacement, NotRegularSingularity,
                     ObstacleOverlap, ObstacleTouchesBoundary,
                     RecurrenceCertificate, SegmentBlocked, WindTreeModel,
                     build_model, certify, embed_L, good_cylinder, obstacle,
                     unfold_model)
from .surface import (Disconnected, InconsistentGenus, NonMultipleOf2Pi,
                      NotSimpleGarage, PairingMismatch, Polygon,
                      SelfPaired, SingularityClass, TranslationSurface,
                      UnpairedEdge, build_surface, cut_slits, genus,
                      validate, validate_garage)
from .svgout import render_svg
from .unfold import (AngleCoordinateMismatch, BilliardTable, Rationality,
                     UnfoldedSurface, Wall, fold, rationality, unfold)

__version__ = "0.1.0"

__all__ = [
    "AngleCoordinateMismatch", "BilliardTable", "BreaksRationality",
    "CertCondition", "CoverDescriptor",
    "DeckCoordinate", "DependentClasses", "DihedralElement", "DihedralGroup",
    "Disconnected", "DisconnectedComplement", "DualClass", "EdgeBasis",
    "EmbeddingParams", "InconsistentGenus",
    "GoodCylinder", "InducedMap", "Irrational", "LEmbedding", "ModelObstacle",
    "ModelSurface", "NonIntegralDecomposition", "NonMultipleOf2Pi",
    "NoValidPlacement", "NotSimpleGarage",
    "NotAutomorphism", "NotInvolution", "NotRegularSingularity",
    "ObstacleOverlap", "ObstacleTouchesBoundary", "PairingMismatch",
    "ParseError", "Polygon",
    "RatAngle", "Rationality", "RecurrenceCertificate", "RelHomologyClass",
    "SegmentBlocked", "SelfPaired", "SemanticError", "SimulationParams",
    "SingularityClass", "StartInsideObstacle", "Trajectory",
    "TranslationSurface", "UnfoldedSurface", "UnpairedEdge", "Vec2",
    "Wall", "WindTreeModel",
    "angle_diff_set", "apply", "build_model", "build_surface", "certify",
    "cover_descriptor", "cover_trace", "cross_edge", "cut_slits",
    "diffusion_exponent", "dihedral_group", "direction_battery",
    "dual_class_from_exits", "dual_of_pair", "edge_basis", "embed_L",
    "envelope_slope", "first_hit_brute", "first_hit_lattice", "fold",
    "free_point", "genus", "good_cylinder", "h", "holonomy", "induced_map",
    "intersection", "iota_split", "lifts_cylinder", "obstacle",
    "parse_model", "rationality", "recurrence_stats", "rel_class_from_walks",
    "render_svg", "serialize_model", "tau_decomposition",
    "torus_cover_cycles", "trace", "unfold", "unfold_model",
    "unfolding_constant", "validate", "validate_garage", "vec",
    "write_stats_csv",
]
