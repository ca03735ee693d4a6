"""Distinguished graphs of three-dimensional gradient-like Morse-Smale systems.

The invariant is a bicoloured graph on the Heegaard surface (two circle
families) together with the boundary words of the complementary patches.
This package validates such graphs, decides equivalence and conjugacy,
checks realizability, computes surface invariants and enumerates small
censuses.
"""

from distgraph.dgf import Document, graph_from_json, graph_to_json, parse, serialize
from distgraph.enumeration import (
    MUTATION_TARGETS,
    CensusEntry,
    EnumerationParams,
    OracleDisagreement,
    enumerate_census,
    mutate,
    random_relabel,
)
from distgraph.equivalence import (
    EquivalenceWitness,
    GraphIsomorphism,
    InnerAutomorphism,
    are_conjugate,
    are_equivalent,
    canonical_code,
    enumerate_isomorphisms,
    is_equivalence_witness,
)
from distgraph.errors import (
    ContractViolation,
    DistGraphError,
    IncompleteMappingError,
    InvalidReferenceError,
    NotASurfaceError,
    ParseError,
    ResourceError,
    ValidationError,
)
from distgraph.model import (
    Corner,
    DistinguishedGraph,
    Edge,
    Family,
    HalfEdge,
    Letter,
    Patch,
    corners,
    degree,
    graph,
    make_word,
    validate,
)
from distgraph.realizability import (
    RealizabilityReport,
    SurfaceInvariants,
    Verdict,
    euler_characteristic,
    is_connected,
    is_orientable,
    is_realizable,
    orientability_and_genus,
)
from distgraph.words import cyclic_equal, min_rotation, reverse_word, substitute, words_match

__all__ = [
    "CensusEntry", "ContractViolation", "Corner", "DistGraphError", "DistinguishedGraph", "Document",
    "Edge", "EnumerationParams", "EquivalenceWitness", "Family", "GraphIsomorphism", "HalfEdge",
    "IncompleteMappingError", "InnerAutomorphism", "InvalidReferenceError", "Letter", "MUTATION_TARGETS",
    "NotASurfaceError", "OracleDisagreement", "ParseError", "Patch", "RealizabilityReport",
    "ResourceError", "SurfaceInvariants", "ValidationError", "Verdict", "are_conjugate", "are_equivalent",
    "canonical_code", "corners", "cyclic_equal", "degree", "enumerate_census", "enumerate_isomorphisms",
    "euler_characteristic", "graph", "graph_from_json", "graph_to_json", "is_connected",
    "is_equivalence_witness", "is_orientable", "is_realizable", "make_word", "min_rotation", "mutate",
    "orientability_and_genus", "parse", "random_relabel", "reverse_word", "serialize", "substitute",
    "validate", "words_match",
]
