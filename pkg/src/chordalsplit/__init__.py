"""Certified recognition of chordal, split, and split-like graph classes.

The library classifies graphs into four nested families (chordal graphs,
split graphs, graphs with a clique whose removal leaves components of at
most k vertices, and the matching-extended variant of split graphs) and
always returns a machine-checkable certificate: an accepting partition, or
a rejection witness in the form of an induced hole, a fixed forbidden
pattern, or two disjoint non-adjacent connected sets.
"""

from .graph import (
    ComponentDecomposition,
    Graph,
    GraphInputError,
    build_graph,
    components,
    induced_subgraph,
    parse_edgelist,
    parse_graph6,
    shortest_path,
    write_graph6,
)
from .chordal import (
    EliminationResult,
    HoleWitness,
    NotPerfectEliminationError,
    check_peo,
    is_chordal,
    lexbfs,
    maximal_cliques_chordal,
)
from .patterns import (
    APairWitness,
    Embedding,
    Pattern,
    catalog,
    find_a_pair,
    find_induced,
    fixture_graph,
    him_check,
    pattern_by_name,
)
from .recognizers import (
    CertifiedTrace,
    CharacterizationError,
    GoodCliqueCertificate,
    NotChordalError,
    RejectionWitness,
    SmePartition,
    SplitPartition,
    UniversalVertexError,
    Verification,
    find_k_good_certified,
    find_k_good_scan,
    find_universal_vertex,
    sme_recognize,
    sme_recognize_linear,
    split_partition,
    verify_certificate,
)
from .oracle import (
    CorpusSpec,
    HarnessReport,
    SizeGuardError,
    enumerate_labeled_graphs,
    equivalence_harness,
    labeled_graph,
    oracle_a_free_exhaustive,
    oracle_hole_exhaustive,
    oracle_induced_contains,
    oracle_k_good_exhaustive,
    oracle_sme_exhaustive,
    random_chordal,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
