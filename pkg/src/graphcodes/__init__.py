"""Binary node-erasure-correcting codes over complete undirected graphs.

Two constructions on ``n`` nodes (``n`` prime): ``C2`` corrects any two node
failures with optimal redundancy ``2n - 1``; ``C3`` (2 primitive mod ``n``)
corrects any three with redundancy at most ``3n - 2``.
"""

from .double import decode_double
from .erasure import decode_erasures
from .errors import (
    DimensionTooLargeError,
    ErasedEdgeError,
    GraphCodeError,
    InconsistentInputError,
    InvalidSpecError,
    TooManyFailuresError,
    UndecodablePatternError,
)
from .graph import (
    Code,
    CodeSpec,
    ErasedGraph,
    LabeledGraph,
    edge_index,
    format_graph,
    is_codeword,
    parse_graph,
    shift_labels,
)
from .matrix import build_parity_check, encode, gf2_rank, random_codeword, systematic_form
from .oracle import graph_weight, min_distance, verify_all_patterns
from .ring import RingPoly

__version__ = "0.1.0"

__all__ = [
    "Code",
    "CodeSpec",
    "DimensionTooLargeError",
    "ErasedEdgeError",
    "ErasedGraph",
    "GraphCodeError",
    "InconsistentInputError",
    "InvalidSpecError",
    "LabeledGraph",
    "RingPoly",
    "TooManyFailuresError",
    "UndecodablePatternError",
    "build_parity_check",
    "decode_double",
    "decode_erasures",
    "edge_index",
    "encode",
    "format_graph",
    "gf2_rank",
    "graph_weight",
    "is_codeword",
    "min_distance",
    "parse_graph",
    "random_codeword",
    "shift_labels",
    "systematic_form",
    "verify_all_patterns",
]
