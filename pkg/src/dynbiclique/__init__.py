"""dynbiclique: exact maximal bicliques of a dynamic bipartite graph.

The maintained state pairs a bipartite graph with a compact signature
store of its maximal bicliques. Batched edge additions and deletions
enumerate only the change (bicliques that became or stopped being
maximal) in time proportional to that change, instead of re-enumerating
everything.
"""

from .engine import (
    BatchTimings,
    ChangeSet,
    MaintainedState,
    apply_additions,
    apply_additions_streaming,
    apply_deletions,
    apply_mixed,
    compose_changesets,
    iter_new_bicliques,
    iter_subsumed,
    split_bicliques,
)
from .graph import (
    BatchError,
    BipartiteGraph,
    Edge,
    EdgeBatch,
    GraphError,
    MissingEdgeError,
    MissingVertexError,
    Side,
)
from .mbe import Biclique, closure, maximal_bicliques, mine_bicliques
from .oracle import (
    Convention,
    OracleSizeError,
    baseline_changeset,
    brute_force_bicliques,
    brute_force_changeset,
    enumeration_diff,
)
from .generators import (
    SplitMix64,
    StreamSpec,
    cocktail_party,
    make_stream,
    random_bipartite,
    single_edge_extremal,
)
from .signatures import (
    SignatureStore,
    StoreConsistencyError,
    StoreMode,
    canonical_bytes,
    decode_canonical,
    signature64,
)

__version__ = "0.1.0"

__all__ = [
    "BatchError",
    "BatchTimings",
    "Biclique",
    "BipartiteGraph",
    "ChangeSet",
    "Convention",
    "Edge",
    "EdgeBatch",
    "GraphError",
    "MaintainedState",
    "MissingEdgeError",
    "MissingVertexError",
    "OracleSizeError",
    "Side",
    "SignatureStore",
    "SplitMix64",
    "StoreConsistencyError",
    "StoreMode",
    "StreamSpec",
    "apply_additions",
    "apply_additions_streaming",
    "apply_deletions",
    "apply_mixed",
    "baseline_changeset",
    "brute_force_bicliques",
    "brute_force_changeset",
    "canonical_bytes",
    "closure",
    "cocktail_party",
    "compose_changesets",
    "decode_canonical",
    "enumeration_diff",
    "iter_new_bicliques",
    "iter_subsumed",
    "make_stream",
    "maximal_bicliques",
    "mine_bicliques",
    "random_bipartite",
    "signature64",
    "single_edge_extremal",
    "split_bicliques",
]
