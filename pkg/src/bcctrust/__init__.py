"""BCC trust-network extraction and shortest-paths suspect search."""

from .centrality import (
    CentralityScores,
    CentralSelection,
    betweenness_centrality,
    eigenvector_centrality,
    select_mi,
    select_mm,
)
from .corpus import (
    EmailRecord,
    RecipientStats,
    bcc_histogram,
    filter_bcc_emails,
    parse_email_records,
    partition_by_recipient_count,
    recipient_stats,
    select_k_bcc,
)
from .ego import EgoNetwork, ego_subnetwork
from .graph import AddressRegistry, TrustGraph, build_trust_graph, induced_subgraph
from .search import (
    PathResult,
    SuspectList,
    TrustNetwork,
    all_geodesics,
    common_nodes,
    direct_path,
    hop_distance,
    intermediary_frequency,
    run_trust_search,
)

__version__ = "0.1.0"

__all__ = [
    "AddressRegistry",
    "CentralSelection",
    "CentralityScores",
    "EgoNetwork",
    "EmailRecord",
    "PathResult",
    "RecipientStats",
    "SuspectList",
    "TrustGraph",
    "TrustNetwork",
    "all_geodesics",
    "bcc_histogram",
    "betweenness_centrality",
    "build_trust_graph",
    "common_nodes",
    "direct_path",
    "ego_subnetwork",
    "eigenvector_centrality",
    "filter_bcc_emails",
    "hop_distance",
    "induced_subgraph",
    "intermediary_frequency",
    "parse_email_records",
    "partition_by_recipient_count",
    "recipient_stats",
    "run_trust_search",
    "select_k_bcc",
    "select_mi",
    "select_mm",
]
