"""Eigenvector and betweenness centrality plus MI/MM selection.

The most-influential (MI) node of a subnetwork is the top eigenvector
score; the middle-man (MM) is the top betweenness score. Selection returns
a degeneracy marker instead of a node when the top scores tie within
tolerance or the measure vanishes (max score 0); the search drops such
subnetworks entirely.

Eigenvector centrality runs on the symmetrized adjacency: directed BCC
graphs are near-acyclic, where the directed principal eigenvector
collapses to zero almost everywhere. Betweenness stays directed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Literal

import numpy as np

from . import kernels
from .errors import UsageError
from .graph import TrustGraph

TIE_TOLERANCE = 1e-9
POWER_TOLERANCE = 1e-12
POWER_MAX_ITER = 10_000


@dataclass(frozen=True)
class CentralityScores:
    kind: Literal["eigenvector", "betweenness"]
    scores: dict[int, float]
    converged: bool = True


@dataclass(frozen=True)
class CentralSelection:
    """Either a selected node or why none could be selected."""

    status: Literal["ok", "tied", "vanished"]
    node: int | None = None

    @property
    def is_degenerate(self) -> bool:
        return self.status != "ok"


def _symmetrized_csr(graph: TrustGraph) -> tuple[np.ndarray, np.ndarray]:
    """CSR of the direction-ignored adjacency (union of out- and in-edges)."""
    n = graph.node_count
    out_indptr, out_indices = graph.out_csr
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(out_indptr))
    dst = out_indices.astype(np.int64)
    keys = np.concatenate([src * n + dst, dst * n + src])
    keys = np.unique(keys)
    rows = keys // n
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int32)
    np.cumsum(counts, out=indptr[1:])
    indices = np.ascontiguousarray(keys % n, dtype=np.int32)
    return indptr, indices


def eigenvector_centrality(graph: TrustGraph) -> CentralityScores:
    """Power iteration on the symmetrized adjacency, scores scaled to max 1.

    Iterates on A + I: the shift leaves eigenvectors untouched but keeps
    bipartite components (any cycle-free symmetrization) from oscillating.
    """
    if graph.edge_count == 0:
        raise UsageError("eigenvector centrality needs at least one edge")
    indptr, indices = _symmetrized_csr(graph)
    n = graph.node_count
    x = np.full(n, 1.0 / n)
    converged = False
    for _ in range(POWER_MAX_ITER):
        y = kernels.adj_matvec(indptr, indices, x) + x
        y /= y.max()
        if np.max(np.abs(y - x)) < POWER_TOLERANCE:
            x = y
            converged = True
            break
        x = y
    scores = {int(node): float(v) for node, v in zip(graph.nodes(), x)}
    return CentralityScores("eigenvector", scores, converged)


def betweenness_centrality(graph: TrustGraph) -> CentralityScores:
    """Directed Brandes betweenness; endpoints excluded, geodesic fractions."""
    out_indptr, out_indices = graph.out_csr
    in_indptr, in_indices = graph.in_csr
    raw = kernels.brandes_betweenness(out_indptr, out_indices, in_indptr, in_indices, graph.node_count)
    scores = {int(node): float(v) for node, v in zip(graph.nodes(), raw)}
    return CentralityScores("betweenness", scores)


def _select_top(scores: dict[int, float], exclude: Collection[int]) -> CentralSelection:
    excluded = {int(e) for e in exclude}
    candidates = {node: s for node, s in scores.items() if node not in excluded}
    if not candidates:
        return CentralSelection("vanished")
    top = max(candidates.values())
    if top <= TIE_TOLERANCE:
        return CentralSelection("vanished")
    holders = [node for node, s in candidates.items() if top - s <= TIE_TOLERANCE]
    if len(holders) > 1:
        return CentralSelection("tied")
    return CentralSelection("ok", holders[0])


def select_mi(graph: TrustGraph, exclude: Collection[int] = ()) -> CentralSelection:
    """Most-influential node: unique top eigenvector score among candidates.

    ``exclude`` removes nodes from candidacy (the ego of an ego subnetwork:
    a zero-length path from the ego to itself says nothing).
    """
    if graph.edge_count == 0:
        return CentralSelection("vanished")
    return _select_top(eigenvector_centrality(graph).scores, exclude)


def select_mm(graph: TrustGraph, exclude: Collection[int] = ()) -> CentralSelection:
    """Middle-man node: unique top betweenness among candidates.

    All-zero betweenness (every node 2 hops or less from everything it
    reaches, e.g. 2- and 3-node subnetworks) means no middle man exists.
    """
    if graph.node_count == 0:
        return CentralSelection("vanished")
    return _select_top(betweenness_centrality(graph).scores, exclude)
