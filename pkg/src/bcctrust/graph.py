"""Address registry and the directed BCC trust graph.

A trust edge sender -> recipient exists when at least one email from the
sender bcc-ed that recipient; parallel links collapse and self-addressed
bcc edges are dropped. Graphs are immutable once built: adjacency lives in
compact CSR arrays over a contiguous local index space, with registry node
ids at the boundary, so the traversal kernels can run straight on the
arrays.
"""

from __future__ import annotations

import csv
from typing import Iterable, Iterator

import numpy as np

from .corpus import EmailRecord, normalize_address
from .errors import NodeNotFoundError, UsageError

EDGE_LIST_HEADER = ("src_address", "dst_address")
ID_MAP_HEADER = ("id", "address")


class AddressRegistry:
    """Bijective address <-> integer node id mapping.

    Ids are assigned densely in first-seen order. A registry loaded from an
    external id-map file keeps the file's ids verbatim (they may be sparse,
    e.g. a dataset's own numbering); new addresses then continue from
    max(id) + 1.
    """

    __slots__ = ("_forward", "_reverse", "_next_id")

    def __init__(self) -> None:
        self._forward: dict[str, int] = {}
        self._reverse: dict[int, str] = {}
        self._next_id = 0

    def __len__(self) -> int:
        return len(self._forward)

    def __contains__(self, address: str) -> bool:
        return normalize_address(address) in self._forward

    def add(self, address: str) -> int:
        """Id of the (normalized) address, registering it if unseen."""
        addr = normalize_address(address)
        if not addr:
            raise UsageError("cannot register an empty address")
        node_id = self._forward.get(addr)
        if node_id is None:
            node_id = self._next_id
            self._forward[addr] = node_id
            self._reverse[node_id] = addr
            self._next_id += 1
        return node_id

    def resolve(self, address: str) -> int | None:
        """Existing id for the address, or None when unknown."""
        return self._forward.get(normalize_address(address))

    def reverse_resolve(self, node_id: int) -> str:
        try:
            return self._reverse[node_id]
        except KeyError:
            raise UsageError(f"node id {node_id} is not in the registry") from None

    def addresses(self) -> Iterator[str]:
        return iter(self._forward)

    @classmethod
    def from_csv(cls, path) -> "AddressRegistry":
        """Load an id map (CSV ``id,address``; header row optional)."""
        registry = cls()
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            for row in reader:
                if not row or (reader.line_num == 1 and tuple(c.strip().lower() for c in row) == ID_MAP_HEADER):
                    continue
                if len(row) != 2:
                    raise UsageError(f"{path}:{reader.line_num}: id map rows must be id,address")
                try:
                    node_id = int(row[0])
                except ValueError:
                    raise UsageError(f"{path}:{reader.line_num}: non-integer id {row[0]!r}") from None
                addr = normalize_address(row[1])
                if not addr:
                    raise UsageError(f"{path}:{reader.line_num}: empty address")
                if addr in registry._forward or node_id in registry._reverse:
                    raise UsageError(f"{path}:{reader.line_num}: duplicate id or address")
                registry._forward[addr] = node_id
                registry._reverse[node_id] = addr
        registry._next_id = max(registry._reverse, default=-1) + 1
        return registry

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(ID_MAP_HEADER)
            for node_id in sorted(self._reverse):
                writer.writerow([node_id, self._reverse[node_id]])


def _csr(rows: np.ndarray, cols: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((cols, rows))
    rows = rows[order]
    cols = np.ascontiguousarray(cols[order], dtype=np.int32)
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int32)
    np.cumsum(counts, out=indptr[1:])
    for arr in (indptr, cols):
        arr.setflags(write=False)
    return indptr, cols


class TrustGraph:
    """Immutable directed simple graph whose nodes are registry ids."""

    __slots__ = ("registry", "_ids", "_index", "_out_indptr", "_out_indices", "_in_indptr", "_in_indices")

    def __init__(self, registry, ids, out_csr, in_csr):
        self.registry: AddressRegistry = registry
        self._ids: np.ndarray = ids
        self._index: dict[int, int] = {int(r): i for i, r in enumerate(ids)}
        self._out_indptr, self._out_indices = out_csr
        self._in_indptr, self._in_indices = in_csr

    @classmethod
    def from_edges(
        cls,
        registry: AddressRegistry,
        edges: Iterable[tuple[int, int]],
        nodes: Iterable[int] = (),
    ) -> "TrustGraph":
        """Build from (src_id, dst_id) pairs.

        Self-loops are dropped and parallel edges collapse. ``nodes`` lists
        ids that must appear even when isolated (induced subgraphs keep
        their full node set).
        """
        edge_set = {(int(u), int(v)) for u, v in edges if int(u) != int(v)}
        id_set = {u for u, _ in edge_set} | {v for _, v in edge_set} | {int(x) for x in nodes}
        ids = np.fromiter(sorted(id_set), dtype=np.int32, count=len(id_set))
        ids.setflags(write=False)
        index = {int(r): i for i, r in enumerate(ids)}
        m = len(edge_set)
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        for pos, (u, v) in enumerate(edge_set):
            src[pos] = index[u]
            dst[pos] = index[v]
        n = len(ids)
        return cls(registry, ids, _csr(src, dst, n), _csr(dst, src, n))

    # -- size ---------------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._ids)

    @property
    def edge_count(self) -> int:
        return len(self._out_indices)

    # -- node access ----------------------------------------------------------

    def nodes(self) -> np.ndarray:
        """Registry ids present in this graph, ascending. Read-only view."""
        return self._ids

    def has_node(self, node_id: int) -> bool:
        return int(node_id) in self._index

    def to_local(self, node_id: int) -> int:
        try:
            return self._index[int(node_id)]
        except KeyError:
            raise NodeNotFoundError(f"node {node_id} is not in this graph") from None

    def to_registry(self, local: int) -> int:
        return int(self._ids[local])

    def address_of(self, node_id: int) -> str:
        return self.registry.reverse_resolve(int(node_id))

    # -- adjacency ------------------------------------------------------------

    @property
    def out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        return self._out_indptr, self._out_indices

    @property
    def in_csr(self) -> tuple[np.ndarray, np.ndarray]:
        return self._in_indptr, self._in_indices

    def out_neighbors(self, node_id: int) -> np.ndarray:
        i = self.to_local(node_id)
        return self._ids[self._out_indices[self._out_indptr[i] : self._out_indptr[i + 1]]]

    def in_neighbors(self, node_id: int) -> np.ndarray:
        i = self.to_local(node_id)
        return self._ids[self._in_indices[self._in_indptr[i] : self._in_indptr[i + 1]]]

    def out_degree(self, node_id: int) -> int:
        i = self.to_local(node_id)
        return int(self._out_indptr[i + 1] - self._out_indptr[i])

    def in_degree(self, node_id: int) -> int:
        i = self.to_local(node_id)
        return int(self._in_indptr[i + 1] - self._in_indptr[i])

    def has_edge(self, src_id: int, dst_id: int) -> bool:
        if not (self.has_node(src_id) and self.has_node(dst_id)):
            return False
        i = self.to_local(src_id)
        row = self._out_indices[self._out_indptr[i] : self._out_indptr[i + 1]]
        j = self.to_local(dst_id)
        pos = np.searchsorted(row, j)
        return pos < len(row) and row[pos] == j

    def edges(self) -> Iterator[tuple[int, int]]:
        """(src_id, dst_id) pairs in local CSR order."""
        for i in range(self.node_count):
            u = int(self._ids[i])
            for j in self._out_indices[self._out_indptr[i] : self._out_indptr[i + 1]]:
                yield u, int(self._ids[j])

    def address_edges(self) -> list[tuple[str, str]]:
        """Edge list as address pairs, sorted lexicographically (canonical)."""
        resolve = self.registry.reverse_resolve
        return sorted((resolve(u), resolve(v)) for u, v in self.edges())


def build_trust_graph(records: Iterable[EmailRecord], registry: AddressRegistry) -> TrustGraph:
    """Directed trust graph with one edge per distinct (sender, bcc) pair.

    Every address seen on a considered pair is registered, including the
    endpoints of dropped self-loops; only edge endpoints become graph nodes.
    """
    edges: set[tuple[int, int]] = set()
    for record in records:
        s = registry.add(record.sender)
        for addr in record.bcc:
            t = registry.add(addr)
            if s != t:
                edges.add((s, t))
    return TrustGraph.from_edges(registry, edges)


def induced_subgraph(graph: TrustGraph, node_ids: Iterable[int]) -> TrustGraph:
    """Subgraph on the given nodes with exactly the edges joining them."""
    keep = {int(n) for n in node_ids if graph.has_node(n)}
    edges = [
        (u, int(v))
        for u in keep
        for v in graph.out_neighbors(u)
        if int(v) in keep
    ]
    return TrustGraph.from_edges(graph.registry, edges, nodes=keep)


def write_edge_list(graph: TrustGraph, path) -> None:
    """Canonical edge list: ``src_address,dst_address`` sorted lexicographically."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(EDGE_LIST_HEADER)
        writer.writerows(graph.address_edges())


def read_edge_list(path, registry: AddressRegistry | None = None) -> TrustGraph:
    """Load a graph from a canonical edge-list file (see write_edge_list)."""
    if registry is None:
        registry = AddressRegistry()
    edges = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row or (reader.line_num == 1 and tuple(c.strip().lower() for c in row) == EDGE_LIST_HEADER):
                continue
            if len(row) != 2 or not row[0].strip() or not row[1].strip():
                raise UsageError(f"{path}:{reader.line_num}: edge rows must be src_address,dst_address")
            edges.append((registry.add(row[0]), registry.add(row[1])))
    return TrustGraph.from_edges(registry, edges)
