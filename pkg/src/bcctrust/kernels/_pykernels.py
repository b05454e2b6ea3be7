"""Pure-Python/NumPy fallback kernels.

API-identical to the compiled ``_ckernels`` extension; used when the
extension is unavailable or when BCCTRUST_KERNELS=python forces it.
CSR inputs are int32 ``indptr``/``indices`` arrays over a contiguous
local index space.
"""

from __future__ import annotations

import numpy as np


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, n: int, source: int) -> np.ndarray:
    """Hop counts from ``source``; -1 marks unreachable nodes."""
    ip = indptr.tolist()
    idx = indices.tolist()
    dist = [-1] * n
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        du1 = dist[u] + 1
        for j in range(ip[u], ip[u + 1]):
            v = idx[j]
            if dist[v] < 0:
                dist[v] = du1
                queue.append(v)
    return np.asarray(dist, dtype=np.int32)


def brandes_betweenness(
    out_indptr: np.ndarray,
    out_indices: np.ndarray,
    in_indptr: np.ndarray,
    in_indices: np.ndarray,
    n: int,
) -> np.ndarray:
    """Directed betweenness, endpoints excluded.

    One BFS per source; dependencies are accumulated in reverse BFS order
    by scanning in-edges, so no predecessor lists are stored.
    """
    oip = out_indptr.tolist()
    oidx = out_indices.tolist()
    iip = in_indptr.tolist()
    iidx = in_indices.tolist()

    bc = [0.0] * n
    dist = [-1] * n
    sigma = [0.0] * n
    delta = [0.0] * n

    for s in range(n):
        dist[s] = 0
        sigma[s] = 1.0
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du1 = dist[u] + 1
            su = sigma[u]
            for j in range(oip[u], oip[u + 1]):
                v = oidx[j]
                if dist[v] < 0:
                    dist[v] = du1
                    queue.append(v)
                if dist[v] == du1:
                    sigma[v] += su
        for qi in range(len(queue) - 1, 0, -1):
            w = queue[qi]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw1 = dist[w] - 1
            for j in range(iip[w], iip[w + 1]):
                u = iidx[j]
                if dist[u] == dw1:
                    delta[u] += sigma[u] * coeff
            bc[w] += delta[w]
        # reset only the nodes this source reached
        for w in queue:
            dist[w] = -1
            sigma[w] = 0.0
            delta[w] = 0.0
    return np.asarray(bc, dtype=np.float64)


def adj_matvec(indptr: np.ndarray, indices: np.ndarray, x: np.ndarray) -> np.ndarray:
    """y[i] = sum of x over i's CSR neighbors (unweighted adjacency matvec)."""
    n = len(indptr) - 1
    y = np.zeros(n, dtype=np.float64)
    if len(indices) == 0:
        return y
    contrib = x[indices]
    nonempty = indptr[:-1] < indptr[1:]
    # reduceat over the starts of non-empty rows: empty rows in between do
    # not advance the pointer, so consecutive starts bound each segment.
    starts = indptr[:-1][nonempty]
    y[nonempty] = np.add.reduceat(contrib, starts)
    return y
