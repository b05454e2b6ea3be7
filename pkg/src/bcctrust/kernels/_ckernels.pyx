# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled graph kernels: BFS levels, Brandes accumulation, adjacency matvec.

Same contracts as ``_pykernels``; CSR arrays must be contiguous int32.
"""

import numpy as np


def bfs_distances(const int[::1] indptr, const int[::1] indices, int n, int source):
    out = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = out
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef int head = 0, tail = 0, u, v, j, du1

    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du1 = dist[u] + 1
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = du1
                queue[tail] = v
                tail += 1
    return out


def brandes_betweenness(const int[::1] out_indptr, const int[::1] out_indices,
                        const int[::1] in_indptr, const int[::1] in_indices, int n):
    bc_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] bc = bc_arr
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    sigma_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] sigma = sigma_arr
    delta_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] delta = delta_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = queue_arr

    cdef int s, u, v, w, j, qi, head, tail, du1, dw1
    cdef double su, coeff

    for s in range(n):
        head = 0
        tail = 0
        dist[s] = 0
        sigma[s] = 1.0
        queue[tail] = s
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du1 = dist[u] + 1
            su = sigma[u]
            for j in range(out_indptr[u], out_indptr[u + 1]):
                v = out_indices[j]
                if dist[v] < 0:
                    dist[v] = du1
                    queue[tail] = v
                    tail += 1
                if dist[v] == du1:
                    sigma[v] += su
        for qi in range(tail - 1, 0, -1):
            w = queue[qi]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw1 = dist[w] - 1
            for j in range(in_indptr[w], in_indptr[w + 1]):
                u = in_indices[j]
                if dist[u] == dw1:
                    delta[u] += sigma[u] * coeff
            bc[w] += delta[w]
        for qi in range(tail):
            w = queue[qi]
            dist[w] = -1
            sigma[w] = 0.0
            delta[w] = 0.0
    return bc_arr


def adj_matvec(const int[::1] indptr, const int[::1] indices, const double[::1] x):
    cdef int n = len(indptr) - 1
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] y = out
    cdef int i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc += x[indices[j]]
        y[i] = acc
    return out
