# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled ordering kernels; same contract as ``_kernels_py``."""
import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()


cdef inline Py_ssize_t _find(Py_ssize_t *parent, Py_ssize_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef long _score(Py_ssize_t n_nodes, const Py_ssize_t[:] us, const Py_ssize_t[:] vs,
                 const unsigned char[:] flags, Py_ssize_t *order, Py_ssize_t m,
                 Py_ssize_t *parent, unsigned char *flag) noexcept nogil:
    cdef Py_ssize_t i, k, a, b
    cdef long joins = 0
    for i in range(n_nodes):
        parent[i] = i
        flag[i] = flags[i]
    for i in range(m):
        k = order[i]
        a = _find(parent, us[k])
        b = _find(parent, vs[k])
        if flag[a] and flag[b]:
            joins += 1
        if a != b:
            parent[b] = a
            flag[a] = flag[a] | flag[b]
    return joins


def flagged_joins(Py_ssize_t n_nodes, us, vs, flags, orders):
    if len(us) == 0:
        return [0 for _ in orders]
    cdef const Py_ssize_t[:] u = np.ascontiguousarray(us, dtype=np.intp)
    cdef const Py_ssize_t[:] v = np.ascontiguousarray(vs, dtype=np.intp)
    cdef const unsigned char[:] f = np.ascontiguousarray(flags, dtype=np.uint8)
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t[:, ::1] rows = np.ascontiguousarray(orders, dtype=np.intp).reshape(-1, m)
    cdef Py_ssize_t r, nrows = rows.shape[0]
    out = np.empty(nrows, dtype=np.int64)
    cdef long long[:] res = out
    cdef Py_ssize_t *parent = <Py_ssize_t *> malloc(max(n_nodes, 1) * sizeof(Py_ssize_t))
    cdef unsigned char *flag = <unsigned char *> malloc(max(n_nodes, 1))
    if parent == NULL or flag == NULL:
        free(parent)
        free(flag)
        raise MemoryError()
    try:
        with nogil:
            for r in range(nrows):
                res[r] = _score(n_nodes, u, v, f, &rows[r, 0], m, parent, flag)
    finally:
        free(parent)
        free(flag)
    return out.tolist()


def flagged_join_range(Py_ssize_t n_nodes, us, vs, flags):
    cdef const Py_ssize_t[:] u = np.ascontiguousarray(us, dtype=np.intp)
    cdef const Py_ssize_t[:] v = np.ascontiguousarray(vs, dtype=np.intp)
    cdef const unsigned char[:] f = np.ascontiguousarray(flags, dtype=np.uint8)
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t *order = <Py_ssize_t *> malloc(max(m, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *c = <Py_ssize_t *> malloc(max(m, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *parent = <Py_ssize_t *> malloc(max(n_nodes, 1) * sizeof(Py_ssize_t))
    cdef unsigned char *flag = <unsigned char *> malloc(max(n_nodes, 1))
    cdef Py_ssize_t i, tmp
    cdef long s, lo, hi
    cdef long long count = 0
    if order == NULL or c == NULL or parent == NULL or flag == NULL:
        free(order); free(c); free(parent); free(flag)
        raise MemoryError()
    try:
        with nogil:
            for i in range(m):
                order[i] = i
                c[i] = 0
            s = _score(n_nodes, u, v, f, order, m, parent, flag)
            lo = s
            hi = s
            count = 1
            # Heap's algorithm, iterative
            i = 1
            while i < m:
                if c[i] < i:
                    if i % 2 == 0:
                        tmp = order[0]; order[0] = order[i]; order[i] = tmp
                    else:
                        tmp = order[c[i]]; order[c[i]] = order[i]; order[i] = tmp
                    s = _score(n_nodes, u, v, f, order, m, parent, flag)
                    if s < lo:
                        lo = s
                    if s > hi:
                        hi = s
                    count += 1
                    c[i] += 1
                    i = 1
                else:
                    c[i] = 0
                    i += 1
    finally:
        free(order); free(c); free(parent); free(flag)
    return lo, hi, count
