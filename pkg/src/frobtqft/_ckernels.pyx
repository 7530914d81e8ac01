# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled contraction kernels.

Same contract as ``_pykernels``.  ``tensordot`` switches to a 64-bit integer
inner loop whenever the operand magnitudes guarantee no overflow, and falls
back to Python-object arithmetic otherwise, so results stay exact.
"""
from libc.stdlib cimport malloc, free

BACKEND = "cython"

# |sum| <= max|a| * max|b| * n_j must stay below 2**62
cdef object _I64_BOUND = 1 << 62


def transpose(list data, Py_ssize_t rank, Py_ssize_t dim, perm):
    cdef Py_ssize_t n = len(data)
    cdef Py_ssize_t k, pos, src
    if rank == 0:
        return list(data)
    cdef Py_ssize_t* stride = <Py_ssize_t*> malloc(rank * sizeof(Py_ssize_t))
    cdef Py_ssize_t* count = <Py_ssize_t*> malloc(rank * sizeof(Py_ssize_t))
    cdef list out = [None] * n
    try:
        # source strides first, then reorder them by perm
        count[rank - 1] = 1
        for k in range(rank - 2, -1, -1):
            count[k] = count[k + 1] * dim
        for k in range(rank):
            stride[k] = count[<Py_ssize_t> perm[k]]
        for k in range(rank):
            count[k] = 0
        src = 0
        for pos in range(n):
            out[pos] = data[src]
            k = rank - 1
            while k >= 0:
                count[k] += 1
                src += stride[k]
                if count[k] < dim:
                    break
                src -= stride[k] * dim
                count[k] = 0
                k -= 1
    finally:
        free(stride)
        free(count)
    return out


def outer(list a, list b):
    cdef list out = []
    cdef object x, y
    for x in a:
        if not x:
            out.extend([0] * len(b))
            continue
        for y in b:
            out.append(x * y)
    return out


cdef list _matmul_obj(list lhs, list rhs, Py_ssize_t n_i, Py_ssize_t n_j,
                      Py_ssize_t n_k):
    cdef list out = [0] * (n_i * n_k)
    cdef list rows = []
    cdef list row
    cdef Py_ssize_t i, jj, k, base_a, base_o, base
    cdef object x, y
    for jj in range(n_j):
        base = jj * n_k
        row = []
        for k in range(n_k):
            y = rhs[base + k]
            if y:
                row.append((k, y))
        rows.append(row)
    for i in range(n_i):
        base_a = i * n_j
        base_o = i * n_k
        for jj in range(n_j):
            x = lhs[base_a + jj]
            if not x:
                continue
            for k, y in <list> rows[jj]:
                out[base_o + k] = out[base_o + k] + x * y
    return out


cdef list _matmul_i64(list lhs, list rhs, Py_ssize_t n_i, Py_ssize_t n_j,
                      Py_ssize_t n_k):
    cdef Py_ssize_t i, jj, k, base_a, base_o, base_b
    cdef long long x
    cdef long long* a = <long long*> malloc(n_i * n_j * sizeof(long long))
    cdef long long* b = <long long*> malloc(n_j * n_k * sizeof(long long))
    cdef long long* c = <long long*> malloc(n_i * n_k * sizeof(long long))
    cdef list out
    try:
        for i in range(n_i * n_j):
            a[i] = lhs[i]
        for i in range(n_j * n_k):
            b[i] = rhs[i]
        for i in range(n_i * n_k):
            c[i] = 0
        for i in range(n_i):
            base_a = i * n_j
            base_o = i * n_k
            for jj in range(n_j):
                x = a[base_a + jj]
                if x == 0:
                    continue
                base_b = jj * n_k
                for k in range(n_k):
                    c[base_o + k] += x * b[base_b + k]
        out = [c[i] for i in range(n_i * n_k)]
    finally:
        free(a)
        free(b)
        free(c)
    return out


cdef object _maxabs(list xs):
    cdef object m = 0
    cdef object x
    for x in xs:
        if x > m:
            m = x
        elif -x > m:
            m = -x
    return m


def tensordot(list a, Py_ssize_t a_rank, list b, Py_ssize_t b_rank,
              Py_ssize_t dim, a_axes, b_axes):
    cdef Py_ssize_t j = len(a_axes)
    if j == 0:
        return outer(a, b)
    free_a = [k for k in range(a_rank) if k not in a_axes]
    free_b = [k for k in range(b_rank) if k not in b_axes]
    lhs = transpose(a, a_rank, dim, free_a + list(a_axes))
    rhs = transpose(b, b_rank, dim, list(b_axes) + free_b)
    cdef Py_ssize_t n_i = int(dim) ** len(free_a)
    cdef Py_ssize_t n_j = int(dim) ** j
    cdef Py_ssize_t n_k = int(dim) ** len(free_b)
    ma = _maxabs(lhs)
    mb = _maxabs(rhs)
    if ma < _I64_BOUND and mb < _I64_BOUND and ma * mb * n_j < _I64_BOUND:
        return _matmul_i64(lhs, rhs, n_i, n_j, n_k)
    return _matmul_obj(lhs, rhs, n_i, n_j, n_k)
