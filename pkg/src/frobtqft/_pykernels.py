"""Pure-Python contraction kernels.

Tensors are flat row-major lists of Python ints; every axis has the same
extent ``dim``.  The compiled twin in ``_ckernels.pyx`` exposes the same
three functions with identical semantics.
"""

BACKEND = "python"


def _strides(rank, dim):
    return [dim ** (rank - 1 - k) for k in range(rank)]


def transpose(data, rank, dim, perm):
    """Reorder axes: result axis ``k`` is source axis ``perm[k]``."""
    if rank == 0:
        return list(data)
    src = _strides(rank, dim)
    offsets = [0]
    for k in range(rank):
        s = src[perm[k]]
        offsets = [o + j * s for o in offsets for j in range(dim)]
    return [data[o] for o in offsets]


def outer(a, b):
    return [x * y for x in a for y in b]


def tensordot(a, a_rank, b, b_rank, dim, a_axes, b_axes):
    """Contract ``a_axes`` of ``a`` against ``b_axes`` of ``b``.

    Result axes are the free axes of ``a`` (in order) followed by the free
    axes of ``b``.
    """
    j = len(a_axes)
    if j == 0:
        return outer(a, b)
    free_a = [k for k in range(a_rank) if k not in a_axes]
    free_b = [k for k in range(b_rank) if k not in b_axes]
    lhs = transpose(a, a_rank, dim, free_a + list(a_axes))
    rhs = transpose(b, b_rank, dim, list(b_axes) + free_b)
    n_i = dim ** len(free_a)
    n_j = dim ** j
    n_k = dim ** len(free_b)
    # sparse rows of rhs; structure-constant tensors are mostly zero
    rows = []
    for jj in range(n_j):
        base = jj * n_k
        rows.append([(k, rhs[base + k]) for k in range(n_k) if rhs[base + k]])
    out = [0] * (n_i * n_k)
    for i in range(n_i):
        base_a = i * n_j
        base_o = i * n_k
        for jj in range(n_j):
            x = lhs[base_a + jj]
            if not x:
                continue
            for k, y in rows[jj]:
                out[base_o + k] += x * y
    return out
