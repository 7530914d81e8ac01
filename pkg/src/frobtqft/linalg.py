"""Exact Gauss-Jordan elimination over the rationals.

Matrices are sequences of rows of :class:`~fractions.Fraction`.
"""
from fractions import Fraction


class SingularMatrixError(ValueError):
    """Raised when a matrix has no inverse; ``kernel`` is a nonzero witness."""

    def __init__(self, message, kernel):
        super().__init__(message)
        self.kernel = kernel


def _rref(rows, ncols):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / Fraction(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(matrix):
    n = len(matrix[0]) if matrix else 0
    return len(_rref(matrix, n)[1])


def kernel_vector(matrix):
    """A nonzero ``x`` with ``matrix @ x == 0``, or ``None`` if injective."""
    n = len(matrix[0])
    red, pivots = _rref(matrix, n)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    f = free[0]
    x = [Fraction(0)] * n
    x[f] = Fraction(1)
    for row, c in zip(red, pivots):
        x[c] = -row[f]
    return tuple(x)


def inverse(matrix):
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = _rref(aug, n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular", kernel_vector(matrix))
    return tuple(tuple(row[n:]) for row in red[:n])


def solve(matrix, rhs):
    """Solve ``matrix @ x == rhs``; raises ``ValueError`` if inconsistent.

    For singular but consistent systems an arbitrary solution is returned
    (free variables set to zero).
    """
    n = len(matrix[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    red, pivots = _rref(aug, n + 1)
    if n in pivots:
        raise ValueError("right-hand side is not in the image")
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return tuple(x)


def matmul(a, b):
    return tuple(tuple(sum((x * b[k][j] for k, x in enumerate(row)), Fraction(0))
                       for j in range(len(b[0]))) for row in a)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
