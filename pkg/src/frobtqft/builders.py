"""Constructors for the standard example algebras.

Character rings from rational character tables, group algebras from Cayley
tables, tensor products of packages, and seeded random semisimple algebras.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linalg
from .algebra import AlgebraSpec
from .frobenius import FrobeniusPackage
from .tensor import MultilinearMap


class NotAGroupError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CharacterTableError(ValueError):
    pass


def trivial_algebra(name="K"):
    """The one-dimensional algebra K with ε(1) = 1."""
    return AlgebraSpec.from_constants(name, ["1"], [[[1]]], unit=[1], counit=[1])


# character rings ---------------------------------------------------------

S3_CHARACTER_TABLE = [[1, 1, 1], [1, 1, -1], [2, -1, 0]]
S3_CLASS_SIZES = [1, 2, 3]


def build_character_ring(character_table, class_sizes, group_order, name="R(G)", labels=None):
    """Ring of class functions in the basis of irreducible characters.

    Rows of ``character_table`` are characters, columns conjugacy classes.
    Entries must be rational, so ``χ(g⁻¹) = χ(g)``.
    """
    table = [[Fraction(x) for x in row] for row in character_table]
    sizes = [Fraction(s) for s in class_sizes]
    order = Fraction(group_order)
    r = len(table)
    if any(len(row) != r for row in table):
        raise CharacterTableError("character table must be square")
    if len(sizes) != r:
        raise CharacterTableError("one class size per column is required")
    if sum(sizes) != order:
        raise CharacterTableError(f"class sizes sum to {sum(sizes)}, not {order}")

    def inner(phi, psi):
        return sum((s * a * b for s, a, b in zip(sizes, phi, psi)), Fraction(0)) / order

    form = [[inner(table[i], table[j]) for j in range(r)] for i in range(r)]
    if linalg.kernel_vector(form) is not None:
        raise CharacterTableError("rows are linearly dependent")
    form_inv = linalg.inverse(form)

    def decompose(phi):
        pairings = [inner(phi, table[k]) for k in range(r)]
        coords = tuple(sum((pairings[a] * form_inv[a][k] for a in range(r)), Fraction(0))
                       for k in range(r))
        rebuilt = [sum((coords[k] * table[k][c] for k in range(r)), Fraction(0)) for c in range(r)]
        if rebuilt != list(phi):
            raise CharacterTableError("class function is not spanned by the rows")
        return coords

    constants = [[decompose([a * b for a, b in zip(table[i], table[j])]) for j in range(r)]
                 for i in range(r)]
    unit = decompose([Fraction(1)] * r)
    labels = labels or [f"chi{i + 1}" for i in range(r)]
    return AlgebraSpec.from_constants(name, labels, constants, unit=unit, form=form)


def s3_character_ring():
    return build_character_ring(S3_CHARACTER_TABLE, S3_CLASS_SIZES, 6, name="s3-characters")


# groups ------------------------------------------------------------------

def check_group(cayley):
    """Return the identity index, or raise :class:`NotAGroupError`."""
    n = len(cayley)
    if n == 0 or any(len(row) != n for row in cayley):
        raise NotAGroupError("Cayley table must be a nonempty square")
    for i, j in itertools.product(range(n), repeat=2):
        if not 0 <= cayley[i][j] < n:
            raise NotAGroupError("product out of range", (i, j))
    ident = next((e for e in range(n)
                  if all(cayley[e][g] == g and cayley[g][e] == g for g in range(n))), None)
    if ident is None:
        raise NotAGroupError("no identity element")
    for g in range(n):
        if not any(cayley[g][h] == ident and cayley[h][g] == ident for h in range(n)):
            raise NotAGroupError("element without inverse", (g,))
    for a, b, c in itertools.product(range(n), repeat=3):
        if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
            raise NotAGroupError("product is not associative", (a, b, c))
    return ident


def build_group_algebra(cayley, name="K[G]", labels=None):
    """``e_g e_h = e_{gh}`` with ``η(e_g, e_h) = 1`` iff ``g = h⁻¹``."""
    ident = check_group(cayley)
    n = len(cayley)
    constants = {(g, h, cayley[g][h]): 1 for g in range(n) for h in range(n)}
    form = [[int(cayley[g][h] == ident) for h in range(n)] for g in range(n)]
    unit = [int(g == ident) for g in range(n)]
    labels = labels or [f"g{g}" for g in range(n)]
    return AlgebraSpec.from_constants(name, labels, constants, unit=unit, form=form)


def _close(generators, mul, identity):
    elems = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = mul(x, g)
                if y not in elems:
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def _block_order(elems, mul, identity):
    """Identity, then involutions, then inverse pairs adjacent."""
    inv = {x: next(y for y in elems if mul(x, y) == identity) for x in elems}
    ordered = [identity] + [x for x in elems if x != identity and inv[x] == x]
    for x in elems:
        if x not in ordered:
            ordered += [x, inv[x]]
    return ordered


def _table(elems, mul):
    index = {x: i for i, x in enumerate(elems)}
    return [[index[mul(a, b)] for b in elems] for a in elems]


def _perm_mul(p, q):
    # apply p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


def _quat_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def named_group(name):
    """Cayley table and labels for ``Zn``, ``V4``, ``S3``, ``D4``, ``Q8`` or a direct
    product of these written ``AxB`` (for example ``Z4xZ2`` or ``Z2xZ2xZ2``)."""
    if "x" in name:
        factors = [named_group(part) for part in name.split("x")]
        elems = list(itertools.product(*(range(len(t)) for t, _ in factors)))
        mul = lambda a, b: tuple(t[i][j] for (t, _), i, j in zip(factors, a, b))  # noqa: E731
        ident = tuple(check_group(t) for t, _ in factors)
        elems = _block_order(elems, mul, ident)
        labels = ["(" + ",".join(lab[i] for (_, lab), i in zip(factors, x)) + ")" for x in elems]
        return _table(elems, mul), labels
    if name.startswith("Z") and name[1:].isdigit():
        n = int(name[1:])
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        elems = _block_order(list(range(n)), lambda a, b: (a + b) % n, 0)
        return _table(elems, lambda a, b: (a + b) % n), [f"g{x}" for x in elems]
    if name == "V4":
        mul = lambda a, b: (a[0] ^ b[0], a[1] ^ b[1])  # noqa: E731
        elems = _block_order(_close([(1, 0), (0, 1)], mul, (0, 0)), mul, (0, 0))
        return _table(elems, mul), [f"({a}{b})" for a, b in elems]
    if name in ("S3", "D4"):
        if name == "S3":
            gens, ident = [(1, 0, 2), (1, 2, 0)], (0, 1, 2)
        else:
            gens, ident = [(1, 2, 3, 0), (3, 2, 1, 0)], (0, 1, 2, 3)
        elems = _block_order(_close(gens, _perm_mul, ident), _perm_mul, ident)
        return _table(elems, _perm_mul), ["".join(map(str, p)) for p in elems]
    if name == "Q8":
        one = (1, 0, 0, 0)
        elems = _block_order(_close([(0, 1, 0, 0), (0, 0, 1, 0)], _quat_mul, one), _quat_mul, one)
        names = {(1, 0, 0, 0): "1", (-1, 0, 0, 0): "-1", (0, 1, 0, 0): "i", (0, -1, 0, 0): "-i",
                 (0, 0, 1, 0): "j", (0, 0, -1, 0): "-j", (0, 0, 0, 1): "k", (0, 0, 0, -1): "-k"}
        return _table(elems, _quat_mul), [names[x] for x in elems]
    raise ValueError(f"unknown group {name!r}")


def group_algebra(name):
    table, labels = named_group(name)
    return build_group_algebra(table, name=f"K[{name}]", labels=labels)


# tensor products ---------------------------------------------------------

def tensor_product_algebra(pa: FrobeniusPackage, pb: FrobeniusPackage, name=None):
    """``A ⊗ B`` with componentwise product and coproduct ``(id⊗τ⊗id)∘(δ_A⊗δ_B)``.

    Basis element ``(a, b)`` has index ``a * dim(B) + b``.
    """
    ra, rb = pa.dim, pb.dim
    r = ra * rb

    def pair(t):
        return [(x // rb, x % rb) for x in t]

    def prod(t):
        (i, ii), (j, jj), (k, kk) = pair(t)
        return pa.product.coeff((i, j, k)) * pb.product.coeff((ii, jj, kk))

    def cop(t):
        (v, vv), (a, aa), (b, bb) = pair(t)
        return pa.coproduct.coeff((v, a, b)) * pb.coproduct.coeff((vv, aa, bb))

    def kron(x, y):
        return None if x is None or y is None else tuple(p * q for p in x for q in y)

    form = tuple(tuple(pa.form[i // rb][j // rb] * pb.form[i % rb][j % rb] for j in range(r))
                 for i in range(r))
    labels = [f"{x}*{y}" for x in pa.spec.basis for y in pb.spec.basis]
    mode = pa.mode if pa.mode == pb.mode else "nearly-frobenius"
    return AlgebraSpec(name or f"{pa.name}*{pb.name}", tuple(labels),
                       MultilinearMap.from_function(r, 2, 1, prod),
                       unit=kron(pa.unit, pb.unit), counit=kron(pa.counit, pb.counit),
                       form=form, coproduct=MultilinearMap.from_function(r, 1, 2, cop), mode=mode)


# random semisimple algebras -----------------------------------------------

def random_semisimple(dim, rng: random.Random, name=None):
    """K^dim with a random nonzero counit, written in a random rational basis.

    The idempotent basis ``f_i`` is replaced by ``e_j = Σ_i P_ij f_i`` for a
    random invertible integer matrix ``P``; structure constants, unit and
    counit are transported exactly.
    """
    while True:
        p = [[rng.randint(-2, 2) for _ in range(dim)] for _ in range(dim)]
        if linalg.kernel_vector(p) is None:
            break
    lam = [Fraction(rng.choice([1, 2, 3, -1, -2])) * rng.choice([1, Fraction(1, 2), Fraction(1, 3)])
           for _ in range(dim)]
    pinv = linalg.inverse(p)
    # e_a e_b = Σ_i P_ia P_ib f_i = Σ_k (Σ_i Pinv_ki P_ia P_ib) e_k
    constants = [[[sum((pinv[k][i] * p[i][a] * p[i][b] for i in range(dim)), Fraction(0))
                   for k in range(dim)] for b in range(dim)] for a in range(dim)]
    unit = [sum((pinv[k][i] for i in range(dim)), Fraction(0)) for k in range(dim)]
    counit = [sum((lam[i] * p[i][a] for i in range(dim)), Fraction(0)) for a in range(dim)]
    return AlgebraSpec.from_constants(name or f"semisimple-{dim}", [f"e{j + 1}" for j in range(dim)],
                                      constants, unit=unit, counit=counit)


def random_semisimple_family(count=20, seed=0, max_dim=4):
    rng = random.Random(seed)
    return [random_semisimple(rng.randint(1, max_dim), rng, name=f"random-{seed}-{i}")
            for i in range(count)]
