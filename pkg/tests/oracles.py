"""Brute-force reference computations used as test oracles.

Nothing here calls into frobtqft's tensor or TQFT code.  Algebras are
plain dicts ``(i, j) -> {k: c}``, vectors are dicts ``index -> Fraction``,
and the form inverse comes from sympy.
"""
import itertools
from fractions import Fraction

import sympy


def vec(d):
    return {k: Fraction(v) for k, v in d.items() if v}


def add(acc, v, c=1):
    for k, x in v.items():
        acc[k] = acc.get(k, 0) + c * x
        if not acc[k]:
            del acc[k]
    return acc


def mul(table, u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            add(out, table[(i, j)], a * b)
    return out


def prod(table, unit, vs):
    acc = dict(unit) if not vs else dict(vs[0])
    for v in vs[1:]:
        acc = mul(table, acc, v)
    return acc


def form_from_counit(table, counit, dim):
    return [[sum((counit.get(k, 0) * c for k, c in table[(i, j)].items()), Fraction(0))
             for j in range(dim)] for i in range(dim)]


def inverse(matrix):
    inv = sympy.Matrix(matrix).inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]


def coproduct(table, form, dim):
    """``δ(v)`` from the duality ``η⊗η(δ(v), e_c⊗e_d) = η(v, e_c e_d)``."""
    inv = inverse(form)
    out = {}
    for v in range(dim):
        d = {}
        for c, e in itertools.product(range(dim), repeat=2):
            pairing = sum((form[v][k] * x for k, x in table[(c, e)].items()), Fraction(0))
            if not pairing:
                continue
            for a, b in itertools.product(range(dim), repeat=2):
                x = pairing * inv[c][a] * inv[e][b]
                if x:
                    d[(a, b)] = d.get((a, b), 0) + x
        out[v] = {k: x for k, x in d.items() if x}
    return out


def euler_element(table, form, dim):
    inv = inverse(form)
    e = {}
    for a, b in itertools.product(range(dim), repeat=2):
        if inv[a][b]:
            add(e, table[(a, b)], inv[a][b])
    return e


def euler_apply(table, form, dim, x):
    """``E(x) = Σ η^{ab} x e_a e_b``; needs no unit."""
    inv = inverse(form)
    out = {}
    for a, b in itertools.product(range(dim), repeat=2):
        if inv[a][b]:
            add(out, mul(table, mul(table, x, {a: 1}), {b: 1}), inv[a][b])
    return out


def iterate_coproduct(delta, x, m):
    """``δ^{m-1}(x)`` as ``{index_tuple: c}``, expanding the first factor each time."""
    cur = {(k,): c for k, c in x.items()}
    for _ in range(m - 1):
        nxt = {}
        for idx, c in cur.items():
            for (a, b), d in delta[idx[0]].items():
                key = (a, b) + idx[1:]
                nxt[key] = nxt.get(key, 0) + c * d
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def omega(table, form, counit, dim, g, n, m, unit=None):
    """``{inputs + outputs: c}`` for ``ω_{g,n,m}`` over all basis inputs."""
    delta = coproduct(table, form, dim) if m >= 2 else None
    out = {}
    for idx in itertools.product(range(dim), repeat=n):
        x = prod(table, unit, [{i: Fraction(1)} for i in idx])
        for _ in range(g):
            x = euler_apply(table, form, dim, x)
        if m == 0:
            val = sum((counit.get(k, 0) * c for k, c in x.items()), Fraction(0))
            if val:
                out[idx] = val
        else:
            for key, c in iterate_coproduct(delta, x, m).items():
                out[idx + key] = c
    return out


# concrete algebras -----------------------------------------------------------

def s3_ring():
    """Character ring of S3 from its multiplication table; unit χ1, ε = χ1 coefficient."""
    one, sign, std = 0, 1, 2
    table = {
        (one, one): {one: 1}, (one, sign): {sign: 1}, (one, std): {std: 1},
        (sign, one): {sign: 1}, (sign, sign): {one: 1}, (sign, std): {std: 1},
        (std, one): {std: 1}, (std, sign): {std: 1}, (std, std): {one: 1, sign: 1, std: 1},
    }
    table = {k: vec(v) for k, v in table.items()}
    return table, {0: Fraction(1)}, {0: Fraction(1)}, 3


def cyclic(n):
    table = {(a, b): {(a + b) % n: Fraction(1)} for a in range(n) for b in range(n)}
    return table, {0: Fraction(1)}, {0: Fraction(1)}, n


# maps as permutation pairs ----------------------------------------------------

def _cycles(perm):
    seen, out = set(), []
    for s in range(len(perm)):
        if s not in seen:
            c, x = [], s
            while x not in seen:
                seen.add(x)
                c.append(x)
                x = perm[x]
            out.append(c)
    return out


def _alpha_centralizer(n):
    """Dart relabelings that map the edge pairing (2i, 2i+1) to itself."""
    for order in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            h = [0] * (2 * n)
            for i, j in enumerate(order):
                h[2 * i] = 2 * j + flips[i]
                h[2 * i + 1] = 2 * j + 1 - flips[i]
            yield h


def count_maps(n, colored=False, max_genus=None):
    """Connected maps with n edges up to orientation-preserving isomorphism.

    A map is a vertex rotation sigma on 2n darts with the fixed edge pairing
    alpha = (0 1)(2 3)...; two maps are isomorphic when a relabeling that
    commutes with alpha conjugates one into the other.  With ``colored``,
    each vertex is red or blue subject to: some red vertex, no blue-blue
    edge.
    """
    if n == 0:
        return 1
    darts = 2 * n
    alpha = [d ^ 1 for d in range(darts)]
    group = list(_alpha_centralizer(n))
    seen = set()
    for sigma in itertools.permutations(range(darts)):
        # transitivity of <sigma, alpha>
        reach, stack = {0}, [0]
        while stack:
            d = stack.pop()
            for x in (sigma[d], alpha[d]):
                if x not in reach:
                    reach.add(x)
                    stack.append(x)
        if len(reach) != darts:
            continue
        verts = _cycles(sigma)
        if max_genus is not None:
            faces = len(_cycles([sigma[alpha[d]] for d in range(darts)]))
            if (2 - (len(verts) - n + faces)) // 2 > max_genus:
                continue
        vertex_of = {d: v for v, c in enumerate(verts) for d in c}
        masks = range(2 ** len(verts)) if colored else [0]
        for mask in masks:
            blue = [bool(mask >> vertex_of[d] & 1) for d in range(darts)]
            if all(blue):
                continue
            if any(blue[2 * i] and blue[2 * i + 1] for i in range(n)):
                continue
            code = min((tuple(h[sigma[hinv]] for hinv in _inverse(h)),
                        tuple(blue[hinv] for hinv in _inverse(h))) for h in group)
            seen.add(code)
    return len(seen)


def _inverse(h):
    inv = [0] * len(h)
    for i, x in enumerate(h):
        inv[x] = i
    return inv
