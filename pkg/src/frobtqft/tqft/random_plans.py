"""Seeded random sewing plans of a prescribed type.

A plan for ``t`` is drawn by splitting ``t`` into pieces that are sewn back
together: one piece feeding another along ``j`` channels, or two
disconnected pieces both feeding a third.  Pieces are drawn recursively
with a shrinking budget; when it runs out the normal form is used.  Random
slot permutations are applied on top, which is harmless for the
commutative algebras these plans are evaluated on.
"""
from __future__ import annotations

import random

from .cobordism import GENERATOR_TYPES, CobordismType, InadmissibleTypeError, as_type
from .normal_form import normal_form_plan
from .plans import Compose, Leaf, Permute, Tensor, plan_type


def _complexity(t):
    return 2 * t.g + t.n + t.m


def _admissible(t, unital):
    try:
        t.check(unital)
    except InadmissibleTypeError:
        return False
    return True


def _splits(t, unital, cap):
    """All ``(F, H, j)`` with ``F`` sewn into ``H`` along ``j`` channels giving ``t``."""
    g, n, m = t
    out = []
    for j in (1, 2, 3):
        for gf in range(g + 1):
            gh = g - gf - j + 1
            if gh < 0:
                continue
            for nf in range(n + 1):
                kh = n - nf + j
                for mh in range(m + 1):
                    kf = m - mh + j
                    f, h = CobordismType(gf, nf, kf), CobordismType(gh, kh, mh)
                    if f == t or h == t:
                        continue
                    if not (_admissible(f, unital) and _admissible(h, unital)):
                        continue
                    if f.boundary > cap or h.boundary > cap:
                        continue
                    out.append((f, h, j))
    return out


def _sample_fork(t, rng, unital, cap):
    """Two disconnected pieces ``F1 ⊗ F2`` both sewn into ``H``."""
    g, n, m = t
    for _ in range(40):
        j1, j2 = rng.choice((1, 2)), rng.choice((1, 2))
        g1, g2 = rng.randint(0, g), rng.randint(0, g)
        g3 = g - g1 - g2 - j1 - j2 + 2
        n1 = rng.randint(0, n)
        n2 = rng.randint(0, n - n1)
        kh = n - n1 - n2 + j1 + j2
        mh = rng.randint(0, m)
        r1 = rng.randint(0, m - mh)
        r2 = m - mh - r1
        pieces = (CobordismType(g1, n1, r1 + j1), CobordismType(g2, n2, r2 + j2),
                  CobordismType(g3, kh, mh))
        if g3 < 0 or t in pieces:
            continue
        if pieces[0].boundary + pieces[1].boundary > cap:
            continue
        if all(_admissible(p, unital) and p.boundary <= cap for p in pieces):
            return pieces, (j1, j2)
    return None


def _sew(rng, f, f_outs, h, h_ins, j):
    outs = rng.sample(range(f_outs), j)
    ins = rng.sample(range(h_ins), j)
    return Compose(f, h, tuple(zip(outs, ins)))


def _shuffle(rng, t, plan):
    ip = list(range(t.n))
    op = list(range(t.m))
    rng.shuffle(ip)
    rng.shuffle(op)
    if ip == sorted(ip) and op == sorted(op):
        return plan
    return Permute(plan, tuple(ip), tuple(op))


def random_plan(t, rng: random.Random, unital=True, budget=3, cap=None):
    t = as_type(t).check(unital)
    cap = cap if cap is not None else t.boundary + 2
    leaves = [k for k, lt in GENERATOR_TYPES.items() if lt == t and (unital or k != "unit")]
    if budget <= 0:
        return normal_form_plan(t, unital)
    if leaves and rng.random() < 0.3:
        return Leaf(leaves[0])
    choice = rng.random()
    if choice < 0.15:
        return _shuffle(rng, t, random_plan(t, rng, unital, budget - 1, cap))
    if choice < 0.4:
        fork = _sample_fork(t, rng, unital, cap)
        if fork is not None:
            (f1, f2, h), (j1, j2) = fork
            p1 = random_plan(f1, rng, unital, budget - 1, cap)
            p2 = random_plan(f2, rng, unital, budget - 1, cap)
            ph = random_plan(h, rng, unital, budget - 1, cap)
            outs1 = rng.sample(range(f1.m), j1)
            outs2 = [f1.m + k for k in rng.sample(range(f2.m), j2)]
            ins = rng.sample(range(h.n), j1 + j2)
            return Compose(Tensor(p1, p2), ph, tuple(zip(outs1 + outs2, ins)))
    splits = _splits(t, unital, cap)
    smaller = [s for s in splits if _complexity(s[0]) < _complexity(t) and _complexity(s[1]) < _complexity(t)]
    pool = smaller if smaller and rng.random() < 0.75 else splits
    if not pool:
        return Leaf(leaves[0]) if leaves else normal_form_plan(t, unital)
    f, h, j = rng.choice(pool)
    pf = random_plan(f, rng, unital, budget - 1, cap)
    ph = random_plan(h, rng, unital, budget - 1, cap)
    return _sew(rng, pf, f.m, ph, h.n, j)


def arity_cap(t, dim, max_entries=2 ** 18):
    """Largest intermediate arity allowed: ``t``'s own plus up to two, within ``max_entries``."""
    t = as_type(t)
    cap = t.boundary + 2
    while cap > t.boundary and dim ** cap > max_entries:
        cap -= 1
    return cap


def random_plans(t, count=10, seed=0, unital=True, budget=3, dim=None):
    """``count`` seeded plans of type ``t``, each checked to have that type.

    With ``dim`` given, intermediate arities are kept small enough that no
    map has more than about ``2**18`` coefficients.
    """
    t = as_type(t)
    rng = random.Random(f"{seed}:{t.g},{t.n},{t.m}:{int(unital)}")
    cap = arity_cap(t, dim) if dim else None
    plans = []
    for _ in range(count):
        plan = random_plan(t, rng, unital, budget, cap)
        got = plan_type(plan)
        if got != t:
            raise AssertionError(f"generated plan has type {got}, expected {t}")
        plans.append(plan)
    return plans
