"""Sewing plans: expression trees over the generator cobordisms.

A plan is built from :class:`Leaf`, :class:`Compose`, :class:`Tensor` and
:class:`Permute` nodes.  :func:`plan_type` tracks the topology of every
node (connected components, their Euler characteristic and which boundary
slots they own), so the genus of a composite is derived rather than
declared.  :func:`evaluate_plan` folds the tree through the tensor
operations.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..tensor import compose_partial, permute, tensor_product
from .cobordism import GENERATOR_TYPES, CobordismType, generator, is_unital


class PlanTypeError(ValueError):
    def __init__(self, message, path="root"):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Leaf:
    kind: str


@dataclass(frozen=True)
class Compose:
    """Sew outputs of ``f`` into inputs of ``g``; slot order as in ``compose_partial``."""
    f: object
    g: object
    channels: tuple


@dataclass(frozen=True)
class Tensor:
    f: object
    g: object


@dataclass(frozen=True)
class Permute:
    f: object
    input_perm: tuple = ()
    output_perm: tuple = ()


@dataclass(frozen=True)
class Shape:
    """Topology of a (possibly disconnected) plan.

    ``ins[k]`` / ``outs[k]`` give the component owning each boundary slot;
    ``chi[c]`` is the Euler characteristic of component ``c``.
    """
    ins: tuple
    outs: tuple
    chi: tuple

    @property
    def components(self):
        return len(self.chi)

    def genus(self, c):
        b = self.ins.count(c) + self.outs.count(c)
        return (2 - self.chi[c] - b) // 2

    def cobordism_type(self, path="root"):
        if self.components != 1:
            raise PlanTypeError(f"plan is disconnected ({self.components} components)", path)
        return CobordismType(self.genus(0), len(self.ins), len(self.outs))


def leaf_shape(kind):
    t = GENERATOR_TYPES[kind]
    return Shape((0,) * t.n, (0,) * t.m, (t.euler_characteristic,))


def _check_perm(perm, size, what, path):
    if sorted(perm) != list(range(size)):
        raise PlanTypeError(f"malformed {what} permutation {list(perm)} for {size} slots", path)


def _compose_shape(sf, sg, channels, path):
    channels = [tuple(c) for c in channels]
    if not channels:
        raise PlanTypeError("composition needs at least one channel", path)
    outs = [a for a, _ in channels]
    ins = [b for _, b in channels]
    if len(set(outs)) != len(outs) or len(set(ins)) != len(ins):
        raise PlanTypeError("duplicate channel endpoint", path)
    for a, b in channels:
        if not 0 <= a < len(sf.outs):
            raise PlanTypeError(f"channel output {a} out of range ({len(sf.outs)} outputs)", path)
        if not 0 <= b < len(sg.ins):
            raise PlanTypeError(f"channel input {b} out of range ({len(sg.ins)} inputs)", path)
    off = sf.components
    parent = list(range(off + sg.components))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in channels:
        parent[find(sf.outs[a])] = find(off + sg.ins[b])
    # gluing along circles leaves the Euler characteristic additive
    chi = {}
    for c, x in enumerate(sf.chi + sg.chi):
        r = find(c)
        chi[r] = chi.get(r, 0) + x
    new_ins = list(sf.ins) + [off + c for k, c in enumerate(sg.ins) if k not in ins]
    new_outs = [c for k, c in enumerate(sf.outs) if k not in outs] + [off + c for c in sg.outs]
    roots = sorted(chi)
    renum = {r: i for i, r in enumerate(roots)}
    shape = Shape(tuple(renum[find(c)] for c in new_ins), tuple(renum[find(c)] for c in new_outs),
                  tuple(chi[r] for r in roots))
    for c in range(shape.components):
        if c not in shape.ins and c not in shape.outs:
            raise PlanTypeError("sewing closes off a component", path)
    return shape


def plan_shape(plan, path="root") -> Shape:
    if isinstance(plan, Leaf):
        if plan.kind not in GENERATOR_TYPES:
            raise PlanTypeError(f"unknown generator {plan.kind!r}", path)
        return leaf_shape(plan.kind)
    if isinstance(plan, Compose):
        sf = plan_shape(plan.f, path + ".f")
        sg = plan_shape(plan.g, path + ".g")
        return _compose_shape(sf, sg, plan.channels, path)
    if isinstance(plan, Tensor):
        sf = plan_shape(plan.f, path + ".f")
        sg = plan_shape(plan.g, path + ".g")
        off = sf.components
        return Shape(sf.ins + tuple(off + c for c in sg.ins), sf.outs + tuple(off + c for c in sg.outs),
                     sf.chi + sg.chi)
    if isinstance(plan, Permute):
        s = plan_shape(plan.f, path + ".f")
        ip = plan.input_perm or tuple(range(len(s.ins)))
        op = plan.output_perm or tuple(range(len(s.outs)))
        _check_perm(ip, len(s.ins), "input", path)
        _check_perm(op, len(s.outs), "output", path)
        return Shape(tuple(s.ins[k] for k in ip), tuple(s.outs[k] for k in op), s.chi)
    raise PlanTypeError(f"not a plan node: {plan!r}", path)


def plan_type(plan) -> CobordismType:
    """Net type of a connected plan; raises :class:`PlanTypeError` otherwise."""
    return plan_shape(plan).cobordism_type()


def uses_unit(plan):
    if isinstance(plan, Leaf):
        return plan.kind == "unit"
    if isinstance(plan, (Compose, Tensor)):
        return uses_unit(plan.f) or uses_unit(plan.g)
    return uses_unit(plan.f)


def evaluate_plan(plan, pkg, unital=None):
    """Fold the plan into a map.  The plan is type-checked first."""
    unital = is_unital(pkg, unital)
    plan_type(plan)
    cache = {}

    def ev(node):
        key = id(node)
        if key in cache:
            return cache[key][1]
        if isinstance(node, Leaf):
            out = generator(node.kind, pkg, unital)
        elif isinstance(node, Compose):
            out = compose_partial(ev(node.f), ev(node.g), node.channels)
        elif isinstance(node, Tensor):
            out = tensor_product(ev(node.f), ev(node.g))
        else:
            out = permute(ev(node.f), node.input_perm or None, node.output_perm or None)
        cache[key] = (node, out)
        return out

    return ev(plan)


def describe(plan):
    """Compact one-line rendering, e.g. ``((product⊗id)∘[0-0,1-1]product)``."""
    if isinstance(plan, Leaf):
        return plan.kind
    if isinstance(plan, Compose):
        ch = ",".join(f"{a}-{b}" for a, b in plan.channels)
        return f"({describe(plan.f)} >[{ch}]> {describe(plan.g)})"
    if isinstance(plan, Tensor):
        return f"({describe(plan.f)} * {describe(plan.g)})"
    return f"perm{list(plan.input_perm)}{list(plan.output_perm)}({describe(plan.f)})"


def plan_size(plan):
    if isinstance(plan, Leaf):
        return 1
    if isinstance(plan, (Compose, Tensor)):
        return 1 + plan_size(plan.f) + plan_size(plan.g)
    return 1 + plan_size(plan.f)


# small builders ------------------------------------------------------------

def compose(f, g, channels=None):
    """``Compose`` with default channels ``(k, k)`` for every input of ``g``."""
    if channels is None:
        channels = [(k, k) for k in range(len(plan_shape(g).ins))]
    return Compose(f, g, tuple(tuple(c) for c in channels))


def tensor(*plans):
    out = plans[0]
    for p in plans[1:]:
        out = Tensor(out, p)
    return out


IDENTITY = Leaf("identity")
PRODUCT = Leaf("product")
COPRODUCT = Leaf("coproduct")
UNIT = Leaf("unit")
COUNIT = Leaf("counit")
FORM = Leaf("form")
