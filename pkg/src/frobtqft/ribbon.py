"""Colored ribbon (cell) graphs: red input vertices, blue output vertices.

A graph is a list of vertices, the cyclic order of half-edges around each
vertex, and the pairing of half-edges into edges.  Faces are traced by
``next(h) = σ(ι(h))`` where ``ι`` swaps the two ends of an edge and ``σ``
moves to the next half-edge around the vertex; the genus then follows from
``V - E + F = 2 - 2g``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .findings import Finding, map_check
from .tensor import compose_partial, permute
from .tqft.closed_form import closed_form
from .tqft.cobordism import CobordismType
from .tqft.normal_form import normal_form_plan
from .tqft.plans import evaluate_plan

RED = "red"
BLUE = "blue"


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class ContractionError(GraphError):
    pass


@dataclass(frozen=True)
class ColoredCellGraph:
    """``slots[v]`` is the input slot of a red vertex and ``None`` for blue ones.

    Output slots follow the order of the blue vertices.
    """

    colors: tuple
    slots: tuple
    cyclic_orders: tuple
    edges: tuple

    def __post_init__(self):
        v = len(self.colors)
        if v == 0:
            raise GraphError("a graph needs at least one vertex")
        if len(self.slots) != v or len(self.cyclic_orders) != v:
            raise GraphError("colors, slots and cyclic orders must have one entry per vertex")
        if any(c not in (RED, BLUE) for c in self.colors):
            raise GraphError("vertex colors must be 'red' or 'blue'")
        halves = [h for order in self.cyclic_orders for h in order]
        if sorted(halves) != list(range(len(halves))):
            raise GraphError("half-edges must be numbered 0..2E-1, each at exactly one vertex")
        paired = sorted(h for e in self.edges for h in e)
        if paired != list(range(len(halves))) or any(len(e) != 2 for e in self.edges):
            raise GraphError("every half-edge must belong to exactly one edge")
        red_slots = sorted(s for c, s in zip(self.colors, self.slots) if c == RED)
        if red_slots != list(range(len(red_slots))):
            raise GraphError("red vertices must carry input slots 0..n-1")
        if not red_slots:
            raise GraphError("a graph needs at least one red vertex")
        if any(s is not None for c, s in zip(self.colors, self.slots) if c == BLUE):
            raise GraphError("blue vertices carry no input slot")
        for a, b in self.edges:
            if self.colors[self.vertex_of[a]] == BLUE and self.colors[self.vertex_of[b]] == BLUE:
                raise GraphError("edges between blue vertices are not allowed")
        for c, order in zip(self.colors, self.cyclic_orders):
            if c == BLUE and not order:
                raise GraphError("blue vertices need degree >= 1")

    # structure ------------------------------------------------------------

    @cached_property
    def vertex_of(self):
        out = {}
        for v, order in enumerate(self.cyclic_orders):
            for h in order:
                out[h] = v
        return out

    @cached_property
    def partner(self):
        out = {}
        for a, b in self.edges:
            out[a], out[b] = b, a
        return out

    @cached_property
    def successor(self):
        out = {}
        for order in self.cyclic_orders:
            for k, h in enumerate(order):
                out[h] = order[(k + 1) % len(order)]
        return out

    @property
    def num_vertices(self):
        return len(self.colors)

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def n(self):
        return self.colors.count(RED)

    @property
    def m(self):
        return self.colors.count(BLUE)

    def is_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for h in self.cyclic_orders[v]:
                w = self.vertex_of[self.partner[h]]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    def is_loop(self, e):
        a, b = self.edges[e]
        return self.vertex_of[a] == self.vertex_of[b]

    def output_order(self):
        return [v for v, c in enumerate(self.colors) if c == BLUE]

    # serialization ----------------------------------------------------------

    def to_json(self):
        verts = []
        for c, s in zip(self.colors, self.slots):
            verts.append({"color": c, "slot": s} if c == RED else {"color": c})
        return {"vertices": verts, "cyclic_orders": [list(o) for o in self.cyclic_orders],
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj):
        verts = obj["vertices"]
        return cls(tuple(v["color"] for v in verts), tuple(v.get("slot") for v in verts),
                   tuple(tuple(o) for o in obj["cyclic_orders"]),
                   tuple(tuple(e) for e in obj["edges"]))


def build_graph(colors, cyclic_orders, edges, slots=None):
    """Convenience constructor; red slots default to vertex order."""
    if slots is None:
        counter = iter(range(len(colors)))
        slots = tuple(next(counter) if c == RED else None for c in colors)
    return ColoredCellGraph(tuple(colors), tuple(slots), tuple(tuple(o) for o in cyclic_orders),
                            tuple(tuple(e) for e in edges))


def trace_faces(graph: ColoredCellGraph):
    """Return ``(faces, genus)`` of a connected graph."""
    if not graph.is_connected():
        raise DisconnectedGraphError("face tracing needs a connected graph")
    if graph.num_edges == 0:
        faces = 1
    else:
        seen = set()
        faces = 0
        for start in range(2 * graph.num_edges):
            if start in seen:
                continue
            faces += 1
            h = start
            while h not in seen:
                seen.add(h)
                h = graph.successor[graph.partner[h]]
    chi = graph.num_vertices - graph.num_edges + faces
    if chi > 2 or chi % 2:
        raise GraphError(f"Euler characteristic {chi} is not of the form 2 - 2g")
    return faces, (2 - chi) // 2


def graph_type(graph) -> CobordismType:
    return CobordismType(trace_faces(graph)[1], graph.n, graph.m)


def _renumber(colors, slots, orders, edges):
    """Compact half-edge labels to 0..2E-1 in order of appearance."""
    relabel = {}
    for order in orders:
        for h in order:
            relabel[h] = len(relabel)
    return ColoredCellGraph(tuple(colors), tuple(slots),
                            tuple(tuple(relabel[h] for h in o) for o in orders),
                            tuple(tuple(sorted((relabel[a], relabel[b]))) for a, b in edges))


def _rotate(order, h):
    k = order.index(h)
    return list(order[k + 1:]) + list(order[:k])


def contract_edge(graph: ColoredCellGraph, e):
    """Merge the two red ends of a non-loop edge.

    The merged vertex keeps the smaller input slot; its cyclic order is the
    order after ``a`` at the first end followed by the order after ``b`` at
    the second.  Returns ``(new_graph, (slot_i, slot_j))``.
    """
    a, b = graph.edges[e]
    u, w = graph.vertex_of[a], graph.vertex_of[b]
    if u == w:
        raise ContractionError("edge is a loop; use contract_loop")
    if graph.colors[u] != RED or graph.colors[w] != RED:
        raise ContractionError("only edges between two red vertices can be contracted")
    si, sj = sorted((graph.slots[u], graph.slots[w]))
    merged = _rotate(graph.cyclic_orders[u], a) + _rotate(graph.cyclic_orders[w], b)
    colors, slots, orders = [], [], []
    for v in range(graph.num_vertices):
        if v == w:
            continue
        colors.append(graph.colors[v])
        s = graph.slots[v]
        if v == u:
            s = si
        elif s is not None and s > sj:
            s -= 1
        slots.append(s)
        orders.append(merged if v == u else list(graph.cyclic_orders[v]))
    edges = [x for k, x in enumerate(graph.edges) if k != e]
    return _renumber(colors, slots, orders, edges), (si, sj)


def contract_loop(graph: ColoredCellGraph, e):
    """Split the vertex of a loop into the two arcs it cuts the cyclic order into.

    The arc after the first half-edge keeps the slot ``s``; the other arc
    becomes a new red vertex with slot ``s + 1`` (later slots shift up).
    Returns ``(new_graph, s)``.
    """
    a, b = graph.edges[e]
    v = graph.vertex_of[a]
    if graph.vertex_of[b] != v:
        raise ContractionError("edge is not a loop")
    if graph.colors[v] != RED:
        raise ContractionError("only loops at red vertices can be contracted")
    order = _rotate(graph.cyclic_orders[v], a)
    k = order.index(b)
    arc1, arc2 = order[:k], order[k + 1:]
    if not arc1 or not arc2:
        raise ContractionError("the loop does not split the cyclic order into two nonempty arcs")
    s = graph.slots[v]
    colors, slots, orders = [], [], []
    for x in range(graph.num_vertices):
        t = graph.slots[x]
        if x != v and t is not None and t > s:
            t += 1
        colors.append(graph.colors[x])
        slots.append(t)
        orders.append(arc1 if x == v else list(graph.cyclic_orders[x]))
    colors.insert(v + 1, RED)
    slots.insert(v + 1, s + 1)
    orders.insert(v + 1, arc2)
    edges = [x for j, x in enumerate(graph.edges) if j != e]
    out = _renumber(colors, slots, orders, edges)
    if not out.is_connected():
        raise ContractionError("separating loop: contraction would disconnect the graph")
    return out, s


# evaluation -------------------------------------------------------------------

def evaluate(graph, pkg, inputs=None, cache=None):
    """``δ^{m-1}(E^g(v_1⋯v_n))`` for the graph's type, obtained by sewing.

    Without ``inputs`` the whole map is returned; otherwise it is applied to
    the vectors assigned to red slots ``0..n-1``.
    """
    t = graph_type(graph)
    if t.m == 0 and pkg.counit is None:
        raise GraphError("graphs without blue vertices need a counit")
    if cache is not None and t in cache:
        value = cache[t]
    else:
        value = evaluate_plan(normal_form_plan(t, unital=False), pkg, unital=False)
        if cache is not None:
            cache[t] = value
    if inputs is None:
        return value
    from .tensor import apply
    return apply(value, inputs)


def _move_input(f, src, dst):
    """Reorder inputs so that input ``src`` ends up at position ``dst``."""
    order = list(range(f.n_in))
    order.remove(src)
    order.insert(dst, src)
    return permute(f, order, None)


def edge_contraction_rhs(pkg, contracted_value, si, sj):
    """``Ω(γ/e)`` with the product ``v_i v_j`` fed into slot ``si``."""
    f = compose_partial(pkg.product, contracted_value, [(0, si)])
    # inputs now: v_i, v_j, then the remaining slots of γ/e in order
    f = _move_input(f, 0, si)
    return _move_input(f, si + 1, sj)


def loop_contraction_rhs(pkg, split_value, s):
    """``Σ Ω(γ')(…, v', v'', …)`` over ``δ(v) = Σ v' ⊗ v''``."""
    f = compose_partial(pkg.coproduct, split_value, [(0, s), (1, s + 1)])
    return _move_input(f, 0, s)


# enumeration --------------------------------------------------------------------

def certificate(graph):
    """Canonical code under orientation-preserving isomorphism (slots ignored)."""
    if graph.num_edges == 0:
        return ((), graph.colors)
    best = None
    halves = 2 * graph.num_edges
    for root in range(halves):
        label = {root: 0}
        queue = [root]
        k = 0
        while k < len(queue):
            h = queue[k]
            k += 1
            for x in (graph.successor[h], graph.partner[h]):
                if x not in label:
                    label[x] = len(label)
                    queue.append(x)
        inv = sorted(label, key=label.get)
        code = tuple((label[graph.successor[h]], label[graph.partner[h]],
                      graph.colors[graph.vertex_of[h]]) for h in inv)
        if best is None or code < best:
            best = code
    return best


def _with_edge(orders, edges, v, p, w, q):
    """Add an edge from corner ``p`` of ``v`` to corner ``q`` of ``w`` (``w`` may be new)."""
    orders = [list(o) for o in orders]
    h = 2 * len(edges)
    orders[v].insert(p, h)
    if w == len(orders):
        orders.append([h + 1])
    else:
        orders[w].insert(q, h + 1)
    return orders, list(edges) + [(h, h + 1)]


def enumerate_ribbon_graphs(max_edges):
    """Connected uncolored ribbon graphs with at most ``max_edges`` edges, by level."""
    levels = [[([[]], [])]]
    for _ in range(max_edges):
        seen = {}
        for orders, edges in levels[-1]:
            nv = len(orders)
            options = []
            for v in range(nv):
                for p in range(max(len(orders[v]), 1)):
                    options.append(_with_edge(orders, edges, v, p, nv, 0))
            for v in range(nv):
                for p in range(max(len(orders[v]), 1)):
                    for w in range(v, nv):
                        size = len(orders[w]) + (1 if w == v else 0)
                        for q in range(max(size, 1)):
                            options.append(_with_edge(orders, edges, v, p, w, q))
            for o, e in options:
                g = build_graph([RED] * len(o), o, e)
                seen.setdefault(certificate(g), (o, e))
        levels.append(list(seen.values()))
    return levels


def colorings(orders, edges):
    """Colored graphs over one shape: at least one red, no blue-blue edges, blue degree >= 1."""
    nv = len(orders)
    vertex = {h: v for v, o in enumerate(orders) for h in o}
    adjacent = [(vertex[a], vertex[b]) for a, b in edges]
    for mask in range(2 ** nv):
        blue = {v for v in range(nv) if mask >> v & 1}
        if len(blue) == nv:
            continue
        if any(a in blue and b in blue for a, b in adjacent):
            continue
        if any(not orders[v] for v in blue):
            continue
        yield build_graph([BLUE if v in blue else RED for v in range(nv)], orders, edges)


def enumerate_colored_graphs(max_edges, max_genus=1):
    """Connected colored graphs up to isomorphism, with ``g <= max_genus``."""
    out = {}
    for level in enumerate_ribbon_graphs(max_edges):
        for orders, edges in level:
            for g in colorings(orders, edges):
                if trace_faces(g)[1] <= max_genus:
                    out.setdefault(certificate(g), g)
    return list(out.values())


# contraction invariance suite ------------------------------------------------------

def corollary_d_suite(pkg, edge_bound=5, max_genus=1, graphs=None):
    """Type-only evaluation and invariance under every applicable contraction.

    Findings are aggregated per check and type; ``extra["graphs"]`` counts
    the graphs covered.
    """
    if not pkg.commutative:
        return [Finding("commutativity", "warn", "noncommutative algebra: suite not applicable",
                        suite="ribbon")]
    graphs = enumerate_colored_graphs(edge_bound, max_genus) if graphs is None else graphs
    values = {}
    closed = {}
    done = {}
    tallies = {}
    failures = []

    def record(check, t, finding):
        key = (check, tuple(t))
        tallies[key] = tallies.get(key, 0) + 1
        if finding is not None and finding.failed:
            failures.append(finding)

    def cached(key, fn):
        if key not in done:
            done[key] = fn()
        return done[key]

    for graph in graphs:
        faces, g = trace_faces(graph)
        t = CobordismType(g, graph.n, graph.m)
        if t.m == 0 and pkg.counit is None:
            continue
        value = evaluate(graph, pkg, cache=values)
        if t not in closed:
            closed[t] = closed_form(t, pkg, unital=False)
        record("ribbon-closed-form", t, cached(("closed", t), lambda: map_check(
            "ribbon-closed-form", value, closed[t], suite="ribbon", type=tuple(t))))
        for e in range(graph.num_edges):
            a, b = graph.edges[e]
            u, w = graph.vertex_of[a], graph.vertex_of[b]
            if graph.colors[u] != RED or graph.colors[w] != RED:
                continue
            if u != w:
                small, (si, sj) = contract_edge(graph, e)
                st = graph_type(small)
                if st != (g, t.n - 1, t.m):
                    failures.append(Finding("ribbon-edge-genus", "fail", "contraction changed genus",
                                            {"graph": graph.to_json(), "edge": e}, suite="ribbon",
                                            type=tuple(t)))
                    continue
                sv = evaluate(small, pkg, cache=values)
                record("ribbon-edge-contraction", t, cached(("edge", t, si, sj), lambda: map_check(
                    "ribbon-edge-contraction", value, edge_contraction_rhs(pkg, sv, si, sj),
                    suite="ribbon", type=tuple(t), context={"slots": [si + 1, sj + 1]})))
            else:
                try:
                    split, s = contract_loop(graph, e)
                except ContractionError:
                    record("ribbon-loop-not-applicable", t, None)
                    continue
                st = graph_type(split)
                if st != (g - 1, t.n + 1, t.m) or trace_faces(split)[0] != faces:
                    failures.append(Finding("ribbon-loop-genus", "fail",
                                            "loop contraction bookkeeping is off",
                                            {"graph": graph.to_json(), "edge": e}, suite="ribbon",
                                            type=tuple(t)))
                    continue
                sv = evaluate(split, pkg, cache=values)
                record("ribbon-loop-contraction", t, cached(("loop", t, s), lambda: map_check(
                    "ribbon-loop-contraction", value, loop_contraction_rhs(pkg, sv, s),
                    suite="ribbon", type=tuple(t), context={"slot": s + 1})))
    out = list(failures)
    failed_keys = {(f.check, f.type) for f in failures}
    for (check, t), count in sorted(tallies.items()):
        status = "skip" if check == "ribbon-loop-not-applicable" else "pass"
        if (check, t) in failed_keys:
            continue
        out.append(Finding(check, status, f"{count} graph moves" if "contraction" in check
                           or "applicable" in check else f"{count} graphs",
                           suite="ribbon", type=t, extra={"graphs": count}))
    return out
