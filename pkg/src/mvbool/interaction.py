"""Signed interaction graphs and elementary cycles.

Vertices are the 1-based component numbers of a multivalued map, or
:class:`~mvbool.core.IndexPair` labels for Boolean conversions.  An edge
``j -> i`` with sign ``s`` is stored as the triple ``(j, i, s)``; opposite
signs between the same vertices are kept as parallel edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from ._view import MapView, view
from .core import IndexPair, sign
from .errors import CycleBudgetExceeded, IdenticalStates, SpaceMismatch

DEFAULT_CYCLE_BUDGET = 10**6


def format_vertex(v) -> str:
    if isinstance(v, IndexPair):
        return f"({v.component},{v.level})"
    return str(v)


def _sign_char(s):
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class SignedDigraph:
    vertices: tuple
    edges: frozenset
    # (source, target, sign) -> variations that produced the edge
    variations: Mapping = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        vs = set(self.vertices)
        for s, t, sg in self.edges:
            if s not in vs or t not in vs or sg not in (1, -1):
                raise ValueError(f"bad edge {(s, t, sg)}")

    @classmethod
    def empty(cls, vertices=()):
        return cls(tuple(vertices), frozenset())

    def __len__(self):
        return len(self.edges)

    def __contains__(self, edge):
        return tuple(edge) in self.edges

    @property
    def _pos(self):
        return {v: k for k, v in enumerate(self.vertices)}

    def edge_list(self) -> list:
        pos = self._pos
        return sorted(self.edges, key=lambda e: (pos[e[0]], pos[e[1]], -e[2]))

    def signs(self, source, target) -> set:
        return {sg for s, t, sg in self.edges if s == source and t == target}

    def has_edge(self, source, target, sign=None) -> bool:
        if sign is None:
            return (source, target, 1) in self.edges or (source, target, -1) in self.edges
        return (source, target, sign) in self.edges

    def is_subgraph_of(self, other: "SignedDigraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and self.edges <= other.edges

    def union(self, *others) -> "SignedDigraph":
        return union_graphs([self, *others])

    def component_edges(self) -> set:
        """Edges projected onto components, ``(j, i, sign)`` for index-pair graphs."""
        return {
            (s.component, t.component, sg) if isinstance(s, IndexPair) else (s, t, sg)
            for s, t, sg in self.edges
        }

    def __str__(self):
        parts = [
            f"{format_vertex(s)}->{format_vertex(t)}{_sign_char(sg)}"
            for s, t, sg in self.edge_list()
        ]
        return "{" + ", ".join(parts) + "}"


def union_graphs(graphs: Iterable[SignedDigraph], vertices=None) -> SignedDigraph:
    graphs = list(graphs)
    if vertices is None:
        seen = {}
        for g in graphs:
            for v in g.vertices:
                seen.setdefault(v, None)
        vertices = tuple(seen)
    edges = set()
    variations: dict = {}
    for g in graphs:
        edges |= g.edges
        for e, var in g.variations.items():
            variations[e] = variations.get(e, frozenset()) | var
    return SignedDigraph(tuple(vertices), frozenset(edges), variations)


@dataclass(frozen=True)
class SignedCycle:
    """Elementary cycle ``vertices[0] -> vertices[1] -> ... -> vertices[0]``.

    ``signs[k]`` is the sign of the edge leaving ``vertices[k]``.
    """

    vertices: tuple
    signs: tuple

    @property
    def sign(self) -> int:
        out = 1
        for s in self.signs:
            out *= s
        return out

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        k = len(self.vertices)
        return [
            (self.vertices[a], self.vertices[(a + 1) % k], self.signs[a]) for a in range(k)
        ]

    def __str__(self):
        out = format_vertex(self.vertices[0])
        for a, s in enumerate(self.signs):
            nxt = self.vertices[(a + 1) % len(self.vertices)]
            out += f" -{_sign_char(s)}-> {format_vertex(nxt)}"
        return out


def canonical_cycle(vertices, signs, order=None) -> SignedCycle:
    """Rotate so the cycle starts at its smallest vertex (by ``order`` position)."""
    vertices, signs = tuple(vertices), tuple(signs)
    key = (lambda v: order[v]) if order is not None else (lambda v: v)
    k = min(range(len(vertices)), key=lambda a: key(vertices[a]))
    return SignedCycle(vertices[k:] + vertices[:k], signs[k:] + signs[:k])


# ---------------------------------------------------------------------------
# graph construction


def _graph_from_rows(v: MapView, rows) -> SignedDigraph:
    labels = v.labels
    variations: dict = {}
    for _, j, i, s, s1 in rows:
        e = (labels[j], labels[i], int(s))
        variations.setdefault(e, set()).add(int(s1))
    frozen = {e: frozenset(var) for e, var in variations.items()}
    return SignedDigraph(labels, frozenset(frozen), frozen)


def _rows(v: MapView, states=None):
    return _kernels.local_edges(
        v.space.coords,
        v.image_coords,
        v.space.weights,
        v.space.levels_array,
        v.defined,
        states,
    )


def local_graph(f, x) -> SignedDigraph:
    """Local interaction graph at ``x``.

    Edge ``j -> i`` has sign ``s1 * sign(f_i(x + s1 e^j) - f_i(x))`` for each
    variation ``s1`` such that the neighbour is in the map's domain.
    """
    v = view(f)
    r = v.rank(x)
    return _graph_from_rows(v, _rows(v, [r]))


def local_graphs(f, states=None) -> dict:
    """``{rank: local graph}`` for the given states (default: the whole domain)."""
    v = view(f)
    ranks = v.domain_ranks() if states is None else np.asarray([v.rank(x) for x in states])
    rows = _rows(v, ranks)
    out = {int(r): SignedDigraph.empty(v.labels) for r in ranks}
    if rows.shape[0]:
        splits = np.flatnonzero(np.diff(rows[:, 0])) + 1
        for chunk in np.split(rows, splits):
            out[int(chunk[0, 0])] = _graph_from_rows(v, chunk.tolist())
    return out


def global_graph(f, states=None) -> SignedDigraph:
    """Union of the local graphs over the domain (or over ``states``)."""
    v = view(f)
    ranks = None if states is None else [v.rank(x) for x in states]
    rows = _rows(v, ranks)
    if rows.shape[0] == 0:
        return SignedDigraph.empty(v.labels)
    uniq = np.unique(rows[:, 1:], axis=0).tolist()
    return _graph_from_rows(v, [[0, *row] for row in uniq])


def difference_components(x, y) -> list:
    """0-based components where ``x`` and ``y`` differ."""
    return [k for k, (a, b) in enumerate(zip(x, y)) if a != b]


def nonusual_graph(f, x, y) -> SignedDigraph:
    """Local graph at ``x`` with variations in the direction of ``y``.

    Only components in which ``x`` and ``y`` differ are vertices.  An edge
    ``j -> i`` needs ``f_i(x)`` and ``f_i(x + eps_j e^j)`` on strictly
    opposite sides of ``x_i + eps_i / 2``.
    """
    v = view(f)
    rx, ry = v.rank(x), v.space.rank(y)
    if rx == ry:
        raise IdenticalStates("non-usual graph needs two distinct states")
    cur = v.space.coords
    xs, ys = cur[rx], cur[ry]
    diff = difference_components(xs, ys)
    eps = {k: sign(int(ys[k]) - int(xs[k])) for k in diff}
    fx = v.image_coords[rx]
    edges = set()
    variations = {}
    for j in diff:
        xj = int(xs[j]) + eps[j]
        if not 0 <= xj <= v.space.levels[j]:
            continue
        nb = rx + eps[j] * int(v.space.weights[j])
        if not v.in_domain(nb):
            continue
        fn = v.image_coords[nb]
        for i in diff:
            a, b = int(fx[i]), int(fn[i])
            s = eps[j] * sign(b - a)
            # doubled to stay in integers: 2*min < 2*x_i + eps_i < 2*max
            mid = 2 * int(xs[i]) + eps[i]
            if s != 0 and 2 * min(a, b) < mid < 2 * max(a, b):
                e = (v.labels[j], v.labels[i], s)
                edges.add(e)
                variations[e] = frozenset({eps[j]})
    vertices = tuple(v.labels[k] for k in diff)
    return SignedDigraph(vertices, frozenset(edges), variations)


def nonusual_graphs(f) -> Iterator[tuple]:
    """``(x, y, graph)`` over every state ``x`` and every direction pattern.

    The non-usual graph only depends on ``y`` through the signs of
    ``y - x``, so ``y = x + eps`` for each nonzero ``eps`` in ``{-1,0,1}^n``
    with ``x + eps`` inside the space covers all pairs.
    """
    v = view(f)
    levels = v.space.levels
    for r in v.domain_ranks().tolist():
        x = v.space.unrank(r)
        for eps in product((-1, 0, 1), repeat=v.space.n):
            if not any(eps):
                continue
            y = tuple(a + e for a, e in zip(x, eps))
            if all(0 <= b <= m for b, m in zip(y, levels)):
                yield x, y, nonusual_graph(f, x, y)


def _step(v: MapView, r, j):
    """Rank of the state obtained from rank ``r`` by updating component ``j`` (0-based)."""
    d = sign(int(v.image_coords[r][j]) - int(v.space.coords[r][j]))
    return r + d * int(v.space.weights[j]), d


def richard_graph(f, x) -> SignedDigraph:
    """Graph of single-step interactions at ``x``.

    With ``F^j`` the map updating only component ``j`` one step towards
    ``f_j``, there is an edge ``j -> i`` of sign
    ``sign(f_j(x) - x_j) * sign(f_i(F^j x) - F^j_i x)`` when that product is
    nonzero and the direction of ``f_i`` changes between ``x`` and ``F^j x``.
    """
    v = view(f)
    r = v.rank(x)
    cur, img = v.space.coords, v.image_coords
    edges = set()
    variations = {}
    for j in range(v.space.n):
        t, dj = _step(v, r, j)
        if dj == 0 or not v.in_domain(t):
            continue
        for i in range(v.space.n):
            before = sign(int(img[r][i]) - int(cur[r][i]))
            after = sign(int(img[t][i]) - int(cur[t][i]))
            s = dj * after
            if before != after and s != 0:
                e = (v.labels[j], v.labels[i], s)
                edges.add(e)
                variations[e] = frozenset({dj})
    return SignedDigraph(v.labels, frozenset(edges), variations)


def richard_graph_union(f, states) -> SignedDigraph:
    v = view(f)
    return union_graphs([richard_graph(f, x) for x in states], vertices=v.labels)


# ---------------------------------------------------------------------------
# cycles


def _normalize_filter(sign_filter) -> int:
    if sign_filter in (None, 0, "any", "ANY"):
        return 0
    if sign_filter in (1, "+", "pos", "positive", "POSITIVE"):
        return 1
    if sign_filter in (-1, "-", "neg", "negative", "NEGATIVE"):
        return -1
    raise ValueError(f"unknown sign filter {sign_filter!r}")


def _adjacency(G: SignedDigraph):
    pos = G._pos
    n = len(G.vertices)
    adj = [dict() for _ in range(n)]
    for s, t, sg in G.edges:
        adj[pos[s]].setdefault(pos[t], set()).add(sg)
    return [sorted((t, tuple(sorted(sgs))) for t, sgs in a.items()) for a in adj]


def _component_of(succ, s) -> set:
    """Vertices ``>= s`` in the same strong component as ``s`` (restricted to ``>= s``)."""
    fwd, todo = {s}, [s]
    while todo:
        for t in succ[todo.pop()]:
            if t >= s and t not in fwd:
                fwd.add(t)
                todo.append(t)
    pred: dict = {}
    for v in fwd:
        for t in succ[v]:
            if t in fwd:
                pred.setdefault(t, []).append(v)
    bwd, todo = {s}, [s]
    while todo:
        for u in pred.get(todo.pop(), ()):
            if u not in bwd:
                bwd.add(u)
                todo.append(u)
    return bwd


def _vertex_cycles(adj) -> Iterator[list]:
    """Elementary cycles as index lists starting at their smallest vertex.

    Johnson's blocking search from each start vertex ``s`` inside the strong
    component of ``s`` among the vertices ``>= s``.
    """
    succ = [[t for t, _ in a] for a in adj]
    for s in range(len(adj)):
        comp = _component_of(succ, s)
        if len(comp) == 1 and s not in succ[s]:
            continue
        nbrs = {v: [t for t in succ[v] if t in comp] for v in comp}
        blocked = {s}
        B = {v: set() for v in comp}
        closed = set()
        path = [s]
        stack = [(s, iter(nbrs[s]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is not None:
                if w == s:
                    yield list(path)
                    closed.update(path)
                elif w not in blocked:
                    path.append(w)
                    blocked.add(w)
                    closed.discard(w)
                    stack.append((w, iter(nbrs[w])))
                continue
            if v in closed:
                todo = [v]
                while todo:
                    u = todo.pop()
                    if u in blocked:
                        blocked.discard(u)
                        todo.extend(B[u])
                        B[u].clear()
            else:
                for t in nbrs[v]:
                    B[t].add(v)
            stack.pop()
            path.pop()


def _sign_options(adj, cyc):
    k = len(cyc)
    out = []
    for a in range(k):
        nxt = cyc[(a + 1) % k]
        out.append(dict(adj[cyc[a]])[nxt])
    return out


def iter_cycles(G: SignedDigraph, sign_filter="any") -> Iterator[SignedCycle]:
    """Lazily yield sign-resolved elementary cycles matching the filter."""
    want = _normalize_filter(sign_filter)
    adj = _adjacency(G)
    V = G.vertices
    for cyc in _vertex_cycles(adj):
        for signs in product(*_sign_options(adj, cyc)):
            c = SignedCycle(tuple(V[a] for a in cyc), signs)
            if want == 0 or c.sign == want:
                yield c


def enumerate_cycles(G: SignedDigraph, sign_filter="any", budget=DEFAULT_CYCLE_BUDGET) -> list:
    """All elementary cycles, canonical rotation, sorted by length then vertices."""
    out = []
    for c in iter_cycles(G, sign_filter):
        out.append(c)
        if len(out) > budget:
            raise CycleBudgetExceeded(f"more than {budget} cycles")
    pos = G._pos
    out.sort(key=lambda c: (len(c), [pos[v] for v in c.vertices], [-s for s in c.signs]))
    return out


def has_cycle(G: SignedDigraph, sign_filter="any") -> bool:
    want = _normalize_filter(sign_filter)
    adj = _adjacency(G)
    for cyc in _vertex_cycles(adj):
        if want == 0:
            return True
        opts = _sign_options(adj, cyc)
        if any(len(o) == 2 for o in opts):
            return True
        prod = 1
        for o in opts:
            prod *= o[0]
        if prod == want:
            return True
    return False


def cycle_signs(G: SignedDigraph) -> set:
    """Signs realised by some elementary cycle of ``G``.

    A cycle through a pair of opposite parallel edges realises both signs.
    """
    found = set()
    adj = _adjacency(G)
    for cyc in _vertex_cycles(adj):
        opts = _sign_options(adj, cyc)
        if any(len(o) == 2 for o in opts):
            return {1, -1}
        prod = 1
        for o in opts:
            prod *= o[0]
        found.add(prod)
        if len(found) == 2:
            break
    return found


def scan_local_cycles(F, sign_filter="any", budget=DEFAULT_CYCLE_BUDGET) -> list:
    """``(state, cycle)`` for every matching cycle of every local graph.

    An empty result certifies that no local graph has a matching cycle.
    """
    v = view(F)
    out = []
    for r, g in local_graphs(F).items():
        if not g.edges:
            continue
        x = v.space.unrank(r)
        for c in enumerate_cycles(g, sign_filter, budget=budget):
            out.append((x, c))
            if len(out) > budget:
                raise CycleBudgetExceeded(f"more than {budget} cycles")
    return out


def check_same_space(f, g):
    a, b = view(f).space, view(g).space
    if a.levels != b.levels:
        raise SpaceMismatch(f"{a.levels} vs {b.levels}")
