"""Asynchronous state transition graphs, trap sets and attractors."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from ._view import view
from .conversion import BooleanConversion
from .core import MultiSpace, MultivaluedMap
from .errors import EmptySet, PartialMapNotSupported, StateOutOfRange


@dataclass(frozen=True, eq=False)
class AsyncDynamics:
    """Asynchronous dynamics over the states of ``space`` (or a subset).

    Adjacency is stored in CSR form over all ranks of ``space``; ranks
    outside ``universe`` have no edges and are not vertices.
    """

    space: MultiSpace
    indptr: np.ndarray
    indices: np.ndarray
    universe: np.ndarray | None = None  # bool mask, None = whole space

    @property
    def boolean(self):
        return self.space.is_boolean

    def vertex_ranks(self) -> np.ndarray:
        if self.universe is None:
            return np.arange(self.space.size, dtype=np.int64)
        return np.flatnonzero(self.universe)

    def vertices(self):
        return [self.space.unrank(r) for r in self.vertex_ranks()]

    def __len__(self):
        return len(self.vertex_ranks())

    @property
    def n_edges(self):
        return int(self.indices.shape[0])

    def contains_rank(self, r) -> bool:
        return 0 <= r < self.space.size and (self.universe is None or bool(self.universe[r]))

    def _rank(self, x) -> int:
        r = self.space.rank(x)
        if not self.contains_rank(r):
            raise StateOutOfRange(f"{self.space.format_state(x)} is not a vertex")
        return r

    def successor_ranks(self, r) -> np.ndarray:
        return self.indices[self.indptr[r] : self.indptr[r + 1]]

    def successors(self, x):
        r = self._rank(x)
        return [self.space.unrank(t) for t in self.successor_ranks(r)]

    @cached_property
    def out_degree(self):
        return np.diff(self.indptr)

    def edge_arrays(self):
        """``(sources, targets)`` rank arrays, sorted by source then target."""
        src = np.repeat(np.arange(self.space.size, dtype=np.int64), self.out_degree)
        return src, self.indices

    def edges(self):
        src, dst = self.edge_arrays()
        u = self.space.unrank
        return [(u(s), u(d)) for s, d in zip(src.tolist(), dst.tolist())]


class AttractorKind(enum.Enum):
    FIXED_POINT = "fixed_point"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class Attractor:
    space: MultiSpace
    ranks: tuple  # sorted

    @property
    def kind(self):
        return AttractorKind.FIXED_POINT if len(self.ranks) == 1 else AttractorKind.CYCLIC

    @property
    def states(self):
        return [self.space.unrank(r) for r in self.ranks]

    def __len__(self):
        return len(self.ranks)

    def __contains__(self, x):
        return self.space.rank(x) in self.ranks


def _build(v, universe):
    indptr, indices = _kernels.async_successors(
        v.space.coords, v.image_coords, v.space.weights, universe
    )
    return AsyncDynamics(v.space, indptr, indices, universe)


def build_async(f) -> AsyncDynamics:
    """Asynchronous dynamics of a total map (multivalued or Boolean conversion)."""
    if isinstance(f, BooleanConversion) and not f.is_total:
        raise PartialMapNotSupported("use build_async_admissible for admissible-only conversions")
    return _build(view(f), None)


def build_async_admissible(fb: BooleanConversion) -> AsyncDynamics:
    """Asynchronous dynamics of an admissible-only conversion, on the admissible region."""
    v = view(fb)
    universe = v.defined
    if universe is None:
        from .conversion import layout

        universe = layout(fb.source).admissible
    return _build(v, universe)


def _as_dynamics(obj) -> AsyncDynamics:
    if isinstance(obj, AsyncDynamics):
        return obj
    if isinstance(obj, BooleanConversion) and not obj.is_total:
        return build_async_admissible(obj)
    return build_async(obj)


def attractors(ad) -> list:
    """Terminal strongly connected components, sorted by smallest member."""
    ad = _as_dynamics(ad)
    comp, terminal = _kernels.terminal_sccs(ad.indptr, ad.indices, ad.universe)
    groups: dict = {}
    for r in np.flatnonzero(comp >= 0).tolist():
        c = int(comp[r])
        if terminal[c]:
            groups.setdefault(c, []).append(r)
    result = [Attractor(ad.space, tuple(sorted(m))) for m in groups.values()]
    result.sort(key=lambda a: a.ranks[0])
    return result


def _ranks(ad: AsyncDynamics, states) -> set:
    return {ad._rank(x) for x in states}


def is_trap_set(ad, states) -> bool:
    """No asynchronous transition leaves ``states``."""
    ad = _as_dynamics(ad)
    members = _ranks(ad, states)
    if not members:
        raise EmptySet("trap-set check needs a nonempty set")
    return all(
        int(t) in members for r in members for t in ad.successor_ranks(r)
    )


def escaping_edge(ad: AsyncDynamics, members) -> tuple | None:
    """First ``(source, target)`` rank pair leaving ``members``, if any."""
    members = set(members)
    for r in sorted(members):
        for t in ad.successor_ranks(r):
            if int(t) not in members:
                return r, int(t)
    return None


def reachable_ranks(ad: AsyncDynamics, start) -> set:
    seen = {int(start)}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for t in ad.successor_ranks(v).tolist():
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def reaches(ad, y, target) -> bool:
    """Breadth-first search from ``y`` towards any state of ``target``."""
    ad = _as_dynamics(ad)
    goal = _ranks(ad, target)
    start = ad._rank(y)
    if start in goal:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for t in ad.successor_ranks(v).tolist():
            if t in goal:
                return True
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return False


def backward_closure(ad: AsyncDynamics, mask) -> np.ndarray:
    """Mask of the vertices with a path into ``mask``."""
    seen = np.asarray(mask, dtype=bool).copy()
    src, dst = ad.edge_arrays()
    order = np.argsort(dst, kind="stable")
    src, dst = src[order], dst[order]
    starts = np.searchsorted(dst, np.arange(ad.space.size + 1))
    queue = deque(np.flatnonzero(seen).tolist())
    while queue:
        t = queue.popleft()
        for s in src[starts[t] : starts[t + 1]].tolist():
            if not seen[s]:
                seen[s] = True
                queue.append(s)
    return seen


def fixed_point_ranks(f) -> np.ndarray:
    if isinstance(f, AsyncDynamics):
        return np.flatnonzero((f.out_degree == 0) & (True if f.universe is None else f.universe))
    v = view(f)
    dom = v.domain_ranks()
    return dom[v.table[dom] == dom]


def fixed_points(f) -> list:
    """States with ``f(x) = x``; for dynamics, the states without successors."""
    space = f.space if isinstance(f, AsyncDynamics) else view(f).space
    return [space.unrank(r) for r in fixed_point_ranks(f)]


def same_dynamics(a: AsyncDynamics, b: AsyncDynamics) -> bool:
    return (
        a.space == b.space
        and np.array_equal(a.indptr, b.indptr)
        and np.array_equal(a.indices, b.indices)
    )
