"""Boolean conversions of multivalued maps.

A state ``x`` of a multivalued space with levels ``(m_1, ..., m_n)`` is
embedded into ``B^m`` (``m = sum(m_i)``) by the threshold code
``b_{i,j}(x) = 1 iff x_i >= j``.  Bits are laid out component-major and
level-ascending; a Boolean state's rank reads this bit string as a binary
number, most significant bit first.

The embedding image is the *admissible* region: each component block is a
staircase ``1..10..0``.  ``psi`` projects any Boolean state onto it while
keeping the number of ones in each block.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .core import MultiSpace, MultivaluedMap, State
from .errors import NonAdmissibleState, PartialMapNotSupported, StateOutOfRange


class Domain(enum.Enum):
    ADMISSIBLE_ONLY = "admissible"
    TOTAL = "total"


# ---------------------------------------------------------------------------
# rank-level tables, cached per space


@dataclass(frozen=True)
class _Layout:
    embed: np.ndarray  # X rank -> B^m rank
    project: np.ndarray  # B^m rank -> X rank, -1 if not admissible
    psi_star: np.ndarray  # B^m rank -> X rank of psi(y)
    admissible: np.ndarray  # bool mask over B^m
    bit_component: np.ndarray  # flattened bit position -> 0-based component


_LAYOUTS: dict = {}


def layout(space: MultiSpace) -> _Layout:
    key = space.levels
    lay = _LAYOUTS.get(key)
    if lay is not None:
        return lay
    bspace = space.boolean_space
    bit_component = np.repeat(np.arange(space.n), space.levels)
    # embed: bit (i,j) set iff x_i >= j
    thresholds = np.concatenate([np.arange(1, m + 1) for m in space.levels])
    bits = (space.coords[:, bit_component] >= thresholds[None, :]).astype(np.int64)
    embed = bits @ bspace.weights
    # block sums of every Boolean state
    onehot = np.zeros((space.boolean_dim, space.n), dtype=np.int64)
    onehot[np.arange(space.boolean_dim), bit_component] = 1
    psi_star = (bspace.coords @ onehot) @ space.weights
    project = np.full(bspace.size, -1, dtype=np.int64)
    project[embed] = np.arange(space.size, dtype=np.int64)
    admissible = project >= 0
    for a in (embed, project, psi_star, admissible, bit_component):
        a.setflags(write=False)
    lay = _Layout(embed, project, psi_star, admissible, bit_component)
    _LAYOUTS[key] = lay
    return lay


def _bool_state(space: MultiSpace, y) -> State:
    y = tuple(int(v) for v in y)
    if len(y) != space.boolean_dim or any(v not in (0, 1) for v in y):
        raise StateOutOfRange(f"{y} is not a Boolean state of length {space.boolean_dim}")
    return y


# ---------------------------------------------------------------------------
# state-level operations


def embed(space: MultiSpace, x) -> State:
    x = space.validate(x)
    return tuple(int(v >= j) for v, m in zip(x, space.levels) for j in range(1, m + 1))


def is_admissible(space: MultiSpace, y) -> bool:
    y = _bool_state(space, y)
    for i in range(1, space.n + 1):
        block = [y[k] for k in space.block(i)]
        if any(block[h] < block[h + 1] for h in range(len(block) - 1)):
            return False
    return True


def project(space: MultiSpace, y) -> State:
    """Inverse of :func:`embed` on the admissible region."""
    y = _bool_state(space, y)
    if not is_admissible(space, y):
        raise NonAdmissibleState(f"{''.join(map(str, y))} is not admissible")
    return tuple(sum(y[k] for k in space.block(i)) for i in range(1, space.n + 1))


def psi_star(space: MultiSpace, y) -> State:
    y = _bool_state(space, y)
    return tuple(sum(y[k] for k in space.block(i)) for i in range(1, space.n + 1))


def psi(space: MultiSpace, y) -> State:
    """Admissible state with the same number of ones in every block as ``y``."""
    return embed(space, psi_star(space, y))


def admissible_states(space: MultiSpace) -> list:
    return [embed(space, x) for x in space.states()]


# ---------------------------------------------------------------------------
# conversions


@dataclass(frozen=True, eq=False)
class BooleanConversion:
    """Boolean map on ``B^m`` attached to a multivalued source space.

    ``table[r]`` is the image rank of the Boolean state of rank ``r``; for
    ``ADMISSIBLE_ONLY`` conversions it is ``-1`` outside the admissible region
    and querying such a state raises :class:`NonAdmissibleState`.
    """

    source: MultiSpace
    domain: Domain
    table: np.ndarray

    def __post_init__(self):
        bspace = self.source.boolean_space
        t = np.array(self.table, dtype=np.int64).reshape(-1)
        if t.shape[0] != bspace.size:
            raise ValueError(f"table has {t.shape[0]} entries, expected {bspace.size}")
        lay = layout(self.source)
        if self.domain is Domain.ADMISSIBLE_ONLY:
            if np.any(t[~lay.admissible] != -1):
                raise ValueError("admissible-only table defines non-admissible states")
            vals = t[lay.admissible]
            if vals.size and (vals.min() < 0 or not lay.admissible[vals].all()):
                raise NonAdmissibleState("admissible-only table leaves the admissible region")
        elif t.size and (t.min() < 0 or t.max() >= bspace.size):
            raise StateOutOfRange("table image outside B^m")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_mapping(cls, source: MultiSpace, mapping: Mapping, domain=Domain.TOTAL):
        """Build from ``{bits: bits}`` covering the whole domain."""
        bspace = source.boolean_space
        t = np.full(bspace.size, -1, dtype=np.int64)
        for y, z in mapping.items():
            t[bspace.rank(_bool_state(source, y))] = bspace.rank(_bool_state(source, z))
        if domain is Domain.TOTAL and np.any(t < 0):
            missing = bspace.unrank(int(np.argmin(t)))
            raise ValueError(f"no image for {''.join(map(str, missing))}")
        return cls(source, domain, t)

    @property
    def space(self) -> MultiSpace:
        """The Boolean space ``B^m`` the map acts on."""
        return self.source.boolean_space

    @property
    def is_total(self):
        return self.domain is Domain.TOTAL

    @cached_property
    def defined(self):
        if self.is_total:
            return None
        return layout(self.source).admissible

    @property
    def labels(self):
        return self.source.index_pairs

    def __call__(self, y) -> State:
        bspace = self.space
        r = bspace.rank(_bool_state(self.source, y))
        img = self.table[r]
        if img < 0:
            raise NonAdmissibleState(f"{''.join(map(str, y))} is outside the conversion's domain")
        return bspace.unrank(img)

    def __eq__(self, other):
        if not isinstance(other, BooleanConversion):
            return NotImplemented
        return (
            self.source == other.source
            and self.domain is other.domain
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.source.levels, self.domain, self.table.tobytes()))

    def __repr__(self):
        return f"BooleanConversion(levels={self.source.levels}, domain={self.domain.name})"

    @cached_property
    def image_coords(self):
        bspace = self.space
        t = np.where(self.table >= 0, self.table, np.arange(bspace.size))
        out = bspace.coords[t]
        out.setflags(write=False)
        return out

    def as_map(self) -> MultivaluedMap:
        """The total conversion as a plain map on ``{0,1}^m``."""
        if not self.is_total:
            raise PartialMapNotSupported("admissible-only conversion is not a total map")
        return MultivaluedMap(self.space, self.table)

    def items(self):
        bspace = self.space
        for r in range(bspace.size):
            if self.table[r] >= 0:
                yield bspace.unrank(r), bspace.unrank(self.table[r])


def partial_conversion(f: MultivaluedMap) -> BooleanConversion:
    """``b o f o b^-1`` on the admissible region."""
    lay = layout(f.space)
    t = np.full(f.space.boolean_space.size, -1, dtype=np.int64)
    t[lay.embed] = lay.embed[f.table]
    return BooleanConversion(f.space, Domain.ADMISSIBLE_ONLY, t)


def extend_via_psi(f: MultivaluedMap) -> BooleanConversion:
    """Total conversion ``b o f o b^-1 o psi``."""
    lay = layout(f.space)
    return BooleanConversion(f.space, Domain.TOTAL, lay.embed[f.table[lay.psi_star]])


def binarise(f: MultivaluedMap) -> BooleanConversion:
    """Symmetric conversion driven by the direction of ``f`` at ``psi*(y)``.

    Every bit of block ``i`` is set to 1 when ``f_i`` increases at
    ``psi*(y)``, to 0 when it decreases, and kept otherwise.
    """
    space = f.space
    lay = layout(space)
    bspace = space.boolean_space
    x = lay.psi_star
    direction = np.sign(f.image_coords[x] - space.coords[x])[:, lay.bit_component]
    bits = bspace.coords
    new = np.where(direction > 0, 1, np.where(direction < 0, 0, bits))
    return BooleanConversion(space, Domain.TOTAL, new @ bspace.weights)


def commutes(F: BooleanConversion, f: MultivaluedMap) -> bool:
    """True when ``F(b(x)) = b(f(x))`` for every ``x``."""
    F.source.check_same(f.space)
    lay = layout(f.space)
    return bool(np.array_equal(F.table[lay.embed], lay.embed[f.table]))


def is_compatible(F: BooleanConversion, f: MultivaluedMap) -> bool:
    """Check that ``F`` is a compatible conversion of ``f``.

    Requires the diagram to commute, the admissible region to be a trap set
    of the asynchronous dynamics of ``F``, and every non-admissible state to
    reach the admissible region.
    """
    F.source.check_same(f.space)
    if not F.is_total:
        raise PartialMapNotSupported("compatibility needs a total conversion")
    if not commutes(F, f):
        return False
    from .dynamics import build_async

    ad = build_async(F)
    adm = layout(f.space).admissible
    src, dst = ad.edge_arrays()
    if np.any(adm[src] & ~adm[dst]):
        return False
    # backward reachability from the admissible region
    seen = adm.copy()
    preds = [[] for _ in range(ad.space.size)]
    for s, d in zip(src.tolist(), dst.tolist()):
        preds[d].append(s)
    queue = deque(np.flatnonzero(adm).tolist())
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if not seen[u]:
                seen[u] = True
                queue.append(u)
    return bool(seen.all())
