"""State spaces, states and total mapping tables.

A multivalued space is described by its maximal levels ``(m_1, ..., m_n)``;
component ``i`` takes values in ``{0, ..., m_i}``.  States are enumerated in
mixed-radix order with the first component most significant, and maps are
stored as tables from state rank to image rank.

Components are numbered from 1 in every public signature (``component_step``,
graph vertices, index pairs) so that printed objects read like the usual
mathematical notation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import BudgetExceeded, SpaceMismatch, StateOutOfRange

#: Default cap on the number of states of any enumerated space.
DEFAULT_BUDGET = 2**24

State = tuple  # tuple of ints


class IndexPair(NamedTuple):
    """Address ``(component, level)`` of one Boolean variable, both 1-based."""

    component: int
    level: int

    def __str__(self):
        return f"{self.component},{self.level}"


def sign(a):
    return (a > 0) - (a < 0)


@dataclass(frozen=True)
class MultiSpace:
    """The product space ``{0..m_1} x ... x {0..m_n}``."""

    levels: tuple
    names: tuple | None = field(default=None, compare=False)
    budget: int = field(default=DEFAULT_BUDGET, compare=False, repr=False)

    def __post_init__(self):
        levels = tuple(int(m) for m in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise ValueError("a space needs at least one component")
        if any(m < 1 for m in levels):
            raise ValueError(f"levels must be >= 1, got {levels}")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(levels):
                raise ValueError("one name per component required")
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate component names in {names}")
            object.__setattr__(self, "names", names)
        size = 1
        for m in levels:
            size *= m + 1
        if size > self.budget:
            raise BudgetExceeded(f"space with {size} states exceeds budget {self.budget}")

    @classmethod
    def boolean(cls, m, budget=DEFAULT_BUDGET):
        return cls((1,) * m, budget=budget)

    @property
    def n(self):
        return len(self.levels)

    @cached_property
    def size(self):
        return int(np.prod([m + 1 for m in self.levels], dtype=np.int64))

    @property
    def boolean_dim(self):
        """Number of Boolean variables of the embedding (sum of the levels)."""
        return sum(self.levels)

    @property
    def is_boolean(self):
        return all(m == 1 for m in self.levels)

    @cached_property
    def component_names(self):
        if self.names is not None:
            return self.names
        return tuple(f"x{i + 1}" for i in range(self.n))

    @cached_property
    def weights(self):
        """Mixed-radix place values; the last component is least significant."""
        w = np.ones(self.n, dtype=np.int64)
        for i in range(self.n - 2, -1, -1):
            w[i] = w[i + 1] * (self.levels[i + 1] + 1)
        w.setflags(write=False)
        return w

    @cached_property
    def levels_array(self):
        a = np.asarray(self.levels, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def coords(self):
        """``size x n`` array; row ``r`` holds the coordinates of state ``r``."""
        r = np.arange(self.size, dtype=np.int64)
        out = (r[:, None] // self.weights[None, :]) % (self.levels_array[None, :] + 1)
        out = np.ascontiguousarray(out, dtype=np.int64)
        out.setflags(write=False)
        return out

    # Boolean embedding layout -------------------------------------------------

    @cached_property
    def offsets(self):
        """Flattened position of ``(i, 1)`` for each component (0-based)."""
        out, acc = [], 0
        for m in self.levels:
            out.append(acc)
            acc += m
        return tuple(out)

    @cached_property
    def index_pairs(self):
        return tuple(
            IndexPair(i + 1, j + 1) for i, m in enumerate(self.levels) for j in range(m)
        )

    def flat_index(self, pair):
        i, j = pair
        if not (1 <= i <= self.n and 1 <= j <= self.levels[i - 1]):
            raise StateOutOfRange(f"index pair {pair} not in space {self.levels}")
        return self.offsets[i - 1] + j - 1

    def block(self, i):
        """Flattened positions of the Boolean variables of component ``i``."""
        start = self.offsets[i - 1]
        return range(start, start + self.levels[i - 1])

    @cached_property
    def boolean_space(self):
        return MultiSpace.boolean(self.boolean_dim, budget=self.budget)

    # states -------------------------------------------------------------------

    def validate(self, x) -> State:
        x = tuple(int(v) for v in x)
        if len(x) != self.n:
            raise StateOutOfRange(f"state {x} has length {len(x)}, expected {self.n}")
        for v, m in zip(x, self.levels):
            if not 0 <= v <= m:
                raise StateOutOfRange(f"state {x} out of range for levels {self.levels}")
        return x

    def contains(self, x):
        try:
            self.validate(x)
        except (StateOutOfRange, TypeError, ValueError):
            return False
        return True

    def rank(self, x) -> int:
        x = self.validate(x)
        return int(sum(v * int(w) for v, w in zip(x, self.weights)))

    def unrank(self, r) -> State:
        r = int(r)
        if not 0 <= r < self.size:
            raise StateOutOfRange(f"rank {r} outside 0..{self.size - 1}")
        return tuple(int(v) for v in self.coords[r])

    def states(self) -> Iterator[State]:
        return product(*(range(m + 1) for m in self.levels))

    def format_state(self, x) -> str:
        """Bit string for Boolean spaces, ``(a,b,...)`` otherwise."""
        if self.is_boolean:
            return "".join(str(v) for v in x)
        return "(" + ",".join(str(v) for v in x) + ")"

    def check_same(self, other):
        if self.levels != other.levels:
            raise SpaceMismatch(f"space {self.levels} differs from {other.levels}")


def rank(space: MultiSpace, x) -> int:
    return space.rank(x)


def unrank(space: MultiSpace, r) -> State:
    return space.unrank(r)


def _frozen_table(space, table):
    t = np.array(table, dtype=np.int64).reshape(-1)
    if t.shape[0] != space.size:
        raise ValueError(f"table has {t.shape[0]} entries, space has {space.size} states")
    if t.size and (t.min() < 0 or t.max() >= space.size):
        raise StateOutOfRange("table image outside the space")
    t.setflags(write=False)
    return t


@dataclass(frozen=True, eq=False)
class MultivaluedMap:
    """Total map ``f: X -> X`` stored as a rank table."""

    space: MultiSpace
    table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "table", _frozen_table(self.space, self.table))

    @classmethod
    def from_function(cls, space: MultiSpace, fn: Callable[[State], Sequence[int]]):
        return cls(space, [space.rank(fn(x)) for x in space.states()])

    @classmethod
    def from_mapping(cls, space: MultiSpace, mapping: Mapping, default=None):
        """Build from ``{state: image}``; states not listed map to ``default``."""
        rows = {space.rank(x): space.rank(y) for x, y in mapping.items()}
        if default is not None:
            d = space.rank(default)
        table = []
        for r in range(space.size):
            if r in rows:
                table.append(rows[r])
            elif default is None:
                raise ValueError(f"no image for state {space.unrank(r)}")
            else:
                table.append(d)
        return cls(space, table)

    @classmethod
    def identity(cls, space):
        return cls(space, np.arange(space.size))

    @classmethod
    def constant(cls, space, c):
        return cls(space, np.full(space.size, space.rank(c)))

    def __call__(self, x) -> State:
        return self.space.unrank(self.table[self.space.rank(x)])

    def __eq__(self, other):
        if not isinstance(other, MultivaluedMap):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.space.levels, self.table.tobytes()))

    def __repr__(self):
        return f"MultivaluedMap(levels={self.space.levels}, size={self.space.size})"

    @cached_property
    def image_coords(self):
        out = self.space.coords[self.table]
        out.setflags(write=False)
        return out

    def items(self):
        for r, x in enumerate(self.space.states()):
            yield x, self.space.unrank(self.table[r])

    def is_stepwise(self):
        return self == stepwise(self)

    def is_asymptotic(self):
        return self == asymptotic(self)


def _direction(f: MultivaluedMap):
    return np.sign(f.image_coords - f.space.coords)


def stepwise(f: MultivaluedMap) -> MultivaluedMap:
    """Clamp every coordinate change of ``f`` to one unit."""
    space = f.space
    new = space.coords + _direction(f)
    return MultivaluedMap(space, new @ space.weights)


def asymptotic(f: MultivaluedMap) -> MultivaluedMap:
    """Saturate every coordinate change of ``f`` to the range boundary."""
    space = f.space
    d = _direction(f)
    cur = space.coords
    top = np.broadcast_to(space.levels_array, cur.shape)
    new = np.where(d > 0, top, np.where(d < 0, 0, cur))
    return MultivaluedMap(space, new @ space.weights)


def component_step(f: MultivaluedMap, x, i: int) -> State:
    """Move component ``i`` (1-based) of ``x`` one step towards ``f_i(x)``."""
    space = f.space
    x = space.validate(x)
    if not 1 <= i <= space.n:
        raise StateOutOfRange(f"component {i} not in 1..{space.n}")
    fx = f(x)
    y = list(x)
    y[i - 1] += sign(fx[i - 1] - x[i - 1])
    return tuple(y)


def as_states(space: MultiSpace, states: Iterable) -> list:
    return [space.validate(x) for x in states]
