"""Uniform access to multivalued maps and Boolean conversions."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .conversion import BooleanConversion
from .core import MultiSpace, MultivaluedMap
from .errors import NonAdmissibleState


class MapView(NamedTuple):
    space: MultiSpace  # space the map acts on
    table: np.ndarray  # image ranks, -1 outside the domain
    image_coords: np.ndarray
    defined: np.ndarray | None  # bool mask of the domain, None when total
    labels: tuple  # graph vertex label per component of ``space``
    source: MultiSpace | None  # multivalued source of a Boolean conversion

    def rank(self, x) -> int:
        r = self.space.rank(x)
        if self.defined is not None and not self.defined[r]:
            raise NonAdmissibleState(f"{self.space.format_state(x)} is outside the map's domain")
        return r

    def domain_ranks(self):
        if self.defined is None:
            return np.arange(self.space.size, dtype=np.int64)
        return np.flatnonzero(self.defined)

    def in_domain(self, r) -> bool:
        return self.defined is None or bool(self.defined[r])


def view(f) -> MapView:
    if isinstance(f, MapView):
        return f
    if isinstance(f, MultivaluedMap):
        labels = tuple(range(1, f.space.n + 1))
        return MapView(f.space, f.table, f.image_coords, None, labels, None)
    if isinstance(f, BooleanConversion):
        return MapView(f.space, f.table, f.image_coords, f.defined, f.labels, f.source)
    raise TypeError(f"expected a MultivaluedMap or BooleanConversion, got {type(f).__name__}")
