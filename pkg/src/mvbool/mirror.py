"""Mirror pairs and the existence of two local cycles they imply."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._view import view
from .errors import BudgetExceeded, IdenticalStates
from .interaction import has_cycle, local_graphs
from .verdicts import FAIL, PASS, VACUOUS, State, Verdict

#: Largest domain for which all pairs are scanned.
PAIR_SCAN_CAP = 4096


def difference_set(x, y) -> frozenset:
    """1-based components where ``x`` and ``y`` differ."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        from .errors import SpaceMismatch

        raise SpaceMismatch(f"states of length {len(x)} and {len(y)}")
    return frozenset(k + 1 for k, (a, b) in enumerate(zip(x, y)) if a != b)


@dataclass(frozen=True)
class MirrorReport:
    x: tuple
    y: tuple
    components: frozenset
    # component -> "up" when f_i(x) <= x_i, y_i <= f_i(y), "down" for the
    # reverse chain, "both" when both hold
    orientation: dict

    def __bool__(self):
        return True


def _chains(fx, fy, a, b):
    lo, hi = min(a, b), max(a, b)
    up = fx <= lo and hi <= fy
    down = fy <= lo and hi <= fx
    return up, down


def mirror_report(f, x, y) -> MirrorReport | None:
    v = view(f)
    rx, ry = v.rank(x), v.rank(y)
    if rx == ry:
        raise IdenticalStates("a mirror pair needs two distinct states")
    xs, ys = v.space.unrank(rx), v.space.unrank(ry)
    fx, fy = v.image_coords[rx], v.image_coords[ry]
    orientation = {}
    for i in sorted(difference_set(xs, ys)):
        up, down = _chains(int(fx[i - 1]), int(fy[i - 1]), xs[i - 1], ys[i - 1])
        if not (up or down):
            return None
        orientation[i] = "both" if up and down else ("up" if up else "down")
    return MirrorReport(xs, ys, frozenset(orientation), orientation)


def is_mirror_pair(f, x, y) -> bool:
    return mirror_report(f, x, y) is not None


def mirror_pair_ranks(f) -> list:
    """All pairs ``(rx, ry)`` with ``rx < ry`` forming a mirror pair."""
    v = view(f)
    dom = v.domain_ranks()
    if len(dom) > PAIR_SCAN_CAP:
        raise BudgetExceeded(f"pair scan over {len(dom)} states exceeds {PAIR_SCAN_CAP}")
    cur = v.space.coords[dom]
    img = v.image_coords[dom]
    out = []
    for a in range(len(dom) - 1):
        xs, fx = cur[a], img[a]
        ys, fy = cur[a + 1 :], img[a + 1 :]
        lo, hi = np.minimum(xs, ys), np.maximum(xs, ys)
        up = (fx <= lo) & (hi <= fy)
        down = (fy <= lo) & (hi <= fx)
        diff = xs != ys
        ok = np.all(~diff | up | down, axis=1) & diff.any(axis=1)
        for b in np.flatnonzero(ok).tolist():
            out.append((int(dom[a]), int(dom[a + 1 + b])))
    return out


def find_mirror_pairs(f) -> list:
    v = view(f)
    u = v.space.unrank
    return [mirror_report(f, u(a), u(b)) for a, b in mirror_pair_ranks(f)]


def cycle_states(f) -> list:
    """Ranks whose local interaction graph contains a cycle."""
    return sorted(r for r, g in local_graphs(f).items() if g.edges and has_cycle(g))


def check_mirror_theorem(f, conjecture=False) -> Verdict:
    """If ``f`` has a mirror pair, find two distinct states with local cycles.

    With ``conjecture=True`` also look for a mirror pair whose two states
    both carry a local cycle; a miss is reported as a candidate
    counterexample but does not change the verdict.
    """
    v = view(f)
    pairs = mirror_pair_ranks(f)
    if not pairs:
        return Verdict("thm4", VACUOUS, witnesses={"mirror_pairs": 0})
    cyc = cycle_states(f)
    def u(r):
        return State(v.space, v.space.unrank(r))

    witnesses = {
        "mirror_pairs": len(pairs),
        "first_pair": [u(pairs[0][0]), u(pairs[0][1])],
        "cycle_states": len(cyc),
    }
    if len(cyc) >= 2:
        witnesses["witness_states"] = [u(cyc[0]), u(cyc[1])]
    result = Verdict(
        "thm4",
        PASS if len(cyc) >= 2 else FAIL,
        witnesses=witnesses,
        counterexample=None if len(cyc) >= 2 else {"cycle_states": [u(r) for r in cyc]},
    )
    if conjecture:
        cs = set(cyc)
        hit = next(((a, b) for a, b in pairs if a in cs and b in cs), None)
        if hit is None:
            result.witnesses["conjecture_candidate_counterexample"] = True
        else:
            result.witnesses["conjecture_pair"] = [u(hit[0]), u(hit[1])]
    return result
