"""Instance-level checks of the conversion, cycle and mirror statements.

Each checker evaluates a statement's conclusion on one finite instance by
exhaustive enumeration and returns a :class:`~mvbool.verdicts.Verdict`.
Standing assumptions (stepwise map, compatible conversion, ...) are tested
as well and reported through ``hypotheses_hold``, so a FAIL on an instance
outside the statement's scope is visible but not mistaken for a
counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .conversion import (
    BooleanConversion,
    binarise,
    commutes,
    extend_via_psi,
    is_compatible,
    layout,
    partial_conversion,
    psi,
)
from .core import IndexPair, MultiSpace, MultivaluedMap, asymptotic, stepwise
from .dynamics import (
    attractors,
    backward_closure,
    build_async,
    fixed_points,
    reaches,
)
from .errors import BudgetExceeded, UnknownStatement
from .examples import RICHARD_OUTER_CYCLE, RegistryExample, example
from .interaction import (
    cycle_signs,
    enumerate_cycles,
    global_graph,
    has_cycle,
    local_graph,
    local_graphs,
    nonusual_graph,
    nonusual_graphs,
    richard_graph,
    richard_graph_union,
    scan_local_cycles,
    union_graphs,
)
from .mirror import check_mirror_theorem, mirror_pair_ranks
from .verdicts import FAIL, PASS, VACUOUS, State, Verdict

#: Largest Boolean dimension handled by the statement checkers.
MAX_BOOLEAN_DIM = 14


class _Ctx:
    """One instance with lazily computed, shared graphs and cycle signs."""

    def __init__(self, f: MultivaluedMap, F: BooleanConversion):
        self.f = f
        self.F = F

    @property
    def space(self) -> MultiSpace:
        return self.f.space

    @property
    def lay(self):
        return layout(self.space)

    @cached_property
    def fb(self):
        return partial_conversion(self.f)

    @cached_property
    def _Gf(self):
        return local_graphs(self.f)

    @cached_property
    def _Gfb(self):
        return local_graphs(self.fb)

    @cached_property
    def _GF(self):
        return local_graphs(self.F)

    def Gf(self):
        return self._Gf

    def Gfb(self):
        return self._Gfb

    def GF(self):
        return self._GF

    @cached_property
    def signs_f(self):
        return {r: _signs(g) for r, g in self._Gf.items()}

    @cached_property
    def signs_fb(self):
        return {r: _signs(g) for r, g in self._Gfb.items()}

    @cached_property
    def signs_F(self):
        return {r: _signs(g) for r, g in self._GF.items()}

    @cached_property
    def nonusual(self):
        """``(x, y, graph, cycle signs)`` for every state and direction pattern."""
        return [(x, y, g, _signs(g)) for x, y, g in nonusual_graphs(self.f)]

    @cached_property
    def mirror_pairs_F(self):
        return mirror_pair_ranks(self.F)

    @cached_property
    def attractors_f(self):
        return attractors(build_async(self.f))

    @cached_property
    def is_psi(self):
        return self.F == extend_via_psi(self.f)

    def is_psi_extension(self):
        return self.is_psi


def _signs(g):
    return cycle_signs(g) if g.edges else set()


def _bits(space, r):
    return space.boolean_space.unrank(r)


def _fmt_edge(e):
    s, t, sg = e
    return f"{s}->{t}{'+' if sg > 0 else '-'}"


# -- conversion and attractors ---------------------------------------------


def _prop1(c: _Ctx) -> Verdict:
    hyp = c.f.is_stepwise() and commutes(c.F, c.f)
    ad = build_async(c.F)
    adm = c.lay.admissible
    src, dst = ad.edge_arrays()
    bad = np.flatnonzero(adm[src] & ~adm[dst])
    notes = [] if hyp else ["map is not stepwise or conversion does not commute with it"]
    if bad.size:
        k = int(bad[0])
        edge = [_bits(c.space, int(src[k])), _bits(c.space, int(dst[k]))]
        return Verdict("prop1", FAIL, hyp, {"admissible_states": int(adm.sum())},
                       {"escaping_edge": edge, "escaping_edges": int(bad.size)}, notes)
    return Verdict("prop1", PASS, hyp, {"admissible_states": int(adm.sum()),
                                         "edges_checked": int(adm[src].sum())}, notes=notes)


def _prop2(c: _Ctx) -> Verdict:
    lay = c.lay
    img_adm = bool(lay.admissible[c.F.table].all())
    bcur = c.space.boolean_space.coords
    sums_x = _block_sums(c.space, bcur)
    sums_f = _block_sums(c.space, c.F.image_coords)
    close = bool((np.abs(sums_f - sums_x) <= 1).all())
    hyp = img_adm and close
    notes = [] if hyp else ["conversion leaves the admissible region or jumps by more than one level"]
    reach = backward_closure(build_async(c.F), lay.admissible)
    if not reach.all():
        r = int(np.flatnonzero(~reach)[0])
        return Verdict("prop2", FAIL, hyp, {}, {"stuck_state": _bits(c.space, r),
                                               "stuck_states": int((~reach).sum())}, notes)
    return Verdict("prop2", PASS, hyp, {"states": int(reach.size)}, notes=notes)


def _block_sums(space, bits):
    comp = np.repeat(np.arange(space.n), space.levels)
    out = np.zeros((bits.shape[0], space.n), dtype=np.int64)
    for i in range(space.n):
        out[:, i] = bits[:, comp == i].sum(axis=1)
    return out


def _compat(c: _Ctx) -> Verdict:
    """Attractors of a compatible conversion are the embedded attractors of ``f``."""
    hyp = is_compatible(c.F, c.f)
    lay = c.lay
    multi = sorted(tuple(sorted(lay.embed[list(a.ranks)].tolist())) for a in c.attractors_f)
    boolean = sorted(tuple(a.ranks) for a in attractors(build_async(c.F)))
    notes = [] if hyp else ["conversion is not compatible with the map"]
    w = {"attractors_f": len(multi), "attractors_F": len(boolean)}
    if multi == boolean:
        return Verdict("compat", PASS, hyp, w, notes=notes)
    extra = [r for r in boolean if r not in multi]
    missing = [r for r in multi if r not in boolean]
    ce = {
        "unmatched_F": [[_bits(c.space, r) for r in a] for a in extra],
        "lost": [[_bits(c.space, r) for r in a] for a in missing],
    }
    return Verdict("compat", FAIL, hyp, w, ce, notes)


# -- edge and cycle transfer -------------------------------------------------


def _lemma1(c: _Ctx) -> Verdict:
    f, space, lay = c.f, c.space, c.lay
    Gfb = c.Gfb()
    img = f.image_coords
    checked = 0
    for r, g in c.Gf().items():
        x = space.unrank(r)
        gb = Gfb[int(lay.embed[r])]
        for (j, i, s), variations in g.variations.items():
            for s1 in variations:
                nb = r + s1 * int(space.weights[j - 1])
                a, b = int(img[r][i - 1]), int(img[nb][i - 1])
                k = x[j - 1] + (s1 + 1) // 2
                for kp in range(min(a, b) + 1, max(a, b) + 1):
                    e = (IndexPair(j, k), IndexPair(i, kp), s)
                    checked += 1
                    if e not in gb.edges:
                        return Verdict("lemma1", FAIL, True, {"edges_checked": checked},
                                       {"state": State(space, x), "edge_f": _fmt_edge((j, i, s)),
                                        "variation": s1, "missing": _fmt_edge(e)})
    return Verdict("lemma1", PASS, True, {"edges_checked": checked})


def _lemma2(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    Gf = c.Gf()
    checked = 0
    for r, gb in c.Gfb().items():
        x = space.unrank(int(lay.psi_star[r]))
        g = Gf[space.rank(x)]
        for a, b, s in gb.edges:
            checked += 1
            if (a.component, b.component, s) not in g.edges:
                return Verdict("lemma2", FAIL, True, {"edges_checked": checked},
                               {"state": State(space, x), "edge_fb": _fmt_edge((a, b, s))})
    return Verdict("lemma2", PASS, True, {"edges_checked": checked})


def _psi_rank(lay, y):
    return int(lay.embed[lay.psi_star[y]])


def _lemma3(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    bspace = space.boolean_space
    Gfb, GF = c.Gfb(), c.GF()
    hyp = c.is_psi_extension()
    bits = bspace.coords
    checked = 0
    offsets = space.offsets
    rows = bits.tolist()
    for y, gy in GF.items():
        xr = _psi_rank(lay, y)
        for (jk, ih, s) in Gfb[xr].edges:
            base = offsets[jk.component - 1] - 1
            target = rows[xr][base + jk.level]
            for t in range(1, space.levels[jk.component - 1] + 1):
                if rows[y][base + t] != target:
                    continue
                jt = IndexPair(jk.component, t)
                checked += 1
                if (jt, ih, s) not in gy.edges:
                    return Verdict("lemma3", FAIL, hyp, {"edges_checked": checked},
                                   {"state": _bits(space, y), "edge_fb": _fmt_edge((jk, ih, s)),
                                    "missing": _fmt_edge((jt, ih, s))})
    return Verdict("lemma3", PASS, hyp, {"edges_checked": checked},
                   notes=[] if hyp else ["conversion is not the psi-extension"])


def _lemma4(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    Gfb = c.Gfb()
    hyp = c.is_psi_extension()
    checked = 0
    for y, gy in c.GF().items():
        gb = Gfb[_psi_rank(lay, y)]
        ends = {(a.component, b, s) for a, b, s in gb.edges}
        for a, b, s in gy.edges:
            checked += 1
            if (a.component, b, s) not in ends:
                return Verdict("lemma4", FAIL, hyp, {"edges_checked": checked},
                               {"state": _bits(space, y), "edge_F": _fmt_edge((a, b, s))})
    return Verdict("lemma4", PASS, hyp, {"edges_checked": checked},
                   notes=[] if hyp else ["conversion is not the psi-extension"])


def _fibers(lay):
    out: dict = {}
    for y, x in enumerate(lay.psi_star.tolist()):
        out.setdefault(x, []).append(y)
    return out


def _thm1(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    hyp = c.is_psi_extension()
    fibers = _fibers(lay)
    transferred = 0
    sF = c.signs_F
    for r, sf in c.signs_f.items():
        for s in sorted(sf):
            hit = next((y for y in fibers[r] if s in sF[y]), None)
            if hit is None:
                return Verdict("thm1", FAIL, hyp, {"transfers": transferred},
                               {"state": State(space, space.unrank(r)), "sign": s, "part": "local"})
            transferred += 1
    sf, sF = _signs(global_graph(c.f)), _signs(global_graph(c.F))
    if not sf <= sF:
        return Verdict("thm1", FAIL, hyp, {"transfers": transferred},
                       {"part": "global", "signs_f": sorted(sf), "signs_F": sorted(sF)})
    return Verdict("thm1", PASS, hyp, {"transfers": transferred, "global_signs": sorted(sf)},
                   notes=[] if hyp else ["conversion is not the psi-extension"])


def _thm2(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    hyp = c.is_psi_extension()
    cycles = negatives = 0
    signs_f = c.signs_f
    for y, sF in c.signs_F.items():
        if not sF:
            continue
        x = int(lay.psi_star[y])
        sf = signs_f[x]
        cycles += 1
        ce = None
        if not sf:
            ce = {"state": _bits(space, y), "part": "local", "missing": "cycle"}
        elif -1 in sF:
            negatives += 1
            if -1 not in sf:
                ce = {"state": _bits(space, y), "part": "local", "missing": "negative cycle"}
        if ce:
            return Verdict("thm2", FAIL, hyp, {"cycle_states": cycles}, ce)
    gsF, gsf = _signs(global_graph(c.F)), _signs(global_graph(c.f))
    if (gsF and not gsf) or (-1 in gsF and -1 not in gsf):
        return Verdict("thm2", FAIL, hyp, {"cycle_states": cycles},
                       {"part": "global", "signs_f": sorted(gsf), "signs_F": sorted(gsF)})
    notes = [] if hyp else ["conversion is not the psi-extension"]
    if negatives == 0:
        notes.append("no local negative cycle in the conversion")
    return Verdict("thm2", PASS, hyp,
                   {"cycle_states": cycles, "negative_transfers": negatives}, notes=notes)


# -- mirror pairs --------------------------------------------------------------


def _lemma5(c: _Ctx) -> Verdict:
    lay = c.lay
    multi = {(int(lay.embed[a]), int(lay.embed[b])) for a, b in mirror_pair_ranks(c.f)}
    multi = {tuple(sorted(p)) for p in multi}
    part = set(mirror_pair_ranks(c.fb))
    adm = lay.admissible
    total = {(a, b) for a, b in c.mirror_pairs_F if adm[a] and adm[b]}
    w = {"mirror_pairs": len(multi)}
    if multi != part:
        diff = sorted(multi ^ part)[0]
        return Verdict("lemma5", FAIL, True, w,
                       {"pair": [_bits(c.space, diff[0]), _bits(c.space, diff[1])],
                        "in_f": diff in multi})
    if not part <= total:
        diff = sorted(part - total)[0]
        return Verdict("lemma5", FAIL, True, w,
                       {"pair": [_bits(c.space, diff[0]), _bits(c.space, diff[1])],
                        "part": "total conversion"})
    return Verdict("lemma5", PASS, True, w)


def _thm3(c: _Ctx) -> Verdict:
    """Boolean two-cycle statement on the conversion itself."""
    pairs = c.mirror_pairs_F
    if not pairs:
        return Verdict("thm3", VACUOUS, True, {"mirror_pairs": 0})
    cyc = {r for r, sg in c.signs_F.items() if sg}
    hit = next(((a, b) for a, b in pairs if a in cyc and b in cyc), None)
    w = {"mirror_pairs": len(pairs), "cycle_states": len(cyc)}
    if hit is None:
        return Verdict("thm3", FAIL, True, w, {"cycle_states": [_bits(c.space, r) for r in sorted(cyc)]})
    w["witness_pair"] = [_bits(c.space, hit[0]), _bits(c.space, hit[1])]
    return Verdict("thm3", PASS, True, w)


def _thm4(c: _Ctx) -> Verdict:
    return check_mirror_theorem(c.f, conjecture=True)


# -- non-usual graphs and the partial conversion -----------------------------------


def _lemma6(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    Gfb = c.Gfb()
    checked = 0
    for x, y, g, _ in c.nonusual:
        gb = Gfb[int(lay.embed[space.rank(x)])]
        for j, i, s in g.edges:
            ej = 1 if y[j - 1] > x[j - 1] else -1
            ei = 1 if y[i - 1] > x[i - 1] else -1
            e = (IndexPair(j, x[j - 1] + (ej + 1) // 2), IndexPair(i, x[i - 1] + (ei + 1) // 2), s)
            checked += 1
            if e not in gb.edges:
                return Verdict("lemma6", FAIL, True, {"edges_checked": checked},
                               {"x": State(space, x), "y": State(space, y), "missing": _fmt_edge(e)})
    return Verdict("lemma6", PASS, True, {"edges_checked": checked})


def _prop3(c: _Ctx) -> Verdict:
    space, lay = c.space, c.lay
    signs_fb = c.signs_fb
    checked = 0
    for x, y, _, s in c.nonusual:
        if not s:
            continue
        checked += 1
        sb = signs_fb[int(lay.embed[space.rank(x)])]
        if not s <= sb:
            return Verdict("prop3", FAIL, True, {"cyclic_graphs": checked},
                           {"x": State(space, x), "y": State(space, y), "signs": sorted(s), "signs_fb": sorted(sb)})
    if checked == 0:
        return Verdict("prop3", VACUOUS, True, {"cyclic_graphs": 0})
    return Verdict("prop3", PASS, True, {"cyclic_graphs": checked})


def _thm5(c: _Ctx) -> Verdict:
    if any(s for _, _, _, s in c.nonusual):
        return Verdict("thm5", VACUOUS, True, {"nonusual_cycles": True})
    fp = fixed_points(c.f)
    w = {"fixed_points": len(fp)}
    if len(fp) != 1:
        return Verdict("thm5", FAIL, True, w, {"fixed_points": [State(c.space, x) for x in fp]})
    w["fixed_point"] = State(c.space, fp[0])
    return Verdict("thm5", PASS, True, w)


def _thm6(c: _Ctx) -> Verdict:
    n_att = len(c.attractors_f)
    if n_att < 2:
        return Verdict("thm6", VACUOUS, True, {"attractors": n_att})
    for x, y, _, s in c.nonusual:
        if 1 in s:
            return Verdict("thm6", PASS, True, {"attractors": n_att, "x": State(c.space, x), "y": State(c.space, y)})
    return Verdict("thm6", FAIL, True, {"attractors": n_att}, {"positive_nonusual_cycle": False})


def _thm7(c: _Ctx) -> Verdict:
    cyclic = [r for r, s in c.signs_fb.items() if s]
    if cyclic:
        return Verdict("thm7", VACUOUS, True, {"cycle_states": len(cyclic)})
    fp = fixed_points(c.fb)
    w = {"fixed_points": len(fp)}
    if len(fp) != 1:
        return Verdict("thm7", FAIL, True, w, {"fixed_points": fp})
    return Verdict("thm7", PASS, True, {**w, "fixed_point": fp[0]})


def _thm8(c: _Ctx) -> Verdict:
    n_att = len(c.attractors_f)
    if n_att < 2:
        return Verdict("thm8", VACUOUS, True, {"attractors": n_att})
    for r, s in c.signs_fb.items():
        if 1 in s:
            return Verdict("thm8", PASS, True, {"attractors": n_att, "state": _bits(c.space, r)})
    return Verdict("thm8", FAIL, True, {"attractors": n_att}, {"positive_cycle": False})


def _cyclic_attractors(c):
    return [a for a in c.attractors_f if len(a) > 1]


def _thm9(c: _Ctx) -> Verdict:
    cyc = _cyclic_attractors(c)
    if not cyc:
        return Verdict("thm9", VACUOUS, True, {"cyclic_attractors": 0})
    for a in cyc:
        g = richard_graph_union(c.f, a.states)
        if not has_cycle(g, -1):
            return Verdict("thm9", FAIL, True, {"cyclic_attractors": len(cyc)},
                           {"attractor": [State(c.space, x) for x in a.states], "graph": str(g)})
    return Verdict("thm9", PASS, True, {"cyclic_attractors": len(cyc)})


def _lemma7(c: _Ctx) -> Verdict:
    n_edges = 0
    for x in c.space.states():
        g = richard_graph(c.f, x)
        n_edges += len(g)
        if not g.is_subgraph_of(local_graph(c.f, x)):
            extra = sorted(g.edges - local_graph(c.f, x).edges, key=str)
            return Verdict("lemma7", FAIL, True, {}, {"state": State(c.space, x), "extra_edge": _fmt_edge(extra[0])})
    return Verdict("lemma7", PASS, True, {"edges_checked": n_edges})


def _thm10(c: _Ctx) -> Verdict:
    cyc = _cyclic_attractors(c)
    if not cyc:
        return Verdict("thm10", VACUOUS, True, {"cyclic_attractors": 0})
    Gfb = c.Gfb()
    lay = c.lay
    for a in cyc:
        g = union_graphs([Gfb[int(lay.embed[r])] for r in a.ranks], vertices=c.fb.labels)
        if not has_cycle(g, -1):
            return Verdict("thm10", FAIL, True, {"cyclic_attractors": len(cyc)},
                           {"attractor": [State(c.space, x) for x in a.states], "graph": str(g)})
    return Verdict("thm10", PASS, True, {"cyclic_attractors": len(cyc)})


_CHECKERS = {
    "prop1": _prop1,
    "prop2": _prop2,
    "compat": _compat,
    "lemma1": _lemma1,
    "lemma2": _lemma2,
    "lemma3": _lemma3,
    "lemma4": _lemma4,
    "thm1": _thm1,
    "thm2": _thm2,
    "thm3": _thm3,
    "lemma5": _lemma5,
    "thm4": _thm4,
    "lemma6": _lemma6,
    "prop3": _prop3,
    "thm5": _thm5,
    "thm6": _thm6,
    "thm7": _thm7,
    "thm8": _thm8,
    "thm9": _thm9,
    "lemma7": _lemma7,
    "thm10": _thm10,
}

STATEMENTS = tuple(_CHECKERS)

# statements whose default conversion is built from the stepwise version
_STEPWISE_DEFAULT = {"compat"}


def _instance(instance):
    if isinstance(instance, str):
        instance = example(instance)
    if isinstance(instance, RegistryExample):
        return instance.map
    if isinstance(instance, MultivaluedMap):
        return instance
    raise TypeError(f"expected an example id, RegistryExample or MultivaluedMap, got {type(instance).__name__}")


def _context(statement, f, conversion, cache=None) -> _Ctx:
    if statement in _STEPWISE_DEFAULT:
        f = stepwise(f)
    key = (statement in _STEPWISE_DEFAULT, conversion is None)
    if cache is not None and key in cache:
        return cache[key]
    F = extend_via_psi(f) if conversion is None else conversion
    F.source.check_same(f.space)
    ctx = _Ctx(f, F)
    if cache is not None:
        cache[key] = ctx
    return ctx


def _checker(statement):
    try:
        return _CHECKERS[statement]
    except KeyError:
        raise UnknownStatement(f"unknown statement {statement!r}; known: {', '.join(STATEMENTS)}") from None


def _prepare(instance):
    f = _instance(instance)
    if f.space.boolean_dim > MAX_BOOLEAN_DIM:
        raise BudgetExceeded(f"Boolean dimension {f.space.boolean_dim} exceeds {MAX_BOOLEAN_DIM}")
    return f


def verify_statement(statement: str, instance, conversion: BooleanConversion | None = None) -> Verdict:
    """Check one statement on a map (or registry example).

    ``conversion`` replaces the default Boolean conversion, which is the
    psi-extension of the map (of its stepwise version for ``compat``).
    """
    checker = _checker(statement)
    f = _prepare(instance)
    return checker(_context(statement, f, conversion))


def verify_all(instance, conversion=None, statements=STATEMENTS) -> list:
    """Verdicts for several statements, sharing the graphs computed on the way."""
    f = _prepare(instance)
    cache: dict = {}
    return [_checker(s)(_context(s, f, conversion, cache)) for s in statements]


def random_map(seed: int, max_n: int = 3, max_level: int = 3) -> MultivaluedMap:
    """Uniformly random map on a random space with ``n <= max_n``, ``m_i <= max_level``."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_n + 1))
    levels = tuple(int(v) for v in rng.integers(1, max_level + 1, size=n))
    space = MultiSpace(levels)
    table = rng.integers(0, space.size, size=space.size)
    return MultivaluedMap(space, table)


# -- headline counterexample ---------------------------------------------------


@dataclass
class CounterexampleReport:
    fixed_points: int
    attractors: list  # member lists of the conversion's attractors
    outer_cycle_image: list
    negative_local_cycles: int
    global_edges: frozenset
    binarised_attractor_sizes: list
    binarised_attractor_is_cycle: bool
    extra: dict = field(default_factory=dict)

    @property
    def attractor_matches_outer_cycle(self):
        return len(self.attractors) == 1 and sorted(self.attractors[0]) == sorted(self.outer_cycle_image)

    def records(self) -> list:
        from .verdicts import _fmt

        neg = sum(1 for _, _, s in self.global_edges if s < 0)
        return [
            "instance=richard_stepwise",
            f"fixed_points={self.fixed_points}",
            f"attractors={len(self.attractors)}",
            *(f"attractor.{k}={_fmt(sorted(a))}" for k, a in enumerate(self.attractors)),
            f"attractor_size={','.join(str(len(a)) for a in self.attractors)}",
            f"attractor_is_outer_cycle={_fmt(self.attractor_matches_outer_cycle)}",
            f"negative_local_cycles={self.negative_local_cycles}",
            f"global_edges={len(self.global_edges)}",
            f"global_negative_edges={neg}",
            f"binarised_attractors={len(self.binarised_attractor_sizes)}",
            f"binarised_attractor_size={','.join(map(str, self.binarised_attractor_sizes))}",
            f"binarised_attractor_is_cycle={_fmt(self.binarised_attractor_is_cycle)}",
        ]


def is_single_cycle(ad, members) -> bool:
    """True when every member has exactly one successor inside ``members``."""
    ms = set(members)
    return all(
        sum(1 for t in ad.successor_ranks(r).tolist() if t in ms) == 1 for r in ms
    )


def counterexample_report() -> CounterexampleReport:
    ex = example("richard_stepwise")
    f = ex.map
    F = extend_via_psi(f)
    ad = build_async(F)
    atts = attractors(ad)
    lay = layout(f.space)
    outer = [_bits(f.space, int(lay.embed[f.space.rank(x)])) for x in RICHARD_OUTER_CYCLE]
    neg = scan_local_cycles(F, "negative")
    B = binarise(asymptotic(f))
    adB = build_async(B)
    attB = attractors(adB)
    return CounterexampleReport(
        fixed_points=len(fixed_points(F)),
        attractors=[a.states for a in atts],
        outer_cycle_image=outer,
        negative_local_cycles=len(neg),
        global_edges=global_graph(F).edges,
        binarised_attractor_sizes=[len(a) for a in attB],
        binarised_attractor_is_cycle=all(is_single_cycle(adB, a.ranks) for a in attB),
    )


# -- registry facts ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _target(ex_id: str, name: str):
    ex = example(ex_id)
    f = ex.map
    return {
        "f": lambda: f,
        "stepwise": lambda: stepwise(f),
        "partial": lambda: partial_conversion(f),
        "psi": lambda: extend_via_psi(f),
        "stepwise_psi": lambda: extend_via_psi(stepwise(f)),
        "explicit": lambda: ex.conversion,
        "binarise": lambda: binarise(f),
        "binarise_asymptotic": lambda: binarise(asymptotic(f)),
    }[name]()


def _evaluate(ex: RegistryExample, fact):
    t = _target(ex.id, fact.target)
    p = fact.params
    k = fact.kind
    if k == "map":
        return tuple(t(p[0]))
    if k == "psi":
        return psi(ex.space, p[0])
    if k == "stepwise":
        return t.is_stepwise()
    if k == "asymptotic":
        return t.is_asymptotic()
    if k in ("global_graph", "global_contains"):
        return set(global_graph(t).edges)
    if k == "global_cycles":
        return len(enumerate_cycles(global_graph(t), p[0]))
    if k in ("local_graph", "local_contains"):
        return set(local_graph(t, p[0]).edges)
    if k == "local_cycle":
        return any(set(c.vertices) == set(fact.expected) for c in enumerate_cycles(local_graph(t, p[0])))
    if k == "local_cycle_signs":
        return tuple(sorted(c.sign for c in enumerate_cycles(local_graph(t, p[0]))))
    if k in ("nonusual_contains", "nonusual_excludes"):
        return set(nonusual_graph(t, p[0], p[1]).edges)
    if k == "nonusual_acyclic":
        return not any(g.edges and has_cycle(g) for _, _, g in nonusual_graphs(t))
    if k == "multivariable_positive_local_cycles":
        return sum(1 for _, c in scan_local_cycles(t, "positive") if len(c) > 1)
    if k == "async_edges":
        return set(build_async(t).edges())
    if k == "attractors":
        return [a.states for a in attractors(build_async(t))]
    if k == "attractor_sizes":
        return [len(a) for a in attractors(build_async(t))]
    if k == "reaches":
        return reaches(build_async(t), p[0], [p[1]])
    if k == "local_cycles_exist":
        return bool(scan_local_cycles(t, p[0]))
    if k == "local_cycle_count":
        return len(scan_local_cycles(t, p[0]))
    if k == "local_cycle_count_at":
        return sum(len(enumerate_cycles(local_graph(t, x))) for x in p)
    if k == "fixed_points":
        return sorted(fixed_points(t))
    if k == "compatible":
        return is_compatible(t, ex.map)
    raise ValueError(f"unknown fact kind {k!r}")


def _holds(fact, actual) -> bool:
    k, exp = fact.kind, fact.expected
    if k.endswith("_contains"):
        return set(exp) <= actual
    if k == "nonusual_excludes":
        return not (set(exp) & actual)
    if k == "local_cycle":
        return actual is True
    if k in ("global_graph", "local_graph", "async_edges"):
        return actual == set(exp)
    if k == "attractors":
        return [sorted(a) for a in actual] == [sorted(a) for a in exp]
    if k == "fixed_points":
        return actual == sorted(exp)
    return actual == exp


@dataclass(frozen=True)
class FactResult:
    example: str
    fact: object
    ok: bool
    actual: object


def check_facts(ex) -> list:
    """Re-derive every expected fact of a registry example from its raw tables."""
    if isinstance(ex, str):
        ex = example(ex)
    out = []
    for fact in ex.facts:
        actual = _evaluate(ex, fact)
        out.append(FactResult(ex.id, fact, _holds(fact, actual), actual))
    return out
