"""Registry of worked example networks and their expected facts.

Each entry carries a map transcribed as a Python table, an optional
explicit Boolean conversion, a text document with the same network (parsed
independently), and a list of :class:`Fact` records.  A fact names where it
was read from (``anchor``) so that a transcription error can be traced to a
single row or graph of the source.  Facts hold expected values only; they
are re-derived from the raw tables by :func:`mvbool.checks.check_facts`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .conversion import BooleanConversion
from .core import IndexPair as P
from .core import MultiSpace, MultivaluedMap
from .errors import UnknownExample


@dataclass(frozen=True)
class Fact:
    anchor: str
    kind: str
    target: str = "f"
    params: tuple = ()
    expected: object = None


@dataclass(frozen=True)
class RegistryExample:
    id: str
    description: str
    map: MultivaluedMap
    conversion: BooleanConversion | None = None
    facts: tuple = field(default=(), repr=False)

    @property
    def space(self):
        return self.map.space

    @property
    def document(self) -> str:
        return resources.files("mvbool").joinpath(f"data/examples/{self.id}.net").read_text()


def _table(levels, rows, default=None):
    space = MultiSpace(levels)
    return MultivaluedMap.from_mapping(space, rows, default=default)


def _bits(s):
    return tuple(int(c) for c in s)


# -- sec2_example ------------------------------------------------------------

_sec2 = _table((2, 2), {(0, 1): (2, 2), (0, 2): (2, 2)}, default=(1, 2))
_sec2_facts = (
    Fact("background example", "map", params=((0, 1),), expected=(2, 2)),
    Fact("background example", "map", params=((1, 1),), expected=(1, 2)),
    Fact("background example, stepwise", "map", "stepwise", ((0, 1),), (1, 2)),
    Fact("background example, stepwise", "map", "stepwise", ((0, 0),), (1, 1)),
    Fact("background example, stepwise", "map", "stepwise", ((1, 0),), (1, 1)),
    Fact("background example, stepwise", "map", "stepwise", ((2, 0),), (1, 1)),
    Fact("background example: negative loop 1->1", "global_contains", expected={(1, 1, -1)}),
    Fact("background example: positive edge 2->1", "global_contains", expected={(2, 1, 1)}),
    Fact("background example: stepwise graph is a positive loop on 2",
         "global_graph", "stepwise", expected={(2, 2, 1)}),
)

# -- fig1 ---------------------------------------------------------------------

_fig1 = _table(
    (2, 1),
    {
        (0, 0): (1, 0),
        (0, 1): (1, 0),
        (1, 0): (1, 1),
        (1, 1): (2, 1),
        (2, 0): (1, 1),
        (2, 1): (2, 1),
    },
)
_fig1_F = BooleanConversion.from_mapping(
    _fig1.space,
    {
        _bits(a): _bits(b)
        for a, b in [
            ("000", "100"),
            ("001", "100"),
            ("010", "100"),
            ("011", "100"),
            ("100", "101"),
            ("101", "111"),
            ("110", "101"),
            ("111", "111"),
        ]
    },
)
_fig1_facts = (
    Fact("fig1a row '1 1 | 2 1'", "map", params=((1, 1),), expected=(2, 1)),
    Fact("fig1a row '1 0 | 1 1'", "map", params=((1, 0),), expected=(1, 1)),
    Fact("fig1a graph", "global_graph", expected={(1, 1, 1), (1, 2, 1), (2, 1, 1)}),
    Fact("fig1b row '0 0 0 | 1 0 0'", "map", "partial", (_bits("000"),), _bits("100")),
    Fact("fig1b row '1 1 1 | 1 1 1'", "map", "partial", (_bits("111"),), _bits("111")),
    Fact("fig1b caption: compatible conversion", "compatible", "explicit", expected=True),
    Fact("fig1b graph", "global_graph", "explicit",
         expected={(P(1, 1), P(2, 1), 1), (P(1, 1), P(1, 2), 1), (P(2, 1), P(1, 2), 1)}),
    Fact("fig1b caption: no cycle", "global_cycles", "explicit", ("any",), 0),
    Fact("psi-extension of fig1a", "map", "psi", (_bits("010"),), _bits("101")),
    Fact("psi-extension of fig1a", "map", "psi", (_bits("011"),), _bits("111")),
    Fact("psi-extension: loop (1,2)->(1,2)", "local_contains", "psi",
         (_bits("001"),), {(P(1, 2), P(1, 2), 1)}),
    Fact("psi-extension: loop (1,2)->(1,2)", "local_contains", "psi",
         (_bits("011"),), {(P(1, 2), P(1, 2), 1)}),
    Fact("psi-extension: cycle (1,2)->(2,1)->(1,2)", "local_cycle", "psi",
         (_bits("010"),), (P(1, 2), P(2, 1))),
    Fact("psi-extension: cycle (1,2)->(2,1)->(1,2)", "local_cycle", "psi",
         (_bits("011"),), (P(1, 2), P(2, 1))),
    Fact("local graph at (1,0)", "local_graph", params=((1, 0),), expected={(1, 2, 1), (2, 1, 1)}),
    Fact("non-usual graph at (1,0) towards (0,1)", "nonusual_contains",
         params=((1, 0), (0, 1)), expected={(1, 2, 1)}),
    Fact("non-usual graph at (1,0) towards (0,1)", "nonusual_excludes",
         params=((1, 0), (0, 1)), expected={(2, 1, 1), (2, 1, -1)}),
    Fact("non-usual graphs have no cycle", "nonusual_acyclic", expected=True),
)

# -- ex1_pos_not_preserved ------------------------------------------------------

_ex1 = _table(
    (1, 2, 1),
    {
        (0, 2, 0): (0, 1, 0),
        (1, 2, 0): (0, 1, 0),
        (0, 2, 1): (1, 1, 0),
        (1, 1, 0): (1, 1, 0),
        (1, 0, 0): (1, 1, 1),
        (1, 0, 1): (1, 1, 1),
        (1, 1, 1): (1, 2, 0),
        (1, 2, 1): (1, 2, 0),
    },
    default=(1, 0, 0),
)
_ex1_facts = (
    Fact("positive-cycle example: G_f(1,1,0)", "local_graph", params=((1, 1, 0),),
         expected={(1, 2, 1), (2, 1, -1), (2, 3, -1), (3, 2, 1)}),
    Fact("positive-cycle example: no positive local cycle through two or more variables",
         "multivariable_positive_local_cycles", expected=0),
    Fact("positive-cycle example: G_F(1,1,0,0)", "local_graph", "psi", (_bits("1100"),),
         {(P(1, 1), P(2, 1), 1), (P(2, 1), P(3, 1), -1), (P(3, 1), P(2, 2), 1),
          (P(2, 2), P(1, 1), -1)}),
    Fact("positive-cycle example: G_F(1,0,1,0)", "local_graph", "psi", (_bits("1010"),),
         {(P(1, 1), P(2, 1), 1), (P(2, 1), P(1, 1), -1), (P(3, 1), P(2, 2), 1),
          (P(2, 2), P(3, 1), -1)}),
    Fact("positive-cycle example: one positive 4-cycle at 1100", "local_cycle_signs", "psi",
         (_bits("1100"),), (1,)),
    Fact("positive-cycle example: two negative cycles at 1010", "local_cycle_signs", "psi",
         (_bits("1010"),), (-1, -1)),
)

# -- ex2_not_stepwise -----------------------------------------------------------

_ex2 = _table((2, 2), {(1, 1): (1, 2), (1, 2): (2, 0), (2, 2): (0, 2)}, default=(0, 0))
_ex2_facts = (
    Fact("non-stepwise example: dynamics of f", "async_edges", expected={
        ((0, 2), (0, 1)), ((0, 1), (0, 0)), ((1, 2), (1, 1)), ((1, 2), (2, 2)),
        ((2, 2), (1, 2)), ((1, 1), (1, 2)), ((2, 1), (1, 1)), ((2, 1), (2, 0)),
        ((2, 0), (1, 0)), ((1, 0), (0, 0)),
    }),
    Fact("non-stepwise example: two attractors", "attractors",
         expected=[[(0, 0)], [(1, 1), (1, 2), (2, 2)]]),
    Fact("non-stepwise example: only the fixed point remains", "attractors", "psi",
         expected=[[_bits("0000")]]),
    Fact("non-stepwise example: path 1111 -> 0000", "reaches", "psi",
         (_bits("1111"), _bits("0000")), True),
    Fact("non-stepwise example: a local positive cycle of F", "local_cycles_exist", "psi",
         ("positive",), True),
)

# -- richard_stepwise -----------------------------------------------------------

_richard = _table(
    (3, 3),
    {
        (0, 0): (0, 1), (0, 1): (0, 2), (0, 2): (0, 3), (0, 3): (1, 3),
        (1, 0): (0, 0), (1, 1): (0, 0), (1, 2): (0, 3), (1, 3): (2, 3),
        (2, 0): (1, 0), (2, 1): (3, 0), (2, 2): (3, 3), (2, 3): (3, 3),
        (3, 0): (2, 0), (3, 1): (3, 0), (3, 2): (3, 1), (3, 3): (3, 2),
    },
)
_richard_outer = [
    (0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3),
    (3, 3), (3, 2), (3, 1), (3, 0), (2, 0), (1, 0),
]
_A = {(1, 1, 1), (1, 2, -1), (2, 2, 1)}
_B = {(1, 1, 1), (2, 1, 1), (2, 2, 1)}
_C = {(1, 1, 1), (1, 2, -1)}
_D = {(2, 1, 1), (2, 2, 1)}
_E = {(1, 2, -1), (2, 2, 1)}
_G = {(1, 1, 1), (2, 1, 1)}
_richard_local = {
    (1, 1): _A, (2, 2): _A, (1, 2): _B, (2, 1): _B, (1, 0): _C, (2, 3): _C,
    (0, 2): _D, (3, 1): _D, (0, 0): _E, (0, 1): _E, (3, 2): _E, (3, 3): _E,
    (0, 3): _G, (1, 3): _G, (2, 0): _G, (3, 0): _G,
}
_block1 = [P(1, 1), P(1, 2), P(1, 3)]
_block2 = [P(2, 1), P(2, 2), P(2, 3)]
# solid within each block (loops included), dashed from block 1 to block 2,
# solid from block 2 to block 1
_richard_F_global = (
    {(a, b, 1) for a in _block1 for b in _block1}
    | {(a, b, 1) for a in _block2 for b in _block2}
    | {(a, b, -1) for a in _block1 for b in _block2}
    | {(b, a, 1) for a in _block1 for b in _block2}
)
_richard_facts = (
    Fact("cyclic-attractor grid: 00 goes up", "map", params=((0, 0),), expected=(0, 1)),
    Fact("cyclic-attractor grid: 11 goes left and down", "map", params=((1, 1),), expected=(0, 0)),
    Fact("cyclic-attractor grid: 22 goes right and up", "map", params=((2, 2),), expected=(3, 3)),
    Fact("cyclic-attractor grid: 33 goes down", "map", params=((3, 3),), expected=(3, 2)),
    Fact("cyclic-attractor grid is stepwise", "stepwise", expected=True),
    *(
        Fact(f"local graphs of f, row with G_f{x}", "local_graph", params=(x,), expected=edges)
        for x, edges in _richard_local.items()
    ),
    Fact("cyclic-attractor grid: one cyclic attractor", "attractors",
         expected=[sorted(_richard_outer)]),
    Fact("conversion: psi(010101)", "psi", params=(_bits("010101"),), expected=_bits("100110")),
    Fact("conversion: F(010101)", "map", "psi", (_bits("010101"),), _bits("000111")),
    Fact("conversion: no fixed points", "fixed_points", "psi", expected=[]),
    Fact("conversion: attractor is the image of the outer cycle", "attractors", "psi",
         expected=[sorted(_bits(s) for s in [
             "000000", "000100", "000110", "000111", "100111", "110111",
             "111111", "111110", "111100", "111000", "110000", "100000"])]),
    Fact("conversion: no local negative cycles", "local_cycle_count", "psi", ("negative",), 0),
    Fact("conversion: global graph, negative edges dashed", "global_graph", "psi",
         expected=_richard_F_global),
    Fact("binarisation of the asymptotic version: one attractor of 28 states",
         "attractor_sizes", "binarise_asymptotic", expected=[28]),
)

# -- two_minus_x ----------------------------------------------------------------

_tmx = MultivaluedMap.from_function(MultiSpace((2,)), lambda x: (2 - x[0],))
_tmx_facts = (
    Fact("f(x) = 2 - x", "map", params=((1,),), expected=(1,)),
    Fact("dynamics of 2 - x", "async_edges", expected={((0,), (1,)), ((2,), (1,))}),
    Fact("conversion of the stepwise version", "async_edges", "stepwise_psi", expected={
        (_bits("00"), _bits("10")), (_bits("01"), _bits("11")),
        (_bits("01"), _bits("00")), (_bits("11"), _bits("10")),
    }),
    Fact("conversion of the stepwise version: one fixed point", "fixed_points", "stepwise_psi",
         expected=[_bits("10")]),
    Fact("binarisation", "async_edges", "binarise", expected={
        (_bits("00"), _bits("10")), (_bits("00"), _bits("01")),
        (_bits("11"), _bits("10")), (_bits("11"), _bits("01")),
    }),
    Fact("binarisation: two symmetric fixed points", "fixed_points", "binarise",
         expected=[_bits("01"), _bits("10")]),
    Fact("f is asymptotic", "asymptotic", expected=True),
)

# -- fig5_asymptotic --------------------------------------------------------------

_fig5 = _table(
    (2, 1),
    {
        (0, 0): (0, 1),
        (0, 1): (2, 1),
        (1, 0): (0, 1),
        (1, 1): (1, 1),
        (2, 0): (0, 0),
        (2, 1): (0, 0),
    },
)
_fig5_facts = (
    Fact("fig5a caption: asymptotic map", "asymptotic", expected=True),
    Fact("fig5b: G_f(1,0)", "local_graph", params=((1, 0),), expected={(1, 2, -1), (2, 1, 1)}),
    Fact("fig5c: binarisation at 010", "local_graph", "binarise", (_bits("010"),),
         {(P(1, 1), P(2, 1), -1), (P(2, 1), P(1, 2), 1)}),
    Fact("fig5d: binarisation at 100", "local_graph", "binarise", (_bits("100"),),
         {(P(2, 1), P(1, 1), 1), (P(1, 2), P(2, 1), -1)}),
    Fact("fig5e: conversion at 010", "local_graph", "psi", (_bits("010"),),
         {(P(1, 1), P(2, 1), -1), (P(2, 1), P(1, 1), 1)}),
    Fact("fig5f: conversion at 100", "local_graph", "psi", (_bits("100"),),
         {(P(2, 1), P(1, 1), 1), (P(1, 2), P(2, 1), -1)}),
    Fact("fig5c/d: no cycle in the binarisation", "local_cycle_count_at", "binarise",
         (_bits("010"), _bits("100")), 0),
    Fact("fig5e: cycle in the conversion at 010", "local_cycle_count_at", "psi",
         (_bits("010"),), 1),
)


REGISTRY = {
    ex.id: ex
    for ex in [
        RegistryExample("sec2_example", "maps with the same dynamics and different graphs",
                     _sec2, facts=_sec2_facts),
        RegistryExample("fig1", "compatible conversion that loses a local cycle",
                     _fig1, _fig1_F, facts=_fig1_facts),
        RegistryExample("ex1_pos_not_preserved", "positive cycle of F from two negative cycles",
                     _ex1, facts=_ex1_facts),
        RegistryExample("ex2_not_stepwise", "non-stepwise map whose conversion loses an attractor",
                     _ex2, facts=_ex2_facts),
        RegistryExample("richard_stepwise", "cyclic attractor without local negative cycles",
                     _richard, facts=_richard_facts),
        RegistryExample("two_minus_x", "f(x) = 2 - x on {0,1,2}", _tmx, facts=_tmx_facts),
        RegistryExample("fig5_asymptotic", "asymptotic map where binarisation loses a cycle",
                     _fig5, facts=_fig5_facts),
    ]
}

RICHARD_OUTER_CYCLE = tuple(_richard_outer)


def example(id: str) -> RegistryExample:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownExample(f"unknown example {id!r}; known: {', '.join(REGISTRY)}") from None


def example_ids() -> list:
    return list(REGISTRY)
