"""Multivalued asynchronous networks and their Boolean conversions."""
from ._kernels import BACKEND
from .checks import STATEMENTS, check_facts, counterexample_report, random_map, verify_statement
from .conversion import (
    BooleanConversion,
    Domain,
    admissible_states,
    binarise,
    commutes,
    embed,
    extend_via_psi,
    is_admissible,
    is_compatible,
    partial_conversion,
    project,
    psi,
    psi_star,
)
from .core import IndexPair, MultiSpace, MultivaluedMap, asymptotic, component_step, stepwise
from .dot import export_dot
from .dynamics import (
    AsyncDynamics,
    Attractor,
    attractors,
    build_async,
    build_async_admissible,
    fixed_points,
    is_trap_set,
    reaches,
)
from .errors import *  # noqa: F401,F403
from .examples import RegistryExample, example, example_ids
from .interaction import (
    SignedCycle,
    SignedDigraph,
    enumerate_cycles,
    global_graph,
    has_cycle,
    local_graph,
    nonusual_graph,
    richard_graph,
    richard_graph_union,
    scan_local_cycles,
)
from .mirror import check_mirror_theorem, difference_set, find_mirror_pairs, is_mirror_pair
from .netfile import NetworkDocument, load_map, loads, parse, render
from .verdicts import Verdict

__version__ = "0.1.0"
