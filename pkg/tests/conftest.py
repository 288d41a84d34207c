"""Shared test oracles.

Every oracle here is written directly from the definitions with plain loops
over states, independently of the vectorised kernels in the package.
"""
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from mvbool.core import IndexPair, MultiSpace, MultivaluedMap

# exhaustive examples vary a lot in size; wall-clock deadlines only add flakiness
settings.register_profile("mvbool", deadline=None)
settings.load_profile("mvbool")

TRAP_ORACLE_CAP = 12


def sgn(a):
    return (a > 0) - (a < 0)


@st.composite
def maps(draw, max_n=3, max_level=3, max_dim=None):
    """Random total map on a random small space."""
    levels = tuple(draw(st.lists(st.integers(1, max_level), min_size=1, max_size=max_n)))
    if max_dim is not None and sum(levels) > max_dim:
        levels = levels[:1]
    space = MultiSpace(levels)
    table = draw(st.lists(st.integers(0, space.size - 1), min_size=space.size, max_size=space.size))
    return MultivaluedMap(space, table)


# -- dynamics ------------------------------------------------------------------


def async_edges_oracle(states, fn):
    """Edges ``x -> x + sign(f_i(x) - x_i) e^i`` for each component ``i``."""
    edges = set()
    for x in states:
        fx = fn(x)
        for i, (a, b) in enumerate(zip(x, fx)):
            if a != b:
                y = list(x)
                y[i] += sgn(b - a)
                edges.add((tuple(x), tuple(y)))
    return edges


def minimal_trap_sets(vertices, edges):
    """All inclusion-minimal nonempty trap sets by subset enumeration."""
    vertices = list(vertices)
    if len(vertices) > TRAP_ORACLE_CAP:
        raise ValueError(f"brute force capped at {TRAP_ORACLE_CAP} states")
    idx = {v: k for k, v in enumerate(vertices)}
    succ = [0] * len(vertices)
    for s, t in edges:
        succ[idx[s]] |= 1 << idx[t]
    traps = []
    for mask in range(1, 1 << len(vertices)):
        if all(succ[k] & ~mask == 0 for k in range(len(vertices)) if mask >> k & 1):
            traps.append(mask)
    minimal = [m for m in traps if not any(o != m and o & m == o for o in traps)]
    return sorted(sorted(vertices[k] for k in range(len(vertices)) if m >> k & 1) for m in minimal)


def terminal_scc_oracle(n_vertices, src, dst, universe=None):
    """Terminal strong components via scipy, as sorted rank lists."""
    g = csr_matrix((np.ones(len(src)), (src, dst)), shape=(n_vertices, n_vertices))
    _, label = connected_components(g, directed=True, connection="strong")
    keep = np.ones(n_vertices, bool) if universe is None else np.asarray(universe, bool)
    leaves = set(label[keep].tolist())
    for s, t in zip(src, dst):
        if label[s] != label[t]:
            leaves.discard(label[s])
    out = [sorted(np.flatnonzero((label == c) & keep).tolist()) for c in leaves]
    return sorted(out)


# -- interaction graphs --------------------------------------------------------


def local_graph_oracle(levels, fn, x, labels=None, domain=None):
    """Edge set of the local graph at ``x`` straight from the finite differences."""
    n = len(levels)
    labels = labels or tuple(range(1, n + 1))
    fx = fn(x)
    edges = set()
    for j in range(n):
        for s1 in (-1, 1):
            xj = x[j] + s1
            if not 0 <= xj <= levels[j]:
                continue
            nb = list(x)
            nb[j] = xj
            nb = tuple(nb)
            if domain is not None and nb not in domain:
                continue
            fn_nb = fn(nb)
            for i in range(n):
                s = s1 * sgn(fn_nb[i] - fx[i])
                if s:
                    edges.add((labels[j], labels[i], s))
    return edges


def bool_labels(levels):
    return tuple(IndexPair(i + 1, j + 1) for i, m in enumerate(levels) for j in range(m))


def cycles_oracle(vertices, edges):
    """Elementary signed cycles as ``(vertex tuple, sign tuple)`` pairs.

    Enumerates vertex sequences by permutation with the smallest vertex
    (in ``vertices`` order) first; every choice of parallel-edge sign gives a
    separate cycle.
    """
    pos = {v: k for k, v in enumerate(vertices)}
    signs = {}
    for s, t, sg in edges:
        signs.setdefault((s, t), set()).add(sg)
    out = set()
    for k in range(1, len(vertices) + 1):
        for start in vertices:
            rest = [v for v in vertices if pos[v] > pos[start]]
            for tail in permutations(rest, k - 1):
                cyc = (start, *tail)
                hops = [(cyc[a], cyc[(a + 1) % k]) for a in range(k)]
                if not all(h in signs for h in hops):
                    continue
                for choice in product(*(sorted(signs[h]) for h in hops)):
                    out.add((cyc, tuple(choice)))
    return out


# -- psi ------------------------------------------------------------------------


def psi_oracle(levels, y):
    out, k = [], 0
    for m in levels:
        ones = sum(y[k : k + m])
        out.extend([1] * ones + [0] * (m - ones))
        k += m
    return tuple(out)


def embed_oracle(levels, x):
    return tuple(int(v >= j) for v, m in zip(x, levels) for j in range(1, m + 1))


# -- acceptance reporting ---------------------------------------------------------

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record ``(criterion, ok, detail)``; summarised at the end of the run."""
    store = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    def record(number, title, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}" + (f" ({detail})" if detail else "")
        store[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_ACCEPTANCE_KEY, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for k in sorted(store):
            terminalreporter.write_line(store[k])
