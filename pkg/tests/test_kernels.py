import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import maps
from mvbool import _kernels, admissible_states, example, extend_via_psi, partial_conversion
from mvbool._view import view

needs_cython = pytest.mark.skipif("cython" not in _kernels.BACKENDS, reason="extension not built")


def _inputs(obj, data):
    v = view(obj)
    size = v.space.size
    defined = v.defined
    if defined is None and data.draw(st.booleans()):
        defined = np.array(data.draw(st.lists(st.booleans(), min_size=size, max_size=size)))
    cur = v.space.coords
    img = v.image_coords
    if defined is not None:
        # coordinates outside the domain are never read, but keep them in range
        img = np.where(np.asarray(defined)[:, None], img, cur)
    return v, cur, img, defined


def test_backend_selected():
    assert _kernels.BACKEND in _kernels.BACKENDS
    assert "python" in _kernels.BACKENDS


@needs_cython
@settings(max_examples=100, deadline=None)
@given(maps(), st.data())
def test_backends_agree(f, data):
    for obj in (f, extend_via_psi(f), partial_conversion(f)):
        v, cur, img, defined = _inputs(obj, data)
        w, lv = v.space.weights, v.space.levels
        out = {}
        for b in ("python", "cython"):
            indptr, indices = _kernels.async_successors(cur, img, w, defined, backend=b)
            comp, term = _kernels.terminal_sccs(indptr, indices, defined, backend=b)
            edges = _kernels.local_edges(cur, img, w, lv, defined, backend=b)
            out[b] = (indptr, indices, comp, term, edges)
        for a, c in zip(out["python"], out["cython"]):
            np.testing.assert_array_equal(a, c)


@needs_cython
@settings(max_examples=60, deadline=None)
@given(maps(), st.data())
def test_local_edges_on_state_subsets(f, data):
    v = view(f)
    states = data.draw(st.lists(st.integers(0, v.space.size - 1), max_size=6))
    res = [
        _kernels.local_edges(v.space.coords, v.image_coords, v.space.weights, v.space.levels,
                             states=states, backend=b)
        for b in ("python", "cython")
    ]
    np.testing.assert_array_equal(*res)
    assert set(res[0][:, 0].tolist()) <= set(states)


@given(maps())
def test_terminal_components_are_closed(f):
    v = view(f)
    indptr, indices = _kernels.async_successors(v.space.coords, v.image_coords, v.space.weights)
    comp, term = _kernels.terminal_sccs(indptr, indices)
    for s in range(v.space.size):
        if term[comp[s]]:
            assert all(comp[t] == comp[s] for t in indices[indptr[s]:indptr[s + 1]])


def test_undefined_states_get_no_component():
    f = partial_conversion(example("fig1").map)
    v = view(f)
    indptr, indices = _kernels.async_successors(v.space.coords, v.image_coords, v.space.weights, v.defined)
    comp, _ = _kernels.terminal_sccs(indptr, indices, v.defined)
    assert (comp[~v.defined] == -1).all()
    assert (comp[v.defined] >= 0).all()
    assert len(admissible_states(f.source)) == int(v.defined.sum())


def test_pure_python_env_forces_fallback():
    code = "from mvbool import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, MVBOOL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env.pop("MVBOOL_PURE_PYTHON")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("cython" if "cython" in _kernels.BACKENDS else "python")
