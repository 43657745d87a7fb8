"""Compiled and pure-Python kernels must agree bit for bit."""

import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BACKENDS
from oracles import brute_rank
from ringstore import _backend, _pykernels


@st.composite
def arrays(draw):
    q = draw(st.sampled_from([2, 3, 5, 7, 31, 65537]))
    r = draw(st.integers(1, 7))
    c = draw(st.integers(1, 9))
    flat = draw(st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c))
    return np.array(flat, dtype=np.int64).reshape(r, c), q


def test_backend_reports_a_name():
    assert _backend.BACKEND in {"cython", "python"}


def test_compiled_kernel_built():
    # the package is expected to ship the extension; the fallback still works without it
    names = [m.NAME for m in BACKENDS]
    if "cython" not in names:
        pytest.skip("compiled extension not built")
    forced = os.environ.get("RINGSTORE_PURE_PYTHON", "") not in ("", "0")
    assert _backend.BACKEND == ("python" if forced else "cython")


def test_rank_small(kernels):
    a = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.int64)
    assert kernels.rank(a.copy(), 2) == brute_rank(a.tolist(), 2) == 2
    assert kernels.rank(a.copy(), 3) == brute_rank(a.tolist(), 3) == 3


def test_rref_small(kernels):
    a = np.array([[0, 2, 4], [1, 1, 1]], dtype=np.int64)
    pivots = kernels.rref(a, 5)
    assert list(pivots) == [0, 1]
    assert a.tolist() == [[1, 0, 4], [0, 1, 2]]


@given(arrays())
def test_backends_agree(data):
    a, q = data
    ref_r = a.copy()
    ref_p = _pykernels.rref(ref_r, q)
    ref_rank = _pykernels.rank(a.copy(), q)
    for mod in BACKENDS:
        r = a.copy()
        assert list(mod.rref(r, q)) == list(ref_p)
        assert np.array_equal(r, ref_r)
        assert mod.rank(a.copy(), q) == ref_rank == len(ref_p)


@given(arrays(), st.data())
def test_window_ranks_agree(data, draw):
    a, q = data
    a = np.ascontiguousarray(a)
    cols = a.shape[1]
    width = draw.draw(st.integers(1, cols))
    starts = np.array(draw.draw(st.lists(st.integers(0, cols - 1), min_size=1, max_size=5)), dtype=np.int64)
    expected = [
        _pykernels.rank(np.ascontiguousarray(a[:, [(s + j) % cols for j in range(width)]]), q)
        for s in starts
    ]
    for mod in BACKENDS:
        assert list(mod.window_ranks(a, starts, width, q)) == expected


def test_env_var_forces_fallback():
    import subprocess
    import sys

    env = dict(os.environ, RINGSTORE_PURE_PYTHON="1")
    res = subprocess.run(
        [sys.executable, "-c", "import ringstore; print(ringstore.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert res.stdout.strip() == "python"
