import os
import random
import subprocess
import sys

import numpy as np
import pytest

from pcenter import _fallback, kernels
from pcenter.bench import format_records, run_bench
from pcenter.generators import grid

from .helpers import random_graph


def _impls():
    out = [_fallback]
    if kernels.COMPILED:
        out.append(kernels._impl)
    return out


def test_backend_name():
    assert kernels.backend() in ("cython", "python")


@pytest.mark.parametrize("seed", range(10))
def test_bfs_agrees(seed):
    g = random_graph(60, 0.05, seed)
    for s in (0, 17):
        outs = [kernels.bfs_distances(g, s, impl=m) for m in _impls()]
        assert all(o == outs[0] for o in outs)


@pytest.mark.parametrize("seed", range(10))
def test_centered_failure_agrees(seed):
    rng = random.Random(seed)
    g = random_graph(40, 0.1, seed)
    colors = np.array([rng.randrange(5) for _ in range(g.n)], dtype=np.int32)
    active = np.array([rng.random() < 0.7 for _ in range(g.n)], dtype=np.int8)
    outs = [kernels.centered_failure(g, colors, active, 5, impl=m) for m in _impls()]
    assert all(o == outs[0] for o in outs)


def test_centered_failure_examples():
    g, _ = grid(2, 2)
    colors = np.array([0, 1, 1, 0], dtype=np.int32)
    active = np.ones(4, dtype=np.int8)
    for m in _impls():
        assert sorted(kernels.centered_failure(g, colors, active, 2, impl=m)) == [0, 1, 2, 3]
        distinct = np.arange(4, dtype=np.int32)
        assert kernels.centered_failure(g, distinct, active, 4, impl=m) == []


def test_env_var_forces_fallback():
    code = "from pcenter import kernels; print(kernels.backend())"
    env = dict(os.environ, PCENTER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_bench_records_agree():
    recs = run_bench((4,), 2, 1)
    assert recs and all(r.agree for r in recs)
    table = format_records(recs, timings=False)
    assert "ms" not in table and "bfs" in table
