"""Timing of the compiled kernels against the pure-Python fallback."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _fallback, kernels
from .generators import grid
from .lifting import planar_centered_coloring
from .verify import candidate_color_sets


@dataclass
class BenchRecord:
    workload: str
    n: int
    calls: int
    agree: bool
    compiled_ms: float | None
    python_ms: float

    @property
    def speedup(self) -> float | None:
        if self.compiled_ms is None or self.compiled_ms == 0:
            return None
        return self.python_ms / self.compiled_ms


def _time(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best * 1000.0, out


def run_bench(sizes=(10, 20, 40), p: int = 2, repeat: int = 3) -> list[BenchRecord]:
    compiled = None
    if kernels.COMPILED:
        compiled = kernels._impl
    records = []
    for side in sizes:
        g, rot = grid(side, side)
        sources = list(range(0, g.n, max(1, g.n // 32)))

        def bfs(impl):
            return [kernels.bfs_distances(g, s, impl=impl) for s in sources]

        py_ms, py_out = _time(lambda: bfs(_fallback), repeat)
        c_ms, c_out = (None, py_out)
        if compiled is not None:
            c_ms, c_out = _time(lambda: bfs(compiled), repeat)
        records.append(BenchRecord("bfs", g.n, len(sources), c_out == py_out, c_ms, py_ms))

        col = planar_centered_coloring(g, rot, p)
        colors = np.asarray(col.color, dtype=np.int32)
        actives = [np.isin(colors, xs).astype(np.int8) for xs in candidate_color_sets(g, col, p)]

        def peel(impl):
            return [kernels.centered_failure(g, colors, a, col.num_colors, impl=impl) for a in actives]

        py_ms, py_out = _time(lambda: peel(_fallback), repeat)
        c_ms, c_out = (None, py_out)
        if compiled is not None:
            c_ms, c_out = _time(lambda: peel(compiled), repeat)
        records.append(BenchRecord("centered_check", g.n, len(actives), c_out == py_out, c_ms, py_ms))
    return records


def format_records(records: list[BenchRecord], timings: bool = True) -> str:
    if timings:
        head = f"{'workload':<16}{'n':>6}{'calls':>8}{'agree':>7}{'cython_ms':>12}{'python_ms':>12}{'speedup':>9}"
    else:
        head = f"{'workload':<16}{'n':>6}{'calls':>8}{'agree':>7}"
    lines = [head]
    for r in records:
        row = f"{r.workload:<16}{r.n:>6}{r.calls:>8}{str(r.agree):>7}"
        if timings:
            cm = f"{r.compiled_ms:.2f}" if r.compiled_ms is not None else "n/a"
            sp = f"{r.speedup:.1f}x" if r.speedup is not None else "n/a"
            row += f"{cm:>12}{r.python_ms:>12.2f}{sp:>9}"
        lines.append(row)
    return "\n".join(lines) + "\n"
