"""Timing comparison of the compiled and pure-numpy kernel paths.

Runs the alternating-ascent kernel (real and complex) and the greedy
packing kernel through both implementations and prints a small table.
Set ``CYLWIDTH_DISABLE_NUMBA=1`` before importing the package to force
the numpy path at runtime; this script instead calls both paths
directly, so the env flag is not needed here.

Usage::

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from cylwidth import _kernels
from cylwidth.vectors import decreasing_rearrangement, orthonormalize


def _time(fn, *args, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _ascent_args(d: int, k: int, restarts: int, complex_field: bool, seed: int):
    rng = np.random.default_rng(seed)
    cols = rng.standard_normal((d, k))
    if complex_field:
        cols = cols + 1j * rng.standard_normal((d, k))
    cols = orthonormalize(cols).columns
    v = rng.standard_normal(d)
    if complex_field:
        v = v + 1j * rng.standard_normal(d)
    v_desc = decreasing_rearrangement(np.abs(v) / np.linalg.norm(v))
    starts = (cols @ rng.standard_normal((k, restarts))).T
    if complex_field:
        starts = (cols @ (rng.standard_normal((k, restarts))
                          + 1j * rng.standard_normal((k, restarts)))).T
    starts = starts / np.linalg.norm(starts, axis=1, keepdims=True)
    return (
        np.ascontiguousarray(cols),
        np.ascontiguousarray(v_desc),
        np.ascontiguousarray(starts),
    )


def main() -> None:
    print(f"numba available: {_kernels.HAS_NUMBA}")
    rows = []

    for d, k, restarts, cplx in [
        (256, 2, 40, False),
        (1024, 2, 40, False),
        (4096, 4, 40, False),
        (1024, 2, 40, True),
        (4096, 4, 40, True),
    ]:
        cols, v_desc, starts = _ascent_args(d, k, restarts, cplx, seed=d + k)
        t_np = _time(_kernels._numpy_altmax_best, cols, v_desc, starts, 500, 1e-10)
        label = f"ascent d={d} k={k} {'cplx' if cplx else 'real'} R={restarts}"
        if _kernels.HAS_NUMBA:
            jit_fn = (
                _kernels._numba_ascend_cplx if cplx else _kernels._numba_ascend_real
            )
            jit_fn(cols, v_desc, starts, 500, 1e-10)  # warm the cache
            t_jit = _time(jit_fn, cols, v_desc, starts, 500, 1e-10)
            rows.append((label, t_np, t_jit))
        else:
            rows.append((label, t_np, None))

    for d, k, cplx in [(64, 8, False), (64, 8, True)]:
        cols, _, _ = _ascent_args(d, k, 1, cplx, seed=d)
        rng = np.random.default_rng(d + 1)
        v = rng.standard_normal(d)
        s0 = np.ones(d)
        if cplx:
            v = v + 1j * rng.standard_normal(d)
            s0 = s0.astype(np.complex128)
        rows_m = np.ascontiguousarray(cols.conj())
        p0 = rng.permutation(d)
        pairs = rng.integers(0, d, size=(20000, 2))
        acc = rng.random(20000)
        args = (rows_m, np.ascontiguousarray(v), p0, s0, 0.3, 1e-5, pairs, acc)
        np_fn = _kernels._numpy_anneal_cplx if cplx else _kernels._numpy_anneal_real
        t_np = _time(np_fn, *args)
        label = f"anneal d={d} k={k} {'cplx' if cplx else 'real'} M=20000"
        if _kernels.HAS_NUMBA:
            jit_fn = (
                _kernels._numba_anneal_cplx if cplx else _kernels._numba_anneal_real
            )
            jit_fn(*args)  # warm the cache
            t_jit = _time(jit_fn, *args)
            rows.append((label, t_np, t_jit))
        else:
            rows.append((label, t_np, None))

    rng = np.random.default_rng(0)
    pts = rng.standard_normal((4000, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    t_np = _time(_kernels._numpy_greedy_pack, pts, 0.1)
    if _kernels.HAS_NUMBA:
        _kernels._numba_greedy_pack(pts, 0.1)
        t_jit = _time(_kernels._numba_greedy_pack, pts, 0.1)
        rows.append(("greedy pack n=4000 dim=3", t_np, t_jit))
    else:
        rows.append(("greedy pack n=4000 dim=3", t_np, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy (s)':>10}  {'numba (s)':>10}  {'speedup':>8}")
    for label, t_np, t_jit in rows:
        if t_jit is None:
            print(f"{label:<{width}}  {t_np:>10.4f}  {'-':>10}  {'-':>8}")
        else:
            print(
                f"{label:<{width}}  {t_np:>10.4f}  {t_jit:>10.4f}  "
                f"{t_np / t_jit:>7.1f}x"
            )


if __name__ == "__main__":
    main()
