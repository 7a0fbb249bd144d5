"""Benchmark the numba kernel lane against the pure-numpy lane.

Runs every twin pair on representative workloads, checks that the two
lanes agree, and prints a timing table::

    python -m diamondnet.benchmark [--repeat R] [--quick]

When the numba lane is off (no numba, or DIAMONDNET_NO_NUMBA set) only the
numpy timings print.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import kernels


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def _workloads(quick):
    rng = np.random.default_rng(12345)
    scale = 0.5 if quick else 1.0

    n_brute = 18 if quick else 22
    r_s = rng.uniform(0.0, 10.0, n_brute)
    r_d = rng.uniform(0.0, 10.0, n_brute)
    yield "brute_omega", f"n={n_brute}", (r_s, r_d)

    n_scan = int(1e6 * scale)
    s_sorted = np.sort(rng.uniform(0.0, 10.0, n_scan))
    d_sorted = rng.uniform(0.0, 10.0, n_scan)
    yield "omega_sorted_scan", f"n={n_scan}", (s_sorted, d_sorted)

    rows = int(2e5 * scale)
    k = 8
    n_pool = 16
    members = np.sort(
        np.argsort(rng.random((rows, n_pool)), axis=1)[:, :k].astype(np.int64),
        axis=1,
    )
    yield "omega_rows", f"rows={rows}, k={k}", (
        members,
        rng.uniform(0.0, 10.0, n_pool),
        rng.uniform(0.0, 10.0, n_pool),
    )

    n_sand = 16 if quick else 20
    ts2 = rng.uniform(0.0, 50.0, n_sand)
    td2 = rng.uniform(0.0, 50.0, n_sand)
    yield "sandwich_scan", f"n={n_sand}", (ts2, td2, np.sqrt(td2))

    m_af = int(2e5 * scale)
    n_af = 8
    yield "af_rate_batch", f"rows={m_af}, n={n_af}", (
        rng.uniform(0.0, 2.0, n_af),
        rng.uniform(0.0, 2.0, n_af),
        4.0,
        rng.uniform(0.0, 1.0, (m_af, n_af)),
    )


def _agree(a, b):
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    b = np.atleast_1d(np.asarray(b, dtype=np.float64))
    return a.shape == b.shape and np.allclose(a, b, rtol=1e-12, atol=1e-12)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args(argv)

    np_kernels = kernels.numpy_kernels()
    nb_kernels = kernels.numba_kernels()
    print(f"active backend: {kernels.BACKEND}")
    if nb_kernels is None:
        print("numba lane off; timing the numpy lane only")
        header = f"{'kernel':<20} {'workload':<18} {'numpy':>10}"
    else:
        header = (
            f"{'kernel':<20} {'workload':<18} {'numpy':>10} {'numba':>10} "
            f"{'speedup':>8} {'agree':>6}"
        )
    print(header)
    print("-" * len(header))

    status = 0
    for name, desc, work in _workloads(args.quick):
        t_np = _time(np_kernels[name], work, args.repeat)
        if nb_kernels is None:
            print(f"{name:<20} {desc:<18} {t_np:>10.4f}")
            continue
        nb_kernels[name](*work)  # compile outside the timed region
        t_nb = _time(nb_kernels[name], work, args.repeat)
        out_np = np_kernels[name](*work)
        out_nb = nb_kernels[name](*work)
        if isinstance(out_np, tuple):
            ok = all(_agree(x, y) for x, y in zip(out_np, out_nb))
        else:
            ok = _agree(out_np, out_nb)
        if not ok:
            status = 1
        print(
            f"{name:<20} {desc:<18} {t_np:>10.4f} {t_nb:>10.4f} "
            f"{t_np / t_nb:>8.1f} {'yes' if ok else 'NO':>6}"
        )
    return status


if __name__ == "__main__":
    raise SystemExit(main())
