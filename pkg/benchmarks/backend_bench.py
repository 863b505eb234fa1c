#!/usr/bin/env python3
"""Benchmark: jitted kernels vs plain-Python kernels on the hot workloads.

Run from the repo root:

    python3 benchmarks/backend_bench.py

Workloads:
  * palindrome traces (the quadratic profiler's inner loop)
  * an enumeration sweep (the estimators' and census's inner loop)

Both backends run the same kernel source; this script reports wall-clock
times and their ratio.  The selected default backend for the package is
whatever `kolmolab.engine.BACKEND` says (env var KOLMOLAB_BACKEND overrides).
"""

import time

import numpy as np

from kolmolab import _kernels, engine
from kolmolab.machines import bits_to_array, decode_table
from kolmolab.palindrome import PAL_TABLE


def make_tape(bits, left, right):
    tape = np.full(left + right + 1, _kernels.BLANK, dtype=np.uint8)
    if bits:
        tape[left : left + len(bits)] = bits_to_array(bits)
    return tape


def palindrome_workload(table_run, n=384, reps=20):
    rng = np.random.default_rng(7)
    max_steps = 2 * (n + 4) ** 2 + 64
    total = 0
    for _ in range(reps):
        bits = "".join(rng.choice(["0", "1"], size=n))
        tape = make_tape(bits, n + 8, n + 8)
        status, steps, _ = table_run(PAL_TABLE, tape, n + 8, max_steps)
        total += int(steps)
    return total


def sweep_workload(table_run, horizon=16):
    """Short-horizon enumeration: per-run Python overhead dominates."""
    tables = [decode_table(m)[1] for m in range(64)]
    total = 0
    for table in tables:
        for k in range(2**10):
            bits = format(k, "010b")
            tape = make_tape(bits, horizon, max(horizon, 10))
            status, steps, _ = table_run(table, tape, horizon, horizon)
            total += int(steps)
    return total


def deep_run_workload(table_run, horizon=4096, reps=512):
    """Full budgets burned on a never-halting table: kernel time dominates.

    This is the divergent-program case every estimator sweep pays for.
    """
    _, loop_table = decode_table(5934)  # documented self-loop table
    total = 0
    for _ in range(reps):
        tape = make_tape("1011", horizon, horizon)
        status, steps, _ = table_run(loop_table, tape, horizon, horizon)
        total += int(steps)
    return total


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - t0


def main():
    jit_run = engine.jit_kernels(_kernels)[0]
    py_run = _kernels.table_run

    # warm up the jit compile outside the timed region
    palindrome_workload(jit_run, n=16, reps=1)
    sweep_workload(jit_run, horizon=2)

    print(f"default backend: {engine.BACKEND}")
    print(f"{'workload':<24}{'numba':>12}{'python':>12}{'speedup':>10}")
    for name, fn, kwargs in (
        ("palindrome traces", palindrome_workload, {}),
        ("deep budget runs", deep_run_workload, {}),
        ("short-horizon sweep", sweep_workload, {}),
    ):
        r_jit, t_jit = timed(fn, jit_run, **kwargs)
        r_py, t_py = timed(fn, py_run, **kwargs)
        assert r_jit == r_py, f"{name}: backends disagree"
        print(f"{name:<24}{t_jit:>10.3f}s{t_py:>11.3f}s{t_py / t_jit:>9.1f}x")


if __name__ == "__main__":
    main()
