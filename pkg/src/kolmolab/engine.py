"""Backend selection for the simulator kernels.

The environment variable ``KOLMOLAB_BACKEND`` picks the implementation:
  - "numba": jit-compiled kernels (error if numba is unavailable)
  - "python": the plain-Python reference kernels
  - unset/"auto": numba when importable, plain Python otherwise

Both backends run the same source (:mod:`kolmolab._kernels`) and produce
identical results; the benchmark under benchmarks/ compares their speed.
"""

import os

from . import _kernels
from ._kernels import BLANK, HALTED, OUT_OF_FUEL, OUT_OF_TAPE

__all__ = [
    "BLANK",
    "HALTED",
    "OUT_OF_FUEL",
    "OUT_OF_TAPE",
    "BACKEND",
    "table_run",
    "table_run_trace",
    "output_span",
    "jit_kernels",
]


def jit_kernels(module):
    """Return (table_run, table_run_trace, output_span) jitted with numba."""
    from numba import njit

    opts = {"cache": True, "nogil": True}
    return (
        njit(**opts)(module.table_run),
        njit(**opts)(module.table_run_trace),
        njit(**opts)(module.output_span),
    )


def _select():
    choice = os.environ.get("KOLMOLAB_BACKEND", "auto").lower()
    if choice not in ("auto", "numba", "python"):
        raise ValueError(f"KOLMOLAB_BACKEND must be auto|numba|python, got {choice!r}")
    if choice == "python":
        return "python", (_kernels.table_run, _kernels.table_run_trace, _kernels.output_span)
    try:
        return "numba", jit_kernels(_kernels)
    except ImportError:
        if choice == "numba":
            raise
        return "python", (_kernels.table_run, _kernels.table_run_trace, _kernels.output_span)


BACKEND, (table_run, table_run_trace, output_span) = _select()
