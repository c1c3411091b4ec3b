"""Batch kernels for subspace-scale enveloping-algebra work.

Two interchangeable implementations exist: a Cython extension
(rla._speedups) and a numpy/scipy fallback (rla._kernel.pyk).  Which one
backs `make_kernel` is decided once at import time; set RLA_PURE_PYTHON=1
to force the fallback.  Both consume the same straightening tables and have
to produce bit-identical results (tested in tests/test_kernels.py).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np


@dataclass
class KernelTables:
    """Straightening data: for each generator j, the sparse columns of the
    right-multiplication map m -> m * b_j over the monomial basis."""
    p: int
    n: int
    dim: int
    radix: np.ndarray      # (n,) int64, radix[i] = p^(n-1-i)
    deg: np.ndarray        # (dim,) total degree per monomial
    lastgen: np.ndarray    # (dim,) largest occupied slot, -1 for the unit
    firstgen: np.ndarray   # (dim,) smallest occupied slot, -1 for the unit
    rg_indptr: np.ndarray  # (n, dim+1) absolute offsets into rg_idx/rg_val
    rg_idx: np.ndarray
    rg_val: np.ndarray


def _pick_backend():
    if os.environ.get("RLA_PURE_PYTHON"):
        return "python"
    try:
        import rla._speedups  # noqa: F401
        return "compiled"
    except ImportError:
        return "python"


BACKEND = _pick_backend()


def make_kernel(tables: KernelTables):
    if BACKEND == "compiled":
        from rla._speedups import CKernel
        return CKernel(tables.p, tables.n, tables.dim, tables.radix,
                       tables.deg, tables.lastgen, tables.firstgen,
                       tables.rg_indptr, tables.rg_idx, tables.rg_val)
    from rla._kernel.pyk import PyKernel
    return PyKernel(tables)


def make_python_kernel(tables: KernelTables):
    from rla._kernel.pyk import PyKernel
    return PyKernel(tables)


def make_compiled_kernel(tables: KernelTables):
    from rla._speedups import CKernel
    return CKernel(tables.p, tables.n, tables.dim, tables.radix,
                   tables.deg, tables.lastgen, tables.firstgen,
                   tables.rg_indptr, tables.rg_idx, tables.rg_val)
