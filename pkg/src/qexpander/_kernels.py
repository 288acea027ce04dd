"""Execution-mode selector for the decoder kernels.

The kernel source lives in ``_kernels_impl``; it is loaded twice so both
flavors can coexist in one process (the benchmark and the equivalence tests
rely on that):

  * ``PURE``  - plain Python loops over numpy arrays;
  * ``JIT``   - the same functions compiled with numba (None when numba is
                missing or disabled).

``ACTIVE`` is what the decoder actually uses.  Set ``QEXPANDER_JIT=0`` in
the environment before import to force the pure path.
"""

from __future__ import annotations

import importlib.util
import os
import sys

_IMPL_PATH = os.path.join(os.path.dirname(__file__), "_kernels_impl.py")

# compile order matters: callees must be rebound before their callers are
# first invoked, and listing them explicitly keeps the wrap loop honest
KERNEL_NAMES = [
    "_popcount64",
    "_bitset_weight",
    "_eval_beta",
    "_eval_ratio",
    "_mark_from_sigma",
    "_apply_flip",
    "_decode_beta_core",
    "_decode_ratio_core",
    "_decode_parallel_core",
    "_syndrome_accumulate",
]


def load_impl(jit: bool):
    """Fresh copy of the kernel module, optionally njit-wrapped."""
    flavor = "jit" if jit else "pure"
    spec = importlib.util.spec_from_file_location(
        f"qexpander._kernels_{flavor}", _IMPL_PATH)
    mod = importlib.util.module_from_spec(spec)
    sys.modules[spec.name] = mod
    spec.loader.exec_module(mod)
    if jit:
        from numba import njit
        for name in KERNEL_NAMES:
            setattr(mod, name, njit(cache=True, nogil=True)(getattr(mod, name)))
    return mod


def _jit_requested() -> bool:
    return os.environ.get("QEXPANDER_JIT", "1").lower() not in ("0", "false", "off")


PURE = load_impl(False)
JIT = None
if _jit_requested():
    try:
        JIT = load_impl(True)
    except ImportError:
        JIT = None

ACTIVE = JIT if JIT is not None else PURE
MODE = "numba" if JIT is not None else "python"
