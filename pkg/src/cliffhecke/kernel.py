"""Kernel selection: compiled extension when importable, else pure Python.

Set ``CLIFFHECKE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

_ck = None
if os.environ.get("CLIFFHECKE_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernel as _ck
    except ImportError:
        _ck = None

_impl = _ck if _ck is not None else _kernel_py

BACKEND = "cython" if _ck is not None else "python"
PAIR_BASE = _kernel_py.PAIR_BASE

popcount = _impl.popcount
wedge_sign = _impl.wedge_sign
contract_terms = _impl.contract_terms
blade_product_expansion = _impl.blade_product_expansion


def backends():
    """Available implementations by name, for benchmarks and parity tests."""
    out = {"python": _kernel_py}
    if _ck is not None:
        out["cython"] = _ck
    return out
