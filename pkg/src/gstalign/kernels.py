"""Backend selection for the hot kernels.

The compiled extension (``gstalign._speedups``) is preferred when it was
built; otherwise the pure-Python reference (``gstalign._kernels_py``) is
used.  Set the environment variable ``GSTALIGN_PURE=1`` to force the pure
backend, or call :func:`set_backend` at runtime (used by the kernel
benchmark to time both).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _speedups
except ImportError:  # extension not built; fall back
    _speedups = None

_FORCE_PURE = os.environ.get("GSTALIGN_PURE", "") not in ("", "0")
_active = _kernels_py if (_speedups is None or _FORCE_PURE) else _speedups


def available_backends() -> tuple[str, ...]:
    return ("pure",) if _speedups is None else ("compiled", "pure")


def active_backend() -> str:
    return _active.name


def set_backend(name: str) -> None:
    """Select 'compiled', 'pure' or 'auto' for subsequent kernel calls."""
    global _active
    if name == "pure":
        _active = _kernels_py
    elif name == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled backend is not available")
        _active = _speedups
    elif name == "auto":
        _active = _kernels_py if (_speedups is None or _FORCE_PURE) else _speedups
    else:
        raise ValueError(f"unknown backend {name!r}")


def build_gst_raw(seqs):
    return _active.build_gst_raw(seqs)


def dfs_stats(csr_off, csr_child, edge_len):
    return _active.dfs_stats(csr_off, csr_child, edge_len)


def lev(a: bytes, b: bytes) -> int:
    return _active.lev(a, b)


def nw_ops(a: bytes, b: bytes, match: int, mismatch: int, gap: int):
    return _active.nw_ops(a, b, match, mismatch, gap)


def profile_ops(off1, sym1, cnt1, ng1, nrows1, off2, sym2, cnt2, ng2, nrows2,
                match: int, mismatch: int, gap: int) -> bytes:
    return _active.profile_ops(off1, sym1, cnt1, ng1, nrows1,
                               off2, sym2, cnt2, ng2, nrows2,
                               match, mismatch, gap)
