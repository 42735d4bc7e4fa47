"""Coefficient kernel with compiled/pure lane selection.

Tries the Cython extension first and falls back to the pure-Python
implementation.  Both lanes export the same functions with identical
semantics; `BACKEND` records which one is active.  Setting the
environment variable QCLASS_KERNEL to "pure" (or "cython") forces a
lane, which the benchmark uses to compare both in separate processes.
"""

import os

_forced = os.environ.get("QCLASS_KERNEL", "").strip().lower()

if _forced == "pure":
    from qclass._core._pure import padd, pmul, pneg, pnorm, pscale, zexp_add

    BACKEND = "pure"
elif _forced == "cython":
    from qclass._core._speed import padd, pmul, pneg, pnorm, pscale, zexp_add

    BACKEND = "cython"
else:
    try:
        from qclass._core._speed import padd, pmul, pneg, pnorm, pscale, zexp_add

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build environment
        from qclass._core._pure import padd, pmul, pneg, pnorm, pscale, zexp_add

        BACKEND = "pure"

__all__ = ["padd", "pmul", "pneg", "pnorm", "pscale", "zexp_add", "BACKEND"]
