"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``S2R_ENGINE_PURE=1`` to force the fallback (used by the benchmark
and the cross-backend tests).
"""

from __future__ import annotations

import os

from ._knpure import KnKernel as PureKnKernel

if os.environ.get("S2R_ENGINE_PURE") == "1":
    KnKernel = PureKnKernel
else:
    try:
        from ._kncore import KnKernel  # type: ignore[no-redef]
    except ImportError:
        KnKernel = PureKnKernel


def kernel_backend() -> str:
    return KnKernel.backend
