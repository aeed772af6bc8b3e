"""Pick the compiled kernels when available, else the numpy fallback.

Set ``TORIC_SCHUBERT_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_compiled = None

if os.environ.get("TORIC_SCHUBERT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def box_square_zero(table, bound, parity_allowed, backend: str | None = None):
    impl = _pick(backend)
    return impl.box_square_zero(table, bound, parity_allowed)


def gf2_eigen_dims(sq, prod, r, backend: str | None = None):
    impl = _pick(backend)
    width = max([int(x).bit_length() for x in sq] + [int(x).bit_length() for row in prod for x in row] + [0])
    if impl is not _kernels_py and width > 64:
        impl = _kernels_py
    return [int(d) for d in impl.gf2_eigen_dims(sq, prod, r)]


def _pick(backend):
    if backend is None:
        return _compiled or _kernels_py
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])
