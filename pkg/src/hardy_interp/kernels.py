"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy versions in ``_kernels_py`` are used. Setting ``HARDY_INTERP_PURE=1``
forces the numpy path. ``BACKEND`` names the active one.
"""
import os

from . import _kernels_py

_NAMES = (
    "herglotz_sum",
    "poisson_sum",
    "conjugate_sum",
    "log_separation_products",
    "schur_eval",
    "blaschke_eval",
    "log_power_sums",
)

_impl = _kernels_py
BACKEND = "python"
if not os.environ.get("HARDY_INTERP_PURE"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py

herglotz_sum = _impl.herglotz_sum
poisson_sum = _impl.poisson_sum
conjugate_sum = _impl.conjugate_sum
log_separation_products = _impl.log_separation_products
schur_eval = _impl.schur_eval
blaschke_eval = _impl.blaschke_eval
log_power_sums = _impl.log_power_sums


def backends():
    """Return {name: module} for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:  # pragma: no cover
        pass
    else:
        out["cython"] = _ckernels
    return out
