"""Kernel backend selection.

The hot numeric kernels exist in two versions: a numba ``@njit`` scalar loop
and a vectorized pure-numpy twin.  The environment variable
``FRACWAVE_BACKEND`` picks which one the package binds at import time:

* ``auto`` (default): numba when importable, numpy otherwise,
* ``numba``: require the jitted path, raise if numba is missing,
* ``numpy``: force the pure-numpy fallback.

Both versions stay importable for side-by-side testing and benchmarking.
"""

import os

ENV_VAR = "FRACWAVE_BACKEND"


def resolve_backend(env_value: str | None, numba_available: bool) -> str:
    """Selection rule, kept pure so it can be unit tested."""
    choice = (env_value or "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{ENV_VAR} must be 'auto', 'numba' or 'numpy', got {env_value!r}"
        )
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not numba_available:
            raise ImportError(f"{ENV_VAR}=numba but numba is not importable")
        return "numba"
    return "numba" if numba_available else "numpy"


try:
    from numba import njit  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        raise ImportError("numba is not installed")


BACKEND = resolve_backend(os.environ.get(ENV_VAR), NUMBA_AVAILABLE)
USING_NUMBA = BACKEND == "numba"
