"""Census kernel selection: compiled extension when built, else pure Python."""

from solvlie._pykernel import jacobi_terms, pair_order, table_count  # noqa: F401

try:
    from solvlie._ckernel import KERNEL_KIND, jacobi_filter
except ImportError:  # pragma: no cover - depends on build environment
    from solvlie._pykernel import KERNEL_KIND, jacobi_filter  # noqa: F401


def available_kernels():
    """All importable kernel implementations, keyed by kind."""
    from solvlie import _pykernel

    kernels = {"pure": _pykernel.jacobi_filter}
    try:
        from solvlie import _ckernel

        kernels["compiled"] = _ckernel.jacobi_filter
    except ImportError:  # pragma: no cover
        pass
    return kernels
