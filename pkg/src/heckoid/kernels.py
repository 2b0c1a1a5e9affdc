"""Kernel dispatch: the compiled ``_kernels`` extension when importable,
otherwise the pure-Python twin.  ``HECKOID_PURE_PYTHON=1`` forces the
fallback.
"""
import os

from . import _kernels_py

_INT64_SAFE = 1 << 40

try:
    if os.environ.get("HECKOID_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
OK, OVERFLOW, CAPPED = _kernels_py.OK, _kernels_py.OVERFLOW, _kernels_py.CAPPED


def _small(*values) -> bool:
    return all(abs(v) < _INT64_SAFE for v in values)


def bfs_orbit(seed, pmat, max_len, den_cap, backend=None):
    impl = _pick(backend)
    coef = max(abs(x) for x in pmat)
    bound = max(den_cap, abs(seed[0]), seed[1], 1) * (coef + 2) * (2 * max_len + 4)
    if impl is _compiled and (den_cap <= 0 or bound >= 1 << 62 or not _small(*seed)):
        impl = _kernels_py
    return impl.bfs_orbit(tuple(seed), tuple(pmat), max_len, den_cap)


def reduce_batch(points, q, p, qq, pp, j, m, cap_base, backend=None):
    impl = _pick(backend)
    points = list(points)
    if impl is _compiled and not _small(q, p, qq, pp, j * m, m * p * p):
        impl = _kernels_py
    if impl is _kernels_py:
        return _kernels_py.reduce_batch(points, q, p, qq, pp, j, m, cap_base)
    try:
        out = impl.reduce_batch(points, q, p, qq, pp, j, m, cap_base)
    except OverflowError:  # some point does not fit in int64
        small = [pt for pt in points if _small(*pt)]
        fast = iter(impl.reduce_batch(small, q, p, qq, pp, j, m, cap_base))
        out = [next(fast) if _small(*pt) else (pt[0], pt[1], 0, 0, OVERFLOW) for pt in points]
    for i, res in enumerate(out):
        if res[4] == OVERFLOW:
            n, e = points[i]
            cap = cap_base + 4 * max(e, 1).bit_length()
            out[i] = _kernels_py.reduce_point(n, e, q, p, qq, pp, j, m, cap)
    return out


def _pick(backend):
    if backend == "python" or _compiled is None:
        return _kernels_py
    return _compiled
