"""Numeric hot loops behind the search and clustering paths.

Two interchangeable backends compute the same quantities:

* numba ``@njit`` kernels -- the default whenever numba imports cleanly;
* pure-numpy fallbacks -- always available.

Set ``CRAG_NUMBA=0`` (or ``false``/``off``/``no``) before import to force the
numpy path. ``backend_name()`` reports which one is live, and both backends
stay importable side by side so benchmarks and tests can compare them
directly (see ``crag.bench.run_kernel_bench``).

All kernels accumulate in float64 regardless of input dtype; results of the
two backends agree to float64 rounding, not bit-for-bit, so any bitwise
reproducibility guarantee holds per backend.
"""

from __future__ import annotations

import os

import numpy as np


def _numpy_dot_scores(vectors: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Inner product of every row of `vectors` against `query`.

    `vectors` may be float32 (the store's on-disk dtype); accumulation is
    float64. Each row is reduced independently, so scores do not depend on
    which other rows are present in the matrix.
    """
    return (vectors.astype(np.float64) * query).sum(axis=1)


def _numpy_assign_labels(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Index of the nearest center per point (squared euclidean).

    Ties go to the lowest center index.
    """
    p2 = np.einsum("ij,ij->i", points, points)
    c2 = np.einsum("ij,ij->i", centers, centers)
    d2 = p2[:, None] - 2.0 * (points @ centers.T) + c2[None, :]
    return np.argmin(d2, axis=1)


def _numpy_sq_dists(points: np.ndarray, center: np.ndarray) -> np.ndarray:
    """Squared euclidean distance of every point to a single center."""
    diff = points - center
    return np.einsum("ij,ij->i", diff, diff)


def _build_numba_backend():
    from numba import njit

    @njit(cache=True)
    def dot_scores(vectors, query):
        n, d = vectors.shape
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            acc = 0.0
            for j in range(d):
                acc += vectors[i, j] * query[j]
            out[i] = acc
        return out

    @njit(cache=True)
    def assign_labels(points, centers):
        n, d = points.shape
        k = centers.shape[0]
        labels = np.empty(n, dtype=np.int64)
        for i in range(n):
            best = 0
            best_d = np.inf
            for c in range(k):
                acc = 0.0
                for j in range(d):
                    diff = points[i, j] - centers[c, j]
                    acc += diff * diff
                if acc < best_d:
                    best_d = acc
                    best = c
            labels[i] = best
        return labels

    @njit(cache=True)
    def sq_dists(points, center):
        n, d = points.shape
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            acc = 0.0
            for j in range(d):
                diff = points[i, j] - center[j]
                acc += diff * diff
            out[i] = acc
        return out

    return {"dot_scores": dot_scores, "assign_labels": assign_labels, "sq_dists": sq_dists}


NUMPY_BACKEND = {
    "dot_scores": _numpy_dot_scores,
    "assign_labels": _numpy_assign_labels,
    "sq_dists": _numpy_sq_dists,
}


def _env_wants_numba() -> bool:
    flag = os.environ.get("CRAG_NUMBA", "").strip().lower()
    return flag not in {"0", "false", "off", "no"}


NUMBA_BACKEND = None
if _env_wants_numba():
    try:
        NUMBA_BACKEND = _build_numba_backend()
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_BACKEND = None

_ACTIVE = NUMBA_BACKEND if NUMBA_BACKEND is not None else NUMPY_BACKEND

dot_scores = _ACTIVE["dot_scores"]
assign_labels = _ACTIVE["assign_labels"]
sq_dists = _ACTIVE["sq_dists"]


def backend_name() -> str:
    return "numba" if _ACTIVE is NUMBA_BACKEND else "numpy"


def warmup() -> None:
    """Run every active kernel once on tiny inputs.

    With the numba backend this triggers JIT compilation so that later calls
    (and anything under a timing assertion) measure steady-state cost.
    """
    pts = np.zeros((2, 3), dtype=np.float64)
    ctr = np.zeros((2, 3), dtype=np.float64)
    vec = np.zeros((2, 3), dtype=np.float32)
    q = np.zeros(3, dtype=np.float64)
    dot_scores(vec, q)
    assign_labels(pts, ctr)
    sq_dists(pts, q)
