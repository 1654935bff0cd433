"""Dense complex linear-algebra kernel.

Thin, validated wrappers around numpy's SVD machinery (rank, null spaces,
pseudo-inverses) plus the package's single source of randomness: every random
draw anywhere in the package flows through `generator`, which derives
decorrelated child streams from one integer seed via numpy's splittable
SeedSequence. Stream tags keep channel draws, precoder draws, and test symbols
statistically independent even when a caller reuses the same seed for all of
them.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "as_matrix",
    "numerical_rank",
    "null_space_basis",
    "pseudo_inverse",
    "generator",
    "complex_gaussian",
    "random_gaussian",
    "random_orthonormal",
    "CHANNEL_STREAM",
    "PRECODER_STREAM",
    "SYMBOL_STREAM",
    "TRIAL_STREAM",
    "ABLATION_STREAM",
]

_EPS = float(np.finfo(np.float64).eps)

# spawn-key tags for the independent child streams of one seed
CHANNEL_STREAM = 0
PRECODER_STREAM = 1
SYMBOL_STREAM = 2
TRIAL_STREAM = 3
ABLATION_STREAM = 4


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce `a` to a 2-D complex128 array, rejecting non-finite entries."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return arr


def _rank_from_singular_values(s: np.ndarray, shape: tuple[int, int], tol: float) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    rel = tol if tol > 0.0 else max(shape) * _EPS
    return int(np.count_nonzero(s > rel * s[0]))


def numerical_rank(a, tol: float = 0.0) -> int:
    """Number of singular values strictly greater than tol * smax.

    tol = 0 selects the conventional default max(rows, cols) * eps, relative
    to the largest singular value.
    """
    a = as_matrix(a)
    if not tol >= 0.0:
        raise InvalidInputError(f"tol must be >= 0, got {tol}")
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return _rank_from_singular_values(s, a.shape, tol)


def null_space_basis(a) -> np.ndarray:
    """Orthonormal basis N of the (right) null space of `a`.

    Columns of N span {x : a @ x = 0}; cols(N) = cols(a) - numerical_rank(a).
    An empty-row matrix has a full null space, so N is then an identity basis.
    """
    a = as_matrix(a)
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if rows == 0:
        return np.eye(cols, dtype=np.complex128)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    r = _rank_from_singular_values(s, a.shape, 0.0)
    return vh[r:].conj().T


def pseudo_inverse(a) -> np.ndarray:
    """Moore-Penrose pseudo-inverse (SVD based, rank-truncated)."""
    a = as_matrix(a)
    if a.size == 0:
        raise InvalidInputError("pseudo_inverse needs a non-empty matrix")
    return np.linalg.pinv(a, rcond=max(a.shape) * _EPS)


def generator(seed: int, *stream: int) -> np.random.Generator:
    """Seeded Generator for one child stream of `seed`.

    Distinct `stream` tags (and tag tuples) give statistically independent
    streams; the same (seed, stream) pair always reproduces the same draws.
    """
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InvalidInputError(f"seed must be a nonnegative integer, got {seed!r}")
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(stream)))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """CN(0,1) i.i.d. matrix: real and imaginary parts each N(0, 1/2)."""
    if rows < 0 or cols < 0:
        raise InvalidInputError(f"matrix dimensions must be >= 0, got {rows}x{cols}")
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def random_gaussian(rows: int, cols: int, seed: int) -> np.ndarray:
    """Deterministic rows x cols CN(0,1) draw for `seed`."""
    return complex_gaussian(generator(seed), rows, cols)


def random_orthonormal(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Matrix with orthonormal columns, Haar-like via QR of a Gaussian draw."""
    if cols > rows:
        raise InvalidInputError(f"cannot fit {cols} orthonormal columns in C^{rows}")
    if cols == 0:
        return np.zeros((rows, 0), dtype=np.complex128)
    q, r = np.linalg.qr(complex_gaussian(rng, rows, cols))
    # fix the phase so the factorization (hence the draw) is unambiguous
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))
