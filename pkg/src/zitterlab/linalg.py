"""Dense complex linear algebra helpers shared by the physics modules.

Matrices are plain ``numpy.ndarray`` with ``complex128`` entries.  The
eigensolver wraps LAPACK but post-processes degenerate subspaces into a
basis that depends only on the subspace itself, so serialized spectra are
reproducible.
"""

from __future__ import annotations

import logging

import numpy as np

logger = logging.getLogger(__name__)

__all__ = [
    "NonHermitianError",
    "commutator",
    "anticommutator",
    "hermitian_eigensystem",
    "matrix_exponential",
]


class NonHermitianError(ValueError):
    """Raised when a matrix required to be Hermitian is not.

    The measured asymmetry max|M - M^dag| is stored on ``asymmetry``.
    """

    def __init__(self, asymmetry: float):
        self.asymmetry = asymmetry
        super().__init__(f"matrix is not Hermitian: max|M - M^dag| = {asymmetry:.3e}")


def _as_square(m, name: str) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def commutator(a, b) -> np.ndarray:
    """[a, b] = ab - ba.  Exact antisymmetry: commutator(b, a) is the
    IEEE negation of commutator(a, b) because both build the same two
    products."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a

def anticommutator(a, b) -> np.ndarray:
    """{a, b} = ab + ba."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b + b @ a


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    # first component carrying a significant share of the norm is made
    # real positive; threshold avoids pivoting on rounding noise
    mag = np.abs(v)
    idx = int(np.flatnonzero(mag > 0.5 * mag.max())[0])
    phase = v[idx] / mag[idx]
    return v * phase.conjugate()


def _canonical_subspace_basis(vecs: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(vecs) that depends only on the span.

    Works on the columns of the orthogonal projector, picked greedily by
    residual norm, so any LAPACK basis of the same degenerate subspace
    produces the same output.
    """
    proj = vecs @ vecs.conj().T
    cols = proj.copy()
    k = vecs.shape[1]
    out = np.empty((proj.shape[0], k), dtype=complex)
    for j in range(k):
        norms = np.linalg.norm(cols, axis=0)
        pick = int(np.argmax(norms))
        w = cols[:, pick] / norms[pick]
        out[:, j] = w
        cols -= np.outer(w, w.conj() @ cols)
    return out


def hermitian_eigensystem(m, hermiticity_tol: float = 1e-12):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square complex matrix.
    hermiticity_tol : float
        Reject input whose asymmetry max|M - M^dag| exceeds this times
        the largest entry magnitude.

    Returns
    -------
    (evals, evecs)
        Eigenvalues ascending; eigenvectors as orthonormal columns.
        Within a degenerate cluster the basis is canonicalized, and every
        eigenvector's first significant component is made real positive.
    """
    a = _as_square(m, "m")
    scale = float(np.abs(a).max()) if a.size else 0.0
    asym = float(np.abs(a - a.conj().T).max())
    if asym > hermiticity_tol * max(scale, 1.0):
        raise NonHermitianError(asym)

    evals, evecs = np.linalg.eigh(a)

    # cluster nearly equal eigenvalues, then canonicalize each cluster
    tol = 1e-9 * max(1.0, float(np.abs(evals).max()) if evals.size else 1.0)
    start = 0
    for stop in range(1, len(evals) + 1):
        if stop == len(evals) or evals[stop] - evals[stop - 1] > tol:
            if stop - start > 1:
                evecs[:, start:stop] = _canonical_subspace_basis(evecs[:, start:stop])
            start = stop
    for j in range(evecs.shape[1]):
        evecs[:, j] = _canonical_phase(evecs[:, j])
    return evals, evecs


# Pade scaling-and-squaring (Higham 2005).  Order 13 with the standard
# backward-error thresholds for the lower-order candidates.
_PADE_B13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_PADE_THETA = {3: 1.495585217958292e-2, 5: 2.539398330063230e-1,
               7: 9.504178996162932e-1, 9: 2.097847961257068e0,
               13: 5.371920351148152e0}
_PADE_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
}


def _pade_uv(a: np.ndarray, order: int):
    n = a.shape[0]
    ident = np.eye(n, dtype=complex)
    b = _PADE_B[order] if order != 13 else _PADE_B13
    a2 = a @ a
    if order == 13:
        a4 = a2 @ a2
        a6 = a4 @ a2
        u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
                 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
        v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
             + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
        return u, v
    powers = {0: ident, 2: a2}
    for k in range(4, order, 2):
        powers[k] = powers[k - 2] @ a2
    u = np.zeros_like(a)
    v = np.zeros_like(a)
    for k in range(0, order + 1, 2):
        v = v + b[k] * powers[k]
    for k in range(1, order + 1, 2):
        u = u + b[k] * powers[k - 1]
    return a @ u, v


def matrix_exponential(m, scale: complex = 1.0) -> np.ndarray:
    """exp(scale * m) by Pade approximation with scaling and squaring.

    ``scale`` is folded into the matrix before the 1-norm analysis, so
    exp(-i H t) is obtained with scale = -i t.
    """
    a = _as_square(m, "m") * scale
    norm = float(np.linalg.norm(a, 1))
    if norm == 0.0:
        return np.eye(a.shape[0], dtype=complex)
    for order in (3, 5, 7, 9):
        if norm <= _PADE_THETA[order]:
            u, v = _pade_uv(a, order)
            return np.linalg.solve(v - u, v + u)
    squarings = max(0, int(np.ceil(np.log2(norm / _PADE_THETA[13]))))
    logger.debug("matrix_exponential: order 13, %d squarings", squarings)
    u, v = _pade_uv(a / 2.0**squarings, 13)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    return r
