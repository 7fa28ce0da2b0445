"""Dense symmetric eigensolver based on cyclic Jacobi rotations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NoConvergence, NotSymmetric

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues, with eigenvectors stored column-wise if requested."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eig_symmetric(
    a, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS, vectors: bool = True
) -> Spectrum:
    """Diagonalize a real symmetric matrix.

    Sweeps over all (p, q) pairs in row order, annihilating each off-diagonal
    entry with a plane rotation, until the off-diagonal Frobenius norm drops
    to ``tol * ||A||_F``.

    Raises:
        NotSymmetric: if ``a`` is not square or ``max|A - A^T|`` exceeds
            ``1e-12 * max|A|``.
        NoConvergence: if ``max_sweeps`` sweeps do not reach the tolerance.

    Pass ``vectors=False`` to skip accumulating the rotations.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if a.size and np.max(np.abs(a - a.T)) > 1e-12 * max(scale, 1.0):
        raise NotSymmetric("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    offdiag = ~np.eye(n, dtype=bool)
    norm = float(np.linalg.norm(a))
    target = tol * norm

    for _ in range(max_sweeps + 1):
        off = float(np.linalg.norm(a[offdiag]))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                gap = aqq - app
                if abs(gap) > 1e150 * abs(apq):
                    # theta would overflow; t ~ 1/(2 theta)
                    t = apq / gap
                else:
                    theta = gap / (2.0 * apq)
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + (theta * theta + 1.0) ** 0.5)
                c = 1.0 / (t * t + 1.0) ** 0.5
                s = t * c
                # a stays symmetric: rotate columns, mirror into rows, then fix the 2x2 block
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                if vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q]
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order] if vectors else None)
