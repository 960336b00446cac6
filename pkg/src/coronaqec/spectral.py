"""Symmetric eigendecomposition, eigenvalue grouping and main eigenvalues."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, PreconditionError

DEFAULT_GROUP_TOL = 1e-7
DEFAULT_MAIN_TOL = 1e-9
# distance from -2 below which an ungrouped eigenvalue is flagged as suspicious
NEAR_MINUS_TWO = 1e-4


def _as_symmetric(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * scale:
        raise PreconditionError("matrix is not symmetric")
    return (a + a.T) / 2


def eigen_sym(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order and matching orthonormal eigenvectors (columns).

    Residuals and orthonormality are checked against ``1e-9 * (1 + ||m||)``.
    """
    a = _as_symmetric(m)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    if not np.isfinite(a).all():
        raise NumericalError("matrix has non-finite entries")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver did not converge: {exc}") from exc
    w, v = w[::-1].copy(), v[:, ::-1].copy()

    bound = 1e-9 * (1.0 + np.linalg.norm(a, 2))
    resid = np.linalg.norm(a @ v - v * w, axis=0)
    if resid.max() > bound:
        raise NumericalError(f"eigenpair residual {resid.max():.3e} exceeds {bound:.3e}")
    if np.abs(v.T @ v - np.eye(n)).max() > 1e-9:
        raise NumericalError("eigenvectors failed the orthonormality check")
    return w, v


@dataclass(frozen=True)
class SpectralData:
    """Distinct eigenvalues (descending) with multiplicities and ``||E_a 1||^2``."""

    n: int
    eigs: tuple[float, ...]
    mults: tuple[int, ...]
    proj_one_sq: tuple[float, ...]
    group_tol: float
    vectors: np.ndarray = field(repr=False, compare=False)

    def group_slices(self) -> list[slice]:
        out, start = [], 0
        for m in self.mults:
            out.append(slice(start, start + m))
            start += m
        return out

    def projector(self, i: int) -> np.ndarray:
        """Orthogonal projection onto the eigenspace of ``eigs[i]``."""
        v = self.vectors[:, self.group_slices()[i]]
        return v @ v.T

    @property
    def min_eig(self) -> float:
        return self.eigs[-1]

    @property
    def max_eig(self) -> float:
        return self.eigs[0]

    def distance_to_spectrum(self, x: float) -> float:
        return min(abs(x - a) for a in self.eigs)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigs),
            "multiplicities": list(self.mults),
            "proj_one_sq": list(self.proj_one_sq),
        }


def spectral_data(m, group_tol: float = DEFAULT_GROUP_TOL) -> SpectralData:
    """Group the spectrum of a symmetric matrix into distinct eigenvalues.

    Consecutive (sorted) raw eigenvalues are chained into one group while
    their gap is at most ``group_tol * max(1, ||m||_2)``. The reported value
    of a group is the mean of its members.
    """
    w, v = eigen_sym(m)
    n = len(w)
    if n == 0:
        raise PreconditionError("spectral data of an empty matrix")
    tol = group_tol * max(1.0, float(np.abs(w).max()))
    ones = np.ones(n)
    overlap_sq = (ones @ v) ** 2

    eigs, mults, proj = [], [], []
    start = 0
    for i in range(1, n + 1):
        if i == n or w[i - 1] - w[i] > tol:
            eigs.append(float(w[start:i].mean()))
            mults.append(i - start)
            proj.append(float(overlap_sq[start:i].sum()))
            start = i
    return SpectralData(n, tuple(eigs), tuple(mults), tuple(proj), group_tol, v)


@dataclass(frozen=True)
class MainEigenvalues:
    """Main eigenvalues (descending) with their weights ``||E_a 1||^2``.

    ``k`` counts the main eigenvalues other than -2. ``near_minus_two`` is set
    when some eigenvalue lies close to -2 without being grouped with it; the
    classification of such a spectrum is numerically fragile.
    """

    values: tuple[float, ...]
    weights: tuple[float, ...]
    contains_minus_two: bool
    minus_two_weight: float
    k: int
    main_tol: float
    group_tol: float = DEFAULT_GROUP_TOL
    near_minus_two: bool = False

    def without_minus_two(self) -> list[tuple[float, float]]:
        """(alpha, weight) pairs for main alpha != -2, descending alpha."""
        return [
            (a, wt) for a, wt in zip(self.values, self.weights)
            if not (self.contains_minus_two and _is_minus_two(a, self.group_tol))
        ]


def _is_minus_two(a: float, tol: float) -> bool:
    return abs(a + 2.0) <= tol


def main_eigenvalues(sd: SpectralData, main_tol: float = DEFAULT_MAIN_TOL) -> MainEigenvalues:
    values, weights = [], []
    for a, p in zip(sd.eigs, sd.proj_one_sq):
        if p > main_tol:
            values.append(a)
            weights.append(p)
    minus_two = [i for i, a in enumerate(values) if _is_minus_two(a, sd.group_tol)]
    near = any(
        sd.group_tol < abs(a + 2.0) < NEAR_MINUS_TWO for a in sd.eigs
    )
    return MainEigenvalues(
        values=tuple(values),
        weights=tuple(weights),
        contains_minus_two=bool(minus_two),
        minus_two_weight=float(sum(weights[i] for i in minus_two)),
        k=len(values) - len(minus_two),
        main_tol=main_tol,
        group_tol=sd.group_tol,
        near_minus_two=near,
    )


def adjacency_spectrum(g, group_tol: float = DEFAULT_GROUP_TOL) -> SpectralData:
    """Spectral data of a graph's adjacency matrix."""
    return spectral_data(g.adjacency(), group_tol)
