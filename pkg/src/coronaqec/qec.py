"""Quadratic embedding constant by constrained eigenvalue maximization."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import PreconditionError
from .graph import Graph, distance_matrix
from .spectral import eigen_sym


class Method(str, Enum):
    ORACLE = "oracle"
    CLOSED_FORM = "closed_form"
    THEOREM = "theorem"


@dataclass(frozen=True)
class QecResult:
    value: float
    method: Method
    graph_id: str | None = None
    n: int | None = None
    certificate: np.ndarray | None = None

    def to_dict(self) -> dict:
        out = {"graph": self.graph_id, "n": self.n, "qec": self.value, "method": self.method.value}
        if self.certificate is not None:
            out["certificate"] = [float(x) for x in self.certificate]
        return out


def hyperplane_basis(n: int) -> np.ndarray:
    """Orthonormal basis (n x (n-1)) of the hyperplane orthogonal to the all-ones vector.

    The columns are the trailing columns of the Householder reflector that
    maps ``1/sqrt(n)`` onto the first coordinate axis.
    """
    if n < 2:
        raise PreconditionError(f"hyperplane basis needs n >= 2, got {n}")
    u = np.full(n, 1.0 / np.sqrt(n))
    u[0] -= 1.0
    # reflector H = I - 2 u u^T / (u^T u); H e_0 = 1/sqrt(n), columns 1.. span 1^perp
    h = np.eye(n) - (2.0 / (u @ u)) * np.outer(u, u)
    return h[:, 1:]


def _validate_distance_matrix(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise PreconditionError(f"distance matrix must be square, got shape {d.shape}")
    if d.shape[0] < 2:
        raise PreconditionError("QEC is defined only for graphs on two or more vertices")
    if not np.array_equal(d, d.T):
        raise PreconditionError("distance matrix is not symmetric")
    if np.any(np.diag(d) != 0):
        raise PreconditionError("distance matrix has a nonzero diagonal")
    off = d[~np.eye(d.shape[0], dtype=bool)]
    if np.any(off < 1):
        raise PreconditionError("off-diagonal distances must be >= 1")
    return d.astype(float)


def qec_oracle(d, graph_id: str | None = None) -> QecResult:
    """Maximum of <f, D f> over unit vectors f with <1, f> = 0.

    Computed as the top eigenvalue of B^T D B, where B is
    :func:`hyperplane_basis`. The certificate is B times the top eigenvector,
    sign-normalized so its first clearly nonzero entry is positive.
    """
    dm = _validate_distance_matrix(d)
    n = dm.shape[0]
    b = hyperplane_basis(n)
    w, v = eigen_sym(b.T @ dm @ b)
    f = b @ v[:, 0]
    nz = np.flatnonzero(np.abs(f) > 1e-12)
    if nz.size and f[nz[0]] < 0:
        f = -f
    return QecResult(float(w[0]), Method.ORACLE, graph_id, n, f)


def qec_of_graph(g: Graph) -> QecResult:
    return qec_oracle(distance_matrix(g), g.label)


def qec_join_k1_regular(n: int, kappa: int, min_eig: float) -> float:
    """QEC(K_1 + H) for a kappa-regular H on n vertices with smallest adjacency eigenvalue ``min_eig``."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if kappa < 0 or kappa >= n:
        raise PreconditionError(f"degree {kappa} impossible for a regular graph on {n} vertices")
    return -2.0 + max(-min_eig, (2 * n - kappa) / (n + 1))
