"""The omega and psi rational functions attached to a symmetric matrix.

For a symmetric matrix A with main eigenvalues alpha and weights
``w_alpha = ||E_alpha 1||^2``::

    omega(lam) = 1 + w_{-2} + sum_{alpha != -2} lam * w_alpha / (alpha + 2 + lam)
    psi(lam)   = lam / omega(lam)

Both are evaluated from the main-eigenvalue data only, which gives their
analytic continuation through the non-main part of the spectrum for free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, PoleError, PreconditionError
from .graph import Graph
from .spectral import (
    DEFAULT_GROUP_TOL,
    DEFAULT_MAIN_TOL,
    MainEigenvalues,
    SpectralData,
    main_eigenvalues,
    spectral_data,
)

POLE_TOL = 1e-12
ROOT_TOL = 1e-12
_MAX_ITER = 400


def _bisect(f, lo: float, hi: float, sign_lo: int, width: float = ROOT_TOL) -> float:
    """Bisection on the open interval (lo, hi) where ``f`` changes sign.

    ``sign_lo`` is the sign of ``f`` just right of ``lo``; the endpoints are
    never evaluated, so they may be poles.
    """
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(width, 4 * np.finfo(float).eps * abs(mid)) or mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (sign_lo > 0):
            lo = mid
        else:
            hi = mid
    raise NumericalError(f"bisection did not converge on ({lo!r}, {hi!r})")


@dataclass(frozen=True, eq=False)
class OmegaPsi:
    """omega/psi pair of a symmetric matrix.

    ``poles`` are the omega poles ``-alpha-2`` (descending) and ``zeros`` the
    omega zeros ``lambda_1 > ... > lambda_k``. ``lambda_star`` is the largest
    zero, or ``-inf`` when every main eigenvalue equals -2.
    """

    n: int
    main: MainEigenvalues
    spectrum: SpectralData
    alphas: tuple[float, ...]
    weights: tuple[float, ...]
    constant: float
    poles: tuple[float, ...]
    zeros: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.alphas)

    @property
    def lambda_star(self) -> float:
        return self.zeros[0] if self.zeros else -math.inf

    # -- construction --------------------------------------------------------

    @classmethod
    def from_matrix(cls, a, group_tol: float = DEFAULT_GROUP_TOL,
                    main_tol: float = DEFAULT_MAIN_TOL) -> "OmegaPsi":
        sd = spectral_data(a, group_tol)
        main = main_eigenvalues(sd, main_tol)
        pairs = main.without_minus_two()
        alphas = tuple(a_ for a_, _ in pairs)
        weights = tuple(w for _, w in pairs)
        op = cls(
            n=sd.n,
            main=main,
            spectrum=sd,
            alphas=alphas,
            weights=weights,
            constant=1.0 + main.minus_two_weight,
            poles=tuple(sorted((-a_ - 2.0 for a_ in alphas), reverse=True)),
            zeros=(),
        )
        object.__setattr__(op, "zeros", tuple(omega_zeros(op)))
        return op

    @classmethod
    def from_graph(cls, h: Graph, group_tol: float = DEFAULT_GROUP_TOL,
                   main_tol: float = DEFAULT_MAIN_TOL) -> "OmegaPsi":
        if h.n < 1:
            raise PreconditionError("omega function needs a graph with at least one vertex")
        return cls.from_matrix(h.adjacency(), group_tol, main_tol)

    # -- evaluation ----------------------------------------------------------

    def omega(self, lam: float) -> float:
        return omega_eval(self, lam)

    def psi(self, lam: float) -> float:
        return psi_eval(self, lam)

    def psi_prime(self, lam: float) -> float:
        return psi_derivative(self, lam)

    def psi_inv(self, target: float) -> float:
        return psi_star_inverse(self, target)

    def omega_matrix_form(self, a, lam: float) -> float:
        """``1 + lam <1, (A + 2 + lam)^{-1} 1>`` by a linear solve; a cross-check only."""
        a = np.asarray(a, dtype=float)
        ones = np.ones(a.shape[0])
        x = np.linalg.solve(a + (2.0 + lam) * np.eye(a.shape[0]), ones)
        return 1.0 + lam * float(ones @ x)

    def brackets(self) -> list[tuple[float, float]]:
        """Intervals ``(-alpha_{i+1}-2, -alpha_i-2)`` holding one zero each, rightmost first."""
        asc = sorted(set(self.alphas) | {-2.0})
        return [(-asc[i + 1] - 2.0, -asc[i] - 2.0) for i in range(len(asc) - 1)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "main_eigenvalues": list(self.main.values),
            "weights": list(self.main.weights),
            "poles": list(self.poles),
            "zeros": list(self.zeros),
            "lambda_star": None if not self.zeros else self.lambda_star,
        }


def omega_eval(op: OmegaPsi, lam: float) -> float:
    for p in op.poles:
        if abs(lam - p) <= POLE_TOL * max(1.0, abs(p)):
            raise PoleError(f"omega has a pole at {p!r}")
    total = op.constant
    for a, w in zip(op.alphas, op.weights):
        total += lam * w / (a + 2.0 + lam)
    return total


def _numerator(op: OmegaPsi, lam: float) -> float:
    """omega(lam) * prod(alpha + 2 + lam): the polynomial p with leading coefficient n + 1."""
    shifts = [a + 2.0 + lam for a in op.alphas]
    total = op.constant * math.prod(shifts)
    for i, w in enumerate(op.weights):
        total += lam * w * math.prod(s for j, s in enumerate(shifts) if j != i)
    return total


def omega_zeros(op: OmegaPsi) -> list[float]:
    """All zeros of omega, descending, one per interlacing bracket.

    The orientation of each bracket comes from the one-sided limits at the
    poles: for alpha + 2 > 0, omega -> -inf just right of -alpha-2 and +inf
    just left; the signs flip for alpha + 2 < 0. An endpoint at 0 (from
    alpha = -2) has omega(0) = 1 + w_{-2} > 0.
    """
    if op.k == 0:
        return []
    asc = sorted(set(op.alphas) | {-2.0})
    zeros = []
    for i in range(len(asc) - 1):
        a_lo, a_hi = asc[i], asc[i + 1]
        left, right = -a_hi - 2.0, -a_lo - 2.0
        if right - left <= ROOT_TOL:
            raise NumericalError(
                f"degenerate bracket ({left!r}, {right!r}): main eigenvalues {a_lo!r} and {a_hi!r} nearly coincide"
            )
        if a_hi == -2.0:
            sign_left = 1
        else:
            sign_left = -1 if a_hi + 2.0 > 0 else 1
        zeros.append(_bisect(lambda x: omega_eval(op, x), left, right, sign_left))
    zeros.sort(reverse=True)
    if any(z1 <= z2 for z1, z2 in zip(zeros, zeros[1:])):
        raise NumericalError(f"omega zeros are not strictly descending: {zeros!r}")
    return zeros


def psi_eval(op: OmegaPsi, lam: float) -> float:
    """psi via the cleared-denominator form, finite (and zero) at the omega poles."""
    if op.k == 0:
        return lam / op.constant
    for z in op.zeros:
        if abs(lam - z) <= POLE_TOL * max(1.0, abs(z)):
            raise PoleError(f"psi has a pole at the omega zero {z!r}")
    num = lam * math.prod(a + 2.0 + lam for a in op.alphas)
    return num / _numerator(op, lam)


def psi_derivative(op: OmegaPsi, lam: float) -> float:
    """d psi / d lam = (1 + w_{-2} + lam^2 sum w/(alpha+2+lam)^2) / omega^2."""
    om = omega_eval(op, lam)
    s = sum(w / (a + 2.0 + lam) ** 2 for a, w in zip(op.alphas, op.weights))
    return (op.constant + lam * lam * s) / (om * om)


def psi_star_inverse(op: OmegaPsi, target: float) -> float:
    """Largest solution of psi(lam) = target, i.e. the inverse of psi on (lambda_star, inf).

    Safeguarded Newton inside a bisection bracket. The bracket starts at
    ``lambda_star + 10*ROOT_TOL`` and ``lambda_star + 1``, the upper end
    doubling its offset until psi exceeds the target.
    """
    target = float(target)
    if not math.isfinite(target):
        raise PreconditionError("psi inverse needs a finite target")
    if op.k == 0:
        return target * op.constant

    ls = op.lambda_star
    off = 10 * ROOT_TOL * max(1.0, abs(ls))
    lo = ls + off
    while psi_eval(op, lo) > target:
        off /= 2
        if off <= 2 * POLE_TOL * max(1.0, abs(ls)):
            raise NumericalError(f"cannot bracket psi inverse for target {target!r} near lambda_star")
        lo = ls + off
    step = 1.0
    hi = ls + step
    while psi_eval(op, hi) < target:
        lo = hi
        step *= 2
        hi = ls + step
        if step > 1e300:
            raise NumericalError(f"psi inverse upper bracket diverged for target {target!r}")

    x = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        fx = psi_eval(op, x) - target
        if fx == 0:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(x)):
            return 0.5 * (lo + hi)
        newton = None
        if all(abs(x - p) > 1e-6 * max(1.0, abs(p)) for p in op.poles):
            d = psi_derivative(op, x)
            if d > 0 and math.isfinite(d):
                newton = x - fx / d
        if newton is not None and lo < newton < hi:
            if abs(newton - x) <= 1e-15 * max(1.0, abs(x)):
                return newton
            x = newton
        else:
            x = 0.5 * (lo + hi)
    raise NumericalError(f"psi inverse did not converge for target {target!r}")


def psi_inverse_regular_closed_form(n: int, kappa: int, target: float) -> float:
    """Largest root of lam^2 - b lam - (kappa+2) t = 0 with b = (n+1) t - (kappa+2).

    This is the psi inverse for a kappa-regular graph on n vertices. The
    discriminant is positive for every real target; the root is computed in
    the cancellation-free form.
    """
    if n < 1 or kappa < 0 or kappa >= n:
        raise PreconditionError(f"no {kappa}-regular graph on {n} vertices")
    t = float(target)
    c = kappa + 2.0
    b = (n + 1) * t - c
    disc = b * b + 4.0 * c * t
    if disc < 0:
        raise NumericalError(f"negative discriminant {disc!r} for target {t!r}")
    root = math.sqrt(disc)
    if b >= 0:
        return 0.5 * (b + root)
    # product of the two roots is -c*t
    return -2.0 * c * t / (b - root)
