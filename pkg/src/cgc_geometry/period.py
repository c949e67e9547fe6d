"""Closed profiles of the K < 0 surfaces of hyperbolic rotation: the period equation."""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import brentq

from cgc_elliptic import Modulus, complete_F, complete_Pi
from cgc_profiles import H3_HYPERBOLIC, CaseId, CaseParams, profile

from .errors import GeometryError, NoClosedCurveError

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

# Grid used to count sign changes of P(n, p) - 2π over the bracket
UNIQUENESS_GRID = 400


def _check(K: float, n: int) -> None:
    if not K < 0:
        raise GeometryError(f"The period equation needs K < 0, got K={K!r}")
    if int(n) != n or n < 1:
        raise GeometryError(f"n must be a positive integer, got {n!r}")


def p_max(K: float) -> float:
    """Upper end sqrt(1/(1-K)) of the bracket, where 𝒜 has its pole."""
    return math.sqrt(1 / (1 - K))


def _period_scalar(K: float, n: int, p: float) -> float:
    denominator = 1 + (K - 1) * p * p
    if denominator <= 0.0:
        return 0.0
    A = math.sqrt(K * (K - 1) / denominator)
    k = 1 / (1 - K)
    return 2 * n * abs(K) / A * (complete_Pi(k, p) - complete_F(p))


def period_function(K: float, n: int, p: ArrayLike) -> Union[float, np.ndarray]:
    """
    P(n, p) = (2n|K|/𝒜)·(Π^k_p - F_p), k = 1/(1-K), 𝒜 = sqrt(K(K-1)/(1+(K-1)p²)).

    This is the advance of ψ over n profile periods 2F_p/𝒜; the profile closes up
    to a rotation when P(n, p) = 2π. P vanishes at p = sqrt(1/(1-K)).
    """
    _check(K, n)
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr < 0) | (p_arr > p_max(K) * (1 + 1e-12))):
        raise GeometryError(f"p must lie in [0, {p_max(K)!r}]")
    values = np.array([_period_scalar(K, n, min(float(v), p_max(K))) for v in p_arr.ravel()])
    return values.reshape(p_arr.shape)[()]


@dataclass(frozen=True)
class PeriodSolution:
    K: float
    n: int
    p: Modulus
    residual: float
    unique: bool
    sign_changes: int

    @property
    def params(self) -> CaseParams:
        return CaseParams.build(CaseId.resolve(H3_HYPERBOLIC, self.K, "dn"), p=self.p.p)

    @property
    def profile_period(self) -> float:
        """π_p = 2F_p/𝒜."""
        params = self.params
        return 2 * complete_F(params.modulus) / params.A

    def closure_error(self, s: ArrayLike) -> tuple[float, float]:
        """max |r(s + nπ_p) - r(s)| and max |cos ψ(s + nπ_p) - cos ψ(s)|."""
        params = self.params
        s = np.asarray(s, dtype=float)
        shift = self.n * self.profile_period
        a, b = profile(params, s), profile(params, s + shift)
        return (
            float(np.max(np.abs(np.asarray(b.r) - np.asarray(a.r)))),
            float(np.max(np.abs(np.cos(b.psi) - np.cos(a.psi)))),
        )


def period_solve(K: float, n: int, xtol: float = 1e-15) -> PeriodSolution:
    """
    Root p* of P(n, p) = 2π in (0, sqrt(1/(1-K))) by bracketed Brent iteration.

    Raises NoClosedCurveError when P(n, 0) < 2π: P decreases to 0 at the right end,
    so there is no sign change to bracket.
    """
    _check(K, n)
    hi = p_max(K)

    def g(p: float) -> float:
        return _period_scalar(K, n, p) - TWO_PI

    at_zero = g(0.0) + TWO_PI
    if at_zero < TWO_PI:
        raise NoClosedCurveError(
            f"No closed profile for K={K!r}, n={n}: P(n,0) = {at_zero:.12g} < 2π "
            f"(need n >= {math.floor(TWO_PI / (at_zero / n)) + 1})",
            p_zero=at_zero,
        )

    grid = np.linspace(0.0, hi, UNIQUENESS_GRID + 1)
    values = np.array([g(p) for p in grid])
    changes = int(np.count_nonzero(np.signbit(values[1:]) != np.signbit(values[:-1])))
    logger.debug("period_solve K=%r n=%d: g(0)=%.6g, %d sign change(s) on the grid", K, n, values[0], changes)

    p_star = brentq(g, 0.0, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = abs(g(p_star))
    if changes != 1:
        logger.warning("period_solve K=%r n=%d: %d sign changes, root may not be unique", K, n, changes)
    return PeriodSolution(K=K, n=int(n), p=Modulus.from_raw(p_star), residual=residual, unique=changes == 1, sign_changes=changes)
