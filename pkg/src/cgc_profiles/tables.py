"""
Registry of the closed-form profile rows.

Every row maps (κ, rotation, regime, branch) to the Jacobi shape of r, its
amplitude and argument scale 𝒜, the Möbius relation between the row parameter
and the integration constant C, and the admissible parameter interval.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import RegimeError
from .space import Branch, Regime, Rotation, SpaceForm, regime_for


class Shape(Enum):
    CN = "cn"
    DN = "dn"
    CD = "cd"
    SC = "sc"
    NC = "nc"
    DC = "dc"
    CONST = "const"


Mobius = tuple[float, float, float, float]


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".6g")


@dataclass(frozen=True)
class ParamInterval:
    """Interval of a row parameter (``name`` is "p" or "C")."""

    name: str
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, x: float, tol: float = 1e-12) -> bool:
        slack = tol * (1.0 + abs(x))
        above = x >= self.lo - slack if self.lo_closed else x > self.lo
        below = x <= self.hi + slack if self.hi_closed else x < self.hi
        return above and below

    def interior(self, n: int) -> np.ndarray:
        """n points strictly inside the interval, away from the endpoints."""
        lo, hi = self.lo, self.hi
        if math.isinf(lo) and math.isinf(hi):
            lo, hi = -3.0, 3.0
        elif math.isinf(hi):
            hi = lo + 3.0
        elif math.isinf(lo):
            lo = hi - 3.0
        return lo + (hi - lo) * np.linspace(0.05, 0.95, n)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{self.name} in {left}{_fmt(self.lo)},{_fmt(self.hi)}{right}"


@dataclass(frozen=True)
class Row:
    """One table row: r(s) = amp·f(𝒜s) for the Jacobi shape f."""

    label: str
    shape: Shape
    interval: Callable[[float], ParamInterval]
    amp2: Callable[[float, float, float], float]
    scale2: Callable[[float, float, float], float]
    modulus: Callable[[float, float], float]
    mobius: Optional[Callable[[float], Mobius]] = None
    free: str = "p"

    def c_of(self, K: float, param: float) -> float:
        if self.free == "C":
            return param
        if self.mobius is None:
            return 0.0
        alpha, beta, gamma, delta = self.mobius(K)
        p2 = param * param
        numerator, denominator = alpha * p2 + beta, gamma * p2 + delta
        if denominator == 0.0:
            return math.copysign(math.inf, numerator) if numerator else math.nan
        return numerator / denominator


# =============================================================================
# ROW HELPERS
# =============================================================================

def _unit(name: str = "p") -> Callable[[float], ParamInterval]:
    return lambda K: ParamInterval(name, 0.0, 1.0)


def _open_unit(K: float) -> ParamInterval:
    return ParamInterval("p", 0.0, 1.0, False, False)


def _positive(name: str) -> Callable[[float], ParamInterval]:
    return lambda K: ParamInterval(name, 0.0, math.inf, False, False)


def _negative_C(K: float) -> ParamInterval:
    return ParamInterval("C", -math.inf, 0.0, False, False)


def _p(K: float, p: float) -> float:
    return p


def _q2(p: float) -> float:
    return (1.0 - p) * (1.0 + p)


# =============================================================================
# ROWS
# =============================================================================

# Maps (kappa, rotation, regime, branch) to its row
_ROWS: dict[tuple[int, Rotation, Regime, Branch], Row] = {
    # --- S³ -------------------------------------------------------------------
    (1, Rotation.ELLIPTIC, Regime.K_BELOW_MINUS_ONE, Branch.CN): Row(
        label="s3 elliptic, K<-1, cn",
        shape=Shape.CN,
        interval=_unit(),
        amp2=lambda K, p, C: p * p / (p * p - (K + 1)),
        scale2=lambda K, p, C: K * (K + 1) / (p * p - (K + 1)),
        modulus=_p,
        mobius=lambda K: (K + 1, -(K + 1), 1.0, -(K + 1)),
    ),
    (1, Rotation.ELLIPTIC, Regime.K_BELOW_MINUS_ONE, Branch.DN): Row(
        label="s3 elliptic, K<-1, dn",
        shape=Shape.DN,
        interval=_unit(),
        amp2=lambda K, p, C: 1.0 / (1 - (K + 1) * p * p),
        scale2=lambda K, p, C: K * (K + 1) / (1 - (K + 1) * p * p),
        modulus=_p,
        mobius=lambda K: (-(K + 1), K + 1, -(K + 1), 1.0),
    ),
    (1, Rotation.ELLIPTIC, Regime.K_MINUS_ONE, Branch.TRIG): Row(
        label="s3 elliptic, K=-1, flat front r = q·cos(ps)",
        shape=Shape.CN,
        interval=_open_unit,
        amp2=lambda K, p, C: _q2(p),
        scale2=lambda K, p, C: p * p,
        modulus=lambda K, p: 0.0,
        mobius=lambda K: (1.0, 0.0, 0.0, 1.0),
    ),
    (1, Rotation.ELLIPTIC, Regime.K_MINUS_ONE, Branch.CLIFFORD): Row(
        label="Clifford torus, K=-1, C=0, r = r0 (p is r0)",
        shape=Shape.CONST,
        interval=_open_unit,
        amp2=lambda K, p, C: p * p,
        scale2=lambda K, p, C: 1.0,
        modulus=lambda K, p: 0.0,
    ),
    (1, Rotation.ELLIPTIC, Regime.K_MINUS_ONE_TO_ZERO, Branch.CD1): Row(
        label="s3 elliptic, -1<K<0, cd (first row)",
        shape=Shape.CD,
        interval=_unit(),
        amp2=lambda K, p, C: p * p / ((K + 1) * p * p - K),
        scale2=lambda K, p, C: -K * (K + 1) / ((K + 1) * p * p - K),
        modulus=_p,
        mobius=lambda K: (K + 1, 0.0, K + 1, -K),
    ),
    (1, Rotation.ELLIPTIC, Regime.K_MINUS_ONE_TO_ZERO, Branch.CD2): Row(
        label="s3 elliptic, -1<K<0, cd (second row)",
        shape=Shape.CD,
        interval=_unit(),
        amp2=lambda K, p, C: p * p / (K + 1 - K * p * p),
        scale2=lambda K, p, C: -K * (K + 1) / (K + 1 - K * p * p),
        modulus=_p,
        mobius=lambda K: (0.0, K + 1, -K, K + 1),
    ),
    (1, Rotation.ELLIPTIC, Regime.K_POSITIVE, Branch.CN): Row(
        label="s3 elliptic, K>0, cn",
        shape=Shape.CN,
        interval=_unit(),
        amp2=lambda K, p, C: p * p / (K + p * p),
        scale2=lambda K, p, C: K * (K + 1) / (K + p * p),
        modulus=_p,
        mobius=lambda K: (K + 1, 0.0, 1.0, K),
    ),
    (1, Rotation.ELLIPTIC, Regime.K_POSITIVE, Branch.DN): Row(
        label="s3 elliptic, K>0, dn",
        shape=Shape.DN,
        interval=_unit(),
        amp2=lambda K, p, C: 1.0 / (K * p * p + 1),
        scale2=lambda K, p, C: K * (K + 1) / (K * p * p + 1),
        modulus=_p,
        mobius=lambda K: (0.0, K + 1, K, 1.0),
    ),
    # --- H³, elliptic rotation ------------------------------------------------
    (-1, Rotation.ELLIPTIC, Regime.K_NEGATIVE, Branch.CN): Row(
        label="h3 elliptic, K<0, cn",
        shape=Shape.CN,
        interval=_unit(),
        amp2=lambda K, p, C: p * p / (1 - K - p * p),
        scale2=lambda K, p, C: K * (K - 1) / (1 - K - p * p),
        modulus=_p,
        mobius=lambda K: (-(1 - K), 1 - K, -1.0, 1 - K),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_NEGATIVE, Branch.DN): Row(
        label="h3 elliptic, K<0, dn",
        shape=Shape.DN,
        interval=lambda K: ParamInterval("p", math.sqrt(1 / (1 - K)), 1.0),
        amp2=lambda K, p, C: 1.0 / ((1 - K) * p * p - 1),
        scale2=lambda K, p, C: K * (K - 1) / ((1 - K) * p * p - 1),
        modulus=_p,
        mobius=lambda K: (1 - K, -(1 - K), 1 - K, -1.0),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ZERO_TO_ONE, Branch.NC1): Row(
        label="h3 elliptic, 0<K<1, nc (first row)",
        shape=Shape.NC,
        interval=lambda K: ParamInterval("p", math.sqrt(1 - K), 1.0),
        amp2=lambda K, p, C: _q2(p) / (K - 1 + p * p),
        scale2=lambda K, p, C: K * (1 - K) / (K - 1 + p * p),
        modulus=_p,
        mobius=lambda K: (1 - K, -(1 - K), 1.0, -(1 - K)),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ZERO_TO_ONE, Branch.SC1): Row(
        label="h3 elliptic, 0<K<1, sc (first row)",
        shape=Shape.SC,
        interval=_unit(),
        amp2=lambda K, p, C: _q2(p) / (1 + p * p * (K - 1)),
        scale2=lambda K, p, C: K * (1 - K) / (1 + p * p * (K - 1)),
        modulus=_p,
        mobius=lambda K: (-(1 - K), 1 - K, -(1 - K), 1.0),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ZERO_TO_ONE, Branch.SC2): Row(
        label="h3 elliptic, 0<K<1, sc (second row)",
        shape=Shape.SC,
        interval=_unit(),
        amp2=lambda K, p, C: _q2(p) / (1 - K * p * p),
        scale2=lambda K, p, C: K * (1 - K) / (1 - K * p * p),
        modulus=_p,
        mobius=lambda K: (0.0, 1 - K, -K, 1.0),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ZERO_TO_ONE, Branch.NC2): Row(
        label="h3 elliptic, 0<K<1, nc (second row)",
        shape=Shape.NC,
        interval=lambda K: ParamInterval("p", math.sqrt(K), 1.0),
        amp2=lambda K, p, C: _q2(p) / (p * p - K),
        scale2=lambda K, p, C: K * (1 - K) / (p * p - K),
        modulus=_p,
        mobius=lambda K: (1 - K, 0.0, 1.0, -K),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ONE, Branch.SNOWMAN): Row(
        label="Snowman front, K=1, r = (q/p)·cosh(s/p)",
        shape=Shape.NC,
        interval=_open_unit,
        amp2=lambda K, p, C: _q2(p) / (p * p),
        scale2=lambda K, p, C: 1.0 / (p * p),
        modulus=lambda K, p: 1.0,
        mobius=lambda K: (0.0, 1.0, 1.0, 0.0),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ONE, Branch.HOURGLASS): Row(
        label="Hourglass front, K=1, r = q·sinh(ps)",
        shape=Shape.SC,
        interval=_open_unit,
        amp2=lambda K, p, C: _q2(p),
        scale2=lambda K, p, C: p * p,
        modulus=lambda K, p: 1.0,
        mobius=lambda K: (1.0, 0.0, 0.0, 1.0),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ABOVE_ONE, Branch.CN): Row(
        label="h3 elliptic, K>1, cn",
        shape=Shape.CN,
        interval=_unit(),
        amp2=lambda K, p, C: p * p / (K - p * p),
        scale2=lambda K, p, C: K * (K - 1) / (K - p * p),
        modulus=_p,
        mobius=lambda K: (K - 1, 0.0, -1.0, K),
    ),
    (-1, Rotation.ELLIPTIC, Regime.K_ABOVE_ONE, Branch.DN): Row(
        label="h3 elliptic, K>1, dn",
        shape=Shape.DN,
        interval=lambda K: ParamInterval("p", math.sqrt(1 / K), 1.0),
        amp2=lambda K, p, C: 1.0 / (K * p * p - 1),
        scale2=lambda K, p, C: K * (K - 1) / (K * p * p - 1),
        modulus=_p,
        mobius=lambda K: (0.0, K - 1, K, -1.0),
    ),
    # --- H³, hyperbolic rotation (r² >= 1) -------------------------------------
    (-1, Rotation.HYPERBOLIC, Regime.K_NEGATIVE, Branch.DN): Row(
        label="h3 hyperbolic, K<0, dn",
        shape=Shape.DN,
        interval=lambda K: ParamInterval("p", 0.0, math.sqrt(1 / (1 - K))),
        amp2=lambda K, p, C: 1.0 / (1 + (K - 1) * p * p),
        scale2=lambda K, p, C: K * (K - 1) / (1 + (K - 1) * p * p),
        modulus=_p,
        mobius=lambda K: (-(1 - K), 1 - K, K - 1, 1.0),
    ),
    (-1, Rotation.HYPERBOLIC, Regime.K_ZERO_TO_ONE, Branch.NC1): Row(
        label="h3 hyperbolic, 0<K<1, nc (first row)",
        shape=Shape.NC,
        interval=lambda K: ParamInterval("p", 0.0, math.sqrt(K)),
        amp2=lambda K, p, C: _q2(p) / (K - p * p),
        scale2=lambda K, p, C: K * (1 - K) / (K - p * p),
        modulus=_p,
        mobius=lambda K: (-(1 - K), 0.0, -1.0, K),
    ),
    (-1, Rotation.HYPERBOLIC, Regime.K_ZERO_TO_ONE, Branch.DC1): Row(
        label="h3 hyperbolic, 0<K<1, dc (first row)",
        shape=Shape.DC,
        interval=_unit(),
        amp2=lambda K, p, C: 1.0 / (K + (1 - K) * p * p),
        scale2=lambda K, p, C: K * (1 - K) / (K + (1 - K) * p * p),
        modulus=_p,
        mobius=lambda K: (1 - K, 0.0, 1 - K, K),
    ),
    (-1, Rotation.HYPERBOLIC, Regime.K_ZERO_TO_ONE, Branch.DC2): Row(
        label="h3 hyperbolic, 0<K<1, dc (second row)",
        shape=Shape.DC,
        interval=_unit(),
        amp2=lambda K, p, C: 1.0 / (1 - K + K * p * p),
        scale2=lambda K, p, C: K * (1 - K) / (1 - K + K * p * p),
        modulus=_p,
        mobius=lambda K: (0.0, 1 - K, K, 1 - K),
    ),
    (-1, Rotation.HYPERBOLIC, Regime.K_ZERO_TO_ONE, Branch.NC2): Row(
        label="h3 hyperbolic, 0<K<1, nc (second row)",
        shape=Shape.NC,
        interval=lambda K: ParamInterval("p", 0.0, math.sqrt(1 - K)),
        amp2=lambda K, p, C: _q2(p) / (1 - K - p * p),
        scale2=lambda K, p, C: K * (1 - K) / (1 - K - p * p),
        modulus=_p,
        mobius=lambda K: (-(1 - K), 1 - K, -1.0, 1 - K),
    ),
    (-1, Rotation.HYPERBOLIC, Regime.K_ONE, Branch.PEACH): Row(
        label="Peach front, K=1, r = sqrt(1+p²)·cosh(ps)",
        shape=Shape.NC,
        interval=_positive("p"),
        amp2=lambda K, p, C: 1 + p * p,
        scale2=lambda K, p, C: p * p,
        modulus=lambda K, p: 1.0,
        mobius=lambda K: (-1.0, 0.0, 0.0, 1.0),
    ),
    (-1, Rotation.HYPERBOLIC, Regime.K_ABOVE_ONE, Branch.DN): Row(
        label="h3 hyperbolic, K>1, dn",
        shape=Shape.DN,
        interval=lambda K: ParamInterval("p", 0.0, math.sqrt(1 / K)),
        amp2=lambda K, p, C: 1.0 / (1 - K * p * p),
        scale2=lambda K, p, C: K * (K - 1) / (1 - K * p * p),
        modulus=_p,
        mobius=lambda K: (0.0, 1 - K, -K, 1.0),
    ),
    # --- H³, parabolic rotation (C free, modulus fixed by K) --------------------
    (-1, Rotation.PARABOLIC, Regime.K_NEGATIVE, Branch.DN): Row(
        label="h3 parabolic, K<0, dn, p = sqrt(1/(1-K))",
        shape=Shape.DN,
        interval=_negative_C,
        amp2=lambda K, p, C: C / K,
        scale2=lambda K, p, C: (K - 1) * C,
        modulus=lambda K, p: math.sqrt(1 / (1 - K)),
        free="C",
    ),
    (-1, Rotation.PARABOLIC, Regime.K_ZERO_TO_ONE, Branch.NC1): Row(
        label="h3 parabolic, 0<K<1, nc (first row), p = sqrt(1-K)",
        shape=Shape.NC,
        interval=_negative_C,
        amp2=lambda K, p, C: C / (K - 1),
        scale2=lambda K, p, C: -C,
        modulus=lambda K, p: math.sqrt(1 - K),
        free="C",
    ),
    (-1, Rotation.PARABOLIC, Regime.K_ZERO_TO_ONE, Branch.NC2): Row(
        label="h3 parabolic, 0<K<1, nc (second row), p = sqrt(K)",
        shape=Shape.NC,
        interval=_positive("C"),
        amp2=lambda K, p, C: C / K,
        scale2=lambda K, p, C: C,
        modulus=lambda K, p: math.sqrt(K),
        free="C",
    ),
    (-1, Rotation.PARABOLIC, Regime.K_ONE, Branch.COSH): Row(
        label="h3 parabolic, K=1, r = p·cosh(ps)",
        shape=Shape.NC,
        interval=_positive("p"),
        amp2=lambda K, p, C: p * p,
        scale2=lambda K, p, C: p * p,
        modulus=lambda K, p: 1.0,
        mobius=lambda K: (1.0, 0.0, 0.0, 1.0),
    ),
    (-1, Rotation.PARABOLIC, Regime.K_ABOVE_ONE, Branch.DN): Row(
        label="h3 parabolic, K>1, dn, p = sqrt(1/K)",
        shape=Shape.DN,
        interval=_positive("C"),
        amp2=lambda K, p, C: C / (K - 1),
        scale2=lambda K, p, C: K * C,
        modulus=lambda K, p: math.sqrt(1 / K),
        free="C",
    ),
}


# =============================================================================
# LOOKUP
# =============================================================================

def rows_for(space: SpaceForm, K: float) -> list[tuple[Branch, Row]]:
    """All rows valid for (space, K), in table order."""
    if space.kappa == 0:
        raise RegimeError("Euclidean profiles are not tabulated; generate them with integrate_ode")
    regime = regime_for(space, K)
    found = [
        (branch, row)
        for (kappa, rotation, row_regime, branch), row in _ROWS.items()
        if kappa == space.kappa and rotation is space.rotation and row_regime is regime
    ]
    if not found:
        raise RegimeError(f"No closed-form rows for {space} with K={K!r}")
    return found


def lookup(space: SpaceForm, regime: Regime, branch: Branch) -> Row:
    try:
        return _ROWS[(space.kappa, space.rotation, regime, branch)]
    except KeyError:
        valid = [b.value for (k, rot, reg, b) in _ROWS if k == space.kappa and rot is space.rotation and reg is regime]
        raise RegimeError(
            f"Branch {branch.value!r} does not exist for {space} in regime {regime.value}. Valid branches: {valid}"
        )


def all_rows() -> list[tuple[tuple[int, Rotation, Regime, Branch], Row]]:
    return list(_ROWS.items())


# =============================================================================
# C BOUNDS
# =============================================================================

def c_bounds(space: SpaceForm, K: float) -> ParamInterval:
    """Admissible integration constants C for (space, K)."""
    regime = regime_for(space, K)
    inf = math.inf
    if space.kappa == 1:
        if regime is Regime.K_POSITIVE:
            return ParamInterval("C", 0.0, K + 1)
        if regime is Regime.K_BELOW_MINUS_ONE:
            return ParamInterval("C", K + 1, 1.0)
        return ParamInterval("C", 0.0, 1.0)
    if space.rotation is Rotation.ELLIPTIC:
        if regime is Regime.K_NEGATIVE:
            return ParamInterval("C", -inf, 1.0, False, True)
        if regime is Regime.K_ZERO_TO_ONE:
            return ParamInterval("C", -inf, inf, False, False)
        return ParamInterval("C", 0.0, inf, True, False)
    if space.rotation is Rotation.HYPERBOLIC:
        if regime is Regime.K_NEGATIVE:
            return ParamInterval("C", 1 - K, inf, True, False)
        if regime is Regime.K_ZERO_TO_ONE:
            return ParamInterval("C", -inf, inf, False, False)
        if regime is Regime.K_ONE:
            return ParamInterval("C", -inf, 0.0, False, True)
        return ParamInterval("C", -inf, 1 - K, False, True)
    # parabolic
    if regime is Regime.K_NEGATIVE:
        return ParamInterval("C", -inf, 0.0, False, True)
    if regime is Regime.K_ZERO_TO_ONE:
        return ParamInterval("C", -inf, inf, False, False)
    return ParamInterval("C", 0.0, inf, True, False)


def bound_reason(space: SpaceForm, K: float) -> str:
    """The inequality behind c_bounds, for error messages."""
    bounds = c_bounds(space, K)
    kappa = space.kappa
    sign = "positive" if K + kappa > 0 else "negative"
    return f"{bounds} (K={K!r}, K+κ={K + kappa!r} is {sign})"
