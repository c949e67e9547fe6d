"""Jacobi elliptic functions sn, cn, dn, am and the twelve ratio functions."""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np
import scipy.special as sp
from numpy.typing import ArrayLike

from .errors import EllipticDomainError, PoleError
from .modulus import Modulus, ModulusRegime, as_modulus

# Denominators below this count as a pole of the ratio function
POLE_TOL = 1e-13

RATIO_NAMES = ("sn", "cn", "dn", "sc", "sd", "cd", "dc", "nc", "nd", "ns", "cs", "ds")


# =============================================================================
# HELPERS
# =============================================================================

@lru_cache(maxsize=512)
def _ellipk(m: float) -> float:
    return float(sp.ellipk(m))


def quarter_period(m: Modulus) -> float:
    """Real quarter period F_p; infinite at p = 1."""
    m.require_standard()
    if m.p == 0.0:
        return math.pi / 2
    if m.p == 1.0:
        return math.inf
    return _ellipk(m.m)


def as_argument(s: ArrayLike) -> np.ndarray:
    arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise EllipticDomainError("Jacobi argument must be finite")
    return arr


def scalar_or_array(x):
    """0-d results come back as numpy scalars, everything else as arrays."""
    return np.asarray(x)[()]


def first_flagged(values: np.ndarray, flags: np.ndarray) -> float:
    values, flags = np.broadcast_arrays(np.asarray(values, dtype=float), np.asarray(flags))
    return float(values[flags].flat[0])


def _nearest_zero(letter: str, m: Modulus, u: float) -> Optional[float]:
    """Nearest real zero of sn ('s') or cn ('c') at modulus m; dn has none."""
    F = quarter_period(m)
    if letter == "s":
        return 0.0 if math.isinf(F) else 2.0 * F * round(u / (2.0 * F))
    if letter == "c" and not math.isinf(F):
        return F + 2.0 * F * round((u - F) / (2.0 * F))
    return None


def reduced_amplitude(s: np.ndarray, m: Modulus, sn=None, cn=None) -> tuple[np.ndarray, np.ndarray]:
    """
    Split am_p(s) = turns·π + φ0 with φ0 in [-π/2, π/2].

    The integrals reuse this split: X(s|p) = 2·turns·X_p + X(φ0, p).
    """
    if m.p == 0.0:
        turns = np.round(s / math.pi)
        return turns, s - turns * math.pi
    if m.p == 1.0:
        return np.zeros_like(s), np.arctan(np.sinh(s))
    if sn is None or cn is None:
        sn, cn, _, _ = sp.ellipj(s, m.m)
    turns = np.round(s / (2.0 * quarter_period(m)))
    sign = np.where(turns % 2 == 0, 1.0, -1.0)
    return turns, np.arctan2(sign * sn, sign * cn)


def _ratio(letters: dict, name: str, s: np.ndarray, locate: Callable[[str, float], Optional[float]]):
    if name not in RATIO_NAMES:
        raise EllipticDomainError(f"Unknown Jacobi function {name!r}. Valid names: {list(RATIO_NAMES)}")
    num, den = name
    denominator = np.asarray(letters[den], dtype=float)
    if den != "n":
        at_pole = np.abs(denominator) < POLE_TOL
        if np.any(at_pole):
            location = first_flagged(s, at_pole)
            pole = locate(den, location)
            raise PoleError(f"{name} has a pole at s={pole!r} (evaluated at s={location!r})", location, pole)
    return scalar_or_array(np.asarray(letters[num], dtype=float) / denominator)


# =============================================================================
# EVALUATION
# =============================================================================

@dataclass(frozen=True)
class JacobiEval:
    """sn, cn, dn and the continuous amplitude am at argument s (scalars or arrays)."""

    s: Union[float, np.ndarray]
    modulus: Modulus
    sn: Union[float, np.ndarray]
    cn: Union[float, np.ndarray]
    dn: Union[float, np.ndarray]
    am: Union[float, np.ndarray]

    def ratio(self, name: str):
        """Glaisher ratio ef = e/f for e, f in {s, c, d, n}; raises PoleError at poles."""
        letters = {"s": self.sn, "c": self.cn, "d": self.dn, "n": 1.0}
        return _ratio(letters, name, np.asarray(self.s), lambda letter, u: _nearest_zero(letter, self.modulus, u))


def jacobi(s: ArrayLike, m: Union[Modulus, float]) -> JacobiEval:
    """Evaluate sn, cn, dn, am at s for p in [0,1]; exact circular/hyperbolic forms at p = 0/1."""
    m = as_modulus(m)
    if m.regime is not ModulusRegime.STANDARD:
        raise EllipticDomainError(f"jacobi() needs p in [0,1], got {m}; use jacobi_general()")
    s = as_argument(s)

    if m.p == 0.0:
        sn, cn, dn, am = np.sin(s), np.cos(s), np.ones_like(s), s.copy()
    elif m.p == 1.0:
        with np.errstate(over="ignore"):
            sech = 1.0 / np.cosh(s)
            am = np.arctan(np.sinh(s))
        sn, cn, dn = np.tanh(s), sech, sech.copy()
    else:
        sn, cn, dn, _ = sp.ellipj(s, m.m)
        turns, phi0 = reduced_amplitude(s, m, sn, cn)
        am = turns * math.pi + phi0

    return JacobiEval(
        s=scalar_or_array(s),
        modulus=m,
        sn=scalar_or_array(sn),
        cn=scalar_or_array(cn),
        dn=scalar_or_array(dn),
        am=scalar_or_array(am),
    )


def jacobi_general(s: ArrayLike, p_raw: Union[float, complex, Modulus], name: str):
    """
    Evaluate a Jacobi ratio function for any real p >= 0 or purely imaginary p.

    p > 1 uses sn_{1/P}(s) = P·sn_P(s/P), cn_{1/P} = dn_P(s/P), dn_{1/P} = cn_P(s/P);
    imaginary p uses sn_{ip}(s) = q'·sd_{p'}(s/q'), cn_{ip} = cd_{p'}(s/q'),
    dn_{ip} = nd_{p'}(s/q') with p' = p/sqrt(1+p²), q' = 1/sqrt(1+p²).
    """
    m = as_modulus(p_raw)
    s = as_argument(s)
    if m.regime is ModulusRegime.STANDARD:
        return jacobi(s, m).ratio(name)

    base = m.transformed()
    if m.regime is ModulusRegime.RECIPROCAL:
        scale = base.p
        ev = jacobi(s / scale, base)
        letters = {"s": scale * np.asarray(ev.sn), "c": ev.dn, "d": ev.cn, "n": 1.0}
        zero_of = {"s": "s", "c": None, "d": "c"}
    else:
        scale = base.q
        ev = jacobi(s / scale, base)
        dn = np.asarray(ev.dn)
        letters = {"s": scale * np.asarray(ev.sn) / dn, "c": np.asarray(ev.cn) / dn, "d": 1.0 / dn, "n": 1.0}
        zero_of = {"s": "s", "c": "c", "d": None}

    def locate(letter: str, location: float) -> Optional[float]:
        base_letter = zero_of[letter]
        if base_letter is None:
            return None
        zero = _nearest_zero(base_letter, base, location / scale)
        return None if zero is None else zero * scale

    return _ratio(letters, name, s, locate)


@dataclass(frozen=True)
class ImaginaryValue:
    """Real magnitude of a result that is purely imaginary when ``imaginary`` is set."""

    value: Union[float, np.ndarray]
    imaginary: bool

    def to_complex(self):
        return scalar_or_array(np.asarray(self.value) * (1j if self.imaginary else 1.0))


def jacobi_imaginary_argument(s: ArrayLike, m: Union[Modulus, float], name: str) -> ImaginaryValue:
    """
    Evaluate ef_p(i·s) through Jacobi's imaginary transformation.

    sn_p(is) = i·sc_q(s), cn_p(is) = nc_q(s), dn_p(is) = dc_q(s); ratios combine
    these with 1/i = -i.
    """
    m = as_modulus(m)
    m.require_standard()
    if name not in RATIO_NAMES:
        raise EllipticDomainError(f"Unknown Jacobi function {name!r}. Valid names: {list(RATIO_NAMES)}")
    s = as_argument(s)
    comp = m.complement()
    ev = jacobi(s, comp)
    sn, cn, dn = np.asarray(ev.sn), np.asarray(ev.cn), np.asarray(ev.dn)

    # letter(is) = weight / cn_q**power, times i for 's'
    weights = {"s": (sn, 1, True), "c": (1.0, 1, False), "d": (dn, 1, False), "n": (1.0, 0, False)}
    num, den = name
    w_num, pow_num, imag_num = weights[num]
    w_den, pow_den, imag_den = weights[den]
    power = pow_den - pow_num

    no_pole = np.zeros(np.shape(s), dtype=bool)
    sn_pole = np.abs(sn) < POLE_TOL if den == "s" else no_pole
    cn_pole = np.abs(cn) < POLE_TOL if power < 0 else no_pole
    if np.any(sn_pole | cn_pole):
        letter = "s" if np.any(sn_pole) else "c"
        location = first_flagged(s, sn_pole if letter == "s" else cn_pole)
        pole = _nearest_zero(letter, comp, location)
        raise PoleError(f"{name}_p(i·s) has a pole at s={pole!r} (evaluated at s={location!r})", location, pole)

    value = np.asarray(w_num) / np.asarray(w_den) * cn ** power
    sign = -1.0 if imag_den and not imag_num else 1.0
    return ImaginaryValue(value=scalar_or_array(sign * value), imaginary=imag_num != imag_den)
