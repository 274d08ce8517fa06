"""Fourier symbols of the transformed Laplacians on the integer chain.

After the Fourier transform of square-summable sequences, each operator
acts as multiplication by an even function ell(q) on [-pi, pi] with
ell(0) = 0 and ell(q) > 0 elsewhere.  Closed forms are used throughout;
the defining series survive only as test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma as _gamma, gammaln as _gammaln

from .operators import Factorial, FractionalPower, Laplace, Mellin, PureK

__all__ = [
    "Multiplier",
    "zeta_real",
    "ell_k",
    "ell_laplace",
    "ell_factorial",
    "ell_mellin",
    "ell_fractional",
    "multiplier",
    "small_q_constants",
    "coefficient_series_sum",
    "transformed_action_on_e0",
]


# ---------------------------------------------------------------------------
# Riemann zeta on the real line

# Bernoulli numbers B_2, B_4, ..., B_24
_BERNOULLI = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
)


def _zeta_euler_maclaurin(x, n=24):
    # valid for real x > -1 away from the pole at 1
    acc = sum(k ** (-x) for k in range(1, n))
    acc += 0.5 * n ** (-x)
    acc += n ** (1.0 - x) / (x - 1.0)
    # correction terms B_2j/(2j)! * x(x+1)...(x+2j-2) * n^(-x-2j+1)
    fact = 1.0
    rising = 1.0
    for j, b in enumerate(_BERNOULLI, start=1):
        fact *= (2 * j - 1) * (2 * j)
        rising *= (x + 2 * j - 3) * (x + 2 * j - 2) if j > 1 else x
        acc += b / fact * rising * n ** (-x - 2 * j + 1)
    return acc


def zeta_real(x: float) -> float:
    """Riemann zeta at a real argument x != 1.

    Euler-Maclaurin summation for x > -1; more negative arguments go
    through the reflection formula
    zeta(1-y) = 2 (2 pi)^(-y) cos(pi y / 2) Gamma(y) zeta(y),
    evaluated in log space so large y cannot overflow.
    """
    x = float(x)
    if x == 1.0:
        raise ValueError("zeta has a pole at 1")
    if x == 0.0:
        return -0.5
    if x > 50.0:
        return 1.0 + 2.0 ** (-x) + 3.0 ** (-x) + 4.0 ** (-x)
    if x > -1.0:
        return _zeta_euler_maclaurin(x)
    y = 1.0 - x
    c = math.cos(math.pi * y / 2.0)
    if c == 0.0:
        return 0.0
    mag = (
        math.log(2.0)
        - y * math.log(2.0 * math.pi)
        + float(_gammaln(y))
        + math.log(abs(c))
        + math.log(zeta_real(y))
    )
    return math.copysign(math.exp(mag), c)


# ---------------------------------------------------------------------------
# chain symbols


def ell_k(k: int, q):
    """Symbol of the distance-k Laplacian: 2 (1 - cos(k q))."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return 2.0 * (1.0 - np.cos(k * np.asarray(q, dtype=float)))


def ell_laplace(lam: float, q):
    """Closed form of sum_k exp(-lam k) ell_k(q), lam > 0."""
    if not lam > 0:
        raise ValueError("lam must be > 0")
    q = np.asarray(q, dtype=float)
    el = math.exp(lam)
    return (el + 1.0) * (1.0 - np.cos(q)) / ((el - 1.0) * (math.cosh(lam) - np.cos(q)))


def ell_factorial(z: float, q):
    """Closed form of sum_k z^k/k! ell_k(q), z >= 0."""
    if z < 0:
        raise ValueError("z must be >= 0")
    q = np.asarray(q, dtype=float)
    return 2.0 * (math.exp(z) - np.exp(z * np.cos(q)) * np.cos(z * np.sin(q)))


@lru_cache(maxsize=256)
def _mellin_setup(s):
    # singular prefactor and even-power series coefficients of the
    # small-q expansion; converges for |q| < 2 pi
    c_s = -math.pi / (_gamma(s) * math.cos(math.pi * s / 2.0))
    coeffs = []
    fact = 1.0
    for l in range(1, 81):
        fact *= (2 * l - 1) * (2 * l)
        coeffs.append(-zeta_real(s - 2 * l) * 2.0 * (-1.0) ** l / fact)
    return c_s, tuple(coeffs)


def ell_mellin(s: float, q):
    """Symbol of the power-law transform sum_k k^(-s) ell_k(q).

    Evaluated as c_s |q|^(s-1) plus an even power series with zeta
    coefficients (term ratio ~ (q/2pi)^2 per step, cut at 1e-16 relative,
    hard cap 80 terms).  Needs s > 1 with s != 3 and s not an odd integer.
    """
    Mellin(s)  # parameter validation
    q = np.abs(np.asarray(q, dtype=float))
    c_s, coeffs = _mellin_setup(float(s))
    out = c_s * q ** (s - 1.0)
    q2 = q * q
    power = np.ones_like(q)
    for c in coeffs:
        power = power * q2
        term = c * power
        out = out + term
        if np.all(np.abs(term) <= 1e-16 * np.abs(out) + 5e-324):
            break
    return out


def ell_fractional(c: float, a: float, q):
    """Symbol c * (2 (1 - cos q))^a of the fractional-power operator."""
    FractionalPower(c, a)  # parameter validation
    q = np.asarray(q, dtype=float)
    return c * (2.0 * (1.0 - np.cos(q))) ** a


def small_q_constants(spec):
    """(alpha, coeff) with ell(q) ~ coeff * |q|^alpha as q -> 0."""
    if isinstance(spec, PureK):
        return 2.0, float(spec.k) ** 2
    if isinstance(spec, Laplace):
        el = math.exp(spec.lam)
        return 2.0, el * (el + 1.0) / (el - 1.0) ** 3
    if isinstance(spec, Factorial):
        z = spec.z
        return 2.0, z * (z + 1.0) * math.exp(z)
    if isinstance(spec, Mellin):
        s = spec.s
        if s < 3.0:
            c_s, _ = _mellin_setup(float(s))
            return s - 1.0, c_s
        return 2.0, zeta_real(s - 2.0)
    if isinstance(spec, FractionalPower):
        return 2.0 * spec.a, spec.c
    raise ValueError(f"unsupported spec {spec!r}")


@dataclass(frozen=True)
class Multiplier:
    """Evaluatable chain symbol with its small-wavenumber behaviour.

    `eval` accepts scalars or arrays on [-pi, pi]; evaluation is pure, so
    instances are safe to share across threads.  `smoothness` is
    "analytic" when the symbol is a power series in q^2 near 0 and
    "cusp" when the leading |q|^alpha exponent falls below 2.
    """

    spec: object
    eval: object
    small_q_exponent: float
    small_q_coeff: float
    smoothness: str

    def __call__(self, q):
        return self.eval(q)


def multiplier(spec) -> Multiplier:
    """Build the chain symbol for a transform spec."""
    if isinstance(spec, PureK):
        k = spec.k
        fn = lambda q: ell_k(k, q)
    elif isinstance(spec, Laplace):
        lam = spec.lam
        fn = lambda q: ell_laplace(lam, q)
    elif isinstance(spec, Factorial):
        z = spec.z
        fn = lambda q: ell_factorial(z, q)
    elif isinstance(spec, Mellin):
        s = spec.s
        fn = lambda q: ell_mellin(s, q)
    elif isinstance(spec, FractionalPower):
        c, a = spec.c, spec.a
        fn = lambda q: ell_fractional(c, a, q)
    else:
        raise ValueError(f"unsupported spec {spec!r}")
    alpha, coeff = small_q_constants(spec)
    smooth = "cusp" if alpha < 2.0 else "analytic"
    return Multiplier(spec=spec, eval=fn, small_q_exponent=alpha, small_q_coeff=coeff, smoothness=smooth)


# ---------------------------------------------------------------------------
# action on a point mass


def coefficient_series_sum(spec) -> float:
    """Closed form of sum_{k>=1} c_k for the series transforms."""
    if isinstance(spec, PureK):
        return 1.0
    if isinstance(spec, Laplace):
        return 1.0 / (math.exp(spec.lam) - 1.0)
    if isinstance(spec, Factorial):
        return math.exp(spec.z) - 1.0
    if isinstance(spec, Mellin):
        return zeta_real(spec.s)
    raise ValueError(f"{type(spec).__name__} has no coefficient series")


def transformed_action_on_e0(spec, n: int) -> float:
    """Entry n of the transformed operator applied to a unit mass at 0.

    Returns 2 * sum_k c_k at the center and the hop weight c_|n| away
    from it.  Off-center values follow the positive (weight-magnitude)
    convention; in the operator matrix itself they enter with a minus
    sign.
    """
    if not isinstance(spec, (Laplace, Factorial, Mellin)):
        raise ValueError("no closed form: spec must be Laplace, Factorial or Mellin")
    n = abs(int(n))
    if n == 0:
        return 2.0 * coefficient_series_sum(spec)
    from .operators import coefficient

    return coefficient(spec, n)
