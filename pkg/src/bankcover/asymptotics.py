"""Large-``q`` behaviour of the coverage time, built on the standard Gumbel law.

For a bank of ``a`` alternatives the single-bank survival decays like
``e**(-rate * y)`` with ``rate = log(a / (a - 1))``.  Centring the maximum
over ``q`` banks at ``log(a * q) / rate`` traps its distribution between two
Gumbel curves one unit apart; everything in this module (sandwich envelope,
local pmf approximation, mean and variance bands) is that picture made
quantitative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .coupon import InvalidSpecError

__all__ = [
    "EULER_GAMMA",
    "GUMBEL_VARIANCE",
    "QuadratureError",
    "GumbelStd",
    "CentringData",
    "MomentBounds",
    "VarianceBoundSummary",
    "decay_rate",
    "centring",
    "gumbel_cdf",
    "sandwich_bounds",
    "local_pmf_approx",
    "mean_bounds",
    "band_second_moment",
    "exp_integral_e1",
    "variance_bounds",
    "centred_mean_prediction",
]

# Euler-Mascheroni constant, stored as a literal rather than computed.
EULER_GAMMA = 0.57721566490153286061
GUMBEL_VARIANCE = math.pi ** 2 / 6.0

_QUAD_TOL = 1e-10


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not certify the requested tolerance."""


def decay_rate(a: int) -> float:
    """Exponential rate ``log(a / (a - 1))`` of the single-bank survival tail."""
    if not isinstance(a, int):
        raise InvalidSpecError(f"a must be an integer, got {a!r}")
    if a < 2:
        raise InvalidSpecError(f"asymptotics need a >= 2, got {a}")
    return -math.log1p(-1.0 / a)


def gumbel_cdf(x: float) -> float:
    """Standard Gumbel distribution function ``exp(-e**(-x))``."""
    return math.exp(-math.exp(-x))


class GumbelStd:
    """The standard Gumbel law bundled with its moment constants."""

    MEAN = EULER_GAMMA
    VARIANCE = GUMBEL_VARIANCE

    @staticmethod
    def cdf(x: float) -> float:
        return gumbel_cdf(x)

    @staticmethod
    def pdf(x: float) -> float:
        return math.exp(-x - math.exp(-x))

    @staticmethod
    def sample(rng: np.random.Generator, size: int | None = None):
        return rng.gumbel(0.0, 1.0, size)


@dataclass(frozen=True)
class CentringData:
    """Centring of the coverage maximum for one ``(a, q)`` pair.

    ``centre_ceil`` follows the shifted convention floor + 1, so it exceeds
    ``centre`` even when the centre is an integer, and ``centre_frac`` is the
    fractional part ``centre - floor(centre)`` in ``[0, 1)``.
    """

    decay_rate: float
    centre: float
    centre_ceil: int
    centre_frac: float


def centring(a: int, q: int) -> CentringData:
    """Centring constants ``log(a * q) / rate`` for the coverage maximum."""
    rate = decay_rate(a)
    if not isinstance(q, int) or q < 1:
        raise InvalidSpecError(f"need q >= 1, got {q!r}")
    centre = math.log(a * q) / rate
    lower = math.floor(centre)
    return CentringData(rate, centre, lower + 1, centre - lower)


def sandwich_bounds(a: int, x: float) -> tuple[float, float]:
    """Limiting envelope for P(coverage maximum <= centre + x).

    Along q the probability oscillates; its liminf and limsup at lag ``x``
    are bracketed by the two Gumbel values returned here (lower first).
    """
    rate = decay_rate(a)
    return gumbel_cdf(rate * (x - 1.0)), gumbel_cdf(rate * x)


def local_pmf_approx(a: int, q: int, n: int) -> float:
    """Gumbel increment approximating P(coverage maximum = centre_ceil + n).

    The increment telescopes over ``n``, so it is a genuine probability mass
    function on the integers.
    """
    c = centring(a, q)
    hi = gumbel_cdf(c.decay_rate * (n + 1 - c.centre_frac))
    lo = gumbel_cdf(c.decay_rate * (n - c.centre_frac))
    return hi - lo


@dataclass(frozen=True)
class MomentBounds:
    """Closed interval ``[lower, upper]``."""

    lower: float
    upper: float


def mean_bounds(a: int) -> MomentBounds:
    """Limit band for E(coverage maximum) - log(q) / rate as q grows.

    The band has width exactly one test: the centring can be off by at most
    one whole test because coverage counts are integers.
    """
    rate = decay_rate(a)
    lower = (EULER_GAMMA + math.log(a)) / rate
    return MomentBounds(lower, lower + 1.0)


def band_second_moment(a: int) -> float:
    """Second moment of ``1 + Z / rate`` over the unit band ``-rate < Z <= 0``.

    Z is standard Gumbel.  Deterministic adaptive quadrature, certified to
    1e-10 absolute; raises :class:`QuadratureError` if the estimate cannot be
    certified.
    """
    rate = decay_rate(a)

    def integrand(z: float) -> float:
        w = 1.0 + z / rate
        return w * w * math.exp(-z - math.exp(-z))

    value, err = integrate.quad(integrand, -rate, 0.0, epsabs=1e-12, epsrel=1e-12)
    if err > _QUAD_TOL:
        raise QuadratureError(
            f"band moment for a={a}: quadrature error {err:.2e} above {_QUAD_TOL}"
        )
    return value


def exp_integral_e1(x: float) -> float:
    """Exponential integral E1(x) for x > 0.

    Alternating series near the log singularity (x <= 1), modified Lentz
    continued fraction beyond; absolute error well under 1e-12 on both
    branches.
    """
    if not x > 0:
        raise ValueError(f"E1 requires x > 0, got {x}")
    if x <= 1.0:
        total = 0.0
        term = 1.0
        k = 0
        while True:
            k += 1
            term *= x / k
            contrib = term / k
            total += -contrib if k % 2 == 0 else contrib
            if contrib < 1e-18:
                break
        return total - EULER_GAMMA - math.log(x)
    # Continued fraction e**(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
    b = x + 1.0
    c = 1e300
    d = 1.0 / b
    f = d
    for j in range(1, 500):
        coeff = -float(j * j)
        b += 2.0
        d = 1.0 / (coeff * d + b)
        c = b + coeff / c
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.exp(-x) * f
    raise QuadratureError(f"E1 continued fraction did not settle at x={x}")


@dataclass(frozen=True)
class VarianceBoundSummary:
    """Variance band of the coverage maximum at large q, with its pieces.

    ``center`` is the Gumbel variance over the squared rate; ``half_width``
    collects the discretisation and oscillation slack around it.
    """

    center: float
    band_moment: float
    half_width: float
    var_lo: float
    var_hi: float
    sd_lo: float
    sd_hi: float


def variance_bounds(a: int) -> VarianceBoundSummary:
    """Band guaranteed to contain the large-q variance of the coverage maximum."""
    rate = decay_rate(a)
    center = GUMBEL_VARIANCE / (rate * rate)
    moment = band_second_moment(a)
    half = moment + 1.0 - math.exp(-1.0) + 2.0 * (EULER_GAMMA + exp_integral_e1(1.0)) / rate
    var_lo = center - half
    var_hi = center + half
    return VarianceBoundSummary(
        center=center,
        band_moment=moment,
        half_width=half,
        var_lo=var_lo,
        var_hi=var_hi,
        sd_lo=math.sqrt(var_lo) if var_lo > 0.0 else 0.0,
        sd_hi=math.sqrt(var_hi),
    )


def centred_mean_prediction(a: int, q: int) -> float:
    """Asymptotic mean estimate: centre plus the Gumbel mean over the rate."""
    c = centring(a, q)
    return c.centre + EULER_GAMMA / c.decay_rate
