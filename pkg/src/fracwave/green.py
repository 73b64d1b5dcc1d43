"""Green functions of the time-fractional diffusion-wave equation.

For d^alpha_t u = d^2_x u with 0 < alpha <= 2 and nu = alpha/2, the
fundamental solution of the Cauchy problem and its relatives are

    G_C(x, t)   = M_nu(|x| / t^nu) / (2 t^nu),
    G_C2(x, t)  = int_0^t G_C(x, s) ds
                = (t^(1-nu) / 2) W_{-nu, 2-nu}(-|x| / t^nu),
    G_S(x, t)   = (2 nu x / t) G_C(x, t),            x > 0,

the last being the reciprocity relation
``2 nu x G_C = t G_S = nu z M_nu(z)`` in the similarity variable
``z = x / t^nu``.

Beyond the certified support radius (see
:func:`fracwave.specfun.support_cutoff`) the kernels are below double
resolution and are returned as exact zero; in the narrow band between the
series' evaluability edge and that radius a
:class:`~fracwave.errors.NonConvergent` is propagated instead of guessing.
"""

import math
from dataclasses import dataclass

from .errors import NonConvergent  # noqa: F401  (re-exported for callers)
from .specfun import (
    DEFAULT_TERM_CAP,
    DEFAULT_TOL,
    MWrightOrder,
    WrightParams,
    m_wright,
    support_cutoff,
    wright,
)

# kernels certifiably below double-precision resolution past this level
_FAR_EPS = 1e-16


@dataclass(frozen=True)
class FracOrder:
    """Time-derivative order alpha in (0, 2] with similarity exponent nu = alpha/2."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0) or not math.isfinite(self.alpha):
            raise ValueError(f"order requires 0 < alpha <= 2, got {self.alpha}")

    @classmethod
    def from_nu(cls, nu: float) -> "FracOrder":
        return cls(alpha=2.0 * nu)

    @property
    def nu(self) -> float:
        return self.alpha / 2.0

    @property
    def regime(self) -> str:
        if self.alpha < 1.0:
            return "sub-diffusion"
        if self.alpha == 1.0:
            return "diffusion"
        if self.alpha < 2.0:
            return "diffusion-wave"
        return "wave"


@dataclass(frozen=True)
class SimilarityPoint:
    """A space-time point with its similarity coordinate z = x / t^nu."""

    x: float
    t: float
    z: float

    @classmethod
    def of(cls, order: FracOrder, x: float, t: float) -> "SimilarityPoint":
        if t <= 0.0:
            raise ValueError(f"similarity variable requires t > 0, got t={t}")
        return cls(x=x, t=t, z=x / t ** order.nu)


def _check_time(t: float):
    if not (t > 0.0) or not math.isfinite(t):
        raise ValueError(f"Green functions are defined for t > 0 only, got t={t}")


def green_cauchy(order: FracOrder, x: float, t: float,
                 tol: float = DEFAULT_TOL,
                 max_terms: int = DEFAULT_TERM_CAP) -> float:
    """Cauchy Green function M_nu(|x|/t^nu) / (2 t^nu); even in x.

    Requires 0 < nu < 1; the wave limit nu = 1 is a pair of Dirac deltas
    and is handled by the characteristics path of the solver instead.
    """
    _check_time(t)
    nu = order.nu
    if not (0.0 < nu < 1.0):
        raise ValueError(
            f"green_cauchy requires nu in (0, 1), got nu={nu}; "
            "use the characteristics solver at nu = 1"
        )
    scale = t ** nu
    z = abs(x) / scale
    if z >= support_cutoff(nu, _FAR_EPS):
        return 0.0
    res = m_wright(MWrightOrder(nu), z, tol=tol, max_terms=max_terms)
    return res.value / (2.0 * scale)


def green_cauchy_second(order: FracOrder, x: float, t: float,
                        tol: float = DEFAULT_TOL,
                        max_terms: int = DEFAULT_TERM_CAP) -> float:
    """Time primitive of the Cauchy Green function, for the velocity data.

    Needed only when the extra initial condition u_t(x, 0) applies, i.e.
    nu in (1/2, 1]; other orders are rejected.  Closed form
    (t^(1-nu)/2) W_{-nu,2-nu}(-|x|/t^nu); at nu = 1 the primitive of the
    two d'Alembert deltas, a half-height box on |x| < t.
    """
    _check_time(t)
    nu = order.nu
    if not (0.5 < nu <= 1.0):
        raise ValueError(
            f"the second Green function applies for nu in (1/2, 1], got nu={nu}"
        )
    if nu == 1.0:
        ax = abs(x)
        if ax < t:
            return 0.5
        if ax == t:
            return 0.25
        return 0.0
    scale = t ** nu
    z = abs(x) / scale
    if z >= support_cutoff(nu, _FAR_EPS):
        return 0.0
    res = wright(WrightParams(-nu, 2.0 - nu), -z, tol=tol, max_terms=max_terms)
    return 0.5 * t ** (1.0 - nu) * res.value


def green_signaling(order: FracOrder, x: float, t: float,
                    tol: float = DEFAULT_TOL,
                    max_terms: int = DEFAULT_TERM_CAP) -> float:
    """Signaling Green function via reciprocity: (2 nu x / t) G_C(x, t).

    Defined on the half line; rejects x <= 0.
    """
    if not (x > 0.0):
        raise ValueError(f"the Signaling problem lives on x > 0, got x={x}")
    _check_time(t)
    nu = order.nu
    if not (0.0 < nu < 1.0):
        raise ValueError(f"green_signaling requires nu in (0, 1), got nu={nu}")
    return (2.0 * nu * x / t) * green_cauchy(order, x, t, tol=tol,
                                             max_terms=max_terms)
