"""Wright function W_{lam,mu}(z) and the M-Wright special case M_nu(z).

Both are evaluated from the series

    W_{lam,mu}(z) = sum_{n>=0} z^n / (n! Gamma(lam*n + mu)),   lam > -1,
    M_nu(z)       = W_{-nu, 1-nu}(-z),                         0 <= nu < 1,

with compensated accumulation, an explicit term cap, and a reported upper
bound on the truncation-plus-roundoff error.  Evaluation refuses (raises
:class:`~fracwave.errors.NonConvergent`) rather than return a value whose
certified error exceeds the requested tolerance.

Accuracy envelope
-----------------
For the second kind (lam < 0) the terms grow to roughly ``exp(B z^c)``
before decaying, where ``B = (1-nu) nu^(nu/(1-nu))`` and ``c = 1/(1-nu)``
for M_nu; the function itself decays like ``exp(-B z^c)``.  Double
precision therefore certifies M_nu(z) to absolute tolerance ``tol`` only
while ``exp(B z^c)`` stays below roughly ``tol/machine-eps``; see
:func:`series_cutoff`.  At nu = 0.75 and tol = 1e-10 that is z <~ 3.2, at
nu = 0.5 it is z <~ 8, and tighter as nu -> 1.  Beyond
:func:`support_cutoff` the function is certifiably below ``eps`` and the
solvers treat it as zero.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as _sc

from . import kernels
from .errors import NonConvergent

DEFAULT_TERM_CAP = 250
DEFAULT_TOL = 1e-10

_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class WrightParams:
    """Parameters (lam, mu) of the Wright series; requires lam > -1."""

    lam: float
    mu: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.mu)):
            raise ValueError("Wright parameters must be finite")
        if self.lam <= -1.0:
            raise ValueError(f"series requires lam > -1, got lam={self.lam}")

    @property
    def kind(self) -> str:
        """'first' for lam >= 0, 'second' for -1 < lam < 0."""
        return "first" if self.lam >= 0.0 else "second"


@dataclass(frozen=True)
class MWrightOrder:
    """Order nu of the M-Wright function, 0 <= nu < 1."""

    nu: float

    def __post_init__(self):
        if not (0.0 <= self.nu < 1.0):
            raise ValueError(f"M-Wright order requires 0 <= nu < 1, got {self.nu}")

    @property
    def wright_params(self) -> WrightParams:
        return WrightParams(lam=-self.nu, mu=1.0 - self.nu)


@dataclass(frozen=True)
class EvalResult:
    """A series value plus the achieved truncation/roundoff bound."""

    value: float
    abs_error_bound: float
    terms_used: int


def reciprocal_gamma(x: float) -> float:
    """Entire function 1/Gamma(x); exactly 0 at the poles of Gamma.

    Total on the reals: non-positive integers map to 0, everything else to
    the library reciprocal gamma.
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    return float(_sc.rgamma(x))


@lru_cache(maxsize=64)
def series_tables(lam: float, mu: float, n_terms: int):
    """Coefficient tables for the series kernel, cached per (lam, mu, cap).

    Returns read-only float64 arrays of length ``n_terms + 2``:

    * ``c_lin``: 1/Gamma(lam*n + mu) computed directly (+-inf on overflow),
    * ``log_c``, ``sign_c``: log-magnitude and sign of the same,
    * ``log_env``: a smooth termwise envelope, log |c| <= log_env, free of
      the sine oscillation so geometric tail estimates stay meaningful.
    """
    n = np.arange(n_terms + 2, dtype=np.float64)
    a = lam * n + mu
    log_c = np.empty_like(a)
    sign_c = np.empty_like(a)
    log_env = np.empty_like(a)

    hi = a >= 0.5
    if hi.any():
        g = _sc.gammaln(a[hi])
        log_c[hi] = -g
        sign_c[hi] = 1.0
        log_env[hi] = -g
    lo = ~hi
    if lo.any():
        al = a[lo]
        m = np.round(al)
        r = al - m
        sinr = np.sin(np.pi * r)
        with np.errstate(divide="ignore"):
            log_sin = np.log(np.abs(sinr))
        g1 = _sc.gammaln(1.0 - al)
        log_c[lo] = log_sin + g1 - _LOG_PI
        parity = np.where(np.mod(m, 2.0) == 0.0, 1.0, -1.0)
        sign_c[lo] = np.where(sinr == 0.0, 0.0, np.sign(sinr) * parity)
        log_env[lo] = g1 - _LOG_PI

    with np.errstate(over="ignore"):
        c_lin = _sc.rgamma(a)

    for arr in (c_lin, log_c, sign_c, log_env):
        arr.flags.writeable = False
    return c_lin, log_c, sign_c, log_env


_STATUS_MSG = {
    kernels.WRIGHT_HIT_TERM_CAP: "term cap reached before the truncation bound met tol",
    kernels.WRIGHT_TERM_OVERFLOW: "series terms overflow double precision",
    kernels.WRIGHT_ROUNDOFF_FLOOR: "roundoff floor of the alternating series exceeds tol",
}


def _evaluate(params: WrightParams, z: float, tol: float, max_terms: int):
    if not math.isfinite(z):
        raise ValueError(f"argument must be finite, got {z}")
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    if abs(z) > 650.0:
        # z^n would overflow before n!; far outside the supported envelope
        raise NonConvergent(
            f"W_({params.lam},{params.mu}) at z={z}: argument outside the "
            "supported range |z| <= 650"
        )
    tables = series_tables(params.lam, params.mu, max_terms)
    val, bound, terms, status = kernels.wright_sum(
        np.array([z]), *tables, tol, max_terms
    )
    if status[0] != kernels.WRIGHT_OK:
        raise NonConvergent(
            f"W_({params.lam},{params.mu}) at z={z} with tol={tol}, "
            f"cap={max_terms}: {_STATUS_MSG[int(status[0])]} "
            f"(after {int(terms[0])} terms)"
        )
    return EvalResult(float(val[0]), float(bound[0]), int(terms[0]))


def wright(params: WrightParams, z: float, tol: float = DEFAULT_TOL,
           max_terms: int = DEFAULT_TERM_CAP) -> EvalResult:
    """Evaluate W_{lam,mu}(z) with certified absolute error <= tol.

    Raises :class:`NonConvergent` when the truncation bound cannot reach
    ``tol`` within ``max_terms`` terms or the roundoff floor exceeds it.
    """
    return _evaluate(params, float(z), float(tol), int(max_terms))


def m_wright(order: MWrightOrder, z: float, tol: float = DEFAULT_TOL,
             max_terms: int = DEFAULT_TERM_CAP) -> EvalResult:
    """Evaluate M_nu(z) = W_{-nu,1-nu}(-z); see module envelope notes."""
    return _evaluate(order.wright_params, -float(z), float(tol), int(max_terms))


# ---------------------------------------------------------------------------
# decay envelope helpers
# ---------------------------------------------------------------------------

def decay_constants(nu: float) -> tuple[float, float]:
    """(B, c) in the large-z envelope M_nu(z) ~ exp(-B z^c).

    c = 1/(1-nu), B = (1-nu) * nu^(nu/(1-nu)); continuous limit (1, 1) at
    nu = 0 where M_0(z) = exp(-z).
    """
    if not (0.0 <= nu < 1.0):
        raise ValueError(f"decay constants defined for 0 <= nu < 1, got {nu}")
    if nu == 0.0:
        return 1.0, 1.0
    c = 1.0 / (1.0 - nu)
    return (1.0 - nu) * nu ** (nu * c), c


def series_cutoff(nu: float, tol: float) -> float:
    """Largest z at which the M_nu series floor stays under about tol/2.

    The alternating partial sums peak near exp(B z^c), so double-precision
    roundoff limits certified absolute accuracy to roughly
    ``64 * eps * exp(B z^c)``.  Verified against a high-precision oracle in
    the test suite.
    """
    b, c = decay_constants(nu)
    x = math.log(max(tol, 1e-15) / 4e-14)
    if x <= 0.0:
        return 0.0
    # haircut keeps the estimate below the measured evaluability edge
    return (x / b) ** (1.0 / c) * (0.97 - 0.03 * nu)


def support_cutoff(nu: float, eps: float) -> float:
    """z beyond which M_nu (and the matching second kernel) is < eps.

    Based on the exponential-decay envelope with a slack factor of 30 and a
    0.15 shift covering algebraic prefactors; certified against the oracle
    in the tests.  Used by the solvers to treat the kernels as zero in the
    far field.
    """
    b, c = decay_constants(nu)
    x = math.log(30.0 / (max(nu, 0.05) * eps))
    return (x / b) ** (1.0 / c) + 0.15
