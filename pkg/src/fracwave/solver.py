"""Cauchy-problem solver: space convolution of Green functions with signals.

For the initial data u(x,0) = f(x) (and u_t(x,0) = g(x) when alpha > 1):

* nu <= 1/2:        u(x,t) = int G_C(xi,t) f(x-xi) dxi, g must vanish,
* 1/2 < nu < 1:     u(x,t) = int [G_C f(x-xi) + G_C2 g(x-xi)] dxi,
* nu = 1 (wave):    d'Alembert characteristics
                    u = (f(x-t) + f(x+t))/2 + (1/2) int_{x-t}^{x+t} g.

Delta signals short-circuit to direct Green-function evaluation.  Box and
sampled signals are convolved by adaptive quadrature over the signal
support, clipped to the kernel's certified similarity radius and split at
the kernel peak |xi| = t^nu.  Per-point quadrature error is kept within a
small factor of ``tol``; requested tolerances below ~1e-7 are limited by
the kernel's double-precision certification floor.
"""

import math

import numpy as np
from scipy import integrate as _integrate

from .errors import NonConvergent
from .green import FracOrder, green_cauchy, green_cauchy_second
from .signals import Signal, SolutionField
from .specfun import series_cutoff, support_cutoff

# term cap for solver-internal kernel evaluations; low orders need several
# hundred terms near the similarity cutoff
_SOLVER_TERM_CAP = 2000

_KERNELS = ("first", "second")


def _kernel_radius(nu: float, tol: float) -> float:
    """Similarity radius |xi|/t^nu beyond which the kernel is dropped.

    The smaller of the certified-negligible radius (kernel below tol/4) and
    the series evaluability radius at tol/2, so quadrature never samples an
    uncertifiable point and the clipped tail stays within the tol budget.
    """
    return min(support_cutoff(nu, 0.25 * tol), series_cutoff(nu, 0.5 * tol))


def _kernel_eval(order: FracOrder, kernel: str, xi: float, t: float,
                 tol: float) -> float:
    if kernel == "first":
        return green_cauchy(order, xi, t, tol=tol, max_terms=_SOLVER_TERM_CAP)
    return green_cauchy_second(order, xi, t, tol=tol,
                               max_terms=_SOLVER_TERM_CAP)


def convolve_green(order: FracOrder, kernel: str, f: Signal, x: float,
                   t: float, tol: float = 1e-7) -> float:
    """Single point of the space convolution int G(xi,t) f(x-xi) dxi.

    ``kernel`` selects the Cauchy Green function ("first") or its time
    primitive ("second", only for nu in (1/2, 1)).
    """
    if kernel not in _KERNELS:
        raise ValueError(f"kernel must be one of {_KERNELS}, got {kernel!r}")
    if not (t > 0.0):
        raise ValueError(f"convolution requires t > 0, got t={t}")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    nu = order.nu
    if kernel == "second" and not (0.5 < nu < 1.0):
        raise ValueError(
            f"the second kernel applies for nu in (1/2, 1), got nu={nu}"
        )
    if not (0.0 < nu < 1.0):
        raise ValueError(f"convolution kernels require nu in (0, 1), got {nu}")

    tol = max(tol, 1e-7)
    scale = t ** nu
    radius = _kernel_radius(nu, tol) * scale

    if f.kind == "delta":
        if abs(x - f.x0) >= radius:
            return 0.0
        return f.weight * _kernel_eval(order, kernel, x - f.x0, t, 0.5 * tol)

    lo_s, hi_s = f.support()
    lo = max(x - hi_s, -radius)
    hi = min(x - lo_s, radius)
    if lo >= hi:
        return 0.0

    inner_tol = 0.5 * tol

    def integrand(xi: float) -> float:
        return _kernel_eval(order, kernel, xi, t, inner_tol) * \
            f.point_value(x - xi)

    # split at the kernel kink (xi = 0) and its similarity peak (|xi| = t^nu)
    pts = [p for p in (0.0, -scale, scale) if lo < p < hi]
    val, abserr = _integrate.quad(
        integrand, lo, hi, points=pts or None, epsabs=0.5 * tol,
        epsrel=1e-10, limit=200,
    )
    if abserr > 10.0 * max(tol, 1e-12):
        raise NonConvergent(
            f"convolution quadrature at (x={x}, t={t}) reached error "
            f"{abserr:.2e} > requested {tol:.2e}"
        )
    return val


def _dalembert_point(f: Signal, g: Signal, x: float, t: float) -> float:
    u = 0.5 * (f.point_value(x - t) + f.point_value(x + t))
    if not g.is_zero:
        u += 0.5 * g.integral_over(x - t, x + t)
    return u


def solve_cauchy(order: FracOrder, f: Signal, g: Signal | None,
                 x_grid, times, tol: float = 1e-7) -> SolutionField:
    """Solve the Cauchy problem on a space grid at the given times.

    ``g`` (initial velocity) must be zero or None for nu <= 1/2.  Delta
    initial data short-circuits to the Green functions; at nu = 1 the
    solution follows characteristics and delta data is rejected as not
    pointwise representable.
    """
    nu = order.nu
    x = np.ascontiguousarray(x_grid, dtype=np.float64)
    ts = np.ascontiguousarray(times, dtype=np.float64)
    if ts.size == 0 or np.any(ts <= 0.0):
        raise ValueError("output times must be a nonempty list of t > 0")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    if g is None:
        g = Signal.zero()
    if nu <= 0.5 and not g.is_zero:
        raise ValueError(
            "the extra initial condition g applies only for alpha > 1 "
            f"(nu > 1/2); got nu={nu} with nonzero g"
        )

    values = np.empty((ts.size, x.size))

    if nu == 1.0:
        if f.kind == "delta":
            raise ValueError(
                "delta initial data at nu = 1 propagates as Dirac impulses "
                "and has no pointwise values"
            )
        for i, t in enumerate(ts):
            for j, xj in enumerate(x):
                values[i, j] = _dalembert_point(f, g, xj, t)
        return SolutionField(nu=nu, x_grid=x, times=ts, values=values,
                             provenance="characteristics")

    use_second = not g.is_zero
    for i, t in enumerate(ts):
        scale = t ** nu
        radius = _kernel_radius(nu, max(tol, 1e-7)) * scale
        for j, xj in enumerate(x):
            if f.kind == "delta":
                if abs(xj - f.x0) >= radius:
                    u = 0.0
                else:
                    u = f.weight * green_cauchy(order, xj - f.x0, t,
                                                tol=0.5 * tol,
                                                max_terms=_SOLVER_TERM_CAP)
            else:
                u = convolve_green(order, "first", f, xj, t, tol=tol)
            if use_second:
                if g.kind == "delta":
                    if abs(xj - g.x0) < radius:
                        u += g.weight * green_cauchy_second(
                            order, xj - g.x0, t, tol=0.5 * tol,
                            max_terms=_SOLVER_TERM_CAP)
                else:
                    u += convolve_green(order, "second", g, xj, t, tol=tol)
            values[i, j] = u
    return SolutionField(nu=nu, x_grid=x, times=ts, values=values,
                         provenance="analytic-convolution")
