"""Discrete fractional operators and the finite-difference oracle solver.

Product-integration discretizations on uniform grids:

* ``fractional_integral``: I^a f(t) = (1/Gamma(a)) int_0^t (t-s)^(a-1) f(s) ds
  with piecewise-linear f and exact kernel moments (product trapezoidal),
* ``caputo_derivative``:  I^(n-a) f^(n) with n = ceil(a); the L1 scheme for
  a in (0,1), its second-difference analogue for a in (1,2),
* ``rl_derivative``:      d^n/dt^n I^(n-a) f,
* ``fd_solve``:           implicit time stepping for d^a_t u = u_xx built
  from the same discrete Caputo operators, used as the independent check on
  the analytic convolution solutions.

The implicit variant is unconditionally stable, so the grid stability
predicate is satisfied by construction; :class:`UnstableGrid` is kept for
the explicit scheme's contract.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from . import kernels
from .errors import DeltaNotRepresentable, UnstableGrid  # noqa: F401
from .green import FracOrder
from .signals import Signal, SolutionField


@dataclass(frozen=True)
class SampledFunction:
    """Uniform samples f(t0 + k dt), k = 0..N-1, with N >= 2."""

    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("need at least 2 samples")
        if not (self.dt > 0.0):
            raise ValueError(f"dt must be > 0, got {self.dt}")
        object.__setattr__(self, "values", vals)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)


def _pi_trapezoid(values: np.ndarray, dt: float, alpha: float) -> np.ndarray:
    """Product-trapezoidal fractional integral of order alpha > 0."""
    n = values.size
    k = np.arange(n, dtype=np.float64)
    ap1 = alpha + 1.0
    # interior convolution weights w[0]=1, w[k]=(k+1)^(a+1)-2k^(a+1)+(k-1)^(a+1)
    w = np.empty(n - 1)
    w[0] = 1.0
    if n > 2:
        kk = k[1:n - 1]
        w[1:] = (kk + 1.0) ** ap1 - 2.0 * kk ** ap1 + (kk - 1.0) ** ap1
    # first-node weight b0[n] = (n-1)^(a+1) - n^a (n - a - 1)
    nn = k[1:]
    b0 = (nn - 1.0) ** ap1 - nn ** alpha * (nn - alpha - 1.0)
    conv = np.convolve(values[1:], w)[: n - 1]
    out = np.empty(n)
    out[0] = 0.0
    out[1:] = (dt ** alpha / _gamma(alpha + 2.0)) * (conv + b0 * values[0])
    return out


def fractional_integral(f: SampledFunction, alpha: float) -> SampledFunction:
    """I^alpha f by product integration; the first sample is exactly 0."""
    if not (alpha > 0.0):
        raise ValueError(f"fractional integral requires alpha > 0, got {alpha}")
    return SampledFunction(f.t0, f.dt, _pi_trapezoid(f.values, f.dt, alpha))


def _second_derivative(values: np.ndarray, dt: float) -> np.ndarray:
    """Nodal f'' estimates: central interior, second-order one-sided ends."""
    n = values.size
    if n < 4:
        raise ValueError("second-derivative estimates need at least 4 samples")
    d2 = np.empty(n)
    d2[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / dt**2
    d2[0] = (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2]
             - values[3]) / dt**2
    d2[-1] = (2.0 * values[-1] - 5.0 * values[-2] + 4.0 * values[-3]
              - values[-4]) / dt**2
    return d2


def caputo_derivative(f: SampledFunction, alpha: float) -> SampledFunction:
    """Caputo derivative I^(n-alpha) f^(n), n = ceil(alpha), 0 < alpha <= 2.

    Integer orders fall back to standard second-order finite differences.
    The fractional branches are the L1 scheme (alpha < 1) and the
    second-difference product-integration analogue (alpha > 1); both
    annihilate constants exactly.
    """
    if not (0.0 < alpha <= 2.0):
        raise ValueError(f"Caputo derivative requires 0 < alpha <= 2, got {alpha}")
    vals = f.values
    dt = f.dt
    if alpha == 1.0:
        return SampledFunction(f.t0, dt, np.gradient(vals, dt, edge_order=2))
    if alpha == 2.0:
        return SampledFunction(f.t0, dt, _second_derivative(vals, dt))
    if alpha < 1.0:
        n = vals.size
        k = np.arange(n - 1, dtype=np.float64)
        w = (k + 1.0) ** (1.0 - alpha) - k ** (1.0 - alpha)
        d = np.diff(vals)
        conv = np.convolve(d, w)[: n - 1]
        out = np.empty(n)
        out[0] = 0.0
        out[1:] = conv * dt ** (-alpha) / _gamma(2.0 - alpha)
        return SampledFunction(f.t0, dt, out)
    d2 = _second_derivative(vals, dt)
    return SampledFunction(f.t0, dt, _pi_trapezoid(d2, dt, 2.0 - alpha))


def rl_derivative(f: SampledFunction, alpha: float) -> SampledFunction:
    """Riemann-Liouville derivative d^n/dt^n I^(n-alpha) f, 0 < alpha < 2.

    For f(0) != 0 the derivative blows up like t^(-alpha) at the origin;
    the first sample is then flagged as NaN.  alpha = 1 is the ordinary
    derivative.
    """
    if not (0.0 < alpha < 2.0):
        raise ValueError(f"RL derivative requires 0 < alpha < 2, got {alpha}")
    vals = f.values
    dt = f.dt
    if alpha == 1.0:
        return SampledFunction(f.t0, dt, np.gradient(vals, dt, edge_order=2))
    if alpha < 1.0:
        iv = _pi_trapezoid(vals, dt, 1.0 - alpha)
        out = np.gradient(iv, dt, edge_order=2)
    else:
        iv = _pi_trapezoid(vals, dt, 2.0 - alpha)
        out = _second_derivative(iv, dt)
    if vals[0] != 0.0:
        out[0] = np.nan
    return SampledFunction(f.t0, dt, out)


# ---------------------------------------------------------------------------
# finite-difference solver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FDGrid:
    """Uniform space-time grid for the implicit fractional solver."""

    dx: float
    dt: float
    x_min: float
    x_max: float
    n_steps: int
    alpha: FracOrder

    def __post_init__(self):
        if not (self.dx > 0.0 and self.dt > 0.0):
            raise ValueError("grid steps must be positive")
        if not (self.x_max > self.x_min):
            raise ValueError("grid requires x_max > x_min")
        if self.n_steps < 1:
            raise ValueError("need at least one time step")
        span = (self.x_max - self.x_min) / self.dx
        if abs(span - round(span)) > 1e-8 * max(1.0, span):
            raise ValueError("(x_max - x_min) must be an integer multiple of dx")
        if self.n_nodes < 5:
            raise ValueError("grid too coarse: fewer than 5 space nodes")

    @property
    def n_nodes(self) -> int:
        return int(round((self.x_max - self.x_min) / self.dx)) + 1

    @property
    def x_nodes(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_nodes)

    @property
    def t_final(self) -> float:
        return self.n_steps * self.dt

    def stability_ok(self) -> bool:
        """Implicit stepping is unconditionally stable."""
        return True


def grid_for_window(order: FracOrder, x_window: float, t_final: float,
                    dx: float, dt: float) -> FDGrid:
    """Symmetric grid covering |x| <= x_window with innocuous far boundaries.

    The domain is widened by 6 similarity widths (6 t^nu, at least 2) so the
    truncated zero-Dirichlet boundaries stay below the solver's resolution.
    """
    margin = max(6.0 * t_final ** order.nu, 2.0)
    half = math.ceil((x_window + margin) / dx)
    n_steps = int(round(t_final / dt))
    if abs(n_steps * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise ValueError("t_final must be an integer multiple of dt")
    return FDGrid(dx=dx, dt=dt, x_min=-half * dx, x_max=half * dx,
                  n_steps=n_steps, alpha=order)


def _sample_on_grid(sig: Signal, x: np.ndarray, dx: float) -> np.ndarray:
    if sig.kind == "delta":
        i = int(np.argmin(np.abs(x - sig.x0)))
        if abs(x[i] - sig.x0) > 1e-6 * dx:
            raise DeltaNotRepresentable(
                f"delta at x0={sig.x0} does not sit on a grid node "
                f"(nearest {x[i]}, dx={dx})"
            )
        u = np.zeros_like(x)
        u[i] = sig.weight / dx
        return u
    if sig.kind == "box":
        u = np.where((x > sig.left) & (x < sig.right), sig.height, 0.0)
        # half height at jump nodes keeps the discrete mass exact
        edge = 1e-9 * max(1.0, abs(sig.left), abs(sig.right))
        u[np.abs(x - sig.left) <= edge] = 0.5 * sig.height
        u[np.abs(x - sig.right) <= edge] = 0.5 * sig.height
        return u
    return np.array([sig.point_value(xi) for xi in x])


def fd_solve(grid: FDGrid, f0: Signal, g0: Signal | None = None,
             save_times=None) -> SolutionField:
    """Implicit finite-difference solution of d^alpha_t u = u_xx.

    Caputo time discretization (L1 for alpha <= 1, second-difference
    product integration for alpha > 1) with second-order central space
    differences and zero Dirichlet far-field boundaries.  ``g0`` is the
    initial velocity, admitted only for alpha > 1.  ``save_times`` must be
    integer multiples of dt; the default saves the final time only.

    The memory term makes the time recursion inherently sequential; cost is
    O(n_steps^2 * n_nodes).
    """
    alpha = grid.alpha.alpha
    x = grid.x_nodes
    u0 = _sample_on_grid(f0, x, grid.dx)
    if g0 is None:
        g0 = Signal.zero()
    if alpha <= 1.0 and not g0.is_zero:
        raise ValueError("initial velocity g requires alpha > 1")
    if not grid.stability_ok():  # pragma: no cover - implicit is unconditional
        raise UnstableGrid("grid fails the stability predicate")

    if save_times is None:
        save_times = [grid.t_final]
    steps = []
    for tau in save_times:
        k = int(round(tau / grid.dt))
        if k < 1 or k > grid.n_steps or abs(k * grid.dt - tau) > 1e-9 * max(1.0, tau):
            raise ValueError(
                f"save time {tau} is not an integer multiple of dt within the run"
            )
        steps.append(k)
    order_idx = np.argsort(steps)
    steps_sorted = np.asarray(steps, dtype=np.int64)[order_idx]
    if np.unique(steps_sorted).size != steps_sorted.size:
        raise ValueError("save times must be distinct")

    kgrid = np.arange(grid.n_steps + 1, dtype=np.float64)
    if alpha <= 1.0:
        w = (kgrid + 1.0) ** (1.0 - alpha) - kgrid ** (1.0 - alpha)
        rho = _gamma(2.0 - alpha) * grid.dt ** alpha / grid.dx ** 2
        saved = kernels.fd_l1(u0, w, rho, grid.n_steps, steps_sorted)
    else:
        v0 = _sample_on_grid(g0, x, grid.dx)
        d = (kgrid + 1.0) ** (2.0 - alpha) - kgrid ** (2.0 - alpha)
        rho = _gamma(3.0 - alpha) * grid.dt ** alpha / grid.dx ** 2
        saved = kernels.fd_l2(u0, v0, d, rho, grid.n_steps, steps_sorted,
                              grid.dt)

    # undo the save-order sort so rows follow the caller's time list
    unsort = np.empty_like(order_idx)
    unsort[order_idx] = np.arange(order_idx.size)
    return SolutionField(
        nu=grid.alpha.nu,
        x_grid=x,
        times=np.asarray(save_times, dtype=np.float64),
        values=saved[unsort],
        provenance="finite-difference",
    )
