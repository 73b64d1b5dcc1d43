"""Hot numeric kernels in two interchangeable versions.

Each kernel has a numba ``@njit`` scalar-loop implementation and a pure-numpy
vectorized twin.  :mod:`fracwave.backend` decides which one the package binds
(env flag ``FRACWAVE_BACKEND``); both stay importable so tests and the
benchmark can compare them directly.

Wright-series kernel
--------------------
Sums ``sum_n z^n / (n! Gamma(lam*n + mu))`` from precomputed coefficient
tables (see :func:`fracwave.specfun.series_tables`).  Terms are evaluated in
linear arithmetic while representable (recursive ``|z|^n/n!`` times a
directly computed reciprocal gamma) and in log space once either factor
leaves the double range.  Accumulation is compensated (Neumaier).  The
reported error bound is a geometric-tail estimate on a smooth termwise
envelope plus a running roundoff estimate; evaluation fails (``status != 0``)
when that bound cannot reach ``tol`` within the term cap.

Fractional time-stepping kernels
--------------------------------
Implicit product-integration stepping for ``D_t^alpha u = u_xx`` on a uniform
grid with zero far-field boundaries.  ``fd_l1`` covers alpha in (0, 1]
(L1 weights on first differences), ``fd_l2`` covers alpha in (1, 2]
(L1-2-type weights on second differences, with a ghost level carrying the
initial velocity).  The memory term makes each step cost O(n); the full loop
is the dominant cost of the oracle solver.
"""

import math

import numpy as np
from scipy.linalg import solve_banded

from .backend import NUMBA_AVAILABLE, USING_NUMBA, njit

# wright-series status codes
WRIGHT_OK = 0
WRIGHT_HIT_TERM_CAP = 1
WRIGHT_TERM_OVERFLOW = 2
WRIGHT_ROUNDOFF_FLOOR = 3

_EPS = float(np.finfo(np.float64).eps)
_LOG_HUGE = 700.0
_RATIO_CAP = 0.9
_LIN_FLOOR = 1e-280  # below this |z|^n/n! underflow starts eating digits


# ---------------------------------------------------------------------------
# Wright series, scalar loop (numba source)
# ---------------------------------------------------------------------------

def _wright_sum_loop(zs, c_lin, log_c, sign_c, log_env, tol, max_terms,
                     out_val, out_bound, out_terms, out_status):
    eps = 2.220446049250313e-16
    for i in range(zs.shape[0]):
        z = zs[i]
        if z == 0.0:
            out_val[i] = c_lin[0]
            out_bound[i] = 4.0 * eps * abs(c_lin[0])
            out_terms[i] = 1
            out_status[i] = WRIGHT_OK
            continue
        az = abs(z)
        logz = math.log(az)
        neg = z < 0.0
        s = 0.0
        comp = 0.0
        rnd = 0.0
        lp = 0.0          # log(az^n / n!)
        p = 1.0           # az^n / n! while representable
        sgn_z = 1.0
        hits = 0
        status = WRIGHT_HIT_TERM_CAP
        value = 0.0
        bound = math.inf
        terms = max_terms
        for n in range(max_terms):
            lt = lp + log_c[n]
            if lt > _LOG_HUGE:
                status = WRIGHT_TERM_OVERFLOW
                terms = n
                value = s + comp
                break
            cl = c_lin[n]
            if p > _LIN_FLOOR and math.isfinite(cl):
                t = p * cl
                if neg:
                    t *= sgn_z
                rnd += (8.0 + 0.3 * n) * eps * abs(t)
            elif sign_c[n] == 0.0 or lt < -_LOG_HUGE:
                t = 0.0
            else:
                t = sign_c[n] * math.exp(lt)
                if neg:
                    t *= sgn_z
                # exponent is a difference of two large logs; their absolute
                # rounding, not |lt|, limits the term's relative accuracy
                rnd += (8.0 + 1.5 * (abs(lp) + abs(log_c[n]))) * eps * abs(t)
            # Neumaier add
            tt = s + t
            if abs(s) >= abs(t):
                comp += (s - tt) + t
            else:
                comp += (t - tt) + s
            s = tt
            # envelope tail at n+1, ratio to n+2
            lp1 = lp + logz - math.log(n + 1.0)
            le1 = lp1 + log_env[n + 1]
            tail = -1.0
            if le1 < -_LOG_HUGE:
                tail = 0.0
            elif le1 <= _LOG_HUGE:
                e1 = math.exp(le1)
                le2 = lp1 + logz - math.log(n + 2.0) + log_env[n + 2]
                r = math.exp(min(le2 - le1, 0.69))
                if r < _RATIO_CAP:
                    tail = e1 / (1.0 - r)
            if tail >= 0.0:
                b = tail + rnd
                if b <= tol:
                    hits += 1
                    if hits >= 2 or tail == 0.0:
                        status = WRIGHT_OK
                        value = s + comp
                        bound = b
                        terms = n + 1
                        break
                else:
                    hits = 0
            else:
                hits = 0
            if rnd > tol:
                status = WRIGHT_ROUNDOFF_FLOOR
                terms = n + 1
                value = s + comp
                break
            lp = lp1
            p = p * az / (n + 1.0)
            sgn_z = -sgn_z
        else:
            value = s + comp
        out_val[i] = value
        out_bound[i] = bound
        out_terms[i] = terms
        out_status[i] = status


if NUMBA_AVAILABLE:
    wright_sum_numba = njit(cache=True)(_wright_sum_loop)
else:  # pragma: no cover
    wright_sum_numba = None


# ---------------------------------------------------------------------------
# Wright series, vectorized-over-terms numpy twin
# ---------------------------------------------------------------------------

def wright_sum_numpy(zs, c_lin, log_c, sign_c, log_env, tol, max_terms,
                     out_val, out_bound, out_terms, out_status):
    n_idx = np.arange(1, max_terms + 2, dtype=np.float64)
    log_n = np.log(n_idx)
    for i in range(zs.shape[0]):
        z = zs[i]
        if z == 0.0:
            out_val[i] = c_lin[0]
            out_bound[i] = 4.0 * _EPS * abs(c_lin[0])
            out_terms[i] = 1
            out_status[i] = WRIGHT_OK
            continue
        az = abs(z)
        logz = math.log(az)
        lp = np.empty(max_terms + 2)
        lp[0] = 0.0
        np.cumsum(logz - log_n, out=lp[1:])
        lt = lp[:max_terms] + log_c[:max_terms]
        p = np.empty(max_terms)
        p[0] = 1.0
        np.cumprod(az / n_idx[:max_terms - 1], out=p[1:])
        lin_ok = (p > _LIN_FLOOR) & np.isfinite(c_lin[:max_terms])
        with np.errstate(over="ignore", invalid="ignore"):
            t_log = np.where(sign_c[:max_terms] == 0.0, 0.0,
                             sign_c[:max_terms] * np.exp(lt))
            t = np.where(lin_ok, p * c_lin[:max_terms], t_log)
        if z < 0.0:
            t[1::2] = -t[1::2]
        abs_t = np.abs(t)
        lc_safe = np.where(np.isfinite(log_c[:max_terms]),
                           np.abs(log_c[:max_terms]), 0.0)
        lsum = np.abs(lp[:max_terms]) + lc_safe
        n_arr = np.arange(max_terms, dtype=np.float64)
        rnd = np.cumsum(
            np.where(lin_ok, (8.0 + 0.3 * n_arr) * _EPS * abs_t,
                     (8.0 + 1.5 * lsum) * _EPS * abs_t)
        )
        with np.errstate(over="ignore"):
            e = np.exp(lp + log_env[: max_terms + 2])
        e1 = e[1: max_terms + 1]
        e2 = e[2: max_terms + 2]
        with np.errstate(invalid="ignore", divide="ignore"):
            r = np.where(e1 > 0.0, e2 / e1, 0.0)
            tail = np.where(
                e1 == 0.0,
                0.0,
                np.where((r < _RATIO_CAP) & np.isfinite(e1),
                         e1 / (1.0 - r), np.inf),
            )
        bound_n = tail + rnd
        hit = bound_n <= tol
        prev_hit = np.empty_like(hit)
        prev_hit[0] = False
        prev_hit[1:] = hit[:-1]
        stop = hit & (prev_hit | (tail == 0.0))
        stop_at = np.nonzero(stop)[0]
        over_at = np.nonzero(lt > _LOG_HUGE)[0]
        rnd_at = np.nonzero(rnd > tol)[0]
        k_stop = stop_at[0] if stop_at.size else max_terms + 1
        k_over = over_at[0] if over_at.size else max_terms + 1
        k_rnd = rnd_at[0] if rnd_at.size else max_terms + 1
        if k_stop < k_over and k_stop < k_rnd:
            out_val[i] = math.fsum(t[: k_stop + 1])
            out_bound[i] = bound_n[k_stop]
            out_terms[i] = k_stop + 1
            out_status[i] = WRIGHT_OK
        elif k_over <= k_rnd and k_over <= max_terms:
            out_val[i] = math.fsum(t[:k_over])
            out_bound[i] = math.inf
            out_terms[i] = k_over
            out_status[i] = WRIGHT_TERM_OVERFLOW
        elif k_rnd <= max_terms:
            out_val[i] = math.fsum(t[: k_rnd + 1])
            out_bound[i] = math.inf
            out_terms[i] = k_rnd + 1
            out_status[i] = WRIGHT_ROUNDOFF_FLOOR
        else:
            out_val[i] = math.fsum(t)
            out_bound[i] = math.inf
            out_terms[i] = max_terms
            out_status[i] = WRIGHT_HIT_TERM_CAP


def wright_sum(zs, c_lin, log_c, sign_c, log_env, tol, max_terms):
    """Run the selected backend; returns (values, bounds, terms, status)."""
    zs = np.ascontiguousarray(zs, dtype=np.float64)
    m = zs.shape[0]
    val = np.empty(m)
    bound = np.empty(m)
    terms = np.empty(m, dtype=np.int64)
    status = np.empty(m, dtype=np.int64)
    impl = wright_sum_numba if USING_NUMBA else wright_sum_numpy
    impl(zs, c_lin, log_c, sign_c, log_env, float(tol), int(max_terms),
         val, bound, terms, status)
    return val, bound, terms, status


# ---------------------------------------------------------------------------
# Implicit fractional time stepping, numba sources
# ---------------------------------------------------------------------------

def _thomas_prep(rho, ni):
    # constant tridiagonal (1+2*rho, -rho, -rho); precompute the sweep
    cp = np.empty(ni)
    inv_d = np.empty(ni)
    b = 1.0 + 2.0 * rho
    a = -rho
    inv_d[0] = 1.0 / b
    cp[0] = a * inv_d[0]
    for k in range(1, ni):
        inv_d[k] = 1.0 / (b - a * cp[k - 1])
        cp[k] = a * inv_d[k]
    return cp, inv_d


def _fd_l1_loop(u0, w, rho, cp, inv_d, n_steps, save_steps, out):
    # alpha in (0,1]: w[k] = (k+1)^(1-a) - k^(1-a); history on first differences
    nx = u0.shape[0]
    ni = nx - 2
    a = -rho
    du = np.zeros((n_steps + 1, ni))
    u = u0.copy()
    u[0] = 0.0
    u[nx - 1] = 0.0
    rhs = np.empty(ni)
    dp = np.empty(ni)
    ns = 0
    for n in range(1, n_steps + 1):
        for j in range(ni):
            h = 0.0
            for k in range(1, n):
                h += w[k] * du[n - k, j]
            rhs[j] = u[j + 1] - h
        # Thomas solve (I - rho*Lap) x = rhs
        dp[0] = rhs[0] * inv_d[0]
        for k in range(1, ni):
            dp[k] = (rhs[k] - a * dp[k - 1]) * inv_d[k]
        xlast = dp[ni - 1]
        du[n, ni - 1] = xlast - u[ni]
        u[ni] = xlast
        for k in range(ni - 2, -1, -1):
            xk = dp[k] - cp[k] * u[k + 2]
            du[n, k] = xk - u[k + 1]
            u[k + 1] = xk
        if ns < save_steps.shape[0] and save_steps[ns] == n:
            for j in range(nx):
                out[ns, j] = u[j]
            ns += 1


def _fd_l2_loop(u0, v0, d, rho, cp, inv_d, n_steps, save_steps, dt, out):
    # alpha in (1,2]: d[k] = (k+1)^(2-a) - k^(2-a); history on second differences
    nx = u0.shape[0]
    ni = nx - 2
    a = -rho
    s2 = np.zeros((n_steps + 1, ni))
    u = u0.copy()
    u[0] = 0.0
    u[nx - 1] = 0.0
    q = np.empty(ni)       # q^{n-1} = u^{n-1} - u^{n-2}; q^0 = dt * v0
    for j in range(ni):
        q[j] = dt * v0[j + 1]
    rhs = np.empty(ni)
    dp = np.empty(ni)
    ns = 0
    for n in range(1, n_steps + 1):
        for j in range(ni):
            h = 0.0
            for k in range(1, n):
                h += d[k] * s2[n - k, j]
            rhs[j] = u[j + 1] + q[j] - h
        dp[0] = rhs[0] * inv_d[0]
        for k in range(1, ni):
            dp[k] = (rhs[k] - a * dp[k - 1]) * inv_d[k]
        xlast = dp[ni - 1]
        qn = xlast - u[ni]
        s2[n, ni - 1] = qn - q[ni - 1]
        q[ni - 1] = qn
        u[ni] = xlast
        for k in range(ni - 2, -1, -1):
            xk = dp[k] - cp[k] * u[k + 2]
            qn = xk - u[k + 1]
            s2[n, k] = qn - q[k]
            q[k] = qn
            u[k + 1] = xk
        if ns < save_steps.shape[0] and save_steps[ns] == n:
            for j in range(nx):
                out[ns, j] = u[j]
            ns += 1


if NUMBA_AVAILABLE:
    fd_l1_numba = njit(cache=True)(_fd_l1_loop)
    fd_l2_numba = njit(cache=True)(_fd_l2_loop)
else:  # pragma: no cover
    fd_l1_numba = None
    fd_l2_numba = None


# ---------------------------------------------------------------------------
# numpy twins (banded solves + BLAS history)
# ---------------------------------------------------------------------------

def _banded_matrix(rho, ni):
    ab = np.zeros((3, ni))
    ab[0, 1:] = -rho
    ab[1, :] = 1.0 + 2.0 * rho
    ab[2, :-1] = -rho
    return ab


def fd_l1_numpy(u0, w, rho, n_steps, save_steps, out):
    nx = u0.shape[0]
    ni = nx - 2
    ab = _banded_matrix(rho, ni)
    du = np.zeros((n_steps + 1, ni))
    u = u0.copy()
    u[0] = 0.0
    u[-1] = 0.0
    ns = 0
    for n in range(1, n_steps + 1):
        if n > 1:
            hist = w[n - 1:0:-1] @ du[1:n]
        else:
            hist = 0.0
        rhs = u[1:-1] - hist
        x = solve_banded((1, 1), ab, rhs)
        du[n] = x - u[1:-1]
        u[1:-1] = x
        if ns < save_steps.shape[0] and save_steps[ns] == n:
            out[ns] = u
            ns += 1


def fd_l2_numpy(u0, v0, d, rho, n_steps, save_steps, dt, out):
    nx = u0.shape[0]
    ni = nx - 2
    ab = _banded_matrix(rho, ni)
    s2 = np.zeros((n_steps + 1, ni))
    u = u0.copy()
    u[0] = 0.0
    u[-1] = 0.0
    q = dt * v0[1:-1]
    ns = 0
    for n in range(1, n_steps + 1):
        if n > 1:
            hist = d[n - 1:0:-1] @ s2[1:n]
        else:
            hist = 0.0
        rhs = u[1:-1] + q - hist
        x = solve_banded((1, 1), ab, rhs)
        qn = x - u[1:-1]
        s2[n] = qn - q
        q = qn
        u[1:-1] = x
        if ns < save_steps.shape[0] and save_steps[ns] == n:
            out[ns] = u
            ns += 1


def fd_l1(u0, w, rho, n_steps, save_steps):
    out = np.empty((save_steps.shape[0], u0.shape[0]))
    if USING_NUMBA:
        cp, inv_d = _thomas_prep(rho, u0.shape[0] - 2)
        fd_l1_numba(u0, w, rho, cp, inv_d, n_steps, save_steps, out)
    else:
        fd_l1_numpy(u0, w, rho, n_steps, save_steps, out)
    return out


def fd_l2(u0, v0, d, rho, n_steps, save_steps, dt):
    out = np.empty((save_steps.shape[0], u0.shape[0]))
    if USING_NUMBA:
        cp, inv_d = _thomas_prep(rho, u0.shape[0] - 2)
        fd_l2_numba(u0, v0, d, rho, cp, inv_d, n_steps, save_steps, dt, out)
    else:
        fd_l2_numpy(u0, v0, d, rho, n_steps, save_steps, dt, out)
    return out
