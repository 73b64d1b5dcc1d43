"""Initial-condition signals and the space-time solution container."""

import math
from dataclasses import dataclass, field

import numpy as np

_PROVENANCES = ("analytic-convolution", "finite-difference", "characteristics")


@dataclass(frozen=True)
class Signal:
    """An initial-condition description: delta, box, or sampled profile.

    Use the factory classmethods; the constructor fields are a plain union
    of the per-kind parameters.  Box point queries return ``height`` on the
    closed interval.  Sampled signals are piecewise linear inside their
    window and zero outside.
    """

    kind: str
    x0: float = 0.0
    weight: float = 1.0
    left: float = -1.0
    right: float = 1.0
    height: float = 1.0
    x_start: float = 0.0
    dx: float = 0.0
    values: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "delta":
            if not (math.isfinite(self.x0) and math.isfinite(self.weight)):
                raise ValueError("delta signal needs finite location and weight")
        elif self.kind == "box":
            if not (self.left < self.right):
                raise ValueError(
                    f"box signal needs left < right, got [{self.left}, {self.right}]"
                )
            if not math.isfinite(self.height):
                raise ValueError("box height must be finite")
        elif self.kind == "sampled":
            vals = np.ascontiguousarray(self.values, dtype=np.float64)
            if vals.ndim != 1 or vals.size < 2:
                raise ValueError("sampled signal needs at least 2 values")
            if not np.all(np.isfinite(vals)):
                raise ValueError("sampled signal values must be finite")
            if not (self.dx > 0.0):
                raise ValueError(f"sampled signal needs dx > 0, got {self.dx}")
            object.__setattr__(self, "values", vals)
        else:
            raise ValueError(f"unknown signal kind {self.kind!r}")

    # -- factories ---------------------------------------------------------

    @classmethod
    def delta(cls, x0: float = 0.0, weight: float = 1.0) -> "Signal":
        return cls(kind="delta", x0=x0, weight=weight)

    @classmethod
    def box(cls, left: float = -1.0, right: float = 1.0,
            height: float = 1.0) -> "Signal":
        return cls(kind="box", left=left, right=right, height=height)

    @classmethod
    def sampled(cls, x_start: float, dx: float, values) -> "Signal":
        return cls(kind="sampled", x_start=x_start, dx=dx,
                   values=np.asarray(values, dtype=np.float64))

    @classmethod
    def zero(cls) -> "Signal":
        return cls(kind="box", left=-1.0, right=1.0, height=0.0)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        if self.kind == "delta":
            return self.weight == 0.0
        if self.kind == "box":
            return self.height == 0.0
        return bool(np.all(self.values == 0.0))

    def support(self) -> tuple[float, float]:
        """Smallest closed interval outside which the signal vanishes."""
        if self.kind == "delta":
            return self.x0, self.x0
        if self.kind == "box":
            return self.left, self.right
        return self.x_start, self.x_start + (self.values.size - 1) * self.dx

    def point_value(self, x: float) -> float:
        """Pointwise value; deltas have none and raise."""
        if self.kind == "delta":
            raise ValueError("a delta signal has no pointwise values")
        if self.kind == "box":
            return self.height if self.left <= x <= self.right else 0.0
        lo, hi = self.support()
        if x < lo or x > hi:
            return 0.0
        return float(np.interp(x, lo + self.dx * np.arange(self.values.size),
                               self.values))

    def mass(self) -> float:
        """Total integral of the signal (delta: its weight)."""
        if self.kind == "delta":
            return self.weight
        if self.kind == "box":
            return self.height * (self.right - self.left)
        return float(np.trapezoid(self.values, dx=self.dx))

    def integral_over(self, a: float, b: float) -> float:
        """Exact integral over [a, b] (piecewise-linear for sampled)."""
        if a > b:
            return 0.0
        if self.kind == "delta":
            return self.weight if a <= self.x0 <= b else 0.0
        if self.kind == "box":
            lo = max(a, self.left)
            hi = min(b, self.right)
            return self.height * max(0.0, hi - lo)
        lo, hi = self.support()
        a = max(a, lo)
        b = min(b, hi)
        if a >= b:
            return 0.0
        xs = lo + self.dx * np.arange(self.values.size)
        ia = int(np.searchsorted(xs, a, side="right")) - 1
        ib = int(np.searchsorted(xs, b, side="left"))
        grid = np.concatenate(([a], xs[ia + 1: ib], [b]))
        vals = np.interp(grid, xs, self.values)
        return float(np.trapezoid(vals, grid))


@dataclass(frozen=True)
class SolutionField:
    """A space-time grid of solution values with provenance metadata."""

    nu: float
    x_grid: np.ndarray
    times: np.ndarray
    values: np.ndarray
    provenance: str

    def __post_init__(self):
        x = np.ascontiguousarray(self.x_grid, dtype=np.float64)
        ts = np.ascontiguousarray(self.times, dtype=np.float64)
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.shape != (ts.size, x.size):
            raise ValueError(
                f"values shape {v.shape} does not match (times, x) = "
                f"({ts.size}, {x.size})"
            )
        if not np.all(ts > 0.0):
            raise ValueError("all output times must be > 0")
        if not np.all(np.isfinite(v)):
            raise ValueError("solution values must be finite")
        if self.provenance not in _PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "times", ts)
        object.__setattr__(self, "values", v)

    def at_time(self, t: float) -> np.ndarray:
        idx = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[idx] - t) > 1e-9 * max(1.0, abs(t)):
            raise KeyError(f"time {t} not stored in this field")
        return self.values[idx]
