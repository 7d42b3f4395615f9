"""Shared one-dimensional quadrature utilities.

Every line integral in this package reduces to a smooth, super-exponentially
decaying integrand on a symmetric interval [-R, R], possibly with a derivative
kink at the origin (|xi|^m terms with non-integer m). Gauss-Legendre panels
split at zero handle both; node doubling provides the convergence check.
Circle means use the rectangle rule, which is spectrally accurate for
periodic integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import InvalidParameterError, QuadratureConvergenceError


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for truncated-interval quadrature.

    radius None means the truncation radius is chosen at the call site from
    the integrand's decay parameters. nodes counts Gauss-Legendre points per
    half-interval; doubling stops once successive results agree to tol
    relative to the result's scale.
    """

    radius: float | None = None
    nodes: int = 2048
    tol: float = 1e-10
    max_doublings: int = 4

    def __post_init__(self) -> None:
        if self.radius is not None and not (0 < self.radius < math.inf):
            raise InvalidParameterError(f"quadrature radius must be positive and finite, got {self.radius}")
        if self.nodes < 64:
            raise InvalidParameterError(f"quadrature needs at least 64 nodes, got {self.nodes}")
        if not (0 < self.tol < 1):
            raise InvalidParameterError(f"quadrature tol must lie in (0, 1), got {self.tol}")
        if self.max_doublings < 1:
            raise InvalidParameterError("max_doublings must be at least 1")


DEFAULT_QUADRATURE = QuadratureConfig()


@lru_cache(maxsize=64)
def _legendre_rule(n: int):
    x, w = roots_legendre(n)
    return x, w


def line_nodes(radius: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for [-radius, radius], split at 0, `nodes` points per half."""
    x, w = _legendre_rule(nodes)
    right = 0.5 * radius * (x + 1.0)
    t = np.concatenate([right - radius, right])
    wt = np.concatenate([w, w]) * (0.5 * radius)
    return t, wt


def integrate_refining(fn, radius: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    """Integrate a vectorized integrand over [-radius, radius], doubling nodes until stable.

    Near-zero integrals are judged against the integrand's scale rather than
    the integral itself, so cancellation does not force spurious refinement
    failures. Raises QuadratureConvergenceError when the budget runs out.
    """
    nodes = cfg.nodes
    prev = None
    prev_scale = 0.0
    last_change = math.inf
    for _ in range(cfg.max_doublings + 1):
        t, wt = line_nodes(radius, nodes)
        vals = np.asarray(fn(t))
        cur = complex(np.sum(wt * vals))
        scale = abs(cur)
        if vals.size:
            scale = max(scale, 1e-3 * radius * float(np.max(np.abs(vals))))
        if prev is not None:
            last_change = abs(cur - prev)
            if last_change <= cfg.tol * max(scale, prev_scale, 1e-300):
                return cur
        prev, prev_scale = cur, scale
        nodes *= 2
    raise QuadratureConvergenceError(
        f"integral did not stabilize after {cfg.max_doublings} node doublings "
        f"(last change {last_change:.3e} at {nodes // 2} nodes per half)"
    )


def periodic_mean(fn, n_theta: int) -> float:
    """Mean of fn over [0, 2*pi) by the n_theta-point rectangle rule."""
    theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    return float(np.mean(fn(theta)))


def decay_truncation_radius(a: float, m: float, log_scale: float = 0.0,
                            linear: float = 0.0, log_tail: float = 45.0) -> float:
    """Smallest R (within ~30%) with a*R^m - linear*R >= log_scale + log_tail.

    Truncation radius for integrands bounded by
    exp(log_scale) * exp(-a|x|^m + linear|x|). The super-exponential term must
    dominate eventually, i.e. m > 1 whenever linear > 0.
    """
    if not (a > 0) or not (m >= 1):
        raise InvalidParameterError("decay radius needs a > 0 and m >= 1")
    if linear > 0 and m <= 1:
        raise InvalidParameterError("a linear growth term requires decay exponent m > 1")
    target = log_scale + log_tail
    r = max(1.0, (max(target, 1.0) / a) ** (1.0 / m))
    if linear > 0:
        # past the turning point the decay term grows faster than the linear one
        r = max(r, (2.0 * linear / (a * m)) ** (1.0 / (m - 1.0)))
    for _ in range(1000):
        if a * r**m - linear * r >= target:
            return r
        r *= 1.3
    raise QuadratureConvergenceError("could not find a truncation radius; decay too weak")
