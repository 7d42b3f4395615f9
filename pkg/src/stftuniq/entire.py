"""Growth analysis for entire functions arising as Fourier transforms.

Taylor coefficients through moment integrals, order/type estimation from
coefficient decay, Jensen circle means and zero-count bounds, Weierstrass
canonical products over positive zeros, and least-squares growth fits on
strips. Everything here works with the convention F(z) = int ghat(xi)
e^{2 pi i xi z} d xi, so the coefficients are c_n = (2 pi i)^n / n! times the
n-th moment of ghat.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import (
    DegenerateFitError,
    EvaluationOverflowError,
    InsufficientDataError,
    InvalidParameterError,
    ZeroAtOriginError,
)
from .quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    decay_truncation_radius,
    integrate_refining,
)

_LOG_FLOAT_MAX = math.log(np.finfo(float).max)
_I_POWERS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameterError(msg)


@dataclass(frozen=True)
class TaylorSeries:
    """Taylor coefficients c_0 .. c_N of an entire function about the origin."""

    coefficients: np.ndarray
    truncation: int
    source: str = ""

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=complex)
        object.__setattr__(self, "coefficients", coeffs)
        _require(coeffs.ndim == 1, "coefficients must be one-dimensional")
        _require(self.truncation == coeffs.size - 1, "truncation must equal len(coefficients) - 1")
        _require(self.truncation >= 2, "need at least coefficients c_0, c_1, c_2")
        if not np.all(np.isfinite(coeffs)):
            raise InvalidParameterError("coefficients must all be finite")


@dataclass(frozen=True)
class GrowthEstimate:
    """Order and type estimates plus the coefficient indices backing them."""

    order: float
    type: float
    n_used: tuple[int, ...] = ()
    max_modulus_samples: tuple[tuple[float, float], ...] = ()


@dataclass(frozen=True)
class CanonicalProduct:
    """Truncated Weierstrass product with strictly increasing positive zeros."""

    zeros: np.ndarray
    genus: int
    truncation: int
    origin_multiplicity: int = 0
    density: float | None = None

    def __post_init__(self) -> None:
        zeros = np.asarray(self.zeros, dtype=float)
        object.__setattr__(self, "zeros", zeros)
        _require(zeros.ndim == 1 and zeros.size >= 1, "need at least one zero")
        _require(bool(np.all(zeros > 0)), "zeros must be positive")
        _require(bool(np.all(np.diff(zeros) > 0)), "zeros must be strictly increasing")
        _require(self.genus >= 0, "genus must be nonnegative")
        _require(1 <= self.truncation <= zeros.size,
                 f"truncation must lie in [1, {zeros.size}], got {self.truncation}")
        _require(self.origin_multiplicity >= 0, "origin multiplicity must be nonnegative")


@dataclass(frozen=True)
class StripGrowthFit:
    """Least-squares envelope log|f(x+iy)| ~ log C - a|x|^rho + b|y|^rho."""

    a_fit: float
    b_fit: float
    c_fit: float
    rho: float
    residual: float


def moment_integral(n: int, a: float, m: float) -> float:
    """Absolute moment int |xi|^n exp(-a |xi|^m) d xi over the whole line.

    Equals 2 Gamma((n+1)/m) / (m a^((n+1)/m)); evaluated through log-Gamma so
    large n cannot overflow intermediates, raising only when the value itself
    leaves the float range.
    """
    _require(isinstance(n, (int, np.integer)) and n >= 0, f"moment index must be an integer >= 0, got {n!r}")
    _require(a > 0 and math.isfinite(a), f"decay rate a must be positive, got {a}")
    _require(m >= 1 and math.isfinite(m), f"decay exponent m must be >= 1, got {m}")
    log_val = (math.log(2.0) - math.log(m)
               - ((n + 1) / m) * math.log(a)
               + float(gammaln((n + 1) / m)))
    if log_val > _LOG_FLOAT_MAX:
        raise EvaluationOverflowError(f"moment of index {n} has log magnitude {log_val:.1f}, beyond float range")
    return math.exp(log_val)


def _fourier_callable(fourier_side):
    if hasattr(fourier_side, "fourier_eval"):
        w = fourier_side
        hint = 3.0 * decay_truncation_radius(w.a, w.m, log_scale=math.log(max(w.amplitude, 1.0)))
        return w.fourier_eval, (w.a, w.m, abs(getattr(w, "center", 0.0)), hint)
    if callable(fourier_side):
        return fourier_side, None
    raise InvalidParameterError("fourier_side must be a window model or an evaluator")


def _probe_even_real(fhat) -> bool:
    pts = np.array([0.379, 0.941, 1.73, 2.62])
    va = np.asarray(fhat(pts), dtype=complex)
    vb = np.asarray(fhat(-pts), dtype=complex)
    v0 = complex(np.asarray(fhat(np.array([0.0])), dtype=complex)[0])
    scale = max(float(np.max(np.abs(va))), float(np.max(np.abs(vb))), abs(v0), 1e-300)
    sym = float(np.max(np.abs(va - vb)))
    imag = max(float(np.max(np.abs(va.imag))), float(np.max(np.abs(vb.imag))), abs(v0.imag))
    return sym <= 1e-13 * scale and imag <= 1e-13 * scale


def _moment_radius(n: int, fhat, params, quad: QuadratureConfig) -> float:
    """Radius past which |xi|^n |ghat(xi)| sits 20 digits below its peak."""
    if quad.radius is not None:
        return quad.radius
    if params is not None:
        a, m, shift, hint = params
        upper = hint + 2.0 * (max(n, 1) / (a * m)) ** (1.0 / m) + shift
    else:
        upper = 50.0
    grid = np.geomspace(1e-3, upper, 400)
    mags = np.maximum(np.abs(np.asarray(fhat(grid), dtype=complex)),
                      np.abs(np.asarray(fhat(-grid), dtype=complex)))
    with np.errstate(divide="ignore"):
        logs = n * np.log(grid) + np.log(np.maximum(mags, 1e-300))
    peak = int(np.argmax(logs))
    past = np.nonzero(logs[peak:] < logs[peak] - 46.0)[0]
    radius = grid[peak + past[0]] if past.size else upper
    return max(float(radius), 1.0)


def taylor_coefficients(fourier_side, n_terms: int,
                        quad: QuadratureConfig = DEFAULT_QUADRATURE) -> TaylorSeries:
    """Coefficients of F(z) = int ghat(xi) e^{2 pi i xi z} d xi about z = 0.

    c_n = (2 pi i)^n / n! int xi^n ghat(xi) d xi, each moment integrated on
    its own truncation radius. When ghat probes as real and even, the odd
    moments vanish identically and those entries are pinned to exact zeros
    rather than carrying quadrature noise (the order/type estimators rely on
    zeros being exact).
    """
    _require(n_terms >= 2, f"need n_terms >= 2, got {n_terms}")
    fhat, params = _fourier_callable(fourier_side)
    even_real = _probe_even_real(fhat)
    coeffs = np.zeros(n_terms + 1, dtype=complex)
    for n in range(n_terms + 1):
        if even_real and n % 2 == 1:
            continue
        radius = _moment_radius(n, fhat, params, quad)
        moment = integrate_refining(lambda xi, _n=n: xi**_n * np.asarray(fhat(xi), dtype=complex),
                                    radius, quad)
        log_factor = n * math.log(2.0 * math.pi) - float(gammaln(n + 1))
        coeffs[n] = _I_POWERS[n % 4] * math.exp(log_factor) * moment
    return TaylorSeries(coeffs, n_terms, source=f"moment-quadrature(nodes={quad.nodes}, tol={quad.tol:g})")


def _usable_tail(series: TaylorSeries):
    """Tail-window indices and log magnitudes, or None for a polynomial series."""
    mags = np.abs(series.coefficients)
    N = series.truncation
    nz = np.nonzero(mags)[0]
    nz = nz[nz >= 1]
    if nz.size == 0 or nz.max() <= N // 2:
        # the trailing half vanishes identically: polynomial input
        return None
    if nz.size < 10:
        raise InsufficientDataError(f"need at least 10 nonzero coefficients, have {nz.size}")
    window = nz[nz >= N // 2]
    if window.size < 5:
        window = nz[-10:]
    return window, np.log(mags[window])


def estimate_order(series: TaylorSeries) -> GrowthEstimate:
    """Estimate exponential order from coefficient decay.

    For order-rho type-tau growth, -log|c_n| = (1/rho) n log n + O(n), so the
    order is recovered from the n log n coefficient of a least-squares fit of
    -log|c_n| against {n log n, n, log n, 1} over the tail window [N/2, N].
    The extra basis members absorb the lower-order bias that the bare ratio
    n log n / log(1/|c_n|) keeps at any reachable N. Series whose trailing
    half vanishes identically are read as polynomials (order 0).
    """
    tail = _usable_tail(series)
    if tail is None:
        return GrowthEstimate(order=0.0, type=0.0)
    ns, logs = tail
    nf = ns.astype(float)
    basis = np.stack([nf * np.log(nf), nf, np.log(nf), np.ones_like(nf)], axis=1)
    beta, *_ = np.linalg.lstsq(basis, -logs, rcond=None)
    alpha = float(beta[0])
    order = math.inf if alpha <= 1e-12 else 1.0 / alpha
    return GrowthEstimate(order=order, type=0.0, n_used=tuple(int(n) for n in ns))


def estimate_type(series: TaylorSeries, rho: float) -> GrowthEstimate:
    """Estimate exponential type at a known order rho.

    Uses tau = limsup n |c_n|^{rho/n} / (e rho): over the tail window the
    quantity u_n = log n + (rho/n) log|c_n| tends to log(e rho tau) with an
    O(log n / n) correction, so tau comes from the intercept of a fit of u_n
    against {1, log n / n, 1/n}. Polynomial series report type 0.
    """
    _require(rho > 0 and math.isfinite(rho), f"order must be positive, got {rho}")
    tail = _usable_tail(series)
    if tail is None:
        return GrowthEstimate(order=0.0, type=0.0)
    ns, logs = tail
    nf = ns.astype(float)
    u = np.log(nf) + (rho / nf) * logs
    basis = np.stack([np.ones_like(nf), np.log(nf) / nf, 1.0 / nf], axis=1)
    beta, *_ = np.linalg.lstsq(basis, u, rcond=None)
    tau = math.exp(float(beta[0])) / (math.e * rho)
    return GrowthEstimate(order=float(rho), type=tau, n_used=tuple(int(n) for n in ns))


def predicted_growth(m: float, a: float) -> GrowthEstimate:
    """Order and type of the entire continuation for a decay profile exp(-a |xi|^m).

    order rho = m/(m-1) and type
    tau = ((m-1)/m) (2 pi)^{m/(m-1)} (a m)^{-1/(m-1)}; both blow up as m -> 1,
    so the type is assembled in the log domain and overflow is reported
    rather than returned as inf.
    """
    _require(m > 1 and math.isfinite(m), f"decay exponent m must exceed 1, got {m}")
    _require(a > 0 and math.isfinite(a), f"decay rate a must be positive, got {a}")
    rho = m / (m - 1.0)
    log_tau = math.log((m - 1.0) / m) + rho * math.log(2.0 * math.pi) - math.log(a * m) / (m - 1.0)
    if log_tau > _LOG_FLOAT_MAX:
        raise EvaluationOverflowError(f"predicted type has log magnitude {log_tau:.1f}, beyond float range")
    return GrowthEstimate(order=rho, type=math.exp(log_tau))


def _eval_complex(f, z: np.ndarray) -> np.ndarray:
    """Evaluate f on a complex array, falling back to elementwise calls."""
    try:
        out = np.asarray(f(z), dtype=complex)
        if out.shape == z.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(w)) for w in z.ravel()], dtype=complex).reshape(z.shape)


def jensen_integral(f, r: float, n_theta: int = 1024) -> float:
    """Circle mean of log|f| at radius r, minus log|f(0)|.

    By Jensen's formula this equals the integral of n(t)/t up to r, so it is
    nonnegative and nondecreasing in r for entire f. The mean uses the
    rectangle rule (spectrally accurate here); grid points where |f| is below
    1e-300 trigger a warning and propagate -inf rather than failing.
    """
    _require(r > 0 and math.isfinite(r), f"radius must be positive, got {r}")
    _require(n_theta >= 64, f"need n_theta >= 64, got {n_theta}")
    f0 = complex(_eval_complex(f, np.zeros(1, dtype=complex))[0])
    if abs(f0) < 1e-300:
        raise ZeroAtOriginError("f vanishes at the origin; divide out the zero first")
    theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    vals = _eval_complex(f, r * np.exp(1j * theta))
    mags = np.abs(vals)
    if np.any(mags < 1e-300):
        warnings.warn("log|f| is singular on the circle; the mean may be -inf", RuntimeWarning)
    with np.errstate(divide="ignore"):
        logs = np.log(mags)
    return float(np.mean(logs) - math.log(abs(f0)))


def zero_count_bound(f, r: float, s: float, c_bound: float, b: float, rho: float) -> int:
    """Upper bound on the number of zeros of f in |z| <= r.

    Jensen's formula against the envelope |f| <= c_bound exp(b |z|^rho) gives
    n(r) <= (log c_bound + b (s r)^rho) / log s for any s > 1. The evaluator
    f is accepted for signature symmetry with the other circle operations;
    the bound itself uses only the envelope.
    """
    _require(r > 0, f"radius must be positive, got {r}")
    _require(s > 1, f"dilation s must exceed 1, got {s}")
    _require(c_bound > 0, f"envelope constant must be positive, got {c_bound}")
    _require(b >= 0, f"envelope coefficient must be nonnegative, got {b}")
    _require(rho > 0, f"envelope order must be positive, got {rho}")
    try:
        value = (math.log(c_bound) + b * (s * r) ** rho) / math.log(s)
    except OverflowError as exc:
        raise EvaluationOverflowError("zero-count envelope overflows the float range") from exc
    if not math.isfinite(value):
        raise EvaluationOverflowError("zero-count envelope overflows the float range")
    return max(0, math.floor(value))


def weierstrass_factor(u, p: int):
    """Elementary factor G(u; p) = (1 - u) exp(sum_{j<=p} u^j / j)."""
    _require(isinstance(p, (int, np.integer)) and p >= 0, f"genus must be an integer >= 0, got {p!r}")
    arr = np.asarray(u, dtype=complex)
    acc = np.zeros_like(arr)
    for j in range(1, p + 1):
        acc += arr**j / j
    out = (1.0 - arr) * np.exp(acc)
    if np.ndim(u) == 0:
        return complex(out)
    return out


def canonical_product_eval(product: CanonicalProduct, w) -> complex:
    """Evaluate w^{m0} prod_{k<=K} G(w / omega_k; p) at one point.

    Log-domain accumulation keeps the partial products representable; the
    result itself raises EvaluationOverflowError if its magnitude exponent
    leaves the float range. Points equal to a retained zero return exactly 0.
    """
    w = complex(w)
    zeros = product.zeros[:product.truncation]
    if w == 0:
        return 0j if product.origin_multiplicity else 1 + 0j
    if w.imag == 0.0:
        k = int(np.searchsorted(zeros, w.real))
        if k < zeros.size and zeros[k] == w.real:
            return 0j
    total = complex(product.origin_multiplicity * np.log(complex(w))) if product.origin_multiplicity else 0j
    step = 1 << 20
    for k in range(0, zeros.size, step):
        u = w / zeros[k:k + step]
        term = np.log(1.0 - u)
        for j in range(1, product.genus + 1):
            term = term + u**j / j
        total += complex(np.sum(term))
    if total.real > _LOG_FLOAT_MAX:
        raise EvaluationOverflowError(f"product magnitude exponent {total.real:.1f} exceeds the float range")
    return complex(np.exp(total))


# Ratio edges for the banded far-zero evaluation. Zeros at least 2.2 |w| away
# admit a geometric tail series; the per-band term count keeps the truncation
# error near 1e-19 at the inner edge and shrinks as the ratio grows.
_BAND_EDGES = (2.2, 8.0, 64.0, 1024.0)


def canonical_product_log_magnitudes(product: CanonicalProduct, ws) -> np.ndarray:
    """log|product| on an array of points, organized for large truncations.

    Equivalent to log|canonical_product_eval| pointwise but reorganized: zeros
    within 2.2x of the batch's largest |w| contribute direct factor logs,
    while the (typically vast) remainder enters through per-band power sums
    sum_k omega_k^{-j}, an exact rearrangement of the tail log series. Points
    that hit a retained zero come back as -inf.
    """
    ws = np.atleast_1d(np.asarray(ws, dtype=complex))
    zeros = product.zeros[:product.truncation]
    p = product.genus
    m0 = product.origin_multiplicity
    absw = np.abs(ws)
    out = np.zeros(ws.shape, dtype=float)
    if m0:
        with np.errstate(divide="ignore"):
            out += m0 * np.log(absw)
    wmax = float(absw.max()) if ws.size else 0.0
    if wmax == 0.0:
        return out

    k0 = int(np.searchsorted(zeros, _BAND_EDGES[0] * wmax, side="right"))
    near = zeros[:k0]

    # far bands: power sums S_j = sum omega^{-j}, consumed as -sum_{j>p} w^j S_j / j
    band_terms = []
    start = k0
    for i, lo_ratio in enumerate(_BAND_EDGES):
        hi = _BAND_EDGES[i + 1] * wmax if i + 1 < len(_BAND_EDGES) else math.inf
        k1 = int(np.searchsorted(zeros, hi, side="right")) if math.isfinite(hi) else zeros.size
        if k1 > start:
            j_max = max(p + 1, min(60, math.ceil(43.0 / math.log(lo_ratio))))
            inv = 1.0 / zeros[start:k1]
            power = inv.copy()
            sums = np.zeros(j_max + 1)
            sums[1] = power.sum()
            for j in range(2, j_max + 1):
                power *= inv
                sums[j] = power.sum()
            band_terms.append((j_max, sums))
        start = k1

    flat = ws.ravel()
    acc = np.zeros(flat.shape, dtype=float)
    if near.size:
        chunk = max(1, (1 << 20) // near.size)
        for k in range(0, flat.size, chunk):
            block = flat[k:k + chunk]
            u = block[:, None] / near[None, :]
            with np.errstate(divide="ignore", invalid="ignore"):
                term = np.log(1.0 - u)
            for j in range(1, p + 1):
                term = term + u**j / j
            acc[k:k + chunk] = term.real.sum(axis=1)
    for j_max, sums in band_terms:
        series = np.zeros(flat.shape, dtype=complex)
        wpow = flat**(p + 1) if p else flat.copy()
        for j in range(p + 1, j_max + 1):
            series += wpow * (sums[j] / j)
            wpow = wpow * flat
        acc -= series.real
    return out + acc.reshape(ws.shape)


def build_counterexample_product(lambdas, rho: float, truncation: int | None = None,
                                 b: float | None = None) -> CanonicalProduct:
    """Canonical product with zeros lambda_k^2, genus matched to order rho in z.

    The product V(w) of genus floor(rho/2) over the squared sequence makes
    F(z) = V(z^2) an even entire function of order rho vanishing at every
    +-lambda_k. When b is given, the sequence is classified against the
    separation thresholds and a warning goes out if its density does not
    clear the non-uniqueness bound (the construction then proves nothing).
    """
    lam = np.asarray(lambdas, dtype=float)
    _require(lam.ndim == 1 and lam.size >= 1, "sequence must be a nonempty 1-d array")
    _require(bool(np.all(lam > 0)), "sequence entries must be positive")
    _require(bool(np.all(np.diff(lam) > 0)), "sequence must be strictly increasing")
    _require(rho > 1 and math.isfinite(rho), f"order rho must exceed 1, got {rho}")
    K = lam.size if truncation is None else int(truncation)
    _require(1 <= K <= lam.size, f"truncation must lie in [1, {lam.size}], got {truncation}")
    genus = int(math.floor(rho / 2.0))
    density = None
    if lam.size >= 16:
        from .sampling import Verdict, classify_sequence, density_index
        delta = density_index(lam, rho)
        density = float(delta ** (-rho))
        if b is not None:
            report = classify_sequence(lam, rho, b)
            if report.verdict is not Verdict.NOT_UNIQUE:
                warnings.warn(
                    "sequence density does not clear the non-uniqueness threshold; "
                    "the vanishing construction does not separate anything here",
                    RuntimeWarning,
                )
    return CanonicalProduct(zeros=lam * lam, genus=genus, truncation=K,
                            origin_multiplicity=0, density=density)


def counterexample_eval(lambdas, rho: float, z, truncation: int | None = None,
                        b: float | None = None) -> complex:
    """F(z) = V(z^2) for the canonical product over the squared sequence.

    Vanishes exactly at +-lambda_k for every retained k (the squared argument
    hits the stored zero bit for bit).
    """
    product = build_counterexample_product(lambdas, rho, truncation, b)
    z = complex(z)
    return canonical_product_eval(product, z * z)


def counterexample_log_magnitudes(lambdas, rho: float, zs,
                                  truncation: int | None = None) -> np.ndarray:
    """log|F| on an array of z points, through the banded product evaluation."""
    product = build_counterexample_product(lambdas, rho, truncation)
    zs = np.asarray(zs, dtype=complex)
    return canonical_product_log_magnitudes(product, zs * zs)


def counterexample_growth_coefficient(lambdas, rho: float, radii=(4.0, 8.0, 16.0),
                                      truncation: int | None = None, n_theta: int = 64,
                                      b: float | None = None):
    """Fit log max_theta |F(r e^{i theta})| = coeff * r^rho + const over the radii.

    Returns (coeff, ((r, log_max), ...)). The fit is the operational check
    that the construction stays within type b at the probed radii; it is a
    power-law heuristic, so sequences far from lambda_k ~ c k^{1/rho} get a
    warning rather than silent nonsense.
    """
    _require(n_theta >= 16, f"need n_theta >= 16, got {n_theta}")
    radii = np.asarray(radii, dtype=float)
    _require(radii.ndim == 1 and radii.size >= 2, "need at least two radii")
    _require(bool(np.all(radii > 0)), "radii must be positive")
    product = build_counterexample_product(lambdas, rho, truncation, b)
    lam = np.asarray(lambdas, dtype=float)
    start = lam.size // 2
    k_tail = np.arange(start + 1, lam.size + 1, dtype=float)
    tail = lam[start:] / k_tail ** (1.0 / rho)
    if tail.size and float(tail.max() / tail.min()) > 1.05:
        warnings.warn("sequence is not close to a power law; the growth fit is heuristic",
                      RuntimeWarning)
    theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    ring = np.exp(1j * theta)
    log_max = np.empty(radii.size)
    for i, r in enumerate(radii):
        zs = r * ring
        log_max[i] = float(np.max(canonical_product_log_magnitudes(product, zs * zs)))
    basis = np.stack([radii**rho, np.ones_like(radii)], axis=1)
    beta, *_ = np.linalg.lstsq(basis, log_max, rcond=None)
    samples = tuple((float(r), float(v)) for r, v in zip(radii, log_max))
    return float(beta[0]), samples


def strip_growth_fit(f, rho: float, x_grid, y_grid) -> StripGrowthFit:
    """Least-squares fit of log|f(x+iy)| to log C - a|x|^rho + b|y|^rho.

    Grid points where f vanishes carry no log information and are dropped;
    if more than half the grid vanishes the fit is refused. The residual is
    expm1 of the worst upper-envelope violation, so 0 means the fitted
    envelope genuinely dominates the samples.
    """
    _require(rho > 0 and math.isfinite(rho), f"growth order must be positive, got {rho}")
    x = np.asarray(x_grid, dtype=float)
    y = np.asarray(y_grid, dtype=float)
    _require(x.ndim == 1 and y.ndim == 1, "grids must be one-dimensional")
    _require(x.size >= 2 and y.size >= 2 and x.size * y.size >= 8, "grid too small to constrain the fit")
    X, Y = np.meshgrid(x, y, indexing="ij")
    Z = X + 1j * Y
    mags = np.abs(_eval_complex(f, Z)).ravel()
    keep = mags > 0
    if np.count_nonzero(~keep) > mags.size // 2:
        raise DegenerateFitError("|f| vanishes on more than half the grid")
    logs = np.log(mags[keep])
    xr = np.abs(X).ravel()[keep] ** rho
    yr = np.abs(Y).ravel()[keep] ** rho
    basis = np.stack([np.ones_like(xr), -xr, yr], axis=1)
    beta, *_ = np.linalg.lstsq(basis, logs, rcond=None)
    worst = float(np.max(logs - basis @ beta))
    residual = float(math.expm1(worst)) if worst > 0 else 0.0
    return StripGrowthFit(a_fit=float(beta[1]), b_fit=float(beta[2]),
                          c_fit=float(math.exp(beta[0])), rho=float(rho), residual=residual)
