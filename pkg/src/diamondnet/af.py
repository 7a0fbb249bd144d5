"""Amplify-and-forward: rate evaluation, coefficient optimization, bounds.

With amplify-and-forward every relay retransmits a scaled copy of what it
heard, so the network collapses to one effective AWGN link whose rate is

    log2(1 + snr * (sum_i w_i * alpha_i)**2 / (1 + sum_i v_i * alpha_i**2))

where alpha_i in [0, 1] is relay i's normalized amplification (1 = full
power) and w_i, v_i are signal/noise weights fixed by the gains. Scaling
phases are always chosen to add coherently, which is optimal for the rate
and keeps the model magnitude-only.

However many relays participate, the achievable rate never beats routing
over the single best relay by more than the 2*log2(n) beamforming gain;
``af_upper_bound`` computes that cap and ``af_snr_bound_sides`` exposes
the scalar inequality behind it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ValidationError
from .model import Network, RateTable, rate_table

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, slots=True)
class AfCoefficients:
    """Normalized amplification magnitudes, one per relay, each in [0, 1]."""

    alpha: np.ndarray

    def __init__(self, alpha):
        alpha = np.array(alpha, dtype=np.float64, copy=True).reshape(-1)
        if alpha.size == 0:
            raise ValidationError("alpha must have at least one entry")
        if not np.all(np.isfinite(alpha)):
            raise ValidationError("alpha entries must be finite")
        if np.any(alpha < 0.0) or np.any(alpha > 1.0):
            raise ValidationError("alpha entries must lie in [0, 1]")
        alpha.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return int(self.alpha.size)


@dataclass(frozen=True, slots=True)
class AfReport:
    """Achieved rate, the coefficients, and the best-relay-plus-beamforming cap."""

    rate: float
    alpha: AfCoefficients
    upper_bound: float
    c1: float


def _af_weights(net: Network) -> tuple[np.ndarray, np.ndarray]:
    """Per-relay signal weight w and forwarded-noise weight v.

    With beta_i**2 = snr * alpha_i**2 / (1 + gain_s_i**2 * snr):
    w_i = gain_d_i * gain_s_i * sqrt(snr / (1 + gain_s_i**2 * snr)),
    v_i = gain_d_i**2 * snr / (1 + gain_s_i**2 * snr).
    """
    gs, gd = net.gain_arrays()
    scale = net.snr / (1.0 + gs * gs * net.snr)
    w = gd * gs * np.sqrt(scale)
    v = gd * gd * scale
    return w, v


def _coerce_alpha(alpha, n: int) -> np.ndarray:
    if not isinstance(alpha, AfCoefficients):
        alpha = AfCoefficients(alpha)
    if alpha.n != n:
        raise ValidationError(
            f"alpha has {alpha.n} entries but the network has {n} relays"
        )
    return alpha.alpha


def af_rate(net: Network, alpha) -> float:
    """Amplify-and-forward rate of ``net`` under the given coefficients."""
    a = _coerce_alpha(alpha, net.n)
    w, v = _af_weights(net)
    return float(kernels.af_rate_batch(w, v, net.snr, a[None, :])[0])


def af_rate_batch(net: Network, alphas) -> np.ndarray:
    """Amplify-and-forward rate for each row of ``alphas`` (shape (m, n))."""
    alphas = np.asarray(alphas, dtype=np.float64)
    if alphas.ndim != 2 or alphas.shape[1] != net.n:
        raise ValidationError(f"alphas must have shape (m, {net.n})")
    if not np.all(np.isfinite(alphas)) or np.any(alphas < 0) or np.any(alphas > 1):
        raise ValidationError("alpha entries must be finite and lie in [0, 1]")
    w, v = _af_weights(net)
    return np.asarray(kernels.af_rate_batch(w, v, net.snr, alphas))


def af_upper_bound(rt: RateTable) -> tuple[float, float]:
    """(c1 + 2*log2(n), c1) where c1 = max over relays of min(r_s, r_d).

    c1 is the rate of routing over the best single relay; amplify-and-forward
    with all n relays can only add the 2*log2(n) beamforming gain on top.
    """
    c1 = float(np.minimum(rt.r_s, rt.r_d).max())
    return c1 + 2.0 * math.log2(rt.n), c1


def af_snr_bound_sides(u_d, u_s, b) -> tuple[float, float]:
    """Both sides of the inequality capping the amplified SNR by the best relay.

    For positive linear SNRs u_d, u_s and power fractions b in [0, 1]:

        max(1, max_i u_d[i]*b[i]/(1+u_s[i])) * max_i min(u_d[i], u_s[i])
            >= max_i b[i]*u_d[i]*u_s[i]/(1+u_s[i])

    Returns (lhs, rhs); lhs >= rhs always.
    """
    u_d = np.asarray(u_d, dtype=np.float64).reshape(-1)
    u_s = np.asarray(u_s, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if not (u_d.size == u_s.size == b.size) or u_d.size == 0:
        raise ValidationError("u_d, u_s and b must share a positive length")
    if not (np.all(np.isfinite(u_d)) and np.all(np.isfinite(u_s)) and np.all(np.isfinite(b))):
        raise ValidationError("inputs must be finite")
    if np.any(u_d <= 0.0) or np.any(u_s <= 0.0):
        raise ValidationError("u_d and u_s must be positive")
    if np.any(b < 0.0) or np.any(b > 1.0):
        raise ValidationError("b entries must lie in [0, 1]")
    ratio = u_d * b / (1.0 + u_s)
    lhs = max(1.0, float(ratio.max())) * float(np.minimum(u_d, u_s).max())
    rhs = float((ratio * u_s).max())
    return lhs, rhs


def _golden_max(f, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc = f(c)
    fd = f(d)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def af_optimize(net: Network, tol: float = 1e-9, *, max_cycles: int = 100) -> AfReport:
    """Maximize the amplify-and-forward rate by cyclic coordinate ascent.

    Starts from full power everywhere (relays with a dead gain pinned to 0),
    solves each coordinate on [0, 1] by golden-section search, accepts only
    genuine rate improvements, and stops once a full cycle gains less than
    ``tol``. Deterministic; the result never drops below the starting rate
    and never exceeds ``af_upper_bound``. The per-coordinate slices are
    unimodal, but joint global optimality is not claimed.
    """
    tol = float(tol)
    if not math.isfinite(tol) or tol <= 0.0:
        raise ValidationError(f"tol must be positive, got {tol}")
    n = net.n
    w, v = _af_weights(net)
    gs, gd = net.gain_arrays()
    alive = (gs > 0.0) & (gd > 0.0)
    alpha = np.where(alive, 1.0, 0.0)

    def true_rate(a):
        return float(kernels.af_rate_batch(w, v, net.snr, a[None, :])[0])

    rate = true_rate(alpha)
    coords = np.nonzero(alive)[0]
    for _ in range(max_cycles):
        cycle_start = rate
        for i in coords:
            num_others = float(w @ alpha) - w[i] * alpha[i]
            den_others = 1.0 + float(v @ (alpha * alpha)) - v[i] * alpha[i] ** 2
            wi = w[i]
            vi = v[i]

            def slice_snr(x):
                t = num_others + wi * x
                return t * t / (den_others + vi * x * x)

            x_hat, _ = _golden_max(slice_snr, 0.0, 1.0)
            old = alpha[i]
            alpha[i] = x_hat
            cand = true_rate(alpha)
            if cand > rate:
                rate = cand
            else:
                alpha[i] = old
        if rate - cycle_start < tol:
            break
    rt = rate_table(net)
    bound, c1 = af_upper_bound(rt)
    return AfReport(
        rate=rate, alpha=AfCoefficients(alpha), upper_bound=bound, c1=c1
    )


def af_grid_search(net: Network, points: int = 21) -> tuple[float, np.ndarray]:
    """Best rate over the full grid of ``points`` levels per coordinate.

    Exhaustive desk-scale oracle for ``af_optimize``; cost points**n, so
    keep n small. Returns (rate, alpha).
    """
    if not isinstance(points, (int, np.integer)) or points < 2:
        raise ValidationError(f"points must be an integer >= 2, got {points!r}")
    n = net.n
    w, v = _af_weights(net)
    levels = np.linspace(0.0, 1.0, points)
    inner = min(n, 4)
    inner_block = (
        np.stack(
            np.meshgrid(*([levels] * inner), indexing="ij"), axis=-1
        ).reshape(-1, inner)
    )
    best_rate = -np.inf
    best_alpha = None
    if n == inner:
        rates = kernels.af_rate_batch(w, v, net.snr, inner_block)
        idx = int(np.argmax(rates))
        return float(rates[idx]), inner_block[idx].copy()
    outer_shape = (points,) * (n - inner)
    block = np.empty((inner_block.shape[0], n))
    block[:, n - inner:] = inner_block
    for outer_idx in np.ndindex(outer_shape):
        block[:, : n - inner] = levels[list(outer_idx)]
        rates = kernels.af_rate_batch(w, v, net.snr, block)
        idx = int(np.argmax(rates))
        if rates[idx] > best_rate:
            best_rate = float(rates[idx])
            best_alpha = block[idx].copy()
    return best_rate, best_alpha
