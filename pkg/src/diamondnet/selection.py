"""Relay-subset selection with the k/(k+1) guarantee, and the bound calculators.

``select`` discovers, in O(kN) comparisons, a subset of at most k relays
whose own min-cut approximation is at least k/(k+1) of the full network's
omega. The construction walks threshold bins tau_j = j*omega/(k+1): it
anchors on a relay with a top-bin source rate, then repeatedly finds relays
whose destination rates cover the remaining gap, recording the strictly
increasing bin certificate that forces termination within k-1 rounds.

``omega_k_bruteforce`` / ``omega_k_ratio`` are the desk-scale oracles for
the best k-subnetwork, ``tight_config`` generates the worst-case family
where the k/(k+1) fraction is achieved exactly, and ``guarantee`` /
``hybrid_tradeoff`` evaluate the resulting capacity lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .cuts import gap_constant, omega_bruteforce, omega_fast
from .errors import DegenerateNetworkError, SizeLimitError, ValidationError
from .model import RateTable

SUBSET_ENUMERATION_LIMIT = 10**6

GAP_MODELS = ("nnc", "optimized", "routing")


@dataclass(frozen=True, slots=True)
class Certificate:
    """Threshold-bin witness produced by the constructive selection.

    ``anchor_bin`` is the integer a locating the anchor relay's destination
    rate in [tau_{k-a}, tau_{k-a+1}); it is None when the anchor already
    clears tau_k and is returned alone. ``bins`` is the strictly increasing
    sequence (a_0=0, a_1, ..., a_l) pinned by the non-terminal rounds.
    """

    anchor_bin: int | None
    bins: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SelectionResult:
    """Chosen relay subset, its achieved omega, certificate and comparison count."""

    gamma: tuple[int, ...]
    omega_gamma: float
    certificate: Certificate | None
    comparisons: int


@dataclass(frozen=True, slots=True)
class GuaranteeReport:
    """Capacity lower bound for the best k-relay subnetwork.

    ``components`` is (multiplicative term, strategy gap, beamforming gap);
    the bound is their signed sum clipped at zero.
    """

    k: int
    lower_bound: float
    gap_model: str
    components: tuple[float, float, float]


@dataclass(frozen=True, slots=True)
class TradeoffReport:
    """Per-k guarantee table, the additive baseline, and the best k."""

    entries: tuple[tuple[int, float], ...]
    best_k: int
    baseline: float
    gap_model: str


def _subset_rates(rt: RateTable, members) -> tuple[np.ndarray, np.ndarray]:
    idx = np.array([i - 1 for i in members], dtype=np.int64)
    return rt.r_s[idx], rt.r_d[idx]


def _omega_of_subset(rt: RateTable, members) -> float:
    """omega of the subnetwork ``members`` via the exact sorted-scan path."""
    r_s, r_d = _subset_rates(rt, members)
    order = np.argsort(r_s, kind="stable")
    value, _ = kernels.omega_sorted_scan(r_s[order], r_d[order])
    return float(value)


def _validate_k(k) -> int:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ValidationError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    return int(k)


def select(
    rt: RateTable, k: int, omega: float, *, check_omega: bool = False
) -> SelectionResult:
    """Find at most k relays whose subnetwork omega is >= (k/(k+1)) * omega.

    ``omega`` is the caller-supplied min-cut approximation of ``rt``
    (compute it once with ``omega_fast``); pass ``check_omega=True`` to
    recompute and cross-check it. Threshold comparisons are non-strict
    (>= tau_j) with no epsilon. Candidate scans run in ascending relay
    index and take the first qualifying relay.

    Edge cases: when k >= n the iteration is skipped and all relays with a
    nonzero min-rate are returned (all relays when none qualify); when
    omega <= 0 the guarantee is vacuous and relay 1 is returned alone.

    Worst-case comparisons: 2*n*k - (k-1)*k/2 + 2*n.
    """
    k = _validate_k(k)
    omega = float(omega)
    if not math.isfinite(omega) or omega < 0.0:
        raise ValidationError(f"omega must be a finite nonnegative rate, got {omega}")
    if check_omega:
        recomputed = omega_fast(rt).value
        if abs(omega - recomputed) > 1e-9 * max(1.0, recomputed):
            raise ValidationError(
                f"supplied omega {omega} disagrees with recomputed {recomputed}"
            )
    n = rt.n
    r_s = rt.r_s
    r_d = rt.r_d
    comparisons = 0

    if k >= n:
        # whole network fits; zero-min-rate relays carry nothing and are dropped
        keep = []
        for i in range(n):
            comparisons += 2  # min of the pair, then the zero test
            if min(r_s[i], r_d[i]) > 0.0:
                keep.append(i + 1)
        gamma = tuple(keep) if keep else tuple(range(1, n + 1))
        return SelectionResult(
            gamma=gamma,
            omega_gamma=_omega_of_subset(rt, gamma),
            certificate=None,
            comparisons=comparisons,
        )

    if omega <= 0.0:
        gamma = (1,)
        return SelectionResult(
            gamma=gamma,
            omega_gamma=_omega_of_subset(rt, gamma),
            certificate=None,
            comparisons=comparisons,
        )

    tau = [j * omega / (k + 1) for j in range(k + 1)]

    # anchor: first relay with r_s >= tau_k and r_d >= tau_1
    p = -1
    for i in range(n):
        comparisons += 1
        if r_s[i] >= tau[k]:
            comparisons += 1
            if r_d[i] >= tau[1]:
                p = i
                break
    if p < 0:
        raise AssertionError(
            "no anchor relay clears the top threshold; omega is inconsistent "
            "with the rate table"
        )

    comparisons += 1
    if r_d[p] >= tau[k]:
        gamma = (p + 1,)
        return SelectionResult(
            gamma=gamma,
            omega_gamma=_omega_of_subset(rt, gamma),
            certificate=Certificate(anchor_bin=None, bins=()),
            comparisons=comparisons,
        )

    # bin the anchor's destination rate: tau_{k-a} <= r_d[p] < tau_{k-a+1}
    a = -1
    for cand_a in range(1, k):
        comparisons += 1
        if r_d[p] >= tau[k - cand_a]:
            a = cand_a
            break
    if a < 0:
        raise AssertionError("anchor bin not found; omega is inconsistent")

    used = np.zeros(n, dtype=bool)
    used[p] = True
    collected: list[int] = []
    bins = [0]
    a_prev = 0
    terminal = False
    for _round in range(k - 1):
        # find the first unused relay with r_s >= tau_{a_prev+1}, r_d >= tau_{k-a_prev}
        y = -1
        for i in range(n):
            if used[i]:
                continue
            comparisons += 1
            if r_s[i] >= tau[a_prev + 1]:
                comparisons += 1
                if r_d[i] >= tau[k - a_prev]:
                    y = i
                    break
        if y < 0:
            raise AssertionError(
                "no qualifying relay at a selection round; omega is inconsistent "
                "with the rate table"
            )
        used[y] = True
        collected.append(y + 1)
        comparisons += 1
        if r_s[y] >= tau[a]:
            terminal = True
            break
        # bin the new relay's source rate: tau_{a_r} <= r_s[y] < tau_{a_r+1}
        a_r = -1
        for cand in range(a_prev + 1, a):
            comparisons += 1
            if r_s[y] < tau[cand + 1]:
                a_r = cand
                break
        if a_r < 0:
            raise AssertionError("round bin not found; omega is inconsistent")
        bins.append(a_r)
        a_prev = a_r
    if not terminal:
        raise AssertionError(
            "selection failed to terminate within k-1 rounds; omega is "
            "inconsistent with the rate table"
        )

    gamma = tuple(sorted(collected + [p + 1]))
    return SelectionResult(
        gamma=gamma,
        omega_gamma=_omega_of_subset(rt, gamma),
        certificate=Certificate(anchor_bin=a, bins=tuple(bins)),
        comparisons=comparisons,
    )


def verify_selection(
    rt: RateTable, sel: SelectionResult, k: int, omega: float
) -> bool:
    """Brute-force check that the selected subset carries (k/(k+1)) * omega."""
    k = _validate_k(k)
    if not sel.gamma:
        raise ValidationError("selection has an empty relay set")
    if len(sel.gamma) > 24:
        raise SizeLimitError("brute-force verification limited to 24 relays")
    if any(i < 1 or i > rt.n for i in sel.gamma):
        raise ValidationError("selected relay index out of range")
    r_s, r_d = _subset_rates(rt, sel.gamma)
    value = omega_bruteforce(RateTable(r_s, r_d)).value
    return value >= (k / (k + 1)) * float(omega) - 1e-9


def omega_k_bruteforce(rt: RateTable, k: int) -> tuple[float, tuple[int, ...]]:
    """Exact max of omega over all k-relay subsets, with its first argmax.

    Ties resolve to the lexicographically smallest subset. Guarded at
    C(n, k) <= 10**6 enumerated subsets.
    """
    k = _validate_k(k)
    n = rt.n
    if k > n:
        raise ValidationError(f"k={k} exceeds the number of relays n={n}")
    count = math.comb(n, k)
    if count > SUBSET_ENUMERATION_LIMIT:
        raise SizeLimitError(
            f"C({n},{k}) = {count} subsets exceeds the enumeration limit "
            f"{SUBSET_ENUMERATION_LIMIT}"
        )
    members = np.fromiter(
        (i for combo in combinations(range(n), k) for i in combo),
        dtype=np.int64,
        count=count * k,
    ).reshape(count, k)
    values = kernels.omega_rows(members, rt.r_s, rt.r_d)
    best = int(np.argmax(values))
    return float(values[best]), tuple(int(i) + 1 for i in members[best])


def omega_k_ratio(rt: RateTable, k: int) -> float:
    """Ratio of the best k-subnetwork omega to the full omega.

    Always in [k/(k+1), 1] and nondecreasing in k. Undefined on
    all-zero-rate networks.
    """
    omega = omega_fast(rt).value
    if omega <= 0.0:
        raise DegenerateNetworkError(
            "omega is zero; the subnetwork ratio is undefined"
        )
    value, _ = omega_k_bruteforce(rt, k)
    return value / omega


def tight_config(k: int, base_rate: float = 1.0) -> RateTable:
    """The (k+1)-relay staircase on which the k/(k+1) fraction is exact.

    Relay i of [1, k+1] gets r_s = i * base_rate and r_d = (k+2-i) *
    base_rate, so omega = (k+1) * base_rate while every k-subset achieves
    exactly k * base_rate.
    """
    k = _validate_k(k)
    base_rate = float(base_rate)
    if not math.isfinite(base_rate) or base_rate <= 0.0:
        raise ValidationError(f"base_rate must be positive, got {base_rate}")
    idx = np.arange(1, k + 2, dtype=np.float64)
    return RateTable(idx * base_rate, (k + 2 - idx) * base_rate)


def strategy_gap(k: int, gap_model: str) -> float:
    """Achievability gap of the relaying strategy backing the guarantee.

    nnc: 1.3 * k. optimized: log2(k+1) + log2(k) + 1. routing: 0 (a single
    relay needs no network code; only valid for k = 1).
    """
    k = _validate_k(k)
    if gap_model == "nnc":
        return 1.3 * k
    if gap_model == "optimized":
        return math.log2(k + 1) + math.log2(k) + 1.0
    if gap_model == "routing":
        if k != 1:
            raise ValidationError("the routing gap model applies to k=1 only")
        return 0.0
    raise ValidationError(f"unknown gap model {gap_model!r}; pick from {GAP_MODELS}")


def guarantee(
    c_bar_approx: float, k: int, n: int, gap_model: str = "nnc"
) -> GuaranteeReport:
    """Capacity lower bound (k/(k+1))*c - s(k) - (k/(k+1))*G(n), clipped at 0.

    ``c_bar_approx`` approximates the cut-set bound of the full n-relay
    network; s(k) is ``strategy_gap``; G(n) is ``gap_constant``.
    """
    c_bar_approx = float(c_bar_approx)
    if not math.isfinite(c_bar_approx) or c_bar_approx < 0.0:
        raise ValidationError(
            f"c_bar_approx must be a finite nonnegative rate, got {c_bar_approx}"
        )
    k = _validate_k(k)
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    if k > n:
        raise ValidationError(f"k={k} exceeds n={n}")
    frac = k / (k + 1)
    mult = frac * c_bar_approx
    sgap = strategy_gap(k, gap_model)
    bgap = frac * gap_constant(int(n))
    return GuaranteeReport(
        k=k,
        lower_bound=max(0.0, mult - sgap - bgap),
        gap_model=gap_model,
        components=(mult, sgap, bgap),
    )


def hybrid_tradeoff(
    c_bar_approx: float, n: int, gap_model: str = "nnc"
) -> TradeoffReport:
    """Guarantee for every k, against the purely additive baseline c - 1.3*n.

    ``best_k`` is the smallest k maximizing the guarantee. The routing
    model only admits k = 1, so its table has a single row.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    if gap_model not in GAP_MODELS:
        raise ValidationError(f"unknown gap model {gap_model!r}; pick from {GAP_MODELS}")
    ks = (1,) if gap_model == "routing" else tuple(range(1, int(n) + 1))
    entries = tuple(
        (k, guarantee(c_bar_approx, k, int(n), gap_model).lower_bound) for k in ks
    )
    best_k = max(entries, key=lambda kv: (kv[1], -kv[0]))[0]
    baseline = max(0.0, float(c_bar_approx) - 1.3 * int(n))
    return TradeoffReport(
        entries=entries, best_k=best_k, baseline=baseline, gap_model=gap_model
    )
