"""Network data model.

A diamond network is a source broadcasting to N relays that share a
multiple-access channel to the destination, with no direct link. It can be
described either physically (an SNR plus per-relay channel-gain magnitudes)
or, equivalently, by the per-relay point-to-point rates

    r_s[i] = log2(1 + snr * gain_s[i]**2)    source -> relay i
    r_d[i] = log2(1 + snr * gain_d[i]**2)    relay i -> destination

in bits/s/Hz. Every algorithm downstream consumes the rate description, so
``RateTable`` is the canonical internal form; ``rate_table`` and
``network_from`` convert between the two. Channel phases are never stored:
every quantity computed here depends on magnitudes only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

_LN2 = math.log(2.0)


def _require_finite(name, value):
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")


def point_capacity(snr: float, gain: float) -> float:
    """Rate log2(1 + snr * gain**2) of a point-to-point AWGN link, bits/s/Hz."""
    snr = float(snr)
    gain = float(gain)
    _require_finite("snr", snr)
    _require_finite("gain", gain)
    if snr <= 0.0:
        raise ValidationError(f"snr must be positive, got {snr}")
    if gain < 0.0:
        raise ValidationError(f"gain must be nonnegative, got {gain}")
    return float(np.log1p(snr * gain * gain) / _LN2)


@dataclass(frozen=True, slots=True)
class RelayChannels:
    """Channel-gain magnitudes of one relay: source side and destination side."""

    gain_s: float
    gain_d: float

    def __post_init__(self):
        for name in ("gain_s", "gain_d"):
            value = float(getattr(self, name))
            _require_finite(name, value)
            if value < 0.0:
                raise ValidationError(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True, slots=True)
class Network:
    """A diamond network: linear SNR plus one ``RelayChannels`` per relay."""

    snr: float
    relays: tuple[RelayChannels, ...]

    def __post_init__(self):
        snr = float(self.snr)
        _require_finite("snr", snr)
        if snr <= 0.0:
            raise ValidationError(f"snr must be positive, got {snr}")
        object.__setattr__(self, "snr", snr)
        relays = tuple(self.relays)
        if not relays:
            raise ValidationError("a network needs at least one relay")
        if not all(isinstance(r, RelayChannels) for r in relays):
            raise ValidationError("relays must be RelayChannels instances")
        object.__setattr__(self, "relays", relays)
        # Rates derived from these gains must stay representable.
        for i, r in enumerate(relays):
            for name, g in (("gain_s", r.gain_s), ("gain_d", r.gain_d)):
                if not math.isfinite(snr * g * g):
                    raise ValidationError(
                        f"relay {i + 1}: snr * {name}**2 overflows"
                    )

    @property
    def n(self) -> int:
        return len(self.relays)

    def gain_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(gain_s, gain_d) as float64 arrays, relay order preserved."""
        gs = np.array([r.gain_s for r in self.relays], dtype=np.float64)
        gd = np.array([r.gain_d for r in self.relays], dtype=np.float64)
        return gs, gd


class RateTable:
    """Per-relay point-to-point rates (r_s, r_d), the canonical description.

    Arrays are copied on construction and frozen read-only; instances are
    safe to share across threads.
    """

    __slots__ = ("r_s", "r_d")

    def __init__(self, r_s, r_d):
        r_s = np.array(r_s, dtype=np.float64, copy=True).reshape(-1)
        r_d = np.array(r_d, dtype=np.float64, copy=True).reshape(-1)
        if r_s.size != r_d.size:
            raise ValidationError(
                f"rate lists must have equal length, got {r_s.size} and {r_d.size}"
            )
        if r_s.size == 0:
            raise ValidationError("a rate table needs at least one relay")
        for name, arr in (("r_s", r_s), ("r_d", r_d)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} entries must be finite")
            if np.any(arr < 0.0):
                raise ValidationError(f"{name} entries must be nonnegative")
        r_s.flags.writeable = False
        r_d.flags.writeable = False
        object.__setattr__(self, "r_s", r_s)
        object.__setattr__(self, "r_d", r_d)

    def __setattr__(self, name, value):
        raise AttributeError("RateTable is immutable")

    @property
    def n(self) -> int:
        return int(self.r_s.size)

    def __eq__(self, other):
        if not isinstance(other, RateTable):
            return NotImplemented
        return np.array_equal(self.r_s, other.r_s) and np.array_equal(
            self.r_d, other.r_d
        )

    def __repr__(self):
        return f"RateTable(r_s={self.r_s.tolist()}, r_d={self.r_d.tolist()})"


def rate_table(net: Network) -> RateTable:
    """Point-to-point rates of every relay in ``net``."""
    gs, gd = net.gain_arrays()
    r_s = np.log1p(net.snr * gs * gs) / _LN2
    r_d = np.log1p(net.snr * gd * gd) / _LN2
    return RateTable(r_s, r_d)


def network_from(rt: RateTable, snr: float) -> Network:
    """Network with the given ``snr`` whose rate table reproduces ``rt``.

    Inverts the rate formula: gain = sqrt((2**r - 1) / snr). Round-trips
    through ``rate_table`` within 1e-12 relative error.
    """
    snr = float(snr)
    _require_finite("snr", snr)
    if snr <= 0.0:
        raise ValidationError(f"snr must be positive, got {snr}")
    gs = np.sqrt(np.expm1(rt.r_s * _LN2) / snr)
    gd = np.sqrt(np.expm1(rt.r_d * _LN2) / snr)
    relays = tuple(
        RelayChannels(gain_s=float(a), gain_d=float(b)) for a, b in zip(gs, gd)
    )
    return Network(snr=snr, relays=relays)
