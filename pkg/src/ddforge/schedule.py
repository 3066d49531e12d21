"""Dynamical-decoupling pulse schedules.

A schedule is a list of ``(duration, pulse)`` items applied in time order:
evolve freely for ``duration``, then apply the instantaneous global pulse.
Pulses are elements of the decoupling group ``{I, X, Y, Z}^{(x)N}``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import identity, kron_power, pauli

__all__ = [
    "PulseOp",
    "PulseSchedule",
    "none_schedule",
    "pdd_schedule",
    "cdd_schedule",
    "make_schedule",
    "pulse_matrix",
    "schedule_to_dict",
    "schedule_from_dict",
]


class PulseOp(enum.Enum):
    # Bit encoding (x-bit, z-bit): the group product up to phase is XOR.
    I = 0
    X = 1
    Z = 2
    Y = 3

    def __mul__(self, other):
        """Group product with the scalar phase dropped."""
        if not isinstance(other, PulseOp):
            return NotImplemented
        return PulseOp(self.value ^ other.value)

    @classmethod
    def parse(cls, label):
        key = str(label).strip().upper()
        aliases = {"IDENTITY": "I", "GLOBAL_X": "X", "GLOBAL_Y": "Y", "GLOBAL_Z": "Z"}
        try:
            return cls[aliases.get(key, key)]
        except KeyError:
            raise ValueError(f"unknown pulse {label!r}") from None


# The base block in time order: evolve, X, evolve, Z, evolve, X, evolve, Z.
BASE_BLOCK = (PulseOp.X, PulseOp.Z, PulseOp.X, PulseOp.Z)


@dataclass(frozen=True)
class PulseSchedule:
    total_time: float
    items: tuple
    scheme: str = "none"
    order: int = 0

    def __post_init__(self):
        items = tuple((float(d), PulseOp.parse(p) if not isinstance(p, PulseOp) else p)
                      for d, p in self.items)
        if not items:
            raise ValueError("schedule needs at least one segment")
        if any(d <= 0 for d, _ in items):
            raise ValueError("segment durations must be positive")
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)

    @property
    def durations(self):
        return np.array([d for d, _ in self.items])

    @property
    def pulses(self):
        return [p for _, p in self.items]


def _check_time(t):
    if not t > 0 or not np.isfinite(t):
        raise ValueError(f"evolution time must be positive and finite, got {t}")


def _check_order(n, name):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def none_schedule(t):
    _check_time(t)
    return PulseSchedule(t, ((t, PulseOp.I),), "none", 0)


def pdd_schedule(t, n_p):
    """``n_p`` repetitions of the four-pulse block, segment length ``t / (4 n_p)``."""
    _check_time(t)
    n_p = _check_order(n_p, "n_p")
    t0 = t / (4 * n_p)
    return PulseSchedule(t, tuple((t0, p) for _ in range(n_p) for p in BASE_BLOCK), "pdd", n_p)


def _cdd_pulses(level):
    if level == 1:
        return list(BASE_BLOCK)
    inner = _cdd_pulses(level - 1)
    out = []
    for outer in BASE_BLOCK:
        block = list(inner)
        # the outer pulse lands in the same slot as the inner block's last pulse
        block[-1] = outer * block[-1]
        out.extend(block)
    return out


def cdd_schedule(t, n_c):
    """Concatenated sequence of order ``n_c``: ``4**n_c`` segments of ``t / 4**n_c``."""
    _check_time(t)
    n_c = _check_order(n_c, "n_c")
    t0 = t / 4**n_c
    return PulseSchedule(t, tuple((t0, p) for p in _cdd_pulses(n_c)), "cdd", n_c)


def make_schedule(t, scheme="none", order=None):
    """Dispatch on ``scheme`` in ``{"none", "pdd", "cdd"}``."""
    scheme = scheme.lower()
    if scheme == "none":
        return none_schedule(t)
    if order is None:
        raise ValueError(f"scheme {scheme!r} needs an order")
    if scheme == "pdd":
        return pdd_schedule(t, order)
    if scheme == "cdd":
        return cdd_schedule(t, order)
    raise ValueError(f"unknown DD scheme {scheme!r}")


_PULSE_CACHE = {}


def pulse_matrix(p, n):
    """The ``n``-fold tensor power of the pulse's Pauli (read-only array)."""
    p = PulseOp.parse(p) if not isinstance(p, PulseOp) else p
    key = (p, n)
    m = _PULSE_CACHE.get(key)
    if m is None:
        m = identity(2**n) if p is PulseOp.I else kron_power(pauli(p.name), n)
        m.setflags(write=False)
        _PULSE_CACHE[key] = m
    return m


def schedule_to_dict(sched):
    return {
        "scheme": sched.scheme,
        "order": sched.order,
        "total_time_us": sched.total_time,
        "items": [{"duration_us": d, "pulse": p.name} for d, p in sched.items],
    }


def schedule_from_dict(doc):
    """Inverse of :func:`schedule_to_dict` (extra keys are ignored)."""
    items = tuple((it["duration_us"], PulseOp.parse(it["pulse"])) for it in doc["items"])
    total = doc.get("total_time_us", sum(d for d, _ in items))
    return PulseSchedule(total, items, doc.get("scheme", "custom"), doc.get("order") or 0)
