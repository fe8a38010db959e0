"""Rational order chaotic maps and deterministic keystream generation.

The maps are ratios of degree-N polynomials on [0, 1].  For N = 2 the map is

    phi2(x, a) = a^2 (2x - 1)^2 / (4 x (1 - x) + a^2 (2x - 1)^2)

and the general member uses the terminating hypergeometric term
2F1(-N, N, 1/2, x), evaluated here through the closed form
cos(2N * arcsin(sqrt(x))).  Iterating the map from a secret seed yields the
keystreams that drive the cipher.
"""

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_BURN_IN = 100

# Orbit values this close to {0, 0.5, 1} are remapped: 0.5 -> 0 -> 1 -> 1 ...
# is an absorbing chain under every map in the family.
_DEGENERATE_EPS = 1e-12
_RESEED_BASE = 0.3943

# A post-burn-in window with variance below this has collapsed onto the
# attracting fixed point x* = 1 (local multiplier 4/a^2 < 1 for a > 2).
_VARIANCE_FLOOR = 1e-4
_GATE_WINDOW = 256


class DegenerateStreamError(RuntimeError):
    """The chaotic orbit collapsed and cannot serve as a keystream."""


def phi2(x, a):
    """One step of the degree-2 rational map on [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x!r} outside [0, 1]")
    if not a > 0.0:
        raise ValueError(f"control parameter a={a!r} must be positive")
    t = 2.0 * x - 1.0
    num = a * a * t * t
    return num / (4.0 * x * (1.0 - x) + num)


def phiN(x, a, n):
    """One step of the degree-n rational map on [0, 1].

    Uses c = (-1)^n * 2F1(-n, n, 1/2, x) = (-1)^n * cos(2n * arcsin(sqrt(x)))
    and returns a^2 (1 + c) / ((a^2 + 1) + (a^2 - 1) c).  phiN(x, a, 2)
    reduces algebraically to phi2(x, a).
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x!r} outside [0, 1]")
    if not a > 0.0:
        raise ValueError(f"control parameter a={a!r} must be positive")
    if n < 1:
        raise ValueError(f"polynomial degree n={n!r} must be >= 1")
    c = (-1.0) ** n * math.cos(2.0 * n * math.asin(math.sqrt(x)))
    a2 = a * a
    return a2 * (1.0 + c) / ((a2 + 1.0) + (a2 - 1.0) * c)


@dataclass(frozen=True)
class ChaoticParams:
    """Seed and control parameter of one keystream generator."""

    x0: float
    a: float
    n: int = 2

    def __post_init__(self):
        if not 0.0 < self.x0 < 1.0:
            raise ValueError(f"seed x0={self.x0!r} outside the open interval (0, 1)")
        if not self.a > 0.0:
            raise ValueError(f"control parameter a={self.a!r} must be positive")
        if self.n < 1:
            raise ValueError(f"polynomial degree n={self.n!r} must be >= 1")


@dataclass(frozen=True, eq=False)
class KeyStream:
    """A finite chaotic orbit segment, reproducible from its parameters."""

    values: np.ndarray
    params: ChaoticParams
    burn_in: int
    remap_count: int = field(default=0)

    def __len__(self):
        return len(self.values)


def _remap(x):
    return _RESEED_BASE + x * 1e-3


def _is_degenerate(x):
    return (
        abs(x) < _DEGENERATE_EPS
        or abs(x - 0.5) < _DEGENERATE_EPS
        or abs(x - 1.0) < _DEGENERATE_EPS
    )


def orbit(params, length, burn_in=DEFAULT_BURN_IN, allow_degenerate=False):
    """Iterate the map from params.x0 and emit `length` post-burn-in values.

    Iterates that land within 1e-12 of {0, 0.5, 1} are replaced by
    0.3943 + x * 1e-3 and counted in `remap_count`.  After burn-in the
    variance of the first 256 emitted values is checked; a collapsed stream
    raises DegenerateStreamError unless `allow_degenerate` is set.
    """
    if length < 1:
        raise ValueError(f"length={length!r} must be >= 1")
    if burn_in < 0:
        raise ValueError(f"burn_in={burn_in!r} must be >= 0")

    x = params.x0
    a = params.a
    n = params.n
    a2 = a * a
    remaps = 0
    values = np.empty(length)
    simple = n == 2
    for i in range(burn_in + length):
        if simple:
            t = 2.0 * x - 1.0
            num = a2 * t * t
            x = num / (4.0 * x * (1.0 - x) + num)
        else:
            x = phiN(x, a, n)
        if _is_degenerate(x):
            x = _remap(x)
            remaps += 1
        if i >= burn_in:
            values[i - burn_in] = x

    window = values[: min(_GATE_WINDOW, length)]
    if len(window) >= 2 and float(np.var(window)) < _VARIANCE_FLOOR:
        if not allow_degenerate:
            raise DegenerateStreamError(
                f"orbit from {params} collapsed (variance of first "
                f"{len(window)} values below {_VARIANCE_FLOOR})"
            )

    values.setflags(write=False)
    return KeyStream(values=values, params=params, burn_in=burn_in, remap_count=remaps)
