"""First-quadrant vector arithmetic underlying the paradox construction.

A 2x2 outcome split is read as a plane vector: failure mass on the
horizontal axis, success mass on the vertical axis. Three views of the
same comparison then coincide for vectors strictly inside the first
quadrant:

* the success proportion ``vertical / (vertical + horizontal)``,
* the slope ``vertical / horizontal``,
* the angle of the vector above the horizontal axis.

Ordering two vectors by any one of these orders them by all three. The
rest of the package leans on that equivalence: proportion comparisons
are decided by an exact cross product, while the constructive machinery
works in angle space.

All functions here are pure and operate on immutable values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

# Components closer to an axis than this are rejected outright: the
# construction downstream takes tangents that blow up near pi/2.
AXIS_FLOOR = 1e-12


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class PlaneVector:
    """A first-quadrant vector: (failure mass, success mass)."""

    horizontal: float
    vertical: float

    def __post_init__(self) -> None:
        for name in ("horizontal", "vertical"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} component must be finite, got {value!r}")
            if value < 0.0:
                raise DomainError(f"{name} component must be nonnegative, got {value!r}")

    def scaled(self, k: float) -> "PlaneVector":
        return PlaneVector(self.horizontal * k, self.vertical * k)


@dataclass(frozen=True)
class Angle:
    """An angle strictly between 0 and pi/2 radians."""

    radians: float

    def __post_init__(self) -> None:
        if not (0.0 < self.radians < math.pi / 2):
            raise DomainError(
                f"angle must lie strictly inside (0, pi/2), got {self.radians!r}"
            )

    @property
    def tangent(self) -> float:
        return math.tan(self.radians)


def _require_open_quadrant(v: PlaneVector) -> None:
    for name in ("horizontal", "vertical"):
        value = getattr(v, name)
        if value < AXIS_FLOOR:
            raise DomainError(
                f"{name} component {value!r} is within {AXIS_FLOOR} of an axis; "
                "open-quadrant vector required"
            )


def angle_of(v: PlaneVector) -> Angle:
    """Angle of an open-quadrant vector above the horizontal axis."""
    _require_open_quadrant(v)
    return Angle(math.atan2(v.vertical, v.horizontal))


def proportion_of(v: PlaneVector) -> float:
    """Success proportion ``vertical / (vertical + horizontal)``, in (0, 1)."""
    _require_open_quadrant(v)
    return v.vertical / (v.vertical + v.horizontal)


def compare(v1: PlaneVector, v2: PlaneVector) -> Ordering:
    """Order two open-quadrant vectors by success proportion.

    Decided by the cross product ``v1.vertical * v2.horizontal -
    v2.vertical * v1.horizontal`` so that no division is involved;
    equality means the cross product is exactly zero. The result agrees
    with ordering the angles or the proportions directly.
    """
    _require_open_quadrant(v1)
    _require_open_quadrant(v2)
    cross = v1.vertical * v2.horizontal - v2.vertical * v1.horizontal
    if cross > 0.0:
        return Ordering.GREATER
    if cross < 0.0:
        return Ordering.LESS
    return Ordering.EQUAL
