"""Single-step reversal split of a 2x2 mass table.

A :class:`Quadruple` carries the four cell masses of one stratification
cell: ``a`` treated successes, ``b`` treated failures, ``c`` control
successes, ``d`` control failures. Its comparison direction is the
ordering of the two success proportions ``a/(a+b)`` vs ``c/(c+d)``.

:func:`decompose` splits a quadruple into two children that sum back to
the parent componentwise while BOTH children compare in the opposite
direction. Geometrically, the treated vector ``(b, a)`` is written as
the sum of an inner vector hugging the horizontal axis and an outer
vector hugging the vertical axis, and likewise for the control vector
``(d, c)``; the angles are picked so that on each side the treated and
control angle order flips. The split is in closed form: the inner child
is the intersection of a line through the origin (slope = tangent of
the inner angle) with a line through the parent endpoint (slope =
tangent of the outer angle).

With the parent comparing greater (treated proportion above control),
the angle picks used here are

    theta1 = eta0/4,            eta1 = eta0/2,
    theta2 = pi/4 + theta0/2,   eta2 = 3*pi/8 + theta0/4,

where theta0, eta0 are the parent's treated and control angles; the
mirror case swaps the roles of the two arms. Other picks exist; the
``angle_policy`` hook accepts one, but only the choice above ships,
because the golden expectations downstream are pinned to it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DegenerateSeedError, DomainError
from .geometry import Angle, Ordering, PlaneVector, compare

# Masses at or below this are indistinguishable from an axis hit in
# double precision once the steep outer tangents get involved.
POSITIVITY_FLOOR = 1e-12

# Tolerance for the per-arm mass budget a+b <= 1: admits 1-ulp overshoot
# from upstream normalization without weakening the contract.
_BUDGET_TOL = 1e-12

# Seed angles closer than this to 0 or pi/2 are refused at entry points
# that accept user seeds (tree building, CLI): the case formulas push
# angles toward pi/2 where the tangent is ill-conditioned.
SEED_ANGLE_MARGIN = 1e-6


class Direction(enum.Enum):
    """Which way a quadruple's proportion comparison points."""

    GREATER = "greater"
    LESS = "less"

    def flipped(self) -> "Direction":
        return Direction.LESS if self is Direction.GREATER else Direction.GREATER

    @property
    def symbol(self) -> str:
        return ">" if self is Direction.GREATER else "<"


@dataclass(frozen=True)
class Quadruple:
    """Cell masses (a, b, c, d), all strictly positive, each arm summing to at most 1."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"mass {name} must be finite, got {value!r}")
            if value <= POSITIVITY_FLOOR:
                raise DomainError(
                    f"mass {name} must exceed {POSITIVITY_FLOOR}, got {value!r}"
                )
        if self.a + self.b > 1.0 + _BUDGET_TOL:
            raise DomainError(f"treated masses a+b={self.a + self.b!r} exceed 1")
        if self.c + self.d > 1.0 + _BUDGET_TOL:
            raise DomainError(f"control masses c+d={self.c + self.d!r} exceed 1")

    def treated_vector(self) -> PlaneVector:
        return PlaneVector(self.b, self.a)

    def control_vector(self) -> PlaneVector:
        return PlaneVector(self.d, self.c)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class AngleChoice:
    """Child angles for one split: inner/outer per arm.

    ``theta1``/``theta2`` are the treated arm's inner and outer angles,
    ``eta1``/``eta2`` the control arm's. Inner always lies below outer.
    """

    theta1: Angle
    eta1: Angle
    theta2: Angle
    eta2: Angle

    def __post_init__(self) -> None:
        if not (self.theta1.radians < self.theta2.radians):
            raise DomainError("inner treated angle must lie below the outer one")
        if not (self.eta1.radians < self.eta2.radians):
            raise DomainError("inner control angle must lie below the outer one")


AnglePolicy = Callable[[Angle, Angle, Direction], AngleChoice]


@dataclass(frozen=True)
class SlopeSet:
    """Tangents of the four chosen child angles."""

    inner_treated: float
    outer_treated: float
    inner_control: float
    outer_control: float


def direction_of(q: Quadruple) -> Direction:
    """Comparison direction of ``a/(a+b)`` vs ``c/(c+d)``, by exact cross product."""
    ordering = compare(q.treated_vector(), q.control_vector())
    if ordering is Ordering.GREATER:
        return Direction.GREATER
    if ordering is Ordering.LESS:
        return Direction.LESS
    raise DomainError(
        "equal success proportions: the quadruple has no comparison direction "
        f"(a={q.a!r}, b={q.b!r}, c={q.c!r}, d={q.d!r})"
    )


def choose_angles(theta0: Angle, eta0: Angle, direction: Direction) -> AngleChoice:
    """Child-angle picks for a parent with angles (theta0, eta0).

    For ``direction`` GREATER (requires theta0 > eta0) the children
    satisfy theta_i < eta_i on both sides; for LESS (requires
    theta0 < eta0) the reverse. Either way the comparison flips.
    """
    t0, e0 = theta0.radians, eta0.radians
    if direction is Direction.GREATER:
        if not t0 > e0:
            raise DomainError(
                f"direction 'greater' requires theta0 > eta0, got {t0!r} <= {e0!r}"
            )
        return AngleChoice(
            theta1=Angle(e0 / 4),
            eta1=Angle(e0 / 2),
            theta2=Angle(math.pi / 4 + t0 / 2),
            eta2=Angle(3 * math.pi / 8 + t0 / 4),
        )
    if not t0 < e0:
        raise DomainError(
            f"direction 'less' requires theta0 < eta0, got {t0!r} >= {e0!r}"
        )
    return AngleChoice(
        theta1=Angle(t0 / 2),
        eta1=Angle(t0 / 4),
        theta2=Angle(3 * math.pi / 8 + e0 / 4),
        eta2=Angle(math.pi / 4 + e0 / 2),
    )


def _parent_angles(q: Quadruple) -> tuple[Angle, Angle]:
    return (
        Angle(math.atan2(q.a, q.b)),
        Angle(math.atan2(q.c, q.d)),
    )


def compute_slopes(q: Quadruple, angle_policy: AnglePolicy = choose_angles) -> SlopeSet:
    """Tangents of the chosen child angles for one split of ``q``.

    Rejects quadruples whose inner and outer slopes nearly coincide on
    either arm (denominator below 1e-12), which would make the
    intersection formulas meaningless.
    """
    theta0, eta0 = _parent_angles(q)
    choice = angle_policy(theta0, eta0, direction_of(q))
    slopes = SlopeSet(
        inner_treated=choice.theta1.tangent,
        outer_treated=choice.theta2.tangent,
        inner_control=choice.eta1.tangent,
        outer_control=choice.eta2.tangent,
    )
    for arm, inner, outer in (
        ("treated", slopes.inner_treated, slopes.outer_treated),
        ("control", slopes.inner_control, slopes.outer_control),
    ):
        if not (math.isfinite(inner) and math.isfinite(outer)):
            raise DegenerateSeedError(f"{arm} slope overflowed double precision")
        if abs(inner - outer) < 1e-12:
            raise DegenerateSeedError(
                f"{arm} inner and outer slopes coincide to within 1e-12; "
                "seed is numerically degenerate"
            )
    return slopes


def _split_arm(success: float, failure: float, inner: float, outer: float) -> tuple[float, float]:
    # Intersection of y = inner*x with the line of slope `outer` through
    # (failure, success); returns the inner child's (success, failure).
    failure1 = (success - outer * failure) / (inner - outer)
    success1 = inner * failure1
    return success1, failure1


def decompose(
    q: Quadruple, angle_policy: AnglePolicy = choose_angles
) -> tuple[Quadruple, Quadruple]:
    """Split ``q`` into two children whose comparison direction is reversed.

    Guarantees, for a valid input:

    * conservation: ``child1 + child2 == q`` componentwise (exactly for
      the second child, to within one rounding for the first);
    * strictly positive children that are themselves valid quadruples,
      so the split can be iterated;
    * both children compare opposite to the parent;
    * the first child is the inner one (lower treated proportion than
      the parent), the second the outer one (higher).
    """
    slopes = compute_slopes(q, angle_policy)
    a1, b1 = _split_arm(q.a, q.b, slopes.inner_treated, slopes.outer_treated)
    c1, d1 = _split_arm(q.c, q.d, slopes.inner_control, slopes.outer_control)
    a2, b2 = q.a - a1, q.b - b1
    c2, d2 = q.c - c1, q.d - d1
    for name, value in (
        ("a1", a1), ("b1", b1), ("c1", c1), ("d1", d1),
        ("a2", a2), ("b2", b2), ("c2", c2), ("d2", d2),
    ):
        if not (value > POSITIVITY_FLOOR):
            raise DegenerateSeedError(
                f"child mass {name}={value!r} fell to the positivity floor "
                f"({POSITIVITY_FLOOR}); seed is too close to an axis for double precision"
            )
    try:
        return Quadruple(a1, b1, c1, d1), Quadruple(a2, b2, c2, d2)
    except DomainError as exc:
        raise DegenerateSeedError(f"child quadruple invalid: {exc}") from exc


def validate_seed_angles(q: Quadruple) -> None:
    """Refuse seeds whose angles sit within ``SEED_ANGLE_MARGIN`` of 0 or pi/2.

    Applied where user seeds enter (tree building, the CLI), not to the
    children produced internally, which are covered by the positivity
    and denominator checks instead.
    """
    theta0, eta0 = _parent_angles(q)
    for name, angle in (("treated", theta0), ("control", eta0)):
        if angle.radians < SEED_ANGLE_MARGIN or angle.radians > math.pi / 2 - SEED_ANGLE_MARGIN:
            raise DegenerateSeedError(
                f"seed {name} angle {angle.radians!r} is within {SEED_ANGLE_MARGIN} rad "
                "of an axis; pick masses further from the boundary"
            )
