"""Joint distributions over (X, A, B1..Bn): assembly, verification, sampling.

A :class:`JointDistribution` is a full probability table over the
2^(n+2) outcomes of a binary response X, binary treatment A, and n
binary factors. Trees become distributions through
:func:`assemble_joint`; empirical data enters through :class:`Dataset`
and :func:`empirical_joint`. All conditional probabilities are obtained
by brute-force summation over the table, which keeps the verification
path independent of how a distribution was produced.

Sampling scheme (fixed; do not change without bumping the document
schema): the 2^(n+2) cells are listed in ascending lexicographic order
of the outcome tuple (x, a, b1..bn), and a single multinomial draw of
size ``total`` is taken over that list from a
``numpy.random.Generator`` seeded as ``Generator(PCG64(rng_seed))``.
Identical seeds reproduce identical datasets for a given numpy release.
"""

from __future__ import annotations

import itertools
import math
import warnings as _warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, ZeroProbabilityError
from .tree import (
    CellComparison,
    CellIndex,
    ChainReport,
    ParadoxTree,
    chain_report,
    format_cell,
)

Outcome = tuple[int, ...]  # (x, a, b1..bn)

PROB_SUM_TOLERANCE = 1e-12
MIN_CONDITION_MASS = 1e-15
MAX_DETECT_FACTORS = 8


def _check_outcome(key: Outcome, n: int) -> None:
    if len(key) != n + 2 or any(bit not in (0, 1) for bit in key):
        raise DomainError(f"malformed outcome key {key!r} for n={n}")


@dataclass(frozen=True)
class JointDistribution:
    """Probability table over all outcomes, plus the treatment marginal."""

    n: int
    p_treated: float
    probs: Mapping[Outcome, float]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")
        if not (0.0 <= self.p_treated <= 1.0):
            raise DomainError(f"p_treated must lie in [0, 1], got {self.p_treated!r}")
        if len(self.probs) != 2 ** (self.n + 2):
            raise DomainError(
                f"expected {2 ** (self.n + 2)} entries for n={self.n}, got {len(self.probs)}"
            )
        for key, p in self.probs.items():
            _check_outcome(key, self.n)
            if not math.isfinite(p) or p < 0.0:
                raise DomainError(f"probability of {key!r} must be finite and >= 0, got {p!r}")
        total = math.fsum(self.probs.values())
        if abs(total - 1.0) > PROB_SUM_TOLERANCE:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        treated = math.fsum(p for key, p in self.probs.items() if key[1] == 1)
        if abs(treated - self.p_treated) > PROB_SUM_TOLERANCE:
            raise DomainError(
                f"treated mass {treated!r} disagrees with p_treated={self.p_treated!r}"
            )

    def outcomes(self) -> list[Outcome]:
        return sorted(self.probs)


@dataclass(frozen=True)
class Dataset:
    """Integer counts per outcome cell; zero cells are dropped on construction."""

    n: int
    counts: Mapping[Outcome, int]
    total: int

    def __post_init__(self) -> None:
        kept: dict[Outcome, int] = {}
        for key, count in sorted(self.counts.items()):
            _check_outcome(key, self.n)
            if not isinstance(count, (int, np.integer)) or count < 0:
                raise DomainError(f"count for {key!r} must be a nonnegative integer, got {count!r}")
            if count:
                kept[key] = int(count)
        object.__setattr__(self, "counts", kept)
        if self.total != sum(kept.values()) or self.total < 1:
            raise DomainError(
                f"total {self.total!r} must be positive and equal the summed counts "
                f"({sum(kept.values())})"
            )

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[Outcome, int]) -> "Dataset":
        return cls(n=n, counts=dict(counts), total=int(sum(counts.values())))

    def count(self, key: Outcome) -> int:
        return self.counts.get(key, 0)


@dataclass(frozen=True)
class EffectMeasures:
    risk_difference: float
    relative_risk: float
    odds_ratio: float


@dataclass(frozen=True)
class DetectionResult:
    """One factor ordering whose comparison chain flips at least once."""

    factor_order: tuple[int, ...]
    report: ChainReport
    warnings: tuple[str, ...]

    @property
    def flips(self) -> int:
        return _count_flips(self.report)


def assemble_joint(tree: ParadoxTree, p_treated: float = 0.5) -> JointDistribution:
    """Attach a treatment marginal to a paradox tree's leaf masses.

    Leaf masses are per-arm conditionals, so each arm is divided by the
    root's arm total before being scaled by the marginal; when a root
    arm strays from mass 1 by more than 1e-9 the renormalization is
    reported as a warning. Every conditional of the result is
    independent of ``p_treated``.
    """
    if not (0.0 < p_treated < 1.0):
        raise DomainError(f"p_treated must lie strictly inside (0, 1), got {p_treated!r}")
    root = tree.root.quad
    treated_norm = root.a + root.b
    control_norm = root.c + root.d
    for arm, norm in (("treated", treated_norm), ("control", control_norm)):
        if abs(norm - 1.0) > 1e-9:
            _warnings.warn(
                f"root {arm} masses sum to {norm!r}; renormalizing that arm to 1",
                stacklevel=2,
            )
    probs: dict[Outcome, float] = {}
    for leaf in tree.leaves():
        bits = leaf.index
        q = leaf.quad
        probs[(1, 1) + bits] = p_treated * q.a / treated_norm
        probs[(0, 1) + bits] = p_treated * q.b / treated_norm
        probs[(1, 0) + bits] = (1.0 - p_treated) * q.c / control_norm
        probs[(0, 0) + bits] = (1.0 - p_treated) * q.d / control_norm
    return JointDistribution(n=tree.n, p_treated=p_treated, probs=probs)


def _masses(
    joint: JointDistribution, arm: int, fixed: Mapping[int, int]
) -> tuple[float, float]:
    """(success mass, total mass) of the event {A=arm, B_f=bit for f in fixed}."""
    success: list[float] = []
    total: list[float] = []
    for key, p in joint.probs.items():
        if key[1] != arm:
            continue
        if any(key[1 + factor] != bit for factor, bit in fixed.items()):
            continue
        total.append(p)
        if key[0] == 1:
            success.append(p)
    return math.fsum(success), math.fsum(total)


def conditional(
    joint: JointDistribution, success: bool, arm: bool, cell: CellIndex = ()
) -> float:
    """P(X=success | A=arm, first-factors cell), by brute-force summation.

    ``cell`` fixes the leading factors B1..Bm in their natural order.
    """
    if len(cell) > joint.n or any(bit not in (0, 1) for bit in cell):
        raise DomainError(f"malformed cell {cell!r} for n={joint.n}")
    fixed = {i + 1: bit for i, bit in enumerate(cell)}
    success_mass, total_mass = _masses(joint, int(arm), fixed)
    if total_mass <= MIN_CONDITION_MASS:
        raise ZeroProbabilityError(
            f"event A={int(arm)}, cell {format_cell(cell)} has probability "
            f"{total_mass!r} (<= {MIN_CONDITION_MASS})"
        )
    mass = success_mass if success else total_mass - success_mass
    return mass / total_mass


def _describe(order: Sequence[int], assignment: CellIndex, arm: int) -> str:
    fixed = ", ".join(f"B{f}={bit}" for f, bit in zip(order, assignment))
    return f"A={arm}" + (f", {fixed}" if fixed else "")


def _chain_levels(
    joint: JointDistribution,
    order: Sequence[int],
    max_depth: int,
    tolerant: bool,
) -> tuple[list[list[CellComparison]], list[str]]:
    """Comparison cells for depths 0..max_depth under a factor ordering.

    In tolerant mode an empty conditioning cell truncates the chain at
    the preceding depth and is reported as a warning instead of raising.
    """
    levels: list[list[CellComparison]] = []
    notes: list[str] = []
    for depth in range(max_depth + 1):
        chosen = tuple(order[:depth])
        cells: list[CellComparison] = []
        for assignment in itertools.product((0, 1), repeat=depth):
            fixed = dict(zip(chosen, assignment))
            s1, t1 = _masses(joint, 1, fixed)
            s0, t0 = _masses(joint, 0, fixed)
            empty_arm = 1 if t1 <= MIN_CONDITION_MASS else (0 if t0 <= MIN_CONDITION_MASS else None)
            if empty_arm is not None:
                message = (
                    f"event {_describe(chosen, assignment, empty_arm)} has probability "
                    f"<= {MIN_CONDITION_MASS}"
                )
                if not tolerant:
                    raise ZeroProbabilityError(message)
                notes.append(message + f"; chain truncated at depth {depth - 1}")
                return levels, notes
            cells.append(
                CellComparison(cell=assignment, p_treated=s1 / t1, p_control=s0 / t0)
            )
        levels.append(cells)
    return levels, notes


def verify_chain(
    joint: JointDistribution,
    factor_order: Sequence[int],
    max_depth: int | None = None,
) -> ChainReport:
    """Check the alternating comparison chain under a factor ordering.

    Works on any joint distribution. Depth m conditions on the first m
    factors of ``factor_order`` (1-based indices); the verdict demands a
    uniform strict direction per depth, flipping at every depth.
    """
    order = tuple(factor_order)
    if len(set(order)) != len(order):
        raise DomainError(f"factor order {order!r} repeats a factor")
    for factor in order:
        if not 1 <= factor <= joint.n:
            raise DomainError(f"factor {factor!r} outside 1..{joint.n}")
    depth = len(order) if max_depth is None else max_depth
    if not 0 <= depth <= len(order):
        raise DomainError(f"max_depth {depth!r} outside 0..{len(order)}")
    levels, _ = _chain_levels(joint, order, depth, tolerant=False)
    return chain_report(levels)


def _count_flips(report: ChainReport) -> int:
    flips = 0
    for previous, current in zip(report.depths, report.depths[1:]):
        if (
            previous.direction is not None
            and current.direction is not None
            and current.direction is previous.direction.flipped()
        ):
            flips += 1
    return flips


def detect(data: Dataset, max_factors: int) -> list[DetectionResult]:
    """Find factor orderings whose empirical chain reverses direction.

    Enumerates every permutation of every nonempty factor subset of size
    up to ``max_factors`` and keeps the orderings showing at least one
    flip between consecutive depths. Orderings that run into an empty
    conditioning cell are evaluated on the depths that exist and carry a
    warning. Results are ordered lexicographically by factor order.
    Exhaustive by design, hence the hard cap of 8 factors.
    """
    if data.n > MAX_DETECT_FACTORS:
        raise DomainError(
            f"detection enumerates orderings exhaustively and caps n at "
            f"{MAX_DETECT_FACTORS}; dataset has {data.n} factors"
        )
    if max_factors < 1:
        raise DomainError(f"max_factors must be at least 1, got {max_factors}")
    joint = empirical_joint(data)
    results: list[DetectionResult] = []
    for size in range(1, min(max_factors, data.n) + 1):
        for order in itertools.permutations(range(1, data.n + 1), size):
            levels, notes = _chain_levels(joint, order, size, tolerant=True)
            report = chain_report(levels)
            if _count_flips(report) >= 1:
                results.append(
                    DetectionResult(factor_order=order, report=report, warnings=tuple(notes))
                )
    results.sort(key=lambda result: result.factor_order)
    return results


def effect_measures(p1: float, p0: float) -> EffectMeasures:
    """Risk difference, relative risk, and odds ratio of two proportions.

    The three agree in sign relative to their null values (0, 1, 1), so
    any one of them determines the comparison direction.
    """
    for name, p in (("p1", p1), ("p0", p0)):
        if not 0.0 < p < 1.0:
            raise DomainError(f"{name} must lie strictly inside (0, 1), got {p!r}")
    return EffectMeasures(
        risk_difference=p1 - p0,
        relative_risk=p1 / p0,
        odds_ratio=(p1 * (1.0 - p0)) / ((1.0 - p1) * p0),
    )


def sample(joint: JointDistribution, total: int, rng_seed: int) -> Dataset:
    """Draw ``total`` observations from the joint distribution.

    Deterministic per the module-level sampling scheme: one multinomial
    draw over the lexicographically ordered cells from PCG64(rng_seed).
    """
    if not isinstance(total, (int, np.integer)) or total < 1:
        raise DomainError(f"total must be a positive integer, got {total!r}")
    if not isinstance(rng_seed, (int, np.integer)) or not 0 <= rng_seed < 2**64:
        raise DomainError(f"rng_seed must be a 64-bit unsigned integer, got {rng_seed!r}")
    cells = joint.outcomes()
    pvals = np.array([joint.probs[cell] for cell in cells], dtype=float)
    rng = np.random.Generator(np.random.PCG64(int(rng_seed)))
    draws = rng.multinomial(int(total), pvals)
    counts = {cell: int(count) for cell, count in zip(cells, draws) if count}
    return Dataset(n=joint.n, counts=counts, total=int(total))


def empirical_joint(data: Dataset) -> JointDistribution:
    """Maximum-likelihood joint: counts over total, no continuity correction."""
    probs: dict[Outcome, float] = {}
    for key in itertools.product((0, 1), repeat=data.n + 2):
        probs[key] = data.count(key) / data.total
    p_treated = math.fsum(p for key, p in probs.items() if key[1] == 1)
    return JointDistribution(n=data.n, p_treated=p_treated, probs=probs)
