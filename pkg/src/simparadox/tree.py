"""Recursive assembly of the depth-alternating paradox tree.

The n-factor construction is a complete binary tree of quadruples. The
root holds the seed; every node at depth m < n is split once, so each
internal node is one elementary reversal and a depth-n tree contains
2^n - 1 of them. Cells are addressed by bit tuples: the root is ``()``,
and a node's children append ``1`` (the inner child, whose treated
proportion drops below the parent's) or ``0`` (the outer child, above).

Because every split reverses the comparison on both children, the
comparison direction is uniform across each depth and alternates from
one depth to the next. :func:`verify_alternation` checks exactly that,
recomputing every proportion from the stored masses rather than
trusting the directions the builder recorded, so it serves as an
independent check on the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .decomposition import (
    AnglePolicy,
    Direction,
    Quadruple,
    choose_angles,
    decompose,
    direction_of,
    validate_seed_angles,
)
from .errors import DegenerateSeedError, DomainError

CellIndex = tuple[int, ...]

DEFAULT_DEPTH_CAP = 24  # 2^(n+1)-1 nodes; ~33M at the cap


def format_cell(cell: CellIndex) -> str:
    return "".join(map(str, cell)) if cell else "()"


@dataclass(frozen=True)
class ParadoxNode:
    index: CellIndex
    quad: Quadruple
    direction: Direction


@dataclass(frozen=True)
class ParadoxTree:
    """Complete binary tree of quadruples, keyed by cell bit tuple."""

    n: int
    root_direction: Direction
    nodes: Mapping[CellIndex, ParadoxNode]

    def __post_init__(self) -> None:
        expected = 2 ** (self.n + 1) - 1
        if len(self.nodes) != expected:
            raise DomainError(
                f"tree of depth {self.n} must hold {expected} nodes, got {len(self.nodes)}"
            )
        for index, node in self.nodes.items():
            if node.index != index:
                raise DomainError(f"node stored under {index} claims index {node.index}")
            if len(index) > self.n or any(bit not in (0, 1) for bit in index):
                raise DomainError(f"malformed cell index {index!r}")

    @property
    def root(self) -> ParadoxNode:
        return self.nodes[()]

    @property
    def internal_count(self) -> int:
        return 2**self.n - 1

    def cells_at(self, depth: int) -> list[ParadoxNode]:
        return [self.nodes[idx] for idx in sorted(i for i in self.nodes if len(i) == depth)]

    def leaves(self) -> list[ParadoxNode]:
        return self.cells_at(self.n)


@dataclass(frozen=True)
class CellComparison:
    """One cell's pair of success proportions (treated, control)."""

    cell: CellIndex
    p_treated: float
    p_control: float

    @property
    def margin(self) -> float:
        return abs(self.p_treated - self.p_control)

    @property
    def direction(self) -> Direction | None:
        if self.p_treated > self.p_control:
            return Direction.GREATER
        if self.p_treated < self.p_control:
            return Direction.LESS
        return None


@dataclass(frozen=True)
class DepthRecord:
    """Summary of one conditioning depth: uniform direction (or None) and margins."""

    depth: int
    direction: Direction | None
    min_margin: float
    worst_cell: CellIndex
    cells: tuple[CellComparison, ...]


@dataclass(frozen=True)
class ChainReport:
    """Per-depth comparison records plus the overall alternation verdict."""

    depths: tuple[DepthRecord, ...]
    verdict: bool

    def directions(self) -> tuple[Direction | None, ...]:
        return tuple(record.direction for record in self.depths)


def chain_report(levels: Sequence[Sequence[CellComparison]]) -> ChainReport:
    """Assemble a report from per-depth cell comparisons.

    The verdict is true iff every depth carries one strict direction
    shared by all of its cells and consecutive depths point opposite
    ways.
    """
    records = []
    verdict = True
    previous: Direction | None = None
    for depth, cells in enumerate(levels):
        directions = {cell.direction for cell in cells}
        uniform = len(directions) == 1 and None not in directions
        direction = directions.pop() if uniform else None
        worst = min(cells, key=lambda cell: (cell.margin, cell.cell))
        records.append(
            DepthRecord(
                depth=depth,
                direction=direction,
                min_margin=worst.margin,
                worst_cell=worst.cell,
                cells=tuple(cells),
            )
        )
        if direction is None or (previous is not None and direction is not previous.flipped()):
            verdict = False
        previous = direction
    return ChainReport(depths=tuple(records), verdict=verdict)


def node_conditionals(node: ParadoxNode) -> tuple[float, float]:
    """Success proportions (treated, control) of the node's quadruple."""
    q = node.quad
    return q.a / (q.a + q.b), q.c / (q.c + q.d)


def build(
    seed: Quadruple,
    n: int,
    angle_policy: AnglePolicy = choose_angles,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> ParadoxTree:
    """Grow a depth-``n`` paradox tree from ``seed``.

    Deterministic: equal inputs give bit-identical trees, and growing a
    deeper tree never changes the quadruples of shallower depths. A
    split failure surfaces as :class:`DegenerateSeedError` carrying the
    cell at which it happened.
    """
    if n < 0:
        raise DomainError(f"depth must be nonnegative, got {n}")
    if n > depth_cap:
        raise DomainError(f"depth {n} exceeds the cap of {depth_cap}")
    try:
        validate_seed_angles(seed)
    except DegenerateSeedError as exc:
        raise DegenerateSeedError(str(exc), cell=()) from exc
    root_direction = direction_of(seed)

    nodes: dict[CellIndex, ParadoxNode] = {
        (): ParadoxNode(index=(), quad=seed, direction=root_direction)
    }
    frontier: list[CellIndex] = [()]
    for depth in range(n):
        child_direction = nodes[frontier[0]].direction.flipped()
        next_frontier: list[CellIndex] = []
        for index in frontier:
            try:
                inner, outer = decompose(nodes[index].quad, angle_policy)
            except DegenerateSeedError as exc:
                raise DegenerateSeedError(str(exc), cell=index) from exc
            for bit, quad in ((1, inner), (0, outer)):
                child_index = index + (bit,)
                nodes[child_index] = ParadoxNode(
                    index=child_index, quad=quad, direction=child_direction
                )
                next_frontier.append(child_index)
        frontier = next_frontier
    return ParadoxTree(n=n, root_direction=root_direction, nodes=nodes)


def verify_alternation(tree: ParadoxTree) -> ChainReport:
    """Independently check the depth-alternating comparison chain.

    Every proportion pair is recomputed from the raw masses; the stored
    directions play no part. A failing chain yields a false verdict,
    never an exception.
    """
    levels: list[list[CellComparison]] = []
    for depth in range(tree.n + 1):
        level = []
        for node in tree.cells_at(depth):
            p1, p0 = node_conditionals(node)
            level.append(CellComparison(cell=node.index, p_treated=p1, p_control=p0))
        levels.append(level)
    return chain_report(levels)


def conservation_defect(tree: ParadoxTree) -> float:
    """Largest componentwise |parent - (child1 + child2)| over all edges."""
    worst = 0.0
    for index, node in tree.nodes.items():
        if len(index) == tree.n:
            continue
        inner = tree.nodes[index + (1,)].quad
        outer = tree.nodes[index + (0,)].quad
        parent = node.quad
        worst = max(
            worst,
            abs(parent.a - (inner.a + outer.a)),
            abs(parent.b - (inner.b + outer.b)),
            abs(parent.c - (inner.c + outer.c)),
            abs(parent.d - (inner.d + outer.d)),
        )
    return worst
