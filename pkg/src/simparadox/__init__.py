"""Construct, verify, sample, detect, and render multi-factor reversal distributions.

The package builds probability models over a binary response, a binary
treatment, and n binary stratification factors in which the apparent
treatment effect reverses at every successive conditioning depth, and
detects such reversals in arbitrary contingency data.
"""

from .decomposition import (
    AngleChoice,
    Direction,
    Quadruple,
    SlopeSet,
    choose_angles,
    compute_slopes,
    decompose,
    direction_of,
)
from .datasets import kidney_stones
from .demo import run_demo
from .distribution import (
    Dataset,
    DetectionResult,
    EffectMeasures,
    JointDistribution,
    assemble_joint,
    conditional,
    detect,
    effect_measures,
    empirical_joint,
    sample,
    verify_chain,
)
from .errors import (
    DegenerateSeedError,
    DocumentError,
    DomainError,
    SimparadoxError,
    ZeroProbabilityError,
)
from .formats import (
    load_dataset,
    load_distribution,
    parse_dataset,
    save_dataset,
    save_distribution,
)
from .geometry import Angle, Ordering, PlaneVector, angle_of, compare, proportion_of
from .render import decomposition_svg, render_decomposition
from .tree import (
    CellComparison,
    CellIndex,
    ChainReport,
    DepthRecord,
    ParadoxNode,
    ParadoxTree,
    build,
    node_conditionals,
    verify_alternation,
)

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "AngleChoice",
    "CellComparison",
    "CellIndex",
    "ChainReport",
    "Dataset",
    "DegenerateSeedError",
    "DepthRecord",
    "DetectionResult",
    "Direction",
    "DocumentError",
    "DomainError",
    "EffectMeasures",
    "JointDistribution",
    "Ordering",
    "ParadoxNode",
    "ParadoxTree",
    "PlaneVector",
    "Quadruple",
    "SimparadoxError",
    "SlopeSet",
    "ZeroProbabilityError",
    "angle_of",
    "assemble_joint",
    "build",
    "choose_angles",
    "compare",
    "compute_slopes",
    "conditional",
    "decompose",
    "decomposition_svg",
    "detect",
    "direction_of",
    "effect_measures",
    "empirical_joint",
    "kidney_stones",
    "load_dataset",
    "load_distribution",
    "node_conditionals",
    "parse_dataset",
    "proportion_of",
    "render_decomposition",
    "run_demo",
    "sample",
    "save_dataset",
    "save_distribution",
    "verify_alternation",
    "verify_chain",
]
