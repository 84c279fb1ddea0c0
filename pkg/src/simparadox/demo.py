"""End-to-end demonstration: reference construction plus detection.

Builds the depth-3 tree from seed (0.8, 0.2, 0.6, 0.4), recomputes
every cell mass and conditional, and compares each against a frozen
4-decimal reference table at tolerance 5e-5, flagging any deviation.
Then loads the bundled kidney-stone counts and shows the detector
finding their single-factor reversal.
"""

from __future__ import annotations

import sys
from typing import TextIO

from .datasets import kidney_stones
from .decomposition import Quadruple, decompose
from .distribution import detect
from .tree import build, format_cell, node_conditionals, verify_alternation

REFERENCE_SEED = (0.8, 0.2, 0.6, 0.4)
REFERENCE_DEPTH = 3
REFERENCE_TOLERANCE = 5e-5

# Frozen 4 d.p. expectations for the reference construction, keyed by
# cell bit string ("" is the root). Mass rows are P(X1, cell | arm).
REFERENCE_CONDITIONAL_TREATED = {
    "": 0.8,
    "1": 0.2005, "0": 0.8904,
    "11": 0.1099, "10": 0.7833, "01": 0.4693, "00": 0.9849,
    "111": 0.0151, "110": 0.5308, "101": 0.2086, "100": 0.8805,
    "011": 0.0832, "010": 0.6894, "001": 0.2884, "000": 0.9924,
}
REFERENCE_CONDITIONAL_CONTROL = {
    "": 0.6,
    "1": 0.3486, "0": 0.9422,
    "11": 0.0579, "10": 0.6254, "01": 0.2747, "00": 0.9703,
    "111": 0.0298, "110": 0.7253, "101": 0.3617, "100": 0.9367,
    "011": 0.1547, "010": 0.8231, "001": 0.4923, "000": 0.9962,
}
REFERENCE_MASS_TREATED = {
    "1": 0.0263, "0": 0.7737,
    "11": 0.0125, "10": 0.0138, "01": 0.0748, "00": 0.6990,
    "111": 0.0014, "110": 0.0111, "101": 0.0005, "100": 0.0133,
    "011": 0.0048, "010": 0.0700, "001": 0.0022, "000": 0.6968,
}
REFERENCE_MASS_CONTROL = {
    "1": 0.2010, "0": 0.3990,
    "11": 0.0163, "10": 0.1847, "01": 0.0047, "00": 0.3943,
    "111": 0.0080, "110": 0.0082, "101": 0.0578, "100": 0.1269,
    "011": 0.0022, "010": 0.0025, "001": 0.0103, "000": 0.3840,
}

# First split of the seed, all eight masses: (a, b, c, d) per child.
REFERENCE_FIRST_SPLIT = (
    (0.0263, 0.1047, 0.2010, 0.3755),
    (0.7737, 0.0953, 0.3990, 0.0245),
)

# Kidney-stone proportions: aggregate reverses inside both strata.
KIDNEY_AGGREGATE = (289 / 350, 273 / 350)
KIDNEY_STRATA = {1: (234 / 270, 81 / 87), 0: (55 / 80, 192 / 263)}


def run_demo(out: TextIO | None = None) -> bool:
    out = sys.stdout if out is None else out
    failures = 0

    def check(label: str, recomputed: float, reference: float) -> None:
        nonlocal failures
        deviation = abs(recomputed - reference)
        ok = deviation <= REFERENCE_TOLERANCE
        failures += not ok
        flag = "OK" if ok else f"DEVIATION ({deviation:.2e})"
        print(f"  {label:<38} recomputed {recomputed:.6f}  reference {reference:.4f}  {flag}", file=out)

    seed = Quadruple(*REFERENCE_SEED)
    print(f"reference construction from seed {REFERENCE_SEED}, depth {REFERENCE_DEPTH}", file=out)

    print("first split masses (a, b, c, d) per child:", file=out)
    for child, reference in zip(decompose(seed), REFERENCE_FIRST_SPLIT):
        for name, value, expected in zip("abcd", child.as_tuple(), reference):
            check(f"child mass {name}", value, expected)

    tree = build(seed, REFERENCE_DEPTH)
    for depth in range(REFERENCE_DEPTH + 1):
        print(f"depth {depth}:", file=out)
        for node in sorted(tree.cells_at(depth), key=lambda n: n.index, reverse=True):
            bits = "".join(map(str, node.index))
            shown = format_cell(node.index)
            p1, p0 = node_conditionals(node)
            if depth:
                check(f"cell {shown} P(X1,cell|treated)", node.quad.a, REFERENCE_MASS_TREATED[bits])
                check(f"cell {shown} P(X1,cell|control)", node.quad.c, REFERENCE_MASS_CONTROL[bits])
            check(f"cell {shown} P(X1|treated,cell)", p1, REFERENCE_CONDITIONAL_TREATED[bits])
            check(f"cell {shown} P(X1|control,cell)", p0, REFERENCE_CONDITIONAL_CONTROL[bits])

    report = verify_alternation(tree)
    chain = ", ".join(
        f"depth {record.depth}: {record.direction.symbol if record.direction else '?'}"
        f" (min margin {record.min_margin:.4f})"
        for record in report.depths
    )
    print(f"alternation chain: {chain}", file=out)
    print(f"alternation verdict: {'pass' if report.verdict else 'FAIL'}", file=out)
    failures += not report.verdict

    print("kidney-stone detection:", file=out)
    data = kidney_stones()
    results = detect(data, max_factors=1)
    print(f"  flipping orderings found: {len(results)}", file=out)
    ok = len(results) == 1 and results[0].factor_order == (1,)
    if ok:
        report = results[0].report
        agg = report.depths[0].cells[0]
        check("aggregate P(X1|treated)", agg.p_treated, KIDNEY_AGGREGATE[0])
        check("aggregate P(X1|control)", agg.p_control, KIDNEY_AGGREGATE[1])
        ok = agg.p_treated > agg.p_control
        for cell in report.depths[1].cells:
            stratum = cell.cell[0]
            check(f"stratum {stratum} P(X1|treated)", cell.p_treated, KIDNEY_STRATA[stratum][0])
            check(f"stratum {stratum} P(X1|control)", cell.p_control, KIDNEY_STRATA[stratum][1])
            ok = ok and cell.p_treated < cell.p_control
        print(
            "  aggregate direction > reverses to < inside both strata:"
            f" {'yes' if ok else 'NO'}",
            file=out,
        )
    failures += not ok

    passed = failures == 0
    print(f"demo {'PASS' if passed else f'FAIL ({failures} checks failed)'}", file=out)
    return passed
