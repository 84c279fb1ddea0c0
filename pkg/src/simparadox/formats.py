"""On-disk document formats: JSON distributions and CSV datasets.

Distribution documents (JSON, ``schema_version`` "1")::

    {
      "schema_version": "1",
      "n": 3,
      "p_treated": "0.5",
      "entries": [{"x": 0, "a": 0, "b": "000", "p": "0.19201990551..."}, ...],
      "provenance": {"seed": [...], "construction": "prop1"}   // optional
    }

Entries cover all 2^(n+2) outcomes exactly once, sorted by (x, a, b).
Probabilities are written as decimal strings with 17 significant
digits, which round-trips IEEE doubles losslessly and avoids any
dependence on a JSON parser's number handling. On load the total may
stray from 1 by up to 1e-9 (to absorb edited documents), in which case
the entries are renormalized.

Dataset documents (CSV): header ``x,a,b1,...,bn,count``, one row per
nonzero cell, LF line endings, UTF-8. Counts are integers, so this
round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Mapping

from .distribution import Dataset, JointDistribution, Outcome
from .errors import DocumentError, DomainError

SCHEMA_VERSION = "1"
CONSTRUCTION_METHOD = "prop1"

_LOAD_SUM_TOLERANCE = 1e-9


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def distribution_document(
    joint: JointDistribution, provenance: Mapping[str, Any] | None = None
) -> dict[str, Any]:
    entries = [
        {
            "x": key[0],
            "a": key[1],
            "b": "".join(map(str, key[2:])),
            "p": _fmt(joint.probs[key]),
        }
        for key in joint.outcomes()
    ]
    document: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "n": joint.n,
        "p_treated": _fmt(joint.p_treated),
        "entries": entries,
    }
    if provenance is not None:
        document["provenance"] = dict(provenance)
    return document


def save_distribution(
    joint: JointDistribution,
    path: str | Path,
    provenance: Mapping[str, Any] | None = None,
) -> None:
    document = distribution_document(joint, provenance)
    text = json.dumps(document, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _parse_probability(raw: Any, context: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{context}: unreadable probability {raw!r}") from exc
    if not math.isfinite(value) or value < 0.0:
        raise DocumentError(f"{context}: probability {value!r} must be finite and >= 0")
    return value


def load_distribution(path: str | Path) -> JointDistribution:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise DocumentError(f"{path}: top level must be an object")
    if document.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(
            f"{path}: unsupported schema_version {document.get('schema_version')!r}"
        )
    n = document.get("n")
    if not isinstance(n, int) or n < 0:
        raise DocumentError(f"{path}: n must be a nonnegative integer, got {n!r}")
    entries = document.get("entries")
    if not isinstance(entries, list):
        raise DocumentError(f"{path}: entries must be a list")

    probs: dict[Outcome, float] = {}
    for position, entry in enumerate(entries):
        context = f"{path}: entry {position}"
        if not isinstance(entry, dict):
            raise DocumentError(f"{context} must be an object")
        x, a, bits = entry.get("x"), entry.get("a"), entry.get("b")
        if x not in (0, 1) or a not in (0, 1):
            raise DocumentError(f"{context}: x and a must be 0 or 1")
        if not isinstance(bits, str) or len(bits) != n or any(ch not in "01" for ch in bits):
            raise DocumentError(f"{context}: b must be a bit string of length {n}")
        key: Outcome = (x, a) + tuple(int(ch) for ch in bits)
        if key in probs:
            raise DocumentError(f"{context}: duplicate outcome {key}")
        probs[key] = _parse_probability(entry.get("p"), context)
    if len(probs) != 2 ** (n + 2):
        raise DocumentError(
            f"{path}: expected {2 ** (n + 2)} entries for n={n}, got {len(probs)}"
        )

    total = math.fsum(probs.values())
    if abs(total - 1.0) > _LOAD_SUM_TOLERANCE:
        raise DocumentError(f"{path}: probabilities sum to {total!r}, not 1 (within 1e-9)")
    if total != 1.0:
        probs = {key: value / total for key, value in probs.items()}
    p_treated = math.fsum(value for key, value in probs.items() if key[1] == 1)
    declared = _parse_probability(document.get("p_treated"), f"{path}: p_treated")
    if abs(declared - p_treated) > _LOAD_SUM_TOLERANCE:
        raise DocumentError(
            f"{path}: declared p_treated {declared!r} disagrees with treated mass {p_treated!r}"
        )
    try:
        return JointDistribution(n=n, p_treated=p_treated, probs=probs)
    except DomainError as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def _dataset_header(n: int) -> list[str]:
    return ["x", "a", *(f"b{i}" for i in range(1, n + 1)), "count"]


def save_dataset(data: Dataset, path: str | Path) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_dataset_header(data.n))
    for key in sorted(data.counts):
        writer.writerow([*key, data.counts[key]])
    Path(path).write_text(buffer.getvalue(), encoding="utf-8", newline="\n")


def parse_dataset(text: str, source: str = "<string>") -> Dataset:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DocumentError(f"{source}: empty dataset document")
    header = rows[0]
    if len(header) < 3 or header[:2] != ["x", "a"] or header[-1] != "count":
        raise DocumentError(f"{source}: malformed header {header!r}")
    n = len(header) - 3
    if header != _dataset_header(n):
        raise DocumentError(f"{source}: malformed header {header!r}")

    counts: dict[Outcome, int] = {}
    for number, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != n + 3:
            raise DocumentError(f"{source}: line {number}: expected {n + 3} fields, got {len(row)}")
        try:
            values = [int(field) for field in row]
        except ValueError as exc:
            raise DocumentError(f"{source}: line {number}: non-integer field") from exc
        key: Outcome = tuple(values[:-1])
        count = values[-1]
        if any(bit not in (0, 1) for bit in key):
            raise DocumentError(f"{source}: line {number}: cell bits must be 0 or 1")
        if count < 0:
            raise DocumentError(f"{source}: line {number}: negative count {count}")
        if key in counts:
            raise DocumentError(f"{source}: line {number}: duplicate cell {key}")
        counts[key] = count
    try:
        return Dataset.from_counts(n, counts)
    except DomainError as exc:
        raise DocumentError(f"{source}: {exc}") from exc


def load_dataset(path: str | Path) -> Dataset:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return parse_dataset(text, source=str(path))
