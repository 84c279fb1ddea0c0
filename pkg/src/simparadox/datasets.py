"""Bundled example data."""

from __future__ import annotations

from importlib import resources

from .distribution import Dataset
from .formats import parse_dataset


def kidney_stones() -> Dataset:
    """Classic two-treatment kidney-stone counts, stratified by stone size.

    700 patients, 350 per treatment; ``b1`` is 1 for small stones. The
    aggregate success comparison reverses inside both strata, the
    textbook single-factor paradox, which makes this the smoke-test
    input for :func:`simparadox.distribution.detect`.
    """
    text = resources.files("simparadox").joinpath("data/kidney_stones.csv").read_text("utf-8")
    return parse_dataset(text, source="kidney_stones.csv")
