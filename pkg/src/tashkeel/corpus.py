"""Corpus-level operations: diacritic-ratio filtering, statistics, the
parallel (diacritized/plain) view, and seeded dataset splitting."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .alphabet import ARABIC_LETTERS
from .errors import TashkeelError
from .text import parse, strip_diacritics, tokenize_words


class InsufficientLinesError(TashkeelError):
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(
            f"split needs {requested} lines but only {available} are available"
        )


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    train_lines: int
    valid_lines: int
    test_lines: int

    @property
    def total(self) -> int:
        return self.train_lines + self.valid_lines + self.test_lines


@dataclass
class CorpusStats:
    """Aggregate counts plus the four-way partition of the letter population.

    Every Arabic letter falls in exactly one class: no diacritic, one
    diacritic, a (legal) two-mark combination, or error. A letter counts as
    an error when parsing flagged an illegal mark sequence on it; marks
    dangling with no letter at all are dropped by the parser and belong to no
    letter class.
    """

    lines_count: int = 0
    words_count: int = 0
    avg_chars_per_word: float = 0.0
    avg_words_per_line: float = 0.0
    pct_no_diacritics: float = 0.0
    pct_one_diacritic: float = 0.0
    pct_two_diacritics: float = 0.0
    pct_error_diacritics: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def diacritic_ratio(line: str) -> float:
    """Marked Arabic letters over all Arabic letters; 0.0 with no letters."""
    chars, _ = parse(line)
    letters = 0
    marked = 0
    for c in chars:
        if c.base in ARABIC_LETTERS:
            letters += 1
            if c.marks:
                marked += 1
    return marked / letters if letters else 0.0


def compute_stats(lines: Iterable[str]) -> CorpusStats:
    lines_count = 0
    words_count = 0
    letters = 0
    class_counts = {"none": 0, "one": 0, "two": 0, "error": 0}
    for line in lines:
        lines_count += 1
        chars, anomalies = parse(line)
        words_count += len(tokenize_words(chars))
        flagged = {a.letter_index for a in anomalies if a.letter_index is not None}
        for i, c in enumerate(chars):
            if c.base not in ARABIC_LETTERS:
                continue
            letters += 1
            if i in flagged:
                class_counts["error"] += 1
            elif not c.marks:
                class_counts["none"] += 1
            elif len(c.marks) == 1:
                class_counts["one"] += 1
            else:
                class_counts["two"] += 1
    stats = CorpusStats(lines_count=lines_count, words_count=words_count)
    if words_count:
        stats.avg_chars_per_word = letters / words_count
    if lines_count:
        stats.avg_words_per_line = words_count / lines_count
    if letters:
        stats.pct_no_diacritics = 100.0 * class_counts["none"] / letters
        stats.pct_one_diacritic = 100.0 * class_counts["one"] / letters
        stats.pct_two_diacritics = 100.0 * class_counts["two"] / letters
        stats.pct_error_diacritics = 100.0 * class_counts["error"] / letters
    return stats


def make_parallel(lines: Sequence[str]) -> tuple[list[str], list[str]]:
    """The corpus as (diacritized, plain) line lists of equal length."""
    diacritized = list(lines)
    plain = [strip_diacritics(line) for line in diacritized]
    return diacritized, plain


def filter_by_ratio(lines: Iterable[str], min_ratio: float) -> list[str]:
    """Lines whose diacritic ratio strictly exceeds ``min_ratio``."""
    return [line for line in lines if diacritic_ratio(line) > min_ratio]


def split_dataset(
    lines: Sequence[str], spec: SplitSpec
) -> tuple[list[str], list[str], list[str]]:
    """Seeded random partition into train/valid/test.

    Sampling is uniform without replacement; within each split the lines keep
    their corpus order. The same (lines, spec) always produces the same
    partition.
    """
    lines = list(lines)
    if spec.total > len(lines):
        raise InsufficientLinesError(spec.total, len(lines))
    order = list(range(len(lines)))
    random.Random(spec.seed).shuffle(order)
    train_idx = order[: spec.train_lines]
    valid_idx = order[spec.train_lines : spec.train_lines + spec.valid_lines]
    test_idx = order[spec.train_lines + spec.valid_lines : spec.total]
    pick = lambda idx: [lines[i] for i in sorted(idx)]
    return pick(train_idx), pick(valid_idx), pick(test_idx)
