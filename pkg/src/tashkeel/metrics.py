"""Diacritic and word error rates over aligned reference/hypothesis text.

Both metrics are computed under three configuration axes, eight cells each:

* case ending        — with / without each word's final letter;
* 'no diacritic'     — with / without letters the reference leaves bare;
* counting           — Arabic letters only, or every non-whitespace token
                       character (digits and punctuation enter denominators
                       as always-correct positions, which lowers the rates).

An error is an Arabic letter whose hypothesis combo differs from the
reference combo as a set of marks; mark order never matters. A word errs
when at least one of its considered letters errs. Under all-tokens counting
the word denominator is the whitespace-token count, and dropping case
endings additionally drops each token's final non-Arabic character.

Lines whose base text cannot be aligned are skipped and counted, never
partially scored. Corpus results aggregate raw numerators and denominators
(micro-average), not per-line rates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from .alphabet import ARABIC_LETTERS
from .cleaning import normalize_fathatan
from .errors import TashkeelError
from .text import BaseMismatchError, align_chars, parse, tokenize_words


class Counting(enum.Enum):
    ARABIC_ONLY = "arabic_only"
    ALL_TOKENS = "all_tokens"


@dataclass(frozen=True)
class EvalConfig:
    case_ending: bool = True
    include_no_diacritic: bool = True
    counting: Counting = Counting.ARABIC_ONLY


# Display order: the two with/without case-ending columns under 'including
# no diacritic', then the same pair under 'excluding no diacritic'.
_AXIS_ORDER = ((True, True), (False, True), (True, False), (False, False))
ALL_CONFIGS = tuple(
    EvalConfig(ce, nd, counting)
    for counting in (Counting.ARABIC_ONLY, Counting.ALL_TOKENS)
    for ce, nd in _AXIS_ORDER
)


@dataclass
class EvalCounts:
    considered: int = 0
    errors: int = 0

    @property
    def rate(self) -> float | None:
        if self.considered == 0:
            return None
        return self.errors / self.considered

    def add(self, other: "EvalCounts") -> None:
        self.considered += other.considered
        self.errors += other.errors


class LineCountMismatchError(TashkeelError):
    def __init__(self, reference: int, hypothesis: int):
        self.reference = reference
        self.hypothesis = hypothesis
        super().__init__(
            f"reference has {reference} lines but hypothesis has {hypothesis}"
        )


class WordTooLongError(TashkeelError):
    def __init__(self, word: str, max_chars: int):
        self.word = word
        self.max_chars = max_chars
        super().__init__(
            f"single word of {len(word)} characters exceeds the {max_chars} limit"
        )


def normalize_for_eval(text: str) -> str:
    """Pre-scoring normalization: unify Fathatan placement to before-Alif,
    so scoring does not depend on which convention the hypothesis used."""
    return normalize_fathatan(text)


def split_max_len(line: str, max_chars: int) -> list[str]:
    """Greedy whitespace-boundary split into lines of at most ``max_chars``.

    Joining the result with single spaces restores the word sequence. A
    single word longer than the limit raises WordTooLongError. A line with
    no words yields nothing.
    """
    out: list[str] = []
    cur: list[str] = []
    cur_len = 0
    for word in line.split():
        if len(word) > max_chars:
            raise WordTooLongError(word, max_chars)
        added = len(word) if not cur else len(word) + 1
        if cur and cur_len + added > max_chars:
            out.append(" ".join(cur))
            cur = [word]
            cur_len = len(word)
        else:
            cur.append(word)
            cur_len += added
    if cur:
        out.append(" ".join(cur))
    return out


class _LineFacts:
    """Everything one aligned line pair contributes, precomputed once so the
    eight configuration cells can be assembled without re-parsing."""

    __slots__ = (
        "is_letter",
        "is_space",
        "err",
        "ref_empty",
        "word_spans",
        "token_spans",
        "word_final",
        "token_final",
    )

    def __init__(self, reference: str, hypothesis: str):
        ref_chars, _ = parse(normalize_for_eval(reference))
        hyp_chars, _ = parse(normalize_for_eval(hypothesis))
        pairs = align_chars(ref_chars, hyp_chars)  # raises BaseMismatchError
        ref = [p[0] for p in pairs]
        self.is_letter = [c.base in ARABIC_LETTERS for c in ref]
        self.is_space = [c.base == " " for c in ref]
        self.err = [
            self.is_letter[i] and pairs[i][0].marks != pairs[i][1].marks
            for i in range(len(pairs))
        ]
        self.ref_empty = [not c.marks for c in ref]
        self.word_spans = tokenize_words(ref)
        self.token_spans = []
        start = None
        for i, space in enumerate(self.is_space):
            if not space:
                if start is None:
                    start = i
            elif start is not None:
                self.token_spans.append((start, i))
                start = None
        if start is not None:
            self.token_spans.append((start, len(ref)))
        self.word_final = {e - 1 for _, e in self.word_spans}
        self.token_final = {e - 1 for _, e in self.token_spans}

    def _letter_considered(self, i: int, config: EvalConfig) -> bool:
        if not config.case_ending and i in self.word_final:
            return False
        if not config.include_no_diacritic and self.ref_empty[i]:
            return False
        return True

    def der_cell(self, config: EvalConfig) -> EvalCounts:
        cell = EvalCounts()
        for i, letter in enumerate(self.is_letter):
            if letter:
                if not self._letter_considered(i, config):
                    continue
                cell.considered += 1
                cell.errors += self.err[i]
            elif config.counting is Counting.ALL_TOKENS and not self.is_space[i]:
                # Always-correct position; subject to the same exclusions.
                if not config.case_ending and i in self.token_final:
                    continue
                if not config.include_no_diacritic:
                    continue
                cell.considered += 1
        return cell

    def wer_cell(self, config: EvalConfig) -> EvalCounts:
        spans = (
            self.word_spans
            if config.counting is Counting.ARABIC_ONLY
            else self.token_spans
        )
        cell = EvalCounts(considered=len(spans))
        for s, e in spans:
            if any(
                self.err[i] and self._letter_considered(i, config)
                for i in range(s, e)
                if self.is_letter[i]
            ):
                cell.errors += 1
        return cell


def der(reference: str, hypothesis: str, config: EvalConfig) -> EvalCounts:
    """Diacritic error rate counts for one line pair under one configuration."""
    return _LineFacts(reference, hypothesis).der_cell(config)


def wer(reference: str, hypothesis: str, config: EvalConfig) -> EvalCounts:
    """Word error rate counts for one line pair under one configuration."""
    return _LineFacts(reference, hypothesis).wer_cell(config)


def _empty_cells() -> dict[EvalConfig, EvalCounts]:
    return {config: EvalCounts() for config in ALL_CONFIGS}


@dataclass
class EvalReport:
    der: dict[EvalConfig, EvalCounts] = field(default_factory=_empty_cells)
    wer: dict[EvalConfig, EvalCounts] = field(default_factory=_empty_cells)
    line_count: int = 0
    skipped_lines: int = 0

    def add_line(self, facts: _LineFacts) -> None:
        for config in ALL_CONFIGS:
            self.der[config].add(facts.der_cell(config))
            self.wer[config].add(facts.wer_cell(config))

    def merge(self, other: "EvalReport") -> None:
        for config in ALL_CONFIGS:
            self.der[config].add(other.der[config])
            self.wer[config].add(other.wer[config])
        self.line_count += other.line_count
        self.skipped_lines += other.skipped_lines

    def to_dict(self) -> dict:
        def cells(table: dict[EvalConfig, EvalCounts]) -> dict:
            out: dict[str, dict] = {}
            for config, counts in table.items():
                row = out.setdefault(config.counting.value, {})
                row[_cell_key(config)] = {
                    "errors": counts.errors,
                    "considered": counts.considered,
                    "rate_pct": None if counts.rate is None else float(format_pct(counts)),
                }
            return out

        return {
            "lines": self.line_count,
            "skipped_lines": self.skipped_lines,
            "der": cells(self.der),
            "wer": cells(self.wer),
        }

    def render_table(self) -> str:
        header = [
            "",
            "with CE",
            "without CE",
            "with CE",
            "without CE",
        ]
        subheader = ["", "incl. 'no diacritic'", "", "excl. 'no diacritic'", ""]
        lines = []
        for name, table in (("DER", self.der), ("WER", self.wer)):
            rows = [subheader, header]
            for counting in (Counting.ARABIC_ONLY, Counting.ALL_TOKENS):
                label = "arabic-only" if counting is Counting.ARABIC_ONLY else "all-tokens"
                row = [f"{name} {label}"]
                for ce, nd in _AXIS_ORDER:
                    counts = table[EvalConfig(ce, nd, counting)]
                    if counts.rate is None:
                        row.append("n/a")
                    else:
                        row.append(f"{format_pct(counts)}% ({counts.errors}/{counts.considered})")
                rows.append(row)
            widths = [max(len(r[i]) for r in rows) for i in range(5)]
            for r in rows:
                lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
            lines.append("")
        lines.append(f"lines: {self.line_count}  skipped: {self.skipped_lines}")
        return "\n".join(lines)


def _cell_key(config: EvalConfig) -> str:
    ce = "with_ce" if config.case_ending else "without_ce"
    nd = "with_nd" if config.include_no_diacritic else "without_nd"
    return f"{ce}_{nd}"


def format_pct(counts: EvalCounts) -> str:
    """Percentage with two decimals, half-up, as printed in reports."""
    value = Decimal(counts.errors) * 100 / Decimal(counts.considered)
    return str(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _paired_lines(
    ref_lines: Sequence[str], hyp_lines: Sequence[str], max_chars: int | None
) -> Iterable[tuple[str, str]]:
    if len(ref_lines) != len(hyp_lines):
        raise LineCountMismatchError(len(ref_lines), len(hyp_lines))
    for ref, hyp in zip(ref_lines, hyp_lines):
        if max_chars is None:
            yield ref, hyp
            continue
        hyp_words = hyp.split()
        if len(ref.split()) != len(hyp_words):
            # Token counts disagree; leave the pair intact so the alignment
            # failure is counted as one skipped line.
            yield ref, hyp
            continue
        k = 0
        for chunk in split_max_len(ref, max_chars):
            n = len(chunk.split())
            yield chunk, " ".join(hyp_words[k : k + n])
            k += n


def score_pair(reference: str, hypothesis: str) -> EvalReport:
    """Report for a single line pair (all sixteen cells, or one skip)."""
    report = EvalReport()
    report.line_count = 1
    try:
        facts = _LineFacts(reference, hypothesis)
    except BaseMismatchError:
        report.skipped_lines = 1
        return report
    report.add_line(facts)
    return report


def evaluate_corpus(
    ref_lines: Sequence[str],
    hyp_lines: Sequence[str],
    max_chars: int | None = None,
) -> EvalReport:
    """Score two line-aligned corpora.

    With ``max_chars`` set, reference lines are greedily re-split at word
    boundaries and the hypothesis is re-chunked to the same word counts
    before scoring, mirroring systems that only accept bounded input lines.
    """
    report = EvalReport()
    for ref, hyp in _paired_lines(ref_lines, hyp_lines, max_chars):
        report.merge(score_pair(ref, hyp))
    return report
