"""Corpus evaluation metrics: BLEU, chrF2/chrF2++, positional MAE, top-n.

All scoring functions are pure and operate on caller-supplied token lists
or integer sequences; tokenization policy lives with the caller. BLEU and
chrF aggregate sufficient statistics over the whole corpus before scoring.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyCorpus, LengthMismatch

TokenSeq = Sequence[str]


@dataclass
class EvalReport:
    """Metric results in the shape the evaluate command emits as JSON."""

    bleu: float | None = None
    chrf: float | None = None
    mae_x: float | None = None
    mae_y: float | None = None
    top_n: dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "chrf": self.chrf,
            "mae_x": self.mae_x,
            "mae_y": self.mae_y,
            "top_n": {str(n): v for n, v in sorted(self.top_n.items())},
        }


def _check_corpus(hypotheses, references):
    if len(hypotheses) != len(references):
        raise LengthMismatch(
            f"{len(hypotheses)} hypotheses vs {len(references)} references"
        )
    if not hypotheses:
        raise EmptyCorpus("need at least one segment pair")


def _ngram_counts(tokens: Sequence, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(hypotheses: Sequence[TokenSeq], references: Sequence[TokenSeq]) -> float:
    """Corpus BLEU on 1..4-gram modified precisions, scaled to 0..100.

    Zero higher-order match counts fall back to exponential smoothing
    (halving a running numerator); zero unigram matches score 0 outright.
    Orders with no hypothesis n-grams at all are excluded from the
    geometric mean so short-segment corpora stay well defined.
    """
    _check_corpus(hypotheses, references)
    max_order = 4
    correct = [0] * max_order
    total = [0] * max_order
    hyp_len = ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, max_order + 1):
            hyp_ngrams = _ngram_counts(hyp, n)
            if not hyp_ngrams:
                break
            ref_ngrams = _ngram_counts(ref, n)
            total[n - 1] += sum(hyp_ngrams.values())
            correct[n - 1] += sum(
                min(c, ref_ngrams[g]) for g, c in hyp_ngrams.items()
            )
    if hyp_len == 0:
        return 0.0
    if correct[0] == 0:
        return 0.0
    log_sum = 0.0
    effective = 0
    smooth = 1.0
    for n in range(1, max_order + 1):
        if total[n - 1] == 0:
            break
        effective = n
        if correct[n - 1] == 0:
            smooth *= 2.0
            precision = 1.0 / (smooth * total[n - 1])
        else:
            precision = correct[n - 1] / total[n - 1]
        log_sum += math.log(precision)
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * brevity * math.exp(log_sum / effective)


def _char_ngram_stats(hyp_chars: str, ref_chars: str, n: int) -> tuple[int, int, int]:
    hyp_ngrams = _ngram_counts(hyp_chars, n)
    ref_ngrams = _ngram_counts(ref_chars, n)
    overlap = sum(min(c, ref_ngrams[g]) for g, c in hyp_ngrams.items())
    return sum(hyp_ngrams.values()), sum(ref_ngrams.values()), overlap


def chrf(
    hypotheses: Sequence[TokenSeq],
    references: Sequence[TokenSeq],
    beta: float = 2.0,
    char_order: int = 6,
    word_order: int = 0,
) -> float:
    """Character-level F-score, optionally extended with word n-grams.

    Character n-grams (orders 1..char_order) are computed with whitespace
    removed; word n-grams (orders 1..word_order) over the token sequences.
    Precision and recall are averaged over the orders where both sides have
    at least one n-gram, then combined with F_beta and scaled to 0..100.
    word_order=0 is chrF2 (for beta=2); word_order=2 is chrF2++.
    """
    _check_corpus(hypotheses, references)
    orders = char_order + word_order
    totals = [[0, 0, 0] for _ in range(orders)]
    for hyp, ref in zip(hypotheses, references):
        hyp_chars = "".join("".join(t.split()) for t in hyp)
        ref_chars = "".join("".join(t.split()) for t in ref)
        for n in range(1, char_order + 1):
            h, r, o = _char_ngram_stats(hyp_chars, ref_chars, n)
            totals[n - 1][0] += h
            totals[n - 1][1] += r
            totals[n - 1][2] += o
        for n in range(1, word_order + 1):
            hyp_ngrams = _ngram_counts(tuple(hyp), n)
            ref_ngrams = _ngram_counts(tuple(ref), n)
            row = totals[char_order + n - 1]
            row[0] += sum(hyp_ngrams.values())
            row[1] += sum(ref_ngrams.values())
            row[2] += sum(min(c, ref_ngrams[g]) for g, c in hyp_ngrams.items())
    precision_sum = recall_sum = 0.0
    effective = 0
    for h, r, o in totals:
        if h > 0 and r > 0:
            precision_sum += o / h
            recall_sum += o / r
            effective += 1
    if effective == 0:
        return 0.0
    precision = precision_sum / effective
    recall = recall_sum / effective
    if precision + recall == 0.0:
        return 0.0
    b2 = beta * beta
    return 100.0 * (1 + b2) * precision * recall / (b2 * precision + recall)


def mae_positions(predicted: Sequence[int], gold: Sequence[int]) -> float:
    """Mean absolute error after zero-padding both sequences to equal length."""
    length = max(len(predicted), len(gold))
    if length == 0:
        return 0.0
    p = list(predicted) + [0] * (length - len(predicted))
    g = list(gold) + [0] * (length - len(gold))
    return sum(abs(a - b) for a, b in zip(p, g)) / length


def topn_accuracy(
    nbest_lists: Sequence[Sequence[str]],
    references: Sequence[str],
    n: int,
    casefold: bool = False,
) -> float:
    """Fraction of items whose reference appears among the first n candidates."""
    if len(nbest_lists) != len(references):
        raise LengthMismatch(
            f"{len(nbest_lists)} n-best lists vs {len(references)} references"
        )
    if not nbest_lists:
        return 0.0
    hits = 0
    for candidates, ref in zip(nbest_lists, references):
        if casefold:
            ref = ref.casefold()
            candidates = [c.casefold() for c in candidates]
        if ref in list(candidates)[: max(n, 0)]:
            hits += 1
    return hits / len(nbest_lists)


def read_nbest(lines: Iterable[str]) -> list[list[str]]:
    """Parse ``index ||| candidate`` lines into per-item candidate lists.

    Items are ordered by index; candidates keep file order within an item.
    Extra ``|||``-separated fields (scores etc.) are ignored.
    """
    by_index: dict[int, list[str]] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split("|||")
        if len(parts) < 2:
            raise ValueError(f"n-best line {lineno} lacks an '|||' separator")
        try:
            index = int(parts[0].strip())
        except ValueError:
            raise ValueError(f"n-best line {lineno} has a non-integer index") from None
        by_index.setdefault(index, []).append(parts[1].strip())
    return [by_index[i] for i in sorted(by_index)]
