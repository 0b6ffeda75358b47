"""Byte pair encoding: learn, apply, undo.

Merges are learned per word (whitespace token) over a word-frequency table:
each round merges the most frequent adjacent symbol pair, ties broken by the
lexicographically smallest pair, until the symbol vocabulary of the working
corpus reaches the target size or no pair occurs at least ``min_frequency``
times. Segmentation marks non-final subwords with a ``@@`` continuation
suffix, which makes undo a plain string rewrite.

Control tokens shaped like ``<...>`` (language/country/kind tags) never
participate: they are skipped when learning and passed through verbatim
when segmenting.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .errors import EmptyCorpus, VocabTooSmall

SEPARATOR = "@@"
_PASSTHROUGH_RE = re.compile(r"<[^\s<>]+>")
_UNDO_RE = re.compile(r"(@@ )|(@@ ?$)")


def is_passthrough(token: str) -> bool:
    """Control tokens are excluded from segmentation."""
    return _PASSTHROUGH_RE.fullmatch(token) is not None


@dataclass(frozen=True)
class BpeModel:
    """Ordered merge list plus the vocabulary size it was trained toward."""

    merges: tuple[tuple[str, str], ...]
    vocab_size_target: int
    _ranks: dict = field(default_factory=dict, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def ranks(self) -> dict[tuple[str, str], int]:
        if not self._ranks and self.merges:
            self._ranks.update({pair: i for i, pair in enumerate(self.merges)})
        return self._ranks


def _pair_counts(vocab: dict[tuple[str, ...], int]) -> Counter:
    counts: Counter = Counter()
    for word, freq in vocab.items():
        for a, b in zip(word, word[1:]):
            counts[(a, b)] += freq
    return counts


def _merge_word(word: tuple[str, ...], pair: tuple[str, str]) -> tuple[str, ...]:
    merged = pair[0] + pair[1]
    out: list[str] = []
    i = 0
    while i < len(word):
        if i < len(word) - 1 and (word[i], word[i + 1]) == pair:
            out.append(merged)
            i += 2
        else:
            out.append(word[i])
            i += 1
    return tuple(out)


def learn_bpe(lines: Iterable[str], vocab_size: int, min_frequency: int = 2) -> BpeModel:
    """Learn merges until the working-corpus symbol vocabulary hits vocab_size."""
    word_freq: Counter = Counter()
    for line in lines:
        for token in line.split():
            if not is_passthrough(token):
                word_freq[token] += 1
    if not word_freq:
        raise EmptyCorpus("no segmentable tokens to learn from")

    vocab = {tuple(word): freq for word, freq in word_freq.items()}
    inventory = {c for word in vocab for c in word}
    if vocab_size < len(inventory):
        raise VocabTooSmall(
            f"vocab_size {vocab_size} below character inventory size {len(inventory)}"
        )

    merges: list[tuple[str, str]] = []
    symbols = set(inventory)
    while len(symbols) < vocab_size:
        counts = _pair_counts(vocab)
        if not counts:
            break
        best_freq = max(counts.values())
        if best_freq < min_frequency:
            break
        best = min(pair for pair, c in counts.items() if c == best_freq)
        merges.append(best)
        vocab = {_merge_word(word, best): freq for word, freq in vocab.items()}
        symbols = {s for word in vocab for s in word}
    return BpeModel(merges=tuple(merges), vocab_size_target=vocab_size)


def _segment(model: BpeModel, token: str) -> list[str]:
    cached = model._cache.get(token)
    if cached is not None:
        return cached
    ranks = model.ranks()
    word = [*token]
    while len(word) > 1:
        candidates = [
            (ranks[pair], pair)
            for pair in set(zip(word, word[1:]))
            if pair in ranks
        ]
        if not candidates:
            break
        _, pair = min(candidates)
        word = list(_merge_word(tuple(word), pair))
    model._cache[token] = word
    return word


def apply_bpe(model: BpeModel, line: str) -> str:
    """Segment a line; non-final subwords carry the ``@@`` continuation mark."""
    out: list[str] = []
    for token in line.split(" "):
        if token == "" or is_passthrough(token):
            out.append(token)
            continue
        pieces = _segment(model, token)
        out.extend(p + SEPARATOR for p in pieces[:-1])
        out.append(pieces[-1])
    return " ".join(out)


def undo_bpe(line: str) -> str:
    """Reverse apply_bpe exactly."""
    return _UNDO_RE.sub("", line)


def save_model(model: BpeModel, fp: TextIO) -> None:
    """Header line with the vocab target, then one merge per line."""
    fp.write(f"#bpe vocab_size={model.vocab_size_target}\n")
    for a, b in model.merges:
        fp.write(f"{a} {b}\n")


def load_model(fp: TextIO) -> BpeModel:
    header = fp.readline().strip()
    m = re.fullmatch(r"#bpe vocab_size=(\d+)", header)
    if m is None:
        raise ValueError(f"bad BPE model header {header!r}")
    merges = []
    for line in fp:
        line = line.rstrip("\n")
        if not line:
            continue
        a, _, b = line.partition(" ")
        merges.append((a, b))
    return BpeModel(merges=tuple(merges), vocab_size_target=int(m.group(1)))
