"""Seeded random generation of valid utterances for round-trip testing."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .fsw import (
    PUNCTUATION_BASE_MAX,
    PUNCTUATION_BASE_MIN,
    SYMBOL_BASE_MAX,
    SYMBOL_BASE_MIN,
    BoxedSign,
    Coordinate,
    Placement,
    PunctuationSign,
    SignBox,
    SortPrefix,
    SymbolId,
    Utterance,
)


@dataclass(frozen=True)
class FuzzConfig:
    max_signs: int = 4
    max_placements: int = 6
    max_prefix_symbols: int = 3
    punct_prob: float = 0.2
    prefix_prob: float = 0.15
    box_only_prob: float = 0.1


def random_symbol(rng: random.Random, punctuation: bool = False) -> SymbolId:
    if punctuation:
        base = rng.randint(PUNCTUATION_BASE_MIN, PUNCTUATION_BASE_MAX)
    else:
        # placement symbols stay below the punctuation range: punctuation is
        # only valid as a standalone sign
        base = rng.randint(SYMBOL_BASE_MIN, PUNCTUATION_BASE_MIN - 1)
    return SymbolId(base=base, col=rng.randint(0, 5), row=rng.randint(0, 15))


def random_coordinate(rng: random.Random) -> Coordinate:
    return Coordinate(rng.randint(250, 750), rng.randint(250, 750))


def random_sign(rng: random.Random, config: FuzzConfig = FuzzConfig()):
    if rng.random() < config.punct_prob:
        return PunctuationSign(random_symbol(rng, punctuation=True), random_coordinate(rng))
    prefix = None
    if rng.random() < config.prefix_prob:
        prefix = SortPrefix(
            tuple(
                random_symbol(rng)
                for _ in range(rng.randint(1, config.max_prefix_symbols))
            )
        )
    n_placements = (
        0 if rng.random() < config.box_only_prob else rng.randint(1, config.max_placements)
    )
    placements = tuple(
        Placement(random_symbol(rng), random_coordinate(rng)) for _ in range(n_placements)
    )
    box = SignBox(rng.choice("BLMR"), random_coordinate(rng), placements)
    return BoxedSign(prefix, box)


def random_utterance(rng: random.Random, config: FuzzConfig = FuzzConfig()) -> Utterance:
    return Utterance(
        tuple(random_sign(rng, config) for _ in range(rng.randint(1, config.max_signs)))
    )


def utterance_corpus(
    count: int, seed: int, config: FuzzConfig = FuzzConfig()
) -> Iterator[Utterance]:
    """Deterministic stream of valid utterances."""
    rng = random.Random(seed)
    for _ in range(count):
        yield random_utterance(rng, config)
