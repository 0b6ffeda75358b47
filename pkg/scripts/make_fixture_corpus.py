#!/usr/bin/env python3
"""Generate a synthetic parallel corpus in the JSONL record format.

Spoken text is sampled from a small multilingual word list; the sign side
is produced by the seeded utterance fuzzer, so every record parses. Useful
for exercising the prepare/stats/evaluate commands without SignBank data.

Usage: python scripts/make_fixture_corpus.py --count 1000 --seed 42 > records.jsonl
"""

import argparse
import json
import random
import sys

from fswkit.corpus import CorpusRecord, record_to_json
from fswkit.fsw import serialize_utterance
from fswkit.fuzzing import FuzzConfig, random_utterance

WORDS = [
    "hello", "world", "sign", "language", "writing", "translation", "verse",
    "hand", "helped", "believers", "alive", "window", "sentence", "casa",
    "bonjour", "monde", "maison", "escola", "amigo", "Morgen", "Haus",
]
PAIRS = [("en", "us"), ("pt", "br"), ("de", "de"), ("fr", "ca")]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--html-noise", type=float, default=0.05,
                        help="fraction of records with HTML tags to clean")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for i in range(args.count):
        lang, country = rng.choice(PAIRS)
        kind = "sent" if rng.random() < 0.4 else "dict"
        k = rng.randint(3, 15) if kind == "sent" else rng.randint(1, 3)
        words = rng.choices(WORDS, k=k)
        if rng.random() < args.html_noise:
            words[0] = f"<b>{words[0]}</b>"
        record = CorpusRecord(
            id=f"fixture-{i}",
            puddle=f"Puddle {rng.randint(1, 6)}",
            spoken_lang=lang,
            country=country,
            kind=kind,
            spoken_text=" ".join(words),
            fsw_text=serialize_utterance(random_utterance(rng, FuzzConfig())),
        )
        json.dump(record_to_json(record), sys.stdout)
        sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
