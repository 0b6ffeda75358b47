#!/usr/bin/env python3
"""End-to-end walkthrough on synthetic data.

Generates a fixture corpus, runs the preparation pipeline, prints corpus
statistics, verifies the factor files reassemble to the canonical FSW, and
scores a noisy copy of the test split with the symbol-level metrics.

Usage: python scripts/demo_pipeline.py [--workdir DIR]
"""

import argparse
import json
import random
import subprocess
import sys
import tempfile
from pathlib import Path

from fswkit import metrics
from fswkit.factors import reconstruct
from fswkit.fsw import serialize_utterance


def run(args: list[str]) -> str:
    proc = subprocess.run(args, capture_output=True, text=True)
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        raise SystemExit(proc.returncode)
    return proc.stdout


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", default=None)
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    workdir = Path(args.workdir) if args.workdir else Path(tempfile.mkdtemp(prefix="fswkit-demo-"))
    workdir.mkdir(parents=True, exist_ok=True)
    records = workdir / "records.jsonl"
    here = Path(__file__).parent

    print(f"== workdir: {workdir}")
    records.write_text(
        run([sys.executable, str(here / "make_fixture_corpus.py"),
             "--count", str(args.count), "--seed", str(args.seed)])
    )

    print("== prepare")
    manifest = json.loads(
        run([sys.executable, "-m", "fswkit.cli", "prepare",
             "--in", str(records), "--out", str(workdir / "prepared"),
             "--seed", str(args.seed)])
    )
    print(f"   splits: {manifest['counts']}")

    print("== stats")
    report = json.loads(
        run([sys.executable, "-m", "fswkit.cli", "stats", "--in", str(records)])
    )
    for pair, entry in report["language_pairs"].items():
        print(f"   {pair}: {entry['samples']} samples, {entry['signs']} signs, "
              f"mean {entry['mean_spoken_words']:.1f} words")

    print("== factor-file reassembly check (test split)")
    prepared = workdir / "prepared"
    symbols = (prepared / "test.symbol").read_text().splitlines()
    xs = (prepared / "test.x").read_text().splitlines()
    ys = (prepared / "test.y").read_text().splitlines()
    rebuilt = []
    for s, x, y in zip(symbols, xs, ys):
        utterance = reconstruct(
            s.split(), [int(v) for v in x.split()], [int(v) for v in y.split()]
        ).utterance
        rebuilt.append(serialize_utterance(utterance))
    print(f"   reassembled {len(rebuilt)} test utterances")

    print("== symbol-level scoring of a noisy hypothesis")
    rng = random.Random(args.seed)
    hyp_tokens, ref_tokens = [], []
    for s in symbols:
        tokens = s.split()
        noisy = [t for t in tokens if rng.random() > 0.1]  # random 10% deletion
        hyp_tokens.append(noisy if noisy else tokens[:1])
        ref_tokens.append(tokens)
    print(f"   BLEU   : {metrics.bleu(hyp_tokens, ref_tokens):.2f}")
    print(f"   chrF2++: {metrics.chrf(hyp_tokens, ref_tokens, word_order=2):.2f}")
    hyp_x = [[int(v) for v in x.split()] for x in xs]
    gold_x = [[min(750, v + rng.randint(0, 20)) for v in row] for row in hyp_x]
    per_line = [metrics.mae_positions(h, g) for h, g in zip(hyp_x, gold_x)]
    print(f"   MAE x  : {sum(per_line) / len(per_line):.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
