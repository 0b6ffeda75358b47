"""Parallel-corpus pipeline: ingest, clean, tag, split, segment, emit, count.

Records arrive as line-delimited JSON with the fields of CorpusRecord.
Cleaning strips HTML tags from the spoken side, collapses whitespace, drops
empty or over-long records, and optionally lowercases. Tagging prepends the
target-language / country / data-kind control tokens. Splitting shuffles
deterministically and carves 95/3/2 train/dev/test partitions with the
remainder assigned to train. Factor files are nine parallel text files
(eight sign-side streams plus the tagged spoken side), token-aligned line
by line.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from . import bpe
from .errors import EmptyCorpus
from .factors import factorize
from .fsw import Utterance, parse_utterance

KINDS = ("sent", "dict")
FACTOR_SUFFIXES = ("symbol", "x", "y", "x_rel", "y_rel", "core", "col", "row")
_LANG_RE = re.compile(r"[a-z]{2}")
_TAG_STRIP_RE = re.compile(r"<[^<>]*>")
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class CorpusRecord:
    """One parallel example of spoken text and FSW content."""

    id: str
    puddle: str
    spoken_lang: str
    country: str
    kind: str
    spoken_text: str
    fsw_text: str

    def __post_init__(self):
        if _LANG_RE.fullmatch(self.spoken_lang) is None:
            raise ValueError(f"spoken_lang {self.spoken_lang!r} is not 2 lowercase letters")
        if _LANG_RE.fullmatch(self.country) is None:
            raise ValueError(f"country {self.country!r} is not 2 lowercase letters")
        if self.kind not in KINDS:
            raise ValueError(f"kind {self.kind!r} not in {KINDS}")

    @property
    def language_pair(self) -> str:
        return f"{self.spoken_lang}-{self.country}"


@dataclass(frozen=True)
class SplitResult:
    train: list[CorpusRecord]
    dev: list[CorpusRecord]
    test: list[CorpusRecord]
    seed: int


def record_from_json(obj: dict) -> CorpusRecord:
    return CorpusRecord(
        id=str(obj["id"]),
        puddle=str(obj["puddle"]),
        spoken_lang=obj["spoken_lang"],
        country=obj["country"],
        kind=obj["kind"],
        spoken_text=obj["spoken_text"],
        fsw_text=obj["fsw_text"],
    )


def record_to_json(r: CorpusRecord) -> dict:
    return {
        "id": r.id,
        "puddle": r.puddle,
        "spoken_lang": r.spoken_lang,
        "country": r.country,
        "kind": r.kind,
        "spoken_text": r.spoken_text,
        "fsw_text": r.fsw_text,
    }


def read_records(lines: Iterable[str]) -> Iterator[CorpusRecord]:
    """Parse JSONL records; raises ValueError with the failing content."""
    for line in lines:
        line = line.strip()
        if not line:
            continue
        yield record_from_json(json.loads(line))


def _collapse(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def clean(
    r: CorpusRecord,
    max_dict_words: int = 100,
    max_sent_words: int = 200,
    lowercase: bool = False,
) -> CorpusRecord | None:
    """Normalize one record, or return None when it should be dropped.

    HTML tags are stripped from the spoken side only; whitespace is
    collapsed on both sides. Records with empty spoken text, empty FSW, or
    more words than the kind-specific cap are dropped.
    """
    spoken = _collapse(_TAG_STRIP_RE.sub(" ", r.spoken_text))
    if lowercase:
        spoken = spoken.lower()
    fsw = _collapse(r.fsw_text)
    if not spoken or not fsw:
        return None
    cap = max_dict_words if r.kind == "dict" else max_sent_words
    if len(spoken.split()) > cap:
        return None
    return replace(r, spoken_text=spoken, fsw_text=fsw)


def tag(r: CorpusRecord) -> str:
    """Control-token prefix naming target language, country, and data kind."""
    return f"<2{r.spoken_lang}> <4{r.country}> <{r.kind}> {r.spoken_text}"


def split(
    records: Sequence[CorpusRecord],
    seed: int,
    dev_ratio: float = 0.03,
    test_ratio: float = 0.02,
) -> SplitResult:
    """Deterministic shuffled partition; the rounding remainder goes to train."""
    if not records:
        raise EmptyCorpus("cannot split an empty corpus")
    shuffled = list(records)
    random.Random(seed).shuffle(shuffled)
    n = len(shuffled)
    dev_n = math.floor(n * dev_ratio)
    test_n = math.floor(n * test_ratio)
    train_n = n - dev_n - test_n
    return SplitResult(
        train=shuffled[:train_n],
        dev=shuffled[train_n : train_n + dev_n],
        test=shuffled[train_n + dev_n :],
        seed=seed,
    )


def emit_factor_files(
    records: Sequence[CorpusRecord],
    out_dir: str | Path,
    base: str = "corpus",
    spoken_transform: Callable[[str], str] | None = None,
) -> dict[str, Path]:
    """Write the eight sign-side factor files plus the tagged spoken file.

    Line i of every file belongs to records[i]; the eight sign-side files
    are token-aligned per line. ``spoken_transform`` (e.g. BPE application)
    runs on each tagged spoken line before writing. IO failures propagate
    as the interpreter's OSError.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {suffix: out_dir / f"{base}.{suffix}" for suffix in FACTOR_SUFFIXES}
    paths["spoken"] = out_dir / f"{base}.spoken"
    handles = {suffix: path.open("w", encoding="utf-8") for suffix, path in paths.items()}
    try:
        for r in records:
            bundle = factorize(parse_utterance(r.fsw_text))
            for suffix in FACTOR_SUFFIXES:
                values = getattr(bundle, suffix)
                handles[suffix].write(" ".join(str(v) for v in values) + "\n")
            line = tag(r)
            if spoken_transform is not None:
                line = spoken_transform(line)
            handles["spoken"].write(line + "\n")
    finally:
        for h in handles.values():
            h.close()
    return paths


def count_signs(u: Utterance) -> int:
    return len(u.signs)


def stats(records: Sequence[CorpusRecord]) -> dict:
    """Per language-pair sample/puddle/sign counts and mean spoken length."""
    pairs: dict[str, dict] = {}
    for r in records:
        entry = pairs.setdefault(
            r.language_pair,
            {"samples": 0, "puddles": set(), "signs": 0, "words": 0,
             "kinds": {"sent": 0, "dict": 0}},
        )
        entry["samples"] += 1
        entry["puddles"].add(r.puddle)
        entry["signs"] += count_signs(parse_utterance(r.fsw_text))
        entry["words"] += len(r.spoken_text.split())
        entry["kinds"][r.kind] += 1

    report = {"language_pairs": {}, "total": {"samples": 0, "signs": 0, "puddles": 0}}
    for pair in sorted(pairs):
        entry = pairs[pair]
        report["language_pairs"][pair] = {
            "samples": entry["samples"],
            "puddles": len(entry["puddles"]),
            "signs": entry["signs"],
            "mean_spoken_words": entry["words"] / entry["samples"],
            "kinds": dict(entry["kinds"]),
        }
        report["total"]["samples"] += entry["samples"]
        report["total"]["signs"] += entry["signs"]
        report["total"]["puddles"] += len(entry["puddles"])
    return report


def prepare(
    records: Sequence[CorpusRecord],
    out_dir: str | Path,
    seed: int = 42,
    vocab_size: int = 2000,
    max_dict_words: int = 100,
    max_sent_words: int = 200,
    lowercase: bool = False,
    dev_ratio: float = 0.03,
    test_ratio: float = 0.02,
    factor_weight: float | None = None,
) -> dict:
    """Run clean -> learn BPE -> tag -> split -> emit and return the manifest.

    ``factor_weight`` is not used by any step here; it is recorded in the
    manifest so downstream training configs can pick it up.
    """
    cleaned = []
    for r in records:
        c = clean(r, max_dict_words=max_dict_words, max_sent_words=max_sent_words,
                  lowercase=lowercase)
        if c is not None:
            cleaned.append(c)
    if not cleaned:
        raise EmptyCorpus("no records survive cleaning")

    model = bpe.learn_bpe((r.spoken_text for r in cleaned), vocab_size)
    parts = split(cleaned, seed, dev_ratio=dev_ratio, test_ratio=test_ratio)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files: list[str] = []
    for name, subset in (("train", parts.train), ("dev", parts.dev), ("test", parts.test)):
        paths = emit_factor_files(
            subset, out_dir, base=name,
            spoken_transform=lambda line: bpe.apply_bpe(model, line),
        )
        files.extend(sorted(p.name for p in paths.values()))
    with (out_dir / "bpe.model").open("w", encoding="utf-8") as f:
        bpe.save_model(model, f)
    files.append("bpe.model")

    manifest = {
        "seed": seed,
        "ratios": {"train": round(1.0 - dev_ratio - test_ratio, 10),
                   "dev": dev_ratio, "test": test_ratio},
        "caps": {"dict_words": max_dict_words, "sent_words": max_sent_words},
        "lowercase": lowercase,
        "bpe_vocab_size": vocab_size,
        "bpe_merges": len(model.merges),
        "factor_weight": factor_weight,
        "counts": {
            "input": len(records),
            "cleaned": len(cleaned),
            "dropped": len(records) - len(cleaned),
            "train": len(parts.train),
            "dev": len(parts.dev),
            "test": len(parts.test),
        },
        "files": files,
    }
    with (out_dir / "manifest.json").open("w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    return manifest
