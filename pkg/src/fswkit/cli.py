"""Command-line entry point.

Subcommands: parse, serialize, factorize, defactorize, convert, prepare,
stats, evaluate, fuzz. Inputs are processed line by line; all randomized
behavior is controlled by --seed. Exit codes: 0 success, 1 validation or
parse errors (reported with file:line:column diagnostics on stderr), 2
usage errors. Set FSWKIT_LOG=debug|info|warning to adjust verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import warnings
from pathlib import Path

from . import corpus as corpus_mod
from . import factors, fsw, metrics, swu
from .errors import FswError
from .fuzzing import FuzzConfig, random_utterance

log = logging.getLogger("fswkit")


class Diagnostic(Exception):
    """Formatted user-facing error; carries the exit-1 contract."""


def _diag(source: str, lineno: int | None, err: FswError) -> Diagnostic:
    where = source
    if lineno is not None:
        where += f":{lineno}"
        if err.column is not None:
            where += f":{err.column}"
    return Diagnostic(f"{where}: {type(err).__name__}: {err.message}")


def _open_in(path: str | None):
    if path in (None, "-"):
        return sys.stdin, "<stdin>"
    return open(path, encoding="utf-8"), path


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def _lines(handle):
    for lineno, raw in enumerate(handle, start=1):
        yield lineno, raw.rstrip("\n")


# --- subcommand handlers ---

def _cmd_parse(args) -> int:
    handle, source = _open_in(args.infile)
    out = _open_out(args.out)
    for lineno, line in _lines(handle):
        try:
            u = fsw.parse_utterance(line, strict=args.strict_coords)
        except FswError as e:
            raise _diag(source, lineno, e) from e
        if args.format == "json":
            out.write(json.dumps(fsw.utterance_to_dict(u)) + "\n")
        else:
            out.write(_pretty(lineno, u))
    _close(handle, out)
    return 0


def _pretty(lineno: int, u: fsw.Utterance) -> str:
    rows = [f"line {lineno}: {len(u.signs)} sign(s)"]
    for i, sign in enumerate(u.signs, start=1):
        if isinstance(sign, fsw.PunctuationSign):
            rows.append(
                f"  [{i}] punctuation {sign.symbol.text()} {sign.position.text()}"
            )
            continue
        head = f"  [{i}] "
        if sign.prefix is not None:
            head += "prefix " + " ".join(s.text() for s in sign.prefix.symbols) + " | "
        head += (
            f"{sign.box.marker} {sign.box.extent.text()} "
            f"({len(sign.box.placements)} placement(s))"
        )
        rows.append(head)
        for p in sign.box.placements:
            rows.append(f"      {p.symbol.text()} {p.position.text()}")
    return "\n".join(rows) + "\n"


def _cmd_serialize(args) -> int:
    handle, source = _open_in(args.infile)
    out = _open_out(args.out)
    for lineno, line in _lines(handle):
        try:
            u = fsw.utterance_from_dict(json.loads(line))
        except (FswError, ValueError, KeyError, TypeError) as e:
            if isinstance(e, FswError):
                raise _diag(source, lineno, e) from e
            raise Diagnostic(f"{source}:{lineno}: bad utterance JSON: {e}") from e
        out.write(fsw.serialize_utterance(u) + "\n")
    _close(handle, out)
    return 0


def _cmd_factorize(args) -> int:
    handle, source = _open_in(args.infile)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    base = args.base or (Path(source).stem if source != "<stdin>" else "stdin")
    paths = {s: out_dir / f"{base}.{s}" for s in corpus_mod.FACTOR_SUFFIXES}
    handles = {s: p.open("w", encoding="utf-8") for s, p in paths.items()}
    try:
        for lineno, line in _lines(handle):
            try:
                bundle = factors.factorize(fsw.parse_utterance(line))
            except FswError as e:
                raise _diag(source, lineno, e) from e
            for suffix in corpus_mod.FACTOR_SUFFIXES:
                values = getattr(bundle, suffix)
                handles[suffix].write(" ".join(str(v) for v in values) + "\n")
    finally:
        for h in handles.values():
            h.close()
        _close(handle, None)
    log.info("wrote %d factor files under %s", len(paths), out_dir)
    return 0


def _read_stream(path: Path, numeric: bool) -> list[list]:
    with path.open(encoding="utf-8") as f:
        rows = [line.rstrip("\n").split() for line in f]
    if not numeric:
        return rows
    out = []
    for lineno, row in enumerate(rows, start=1):
        try:
            out.append([int(v) for v in row])
        except ValueError:
            raise Diagnostic(
                f"{path}:{lineno}: expected whitespace-separated integers"
            ) from None
    return out


def _cmd_defactorize(args) -> int:
    in_dir = Path(args.in_dir)
    base = args.base
    out = _open_out(args.out)
    streams: dict[str, list[list]] = {}
    for suffix in corpus_mod.FACTOR_SUFFIXES:
        path = in_dir / f"{base}.{suffix}"
        if suffix in ("symbol", "x", "y") and not path.exists():
            raise Diagnostic(f"{path}: required factor file is missing")
        if path.exists():
            streams[suffix] = _read_stream(path, numeric=suffix not in ("symbol", "core"))
    counts = {s: len(rows) for s, rows in streams.items()}
    if len(set(counts.values())) != 1:
        raise Diagnostic(f"factor files disagree on line counts: {counts}")
    have_derived = all(s in streams for s in corpus_mod.FACTOR_SUFFIXES)
    for i in range(counts["symbol"]):
        try:
            if have_derived and args.check_derived:
                bundle = factors.FactorBundle(
                    *(tuple(streams[s][i]) for s in corpus_mod.FACTOR_SUFFIXES)
                )
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always")
                    u = factors.defactorize(bundle)
                for w in caught:
                    print(f"{base}:{i + 1}: warning: {w.message}", file=sys.stderr)
            else:
                result = factors.reconstruct(
                    streams["symbol"][i], streams["x"][i], streams["y"][i]
                )
                if result.clamp_count:
                    print(
                        f"{base}:{i + 1}: note: clamped {result.clamp_count} "
                        "position value(s) into 250..750",
                        file=sys.stderr,
                    )
                u = result.utterance
        except FswError as e:
            raise _diag(f"{base}.symbol", i + 1, e) from e
        out.write(fsw.serialize_utterance(u) + "\n")
    _close(None, out)
    return 0


def _cmd_convert(args) -> int:
    handle, source = _open_in(args.infile)
    out = _open_out(args.out)
    convert = swu.fsw_to_swu if args.to == "swu" else swu.swu_to_fsw
    for lineno, line in _lines(handle):
        try:
            out.write(convert(line) + "\n")
        except FswError as e:
            raise _diag(source, lineno, e) from e
    _close(handle, out)
    return 0


def _read_records(args, source: str, handle) -> list[corpus_mod.CorpusRecord]:
    records = []
    dropped = 0
    for lineno, line in _lines(handle):
        if not line.strip():
            continue
        try:
            record = corpus_mod.record_from_json(json.loads(line))
        except (ValueError, KeyError) as e:
            raise Diagnostic(f"{source}:{lineno}: bad record: {e}") from e
        if record.fsw_text.strip():
            try:
                fsw.parse_utterance(record.fsw_text)
            except FswError as e:
                if getattr(args, "drop_unparseable", False):
                    dropped += 1
                    log.info("dropping record at line %d: %s", lineno, e.message)
                    continue
                raise _diag(source, lineno, e) from e
        records.append(record)
    if dropped:
        log.warning("dropped %d records with unparseable FSW", dropped)
    return records


def _cmd_prepare(args) -> int:
    handle, source = _open_in(args.infile)
    records = _read_records(args, source, handle)
    _close(handle, None)
    try:
        manifest = corpus_mod.prepare(
            records,
            args.out,
            seed=args.seed,
            vocab_size=args.vocab_size,
            max_dict_words=args.max_dict_words,
            max_sent_words=args.max_sent_words,
            lowercase=args.lowercase,
            dev_ratio=args.dev_ratio,
            test_ratio=args.test_ratio,
            factor_weight=args.factor_weight,
        )
    except FswError as e:
        raise _diag(source, None, e) from e
    json.dump(manifest, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _cmd_stats(args) -> int:
    handle, source = _open_in(args.infile)
    records = _read_records(args, source, handle)
    _close(handle, None)
    report = corpus_mod.stats(records)
    out = _open_out(args.out)
    json.dump(report, out, indent=2, sort_keys=True)
    out.write("\n")
    _close(None, out)
    return 0


def _read_token_lines(path: str) -> list[list[str]]:
    with open(path, encoding="utf-8") as f:
        return [line.rstrip("\n").split() for line in f]


def _read_int_lines(path: str) -> list[list[int]]:
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            try:
                rows.append([int(v) for v in line.split()])
            except ValueError:
                raise Diagnostic(
                    f"{path}:{lineno}: expected whitespace-separated integers"
                ) from None
    return rows


def _cmd_evaluate(args) -> int:
    report = metrics.EvalReport()
    try:
        if args.metric in ("bleu", "chrf", "chrf++"):
            hyp = _read_token_lines(args.hyp)
            ref = _read_token_lines(args.ref)
            if args.metric == "bleu":
                report.bleu = metrics.bleu(hyp, ref)
            else:
                word_order = 2 if args.metric == "chrf++" else 0
                report.chrf = metrics.chrf(
                    hyp, ref, beta=args.beta, char_order=args.char_order,
                    word_order=word_order,
                )
        elif args.metric == "mae":
            report.mae_x = _file_mae(args.hyp, args.ref)
            if args.hyp_y or args.ref_y:
                if not (args.hyp_y and args.ref_y):
                    raise Diagnostic("--hyp-y and --ref-y must be given together")
                report.mae_y = _file_mae(args.hyp_y, args.ref_y)
        elif args.metric == "topn":
            with open(args.hyp, encoding="utf-8") as f:
                nbest = metrics.read_nbest(f)
            with open(args.ref, encoding="utf-8") as f:
                refs = [line.rstrip("\n") for line in f]
            for n in args.n:
                report.top_n[n] = metrics.topn_accuracy(
                    nbest, refs, n, casefold=args.casefold
                )
    except FswError as e:
        raise Diagnostic(f"evaluate: {type(e).__name__}: {e.message}") from e
    except ValueError as e:
        raise Diagnostic(f"evaluate: {e}") from e
    json.dump(report.to_dict(), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _file_mae(hyp_path: str, ref_path: str) -> float:
    hyp_rows = _read_int_lines(hyp_path)
    ref_rows = _read_int_lines(ref_path)
    if len(hyp_rows) != len(ref_rows):
        raise Diagnostic(
            f"mae: {hyp_path} has {len(hyp_rows)} lines, {ref_path} has {len(ref_rows)}"
        )
    if not hyp_rows:
        return 0.0
    values = [metrics.mae_positions(h, r) for h, r in zip(hyp_rows, ref_rows)]
    return sum(values) / len(values)


def _cmd_fuzz(args) -> int:
    out = _open_out(args.out)
    rng = random.Random(args.seed)
    config = FuzzConfig(
        max_signs=args.max_signs,
        max_placements=args.max_placements,
        punct_prob=args.punct_prob,
        prefix_prob=args.prefix_prob,
    )
    for _ in range(args.count):
        out.write(fsw.serialize_utterance(random_utterance(rng, config)) + "\n")
    _close(None, out)
    return 0


# --- wiring ---

def _close(handle, out) -> None:
    if handle is not None and handle is not sys.stdin:
        handle.close()
    if out is not None and out is not sys.stdout:
        out.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fswkit",
        description="Parse, factorize, convert, prepare, and evaluate SignWriting text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, output=True):
        p.add_argument("--in", dest="infile", default=None,
                       help="input file (default: stdin)")
        if output:
            p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("parse", help="parse FSW lines into trees")
    add_io(p)
    p.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p.add_argument("--strict-coords", action="store_true",
                   help="tighten the coordinate upper bound from 750 to 749")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("serialize", help="serialize utterance JSON lines back to FSW")
    add_io(p)
    p.set_defaults(func=_cmd_serialize)

    p = sub.add_parser("factorize", help="emit the eight factor files for FSW lines")
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--base", default=None, help="basename for factor files")
    p.set_defaults(func=_cmd_factorize)

    p = sub.add_parser("defactorize", help="reassemble FSW from factor files")
    p.add_argument("--in-dir", required=True)
    p.add_argument("--base", default="corpus")
    p.add_argument("--out", default=None)
    p.add_argument("--no-check-derived", dest="check_derived", action="store_false")
    p.set_defaults(func=_cmd_defactorize)

    p = sub.add_parser("convert", help="convert between FSW and SWU")
    add_io(p)
    p.add_argument("--to", choices=("swu", "fsw"), required=True)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("prepare", help="clean, tag, split, learn/apply BPE, emit files")
    p.add_argument("--in", dest="infile", default=None, help="JSONL records")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--vocab-size", type=int, default=2000)
    p.add_argument("--max-dict-words", type=int, default=100)
    p.add_argument("--max-sent-words", type=int, default=200)
    p.add_argument("--lowercase", action="store_true")
    p.add_argument("--dev-ratio", type=float, default=0.03)
    p.add_argument("--test-ratio", type=float, default=0.02)
    p.add_argument("--factor-weight", type=float, default=None,
                   help="recorded in the manifest for downstream training configs")
    p.add_argument("--drop-unparseable", action="store_true",
                   help="skip records whose FSW does not parse instead of failing")
    p.set_defaults(func=_cmd_prepare)

    p = sub.add_parser("stats", help="corpus statistics per language pair")
    add_io(p)
    p.add_argument("--drop-unparseable", action="store_true")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("evaluate", help="score hypothesis files against references")
    p.add_argument("--metric", choices=("bleu", "chrf", "chrf++", "mae", "topn"),
                   required=True)
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp-y", default=None, help="second stream for mae")
    p.add_argument("--ref-y", default=None, help="second stream for mae")
    p.add_argument("--n", type=_int_list, default=[1, 5],
                   help="comma-separated n values for topn (default 1,5)")
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--char-order", type=int, default=6)
    p.add_argument("--casefold", action="store_true",
                   help="case-insensitive matching for topn")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("fuzz", help="emit random valid utterances")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--max-signs", type=int, default=4)
    p.add_argument("--max-placements", type=int, default=6)
    p.add_argument("--punct-prob", type=float, default=0.2)
    p.add_argument("--prefix-prob", type=float, default=0.15)
    p.set_defaults(func=_cmd_fuzz)

    return parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated int list")


def main(argv=None) -> int:
    level = os.environ.get("FSWKIT_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Diagnostic as e:
        print(f"fswkit: error: {e}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError) as e:
        print(f"fswkit: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
