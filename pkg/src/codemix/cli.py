"""Batch command-line interface.

One subcommand per pipeline stage; composition happens through files, so
every intermediate artifact can be inspected and re-produced. Machine
output is JSON/JSONL, human output is an aligned table, and a --format
flag switches between them where both make sense. Re-running a subcommand
with identical flags (and seeds) produces byte-identical machine output.

Exit codes: 0 success, 1 operational error (bad input or file),
2 usage error (bad flags).
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import IO, Iterator, Sequence

from . import corpus, detector, evaluation, langid, synth
from .errors import CodemixError, MissingField

SEED_DEFAULT = 0


@contextmanager
def _reading(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdin
    else:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            yield fh


@contextmanager
def _writing(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _comma_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-joined integers, got {text!r}") from exc


def _comma_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-joined numbers, got {text!r}") from exc


def _print_json(doc: dict, out: IO[str]) -> None:
    out.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")


def _load_corpus(args: argparse.Namespace, tag_role: str = "gold") -> list[corpus.Document]:
    with _reading(args.input) as fh:
        return corpus.load(
            fh,
            format=args.input_format,
            text_field=args.text_field,
            id_field=args.id_field,
            tag_field=args.tag_field,
            tag_role=tag_role,
        )


def _add_corpus_args(parser: argparse.ArgumentParser, tag_field: str = "tags") -> None:
    parser.add_argument("--input", required=True, help="corpus file, or - for stdin")
    parser.add_argument("--input-format", choices=("jsonl", "csv"), default="jsonl")
    parser.add_argument("--text-field", default="text")
    parser.add_argument("--id-field", default=None)
    parser.add_argument("--tag-field", default=tag_field)


# --- subcommand handlers ---


def _cmd_train(args: argparse.Namespace) -> int:
    with _reading(args.input) as fh:
        lines = fh.read().splitlines()
    profile = langid.train(lines, args.lang, n_min=args.nmin, n_max=args.nmax, alpha=args.alpha)
    langid.save_profile(profile, args.out)
    return 0


def _cmd_identify(args: argparse.Namespace) -> int:
    profiles = langid.load_profile_set(args.profiles)
    with _reading(args.input) as fh:
        lines = fh.read().splitlines()
    with _writing(args.out) as out:
        for i, line in enumerate(lines):
            predictions = langid.identify(line, profiles, min_chars=args.min_chars)
            if args.format == "json":
                out.write(
                    json.dumps(
                        {
                            "line": i,
                            "predictions": [
                                {
                                    "lang": p.lang,
                                    "avg_log_likelihood": p.avg_log_likelihood,
                                    "confidence": p.confidence,
                                }
                                for p in predictions
                            ],
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
            else:
                ranking = " ".join(f"{p.lang}:{p.confidence:.4f}" for p in predictions)
                out.write(f"{i}\t{predictions[0].lang}\t{ranking}\n")
    return 0


def _detection_record(doc: corpus.Document, result: detector.DetectionResult) -> dict:
    record: dict = {"id": result.doc_id, "text": doc.text}
    if doc.gold_tag is not None:
        record["tags"] = doc.gold_tag.render()
    record["pred"] = result.tag.render()
    record["code_switched"] = result.code_switched
    record["chunks"] = [
        {
            "index": c.index,
            "text": c.text,
            "lang": c.prediction.lang,
            "avg_log_likelihood": c.prediction.avg_log_likelihood,
            "confidence": c.prediction.confidence,
            "reliable": c.reliable,
        }
        for c in result.chunks
    ]
    return record


def _cmd_detect(args: argparse.Namespace) -> int:
    profiles = langid.load_profile_set(args.profiles)
    docs = _load_corpus(args)
    with _writing(args.out) as out:
        for doc in docs:
            result = detector.detect(doc, profiles, k=args.chunks, min_chars=args.min_chars)
            out.write(json.dumps(_detection_record(doc, result), ensure_ascii=False) + "\n")
    return 0


def _cmd_dedupe(args: argparse.Namespace) -> int:
    docs = corpus.dedupe(_load_corpus(args))
    with _writing(args.out) as out:
        corpus.save_jsonl(docs, out)
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    docs = _load_corpus(args, tag_role="pred")
    stratum = None
    if args.stratum is not None:
        stratum = corpus.exact_tag_stratum(args.stratum)
    elif args.pairs_of is not None:
        stratum = corpus.pair_stratum(args.pairs_of.split(","))
    spec = corpus.SampleSpec(n=args.n, seed=args.seed, stratum=stratum)
    sampled = corpus.sample(docs, spec)
    with _writing(args.out) as out:
        corpus.save_jsonl(sampled, out)
    return 0


def _tags_of(docs: Sequence[corpus.Document], field: str) -> list[detector.LanguageTag]:
    tags = []
    for doc in docs:
        tag = doc.gold_tag or doc.pred_tag
        if tag is None:
            raise MissingField(f"document {doc.id!r} has no {field!r} tag")
        tags.append(tag)
    return tags


def _cmd_distribution(args: argparse.Namespace) -> int:
    docs = _load_corpus(args)
    tags = _tags_of(docs, args.tag_field)
    proportions = corpus.label_distribution(tags, classes=args.classes)
    counts = {label: round(p * len(tags)) for label, p in proportions.items()}
    with _writing(args.out) as out:
        if args.format == "json":
            _print_json(
                {"total": len(tags), "counts": counts, "proportions": proportions}, out
            )
        else:
            width = max(len(label) for label in proportions)
            out.write(f"{'class'.ljust(width)}  count  proportion\n")
            for label, p in proportions.items():
                out.write(f"{label.ljust(width)}  {str(counts[label]).rjust(5)}  {p:.4f}\n")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    with _reading(args.input) as fh:
        text = fh.read()
    gold_docs = corpus.load(
        iter(text.splitlines(keepends=True)),
        text_field=args.text_field,
        id_field=args.id_field,
        tag_field=args.gold_field,
    )
    pred_docs = corpus.load(
        iter(text.splitlines(keepends=True)),
        text_field=args.text_field,
        id_field=args.id_field,
        tag_field=args.pred_field,
        tag_role="pred",
    )
    gold = _tags_of(gold_docs, args.gold_field)
    pred = _tags_of(pred_docs, args.pred_field)

    matrix = evaluation.confusion(gold, pred, class_scheme=args.classes)
    report = evaluation.metrics(matrix)
    baseline = evaluation.majority_class(gold)
    with _writing(args.out) as out:
        if args.format == "json":
            _print_json(evaluation.report_document(matrix, report, baseline=baseline), out)
        else:
            out.write(evaluation.render_report(matrix, report, baseline=baseline) + "\n")
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    docs = _load_corpus(args)
    label, freq = evaluation.majority_class(_tags_of(docs, args.tag_field))
    with _writing(args.out) as out:
        if args.format == "json":
            _print_json({"majority_class": label, "baseline_accuracy": freq}, out)
        else:
            out.write(f"majority class      {label}\n")
            out.write(f"baseline accuracy   {freq:.4f}\n")
    return 0


def _cmd_chisq(args: argparse.Namespace) -> int:
    result = evaluation.chi_square_gof(args.observed, args.expected)
    with _writing(args.out) as out:
        if args.format == "json":
            _print_json(
                {
                    "statistic": result.statistic,
                    "df": result.df,
                    "p_value": result.p_value,
                    "p_display": evaluation.format_p_value(result.p_value),
                },
                out,
            )
        else:
            out.write(evaluation.render_chi_square(result) + "\n")
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    with _reading(args.source_a) as fh:
        pool_a = tuple(fh.read().split())
    with _reading(args.source_b) as fh:
        pool_b = tuple(fh.read().split())
    spec = synth.MixSpec(
        lang_a=args.lang_a,
        lang_b=args.lang_b,
        source_a=pool_a,
        source_b=pool_b,
        n_docs=args.n_docs,
        mix_rate=args.mix_rate,
        tokens_per_doc=args.tokens_per_doc,
        seed=args.seed,
    )
    with _writing(args.out) as out:
        corpus.save_jsonl(synth.generate(spec), out)
    return 0


# --- parser ---


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codemix",
        description="Trainable language identification and code-switching detection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a character n-gram profile from text lines")
    p.add_argument("--lang", required=True, help="language code, e.g. zu")
    p.add_argument("--input", required=True, help="training text, one line per example (- for stdin)")
    p.add_argument("--out", required=True, help="profile file to write")
    p.add_argument("--nmin", type=int, default=langid.DEFAULT_N_MIN)
    p.add_argument("--nmax", type=int, default=langid.DEFAULT_N_MAX)
    p.add_argument("--alpha", type=float, default=langid.DEFAULT_ALPHA)
    p.set_defaults(handler=_cmd_train)

    p = sub.add_parser("identify", help="identify the language of each input line")
    p.add_argument("--profiles", required=True, help="directory of *.profile files")
    p.add_argument("--input", required=True, help="text lines (- for stdin)")
    p.add_argument("--out", default="-")
    p.add_argument("--min-chars", type=int, default=langid.DEFAULT_MIN_CHARS)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(handler=_cmd_identify)

    p = sub.add_parser("detect", help="run chunked code-switching detection over a corpus")
    p.add_argument("--profiles", required=True, help="directory of *.profile files")
    _add_corpus_args(p)
    p.add_argument("--out", default="-")
    p.add_argument("--chunks", type=int, default=detector.DEFAULT_CHUNKS)
    p.add_argument("--min-chars", type=int, default=langid.DEFAULT_MIN_CHARS)
    p.set_defaults(handler=_cmd_detect)

    p = sub.add_parser("dedupe", help="drop documents whose normalized text repeats")
    _add_corpus_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(handler=_cmd_dedupe)

    p = sub.add_parser("sample", help="seeded uniform sample, optionally stratified by tag")
    _add_corpus_args(p)
    p.add_argument("--out", default="-")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=SEED_DEFAULT, help="RNG seed (default 0)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--stratum", help="exact tag set, e.g. en or en,zu")
    group.add_argument(
        "--pairs-of",
        help="two-language tags over these codes, e.g. en,zu,xh for the code-switched stratum",
    )
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("distribution", help="composite-tag distribution of a corpus")
    _add_corpus_args(p)
    p.add_argument("--out", default="-")
    p.add_argument("--classes", nargs="+", default=None, help="declared classes; rest bucket to 'other'")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(handler=_cmd_distribution)

    p = sub.add_parser("evaluate", help="confusion matrix and metrics from a tagged corpus")
    p.add_argument("--input", required=True, help="JSONL with gold and predicted tag fields")
    p.add_argument("--text-field", default="text")
    p.add_argument("--id-field", default=None)
    p.add_argument("--gold-field", default="tags")
    p.add_argument("--pred-field", default="pred")
    p.add_argument("--classes", nargs="+", default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("baseline", help="majority-class baseline accuracy of gold tags")
    _add_corpus_args(p)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(handler=_cmd_baseline)

    p = sub.add_parser("chisq", help="chi-square goodness of fit of counts vs proportions")
    p.add_argument("--observed", type=_comma_ints, required=True, help="e.g. 306,18,13,63")
    p.add_argument("--expected", type=_comma_floats, required=True, help="e.g. 0.557,0.203,0.084,0.155")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(handler=_cmd_chisq)

    p = sub.add_parser("synth", help="generate a gold-tagged synthetic code-mixed corpus")
    p.add_argument("--lang-a", required=True)
    p.add_argument("--lang-b", required=True)
    p.add_argument("--source-a", required=True, help="token pool file for lang-a")
    p.add_argument("--source-b", required=True, help="token pool file for lang-b")
    p.add_argument("--n-docs", type=int, required=True)
    p.add_argument("--mix-rate", type=float, default=0.5)
    p.add_argument("--tokens-per-doc", type=int, default=12)
    p.add_argument("--seed", type=int, default=SEED_DEFAULT, help="RNG seed (default 0)")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=_cmd_synth)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except (CodemixError, OSError) as exc:
        print(f"codemix {args.command}: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
