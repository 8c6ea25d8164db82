"""Command-line front end.

Subcommands cover the whole pipeline: normalize, segment, project,
variants, augment, mix, score, wer, simulate, report.  Exit codes are 0
(success), 1 (usage error), 2 (malformed or missing input), 3 (internal
error).  Randomized subcommands take ``--seed`` and print the effective
seed; identical invocations produce byte-identical outputs.

A YAML config file supplies defaults for most flags.  It is found through
``--config`` or the ``SEGMT_CONFIG`` environment variable; explicit flags
always win.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .align import AlignmentConfig, edit_distance, project_boundaries
from .augment import AugmentationConfig, BitextPair, MixtureSpec, augment_corpus, build_training_mixture
from .bleu import BleuConfig, corpus_bleu
from .config import ENV_CONFIG_PATH, ConfigError, PipelineConfig, load_config
from .evaluate import DEFAULT_BUCKET_BOUNDS, bucket_report, make_error_variants, score_documents
from .formats import (
    ParseError,
    bleu_record,
    bucket_records,
    read_bitext,
    read_documents,
    read_transcripts,
    wer_record,
    write_bitext,
    write_documents,
    write_records,
)
from .noise import NoiseConfig, corrupt_boundaries, corrupt_tokens
from .segment import PauseSplitConfig, break_on_punctuation, split_fixed_length, split_on_pauses
from .text import (
    PUNCTUATED,
    STRIPPED,
    NormalizationPolicy,
    SegmentedDocument,
    flatten,
    normalize,
    normalize_document,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_POLICIES = {"stripped": STRIPPED, "punctuated": PUNCTUATED}


class UsageError(Exception):
    """Bad flag combination or value detected after parsing."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits 1 instead of argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _pipeline_config(args) -> PipelineConfig:
    path = getattr(args, "config", None) or os.environ.get(ENV_CONFIG_PATH)
    if path:
        return load_config(path)
    return PipelineConfig()


def _input_path(args, cfg: PipelineConfig) -> str:
    if args.input is not None:
        return args.input
    if cfg.input_path:
        return cfg.input_path
    raise UsageError("no input file given (pass a path or set input_path in the config)")


def _output_path(args, cfg: PipelineConfig) -> str:
    if args.output is not None:
        return args.output
    if cfg.output_path:
        return cfg.output_path
    raise UsageError("no output file given (pass --output or set output_path in the config)")


def _effective_seed(flag_value: Optional[int], *fallbacks: int) -> int:
    if flag_value is not None:
        return flag_value
    for value in fallbacks:
        if value:
            return value
    return 0


def _drop_empty(docs: Sequence[SegmentedDocument], action: str) -> List[SegmentedDocument]:
    kept = [doc for doc in docs if doc.segments]
    dropped = len(docs) - len(kept)
    if dropped:
        print(f"note: {action} left {dropped} document(s) empty; dropped", file=sys.stderr)
    return kept


def _parse_bounds(text: str) -> Tuple[Tuple[int, int], ...]:
    bounds = []
    try:
        for part in text.split(","):
            lo, _, hi = part.partition(":")
            bounds.append((int(lo), int(hi)))
    except ValueError as err:
        raise argparse.ArgumentTypeError(
            f"expected LO:HI[,LO:HI...], got {text!r}"
        ) from err
    return tuple(bounds)


def _parse_corpus(text: str) -> Tuple[str, str, Optional[str]]:
    label, sep, paths = text.partition("=")
    if not sep or not label or not paths:
        raise argparse.ArgumentTypeError(f"expected LABEL=ORIGINALS[:AUGMENTED], got {text!r}")
    original, _, augmented = paths.partition(":")
    return label, original, augmented or None


def _parse_weight(text: str) -> Tuple[str, float]:
    label, sep, value = text.partition("=")
    if not sep or not label:
        raise argparse.ArgumentTypeError(f"expected LABEL=WEIGHT, got {text!r}")
    try:
        return label, float(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad weight in {text!r}") from err


# ---------------------------------------------------------------- handlers


def cmd_normalize(args) -> int:
    cfg = _pipeline_config(args)
    policy = _POLICIES[args.policy] if args.policy else cfg.normalization
    docs = read_documents(_input_path(args, cfg))
    normalized = [normalize_document(doc, policy) for doc in docs]
    write_documents(_output_path(args, cfg), _drop_empty(normalized, "normalization"))
    return EXIT_OK


def cmd_segment_punct(args) -> int:
    cfg = _pipeline_config(args)
    docs = read_documents(_input_path(args, cfg))
    out = [
        break_on_punctuation(doc.tokens(), doc_id=doc.doc_id)
        for doc in docs
    ]
    write_documents(_output_path(args, cfg), out)
    return EXIT_OK


def cmd_segment_fixed(args) -> int:
    cfg = _pipeline_config(args)
    length = args.n if args.n is not None else cfg.fixed_length
    if length < 1:
        raise UsageError("--n must be >= 1")
    docs = read_documents(_input_path(args, cfg))
    out = [split_fixed_length(doc.tokens(), length, doc_id=doc.doc_id) for doc in docs]
    write_documents(_output_path(args, cfg), out)
    return EXIT_OK


def cmd_segment_pause(args) -> int:
    cfg = _pipeline_config(args)
    threshold = (
        args.threshold if args.threshold is not None else cfg.pause_split.pause_threshold_sec
    )
    max_tokens = args.max_tokens if args.max_tokens is not None else cfg.pause_split.max_tokens
    try:
        split_cfg = PauseSplitConfig(pause_threshold_sec=threshold, max_tokens=max_tokens)
    except ValueError as err:
        raise UsageError(str(err)) from err
    transcripts = read_transcripts(_input_path(args, cfg))
    out = [split_on_pauses(t, split_cfg) for t in transcripts]
    write_documents(_output_path(args, cfg), _drop_empty(out, "pause splitting"))
    return EXIT_OK


def cmd_project(args) -> int:
    cfg = _pipeline_config(args)
    sources = read_documents(args.source)
    targets = read_documents(args.target)
    if len(sources) != len(targets):
        raise ValueError(
            f"document count mismatch: {len(sources)} source vs {len(targets)} target"
        )
    out = []
    for src, tgt in zip(sources, targets):
        tokens, _ = flatten(tgt)
        projected = project_boundaries(src, tokens, cfg.alignment)
        out.append(SegmentedDocument(projected.segments, doc_id=tgt.doc_id))
    write_documents(_output_path(args, cfg), out)
    return EXIT_OK


def cmd_variants(args) -> int:
    cfg = _pipeline_config(args)
    gold_docs = read_documents(args.gold)
    system_docs = read_documents(args.system)
    if len(gold_docs) != len(system_docs):
        raise ValueError(
            f"document count mismatch: {len(gold_docs)} gold vs {len(system_docs)} system"
        )
    variants = [
        make_error_variants(gold, system, cfg.alignment)
        for gold, system in zip(gold_docs, system_docs)
    ]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_documents(out_dir / "gold.txt", [v.gold for v in variants])
    write_documents(out_dir / "system.txt", [v.system for v in variants])
    write_documents(out_dir / "recognition.txt", [v.recognition_errors for v in variants])
    write_documents(out_dir / "segmentation.txt", [v.segmentation_errors for v in variants])
    print(f"wrote gold/system/recognition/segmentation documents to {out_dir}")
    return EXIT_OK


def cmd_augment(args) -> int:
    cfg = _pipeline_config(args)
    seed = _effective_seed(args.seed, cfg.augmentation.seed, cfg.seed)
    p_max = args.p_max if args.p_max is not None else cfg.augmentation.p_max
    try:
        aug_cfg = AugmentationConfig(p_max=p_max, seed=seed)
    except ValueError as err:
        raise UsageError(str(err)) from err
    blocks = read_bitext(_input_path(args, cfg), origin=args.origin)
    out_blocks = []
    produced = skipped = 0
    offset = 0
    for block in blocks:
        result = augment_corpus(block, aug_cfg, index_offset=offset)
        offset += len(block)
        out_blocks.append(result.pairs)
        produced += len(result.pairs)
        skipped += result.skipped
    write_bitext(_output_path(args, cfg), out_blocks)
    print(f"effective seed: {seed}")
    print(f"augmented {produced} pair(s), skipped {skipped}")
    return EXIT_OK


def cmd_mix(args) -> int:
    cfg = _pipeline_config(args)
    seed = _effective_seed(args.seed, cfg.seed)
    fraction = (
        args.augmented_fraction
        if args.augmented_fraction is not None
        else cfg.mixture_augmented_fraction
    )
    if args.total < 0:
        raise UsageError("--total must be >= 0")
    corpora = {}
    for label, original_path, augmented_path in args.corpus:
        if label in corpora:
            raise UsageError(f"corpus {label!r} given twice")
        originals = [pair for block in read_bitext(original_path, origin=label) for pair in block]
        augmented = (
            [pair for block in read_bitext(augmented_path, origin=label) for pair in block]
            if augmented_path
            else []
        )
        corpora[label] = (originals, augmented)
    weights = {}
    for label, weight in args.weight:
        if label in weights:
            raise UsageError(f"weight for {label!r} given twice")
        weights[label] = weight
    try:
        spec = MixtureSpec(corpus_weights=weights, augmented_fraction=fraction, seed=seed)
    except ValueError as err:
        raise UsageError(str(err)) from err
    mixture = build_training_mixture(corpora, spec, args.total)
    write_bitext(_output_path(args, cfg), [mixture])
    print(f"effective seed: {seed}")
    counts = Counter(pair.origin for pair in mixture)
    summary = ", ".join(f"{label}: {counts[label]}" for label in sorted(counts))
    print(f"drew {len(mixture)} pair(s) ({summary})" if mixture else "drew 0 pair(s)")
    return EXIT_OK


def _bleu_config(args, cfg: PipelineConfig) -> BleuConfig:
    max_order = args.max_order if args.max_order is not None else cfg.bleu.max_ngram_order
    case_sensitive = False if args.case_insensitive else cfg.bleu.case_sensitive
    smoothing = args.smoothing if args.smoothing else cfg.bleu.smoothing
    try:
        return BleuConfig(
            max_ngram_order=max_order, case_sensitive=case_sensitive, smoothing=smoothing
        )
    except ValueError as err:
        raise UsageError(str(err)) from err


def cmd_score(args) -> int:
    cfg = _pipeline_config(args)
    bleu_cfg = _bleu_config(args, cfg)
    hyp_docs = read_documents(args.hypothesis)
    ref_docs = read_documents(args.reference)
    if args.resegment:
        report = score_documents(hyp_docs, ref_docs, bleu_cfg, cfg.alignment)
    else:
        hyp_segments = [seg for doc in hyp_docs for seg in doc.segments]
        ref_segments = [seg for doc in ref_docs for seg in doc.segments]
        report = corpus_bleu(hyp_segments, ref_segments, bleu_cfg)
    print(f"BLEU {report.score:.2f}")
    precisions = "/".join(f"{100.0 * p:.1f}" for p in report.ngram_precisions)
    print(f"precisions: {precisions}")
    print(f"brevity penalty: {report.brevity_penalty:.3f}")
    print(f"lengths: hyp {report.hyp_len}, ref {report.ref_len}")
    if args.json:
        write_records(args.json, [bleu_record(report)])
    return EXIT_OK


def cmd_wer(args) -> int:
    cfg = _pipeline_config(args)
    ref_docs = read_documents(args.reference)
    hyp_docs = read_documents(args.hypothesis)
    if len(ref_docs) != len(hyp_docs):
        raise ValueError(
            f"document count mismatch: {len(ref_docs)} reference vs {len(hyp_docs)} hypothesis"
        )
    plain = AlignmentConfig(normalize_for_alignment=NormalizationPolicy())
    errors = 0
    ref_len = 0
    for ref_doc, hyp_doc in zip(ref_docs, hyp_docs):
        ref = normalize(ref_doc.tokens(), STRIPPED)
        hyp = normalize(hyp_doc.tokens(), STRIPPED)
        errors += edit_distance(ref, hyp, plain)
        ref_len += len(ref)
    if ref_len == 0:
        raise ValueError("WER is undefined: reference corpus is empty after normalization")
    rate = errors / ref_len
    print(f"WER {rate:.4f} ({errors} error(s) / {ref_len} reference token(s))")
    if args.json:
        write_records(args.json, [wer_record(rate, errors, ref_len)])
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _pipeline_config(args)
    seed = _effective_seed(args.seed, cfg.noise.seed, cfg.seed)
    docs = read_documents(_input_path(args, cfg))
    if args.vocab:
        vocabulary = tuple(sorted(set(Path(args.vocab).read_text(encoding="utf-8").split())))
    elif cfg.noise.vocabulary:
        vocabulary = cfg.noise.vocabulary
    else:
        vocabulary = tuple(sorted({tok for doc in docs for tok in doc.tokens()}))

    def rate(flag_value, config_value):
        return flag_value if flag_value is not None else config_value

    try:
        noise_cfg = NoiseConfig(
            substitution_rate=rate(args.substitution_rate, cfg.noise.substitution_rate),
            deletion_rate=rate(args.deletion_rate, cfg.noise.deletion_rate),
            insertion_rate=rate(args.insertion_rate, cfg.noise.insertion_rate),
            boundary_merge_rate=rate(args.merge_rate, cfg.noise.boundary_merge_rate),
            boundary_split_rate=rate(args.split_rate, cfg.noise.boundary_split_rate),
            vocabulary=vocabulary,
            seed=seed,
        )
    except ValueError as err:
        raise UsageError(str(err)) from err
    corrupted = [corrupt_boundaries(corrupt_tokens(doc, noise_cfg), noise_cfg) for doc in docs]
    write_documents(_output_path(args, cfg), _drop_empty(corrupted, "corruption"))
    print(f"effective seed: {seed}")
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = _pipeline_config(args)
    bounds = args.bounds if args.bounds is not None else DEFAULT_BUCKET_BOUNDS
    hyp_docs = read_documents(args.hypothesis)
    ref_docs = read_documents(args.reference)
    result = bucket_report(hyp_docs, ref_docs, bounds, align_cfg=cfg.alignment)
    print(f"{'bucket':<12}{'count':>8}{'mean BLEU':>12}")
    for bucket in result.buckets:
        label = f"[{bucket.lower},{bucket.upper})"
        print(f"{label:<12}{bucket.count:>8}{bucket.mean_score:>12.2f}")
    if args.json:
        write_records(args.json, bucket_records(result))
    return EXIT_OK


# ------------------------------------------------------------ parser setup


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="YAML config file")

    parser = _Parser(prog="segmt", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", parents=[common], help="normalize document tokens")
    p.add_argument("input", nargs="?", help="document file (default: config input_path)")
    p.add_argument("-o", "--output", help="output document file")
    p.add_argument("--policy", choices=sorted(_POLICIES), help="named policy override")
    p.set_defaults(func=cmd_normalize)

    seg = sub.add_parser("segment", help="cut token streams into segments")
    seg_sub = seg.add_subparsers(dest="strategy", required=True, parser_class=_Parser)

    p = seg_sub.add_parser("punct", parents=[common], help="cut after sentence-final punctuation")
    p.add_argument("input", nargs="?", help="document file")
    p.add_argument("-o", "--output", help="output document file")
    p.set_defaults(func=cmd_segment_punct)

    p = seg_sub.add_parser("fixed", parents=[common], help="cut into fixed-length chunks")
    p.add_argument("input", nargs="?", help="document file")
    p.add_argument("-o", "--output", help="output document file")
    p.add_argument("--n", type=int, help="tokens per segment")
    p.set_defaults(func=cmd_segment_fixed)

    p = seg_sub.add_parser("pause", parents=[common], help="cut timed transcripts at pauses")
    p.add_argument("input", nargs="?", help="timed transcript JSONL file")
    p.add_argument("-o", "--output", help="output document file")
    p.add_argument("--threshold", type=float, help="minimum pause in seconds")
    p.add_argument("--max-tokens", type=int, help="cap on segment length")
    p.set_defaults(func=cmd_segment_pause)

    p = sub.add_parser(
        "project", parents=[common], help="carry boundaries from one transcript to another"
    )
    p.add_argument("source", help="document file providing boundaries")
    p.add_argument("target", help="document file providing tokens")
    p.add_argument("-o", "--output", help="output document file")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser(
        "variants", parents=[common], help="isolate recognition errors from segmentation errors"
    )
    p.add_argument("gold", help="gold transcript document file")
    p.add_argument("system", help="system transcript document file")
    p.add_argument("-d", "--out-dir", required=True, help="directory for the four variants")
    p.set_defaults(func=cmd_variants)

    p = sub.add_parser("augment", parents=[common], help="cross-boundary bitext augmentation")
    p.add_argument("input", nargs="?", help="bitext file")
    p.add_argument("-o", "--output", help="output bitext file")
    p.add_argument("--p-max", type=float, help="truncation fraction cap")
    p.add_argument("--origin", default="", help="corpus label for the output pairs")
    p.add_argument("--seed", type=int, help="random seed (default from config, else 0)")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("mix", parents=[common], help="sample a weighted training mixture")
    p.add_argument(
        "--corpus",
        action="append",
        required=True,
        type=_parse_corpus,
        metavar="LABEL=ORIGINALS[:AUGMENTED]",
        help="bitext pools for one corpus (repeatable)",
    )
    p.add_argument(
        "--weight",
        action="append",
        required=True,
        type=_parse_weight,
        metavar="LABEL=WEIGHT",
        help="sampling weight for one corpus (repeatable; weights sum to 1)",
    )
    p.add_argument("--total", type=int, required=True, help="number of pairs to draw")
    p.add_argument("--augmented-fraction", type=float, help="share drawn from augmented pools")
    p.add_argument("-o", "--output", help="output bitext file")
    p.add_argument("--seed", type=int, help="random seed (default from config, else 0)")
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("score", parents=[common], help="corpus BLEU, optionally resegmented")
    p.add_argument("hypothesis", help="hypothesis document file")
    p.add_argument("reference", help="reference document file")
    p.add_argument(
        "--resegment",
        action="store_true",
        help="project reference boundaries onto the hypothesis before scoring",
    )
    p.add_argument("--max-order", type=int, help="largest n-gram order")
    p.add_argument("--case-insensitive", action="store_true", help="lowercase before scoring")
    p.add_argument("--smoothing", choices=["none", "add-one"], help="precision smoothing")
    p.add_argument("--json", metavar="PATH", help="also write a JSONL report")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("wer", parents=[common], help="word error rate over documents")
    p.add_argument("reference", help="reference document file")
    p.add_argument("hypothesis", help="hypothesis document file")
    p.add_argument("--json", metavar="PATH", help="also write a JSONL report")
    p.set_defaults(func=cmd_wer)

    p = sub.add_parser("simulate", parents=[common], help="corrupt tokens and boundaries")
    p.add_argument("input", nargs="?", help="document file")
    p.add_argument("-o", "--output", help="output document file")
    p.add_argument("--substitution-rate", type=float, help="per-token substitution probability")
    p.add_argument("--deletion-rate", type=float, help="per-token deletion probability")
    p.add_argument("--insertion-rate", type=float, help="per-gap insertion probability")
    p.add_argument("--merge-rate", type=float, help="per-boundary merge probability")
    p.add_argument("--split-rate", type=float, help="per-gap split probability")
    p.add_argument("--vocab", metavar="PATH", help="replacement vocabulary file (tokens)")
    p.add_argument("--seed", type=int, help="random seed (default from config, else 0)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", parents=[common], help="mean BLEU by reference length bucket")
    p.add_argument("hypothesis", help="hypothesis document file")
    p.add_argument("reference", help="reference document file")
    p.add_argument(
        "--bounds",
        type=_parse_bounds,
        metavar="LO:HI[,LO:HI...]",
        help="bucket bounds (default 0:20,20:40,40:60)",
    )
    p.add_argument("--json", metavar="PATH", help="also write a JSONL report")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ConfigError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as err:  # exit-code contract: unexpected failures are internal
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))
