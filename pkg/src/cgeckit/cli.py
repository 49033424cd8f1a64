"""Command-line surface wiring the library into batch workflows.

Exit codes: 0 success, 1 runtime/IO failure, 2 usage error, 3 malformed
input data. Every error prints one `cgeckit: <kind> error: ...` line to
stderr. All randomness flows from --seed, so every run is reproducible.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import random
import sys
from typing import Iterator, Sequence

from cgeckit import lm as lm_mod
from cgeckit.core import (
    ConfigError,
    ParseError,
    ValidationError,
    pair_to_json,
    read_pairs,
)
from cgeckit.generator import (
    AugmentConfig,
    AugmentReport,
    GenConfig,
    GenerationReport,
    stream_augment_lines,
    stream_generate,
)
from cgeckit.metrics import (
    ScoreParams,
    corpus_stats,
    fleiss_kappa,
    format_score,
    parse_m2,
    per_type_edit_stats,
    score_corpus,
)
from cgeckit.resources import load_resources
from cgeckit.tagging import segment_and_tag

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_DATA = 3

RESOURCES_ENV = "CLG_RESOURCES"


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as ConfigError."""

    def error(self, message):
        raise ConfigError(message)


def _read_lines(path: str) -> Iterator[str]:
    """Non-blank lines of a text file, stripped of the trailing newline."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.strip():
                yield line


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path}: expected a JSON object")
    return doc


def _pick(flag_value, config: dict, key: str, default):
    """Flag beats config file beats built-in default."""
    if flag_value is not None:
        return flag_value
    return config.get(key, default)


# --- subcommands ------------------------------------------------------------

_LM_STATE: dict = {}


def _init_lm_worker(model) -> None:
    _LM_STATE["model"] = model


def _ppl_job(sentence: str) -> float:
    return lm_mod.perplexity(_LM_STATE["model"], sentence)


def _cmd_filter(args) -> int:
    if args.model:
        model = lm_mod.load_lm(args.model)
    else:
        train_path = args.train or args.input
        model = lm_mod.train_lm(
            _read_lines(train_path), lm_mod.LMConfig(n=args.n, alpha=args.alpha)
        )
        if args.save_model:
            lm_mod.save_lm(model, args.save_model)
    sentences = list(_read_lines(args.input))
    if args.workers > 1 and len(sentences) > 1:
        with multiprocessing.Pool(
            args.workers, initializer=_init_lm_worker, initargs=(model,)
        ) as pool:
            ppls = pool.map(_ppl_job, sentences, chunksize=256)
    else:
        ppls = [lm_mod.perplexity(model, s) for s in sentences]
    kept = lm_mod.keep_indices(ppls, args.keep)
    with open(args.output, "w", encoding="utf-8") as out:
        for index in kept:
            out.write(sentences[index] + "\n")
    return EXIT_OK


_GEN_CONFIG_KEYS = {"enabled_rules", "per_sentence", "combine_max", "rule_weights", "pretagged"}


def _cmd_generate(args) -> int:
    resources_dir = args.resources or os.environ.get(RESOURCES_ENV)
    if not resources_dir:
        raise ConfigError(f"generate needs --resources or ${RESOURCES_ENV}")
    resources = load_resources(resources_dir)
    overrides = _load_config(args.config)
    unknown = set(overrides) - _GEN_CONFIG_KEYS
    if unknown:
        raise ConfigError(f"config {args.config}: unknown keys {sorted(unknown)}")
    enabled = args.rules.split(",") if args.rules else overrides.get("enabled_rules")
    kwargs = {
        "seed": args.seed,
        "per_sentence": _pick(args.per_sentence, overrides, "per_sentence", 1),
        "combine_max": _pick(args.combine_max, overrides, "combine_max", 1),
        "rule_weights": overrides.get("rule_weights", {}),
    }
    if enabled is not None:
        kwargs["enabled_rules"] = frozenset(enabled)
    config = GenConfig(**kwargs)
    pretagged = args.pretagged or bool(overrides.get("pretagged", False))
    report = GenerationReport()
    with open(args.output, "w", encoding="utf-8") as out:
        stream = stream_generate(
            _read_lines(args.input), config, resources, args.workers, pretagged
        )
        for pairs, sub in stream:
            for pair in pairs:
                out.write(pair_to_json(pair) + "\n")
            report.merge(sub)
    report_path = args.report or args.output + ".report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    return EXIT_OK


_AUG_CONFIG_KEYS = {"p_keep", "p_insert", "p_replace", "p_delete"}


def _cmd_augment(args) -> int:
    overrides = _load_config(args.config)
    unknown = set(overrides) - _AUG_CONFIG_KEYS
    if unknown:
        raise ConfigError(f"config {args.config}: unknown keys {sorted(unknown)}")
    vocabulary: set[str] = set()
    for line in _read_lines(args.input):
        vocabulary.update(token.surface for token in segment_and_tag(line).tokens)
    config = AugmentConfig(
        p_keep=overrides.get("p_keep", 0.70),
        p_insert=overrides.get("p_insert", 0.10),
        p_replace=overrides.get("p_replace", 0.10),
        p_delete=overrides.get("p_delete", 0.10),
        word_pool=tuple(sorted(vocabulary)),
        seed=args.seed,
    )
    report = AugmentReport()
    with open(args.output, "w", encoding="utf-8") as out:
        for pair, counts in stream_augment_lines(
            _read_lines(args.input), config, args.workers
        ):
            out.write(pair_to_json(pair) + "\n")
            report.sentences_read += 1
            report.words_seen += sum(counts.values())
            for op, count in counts.items():
                report.op_counts[op] += count
    report_path = args.report or args.output + ".report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    return EXIT_OK


def _cmd_stats(args) -> int:
    report = corpus_stats(read_pairs(args.input))
    doc = report.to_dict()
    if args.per_type:
        doc = {"corpus": doc, "per_type": per_type_edit_stats(read_pairs(args.input))}
    text = json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_score(args) -> int:
    gold = parse_m2(args.m2)
    params = ScoreParams(
        beta=args.beta, max_unchanged=args.max_unchanged, char_tokenize=args.char_tokenize
    )
    joiner = "" if args.char_tokenize else " "
    sources = [joiner.join(entry.tokens) for entry in gold]
    with open(args.hyp, encoding="utf-8") as fh:
        hypotheses = fh.read().splitlines()
    report = score_corpus(sources, hypotheses, gold, params)
    sys.stdout.write(format_score(report))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return EXIT_OK


def _cmd_kappa(args) -> int:
    rows: list[list[int]] = []
    with open(args.input, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([int(token) for token in line.split()])
            except ValueError:
                raise ParseError(
                    f"{args.input}:{lineno}: rating counts must be integers"
                ) from None
    value = fleiss_kappa(rows, args.raters)
    print(f"Fleiss_kappa : {value:.4f}")
    return EXIT_OK


def _cmd_sample(args) -> int:
    if args.size < 1:
        raise ConfigError(f"--size must be >= 1, got {args.size}")
    rng = random.Random(args.seed)
    reservoir: list[tuple[int, str]] = []
    for index, line in enumerate(_read_lines(args.input)):
        if index < args.size:
            reservoir.append((index, line))
        else:
            slot = rng.randint(0, index)
            if slot < args.size:
                reservoir[slot] = (index, line)
    reservoir.sort()
    with open(args.output, "w", encoding="utf-8") as out:
        for _, line in reservoir:
            out.write(line + "\n")
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="cgeckit", description="Corpus synthesis and evaluation toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("filter", help="keep the lowest-perplexity percentile of a corpus")
    p.add_argument("--input", required=True, help="corpus to filter, one sentence per line")
    p.add_argument("--output", required=True, help="kept sentences, original order")
    p.add_argument("--keep", required=True, type=float, help="percent to keep, in (0, 100]")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--train", help="training corpus (default: the input itself)")
    source.add_argument("--model", help="load a saved model instead of training")
    p.add_argument("--save-model", help="save the trained model as JSON")
    p.add_argument("--n", type=int, default=3, help="n-gram order (default 3)")
    p.add_argument("--alpha", type=float, default=1.0, help="additive smoothing (default 1.0)")
    p.add_argument("--workers", type=int, default=1, help="parallel perplexity workers")
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("generate", help="corrupt correct sentences into labeled pairs")
    p.add_argument("--input", required=True, help="correct sentences, one per line")
    p.add_argument("--output", required=True, help="pairs as JSON lines")
    p.add_argument("--resources", help=f"rule resources directory (or ${RESOURCES_ENV})")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--per-sentence", type=int, dest="per_sentence", help="pairs to attempt per sentence")
    p.add_argument("--combine-max", type=int, dest="combine_max", help="max rules stacked per pair")
    p.add_argument("--rules", help="comma-separated fine rule ids to enable")
    p.add_argument("--config", help="JSON config: enabled_rules/per_sentence/combine_max/rule_weights/pretagged")
    p.add_argument("--report", help="report path (default: OUTPUT.report.json)")
    p.add_argument("--workers", type=int, default=1, help="parallel workers")
    p.add_argument("--pretagged", action="store_true", help="input lines are surface/TAG items")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("augment", help="random word-level corruption baseline")
    p.add_argument("--input", required=True, help="correct sentences, one per line")
    p.add_argument("--output", required=True, help="pairs as JSON lines")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--config", help="JSON config: p_keep/p_insert/p_replace/p_delete")
    p.add_argument("--report", help="report path (default: OUTPUT.report.json)")
    p.add_argument("--workers", type=int, default=1, help="parallel workers")
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("stats", help="corpus statistics tables from a pairs file")
    p.add_argument("--input", required=True, help="pairs as JSON lines")
    p.add_argument("--per-type", action="store_true", dest="per_type", help="add per-error-type op counts")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("score", help="MaxMatch P/R/F against an M2 gold file")
    p.add_argument("--hyp", required=True, help="hypotheses, one per line, aligned with the gold file")
    p.add_argument("--m2", required=True, help="gold annotations in M2 format")
    p.add_argument("--beta", type=float, default=0.5, help="F-measure beta (default 0.5)")
    p.add_argument("--max-unchanged", type=int, default=2, dest="max_unchanged", help="merge window (default 2)")
    p.add_argument("--char-tokenize", action="store_true", dest="char_tokenize", help="split hypotheses into characters")
    p.add_argument("--report", help="also write a JSON score report")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("kappa", help="Fleiss' kappa from a rating-count matrix")
    p.add_argument("--input", required=True, help="one item per line: per-category rating counts")
    p.add_argument("--raters", type=int, help="raters per item (default: inferred from row sums)")
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("sample", help="reproducible random sample of lines")
    p.add_argument("--input", required=True, help="file to sample from")
    p.add_argument("--output", required=True, help="sampled lines, original order")
    p.add_argument("--size", required=True, type=int, help="sample size")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.set_defaults(func=_cmd_sample)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Dispatch one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse --help
        return exc.code if isinstance(exc.code, int) else 0
    except ConfigError as exc:
        return _fail(EXIT_USAGE, "usage", exc)
    except (ValidationError, ParseError) as exc:
        return _fail(EXIT_DATA, "data", exc)
    except OSError as exc:
        return _fail(EXIT_IO, "io", exc)


def _fail(code: int, kind: str, exc: Exception) -> int:
    print(f"cgeckit: {kind} error: {exc}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
