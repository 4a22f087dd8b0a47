"""Command-line interface: batch ingestion, analysis, and the HTTP server.

Every failure prints a single machine-parsable line ``error[CODE]: message``
to stderr and exits 1; usage errors exit 2; success exits 0. All outputs
are deterministic given the same inputs and seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .analysis import (
    build_groups,
    group_report_csv,
    parse_group_queries,
    scatter_csv,
)
from .corpus import (
    Corpus,
    fmt_num,
    load_corpus,
    load_folder_convention,
    load_manifest,
    save_corpus,
    validate_corpus,
)
from .coupling import CouplingThresholds, coupled_clusters
from .errors import AffectCoupleError, FormatError, ValidationError
from .estimator import EstimationConfig, estimate, leave_one_out
from .semantics import SemanticProfile, Taxonomy
from .synthetic import generate_synthetic, load_spec, load_truth, save_truth

CANDIDATE_CSV_HEADER = "rank,val,ar,likelihood,mean_semantic_distance,support"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affectcouple",
        description="semantic-affective coupling over emotionally annotated corpora",
    )
    parser.add_argument(
        "--corpus",
        default=os.environ.get("AFFECTCOUPLE_CORPUS", "corpus.txt"),
        help="corpus file path (env AFFECTCOUPLE_CORPUS)",
    )
    parser.add_argument(
        "--taxonomy",
        default=os.environ.get("AFFECTCOUPLE_TAXONOMY", "taxonomy.txt"),
        help="taxonomy file path (env AFFECTCOUPLE_TAXONOMY)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="load stimuli and write the corpus file")
    source = ingest.add_mutually_exclusive_group(required=True)
    source.add_argument("--manifest", help="manifest CSV path")
    source.add_argument("--folders", help="root directory of folder-named stimuli")
    ingest.add_argument("--mapping", help="folder mapping file (with --folders)")

    sub.add_parser("validate", help="re-check all corpus invariants")

    est = sub.add_parser("estimate", help="rank candidate emotions for a tag set")
    est.add_argument("--tags", required=True, help="semicolon-separated tags")
    _add_config_flags(est)
    est.add_argument("--csv", help="write candidates CSV here instead of stdout")

    cpl = sub.add_parser("couple", help="print coupled clusters of annotated docs")
    cpl.add_argument("--eps-sem", type=float, default=None)
    cpl.add_argument("--eps-emo", type=float, default=None)

    ana = sub.add_parser("analyze", help="group report and scatter data")
    ana.add_argument("--groups", required=True, help="spec like name:tag1;tag2,name2:tag3")
    ana.add_argument("--c", type=float, default=2.0, help="outlier dispersion factor")
    ana.add_argument("--report", help="write group report CSV here")
    ana.add_argument("--scatter", help="write scatter CSV here")

    loo = sub.add_parser("loo-eval", help="leave-one-out estimator evaluation")
    _add_config_flags(loo)
    loo.add_argument("--csv", help="write per-document records here")
    loo.add_argument("--truth", help="ground-truth membership CSV for per-group rates")

    gen = sub.add_parser("gen-synth", help="generate a synthetic corpus + ground truth")
    gen.add_argument("--spec", required=True, help="JSON group spec path")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--truth", help="ground-truth output path (default <corpus>.truth)")

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument(
        "--addr",
        default=os.environ.get("AFFECTCOUPLE_ADDR", "127.0.0.1:8000"),
        help="listen address host:port (env AFFECTCOUPLE_ADDR)",
    )
    return parser


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--eps-sem", type=float, default=None)
    sub.add_argument("--eps-emo", type=float, default=None)
    sub.add_argument("--k-fallback", type=int, default=None)
    sub.add_argument("--min-support", type=int, default=None)


def _load_taxonomy(args) -> Taxonomy:
    return Taxonomy.load(args.taxonomy)


def _load_corpus(args) -> Corpus:
    return load_corpus(args.corpus, _load_taxonomy(args))


def _estimation_config(args, corpus: Corpus) -> EstimationConfig:
    return EstimationConfig(
        eps_sem=args.eps_sem if args.eps_sem is not None else corpus.defaults.eps_sem,
        eps_emo=args.eps_emo if args.eps_emo is not None else corpus.defaults.eps_emo,
        k_fallback=args.k_fallback if args.k_fallback is not None else 5,
        min_support=args.min_support if args.min_support is not None else 1,
    )


def _cmd_ingest(args) -> int:
    taxonomy = _load_taxonomy(args)
    warnings: tuple[str, ...] = ()
    if args.manifest:
        corpus = load_manifest(args.manifest, taxonomy)
    else:
        if not args.mapping:
            raise ValidationError("--folders requires --mapping")
        result = load_folder_convention(args.folders, args.mapping, taxonomy)
        corpus = result.corpus
        warnings = result.unmapped_folders
    save_corpus(corpus, args.corpus)
    annotated = len(corpus.annotated_documents())
    print(
        f"loaded {len(corpus)} documents "
        f"({annotated} annotated, {len(corpus) - annotated} unannotated)"
    )
    for folder in warnings:
        print(f"warning: unmapped folder {folder!r} skipped", file=sys.stderr)
    print(f"wrote {args.corpus}")
    return 0


def _cmd_validate(args) -> int:
    corpus = _load_corpus(args)
    problems = validate_corpus(corpus)
    if problems:
        for problem in problems:
            print(problem, file=sys.stderr)
        raise ValidationError(f"corpus invalid ({len(problems)} problems)")
    print(f"corpus OK ({len(corpus)} documents)")
    return 0


def _candidates_csv(result) -> str:
    lines = [CANDIDATE_CSV_HEADER]
    for rank, cand in enumerate(result, start=1):
        lines.append(
            ",".join(
                [
                    str(rank),
                    fmt_num(cand.emotion.val),
                    fmt_num(cand.emotion.ar),
                    fmt_num(cand.likelihood),
                    fmt_num(cand.mean_semantic_distance),
                    ";".join(cand.support),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_estimate(args) -> int:
    corpus = _load_corpus(args)
    terms = [t for t in (p.strip() for p in args.tags.split(";")) if t]
    if not terms:
        raise ValidationError("--tags must name at least one term")
    profile = SemanticProfile.of(*terms)
    result = estimate(profile, corpus, corpus.taxonomy, _estimation_config(args, corpus))
    print(f"{'rank':<5}{'val':<9}{'ar':<9}{'likelihood':<12}{'support':<9}mean_d_sem")
    for rank, cand in enumerate(result, start=1):
        print(
            f"{rank:<5}"
            f"{fmt_num(cand.emotion.val):<9}"
            f"{fmt_num(cand.emotion.ar):<9}"
            f"{cand.likelihood:<12.4f}"
            f"{len(cand.support):<9}"
            f"{fmt_num(cand.mean_semantic_distance)}"
        )
    if result.used_fallback:
        print("note: no documents within eps_sem; nearest neighbors used")
    csv_text = _candidates_csv(result)
    if args.csv:
        Path(args.csv).write_text(csv_text, encoding="utf-8")
        print(f"wrote {args.csv}")
    else:
        print()
        print(csv_text, end="")
    return 0


def _cmd_couple(args) -> int:
    corpus = _load_corpus(args)
    thresholds = CouplingThresholds(
        eps_sem=args.eps_sem if args.eps_sem is not None else corpus.defaults.eps_sem,
        eps_emo=args.eps_emo if args.eps_emo is not None else corpus.defaults.eps_emo,
    )
    clusters = coupled_clusters(corpus.annotated_documents(), corpus.taxonomy, thresholds)
    print(
        f"clusters: {len(clusters)} "
        f"(eps_sem={fmt_num(thresholds.eps_sem)}, eps_emo={fmt_num(thresholds.eps_emo)})"
    )
    for i, cluster in enumerate(clusters, start=1):
        print(f"cluster {i}: {' '.join(cluster)}")
    return 0


def _cmd_analyze(args) -> int:
    corpus = _load_corpus(args)
    queries = parse_group_queries(args.groups)
    groups = build_groups(corpus, corpus.taxonomy, queries)
    report = group_report_csv(groups, args.c)
    scatter = scatter_csv(corpus, groups)
    if args.report:
        Path(args.report).write_text(report, encoding="utf-8")
        print(f"wrote {args.report}")
    else:
        print(report, end="")
    if args.scatter:
        Path(args.scatter).write_text(scatter, encoding="utf-8")
        print(f"wrote {args.scatter}")
    elif not args.report:
        print()
        print(scatter, end="")
    return 0


def _cmd_loo_eval(args) -> int:
    corpus = _load_corpus(args)
    groups = load_truth(args.truth) if args.truth else None
    report = leave_one_out(
        corpus, corpus.taxonomy, _estimation_config(args, corpus), groups=groups
    )
    print(report.summary())
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
        print(f"wrote {args.csv}")
    return 0


def _cmd_gen_synth(args) -> int:
    taxonomy = _load_taxonomy(args)
    spec = load_spec(args.spec)
    result = generate_synthetic(spec, taxonomy, args.seed)
    save_corpus(result.corpus, args.corpus)
    truth_path = args.truth if args.truth else f"{args.corpus}.truth"
    save_truth(result, truth_path)
    print(f"generated {len(result.corpus)} documents in {len(spec.groups)} groups")
    print(f"wrote {args.corpus}")
    print(f"wrote {truth_path}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import CorpusStore, create_app

    corpus = _load_corpus(args)
    host, sep, port_text = args.addr.rpartition(":")
    if not sep or not host:
        raise FormatError(f"--addr must be host:port, got {args.addr!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise FormatError(f"invalid port {port_text!r}") from None
    app = create_app(CorpusStore(corpus))
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "validate": _cmd_validate,
    "estimate": _cmd_estimate,
    "couple": _cmd_couple,
    "analyze": _cmd_analyze,
    "loo-eval": _cmd_loo_eval,
    "gen-synth": _cmd_gen_synth,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except AffectCoupleError as err:
        print(f"error[{err.code}]: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error[IO]: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
