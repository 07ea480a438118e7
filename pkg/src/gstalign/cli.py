"""Command-line surface: align, gst, proto, bench, kernel-bench.

Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys

from . import __version__, kernels
from .baseline import Scoring, clustalw_lite
from .bench import BenchPlan, compare_backends, fits, medians, run_bench, speedups
from .corpus import Corpus, CorpusError, generate_synthetic, load_fasta, load_lines, take_prefix
from .gst import build_gst, count_combinations, extract_msws
from .metrics import AlignmentReport, overlap_chars, sp_edit_distance
from .msalign import StrategyConfig, align_msws, regex_skeleton, render, skeleton_matches, validate_chain

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE if message else EXIT_USAGE)


def _add_input_args(p, with_gen=False):
    p.add_argument("input", nargs="?" if with_gen else None,
                   help="input file, one message per line")
    p.add_argument("--mode", choices=("raw", "hex", "fasta"), default="raw",
                   help="input encoding (default raw)")
    p.add_argument("--n", type=int, default=None,
                   help="use only the first N messages")
    if with_gen:
        p.add_argument("--gen", choices=("ldap_like", "fixed_width"),
                       help="generate a synthetic corpus instead of reading a file")
        p.add_argument("--gen-n", type=int, default=200,
                       help="synthetic corpus size (default 200)")
    p.add_argument("--seed", type=int, default=0, help="generator seed")


def _add_strategy_args(p):
    p.add_argument("--strategy", choices=("biggest_left_most", "min_variance"),
                   default="biggest_left_most")
    p.add_argument("--n-largest", type=int, default=9,
                   help="candidate pool size for min_variance (default 9)")
    p.add_argument("--min-anchor-len", type=int, default=1,
                   help="ignore common sub-words shorter than this (default 1)")
    p.add_argument("--combination-cap", type=int, default=10_000,
                   help="per-sub-word combination limit for min_variance")


def _load_corpus_full(args, with_gen=False) -> Corpus:
    if with_gen and getattr(args, "gen", None):
        return generate_synthetic(args.gen, args.gen_n, args.seed)
    if args.input is None:
        raise CorpusError("no input file and no --gen template given")
    if args.mode == "fasta":
        return load_fasta(args.input)
    return load_lines(args.input, args.mode)


def _load_corpus(args, with_gen=False) -> Corpus:
    corpus = _load_corpus_full(args, with_gen)
    if args.n is not None:
        corpus = take_prefix(corpus, args.n)
    return corpus


def _strategy(args) -> StrategyConfig:
    return StrategyConfig(kind=args.strategy, n_largest=args.n_largest,
                          min_anchor_len=args.min_anchor_len,
                          combination_cap=args.combination_cap)


def _gap(args) -> bytes:
    g = args.gap_char.encode("latin-1")
    if len(g) != 1:
        raise CorpusError("--gap-char must be a single character")
    return g


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _align_and_report(corpus, cfg, gap):
    import time

    t0 = time.perf_counter_ns()
    msws = extract_msws(build_gst(corpus))
    chain = align_msws(corpus, msws, cfg)
    elapsed = time.perf_counter_ns() - t0
    validate_chain(corpus, chain)
    rows = render(corpus, chain, gap)
    report = AlignmentReport(
        sp_edit_distance=sp_edit_distance(rows, gap),
        overlap_chars=overlap_chars(chain),
        anchor_count=len(chain),
        msw_count=len(msws),
        elapsed_ns=elapsed,
        rows=len(rows),
        columns=len(rows[0]) if rows else 0,
    )
    return chain, rows, report


def cmd_align(args) -> int:
    corpus = _load_corpus(args)
    corpus.require(2)
    cfg = _strategy(args)
    gap = _gap(args)
    chain, rows, report = _align_and_report(corpus, cfg, gap)
    if args.format == "json":
        _emit(args, json.dumps({
            "strategy": cfg.kind,
            "n_largest": cfg.n_largest,
            "min_anchor_len": cfg.min_anchor_len,
            "anchors": chain.to_json(),
            "report": json.loads(report.to_json()),
        }, indent=2))
    else:
        lines = [r.decode("latin-1") for r in rows]
        if args.show_spaces:
            # fixed-width protocols: make data spaces distinguishable from gaps
            lines = [line.replace(" ", "␣") for line in lines]
        lines.append("# " + report.to_json())
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_gst(args) -> int:
    corpus = _load_corpus(args)
    corpus.require(2)
    tree = build_gst(corpus)
    if args.format == "json":
        _emit(args, json.dumps(tree.dump_json(), indent=2))
    else:
        _emit(args, tree.dump_text())
    return EXIT_OK


def cmd_proto(args) -> int:
    # the pattern is derived from the --n prefix but verified against the
    # whole input, so --verify can flag messages the prototype misses
    full = _load_corpus_full(args)
    corpus = take_prefix(full, args.n) if args.n is not None else full
    corpus.require(2)
    cfg = _strategy(args)
    chain, _rows, _report = _align_and_report(corpus, cfg, _gap(args))
    pattern = regex_skeleton(chain, cfg)
    _emit(args, pattern.decode("latin-1"))
    if args.verify:
        bad = skeleton_matches(pattern, full)
        if bad:
            lines = ", ".join(str(b + 1) for b in bad)
            print(f"verification failed: lines {lines} do not match", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def cmd_bench(args) -> int:
    corpus = _load_corpus(args, with_gen=True)
    counts = _parse_counts(args.counts, corpus.n)
    plan = BenchPlan(counts=counts, repeats=args.repeats,
                     algorithms=tuple(args.algorithms.split(",")), seed=args.seed)
    cells = run_bench(corpus, plan, csv_path=args.csv, cfg=_strategy(args),
                      gap_symbol=_gap(args))
    for alg in plan.algorithms:
        print(f"{alg}:")
        for n, t in medians(cells, alg):
            print(f"  n={n:<6d} median={t / 1e6:10.3f} ms")
        fit = fits(cells, alg)
        if fit:
            lin, quad = fit
            print(f"  fit linear    R^2={lin.r_squared:.4f}")
            print(f"  fit quadratic R^2={quad.r_squared:.4f} "
                  f"(n^2 coefficient {quad.coefficients[0] / 1e6:.4g} ms)")
    if "ms" in plan.algorithms and "clustalw_lite" in plan.algorithms:
        print("speed-up (clustalw_lite / ms):")
        for n, ratio in speedups(cells):
            print(f"  n={n:<6d} {ratio:8.2f}x")
    return EXIT_OK


def cmd_kernel_bench(args) -> int:
    timings = compare_backends(size=args.size, seed=args.seed, repeats=args.repeats)
    print(f"active backend: {kernels.active_backend()}")
    print(f"{'kernel':<12} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for t in timings:
        compiled = f"{t.compiled_ns / 1e6:.3f} ms" if t.compiled_ns else "n/a"
        ratio = f"{t.speedup:.1f}x" if t.speedup else "-"
        print(f"{t.kernel:<12} {t.pure_ns / 1e6:9.3f} ms {compiled:>12} {ratio:>9}")
    return EXIT_OK


def _parse_counts(spec: str, corpus_n: int) -> tuple[int, ...]:
    counts = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if item == "all":
            counts.append(corpus_n)
        else:
            counts.append(int(item))
    return tuple(sorted(set(c for c in counts if c <= corpus_n)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gstalign",
                     description="Anchor-based multi-sequence alignment of protocol messages")
    parser.add_argument("--version", action="version", version=f"gstalign {__version__}")
    parser.add_argument("--backend", choices=("auto", "compiled", "pure"), default="auto",
                        help="kernel backend (default: compiled when built)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", help="align messages and print rows or the anchor chain")
    _add_input_args(p)
    _add_strategy_args(p)
    p.add_argument("--gap-char", default="*", help="gap symbol for text output (default '*')")
    p.add_argument("--show-spaces", action="store_true",
                   help="render data spaces visibly (for fixed-width records)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write output to a file instead of stdout")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("gst", help="dump the generalized suffix tree summary")
    _add_input_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gst)

    p = sub.add_parser("proto", help="emit the regex-skeleton prototype")
    _add_input_args(p)
    _add_strategy_args(p)
    p.add_argument("--gap-char", default="*")
    p.add_argument("--verify", action="store_true",
                   help="fail unless the pattern matches every input message")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_proto)

    p = sub.add_parser("bench", help="run the scaling benchmark")
    _add_input_args(p, with_gen=True)
    _add_strategy_args(p)
    p.add_argument("--counts", default="2,5,10,15,20,25,50,100,200,all",
                   help="comma-separated sequence counts ('all' = corpus size)")
    p.add_argument("--repeats", type=int, default=25)
    p.add_argument("--algorithms", default="ms,clustalw_lite")
    p.add_argument("--csv", default=None, help="append per-run rows to this CSV file")
    p.add_argument("--gap-char", default="*")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("kernel-bench", help="compare pure and compiled kernel backends")
    p.add_argument("--size", type=int, default=2000, help="approximate corpus bytes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_kernel_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        kernels.set_backend(args.backend)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
