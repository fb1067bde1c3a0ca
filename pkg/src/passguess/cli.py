"""Command-line interface.

Subcommands: ingest (build a store from raw text), policy (check phrases),
rank (guess-number estimates), theory (analytic estimates), report (batch
evaluation), serve (demo HTTP authentication service).

The store directory comes from --store or the PASSGUESS_STORE environment
variable. "-" means stdin wherever a file is accepted. Exit codes: 0 on
success, 2 when the store is missing, 3 on a parse failure (the error names
the offending line). All failures print one line of JSON to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus, matching, report, theory
from .policy import PolicyConfig, check_policy
from .ranker import RankerConfig, estimate

EXIT_OK = 0
EXIT_NO_STORE = 2
EXIT_PARSE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = 1, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


def _fail(message, code=1, **extra):
    raise CliError(message, code, **extra)


def _open_store(args) -> corpus.NgramStore:
    directory = args.store or os.environ.get("PASSGUESS_STORE")
    if not directory:
        _fail("no store given (use --store or PASSGUESS_STORE)",
              EXIT_NO_STORE)
    try:
        return corpus.load_store(directory)
    except FileNotFoundError as exc:
        _fail(str(exc), EXIT_NO_STORE)
    except corpus.ParseError as exc:
        _fail(str(exc), EXIT_PARSE, line=exc.line, path=exc.path)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _iter_phrases(args):
    """Yield phrases from the positional argument or --in, skipping blanks."""
    if getattr(args, "phrase", None) is not None:
        yield args.phrase
        return
    if not args.infile:
        _fail("give a phrase or --in FILE")
    fh = sys.stdin if args.infile == "-" else open(args.infile, encoding="utf-8")
    try:
        for line in fh:
            line = line.strip()
            if line:
                yield line
    finally:
        if fh is not sys.stdin:
            fh.close()


def _emit(value, args, text=None):
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(value, sort_keys=True))


def cmd_ingest(args):
    text = _read_text(args.corpus)
    try:
        counts = corpus.extract_ngrams(text, args.max_n, args.boundary)
    except corpus.EmptyCorpusError as exc:
        _fail(str(exc))
    caps = {}
    for spec_item in args.cap or ():
        n, _, cap = spec_item.partition("=")
        caps[int(n)] = int(cap)
    store = corpus.build_store(
        counts,
        proper_nouns=_read_lines(args.proper_nouns),
        slang_terms=_read_lines(args.slang),
        blacklist_k=args.blacklist_k,
        caps=caps,
    )
    corpus.save_store(store, args.out)
    stats = store.stats()
    _emit({
        "store": args.out,
        "totalTokens": stats.total_tokens,
        "distinct": {str(n): c for n, c in stats.distinct.items()},
        "windows": {str(n): c for n, c in stats.total_windows.items()},
    }, args)
    return EXIT_OK


def _read_lines(path):
    if not path:
        return ()
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def cmd_policy(args):
    store = _open_store(args)
    config = PolicyConfig(
        min_words=args.min_words,
        require_proper_noun=not args.no_proper_noun,
        blacklist_k=args.blacklist_k,
        min_word_chars=args.min_word_chars,
    )
    for phrase in _iter_phrases(args):
        rep = check_policy(phrase, store, config)
        _emit(rep.to_record(), args,
              text="%s %s" % ("ok" if rep.acceptable else "rejected",
                              " ".join(f.code for f in rep.violations)))
    return EXIT_OK


def cmd_rank(args):
    store = _open_store(args)
    config = RankerConfig(
        largest_ngram=args.largest_ngram,
        high_combiner=args.high_combiner,
    )
    for phrase in _iter_phrases(args):
        try:
            est = estimate(phrase, store, config, args.vocab)
        except matching.EmptyPhraseError:
            _emit({"phrase": phrase, "error": "empty phrase"}, args)
            continue
        record = est.to_record()
        _emit(record, args,
              text="low=%s high=%s unigram=%s" % (
                  record["low"], record["high"], record["unigram"]))
    return EXIT_OK


def cmd_theory(args):
    if args.theory_cmd == "bits":
        if args.alphabet is not None:
            if args.length is None:
                _fail("--alphabet needs --length")
            bits = theory.exhaustive_bits(args.alphabet, args.length)
        elif args.base is not None:
            if args.multiplier is None:
                _fail("--base needs --multiplier")
            bits = theory.multiplier_bits(args.base, args.multiplier)
        else:
            _fail("give --alphabet/--length or --base/--multiplier")
        _emit({"bits": bits}, args, text="%.3f" % bits)
        return EXIT_OK

    if args.theory_cmd == "guesswork":
        dist = _load_distribution(args.dist)
        if args.curve:
            stride = args.stride or 1
            print("index,cumulative_mass,log2_index")
            for p in theory.guesswork_curve(dist, stride):
                print("%d,%.6f,%.6f" % (p.index, p.cumulative_mass,
                                        p.log2_index))
        else:
            try:
                w = theory.marginal_guesswork(dist, args.alpha)
            except theory.BadAlphaError as exc:
                _fail(str(exc))
            if w is None:
                _emit({"alpha": args.alpha, "guesses": None}, args,
                      text="unreachable")
            else:
                _emit({"alpha": args.alpha, "guesses": w}, args, text=str(w))
        return EXIT_OK

    if args.theory_cmd == "joins":
        store = _open_store(args)
        if args.composition:
            try:
                comps = [tuple(int(p) for p in args.composition.split("+"))]
            except ValueError:
                _fail("composition must look like 5+3")
        elif args.words:
            comps = list(theory.compositions(args.words, args.min_part))
        else:
            _fail("give --composition or --words")
        for parts in comps:
            try:
                count, bits = theory.join_count(store, parts)
            except corpus.EmptyTableError as exc:
                _fail(str(exc))
            label = "+".join(str(p) for p in parts)
            _emit({"composition": list(parts), "count": str(count),
                   "bits": bits}, args,
                  text="%s %s %s" % (label, count,
                                     "-" if bits is None else "%.3f" % bits))
        return EXIT_OK

    if args.theory_cmd == "mass":
        store = _open_store(args)
        try:
            plain, after = theory.blacklist_mass(
                store, args.n, args.top_k, args.top_m, args.renormalize)
        except corpus.EmptyTableError as exc:
            _fail(str(exc))
        _emit({"n": args.n, "topK": args.top_k, "topM": args.top_m,
               "mass": plain, "massAfterBlacklist": after}, args,
              text="%.6f %.6f" % (plain, after))
        return EXIT_OK

    _fail("unknown theory subcommand")


def _load_distribution(path):
    try:
        if path == "-":
            values = [float(line) for line in sys.stdin.read().split()]
            return theory.Distribution.from_values(values)
        return theory.Distribution.from_file(path)
    except ValueError as exc:
        _fail(str(exc), EXIT_PARSE)


def cmd_report(args):
    if args.report_cmd == "phrasedict":
        phrases = list(_iter_phrases(args))
        known = _read_lines(args.known)
        hits = report.phrase_dictionary_check(phrases, known)
        _emit({"checked": len(phrases), "hits": hits}, args,
              text="%d/%d" % (len(hits), len(phrases)))
        return EXIT_OK

    store = _open_store(args)
    phrases = list(_iter_phrases(args))

    if args.report_cmd == "curve":
        rows, _, estimates = report.coverage_table(phrases, store)
        steps = report.guessing_curve(estimates, args.estimator)
        sys.stdout.write(report.curve_csv(steps))
        return EXIT_OK

    if args.report_cmd == "coverage":
        rows, aggregate, _ = report.coverage_table(phrases, store)
        if args.summary:
            _emit(aggregate, args)
        else:
            sys.stdout.write(report.coverage_csv(rows))
        return EXIT_OK

    if args.report_cmd == "tolerance":
        config = matching.ToleranceConfig(args.tolerance)
        _, _, estimates = report.coverage_table(phrases, store)
        for row in report.tolerance_audit(estimates, store, config):
            print(json.dumps(row, sort_keys=True))
        return EXIT_OK

    _fail("unknown report subcommand")


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    store = _open_store(args)
    app = create_app(
        store,
        data_dir=args.data_dir,
        tolerance=matching.ToleranceConfig(args.tolerance),
        enable_cue=args.enable_cue,
        ui_dir=args.ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _add_store_arg(p):
    p.add_argument("--store", help="store directory (or PASSGUESS_STORE)")


def _add_phrase_args(p):
    p.add_argument("phrase", nargs="?", help="a single phrase")
    p.add_argument("--in", dest="infile",
                   help="file with one phrase per line, - for stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="passguess",
        description="Passphrase policy and guessability toolkit")
    parser.add_argument("--format", choices=["json", "text", "csv"],
                        default="json")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("ingest", help="build a store from raw text")
    p.add_argument("--corpus", required=True, help="text file, - for stdin")
    p.add_argument("--out", required=True, help="store directory to write")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--boundary", help="split raw text on this marker first")
    p.add_argument("--proper-nouns", help="proper-noun lexicon, one per line")
    p.add_argument("--slang", help="slang lexicon, one per line")
    p.add_argument("--blacklist-k", type=int,
                   default=corpus.DEFAULT_BLACKLIST_K)
    p.add_argument("--cap", action="append", metavar="N=COUNT",
                   help="cap table N at COUNT entries")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("policy", help="check phrases against the policy")
    _add_phrase_args(p)
    _add_store_arg(p)
    p.add_argument("--min-words", type=int, default=7)
    p.add_argument("--no-proper-noun", action="store_true",
                   help="drop the proper-noun requirement")
    p.add_argument("--blacklist-k", type=int, default=None)
    p.add_argument("--min-word-chars", type=int, default=1)
    p.set_defaults(func=cmd_policy)

    p = sub.add_parser("rank", help="guess-number estimates")
    _add_phrase_args(p)
    _add_store_arg(p)
    p.add_argument("--largest-ngram", type=int, default=5)
    p.add_argument("--high-combiner", choices=["sum", "product"],
                   default="sum")
    p.add_argument("--vocab", type=int,
                   help="override the vocabulary size used by the "
                        "single-word estimate")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("theory", help="analytic estimates")
    tsub = p.add_subparsers(dest="theory_cmd", required=True)

    t = tsub.add_parser("guesswork")
    t.add_argument("--dist", required=True,
                   help="file with one weight per line, - for stdin")
    t.add_argument("--alpha", type=float, default=0.5)
    t.add_argument("--curve", action="store_true",
                   help="emit the whole curve as CSV")
    t.add_argument("--stride", type=int)
    t.set_defaults(func=cmd_theory)

    t = tsub.add_parser("joins")
    _add_store_arg(t)
    t.add_argument("--composition", help="e.g. 5+3")
    t.add_argument("--words", type=int,
                   help="enumerate all compositions for this many words")
    t.add_argument("--min-part", type=int, default=2)
    t.set_defaults(func=cmd_theory)

    t = tsub.add_parser("bits")
    t.add_argument("--alphabet", type=float)
    t.add_argument("--length", type=float)
    t.add_argument("--base", type=int)
    t.add_argument("--multiplier", type=int)
    t.set_defaults(func=cmd_theory)

    t = tsub.add_parser("mass")
    _add_store_arg(t)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--top-k", type=int, required=True)
    t.add_argument("--top-m", type=int, required=True)
    t.add_argument("--renormalize", action="store_true")
    t.set_defaults(func=cmd_theory)

    p = sub.add_parser("report", help="batch evaluation over phrase files")
    rsub = p.add_subparsers(dest="report_cmd", required=True)

    r = rsub.add_parser("curve")
    _add_phrase_args(r)
    _add_store_arg(r)
    r.add_argument("--estimator", choices=["low", "high", "unigram"],
                   default="low")
    r.set_defaults(func=cmd_report)

    r = rsub.add_parser("coverage")
    _add_phrase_args(r)
    _add_store_arg(r)
    r.add_argument("--summary", action="store_true",
                   help="print corpus-level totals instead of rows")
    r.set_defaults(func=cmd_report)

    r = rsub.add_parser("tolerance")
    _add_phrase_args(r)
    _add_store_arg(r)
    r.add_argument("--tolerance", type=float, default=0.125)
    r.set_defaults(func=cmd_report)

    r = rsub.add_parser("phrasedict")
    _add_phrase_args(r)
    r.add_argument("--known", required=True,
                   help="known-phrase list, one per line")
    r.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the demo authentication service")
    _add_store_arg(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", required=True,
                   help="directory for the account log")
    p.add_argument("--tolerance", type=float, default=0.125)
    p.add_argument("--enable-cue", action="store_true",
                   help="expose stored cues over the API")
    p.add_argument("--ui-dir", help="serve this directory at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        payload = {"error": str(exc)}
        payload.update(exc.extra)
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return exc.code
    except corpus.ParseError as exc:
        print(json.dumps({"error": str(exc), "line": exc.line},
                         sort_keys=True), file=sys.stderr)
        return EXIT_PARSE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
