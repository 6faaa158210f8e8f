"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from honeyenc.config import CATEGORY_MODES, PipelineConfig, load_config
from honeyenc.embeddings import MECHANISM_MODES, MechanismConfig
from honeyenc.errors import HoneyError

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n\n{self.format_help()}")


# (flag, config field, argparse kwargs)
_CONFIG_FLAGS = [
    ("--corpus", "corpus_path", dict(metavar="PATH", help="JSON-lines corpus (default: shipped toy corpus)")),
    ("--stopwords", "stopword_path", dict(metavar="PATH", help="stopword file, one token per line")),
    ("--synsets", "synset_path", dict(metavar="PATH", help="synset TSV graph")),
    ("--vectors", "vector_path", dict(metavar="PATH", help="word-vector text file")),
    ("--category-mode", "category_mode", dict(choices=CATEGORY_MODES,
                                              help="classify the message, fix one random category, "
                                                   "or draw a random category per decoy")),
    ("--k", "keywords_k", dict(type=int, help="number of TF-IDF keywords (default 8)")),
    ("--p-halt", "p_halt", dict(type=float, help="probability of halting at each hypernym level (default 0.5)")),
    ("--per-keyword", "per_keyword", dict(type=int, help="lemmas sampled per keyword (default 2)")),
    ("--epsilon", "epsilon", dict(type=float, help="privacy parameter of the word mechanism (default 20)")),
    ("--mechanism", "mechanism", dict(choices=MECHANISM_MODES, help="word substitution mechanism")),
    ("--generator", "generator", dict(choices=("ngram", "external"), help="decoy text generator")),
    ("--external-command", "external_command", dict(metavar="CMD", help="command for generator=external")),
    ("--order", "ngram_order", dict(type=int, help="n-gram order, 2 to 4 (default 2)")),
    ("--max-tokens", "max_tokens", dict(type=int, help="decoy length cap (default 1.5x the message)")),
    ("--keyword-boost", "keyword_boost", dict(type=float, help="weight multiplier for keyword successors")),
    ("--table-size", "table_size", dict(type=int, help="decoy table size T, a power of two (default 256)")),
    ("--kdf-iterations", "kdf_iterations", dict(type=int, help="password strengthening iterations")),
    ("--alpha", "smoothing_alpha", dict(type=float, help="naive Bayes Laplace smoothing (default 1)")),
    ("--seed", "seed", dict(type=int, help="master random seed (default 0)")),
]


def _common_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("pipeline configuration")
    g.add_argument("--config", metavar="PATH", help="key = value configuration file")
    for flag, dest, kwargs in _CONFIG_FLAGS:
        g.add_argument(flag, dest=dest, default=None, **kwargs)
    g.add_argument("--no-stem", dest="stem", action="store_const", const=False, default=None,
                   help="disable suffix stripping")
    g.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return common


def _add_text_input(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", help="message text")
    src.add_argument("--in", dest="infile", metavar="PATH", help="read the message from a file")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = _Parser(prog="honeyenc", description="Honey encryption with context-preserving decoys.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="naive Bayes category of a message")
    _add_text_input(p)
    p.add_argument("--scores", action="store_true", help="also print log posterior per category")

    p = sub.add_parser("keywords", parents=[common], help="TF-IDF keywords of a message")
    _add_text_input(p)
    p.add_argument("--category", help="score against this category instead of the classified one")

    p = sub.add_parser("perturb", parents=[common], help="swap words through the synset graph")
    p.add_argument("words", nargs="+", help="keywords to perturb")

    p = sub.add_parser("gen-decoy", parents=[common], help="generate decoy messages")
    _add_text_input(p)
    p.add_argument("--count", type=int, default=1, help="number of decoys (default 1)")
    p.add_argument("--trace", action="store_true", help="print intermediate keyword sets as JSON")

    p = sub.add_parser("encrypt", parents=[common], help="honey-encrypt a message file")
    p.add_argument("--password", help="password (or set HONEYENC_PASSWORD)")
    p.add_argument("--in", dest="infile", required=True, metavar="PATH", help="plaintext file")
    p.add_argument("--out", required=True, metavar="PATH", help="package file to write")

    p = sub.add_parser("decrypt", parents=[common], help="decrypt a package (wrong passwords yield decoys)")
    p.add_argument("--password", help="password (or set HONEYENC_PASSWORD)")
    p.add_argument("--in", dest="infile", required=True, metavar="PATH", help="package file")
    p.add_argument("--out", metavar="PATH", help="write the plaintext here instead of stdout")

    p = sub.add_parser("verify-privacy", parents=[common],
                       help="exact check of the bag-of-words privacy bound")
    p.add_argument("--message", required=True, help="space-separated words of M")
    p.add_argument("--other", required=True, help="space-separated words of M' (same length)")
    p.add_argument("--vocab", help="comma-separated vocabulary subset to enumerate over")
    p.add_argument("--budget", type=int, default=10**6, help="maximum |V|^N outputs (default 1e6)")

    p = sub.add_parser("dte-advantage", parents=[common], help="estimate a distinguisher's DTE advantage")
    p.add_argument("--distinguisher", choices=("coin", "constant", "seed0"), default="coin")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--rigged", action="store_true", help="use a builder that always puts M at seed 0")
    p.add_argument("--messages", metavar="PATH",
                   help="plaintexts, one per line (default: corpus documents)")

    p = sub.add_parser("experiment", parents=[common], help="epsilon sweep of the cosine distinguishers")
    p.add_argument("--author-samples", metavar="PATH",
                   help="known author messages, one per line (default: documents of the message's category)")
    _add_text_input_optional(p)
    p.add_argument("--epsilons", default="10,15,20,25,30", help="comma-separated epsilon values")
    p.add_argument("--decoy-counts", default="100,500", help="comma-separated decoy counts")
    p.add_argument("--coeff", type=float, default=0.03, help="threshold = coeff * epsilon")
    p.add_argument("--csv", metavar="PREFIX", help="write PREFIX_author.csv and PREFIX_context.csv")

    p = sub.add_parser("emd", parents=[common], help="Earth Mover's distance between two bags")
    p.add_argument("--bags", required=True, metavar="PATH",
                   help='JSON {"x": ..., "y": ..., "distances": {...}}; bags are item lists or '
                        '{"items": [...], "weights": [...]}')
    p.add_argument("--plan", action="store_true", help="also print the transport plan")
    return parser


def _add_text_input_optional(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--text", help="plaintext whose decoys are tested (default: first author sample)")
    src.add_argument("--in", dest="infile", metavar="PATH", help="read that plaintext from a file")


def _read_text(path: str) -> str:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise HoneyError(f"cannot read {path}: {exc}") from exc
    return text[:-1] if text.endswith("\n") else text


def _message(args) -> str:
    text = args.text if args.text is not None else _read_text(args.infile)
    if not text:
        raise UsageError("message is empty")
    return text


def _password(args) -> str:
    pw = args.password if args.password is not None else os.environ.get("HONEYENC_PASSWORD")
    if not pw:
        raise UsageError("a password is required (--password or HONEYENC_PASSWORD)")
    return pw


def _config(args) -> PipelineConfig:
    overrides = {dest: getattr(args, dest) for _, dest, _ in _CONFIG_FLAGS}
    overrides["stem"] = args.stem
    return load_config(args.config, **overrides)


def _pipeline(cfg):
    from honeyenc.pipeline import DecoyPipeline

    return DecoyPipeline.from_config(cfg)


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from None


def cmd_classify(args, cfg, out):
    from honeyenc.classifier import classify, log_posterior

    pipe = _pipeline(cfg)
    bag = pipe.corpus.message_bag(_message(args))
    print(classify(pipe.model, bag), file=out)
    if args.scores:
        for c, s in sorted(log_posterior(pipe.model, bag).items()):
            print(f"{c}\t{s:.6f}", file=out)


def cmd_keywords(args, cfg, out):
    from honeyenc.keywords import extract_keywords

    pipe = _pipeline(cfg)
    text = _message(args)
    bag = pipe.corpus.message_bag(text)
    category = args.category or pipe.classify_text(text)
    kw = extract_keywords(bag, pipe.corpus.bags_in(category), cfg.keywords_k, category)
    print(f"# category: {category}", file=out)
    for w, s in kw.words:
        print(f"{w}\t{s:.6f}", file=out)


def cmd_perturb(args, cfg, out):
    from honeyenc.synsets import parse_synset_graph, default_synset_path, perturb_keywords

    graph = parse_synset_graph(cfg.synset_path or default_synset_path())
    rng = np.random.default_rng(cfg.seed)
    words = [w.casefold() for w in args.words]
    print(" ".join(perturb_keywords(graph, words, cfg.p_halt, cfg.per_keyword, rng)), file=out)


def cmd_gen_decoy(args, cfg, out):
    pipe = _pipeline(cfg)
    rng = np.random.default_rng(cfg.seed)
    ctx = pipe.prepare(_message(args), rng)
    for _ in range(args.count):
        tr = pipe.trace_decoy(ctx, rng)
        if args.trace:
            print(json.dumps(tr.__dict__), file=out)
        else:
            print(tr.text, file=out)


def cmd_encrypt(args, cfg, out):
    from honeyenc.he import he_encrypt

    password = _password(args)
    message = _read_text(args.infile)
    if not message:
        raise UsageError("plaintext file is empty")
    pipe = _pipeline(cfg)
    rng = np.random.default_rng(cfg.seed)
    pkg = he_encrypt(password, message, pipe, cfg.table_size, rng, cfg.kdf_iterations)
    pkg.write(args.out)
    logging.getLogger("honeyenc").info("wrote %s (T=%d)", args.out, pkg.size)


def cmd_decrypt(args, cfg, out):
    from honeyenc.he import CiphertextPackage, he_decrypt

    password = _password(args)
    text = he_decrypt(password, CiphertextPackage.read(args.infile))
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text, file=out)


def cmd_verify_privacy(args, cfg, out):
    from honeyenc.embeddings import default_vectors_path, load_vectors
    from honeyenc.emd import verify_privacy_bound

    store = load_vectors(cfg.vector_path or default_vectors_path())
    if args.vocab:
        store = store.subset([w.strip() for w in args.vocab.split(",") if w.strip()])
    report = verify_privacy_bound(store, MechanismConfig(cfg.epsilon, "discrete_exponential"),
                                  args.message.split(), args.other.split(), args.budget)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True), file=out)


def cmd_dte_advantage(args, cfg, out):
    from honeyenc.dte import DecoyTable, Seed, estimate_dte_advantage, message_builder

    pipe = _pipeline(cfg)
    if args.messages:
        messages = [l for l in _read_text(args.messages).splitlines() if l.strip()]
    else:
        messages = [" ".join(d.tokens) for d in pipe.corpus.documents]
    build = message_builder(messages, pipe, cfg.table_size)
    if args.rigged:
        honest = build

        def build(rng):
            table, seed = honest(rng)
            entries = list(table.entries)
            entries[0], entries[seed.value] = entries[seed.value], entries[0]
            return DecoyTable(tuple(entries), 0), Seed(0, seed.bit_width)

    coin_rng = np.random.default_rng([cfg.seed, 1])
    distinguishers = {
        "coin": lambda m, s: int(coin_rng.integers(2)),
        "constant": lambda m, s: 1,
        "seed0": lambda m, s: int(s == 0),
    }
    adv = estimate_dte_advantage(build, distinguishers[args.distinguisher], args.trials,
                                 np.random.default_rng(cfg.seed))
    print(f"{adv:.6f}", file=out)


def cmd_experiment(args, cfg, out):
    from honeyenc.adversary import ExperimentConfig, run_distinguisher_experiment

    pipe = _pipeline(cfg)
    message = None
    if args.text is not None or args.infile is not None:
        message = _message(args)
    if args.author_samples:
        samples = [l for l in _read_text(args.author_samples).splitlines() if l.strip()]
    else:
        if message is None:
            raise UsageError("give --author-samples, a message, or both")
        category = pipe.classify_text(message)
        samples = [" ".join(d.tokens) for d in pipe.corpus.documents_in(category)]
    counts = [int(x) for x in _floats(args.decoy_counts)]
    exp_cfg = ExperimentConfig(tuple(_floats(args.epsilons)), tuple(counts), args.coeff, cfg.seed)
    result = run_distinguisher_experiment(exp_cfg, pipe, pipe.store, samples, message=message)
    print(result.to_text(), file=out)
    if args.csv:
        for table in ("author", "context"):
            Path(f"{args.csv}_{table}.csv").write_text(result.to_csv(table), encoding="utf-8")


def _bag_from_json(obj):
    from honeyenc.emd import WeightedBag

    if isinstance(obj, list):
        return WeightedBag.uniform(obj)
    if isinstance(obj, dict) and "items" in obj:
        weights = obj.get("weights")
        if weights is None:
            return WeightedBag.uniform(obj["items"])
        return WeightedBag(tuple(obj["items"]), tuple(float(w) for w in weights))
    raise HoneyError("a bag must be a list of items or an object with 'items'")


def cmd_emd(args, cfg, out):
    from honeyenc.emd import emd, store_metric

    try:
        spec = json.loads(Path(args.bags).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise HoneyError(f"cannot read bags file {args.bags}: {exc}") from exc
    x, y = _bag_from_json(spec["x"]), _bag_from_json(spec["y"])
    table = spec.get("distances")
    if table is not None:
        def metric(a, b):
            if a == b:
                return 0.0
            if a in table and b in table[a]:
                return float(table[a][b])
            if b in table and a in table[b]:
                return float(table[b][a])
            raise HoneyError(f"no distance given for ({a!r}, {b!r})")
    else:
        from honeyenc.embeddings import default_vectors_path, load_vectors

        metric = store_metric(load_vectors(cfg.vector_path or default_vectors_path()))
    plan = emd(x, y, metric)
    print(repr(float(plan.cost)), file=out)
    if args.plan:
        print(json.dumps(plan.flow.tolist()), file=out)


COMMANDS = {
    "classify": cmd_classify,
    "keywords": cmd_keywords,
    "perturb": cmd_perturb,
    "gen-decoy": cmd_gen_decoy,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "verify-privacy": cmd_verify_privacy,
    "dte-advantage": cmd_dte_advantage,
    "experiment": cmd_experiment,
    "emd": cmd_emd,
}


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=err)
        cfg = _config(args)
        COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        print(str(exc).rstrip(), file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (HoneyError, KeyError, OSError) as exc:
        print(f"honeyenc: error: {exc}", file=err)
        return EXIT_RUNTIME
    return EXIT_OK


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
