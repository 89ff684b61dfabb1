"""Command-line entry point: ``epswsd {disambiguate,evaluate,sweep,proximity}``.

Exit codes: 0 success, 1 unresolvable target (out of vocabulary),
2 malformed input or usage error. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algorithms import ALGORITHMS, EPSILON_FREE, EpsilonSchedule, run_selector
from .embeddings import SENTENCE, EmbeddingFormatError, Origin, load_word2vec_text
from .evaluation import (
    SelectorOptions,
    best_epsilon_summary,
    epsilon_curve,
    evaluate_fixed_epsilon,
    export_csv,
    export_per_sentence,
    prepare,
    sweep,
)
from .lexicon import (
    LexiconError,
    TaggedSentence,
    UnresolvableTarget,
    inventory_index,
    load_dataset,
    load_inventory,
    resolve_task,
)
from .proximity import Comparator, VectorSet, average_similarity, proximity

EXIT_OK, EXIT_UNRESOLVABLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _options(args) -> SelectorOptions:
    return SelectorOptions(Comparator(args.comparator), args.include_target_mean,
                           args.exclude_target_k)


def _schedule(spec: str) -> EpsilonSchedule:
    try:
        return EpsilonSchedule.parse(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _algorithms(spec: str) -> list[str]:
    names = [a.strip() for a in spec.replace("+", ",").split(",") if a.strip()]
    for a in names:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    if not names:
        raise UsageError("no algorithm given")
    return names


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def cmd_disambiguate(args) -> int:
    _require(args, "model", "inventory")
    algorithm = _algorithms(args.algorithm)
    if len(algorithm) != 1:
        raise UsageError("disambiguate takes exactly one algorithm")
    algorithm = algorithm[0]
    schedule = _schedule(args.epsilon)
    model = load_word2vec_text(args.model)
    index = inventory_index(load_inventory(args.inventory))
    lemmas = tuple(args.lemmas)
    if not 0 <= args.target_index < len(lemmas):
        raise UsageError(f"target index {args.target_index} out of range")
    target = lemmas[args.target_index]
    inv = index.get(target)
    if inv is None:
        raise UsageError(f"no inventory for target {target!r}")
    freq = None
    if algorithm == "mfs":
        if args.dataset is None:
            raise UsageError("the mfs algorithm needs --dataset for sense frequencies")
        freq = prepare(load_dataset(args.dataset, index), index, model).frequencies.get(target, {})
    sentence = TaggedSentence(lemmas, args.target_index, inv.sense_ids[0])
    task = resolve_task(sentence, inv, model)
    opts = _options(args)
    d = run_selector(algorithm, task, schedule, comparator=opts.comparator,
                     include_target_in_sentence_mean=opts.include_target_in_sentence_mean,
                     exclude_target_k=opts.exclude_target_k, frequencies=freq)
    out = {"target": target, "algorithm": algorithm}
    out.update(d.to_dict())
    out["gloss"] = inv.sense(d.chosen_sense_id).gloss
    out["dropped_lemmas"] = list(task.dropped_lemmas)
    print(json.dumps(out, ensure_ascii=False, indent=2))
    return EXIT_OK


def _load_corpus(args):
    _require(args, "model", "inventory", "dataset", "out")
    model = load_word2vec_text(args.model)
    inventories = load_inventory(args.inventory)
    dataset = load_dataset(args.dataset, inventories)
    return model, inventories, dataset


def _write(report, args):
    export_csv(report, args.out)
    if args.per_sentence:
        out = Path(args.out)
        export_per_sentence(report, out.with_name(out.stem + ".per_sentence.jsonl"))


def _print_summary(report, algorithms):
    best = best_epsilon_summary(report)
    for a in algorithms:
        curve = epsilon_curve(report, a)
        if not curve:
            continue
        if a in EPSILON_FREE:
            _, c, n = curve[0]
            print(f"{a}\t-\t{c}/{n}")
            continue
        eps, c, n = max(curve, key=lambda t: t[1])
        anyc = sum(v for (t, alg), v in best.items() if alg == a)
        print(f"{a}\tbest_epsilon={eps!r}\t{c}/{n}\tany_epsilon={anyc}/{n}")


def cmd_evaluate(args) -> int:
    model, inventories, dataset = _load_corpus(args)
    algorithms = _algorithms(args.algorithm)
    sched = _schedule(args.epsilon)
    if len(sched) != 1:
        raise UsageError("evaluate takes a single --epsilon value; use sweep for a grid")
    eps = sched.values[0]
    report = None
    for a in algorithms:
        part = evaluate_fixed_epsilon(dataset, inventories, model, a, eps, options=_options(args))
        report = part if report is None else report + part
    report = report.canonical()
    _write(report, args)
    _print_summary(report, algorithms)
    return EXIT_OK


def cmd_sweep(args) -> int:
    model, inventories, dataset = _load_corpus(args)
    algorithms = _algorithms(args.algorithm)
    report = sweep(dataset, inventories, model, algorithms, _schedule(args.epsilon),
                   options=_options(args), mode=args.mode, jobs=args.jobs)
    _write(report, args)
    _print_summary(report, algorithms)
    return EXIT_OK


def _vector_set(spec: str, origin: Origin, model) -> VectorSet:
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            data = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad inline set: {exc}") from None
        vs = VectorSet.from_mapping(data, origin)
    else:
        if model is None:
            raise UsageError("lemma lists need --model")
        vecs = []
        for lemma in (x for x in spec.split(",") if x):
            v = model.lookup(lemma, origin)
            if v is None:
                raise UsageError(f"lemma {lemma!r} not in the model")
            vecs.append(v)
        vs = VectorSet(vecs)
    if len(vs) == 0:
        raise UsageError("empty vector set")
    return vs


def cmd_proximity(args) -> int:
    model = load_word2vec_text(args.model) if args.model else None
    side_b = Origin.synset(1)
    A = _vector_set(args.set_a, SENTENCE, model)
    B = _vector_set(args.set_b, side_b, model)
    sched = _schedule(args.epsilon)
    if len(sched) != 1:
        raise UsageError("proximity takes a single --epsilon value")
    res = proximity(A, B, sched.values[0], args.comparator)

    def named(keys):
        return sorted([lbl, "A" if org == SENTENCE else "B"] for lbl, org in keys)

    print(json.dumps({
        "epsilon": res.epsilon,
        "comparator": Comparator(args.comparator).value,
        "near": named(res.near),
        "distant": named(res.distant),
        "k": res.k_value,
        "k_tilde": res.k_tilde_value,
        "average_similarity": average_similarity(A, B),
    }, ensure_ascii=False, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epswsd", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, epsilon_default):
        sp.add_argument("--model", help="word2vec text file")
        sp.add_argument("--inventory", help="sense inventory JSON")
        sp.add_argument("--dataset", help="gold-tagged sentences JSONL")
        sp.add_argument("--epsilon", default=epsilon_default,
                        help="threshold value or grid 'start:stop:step'")
        sp.add_argument("--comparator", choices=[c.value for c in Comparator], default="strict")
        sp.add_argument("--include-target-mean", action="store_true",
                        help="keep the target vector in the sentence mean (a0, aeps-syn)")
        sp.add_argument("--exclude-target-k", action="store_true",
                        help="drop the target vector from both sides in the k algorithm")

    d = sub.add_parser("disambiguate", help="choose a sense for one sentence")
    common(d, "0:1:0.01")
    d.add_argument("--algorithm", default="k", help="|".join(ALGORITHMS))
    d.add_argument("--lemmas", nargs="+", required=True)
    d.add_argument("--target-index", type=int, required=True)
    d.set_defaults(func=cmd_disambiguate)

    for name, func, eps in (("evaluate", cmd_evaluate, "0.5"), ("sweep", cmd_sweep, "0:1:0.01")):
        e = sub.add_parser(name, help=f"{name} algorithms over a dataset, CSV to --out")
        common(e, eps)
        e.add_argument("--algorithm", default="a0,aeps-syn,aeps-sent-syn,k,mfs",
                       help="comma-separated list of " + ",".join(ALGORITHMS))
        e.add_argument("--out", help="CSV output path")
        e.add_argument("--per-sentence", action="store_true",
                       help="also write <out>.per_sentence.jsonl")
        e.add_argument("--jobs", type=int, default=0, help="worker processes (0 = all cores)")
        e.add_argument("--mode", choices=["fixed", "schedule"], default="fixed")
        e.set_defaults(func=func)

    x = sub.add_parser("proximity", help="near/distant sets and K scores of two vector sets")
    x.add_argument("--set-a", required=True, help='inline JSON {"a1": [1, 0], ...} or lemma list')
    x.add_argument("--set-b", required=True)
    x.add_argument("--epsilon", default="0.5")
    x.add_argument("--comparator", choices=[c.value for c in Comparator], default="strict")
    x.add_argument("--model")
    x.set_defaults(func=cmd_proximity)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnresolvableTarget as exc:
        print(f"error: target lemma {exc.args[0]!r} is not in the embedding model", file=sys.stderr)
        return EXIT_UNRESOLVABLE
    except (UsageError, LexiconError, EmbeddingFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
