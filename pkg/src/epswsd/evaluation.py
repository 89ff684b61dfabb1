"""Batch evaluation of the selectors over gold-tagged sentences.

A sweep runs every (algorithm, epsilon) pair over a dataset and records one
aggregate row per target lemma, plus the per-sentence outcomes needed for
"correct at some epsilon" summaries.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .algorithms import (
    ALGORITHMS,
    EPSILON_FREE,
    DisambiguationTask,
    EpsilonSchedule,
    ScheduleLike,
    run_selector,
)
from .embeddings import EmbeddingModel
from .lexicon import TaggedSentence, UnresolvableTarget, inventory_index, resolve_task
from .proximity import Comparator

CSV_HEADER = ("target", "algorithm", "epsilon", "n_evaluated", "n_correct", "n_skipped",
              "n_tie_unresolved")


@dataclass(frozen=True)
class SelectorOptions:
    comparator: Comparator = Comparator.STRICT
    include_target_in_sentence_mean: bool = False
    exclude_target_k: bool = False


@dataclass(frozen=True)
class ReportRow:
    target: str
    algorithm: str
    epsilon: Optional[float]
    n_evaluated: int
    n_correct: int
    n_skipped: int
    n_tie_unresolved: int

    @property
    def accuracy(self) -> Optional[float]:
        return self.n_correct / self.n_evaluated if self.n_evaluated else None

    def sort_key(self):
        return (self.target, self.algorithm, self.epsilon is None, self.epsilon or 0.0)


@dataclass(frozen=True)
class SentenceOutcome:
    target: str
    algorithm: str
    epsilon: Optional[float]
    sentence_index: int
    chosen: int
    gold: int
    correct: bool
    tie_unresolved: bool = False

    def to_dict(self) -> dict:
        return {"target": self.target, "algorithm": self.algorithm, "epsilon": self.epsilon,
                "sentence_index": self.sentence_index, "chosen": self.chosen,
                "gold": self.gold, "correct": self.correct}


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple[ReportRow, ...] = ()
    # None when the report was read back from CSV (aggregates only)
    outcomes: Optional[tuple[SentenceOutcome, ...]] = field(default=(), compare=False)

    def __add__(self, other: "EvaluationReport") -> "EvaluationReport":
        outcomes = None
        if self.outcomes is not None and other.outcomes is not None:
            outcomes = self.outcomes + other.outcomes
        return EvaluationReport(self.rows + other.rows, outcomes)

    def canonical(self) -> "EvaluationReport":
        rows = tuple(sorted(self.rows, key=ReportRow.sort_key))
        outcomes = self.outcomes
        if outcomes is not None:
            outcomes = tuple(sorted(outcomes, key=lambda o: (
                o.target, o.algorithm, o.epsilon is None, o.epsilon or 0.0, o.sentence_index)))
        return EvaluationReport(rows, outcomes)


@dataclass(frozen=True)
class _Prepared:
    """A dataset with every sentence already resolved against the model."""

    sentences: tuple[TaggedSentence, ...]
    tasks: tuple[Optional[DisambiguationTask], ...]
    frequencies: dict


def prepare(dataset: Sequence[TaggedSentence], inventories, model: EmbeddingModel) -> _Prepared:
    index = inventory_index(inventories)
    tasks = []
    freq: dict = defaultdict(Counter)
    for s in dataset:
        inv = index[s.target_lemma]
        freq[s.target_lemma][s.gold_sense_id] += 1
        try:
            tasks.append(resolve_task(s, inv, model))
        except UnresolvableTarget:
            tasks.append(None)
    return _Prepared(tuple(dataset), tuple(tasks), {k: dict(v) for k, v in freq.items()})


def _evaluate(prep: _Prepared, algorithm: str, eps: Optional[float], mode: str,
              schedule: Optional[EpsilonSchedule], options: SelectorOptions) -> EvaluationReport:
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm in EPSILON_FREE:
        eps, sched = None, None
    elif mode == "fixed":
        sched = EpsilonSchedule((eps,))
    elif mode == "schedule":
        sched = (schedule or EpsilonSchedule((eps,))).starting_at(eps)
    else:
        raise ValueError(f"unknown evaluation mode {mode!r}")

    counts: dict = defaultdict(lambda: [0, 0, 0, 0])  # evaluated, correct, skipped, ties
    outcomes = []
    for i, (s, task) in enumerate(zip(prep.sentences, prep.tasks)):
        c = counts[s.target_lemma]
        if task is None:
            c[2] += 1
            continue
        d = run_selector(
            algorithm, task, sched,
            comparator=options.comparator,
            include_target_in_sentence_mean=options.include_target_in_sentence_mean,
            exclude_target_k=options.exclude_target_k,
            frequencies=prep.frequencies.get(s.target_lemma),
        )
        ok = d.chosen_sense_id == s.gold_sense_id
        c[0] += 1
        c[1] += ok
        c[3] += d.tie_unresolved
        outcomes.append(SentenceOutcome(s.target_lemma, algorithm, eps, i, d.chosen_sense_id,
                                        s.gold_sense_id, ok, d.tie_unresolved))
    rows = tuple(ReportRow(t, algorithm, eps, *counts[t]) for t in sorted(counts))
    return EvaluationReport(rows, tuple(outcomes))


def evaluate_fixed_epsilon(dataset: Sequence[TaggedSentence], inventories, model: EmbeddingModel,
                           algorithm: str, eps: Optional[float] = None, *,
                           options: SelectorOptions = SelectorOptions(),
                           mode: str = "fixed",
                           schedule: Optional[ScheduleLike] = None) -> EvaluationReport:
    """Run one algorithm at one threshold over the dataset.

    In ``"fixed"`` mode the selector only sees ``eps``; a tie is judged by its
    fallback choice. In ``"schedule"`` mode ties move on through ``schedule``
    from ``eps`` upward. Sentences whose target is out of vocabulary are
    counted as skipped.
    """
    if algorithm not in EPSILON_FREE and eps is None:
        raise ValueError(f"algorithm {algorithm!r} needs an epsilon")
    sched = EpsilonSchedule.coerce(schedule) if schedule is not None else None
    return _evaluate(prepare(dataset, inventories, model), algorithm, eps, mode, sched, options)


_WORKER_STATE = None


def _init_worker(prep, mode, schedule, options):
    global _WORKER_STATE
    _WORKER_STATE = (prep, mode, schedule, options)


def _work(unit):
    prep, mode, schedule, options = _WORKER_STATE
    return _evaluate(prep, unit[0], unit[1], mode, schedule, options)


def sweep(dataset: Sequence[TaggedSentence], inventories, model: EmbeddingModel,
          algorithms: Iterable[str], schedule: ScheduleLike, *,
          options: SelectorOptions = SelectorOptions(), mode: str = "fixed",
          jobs: int = 1) -> EvaluationReport:
    """Evaluate every algorithm at every threshold of ``schedule``.

    Algorithms that ignore the threshold (``a0``, ``mfs``) are run once.
    With ``jobs > 1`` the (algorithm, epsilon) units run in worker processes;
    the report is canonicalised so the result does not depend on ``jobs``.
    """
    sched = EpsilonSchedule.coerce(schedule)
    algorithms = list(dict.fromkeys(algorithms))
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    units = []
    for a in algorithms:
        if a in EPSILON_FREE:
            units.append((a, None))
        else:
            units.extend((a, e) for e in sched)
    prep = prepare(dataset, inventories, model)
    if jobs is None or jobs < 1:
        jobs = os.cpu_count() or 1
    if jobs == 1 or len(units) < 2:
        parts = [_evaluate(prep, a, e, mode, sched, options) for a, e in units]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(units)), initializer=_init_worker,
                                 initargs=(prep, mode, sched, options)) as pool:
            parts = list(pool.map(_work, units))
    report = EvaluationReport()
    for p in parts:
        report = report + p
    return report.canonical()


def best_epsilon_summary(report: EvaluationReport) -> dict[tuple[str, str], int]:
    """Per (target, algorithm): sentences judged correct at one or more thresholds."""
    if report.outcomes is None:
        raise ValueError("report carries no per-sentence outcomes")
    hits: dict = defaultdict(set)
    for row in report.rows:
        hits[(row.target, row.algorithm)]
    for o in report.outcomes:
        if o.correct:
            hits[(o.target, o.algorithm)].add(o.sentence_index)
    return {k: len(v) for k, v in sorted(hits.items())}


def distribution_summary(report: EvaluationReport, algorithm: str = "k") -> dict[str, Counter]:
    """Per target, the accuracies reached over the grid with their multiplicities."""
    out: dict = {}
    for row in report.rows:
        if row.algorithm != algorithm or row.accuracy is None:
            continue
        out.setdefault(row.target, Counter())[row.accuracy] += 1
    return dict(sorted(out.items()))


def epsilon_curve(report: EvaluationReport, algorithm: str) -> list[tuple[Optional[float], int, int]]:
    """Totals over all targets per threshold: ``(epsilon, n_correct, n_evaluated)``."""
    acc: dict = defaultdict(lambda: [0, 0])
    for row in report.rows:
        if row.algorithm == algorithm:
            acc[row.epsilon][0] += row.n_correct
            acc[row.epsilon][1] += row.n_evaluated
    keys = sorted(acc, key=lambda e: (e is None, e or 0.0))
    return [(e, acc[e][0], acc[e][1]) for e in keys]


def _fmt_eps(eps: Optional[float]) -> str:
    return "" if eps is None else repr(float(eps))


def to_csv_text(report: EvaluationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(report.rows, key=ReportRow.sort_key):
        w.writerow([r.target, r.algorithm, _fmt_eps(r.epsilon), r.n_evaluated, r.n_correct,
                    r.n_skipped, r.n_tie_unresolved])
    return buf.getvalue()


def export_csv(report: EvaluationReport, path: Union[str, Path]) -> None:
    """Write the aggregate rows as UTF-8 CSV, sorted by (target, algorithm, epsilon)."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv_text(report))


def read_csv(path: Union[str, Path]) -> EvaluationReport:
    """Load aggregate rows written by :func:`export_csv` (no per-sentence detail)."""
    with Path(path).open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        rows = []
        for rec in reader:
            t, a, e, *nums = rec
            rows.append(ReportRow(t, a, float(e) if e else None, *(int(n) for n in nums)))
    return EvaluationReport(tuple(rows), None)


def export_per_sentence(report: EvaluationReport, path: Union[str, Path]) -> None:
    """Write one JSON object per (sentence, algorithm, epsilon) outcome."""
    if report.outcomes is None:
        raise ValueError("report carries no per-sentence outcomes")
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for o in report.canonical().outcomes:
            fh.write(json.dumps(o.to_dict(), ensure_ascii=False) + "\n")
