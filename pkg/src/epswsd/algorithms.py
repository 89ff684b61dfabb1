"""Sense selection for a target word in a sentence.

Four selectors compare a sentence with each synset of the target word and
pick the best-scoring sense:

* ``a0``            mean of the sentence vs. mean of all synonyms;
* ``aeps-syn``      synonyms filtered by their similarity to the target;
* ``aeps-sent-syn`` sentence words and synonyms filtered against each other;
* ``k``             the K-tilde near/distant ratio between synset and sentence.

The threshold selectors walk an :class:`EpsilonSchedule` and stop at the
first threshold giving a unique best sense. If none does, the smallest tied
sense id is returned with ``tie_unresolved`` set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .embeddings import ZERO_SIMILARITY, WordVector, similarity, similarity_matrix
from .proximity import Comparator, ComparatorLike, VectorSet, proximity

ALGORITHMS = ("a0", "aeps-syn", "aeps-sent-syn", "k", "mfs")
EPSILON_FREE = frozenset({"a0", "mfs"})


@dataclass(frozen=True)
class EpsilonSchedule:
    """Strictly increasing thresholds in [0, 1) tried in order."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("epsilon schedule must not be empty")
        for v in vals:
            if not (0.0 <= v < 1.0) or math.isnan(v):
                raise ValueError(f"epsilon {v} outside [0, 1)")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("epsilon schedule must be strictly increasing")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    @classmethod
    def grid(cls, start: float, stop: float, step: float) -> "EpsilonSchedule":
        """Values ``start, start+step, ...`` strictly below ``stop``.

        Grid points are rounded to 12 decimals so that ``0:1:0.01`` yields
        exactly the 100 values 0.0, 0.01, ..., 0.99.
        """
        if step <= 0:
            raise ValueError("grid step must be positive")
        n = math.ceil(round((stop - start) / step, 9))
        return cls(tuple(round(start + i * step, 12) for i in range(max(n, 0))))

    @classmethod
    def parse(cls, spec: str) -> "EpsilonSchedule":
        """Parse either a single value (``"0.5"``) or ``"start:stop:step"``."""
        parts = spec.split(":")
        try:
            if len(parts) == 1:
                return cls((float(parts[0]),))
            if len(parts) == 3:
                return cls.grid(*(float(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad epsilon spec {spec!r}: {exc}") from None
        raise ValueError(f"bad epsilon spec {spec!r}")

    @classmethod
    def coerce(cls, value) -> "EpsilonSchedule":
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, float)):
            return cls((float(value),))
        return cls(tuple(value))

    def starting_at(self, eps: float) -> "EpsilonSchedule":
        """The tail of the schedule from the first value >= ``eps``."""
        tail = tuple(v for v in self.values if v >= eps)
        return EpsilonSchedule(tail)


DEFAULT_SCHEDULE = EpsilonSchedule.grid(0.0, 1.0, 0.01)

ScheduleLike = Union[EpsilonSchedule, float, Sequence[float]]


@dataclass(frozen=True, eq=False)
class DisambiguationTask:
    """One sentence, one target word, and the vectors the selectors need.

    ``sentence_vectors`` holds the in-vocabulary sentence words (origin
    ``sentence``) plus the target vector (origin ``target``).
    ``sense_vector_sets[k]`` holds the in-vocabulary synonyms of the k-th
    sense plus the target vector, all with origin ``synset(k+1)``.
    """

    target_vector: WordVector
    sentence_vectors: VectorSet
    sense_vector_sets: tuple[VectorSet, ...]
    sense_ids: tuple[int, ...]
    dropped_lemmas: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sense_vector_sets", tuple(self.sense_vector_sets))
        object.__setattr__(self, "sense_ids", tuple(self.sense_ids))
        object.__setattr__(self, "dropped_lemmas", tuple(self.dropped_lemmas))
        if len(self.sense_ids) < 2:
            raise ValueError("a task needs at least two senses")
        if len(self.sense_vector_sets) != len(self.sense_ids):
            raise ValueError("one vector set per sense is required")
        if len(set(self.sense_ids)) != len(self.sense_ids):
            raise ValueError("sense ids must be distinct")
        if self.target_vector.key not in self.sentence_vectors.keys:
            raise ValueError("target vector must be a member of the sentence")

    @property
    def target_label(self) -> str:
        return self.target_vector.label

    @property
    def empty_senses(self) -> tuple[int, ...]:
        """Sense ids none of whose synonyms are in the vocabulary."""
        return tuple(
            sid for sid, vs in zip(self.sense_ids, self.sense_vector_sets)
            if not any(lbl != self.target_label for lbl in vs.labels)
        )

    def is_target(self, v: WordVector) -> bool:
        return v.label == self.target_label

    def scaled(self, alpha: float) -> "DisambiguationTask":
        """Same task with every vector multiplied by ``alpha``."""

        def scale(vs):
            return VectorSet(WordVector(m.label, alpha * m.components, m.origin) for m in vs)

        return DisambiguationTask(
            WordVector(self.target_vector.label, alpha * self.target_vector.components,
                       self.target_vector.origin),
            scale(self.sentence_vectors),
            tuple(scale(vs) for vs in self.sense_vector_sets),
            self.sense_ids,
            self.dropped_lemmas,
        )


@dataclass(frozen=True)
class SenseTrace:
    """What one sense looked like at the threshold that decided the outcome."""

    sense_id: int
    cand_synonyms: tuple[str, ...] = ()
    cand_sentence: tuple[str, ...] = ()
    near: tuple[tuple[str, str], ...] = ()
    distant: tuple[tuple[str, str], ...] = ()

    @property
    def n_cand_synonyms(self) -> int:
        return len(self.cand_synonyms)

    @property
    def n_cand_sentence(self) -> int:
        return len(self.cand_sentence)


@dataclass(frozen=True)
class FilterTrace:
    epsilon: Optional[float]
    senses: tuple[SenseTrace, ...]


@dataclass(frozen=True)
class SenseDecision:
    chosen_sense_id: int
    epsilon_used: Optional[float]
    per_sense_scores: tuple[tuple[int, float], ...]
    tie_unresolved: bool = False
    diagnostics: Optional[FilterTrace] = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "chosen_sense_id": self.chosen_sense_id,
            "epsilon_used": self.epsilon_used,
            "per_sense_scores": [{"sense_id": s, "score": v} for s, v in self.per_sense_scores],
            "tie_unresolved": self.tie_unresolved,
        }
        if self.diagnostics is not None:
            out["diagnostics"] = {
                "epsilon": self.diagnostics.epsilon,
                "senses": [
                    {
                        "sense_id": t.sense_id,
                        "cand_synonyms": list(t.cand_synonyms),
                        "cand_sentence": list(t.cand_sentence),
                        "near": [list(k) for k in t.near],
                        "distant": [list(k) for k in t.distant],
                    }
                    for t in self.diagnostics.senses
                ],
            }
        return out


def _argmax(sense_ids: Sequence[int], scores: Sequence[float]) -> tuple[int, bool]:
    """Best sense id and whether it is unique; ties go to the smallest id."""
    best = max(scores)
    tied = [sid for sid, s in zip(sense_ids, scores) if s == best]
    return min(tied), len(tied) == 1


def _mean_or_zero(rows: np.ndarray, dim: int) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.zeros(dim)
    return rows.mean(axis=0)


def _sorted_keys(keys) -> tuple[tuple[str, str], ...]:
    return tuple(sorted((lbl, str(org)) for lbl, org in keys))


ScoreStep = Callable[[float], tuple[list[float], FilterTrace]]


def _walk_schedule(task: DisambiguationTask, schedule: ScheduleLike,
                   step: ScoreStep) -> SenseDecision:
    sched = EpsilonSchedule.coerce(schedule)
    for eps in sched:
        scores, trace = step(eps)
        chosen, unique = _argmax(task.sense_ids, scores)
        if unique:
            break
    return SenseDecision(
        chosen_sense_id=chosen,
        epsilon_used=eps,
        per_sense_scores=tuple(zip(task.sense_ids, scores)),
        tie_unresolved=not unique,
        diagnostics=trace,
    )


def _sentence_mean(task: DisambiguationTask, include_target: bool) -> np.ndarray:
    words = [m.components for m in task.sentence_vectors
             if include_target or not task.is_target(m)]
    dim = task.target_vector.dimension
    return _mean_or_zero(np.array(words).reshape(len(words), dim), dim)


def _synonyms(task: DisambiguationTask, k: int) -> list[WordVector]:
    """Members of the k-th sense set other than the target vector."""
    return [m for m in task.sense_vector_sets[k] if not task.is_target(m)]


def _rows(vectors: Sequence[WordVector], dim: int) -> np.ndarray:
    if not vectors:
        return np.zeros((0, dim))
    return np.stack([v.components for v in vectors])


def select_a0(task: DisambiguationTask,
              include_target_in_sentence_mean: bool = False) -> SenseDecision:
    """Plain averaging: compare the sentence mean with each synset mean.

    Every synonym takes part (no filtering). A sense with no usable synonyms
    scores -1. Ties cannot be broken by a threshold here, so they fall back
    to the smallest sense id straight away.
    """
    dim = task.target_vector.dimension
    s_mean = _sentence_mean(task, include_target_in_sentence_mean)
    scores, traces = [], []
    for k, sid in enumerate(task.sense_ids):
        syn = _synonyms(task, k)
        syn_mean = _mean_or_zero(_rows(syn, dim), dim)
        scores.append(similarity(syn_mean, s_mean))
        traces.append(SenseTrace(sid, cand_synonyms=tuple(v.label for v in syn)))
    chosen, unique = _argmax(task.sense_ids, scores)
    return SenseDecision(chosen, None, tuple(zip(task.sense_ids, scores)), not unique,
                         FilterTrace(None, tuple(traces)))


def select_a_eps_synonyms(task: DisambiguationTask, schedule: ScheduleLike = DEFAULT_SCHEDULE,
                          include_target_in_sentence_mean: bool = False,
                          comparator: ComparatorLike = Comparator.STRICT) -> SenseDecision:
    """Average with synonym filtering.

    Only synonyms whose similarity to the target vector passes ``eps`` are
    averaged; the result is compared with the sentence mean.
    """
    comparator = Comparator(comparator)
    dim = task.target_vector.dimension
    s_mean = _sentence_mean(task, include_target_in_sentence_mean)
    syns = [_synonyms(task, k) for k in range(len(task.sense_ids))]
    to_target = [
        similarity_matrix(_rows(s, dim), task.target_vector.components)[:, 0] if s else np.zeros(0)
        for s in syns
    ]

    def step(eps):
        scores, traces = [], []
        for sid, syn, sims in zip(task.sense_ids, syns, to_target):
            keep = comparator.passes(sims, eps)
            cand = [v for v, ok in zip(syn, keep) if ok]
            scores.append(similarity(_mean_or_zero(_rows(cand, dim), dim), s_mean))
            traces.append(SenseTrace(sid, cand_synonyms=tuple(v.label for v in cand)))
        return scores, FilterTrace(eps, tuple(traces))

    return _walk_schedule(task, schedule, step)


def select_a_eps_sentence_synonyms(task: DisambiguationTask,
                                   schedule: ScheduleLike = DEFAULT_SCHEDULE,
                                   comparator: ComparatorLike = Comparator.STRICT) -> SenseDecision:
    """Average with sentence and synonym filtering.

    For each sense, keep the sentence words that have some synonym beyond
    ``eps`` and the synonyms that have some sentence word beyond ``eps``
    (the target itself excluded on both sides), then compare the two means.
    """
    comparator = Comparator(comparator)
    dim = task.target_vector.dimension
    words = [m for m in task.sentence_vectors if not task.is_target(m)]
    w_rows = _rows(words, dim)
    syns = [_synonyms(task, k) for k in range(len(task.sense_ids))]
    cross = [
        similarity_matrix(w_rows, _rows(s, dim)) if (s and words) else np.zeros((len(words), len(s)))
        for s in syns
    ]

    def step(eps):
        scores, traces = [], []
        for sid, syn, sims in zip(task.sense_ids, syns, cross):
            passed = comparator.passes(sims, eps)
            cand_s = [v for v, ok in zip(words, passed.any(axis=1)) if ok]
            cand_u = [u for u, ok in zip(syn, passed.any(axis=0)) if ok]
            scores.append(similarity(_mean_or_zero(_rows(cand_s, dim), dim),
                                     _mean_or_zero(_rows(cand_u, dim), dim)))
            traces.append(SenseTrace(sid,
                                     cand_synonyms=tuple(v.label for v in cand_u),
                                     cand_sentence=tuple(v.label for v in cand_s)))
        return scores, FilterTrace(eps, tuple(traces))

    return _walk_schedule(task, schedule, step)


def select_k_algorithm(task: DisambiguationTask, schedule: ScheduleLike = DEFAULT_SCHEDULE,
                       comparator: ComparatorLike = Comparator.STRICT,
                       exclude_target: bool = False) -> SenseDecision:
    """Choose the synset with the largest K-tilde proximity to the sentence.

    By default the target vector stays in both the sentence and every
    synset; ``exclude_target`` drops it from both.
    """
    sentence = task.sentence_vectors
    senses = task.sense_vector_sets
    if exclude_target:
        sentence = sentence.without(task.is_target)
        senses = tuple(vs.without(task.is_target) for vs in senses)

    def step(eps):
        scores, traces = [], []
        for sid, syn in zip(task.sense_ids, senses):
            if len(syn) and len(sentence):
                res = proximity(syn, sentence, eps, comparator)
                scores.append(res.k_tilde_value)
                near, distant = res.near, res.distant
            else:
                scores.append(0.0)
                near, distant = frozenset(), frozenset(syn.keys) | frozenset(sentence.keys)
            traces.append(SenseTrace(sid, near=_sorted_keys(near), distant=_sorted_keys(distant)))
        return scores, FilterTrace(eps, tuple(traces))

    return _walk_schedule(task, schedule, step)


def select_mfs(frequencies: Mapping[int, int]) -> SenseDecision:
    """Most frequent sense; ties go to the smallest sense id."""
    if not frequencies:
        raise ValueError("no sense frequencies given")
    if any(c < 0 for c in frequencies.values()):
        raise ValueError("sense counts must be non-negative")
    ids = sorted(frequencies)
    scores = [float(frequencies[s]) for s in ids]
    chosen, unique = _argmax(ids, scores)
    return SenseDecision(chosen, None, tuple(zip(ids, scores)), not unique)


def run_selector(name: str, task: DisambiguationTask, schedule: ScheduleLike = DEFAULT_SCHEDULE, *,
                 comparator: ComparatorLike = Comparator.STRICT,
                 include_target_in_sentence_mean: bool = False,
                 exclude_target_k: bool = False,
                 frequencies: Optional[Mapping[int, int]] = None) -> SenseDecision:
    """Dispatch by algorithm name (one of :data:`ALGORITHMS`)."""
    if name == "a0":
        return select_a0(task, include_target_in_sentence_mean)
    if name == "aeps-syn":
        return select_a_eps_synonyms(task, schedule, include_target_in_sentence_mean, comparator)
    if name == "aeps-sent-syn":
        return select_a_eps_sentence_synonyms(task, schedule, comparator)
    if name == "k":
        return select_k_algorithm(task, schedule, comparator, exclude_target_k)
    if name == "mfs":
        if frequencies is None:
            raise ValueError("the mfs selector needs sense frequencies")
        freq = {sid: frequencies.get(sid, 0) for sid in task.sense_ids}
        return select_mfs(freq)
    raise ValueError(f"unknown algorithm {name!r}; expected one of {ALGORITHMS}")
