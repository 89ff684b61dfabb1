"""Sense inventories, gold-tagged sentences, and task resolution.

Inventories are JSON arrays::

    [{"target": "t", "senses": [{"id": 1, "synonyms": ["x", "y"], "gloss": "..."}, ...]}]

Datasets are JSON Lines, one ``{"lemmas": [...], "target_index": i,
"gold_sense_id": s}`` object per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .algorithms import DisambiguationTask
from .embeddings import SENTENCE, TARGET, EmbeddingModel, Origin
from .proximity import VectorSet


class LexiconError(ValueError):
    """Invalid inventory or dataset. ``problems`` lists every violation found."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class UnresolvableTarget(LookupError):
    """The target lemma of a sentence has no vector in the embedding model."""


@dataclass(frozen=True)
class Synset:
    sense_id: int
    synonyms: tuple[str, ...]
    gloss: Optional[str] = None


@dataclass(frozen=True)
class SenseInventory:
    target_lemma: str
    senses: tuple[Synset, ...]

    @property
    def sense_ids(self) -> tuple[int, ...]:
        return tuple(s.sense_id for s in self.senses)

    def sense(self, sense_id: int) -> Synset:
        for s in self.senses:
            if s.sense_id == sense_id:
                return s
        raise KeyError(sense_id)


@dataclass(frozen=True)
class TaggedSentence:
    lemmas: tuple[str, ...]
    target_index: int
    gold_sense_id: int

    @property
    def target_lemma(self) -> str:
        return self.lemmas[self.target_index]

    def to_json(self) -> str:
        return json.dumps(
            {"lemmas": list(self.lemmas), "target_index": self.target_index,
             "gold_sense_id": self.gold_sense_id},
            ensure_ascii=False,
        )


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _validate_entry(i: int, entry) -> tuple[Optional[SenseInventory], list[str]]:
    problems = []
    if not isinstance(entry, dict):
        return None, [f"entry {i}: expected an object"]
    target = entry.get("target")
    where = f"entry {i} ({target!r})"
    if not isinstance(target, str) or not target:
        return None, [f"entry {i}: 'target' must be a non-empty string"]
    senses = entry.get("senses")
    if not isinstance(senses, list):
        return None, [f"{where}: 'senses' must be a list"]
    if len(senses) < 2:
        problems.append(f"{where}: needs at least two senses, got {len(senses)}")
    synsets, seen_ids = [], set()
    for j, sense in enumerate(senses):
        if not isinstance(sense, dict):
            problems.append(f"{where}: sense {j} must be an object")
            continue
        sid, syns, gloss = sense.get("id"), sense.get("synonyms"), sense.get("gloss")
        if not _is_int(sid) or sid < 1:
            problems.append(f"{where}: sense {j} id must be an integer >= 1")
            continue
        if sid in seen_ids:
            problems.append(f"{where}: duplicate sense id {sid}")
        seen_ids.add(sid)
        if not isinstance(syns, list) or not syns or not all(isinstance(s, str) and s for s in syns):
            problems.append(f"{where}: sense {sid} needs a non-empty list of synonym strings")
            continue
        for s in syns:
            if any(ch.isspace() for ch in s):
                problems.append(f"{where}: sense {sid} synonym {s!r} is multiword; "
                                "only single-word synonyms are supported")
        if len(set(syns)) != len(syns):
            problems.append(f"{where}: sense {sid} repeats a synonym")
        if gloss is not None and not isinstance(gloss, str):
            problems.append(f"{where}: sense {sid} gloss must be a string")
        synsets.append(Synset(sid, tuple(syns), gloss))
    for a in range(len(synsets)):
        for b in range(a + 1, len(synsets)):
            if set(synsets[a].synonyms) == set(synsets[b].synonyms):
                problems.append(
                    f"{where}: senses {synsets[a].sense_id} and {synsets[b].sense_id} have "
                    "equal synonym sets and cannot be told apart by their synonyms"
                )
    if problems:
        return None, problems
    return SenseInventory(target, tuple(synsets)), []


def parse_inventory(data) -> list[SenseInventory]:
    """Validate an already-decoded inventory document."""
    if not isinstance(data, list):
        raise LexiconError(["inventory must be a JSON array"])
    problems, out, seen = [], [], set()
    for i, entry in enumerate(data):
        inv, errs = _validate_entry(i, entry)
        problems.extend(errs)
        if inv is None:
            continue
        if inv.target_lemma in seen:
            problems.append(f"entry {i}: duplicate target {inv.target_lemma!r}")
        seen.add(inv.target_lemma)
        out.append(inv)
    if problems:
        raise LexiconError(problems)
    return out


def load_inventory(path: Union[str, Path]) -> list[SenseInventory]:
    """Read and validate a sense inventory JSON file.

    Raises:
        LexiconError: listing every problem found, entry by entry.
    """
    with Path(path).open(encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LexiconError([f"{path}: invalid JSON: {exc}"]) from None
    return parse_inventory(data)


def dump_inventory(inventories: Iterable[SenseInventory], path: Union[str, Path]) -> None:
    doc = []
    for inv in inventories:
        senses = []
        for s in inv.senses:
            d = {"id": s.sense_id, "synonyms": list(s.synonyms)}
            if s.gloss is not None:
                d["gloss"] = s.gloss
            senses.append(d)
        doc.append({"target": inv.target_lemma, "senses": senses})
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def inventory_index(inventories) -> dict[str, SenseInventory]:
    if isinstance(inventories, Mapping):
        return dict(inventories)
    return {inv.target_lemma: inv for inv in inventories}


def load_dataset(path: Union[str, Path], inventories) -> list[TaggedSentence]:
    """Read gold-tagged sentences and check them against ``inventories``.

    Raises:
        LexiconError: for malformed lines, out-of-range target indexes,
            targets without an inventory, or unknown gold sense ids.
    """
    index = inventory_index(inventories)
    problems, out = [], []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                problems.append(f"{where}: invalid JSON: {exc}")
                continue
            lemmas, ti, gold = rec.get("lemmas"), rec.get("target_index"), rec.get("gold_sense_id")
            if not isinstance(lemmas, list) or not lemmas or not all(
                    isinstance(x, str) and x for x in lemmas):
                problems.append(f"{where}: 'lemmas' must be a non-empty list of strings")
                continue
            if not _is_int(ti) or not 0 <= ti < len(lemmas):
                problems.append(f"{where}: target_index {ti!r} out of bounds for "
                                f"{len(lemmas)} lemmas")
                continue
            if not _is_int(gold):
                problems.append(f"{where}: gold_sense_id must be an integer")
                continue
            inv = index.get(lemmas[ti])
            if inv is None:
                problems.append(f"{where}: no inventory for target {lemmas[ti]!r}")
                continue
            if gold not in inv.sense_ids:
                problems.append(f"{where}: gold sense {gold} not among {list(inv.sense_ids)} "
                                f"for {lemmas[ti]!r}")
                continue
            out.append(TaggedSentence(tuple(lemmas), ti, gold))
    if problems:
        raise LexiconError(problems)
    return out


def dump_dataset(sentences: Iterable[TaggedSentence], path: Union[str, Path]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for s in sentences:
            fh.write(s.to_json() + "\n")


def resolve_task(sentence: TaggedSentence, inventory: SenseInventory,
                 model: EmbeddingModel) -> DisambiguationTask:
    """Look up every vector a selector needs for ``sentence``.

    Out-of-vocabulary sentence words are dropped and listed in
    ``dropped_lemmas``; a sense whose synonyms are all out of vocabulary is
    kept (it then contains only the target vector). Repeated sentence lemmas
    are counted once, and other occurrences of the target lemma are folded
    into the target itself.

    Raises:
        UnresolvableTarget: if the target lemma is not in the model.
        ValueError: if the inventory belongs to another lemma.
    """
    target = sentence.target_lemma
    if inventory.target_lemma != target:
        raise ValueError(f"inventory is for {inventory.target_lemma!r}, sentence target is {target!r}")
    v_star = model.lookup(target, TARGET)
    if v_star is None:
        raise UnresolvableTarget(target)

    members, seen, dropped = [], {target}, []
    for i, lemma in enumerate(sentence.lemmas):
        if i == sentence.target_index:
            members.append(v_star)
            continue
        if lemma in seen:
            continue
        seen.add(lemma)
        vec = model.lookup(lemma, SENTENCE)
        if vec is None:
            dropped.append(lemma)
            continue
        members.append(vec)

    sense_sets = []
    for k, synset in enumerate(inventory.senses, start=1):
        origin = Origin.synset(k)
        vecs = [v_star.with_origin(origin)]
        for syn in synset.synonyms:
            if syn == target:
                continue
            vec = model.lookup(syn, origin)
            if vec is None:
                if syn not in dropped:
                    dropped.append(syn)
                continue
            vecs.append(vec)
        sense_sets.append(VectorSet(vecs))

    return DisambiguationTask(
        target_vector=v_star,
        sentence_vectors=VectorSet(members),
        sense_vector_sets=tuple(sense_sets),
        sense_ids=inventory.sense_ids,
        dropped_lemmas=tuple(dropped),
    )
