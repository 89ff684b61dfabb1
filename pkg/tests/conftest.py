import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from epswsd import (  # noqa: E402
    EmbeddingModel,
    SenseInventory,
    Synset,
    TaggedSentence,
    VectorSet,
    WordVector,
    fixture_paths,
    load_dataset,
    load_inventory,
    load_word2vec_text,
    resolve_task,
)
from epswsd.embeddings import Origin  # noqa: E402

CANCEL_A = {"a1": (1.0, 0.0), "a2": (0.0, 1.0), "a3": (-1.0, 0.0)}
CANCEL_B = {"b1": (0.0, 1.0)}


@pytest.fixture
def cancelling_sets():
    """Concrete sets with a1 + a3 = 0 and a2 = b1."""
    A = VectorSet.from_mapping(CANCEL_A, Origin("sentence"))
    B = VectorSet.from_mapping(CANCEL_B, Origin.synset(1))
    return A, B


@pytest.fixture(scope="session")
def mini():
    p = fixture_paths()
    model = load_word2vec_text(p["model"])
    inventories = load_inventory(p["inventory"])
    dataset = load_dataset(p["dataset"], inventories)
    return model, inventories, dataset


def unit2(rng):
    a = rng.uniform(0.0, 2.0 * np.pi)
    return (float(np.cos(a)), float(np.sin(a)))


def random_case(rng: random.Random, n_words=(3, 5), n_senses=(2, 4), n_syn=(1, 3)):
    """Random unit-2D task: returns (task, oracle_args, raw) where oracle_args is
    ``(target, sentence, senses)`` in the plain-data layout of tests/oracle.py."""
    vecs = {"T": unit2(rng)}
    words = [f"w{i}" for i in range(rng.randint(*n_words))]
    for w in words:
        vecs[w] = unit2(rng)
    senses = []
    for k in range(1, rng.randint(*n_senses) + 1):
        syns = [f"s{k}_{j}" for j in range(rng.randint(*n_syn))]
        for s in syns:
            vecs[s] = unit2(rng)
        senses.append(Synset(k, tuple(syns)))
    model = EmbeddingModel.from_dict(vecs)
    ti = rng.randint(0, len(words))
    lemmas = tuple(words[:ti] + ["T"] + words[ti:])
    inv = SenseInventory("T", tuple(senses))
    task = resolve_task(TaggedSentence(lemmas, ti, 1), inv, model)
    oracle_args = (
        ("T", list(vecs["T"])),
        [(w, list(vecs[w])) for w in words],
        [(s.sense_id, [(u, list(vecs[u])) for u in s.synonyms]) for s in senses],
    )
    return task, oracle_args, (model, inv, lemmas, ti)


def make_task(target_vec, sentence: dict, senses: list, target="T"):
    """Build a task from explicit vectors: ``senses`` is a list of {label: vec}."""
    vecs = {target: target_vec, **sentence}
    for s in senses:
        vecs.update(s)
    model = EmbeddingModel.from_dict(vecs)
    inv = SenseInventory(target, tuple(Synset(k, tuple(s)) for k, s in enumerate(senses, 1)))
    lemmas = tuple(sentence) + (target,)
    return resolve_task(TaggedSentence(lemmas, len(lemmas) - 1, 1), inv, model)


def wv(label, comps, origin=None):
    return WordVector(label, comps, origin or Origin("sentence"))


def oracle_args(model, sentence, inventory):
    """Plain-data oracle inputs for a tagged sentence (repeated words counted once)."""
    t = sentence.target_lemma
    vec = {k: list(v) for k, v in model.entries.items()}
    seen, words = {t}, []
    for i, w in enumerate(sentence.lemmas):
        if i != sentence.target_index and w not in seen and w in vec:
            seen.add(w)
            words.append((w, vec[w]))
    senses = [(s.sense_id, [(u, vec[u]) for u in s.synonyms if u in vec and u != t])
              for s in inventory.senses]
    return (t, vec[t]), words, senses


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
