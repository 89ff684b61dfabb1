"""Regenerate the bundled miniature model, inventory and dataset.

Vectors are drawn around one topic direction per sense. Candidate sentences
mix context words of a gold sense with distractors; a candidate is kept only
if the reference K selector (tests/oracle.py) picks its gold sense uniquely
at eps=0.5, and a few are deliberately kept where plain averaging fails.

    python tools/build_fixture.py
"""

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))
import oracle  # noqa: E402

OUT = ROOT / "src" / "epswsd" / "data"
DIM = 10
EPS = 0.5
N_SENTENCES = 20
N_A0_MISSES = 4

INVENTORY = [
    {"target": "bank", "senses": [
        {"id": 1, "synonyms": ["shore", "riverside"], "gloss": "land along a river"},
        {"id": 2, "synonyms": ["lender", "treasury"], "gloss": "financial institution"},
    ]},
    {"target": "crane", "senses": [
        {"id": 1, "synonyms": ["heron", "stork"], "gloss": "long-legged bird"},
        {"id": 2, "synonyms": ["hoist", "derrick"], "gloss": "lifting machine"},
        {"id": 3, "synonyms": ["stretch"], "gloss": "to extend the neck"},
    ]},
    {"target": "spring", "senses": [
        {"id": 1, "synonyms": ["vernal", "springtime"], "gloss": "season after winter"},
        {"id": 2, "synonyms": ["coil", "bounce"], "gloss": "elastic device"},
        {"id": 3, "synonyms": ["fountain", "source"], "gloss": "natural water outlet"},
    ]},
]

CONTEXT = {
    ("bank", 1): ["river", "mud"],
    ("bank", 2): ["money", "loan"],
    ("crane", 1): ["bird", "marsh"],
    ("crane", 2): ["steel", "cargo"],
    ("crane", 3): ["neck"],
    ("spring", 1): ["blossom", "april"],
    ("spring", 2): ["metal", "mattress"],
    ("spring", 3): ["water"],
}
FILLER = ["walk", "see"]


def unit(v):
    n = sum(x * x for x in v) ** 0.5
    return [x / n for x in v]


def noisy(rng, base, scale):
    return unit([b + rng.gauss(0, scale) for b in base])


def build_vectors(rng):
    topics = {key: unit([rng.gauss(0, 1) for _ in range(DIM)]) for key in CONTEXT}
    vecs = {}
    for entry in INVENTORY:
        t = entry["target"]
        for s in entry["senses"]:
            for syn in s["synonyms"]:
                vecs[syn] = noisy(rng, topics[(t, s["id"])], 0.25)
        mix = [sum(topics[(t, s["id"])][i] for s in entry["senses"]) for i in range(DIM)]
        vecs[t] = noisy(rng, mix, 0.15)
    for key, words in CONTEXT.items():
        for w in words:
            vecs[w] = noisy(rng, topics[key], 0.3)
    for w in FILLER:
        vecs[w] = unit([rng.gauss(0, 1) for _ in range(DIM)])
    # round-trip through the text representation written below
    return {w: [float(f"{x:.6f}") for x in v] for w, v in vecs.items()}


def oracle_inputs(vecs, lemmas, ti, entry):
    target = (lemmas[ti], vecs[lemmas[ti]])
    seen, sentence = {lemmas[ti]}, []
    for i, w in enumerate(lemmas):
        if i != ti and w not in seen:
            seen.add(w)
            sentence.append((w, vecs[w]))
    senses = [(s["id"], [(u, vecs[u]) for u in s["synonyms"]]) for s in entry["senses"]]
    return target, sentence, senses


def main():
    rng = random.Random(20181)
    vecs = build_vectors(rng)
    all_context = [w for ws in CONTEXT.values() for w in ws] + FILLER
    kept, a0_misses = [], 0
    attempts = 0
    while len(kept) < N_SENTENCES:
        attempts += 1
        if attempts > 200000:
            raise SystemExit("could not assemble the fixture; change the seed")
        entry = INVENTORY[len(kept) % len(INVENTORY)]
        t = entry["target"]
        gold = rng.choice(entry["senses"])["id"]
        words = rng.sample(CONTEXT[(t, gold)], k=min(len(CONTEXT[(t, gold)]), rng.randint(1, 2)))
        words += rng.sample([w for w in all_context if w not in words], k=rng.randint(0, 3))
        rng.shuffle(words)
        ti = rng.randint(0, len(words))
        lemmas = words[:ti] + [t] + words[ti:]
        args = oracle_inputs(vecs, lemmas, ti, entry)
        k_choice, _, k_tie = oracle.k_algorithm(*args, [EPS])
        if k_tie or k_choice != gold:
            continue
        a0_choice, _, _ = oracle.a0(*args)
        need_miss = N_A0_MISSES - a0_misses
        slots_left = N_SENTENCES - len(kept)
        if a0_choice == gold and slots_left <= need_miss:
            continue
        if a0_choice != gold:
            if need_miss <= 0:
                continue
            a0_misses += 1
        kept.append({"lemmas": lemmas, "target_index": ti, "gold_sense_id": gold})

    OUT.mkdir(parents=True, exist_ok=True)
    with (OUT / "mini_model.txt").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(vecs)} {DIM}\n")
        for w, v in vecs.items():
            fh.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
    (OUT / "mini_inventory.json").write_text(
        json.dumps(INVENTORY, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    with (OUT / "mini_dataset.jsonl").open("w", encoding="utf-8", newline="\n") as fh:
        for rec in kept:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"{len(vecs)} vectors, {len(kept)} sentences, a0 misses {a0_misses}, "
          f"{attempts} candidates tried")


if __name__ == "__main__":
    main()
