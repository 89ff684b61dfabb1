"""
Choosing a sense with each selector
===================================

Load the bundled miniature model and inventory, resolve one sentence into
vectors, and compare what the four selectors and the frequency baseline pick.
"""

from epswsd import (
    ALGORITHMS,
    EpsilonSchedule,
    fixture_paths,
    load_dataset,
    load_inventory,
    load_word2vec_text,
    resolve_task,
    run_selector,
)
from epswsd.evaluation import prepare

paths = fixture_paths()
model = load_word2vec_text(paths["model"])
inventories = load_inventory(paths["inventory"])
dataset = load_dataset(paths["dataset"], inventories)
index = {inv.target_lemma: inv for inv in inventories}
print(f"{len(model)} vectors of dimension {model.dimension}, {len(dataset)} sentences")

sentence = dataset[1]
inv = index[sentence.target_lemma]
print("sentence:", " ".join(sentence.lemmas), "| target:", sentence.target_lemma,
      "| gold:", sentence.gold_sense_id)
for s in inv.senses:
    print(f"  sense {s.sense_id}: {', '.join(s.synonyms)} ({s.gloss})")

task = resolve_task(sentence, inv, model)
freq = prepare(dataset, inventories, model).frequencies[sentence.target_lemma]

# %%
# A single threshold versus a schedule. A schedule stops at its first
# epsilon that gives a unique best sense; a tie moves on to the next value.
# Here the schedule starts at 0, where the loose filter already decides.

for sched in (EpsilonSchedule((0.5,)), EpsilonSchedule.parse("0:1:0.05")):
    print("\nschedule:", sched.values[0] if len(sched) == 1 else "0:1:0.05")
    for name in ALGORITHMS:
        d = run_selector(name, task, sched, frequencies=freq)
        scores = ", ".join(f"{sid}:{float(v):.3f}" for sid, v in d.per_sense_scores)
        print(f"  {name:14s} -> {d.chosen_sense_id}  eps={d.epsilon_used}  [{scores}]"
              + ("  (tie)" if d.tie_unresolved else ""))

# %%
# The K selector records which words were near at the deciding threshold.

d = run_selector("k", task, EpsilonSchedule((0.5,)))
for t in d.diagnostics.senses:
    print(f"sense {t.sense_id}: near {[f'{lbl}/{org}' for lbl, org in t.near]}")
    print(f"         distant {[f'{lbl}/{org}' for lbl, org in t.distant]}")
