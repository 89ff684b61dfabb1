import math
import random

import numpy as np
import pytest

import oracle
from conftest import make_task, random_case
from epswsd import (
    EpsilonSchedule,
    VectorSet,
    k_tilde_proximity,
    run_selector,
    select_a0,
    select_a_eps_sentence_synonyms,
    select_a_eps_synonyms,
    select_k_algorithm,
    select_mfs,
    TaggedSentence,
    resolve_task,
)
from epswsd.algorithms import DisambiguationTask
from epswsd.embeddings import WordVector


def scores(decision):
    return dict(decision.per_sense_scores)


class TestSchedule:
    def test_default_grid(self):
        g = EpsilonSchedule.parse("0:1:0.01")
        assert len(g) == 100
        assert g.values[0] == 0.0 and g.values[39] == 0.39 and g.values[-1] == 0.99

    def test_quarter_grid(self):
        assert EpsilonSchedule.parse("0:1:0.25").values == (0.0, 0.25, 0.5, 0.75)

    def test_single(self):
        assert EpsilonSchedule.parse("0.5").values == (0.5,)

    @pytest.mark.parametrize("values", [(), (0.5, 0.5), (0.6, 0.5), (1.0,), (-0.1,)])
    def test_invalid(self, values):
        with pytest.raises(ValueError):
            EpsilonSchedule(values)

    def test_starting_at(self):
        assert EpsilonSchedule.parse("0:1:0.25").starting_at(0.3).values == (0.5, 0.75)


class TestA0:
    def test_second_synset_closer_to_sentence_mean(self):
        task = make_task((1, 1), {"w1": (0, 1), "w2": (0.2, 1)},
                         [{"u1": (1, 0), "u2": (1, -0.2)}, {"u3": (0, 1), "u4": (0.1, 1)}])
        d = select_a0(task)
        s = scores(d)
        assert s[1] < s[2]
        assert d.chosen_sense_id == 2 and not d.tie_unresolved
        assert d.epsilon_used is None

    def test_identical_synsets_tie(self):
        task = make_task((1, 0), {"w": (1, 1)}, [{"p": (1, 2)}, {"q": (1, 2)}])
        d = select_a0(task)
        assert d.chosen_sense_id == 1 and d.tie_unresolved

    def test_synonyms_equal_sentence_words(self):
        sent = {"a": (1, 2), "b": (2, 1)}
        task = make_task((1, 0), sent, [{"c": (-1, 0.3)}, {"a": (1, 2), "b": (2, 1)}])
        d = select_a0(task)
        assert d.chosen_sense_id == 2
        assert scores(d)[2] == pytest.approx(1.0, abs=1e-12)

    def test_target_in_mean_switch(self):
        # target pulls the mean toward sense 1 only when included
        task = make_task((1, 0), {"w": (0, 1)}, [{"p": (1, 0.2)}, {"q": (0.2, 1)}])
        assert select_a0(task).chosen_sense_id == 2
        d = select_a0(task, include_target_in_sentence_mean=True)
        assert scores(d)[1] == pytest.approx(oracle.cos([1, 0.2], [0.5, 0.5]), abs=1e-12)

    def test_empty_sense_scores_sentinel(self):
        task = make_task((1, 0), {"w": (0, 1)}, [{"p": (1, 0.2)}, {}])
        assert scores(select_a0(task))[2] == -1.0


def aeps_task():
    root = math.sqrt(1 - 0.81)
    return make_task((1, 0), {"w": (1, 0.3)},
                     [{"u1": (0.9, root)}, {"u2": (0.1, math.sqrt(0.99))}])


class TestAEpsSynonyms:
    def test_filtered_sense_scores_sentinel(self):
        d = select_a_eps_synonyms(aeps_task(), [0.5])
        assert d.chosen_sense_id == 1 and d.epsilon_used == 0.5
        assert scores(d)[2] == -1.0
        assert d.diagnostics.senses[0].cand_synonyms == ("u1",)
        assert d.diagnostics.senses[1].n_cand_synonyms == 0
        args = ((("T", [1, 0]), [("w", [1, 0.3])],
                 [(1, [("u1", [0.9, math.sqrt(1 - 0.81)])]), (2, [("u2", [0.1, math.sqrt(0.99)])])]))
        assert oracle.a_eps_syn(*args, [0.5]) == (1, 0.5, False)

    def test_exhaustion_falls_back(self):
        d = select_a_eps_synonyms(aeps_task(), [0.95, 0.97])
        assert d.chosen_sense_id == 1 and d.tie_unresolved
        assert d.epsilon_used == 0.97
        assert set(scores(d).values()) == {-1.0}

    def test_tie_moves_to_next_epsilon(self):
        # at eps=0 both candidate means point along (1, 1); at 0.5 only u and m survive
        task = make_task((1, 0.1), {"w": (0.3, 1)}, [{"u": (1, 0), "v": (0, 1)}, {"m": (1, 1)}])
        tied = select_a_eps_synonyms(task, [0.0])
        assert tied.tie_unresolved and scores(tied)[1] == scores(tied)[2]
        d = select_a_eps_synonyms(task, [0.0, 0.5])
        assert d.epsilon_used == 0.5 and not d.tie_unresolved
        assert d.chosen_sense_id == 2

    def test_zero_epsilon_matches_a0_when_all_positive(self):
        rng = random.Random(3)
        for _ in range(100):
            task, *_ = random_case(rng)
            # fold every vector into the open first quadrant: all sims > 0
            folded = _fold_positive(task)
            for flag in (False, True):
                a = select_a_eps_synonyms(folded, [0.0], include_target_in_sentence_mean=flag)
                b = select_a0(folded, flag)
                assert a.chosen_sense_id == b.chosen_sense_id
                assert a.per_sense_scores == b.per_sense_scores


def _fold_positive(task):
    def fold(v):
        return WordVector(v.label, np.abs(v.components) + 0.01, v.origin)

    return DisambiguationTask(fold(task.target_vector),
                              VectorSet(fold(m) for m in task.sentence_vectors),
                              tuple(VectorSet(fold(m) for m in vs) for vs in task.sense_vector_sets),
                              task.sense_ids)


class TestAEpsSentenceSynonyms:
    def test_sentence_word_near_one_sense(self):
        task = make_task((1, 1), {"w": (1, 0.1), "x": (-1, 1)},
                         [{"p": (1, 0), "q": (0.9, 0.2)}, {"r": (0, 1)}])
        d = select_a_eps_sentence_synonyms(task, [0.5])
        assert d.chosen_sense_id == 1 and not d.tie_unresolved
        tr = d.diagnostics.senses
        assert tr[0].cand_sentence == ("w",) and tr[0].cand_synonyms == ("p", "q")
        assert tr[1].cand_sentence == ("x",)
        args = (("T", [1, 1]), [("w", [1, 0.1]), ("x", [-1, 1])],
                [(1, [("p", [1, 0]), ("q", [0.9, 0.2])]), (2, [("r", [0, 1])])])
        assert oracle.a_eps_sent_syn(*args, [0.5]) == (d.chosen_sense_id, 0.5, False)

    def test_all_filtered_out(self):
        task = make_task((1, 1), {"w": (1, 0)}, [{"p": (0, 1)}, {"q": (-1, 0.1)}])
        d = select_a_eps_sentence_synonyms(task, [0.2, 0.4])
        assert d.tie_unresolved and d.chosen_sense_id == 1 and d.epsilon_used == 0.4
        assert set(scores(d).values()) == {-1.0}

    def test_duplicated_sentence_words(self):
        task = make_task((1, 1), {"a": (1, 2), "b": (2, 1)},
                         [{"c": (-1, 0)}, {"a": (1, 2), "b": (2, 1)}])
        d = select_a_eps_sentence_synonyms(task, [0.5])
        assert d.chosen_sense_id == 2
        assert scores(d)[2] == pytest.approx(1.0, abs=1e-12)


class TestKAlgorithm:
    def test_cancelling_sets_sets(self):
        task = make_task((0.6, 0.8), {"a1": (1, 0), "a2": (0, 1), "a3": (-1, 0)},
                         [{"b1": (0, 1)}, {"c": (0.7, -0.7)}])
        d = select_k_algorithm(task, [0.5], exclude_target=True)
        assert scores(d)[1] == pytest.approx(2 / 3, abs=1e-12)
        assert d.chosen_sense_id == 1

    def test_orthogonal_synset_scores_zero(self):
        task = make_task((1, 1), {"w": (1, 0)}, [{"p": (0, 1)}, {"q": (1, 0.05)}])
        d = select_k_algorithm(task, [0.1], exclude_target=True)
        assert scores(d)[1] == 0.0

    def test_target_kept_by_default(self):
        task = make_task((1, 1), {"w": (1, 0)}, [{"p": (0, 1)}, {"q": (1, 0.05)}])
        tr = select_k_algorithm(task, [0.99]).diagnostics.senses[0]
        assert ("T", "target") in tr.near and ("T", "synset:1") in tr.near

    def test_scores_equal_proximity_module(self):
        rng = random.Random(9)
        for _ in range(50):
            task, *_ = random_case(rng)
            for eps in (0.0, 0.3, 0.8):
                d = select_k_algorithm(task, [eps])
                for (sid, sc), vs in zip(d.per_sense_scores, task.sense_vector_sets):
                    assert sc == k_tilde_proximity(vs, task.sentence_vectors, eps)
                    assert 0.0 <= sc <= len(vs) + len(task.sentence_vectors)

    def test_sentence_order_irrelevant(self):
        rng = random.Random(21)
        for _ in range(30):
            task, _, (model, inv, lemmas, ti) = random_case(rng)
            rev = tuple(reversed(lemmas))
            task2 = resolve_task(TaggedSentence(rev, len(lemmas) - 1 - ti, 1), inv, model)
            for eps in (0.1, 0.6):
                assert (select_k_algorithm(task, [eps]).per_sense_scores
                        == select_k_algorithm(task2, [eps]).per_sense_scores)


class TestMFS:
    def test_majority(self):
        assert select_mfs({1: 10, 2: 3}).chosen_sense_id == 1

    def test_tie(self):
        d = select_mfs({1: 5, 2: 5})
        assert d.chosen_sense_id == 1 and d.tie_unresolved and d.epsilon_used is None

    def test_from_gold_labels(self):
        from collections import Counter
        assert select_mfs(Counter([2, 2, 1])).chosen_sense_id == 2

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            select_mfs({1: -1, 2: 0})


SELECTORS = ["a0", "aeps-syn", "aeps-sent-syn", "k"]
ORACLES = {
    "a0": lambda args, sched: oracle.a0(*args),
    "aeps-syn": lambda args, sched: oracle.a_eps_syn(*args, sched),
    "aeps-sent-syn": lambda args, sched: oracle.a_eps_sent_syn(*args, sched),
    "k": lambda args, sched: oracle.k_algorithm(*args, sched),
}


class TestInvariants:
    @pytest.mark.parametrize("name", SELECTORS)
    def test_matches_oracle(self, name):
        rng = random.Random(hash(name) % 1000)
        sched = EpsilonSchedule.parse("0:1:0.1")
        for _ in range(100):
            task, args, _ = random_case(rng)
            d = run_selector(name, task, sched)
            assert (d.chosen_sense_id, d.epsilon_used, d.tie_unresolved) == ORACLES[name](args, sched)

    @pytest.mark.parametrize("name", SELECTORS)
    def test_deterministic(self, name):
        task, *_ = random_case(random.Random(4))
        assert run_selector(name, task) == run_selector(name, task)

    @pytest.mark.parametrize("name", SELECTORS)
    @pytest.mark.parametrize("alpha", [4.0, 0.37, 123.0])
    def test_scale_invariant(self, name, alpha):
        rng = random.Random(8)
        for _ in range(40):
            task, *_ = random_case(rng)
            a, b = run_selector(name, task), run_selector(name, task.scaled(alpha))
            assert (a.chosen_sense_id, a.epsilon_used, a.tie_unresolved) == \
                   (b.chosen_sense_id, b.epsilon_used, b.tie_unresolved)

    @pytest.mark.parametrize("name", ["aeps-syn", "aeps-sent-syn", "k"])
    def test_first_unique_epsilon_is_used(self, name):
        rng = random.Random(13)
        sched = EpsilonSchedule.parse("0:1:0.05")
        for _ in range(40):
            task, *_ = random_case(rng)
            d = run_selector(name, task, sched)
            singles = [run_selector(name, task, [e]) for e in sched]
            first = next((e for e, s in zip(sched, singles) if not s.tie_unresolved), None)
            if first is None:
                assert d.tie_unresolved and d.epsilon_used == sched.values[-1]
            else:
                assert d.epsilon_used == first and not d.tie_unresolved

    @pytest.mark.parametrize("name", ["aeps-syn", "aeps-sent-syn"])
    def test_empty_candidates_never_win_over_nonnegative(self, name):
        rng = random.Random(17)
        for _ in range(100):
            task, *_ = random_case(rng)
            d = run_selector(name, task, [0.6])
            s = scores(d)
            if s[d.chosen_sense_id] == -1.0:
                assert all(v == -1.0 for v in s.values())
