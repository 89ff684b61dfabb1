"""Word-sense disambiguation by epsilon-proximity of word-vector contexts."""

from importlib import resources
from pathlib import Path

from .algorithms import (
    ALGORITHMS,
    DisambiguationTask,
    EpsilonSchedule,
    FilterTrace,
    SenseDecision,
    SenseTrace,
    run_selector,
    select_a0,
    select_a_eps_sentence_synonyms,
    select_a_eps_synonyms,
    select_k_algorithm,
    select_mfs,
)
from .embeddings import (
    SENTENCE,
    TARGET,
    EmbeddingFormatError,
    EmbeddingModel,
    Origin,
    WordVector,
    load_word2vec_text,
    lookup,
    save_word2vec_text,
    similarity,
)
from .evaluation import (
    EvaluationReport,
    ReportRow,
    SelectorOptions,
    best_epsilon_summary,
    distribution_summary,
    evaluate_fixed_epsilon,
    export_csv,
    read_csv,
    sweep,
)
from .lexicon import (
    LexiconError,
    SenseInventory,
    Synset,
    TaggedSentence,
    UnresolvableTarget,
    load_dataset,
    load_inventory,
    resolve_task,
)
from .proximity import (
    Comparator,
    ProximityResult,
    VectorSet,
    average_similarity,
    distant_set,
    euclidean_hausdorff,
    k_proximity,
    k_tilde_proximity,
    near_set,
    proximity,
)

__version__ = "0.1.0"


def fixture_paths() -> dict:
    """Paths of the bundled miniature model, inventory and dataset."""
    base = Path(str(resources.files(__name__) / "data"))
    return {
        "model": base / "mini_model.txt",
        "inventory": base / "mini_inventory.json",
        "dataset": base / "mini_dataset.jsonl",
    }
