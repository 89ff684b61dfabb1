"""Word-embedding models in the word2vec text format, and cosine similarity."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

import numpy as np

log = logging.getLogger(__name__)

# Score given to any comparison involving a zero vector; it is the bottom of
# the cosine range so an empty candidate mean never wins an argmax outright.
ZERO_SIMILARITY = -1.0


class EmbeddingFormatError(ValueError):
    """Raised when a word2vec text file does not follow the format."""


@dataclass(frozen=True)
class Origin:
    """Namespace tag keeping sentence, target and synset members apart.

    ``kind`` is one of ``"sentence"``, ``"target"`` or ``"synset"``; ``sense``
    carries the 1-based sense position for synset members.
    """

    kind: str
    sense: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("sentence", "target", "synset"):
            raise ValueError(f"unknown origin kind {self.kind!r}")
        if (self.kind == "synset") != (self.sense is not None):
            raise ValueError("only synset origins carry a sense number")

    @classmethod
    def synset(cls, k: int) -> "Origin":
        return cls("synset", k)

    def __str__(self) -> str:
        return self.kind if self.sense is None else f"synset:{self.sense}"

    @classmethod
    def parse(cls, text: str) -> "Origin":
        if text.startswith("synset:"):
            return cls.synset(int(text.split(":", 1)[1]))
        return cls(text)


SENTENCE = Origin("sentence")
TARGET = Origin("target")


@dataclass(frozen=True, eq=False)
class WordVector:
    """A labelled vector drawn from an embedding model."""

    label: str
    components: np.ndarray
    origin: Origin = SENTENCE

    def __post_init__(self):
        if not self.label:
            raise ValueError("word vector label must be non-empty")
        arr = np.array(self.components, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("components must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"non-finite component in vector {self.label!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    @property
    def key(self) -> tuple[str, Origin]:
        return (self.label, self.origin)

    @property
    def dimension(self) -> int:
        return self.components.shape[0]

    def with_origin(self, origin: Origin) -> "WordVector":
        return WordVector(self.label, self.components, origin)

    def __repr__(self) -> str:
        return f"WordVector({self.label!r}, {self.components.tolist()}, {str(self.origin)!r})"


@dataclass(frozen=True)
class EmbeddingModel:
    """Immutable lemma -> vector map with a fixed dimension."""

    dimension: int
    entries: Mapping[str, np.ndarray]
    n_duplicates: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        frozen = {}
        for lemma, vec in self.entries.items():
            if not lemma:
                raise ValueError("empty lemma")
            arr = np.array(vec, dtype=np.float64)
            if arr.shape != (self.dimension,):
                raise ValueError(
                    f"vector for {lemma!r} has shape {arr.shape}, expected ({self.dimension},)"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite component in vector {lemma!r}")
            arr.setflags(write=False)
            frozen[lemma] = arr
        object.__setattr__(self, "entries", MappingProxyType(frozen))

    @classmethod
    def from_dict(cls, entries: Mapping[str, Iterable[float]]) -> "EmbeddingModel":
        entries = {k: np.asarray(v, dtype=np.float64) for k, v in entries.items()}
        if not entries:
            raise ValueError("cannot infer dimension of an empty model")
        dim = next(iter(entries.values())).shape[0]
        return cls(dim, entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, lemma: object) -> bool:
        return lemma in self.entries

    def lookup(self, lemma: str, origin: Origin = SENTENCE) -> Optional[WordVector]:
        return lookup(self, lemma, origin)

    def scaled(self, alpha: float) -> "EmbeddingModel":
        """Copy of the model with every vector multiplied by ``alpha``."""
        return EmbeddingModel(
            self.dimension, {k: alpha * v for k, v in self.entries.items()}
        )


def lookup(model: EmbeddingModel, lemma: str, origin: Origin = SENTENCE) -> Optional[WordVector]:
    """Return the vector for ``lemma`` or ``None`` when it is out of vocabulary."""
    vec = model.entries.get(lemma)
    if vec is None:
        return None
    return WordVector(lemma, vec, origin)


def _parse_header(line: str, path) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"{path}: malformed header {line.rstrip()!r}")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingFormatError(f"{path}: malformed header {line.rstrip()!r}") from None
    if dim < 1:
        raise EmbeddingFormatError(f"{path}: dimension must be >= 1, got {dim}")
    if count < 0:
        raise EmbeddingFormatError(f"{path}: negative vocabulary count {count}")
    return count, dim


def load_word2vec_text(path: Union[str, Path]) -> EmbeddingModel:
    """Load a model stored in the word2vec text format.

    The first line holds ``vocab_count dimension``; each following line is a
    lemma followed by ``dimension`` space-separated numbers. A lemma that
    occurs twice keeps its last vector and is counted in ``n_duplicates``.

    Raises:
        EmbeddingFormatError: on a malformed header, a wrong component count,
            or a non-numeric or non-finite component.
    """
    path = Path(path)
    entries: dict[str, np.ndarray] = {}
    n_duplicates = 0
    with path.open(encoding="utf-8") as fh:
        header = fh.readline()
        if not header:
            raise EmbeddingFormatError(f"{path}: empty file")
        count, dim = _parse_header(header, path)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\r\n").rstrip(" ")
            if not line:
                continue
            parts = line.split(" ")
            lemma, values = parts[0], parts[1:]
            if len(values) != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dim} components for {lemma!r}, got {len(values)}"
                )
            try:
                vec = np.array([float(x) for x in values], dtype=np.float64)
            except ValueError:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: non-numeric component for {lemma!r}"
                ) from None
            if not np.all(np.isfinite(vec)):
                raise EmbeddingFormatError(f"{path}:{lineno}: non-finite component for {lemma!r}")
            if lemma in entries:
                n_duplicates += 1
                log.warning("%s:%d: duplicate lemma %r, keeping last", path, lineno, lemma)
            entries[lemma] = vec
    if len(entries) + n_duplicates != count:
        log.warning("%s: header announces %d entries, read %d lines", path, count,
                    len(entries) + n_duplicates)
    return EmbeddingModel(dim, entries, n_duplicates)


def save_word2vec_text(model: EmbeddingModel, path: Union[str, Path]) -> None:
    """Write ``model`` in the word2vec text format.

    Components are written with ``repr`` so that loading the file back gives
    bit-identical vectors.
    """
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(model)} {model.dimension}\n")
        for lemma, vec in model.entries.items():
            fh.write(lemma + " " + " ".join(repr(float(x)) for x in vec) + "\n")


def _as_array(v) -> np.ndarray:
    if isinstance(v, WordVector):
        return v.components
    return np.asarray(v, dtype=np.float64)


def similarity_matrix(X, Y) -> np.ndarray:
    """Pairwise cosine similarities between the rows of ``X`` and ``Y``.

    Rows with zero norm get ``ZERO_SIMILARITY`` against everything. The
    result is exactly the transpose of ``similarity_matrix(Y, X)``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    if X.shape[1] != Y.shape[1]:
        raise ValueError(f"dimension mismatch: {X.shape[1]} vs {Y.shape[1]}")
    dots = (X[:, None, :] * Y[None, :, :]).sum(axis=-1)
    nx = np.sqrt((X * X).sum(axis=-1))
    ny = np.sqrt((Y * Y).sum(axis=-1))
    denom = nx[:, None] * ny[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        sims = np.clip(dots / denom, -1.0, 1.0)
    sims[denom == 0.0] = ZERO_SIMILARITY
    return sims


def similarity(u, v) -> float:
    """Cosine similarity of two vectors, clamped to [-1, 1].

    Either argument may be a :class:`WordVector` or a plain sequence. If one of
    the vectors has zero norm the result is ``ZERO_SIMILARITY`` (-1).
    """
    a, b = _as_array(u), _as_array(v)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(similarity_matrix(a, b)[0, 0])
