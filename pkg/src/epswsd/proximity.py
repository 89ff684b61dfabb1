"""Epsilon-proximity between finite sets of word vectors.

Two contexts are compared by splitting their union into "near" elements
(those with a cross-set partner whose cosine similarity passes the threshold)
and "distant" ones. The K and K-tilde scores are ratios of those counts.
A Euclidean Hausdorff distance is kept alongside as the reference notion the
near/distant split is modelled on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Union

import numpy as np

from .embeddings import Origin, WordVector, similarity, similarity_matrix

Key = tuple[str, Origin]


class Comparator(str, Enum):
    """How a similarity is tested against the threshold."""

    STRICT = "strict"  # sim > eps
    INCLUSIVE = "inclusive"  # sim >= eps

    def passes(self, sims, eps: float):
        return sims > eps if self is Comparator.STRICT else sims >= eps


ComparatorLike = Union[Comparator, str]


class VectorSet:
    """A finite set of word vectors keyed by ``(label, origin)``.

    Members keep their insertion order. All members share one dimension and
    no key may repeat.
    """

    __slots__ = ("_members", "_keys", "_matrix")

    def __init__(self, members: Iterable[WordVector] = ()):
        self._members = tuple(members)
        self._keys = tuple(m.key for m in self._members)
        if len(set(self._keys)) != len(self._keys):
            seen, dup = set(), None
            for k in self._keys:
                if k in seen:
                    dup = k
                    break
                seen.add(k)
            raise ValueError(f"duplicate member {dup[0]!r} ({dup[1]})")
        dims = {m.dimension for m in self._members}
        if len(dims) > 1:
            raise ValueError(f"members have mixed dimensions {sorted(dims)}")
        if self._members:
            self._matrix = np.stack([m.components for m in self._members])
            self._matrix.setflags(write=False)
        else:
            self._matrix = None

    @classmethod
    def from_mapping(cls, vectors: dict, origin: Origin) -> "VectorSet":
        """Build a set from ``{label: components}`` with a shared origin."""
        return cls(WordVector(label, comps, origin) for label, comps in vectors.items())

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[WordVector]:
        return iter(self._members)

    def __getitem__(self, i) -> WordVector:
        return self._members[i]

    def __repr__(self) -> str:
        return f"VectorSet({list(self._members)!r})"

    @property
    def keys(self) -> tuple[Key, ...]:
        return self._keys

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(k[0] for k in self._keys)

    @property
    def dimension(self):
        return None if self._matrix is None else self._matrix.shape[1]

    @property
    def matrix(self) -> np.ndarray:
        """Members stacked row-wise, shape ``(len(self), dimension)``."""
        if self._matrix is None:
            raise ValueError("empty vector set has no matrix")
        return self._matrix

    def mean(self) -> np.ndarray:
        return self.matrix.mean(axis=0)

    def without(self, predicate) -> "VectorSet":
        """Copy of the set dropping every member for which ``predicate`` holds."""
        return VectorSet(m for m in self._members if not predicate(m))


@dataclass(frozen=True)
class ProximityResult:
    epsilon: float
    near: frozenset
    distant: frozenset
    k_value: float
    k_tilde_value: float


def _check_pair(V1: VectorSet, V2: VectorSet) -> None:
    if len(V1) == 0 or len(V2) == 0:
        raise ValueError("proximity is undefined for an empty vector set")
    if V1.dimension != V2.dimension:
        raise ValueError(f"dimension mismatch: {V1.dimension} vs {V2.dimension}")


def _near_mask(V1: VectorSet, V2: VectorSet, eps: float, comparator: ComparatorLike):
    _check_pair(V1, V2)
    passed = Comparator(comparator).passes(similarity_matrix(V1.matrix, V2.matrix), eps)
    return passed.any(axis=1), passed.any(axis=0)


def near_set(V1: VectorSet, V2: VectorSet, eps: float,
             comparator: ComparatorLike = Comparator.STRICT) -> frozenset:
    """Keys of members of either set having a partner in the other set with
    similarity beyond ``eps``.
    """
    rows, cols = _near_mask(V1, V2, eps, comparator)
    near = {k for k, hit in zip(V1.keys, rows) if hit}
    near.update(k for k, hit in zip(V2.keys, cols) if hit)
    return frozenset(near)


def _union(V1: VectorSet, V2: VectorSet) -> frozenset:
    return frozenset(V1.keys) | frozenset(V2.keys)


def distant_set(V1: VectorSet, V2: VectorSet, eps: float,
                comparator: ComparatorLike = Comparator.STRICT) -> frozenset:
    """Complement of :func:`near_set` within the union of both sets."""
    return _union(V1, V2) - near_set(V1, V2, eps, comparator)


def proximity(V1: VectorSet, V2: VectorSet, eps: float,
              comparator: ComparatorLike = Comparator.STRICT) -> ProximityResult:
    """Near/distant split together with both proximity scores."""
    near = near_set(V1, V2, eps, comparator)
    union = _union(V1, V2)
    distant = union - near
    return ProximityResult(
        epsilon=eps,
        near=near,
        distant=distant,
        k_value=float(Fraction(len(near), len(union))),
        k_tilde_value=float(Fraction(len(near), 1 + len(distant))),
    )


def k_proximity(V1: VectorSet, V2: VectorSet, eps: float,
                comparator: ComparatorLike = Comparator.STRICT) -> float:
    """Share of the union that is near: ``|C| / |V1 u V2|``, in [0, 1]."""
    return proximity(V1, V2, eps, comparator).k_value


def k_tilde_proximity(V1: VectorSet, V2: VectorSet, eps: float,
                      comparator: ComparatorLike = Comparator.STRICT) -> float:
    """Ratio of near to distant elements: ``|C| / (1 + |D|)``."""
    return proximity(V1, V2, eps, comparator).k_tilde_value


def average_similarity(V1: VectorSet, V2: VectorSet) -> float:
    """Cosine similarity of the two mean vectors (-1 if a mean is zero)."""
    _check_pair(V1, V2)
    return similarity(V1.mean(), V2.mean())


def _points(P) -> np.ndarray:
    arr = np.asarray(P, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("expected a non-empty (n, d) array of points")
    return arr


def euclidean_hausdorff(A, B) -> float:
    """Hausdorff distance between two finite point sets in R^d.

    ``A`` and ``B`` are ``(n, d)`` arrays; 1-d input is read as ``n`` points
    on the line.
    """
    A, B = _points(A), _points(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    d = np.sqrt(((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=-1))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def dilatation_restrictions(A, B, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Boolean masks of ``A & (B + eps)`` and ``B & (A + eps)``.

    ``X + eps`` is the union of closed eps-balls around the points of X.
    """
    A, B = _points(A), _points(B)
    d = np.sqrt(((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=-1))
    within = d <= eps
    return within.any(axis=1), within.any(axis=0)
