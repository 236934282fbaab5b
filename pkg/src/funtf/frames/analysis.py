"""
Structural analysis of frames: correlation network, orthodecomposability, spark.

A frame is orthodecomposable (OD) when it splits into two nonempty mutually
orthogonal pieces, which happens exactly when its correlation network (an
edge wherever <f_i, f_j> != 0) is disconnected.

Design Decisions:
    - Exact zeros do not survive floating point, so edges use an absolute
      threshold (tolerances.edge) and paths are judged by od_margin, the
      threshold-free bottleneck of a maximum spanning tree
    - spark enumerates subsets in increasing size and lexicographic order,
      so the reported witness is deterministic
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from funtf.errors import FrameIsODError, NotODError, TooLargeError
from funtf.frames.frame import Frame, require_funtf
from funtf.schema import DEFAULT_TOLERANCES, Tolerances

if TYPE_CHECKING:
    from numpy.typing import NDArray

DEFAULT_SPARK_BUDGET = 5_000_000
SPARK_BATCH = 4096


# =============================================================================
# Union-find
# =============================================================================


class DisjointSet:
    """Union-find over range(size) with path halving and union by size."""

    def __init__(self, size: int) -> None:
        self._parent = list(range(size))
        self._size = [1] * size
        self.components = size

    def find(self, item: int) -> int:
        """Representative of item's set."""
        parent = self._parent
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False if they were already joined."""
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        if self._size[root_a] < self._size[root_b]:
            root_a, root_b = root_b, root_a
        self._parent[root_b] = root_a
        self._size[root_a] += self._size[root_b]
        self.components -= 1
        return True


# =============================================================================
# Correlation network
# =============================================================================


@dataclass(frozen=True)
class CorrelationGraph:
    """
    Weighted correlation network of a frame.

    Attributes:
        vertex_count: N
        edges: (i, j) with i < j mapped to |<f_i, f_j>|, for weights above eps
        eps: Threshold used to decide which pairs are edges
    """

    vertex_count: int
    edges: dict[tuple[int, int], float] = field(default_factory=dict)
    eps: float = 0.0

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each sorted, ordered by smallest member."""
        forest = DisjointSet(self.vertex_count)
        for i, j in self.edges:
            forest.union(i, j)
        groups: dict[int, list[int]] = {}
        for vertex in range(self.vertex_count):
            groups.setdefault(forest.find(vertex), []).append(vertex)
        return sorted((tuple(members) for members in groups.values()), key=lambda c: c[0])

    @property
    def connected(self) -> bool:
        """True when there is a single component."""
        return len(self.components()) <= 1


def _abs_gram(frame: Frame) -> NDArray[np.float64]:
    return np.abs(frame.gram())


def correlation_graph(
    frame: Frame,
    eps: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> CorrelationGraph:
    """Edges at every pair with |<f_i, f_j>| > eps (default tolerances.edge)."""
    eps = tolerances.edge if eps is None else eps
    weights = _abs_gram(frame)
    rows, cols = np.triu_indices(frame.N, k=1)
    mask = weights[rows, cols] > eps
    edges = {
        (int(i), int(j)): float(weights[i, j])
        for i, j in zip(rows[mask], cols[mask], strict=True)
    }
    return CorrelationGraph(vertex_count=frame.N, edges=edges, eps=eps)


def od_components(
    frame: Frame,
    eps: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[tuple[int, ...]]:
    """Maximal NOD blocks: the connected components of the correlation network."""
    return correlation_graph(frame, eps, tolerances).components()


def is_od(
    frame: Frame,
    eps: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """True iff the correlation network is disconnected."""
    return not correlation_graph(frame, eps, tolerances).connected


def od_margin(frame: Frame) -> float:
    """
    Bottleneck of a maximum spanning tree of the correlation weights.

    This is the largest tau for which the edges |<f_i, f_j>| > tau still
    connect every vertex (approached from below). It is 0 exactly when some
    split of the frame is orthogonal, and inf for a single vector.
    """
    N = frame.N
    if N == 1:
        return math.inf
    weights = _abs_gram(frame)
    rows, cols = np.triu_indices(N, k=1)
    pair_weights = weights[rows, cols]
    order = np.argsort(-pair_weights, kind="stable")

    forest = DisjointSet(N)
    bottleneck = math.inf
    for index in order:
        if forest.union(int(rows[index]), int(cols[index])):
            bottleneck = float(pair_weights[index])
            if forest.components == 1:
                break
    return bottleneck


# =============================================================================
# Spark
# =============================================================================


@dataclass(frozen=True)
class SparkReport:
    """
    Size of the smallest linearly dependent subset.

    Attributes:
        spark: Smallest dependent subset size, N + 1 if every subset is independent
        witness: Lexicographically first dependent subset of that size (0-based)
        full_spark: spark == d + 1
    """

    spark: int
    witness: tuple[int, ...]
    full_spark: bool


def _first_dependent(
    matrix: NDArray[np.generic],
    size: int,
    tol_rank: float,
) -> tuple[int, ...] | None:
    subsets = itertools.combinations(range(matrix.shape[1]), size)
    columns = matrix.T
    while batch := list(itertools.islice(subsets, SPARK_BATCH)):
        indices = np.array(batch)
        stacked = np.swapaxes(columns[indices], 1, 2)
        singular = np.linalg.svd(stacked, compute_uv=False)
        largest, smallest = singular[:, 0], singular[:, -1]
        dependent = (smallest < tol_rank * largest) | (largest == 0)
        hits = np.flatnonzero(dependent)
        if hits.size:
            return tuple(int(i) for i in batch[hits[0]])
    return None


def spark_enumeration_size(N: int, d: int) -> int:
    """Subsets spark may test: every size from 1 to min(N, d)."""
    return sum(math.comb(N, size) for size in range(1, min(N, d) + 1))


def require_spark_budget(N: int, d: int, budget: int) -> None:
    """
    Raises:
        TooLargeError: If the spark enumeration for (N, d) exceeds ``budget``
    """
    required = spark_enumeration_size(N, d)
    if required > budget:
        raise TooLargeError(required=required, budget=budget)


def spark(
    frame: Frame,
    tol_rank: float | None = None,
    budget: int = DEFAULT_SPARK_BUDGET,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SparkReport:
    """
    Brute-force spark.

    Subsets of size 1..min(N, d) are tested by a relative singular value
    cutoff; any d + 1 vectors are dependent, so enumeration stops there.

    Raises:
        TooLargeError: If the subsets of every size up to min(N, d) exceed ``budget``
    """
    tol_rank = tolerances.rank if tol_rank is None else tol_rank
    d, N = frame.shape
    largest_size = min(N, d)
    require_spark_budget(N, d, budget)

    for size in range(1, largest_size + 1):
        witness = _first_dependent(frame.matrix, size, tol_rank)
        if witness is not None:
            return SparkReport(spark=size, witness=witness, full_spark=size == d + 1)

    if N > d:
        return SparkReport(spark=d + 1, witness=tuple(range(d + 1)), full_spark=True)
    return SparkReport(spark=N + 1, witness=(), full_spark=N + 1 == d + 1)


# =============================================================================
# Reordering and perturbation
# =============================================================================


def nod_reorder(
    frame: Frame,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[int, ...]:
    """
    Permutation whose first d columns form a NOD basis.

    Greedy: start from f_1, then repeatedly take the first unused vector that
    lies neither in the span of the chosen ones nor in its orthogonal
    complement. Remaining indices follow in increasing order.

    Raises:
        FrameIsODError: If the greedy step gets stuck, which happens exactly
            when the frame is OD
    """
    matrix = frame.matrix
    d, N = frame.shape
    tol = tolerances.edge
    chosen = [0]
    basis = (matrix[:, 0] / np.linalg.norm(matrix[:, 0]))[:, np.newaxis]

    while len(chosen) < d:
        for n in range(N):
            if n in chosen:
                continue
            coefficients = basis.conj().T @ matrix[:, n]
            residual = matrix[:, n] - basis @ coefficients
            residual_norm = float(np.linalg.norm(residual))
            if residual_norm > tol and float(np.linalg.norm(coefficients)) > tol:
                chosen.append(n)
                basis = np.hstack([basis, (residual / residual_norm)[:, np.newaxis]])
                break
        else:
            raise FrameIsODError(
                components=[list(c) for c in od_components(frame, tolerances=tolerances)]
            )

    rest = [n for n in range(N) if n not in chosen]
    return tuple(chosen + rest)


def _pick(component: tuple[int, ...], touched: set[int]) -> int:
    for index in component:
        if index not in touched:
            return index
    return component[0]


def od_perturb(
    frame: Frame,
    delta: float,
    rng: np.random.Generator | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Frame:
    """
    Move an OD FUNTF to a nearby NOD FUNTF.

    Vectors from different maximal NOD blocks are orthogonal, so one vector
    from each of two blocks forms an orthonormal pair; rotating the pair by
    ``delta`` in its plane keeps the frame operator and joins the blocks.
    This repeats until one block remains.

    Args:
        frame: OD FUNTF
        delta: Rotation angle in radians; 0 returns the frame unchanged
        rng: When given, each rotation gets a random sign
        tolerances: ``edge`` decides block membership

    Raises:
        NotFUNTFError: If the frame is not a FUNTF
        NotODError: If the frame is already NOD
        FrameIsODError: If no pair rotation can join the blocks (N = d)
    """
    require_funtf(frame)
    if delta == 0:
        return frame
    components = od_components(frame, tolerances=tolerances)
    if len(components) == 1:
        raise NotODError()

    matrix = frame.matrix.copy()
    touched: set[int] = set()
    for _ in range(frame.N):
        if len(components) == 1:
            return Frame(matrix, frame.field_tag)
        first = components[0]
        partners = [c for c in components[1:] if len(first) > 1 or len(c) > 1]
        if not partners:
            break
        second = partners[0]
        p, q = _pick(first, touched), _pick(second, touched)
        angle = delta if rng is None else delta * float(rng.choice([-1.0, 1.0]))
        a, b = matrix[:, p].copy(), matrix[:, q].copy()
        matrix[:, p] = np.cos(angle) * a + np.sin(angle) * b
        matrix[:, q] = -np.sin(angle) * a + np.cos(angle) * b
        touched.update((p, q))
        components = od_components(Frame(matrix, frame.field_tag), tolerances=tolerances)

    if len(components) == 1:
        return Frame(matrix, frame.field_tag)
    raise FrameIsODError(
        message="Pair rotations cannot join the remaining orthogonal blocks",
        components=[list(c) for c in components],
    )
