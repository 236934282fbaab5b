"""
Per-step index data and the v / w / W quantities of the synthesis recursion.

Step n (1 <= n <= N-1) turns a unitary U_n diagonalizing the frame operator
of the first n vectors into f_{n+1} and U_{n+1}. Which eigenvector
directions move at step n is read off from how the spectral values of rows
n and n+1 differ in multiplicity:

    g_n(x) = (count of x in row n) - (count of x in row n+1)

I_n collects the first row-n position of every value with g_n = +1, J_n the
first row-(n+1) position of every value with g_n = -1. Both have K_n
elements, and sigma_n / tau_n list I_n / J_n first, then the remaining
positions, each part ascending.

Design Decisions:
    - Values closer than tolerances.eq are one spectral value. Rows n and
      n+1 are clustered together so a value shared by both rows is counted
      consistently
    - Every factor of v, w and W is a difference of two table entries. The
      evaluator takes a source and a target table and a parameter t and
      evaluates each factor as (1-t)·source + t·target. The index data always
      comes from the source, so one routine serves direct evaluation
      (source = target), points along a lifted path (t < 1) and the
      endpoint limit (t = 1)
    - At t = 1 a target difference that vanishes is replaced by the source
      difference, which is the coefficient of (1-t), and the power is
      counted. Net powers must cancel for v, w and W alike; a net positive
      power means the limit is 0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from funtf.eigensteps import require_valid
from funtf.errors import (
    NegativeRadicandError,
    NoncancellingPowersError,
    VanishingDenominatorError,
)
from funtf.schema import DEFAULT_TOLERANCES, Tolerances

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from funtf.eigensteps import EigenstepsTable

logger = logging.getLogger(__name__)

Position = tuple[int, int]


# =============================================================================
# Index data
# =============================================================================


@dataclass(frozen=True)
class StepIndexData:
    """
    Multiplicity bookkeeping for step n.

    Attributes:
        n: Step index, 1 <= n <= N-1
        d: Dimension
        gamma_n: Spectral value -> multiplicity in row n
        gamma_n1: Spectral value -> multiplicity in row n+1
        g_n: Spectral value -> gamma_n - gamma_n1, only nonzero entries
        I_n: Row-n positions that move, ascending
        J_n: Row-(n+1) positions that move, ascending
        sigma_n: I_n followed by the rest of range(d), each ascending
        tau_n: J_n followed by the rest of range(d), each ascending
        blocks: Row-n positions grouped by spectral value; V_n is
            block-diagonal with respect to these groups
    """

    n: int
    d: int
    gamma_n: dict[float, int]
    gamma_n1: dict[float, int]
    g_n: dict[float, int]
    I_n: tuple[int, ...]
    J_n: tuple[int, ...]
    sigma_n: tuple[int, ...]
    tau_n: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def K_n(self) -> int:
        """Common size of I_n and J_n."""
        return len(self.I_n)

    @property
    def P_n(self) -> NDArray[np.float64]:
        """Permutation matrix with P[sigma_n[k], k] = 1."""
        return _permutation_matrix(self.sigma_n)

    @property
    def Q_n(self) -> NDArray[np.float64]:
        """Permutation matrix with Q[tau_n[k], k] = 1."""
        return _permutation_matrix(self.tau_n)


def _permutation_matrix(order: tuple[int, ...]) -> NDArray[np.float64]:
    size = len(order)
    matrix = np.zeros((size, size))
    matrix[list(order), np.arange(size)] = 1.0
    return matrix


def _cluster(
    current: NDArray[np.float64],
    following: NDArray[np.float64],
    eq: float,
) -> tuple[list[int], list[int], list[float]]:
    """Cluster ids for each entry of both rows, plus each cluster's mean value."""
    tagged = sorted(
        [(float(x), 0, i) for i, x in enumerate(current)]
        + [(float(x), 1, i) for i, x in enumerate(following)],
        key=lambda item: -item[0],
    )
    ids = ([0] * len(current), [0] * len(following))
    members: list[list[float]] = []
    previous: float | None = None
    for value, row, position in tagged:
        if previous is None or previous - value > eq:
            members.append([])
        members[-1].append(value)
        ids[row][position] = len(members) - 1
        previous = value
    return ids[0], ids[1], [float(np.mean(group)) for group in members]


def _step_index_data(table: EigenstepsTable, n: int, eq: float) -> StepIndexData:
    d = table.d
    current_ids, following_ids, means = _cluster(table.row(n), table.row(n + 1), eq)
    cluster_count = len(means)

    gamma_n = [current_ids.count(c) for c in range(cluster_count)]
    gamma_n1 = [following_ids.count(c) for c in range(cluster_count)]
    g = [a - b for a, b in zip(gamma_n, gamma_n1, strict=True)]

    I_n = tuple(sorted(current_ids.index(c) for c in range(cluster_count) if g[c] == 1))
    J_n = tuple(sorted(following_ids.index(c) for c in range(cluster_count) if g[c] == -1))
    sigma = I_n + tuple(i for i in range(d) if i not in I_n)
    tau = J_n + tuple(j for j in range(d) if j not in J_n)

    blocks: dict[int, list[int]] = {}
    for position, cluster in enumerate(current_ids):
        blocks.setdefault(cluster, []).append(position)

    return StepIndexData(
        n=n,
        d=d,
        gamma_n={means[c]: gamma_n[c] for c in range(cluster_count) if gamma_n[c]},
        gamma_n1={means[c]: gamma_n1[c] for c in range(cluster_count) if gamma_n1[c]},
        g_n={means[c]: g[c] for c in range(cluster_count) if g[c]},
        I_n=I_n,
        J_n=J_n,
        sigma_n=sigma,
        tau_n=tau,
        blocks=tuple(tuple(b) for b in sorted(blocks.values())),
    )


def step_index_data(
    table: EigenstepsTable,
    n: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> StepIndexData:
    """
    Index data of step n of a valid table.

    Raises:
        InvalidTableError: If the table does not validate
        ValueError: If n is outside 1..N-1
    """
    require_valid(table, tolerances)
    if not 1 <= n <= table.N - 1:
        msg = f"step must lie in 1..{table.N - 1}, got {n}"
        raise ValueError(msg)
    return _step_index_data(table, n, tolerances.eq)


def all_index_data(
    table: EigenstepsTable,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[StepIndexData, ...]:
    """Index data for steps 1..N-1 of an already validated table."""
    return tuple(_step_index_data(table, n, tolerances.eq) for n in range(1, table.N))


# =============================================================================
# Evaluation
# =============================================================================


@dataclass(frozen=True)
class LiftEvaluation:
    """
    v_n, w_n and W_n for one step.

    v and w are indexed like I_n and J_n (k-th entry belongs to I_n[k] or
    J_n[k]); ``v_full`` / ``w_full`` spread them over range(d). The order
    arrays hold the net power of (1-t) of each quantity at the endpoint
    limit; they are zero away from it.
    """

    n: int
    d: int
    I_n: tuple[int, ...]
    J_n: tuple[int, ...]
    v: NDArray[np.float64]
    w: NDArray[np.float64]
    W: NDArray[np.float64]
    v_order: NDArray[np.float64]
    w_order: NDArray[np.float64]
    W_order: NDArray[np.float64]

    @property
    def v_full(self) -> NDArray[np.float64]:
        """v placed at the positions I_n of a length-d vector."""
        full = np.zeros(self.d)
        full[list(self.I_n)] = self.v
        return full

    @property
    def w_full(self) -> NDArray[np.float64]:
        """w placed at the positions J_n of a length-d vector."""
        full = np.zeros(self.d)
        full[list(self.J_n)] = self.w
        return full

    @property
    def limit_engaged(self) -> bool:
        """True when some factor vanished and was replaced by its (1-t) coefficient."""
        return bool(np.any(self.v_order) or np.any(self.w_order) or np.any(self.W_order))


@dataclass(frozen=True)
class _Factors:
    """(1-t)-expansion of table differences at a fixed t."""

    source: NDArray[np.float64]
    target: NDArray[np.float64]
    t: float
    eq: float
    step: int

    def value(self, a: Position, b: Position) -> tuple[float, int]:
        """Leading coefficient and (1-t)-power of entry a minus entry b."""
        lam = float(self.source[a] - self.source[b])
        if self.t < 1.0:
            if self.t == 0.0:
                return lam, 0
            mu = float(self.target[a] - self.target[b])
            return (1.0 - self.t) * lam + self.t * mu, 0
        mu = float(self.target[a] - self.target[b])
        if abs(mu) > self.eq:
            return mu, 0
        return lam, 1

    def denominator(self, a: Position, b: Position, quantity: str) -> tuple[float, int]:
        """Like value, but a vanishing result is an error."""
        coefficient, order = self.value(a, b)
        lam = float(self.source[a] - self.source[b])
        mu = float(self.target[a] - self.target[b])
        vanishing = abs(lam) <= self.eq if self.t == 0.0 else abs(lam) <= self.eq and abs(mu) <= self.eq
        if vanishing or abs(coefficient) == 0.0:
            raise VanishingDenominatorError(step=self.step, quantity=quantity, value=coefficient)
        return coefficient, order


def _radicand_root(
    numerator: float,
    denominator: float,
    order: int,
    factors: _Factors,
    quantity: str,
    radicand_tol: float,
) -> tuple[float, float]:
    """Square-root coefficient and half-power of a radicand with known order."""
    if order < 0:
        raise NoncancellingPowersError(step=factors.step, quantity=quantity, order=order)
    radicand = numerator / denominator
    if radicand < -radicand_tol:
        raise NegativeRadicandError(step=factors.step, quantity=quantity, value=radicand)
    return float(np.sqrt(max(radicand, 0.0))), order / 2


def evaluate_step(
    source: EigenstepsTable,
    target: EigenstepsTable,
    data: StepIndexData,
    t: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> LiftEvaluation:
    """
    v, w and W of one step over (1-t)·source + t·target.

    ``data`` must be the index data of ``source``; no validation happens here.
    """
    n = data.n
    factors = _Factors(source.values, target.values, t, tolerances.eq, n)
    I_n, J_n = data.I_n, data.J_n
    K = len(I_n)

    v_coef, v_order = np.zeros(K), np.zeros(K)
    for k, i in enumerate(I_n):
        numerator, order = -1.0, 0
        for j in J_n:
            value, power = factors.value((n, i), (n + 1, j))
            numerator *= value
            order += power
        denominator = 1.0
        for other in I_n:
            if other != i:
                value, power = factors.denominator((n, i), (n, other), f"v[{i}]")
                denominator *= value
                order -= power
        v_coef[k], v_order[k] = _radicand_root(
            numerator, denominator, order, factors, f"v[{i}]", tolerances.radicand
        )

    w_coef, w_order = np.zeros(K), np.zeros(K)
    for l, j in enumerate(J_n):
        numerator, order = 1.0, 0
        for i in I_n:
            value, power = factors.value((n + 1, j), (n, i))
            numerator *= value
            order += power
        denominator = 1.0
        for other in J_n:
            if other != j:
                value, power = factors.denominator((n + 1, j), (n + 1, other), f"w[{j}]")
                denominator *= value
                order -= power
        w_coef[l], w_order[l] = _radicand_root(
            numerator, denominator, order, factors, f"w[{j}]", tolerances.radicand
        )

    W = np.zeros((K, K))
    W_order = np.zeros((K, K))
    for k, i in enumerate(I_n):
        for l, j in enumerate(J_n):
            gap, power = factors.denominator((n + 1, j), (n, i), f"W[{i},{j}]")
            order = v_order[k] + w_order[l] - power
            if order < 0:
                raise NoncancellingPowersError(step=n, quantity=f"W[{i},{j}]", order=order)
            W_order[k, l] = order
            if order == 0:
                W[k, l] = v_coef[k] * w_coef[l] / gap

    evaluation = LiftEvaluation(
        n=n,
        d=data.d,
        I_n=I_n,
        J_n=J_n,
        v=np.where(v_order == 0, v_coef, 0.0),
        w=np.where(w_order == 0, w_coef, 0.0),
        W=W,
        v_order=v_order,
        w_order=w_order,
        W_order=W_order,
    )
    if evaluation.limit_engaged:
        logger.debug("step %d: endpoint limit engaged", n)
    return evaluation


def eval_vwW(
    table: EigenstepsTable,
    n: int,
    data: StepIndexData | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> LiftEvaluation:
    """
    Evaluate v_n, w_n and W_n directly from one table.

    Args:
        table: Valid eigensteps table
        n: Step, 1 <= n <= N-1
        data: Index data to use (defaults to the table's own)
        tolerances: ``eq`` for clustering and vanishing tests, ``radicand``
            for the accepted negative slack before clamping

    Raises:
        VanishingDenominatorError: If the index data does not fit the table
            (use eval_vwW_limit for boundary endpoints)
        NegativeRadicandError: If a square root argument is clearly negative
    """
    if data is None:
        data = step_index_data(table, n, tolerances)
    return evaluate_step(table, table, data, 0.0, tolerances)


def eval_vwW_limit(
    lambda_table: EigenstepsTable,
    mu_table: EigenstepsTable,
    n: int,
    t: float = 1.0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> LiftEvaluation:
    """
    Evaluate v_n, w_n and W_n along (1-t)·lambda + t·mu.

    The index data is that of lambda, which should be interior. At t = 1
    factors that vanish on mu contribute their lambda difference and one
    power of (1-t); the powers must cancel.

    Raises:
        NoncancellingPowersError: If a quantity would blow up at the endpoint
        VanishingDenominatorError: If lambda itself has a vanishing factor
    """
    data = step_index_data(lambda_table, n, tolerances)
    require_valid(mu_table, tolerances)
    return evaluate_step(lambda_table, mu_table, data, t, tolerances)
