"""
Computable metrics for the topologies on affiliated block operators.

- ``srt_dist``: strong resolvent topology, via resolvents of the real and imaginary
  parts on a separating family of unit vectors
- ``set_dist``: strong exponential topology, via locally uniform distances of the
  unitary groups on the same vectors
- ``measure_dist``: τ-measure topology, via the F-norm
  ``ρ(X) = inf{ε : τ(E_{|X|}((ε, ∞))) ≤ ε}``
- ``sot_dist``: strong operator distance on bounded operators

Every metric returns a value together with a certified bound on what the finite
computation left out. The separating family is the first basis vector of each block,
weighted ``2^{-(k+1)}``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg as la

from mvnlab import linops
from mvnlab.blockvn import BlockOperator, BlockVector, FiniteBlockAlgebra
from mvnlab.exceptions import AlgebraMismatch, Unbounded
from mvnlab.linops import indicator
from mvnlab.models.reports import MetricReport, MetricRow, MetricVerdict
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("topologies")

DEFAULT_EPS = 1e-9
MEASURE_TOL = 1e-10
# tail blocks are scanned until the remaining trace mass drops below this
MEASURE_TAIL_MASS = 1e-14
DEFAULT_THRESHOLD = 1e-3
VERDICT_SLACK = 1e-3


class Estimate(NamedTuple):
    """A metric value and a bound on the truncation error; the true value lies in ``[value, value + bound]``."""

    value: float
    bound: float

    @property
    def upper(self) -> float:
        return self.value + self.bound


@dataclass(frozen=True)
class SeparatingFamily:
    """First standard basis vector ``ξ_k`` of every block ``k``, weighted ``2^{-(k+1)}``."""

    algebra: FiniteBlockAlgebra

    @staticmethod
    def weight(k: int) -> float:
        return 2.0 ** -(k + 1)

    def vector(self, k: int) -> BlockVector:
        return BlockVector.unit(self.algebra, k)

    def cutoff(self, per_term: float, eps: float) -> int:
        """Smallest ``K`` with ``per_term·Σ_{k≥K} 2^{-(k+1)} ≤ eps``."""
        if per_term <= 0.0:
            return 0
        return max(0, math.ceil(math.log2(per_term / eps)))

    def witness(self, operator: BlockOperator) -> tuple[int, int] | None:
        """
        A block ``k`` and column ``j`` with ``A·E_{j0}·ξ_k ≠ 0``.

        Matrix units move ``ξ_k`` onto every basis vector of its block, so a nonzero
        prefix block is always detected. None when the prefix vanishes.
        """
        for k, block in enumerate(operator.prefix):
            for j in range(block.shape[1]):
                if np.any(block[:, j] != 0):
                    return k, j
        return None


def _check_same(a: BlockOperator, b: BlockOperator) -> FiniteBlockAlgebra:
    if a.algebra != b.algebra:
        raise AlgebraMismatch("metric operands live over different block algebras")
    return a.algebra


def _truncation(
    family: SeparatingFamily, parts: Sequence[tuple[BlockOperator, BlockOperator]], per_term: float, eps: float
) -> tuple[int, float]:
    """Blocks to evaluate and the bound for the rest."""
    alg = family.algebra
    cutoff = family.cutoff(per_term, eps)
    count = alg.blocks_available(cutoff)
    if alg.is_finite and count >= alg.prefix_len:
        return alg.prefix_len, 0.0
    # identical tails contribute nothing past both prefixes
    starts = max(max(a.tail_start, b.tail_start) for a, b in parts)
    if all(a.formula == b.formula for a, b in parts) and count >= starts:
        return count, 0.0
    return count, per_term * 2.0**-count


def _first_column(matrix: np.ndarray) -> np.ndarray:
    return matrix[:, 0]


def _resolvent_gap(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.linalg.norm(_first_column(linops.resolvent(x)) - _first_column(linops.resolvent(y))))


def srt_dist(a: BlockOperator, b: BlockOperator, eps: float = DEFAULT_EPS) -> Estimate:
    """
    Strong resolvent distance.

    ``Σ_k 2^{-(k+1)}(‖(Re A − i)^{-1}ξ_k − (Re B − i)^{-1}ξ_k‖ + same for Im)``; each
    term is at most 4, which fixes how many blocks are summed for a given ``eps``.
    """
    alg = _check_same(a, b)
    family = SeparatingFamily(alg)
    parts = [(a.re_part(), b.re_part()), (a.im_part(), b.im_part())]
    count, bound = _truncation(family, parts, 4.0, eps)
    value = 0.0
    for k in range(count):
        value += family.weight(k) * sum(_resolvent_gap(p.block(k), q.block(k)) for p, q in parts)
    return Estimate(value, bound)


def exp_sup_distance(x: np.ndarray, y: np.ndarray, m_max: int, t_step: float) -> list[Estimate]:
    """
    ``sup_{|t| ≤ m} ‖(e^{itX} − e^{itY})ξ‖`` for ``m = 1..m_max`` and ``ξ = e_1``.

    The sup is taken on a uniform grid of spacing at most ``t_step``. The slack to
    the continuum sup is the smaller of the Lipschitz estimate
    ``(h/2)(‖Xξ‖ + ‖Yξ‖)`` and the Gronwall estimate
    ``G(e^{νh/2} − 1) + δ(h/2)e^{νh/2}`` with ``δ = ‖X − Y‖``, ``ν = min(‖X‖, ‖Y‖)``;
    the upper value is also capped by ``min(2, m·δ)``.
    """
    # every integer m is a grid point
    per_unit = math.ceil(1.0 / t_step)
    h = 1.0 / per_unit
    ts = np.arange(-m_max * per_unit, m_max * per_unit + 1) / per_unit
    xi = np.zeros(x.shape[0], dtype=np.complex128)
    xi[0] = 1.0
    gaps = np.linalg.norm(_group_orbit(x, xi, ts) - _group_orbit(y, xi, ts), axis=1)

    delta = linops.op_norm(x - y)
    nu = min(linops.op_norm(x), linops.op_norm(y))
    lipschitz = float(np.linalg.norm(x @ xi) + np.linalg.norm(y @ xi))
    out: list[Estimate] = []
    for m in range(1, m_max + 1):
        grid_sup = float(np.max(gaps[np.abs(ts) <= m + 1e-12]))
        growth = math.exp(nu * h / 2.0)
        slack = min(lipschitz * h / 2.0, grid_sup * (growth - 1.0) + delta * (h / 2.0) * growth)
        upper = min(grid_sup + slack, 2.0, m * delta)
        out.append(Estimate(grid_sup, max(0.0, upper - grid_sup)))
    return out


def _group_orbit(x: np.ndarray, xi: np.ndarray, ts: np.ndarray) -> np.ndarray:
    spectral = linops.hermitian_eig(x)
    coeffs = linops.dagger(spectral.basis) @ xi
    phases = np.exp(1j * np.outer(ts, spectral.eigenvalues))
    return (phases * coeffs) @ spectral.basis.T


def set_dist(
    a: BlockOperator, b: BlockOperator, m_max: int = 8, t_step: float = 0.01, eps: float = DEFAULT_EPS
) -> Estimate:
    """
    Strong exponential distance.

    ``Σ_{k, m≥1} 2^{-(k+1)}2^{-m} sup_{|t|≤m}‖(e^{itRe A} − e^{itRe B})ξ_k‖`` plus the
    imaginary-part analogue. Terms past ``m_max`` are bounded per block by
    ``Σ_{m>M} 2^{-m} min(2, m‖X_k − Y_k‖)``.
    """
    alg = _check_same(a, b)
    family = SeparatingFamily(alg)
    parts = [(a.re_part(), b.re_part()), (a.im_part(), b.im_part())]
    count, bound = _truncation(family, parts, 4.0, eps)
    value = 0.0
    for k in range(count):
        weight = family.weight(k)
        for p, q in parts:
            x, y = p.block(k), q.block(k)
            if np.array_equal(x, y):
                continue
            sups = exp_sup_distance(x, y, m_max, t_step)
            delta = linops.op_norm(x - y)
            value += weight * sum(2.0**-m * s.value for m, s in enumerate(sups, start=1))
            bound += weight * sum(2.0**-m * s.bound for m, s in enumerate(sups, start=1))
            bound += weight * min(2.0, delta * (m_max + 2)) * 2.0**-m_max
    return Estimate(value, bound)


def _measure_levels(x: BlockOperator) -> tuple[np.ndarray, np.ndarray, float]:
    """Singular-value levels, their trace masses, and the unscanned tail mass."""
    alg = x.algebra
    levels: list[np.ndarray] = []
    masses: list[np.ndarray] = []
    for k, block in enumerate(x.prefix):
        svals = la.svdvals(block)
        levels.append(svals)
        masses.append(np.full(svals.shape, alg.weight(k) / block.shape[0]))
    remainder = 0.0
    if alg.has_tail and not x.formula.is_zero:
        start = x.tail_start
        stop = start
        while alg.tail_mass_from(stop) >= MEASURE_TAIL_MASS:
            stop += 1
        ks = np.arange(start, stop)
        levels.append(np.abs(x.formula.values(ks)))
        masses.append(np.array([alg.weight(int(k)) for k in ks]))
        remainder = alg.tail_mass_from(stop)
    if not levels:
        return np.zeros(0), np.zeros(0), remainder
    return np.concatenate(levels), np.concatenate(masses), remainder


def measure_norm(x: BlockOperator) -> float:
    """
    ``ρ(X) = inf{ε > 0 : τ(E_{|X|}((ε, ∞))) ≤ ε}`` by bisection on ``[0, 1]``.

    Tail mass left after scanning counts as exceeding every ``ε``, so the result is
    an upper estimate by at most that mass.
    """
    levels, masses, remainder = _measure_levels(x)

    def mass_above(eps: float) -> float:
        return float(np.sum(masses[levels > eps])) + remainder

    if mass_above(0.0) <= 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > MEASURE_TOL:
        mid = 0.5 * (lo + hi)
        if mass_above(mid) <= mid:
            hi = mid
        else:
            lo = mid
    return hi


def measure_dist(a: BlockOperator, b: BlockOperator) -> float:
    """τ-measure distance ``ρ(A − B)``."""
    _check_same(a, b)
    return measure_norm(a - b)


def sot_dist(x: BlockOperator, y: BlockOperator, eps: float = DEFAULT_EPS) -> Estimate:
    """
    Strong operator distance ``Σ_k 2^{-(k+1)}‖(x − y)ξ_k‖`` on bounded operators.

    Raises:
        Unbounded: If either operand is unbounded
    """
    alg = _check_same(x, y)
    if not (x.is_bounded() and y.is_bounded()):
        raise Unbounded("strong operator distance needs bounded operands")
    family = SeparatingFamily(alg)
    per_term = 2.0 * (x.sup_norm() + y.sup_norm())
    count, bound = _truncation(family, [(x, y)], per_term, eps)
    diff = x - y
    value = 0.0
    for k in range(count):
        value += family.weight(k) * float(np.linalg.norm(_first_column(diff.block(k))))
    return Estimate(value, bound)


def atomic_seminorm(x: BlockOperator, k: int) -> float:
    """``p_k(x) = ‖x_k‖``."""
    return linops.op_norm(x.block(k))


def seminorm_dist(x: BlockOperator, y: BlockOperator, eps: float = DEFAULT_EPS) -> Estimate:
    """Metric ``Σ_k 2^{-(k+1)} min(1, p_k(x − y))`` of the atomic seminorms."""
    alg = _check_same(x, y)
    family = SeparatingFamily(alg)
    count, bound = _truncation(family, [(x, y)], 2.0, eps)
    diff = x - y
    value = 0.0
    for k in range(count):
        value += family.weight(k) * min(1.0, atomic_seminorm(diff, k))
    return Estimate(value, bound)


def ae_dist(a: BlockOperator, b: BlockOperator, vectors: Sequence[BlockVector]) -> float:
    """Largest ``‖(A − B)ξ‖`` over finitely supported vectors of the core."""
    _check_same(a, b)
    diff = a - b
    return max((diff.apply(xi).norm() for xi in vectors), default=0.0)


def tent_function(cutoff: float) -> Callable[[np.ndarray], np.ndarray]:
    """
    Continuous tent: ``λ`` on ``[−Λ, Λ]``, linear down to 0 at ``±2Λ``, 0 beyond.

    Bounded by ``Λ``; agrees with the identity on the spectral window ``[−Λ, Λ]``.
    """

    def _tent(lam: np.ndarray) -> np.ndarray:
        lam = np.asarray(lam, dtype=np.float64)
        return np.sign(lam) * np.maximum(0.0, cutoff - np.abs(np.abs(lam) - cutoff))

    return _tent


def spectral_dist(
    a: BlockOperator,
    b: BlockOperator,
    f: Callable[[np.ndarray], np.ndarray],
    f_bound: float,
    eps: float = DEFAULT_EPS,
) -> Estimate:
    """
    ``Σ_k 2^{-(k+1)}‖(f(A) − f(B))ξ_k‖`` for self-adjoint ``A``, ``B`` and a bounded Borel ``f``.

    Raises:
        NotHermitian: If a block of either operand is not Hermitian
    """
    alg = _check_same(a, b)
    family = SeparatingFamily(alg)
    count, bound = _truncation(family, [(a, b)], 2.0 * f_bound, eps)
    value = 0.0
    for k in range(count):
        gap = linops.func_calc(f, a.block(k)) - linops.func_calc(f, b.block(k))
        value += family.weight(k) * float(np.linalg.norm(_first_column(gap)))
    return Estimate(value, bound)


def projection_dist(a: BlockOperator, b: BlockOperator, lower: float, upper: float) -> Estimate:
    """:func:`spectral_dist` for the spectral projections onto ``(lower, upper)``."""
    return spectral_dist(a, b, indicator(lower, upper), 1.0)


def verdict(values: Sequence[float], threshold: float) -> MetricVerdict:
    """
    Converging iff the certified values of the last quartile decrease below ``threshold``.

    Decreasing means non-increasing up to ``VERDICT_SLACK``, relative both to the
    previous value and to ``threshold``; that absorbs bisection and rounding noise.
    A reporting convention for finite data, not a mathematical criterion.
    """
    if not values:
        return MetricVerdict.NOT_CONVERGING
    tail = values[(3 * len(values)) // 4 :] or values[-1:]
    if max(tail) >= threshold:
        return MetricVerdict.NOT_CONVERGING
    slack = VERDICT_SLACK * threshold
    if any(b > a * (1.0 + VERDICT_SLACK) + slack for a, b in zip(tail, tail[1:])):
        return MetricVerdict.NOT_CONVERGING
    return MetricVerdict.CONVERGING


def _row(
    index: int,
    operator: BlockOperator,
    limit: BlockOperator,
    eps: float,
    m_max: int,
    t_step: float,
    with_sot: bool,
) -> MetricRow:
    srt = srt_dist(operator, limit, eps)
    set_ = set_dist(operator, limit, m_max=m_max, t_step=t_step, eps=eps)
    sot = sot_dist(operator, limit, eps) if with_sot else None
    return MetricRow(
        index=index,
        srt=srt.value,
        srt_bound=srt.bound,
        set=set_.value,
        set_bound=set_.bound,
        measure=measure_dist(operator, limit),
        sot=None if sot is None else sot.value,
        sot_bound=None if sot is None else sot.bound,
    )


def convergence_report(
    sequence: Sequence[BlockOperator],
    limit: BlockOperator,
    indices: Sequence[int] | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    eps: float = DEFAULT_EPS,
    m_max: int = 8,
    t_step: float = 0.01,
    threads: int = 1,
) -> MetricReport:
    """
    Evaluate all four metrics along a sequence.

    The strong operator distance is reported only when every operator and the limit
    are bounded. Rows are evaluated concurrently when ``threads > 1`` and always
    assembled in index order.
    """
    for operator in sequence:
        _check_same(operator, limit)
    indices = list(indices) if indices is not None else list(range(1, len(sequence) + 1))
    with_sot = limit.is_bounded() and all(op.is_bounded() for op in sequence)

    def evaluate(item: tuple[int, BlockOperator]) -> MetricRow:
        index, operator = item
        return _row(index, operator, limit, eps, m_max, t_step, with_sot)

    items = list(zip(indices, sequence, strict=True))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, items))
    else:
        rows = [evaluate(item) for item in items]

    verdicts = {
        "srt": verdict([r.srt + r.srt_bound for r in rows], threshold),
        "set": verdict([r.set + r.set_bound for r in rows], threshold),
        "measure": verdict([r.measure for r in rows], threshold),
    }
    if with_sot:
        verdicts["sot"] = verdict([r.sot + r.sot_bound for r in rows], threshold)
    logger.info(
        "Convergence report",
        extra={"rows": len(rows), "threshold": threshold, "verdicts": {k: v.value for k, v in verdicts.items()}},
    )
    return MetricReport(rows=rows, verdicts=verdicts, threshold=threshold)


__all__ = [
    "DEFAULT_EPS",
    "Estimate",
    "SeparatingFamily",
    "srt_dist",
    "set_dist",
    "exp_sup_distance",
    "measure_norm",
    "measure_dist",
    "sot_dist",
    "atomic_seminorm",
    "seminorm_dist",
    "ae_dist",
    "tent_function",
    "indicator",
    "spectral_dist",
    "projection_dist",
    "verdict",
    "convergence_report",
]
