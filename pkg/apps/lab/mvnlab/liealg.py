"""
Lie algebras of closed unitary subgroups in the block model.

- Subgroup membership of bounded unitaries for four bundled subgroup kinds
- ``Lie(G)`` membership of skew-adjoint generators, sampled over a grid of times
- Trotter and Nelson product formulas, dense on the prefix and exact on the tail
- Closure of ``Lie(G)`` under sums, real multiples and brackets
- Lie homomorphisms induced by blockwise morphisms
- Local (non-)injectivity of the exponential map
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg as la

from mvnlab import linops
from mvnlab.blockvn import BlockOperator, BlockVector, FiniteBlockAlgebra, TailRule
from mvnlab.exceptions import NotHermitian, PreconditionFailed, Unbounded
from mvnlab.families import random_skew_hermitian, with_norm
from mvnlab.grammar import GROWTH_TOL, Formula
from mvnlab.models.reports import PropertyReport
from mvnlab.morphisms import MorphismDescriptor, validate
from mvnlab.topologies import srt_dist
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("liealg")

DEFAULT_T_SAMPLES: tuple[float, ...] = (
    1.0,
    -1.0,
    0.5,
    -0.5,
    0.25,
    -0.25,
    math.pi / 8,
    -math.pi / 8,
    math.e / 3,
    -math.e / 3,
)
DEFAULT_ALPHAS: tuple[float, ...] = (-1.0, 2.5)
GROUP_TOL = 1e-8
HOM_EXP_TOL = 1e-9
HOM_BRACKET_TOL = 1e-10
TAIL_SAMPLE_WINDOW = 64


class SubgroupKind(str, Enum):
    FULL_UNITARY = "FullUnitary"
    COMMUTANT_FIXED = "CommutantFixed"
    BLOCK_DETERMINANT_ONE = "BlockDeterminantOne"
    DIAGONAL_UNITARIES = "DiagonalUnitaries"


@dataclass(frozen=True, eq=False)
class SubgroupSpec:
    """
    A strongly closed subgroup of the unitary group of a block algebra.

    Attributes:
        kind: Which subgroup
        fixed: Bounded operators whose commutant is taken (``CommutantFixed`` only)
        tol: Membership tolerance
    """

    kind: SubgroupKind
    fixed: tuple[BlockOperator, ...] = field(default=())
    tol: float = GROUP_TOL

    def __post_init__(self) -> None:
        if self.kind is SubgroupKind.COMMUTANT_FIXED and not self.fixed:
            raise PreconditionFailed("CommutantFixed needs at least one fixed operator")
        for s in self.fixed:
            if not s.is_bounded():
                raise Unbounded("commutant generators must be bounded")

    @classmethod
    def full_unitary(cls, tol: float = GROUP_TOL) -> SubgroupSpec:
        return cls(SubgroupKind.FULL_UNITARY, tol=tol)

    @classmethod
    def commutant(cls, fixed: Sequence[BlockOperator], tol: float = GROUP_TOL) -> SubgroupSpec:
        return cls(SubgroupKind.COMMUTANT_FIXED, fixed=tuple(fixed), tol=tol)

    @classmethod
    def determinant_one(cls, tol: float = GROUP_TOL) -> SubgroupSpec:
        return cls(SubgroupKind.BLOCK_DETERMINANT_ONE, tol=tol)

    @classmethod
    def diagonal(cls, tol: float = GROUP_TOL) -> SubgroupSpec:
        return cls(SubgroupKind.DIAGONAL_UNITARIES, tol=tol)


def default_commutant(algebra: FiniteBlockAlgebra) -> SubgroupSpec:
    """Commutant of the projections onto the first basis vector of every prefix block."""
    blocks = []
    for n in algebra.shape:
        block = np.zeros((n, n), dtype=np.complex128)
        block[0, 0] = 1.0
        blocks.append(block)
    return SubgroupSpec.commutant([BlockOperator.from_blocks(algebra, blocks)])


def subgroup_spec(kind: SubgroupKind | str, algebra: FiniteBlockAlgebra, tol: float = GROUP_TOL) -> SubgroupSpec:
    """Bundled spec of the given kind; ``CommutantFixed`` uses :func:`default_commutant`."""
    kind = SubgroupKind(kind)
    if kind is SubgroupKind.COMMUTANT_FIXED:
        return SubgroupSpec.commutant(default_commutant(algebra).fixed, tol=tol)
    return SubgroupSpec(kind, tol=tol)


@dataclass(frozen=True, eq=False)
class SkewAdjointOp:
    """
    A skew-adjoint block operator ``A* = −A``.

    Raises:
        NotHermitian: If a prefix block is not skew-Hermitian or the tail is not imaginary
    """

    operator: BlockOperator

    def __post_init__(self) -> None:
        if not self.operator.is_skew_adjoint():
            raise NotHermitian("generator is not skew-adjoint: prefix blocks must satisfy A* = −A, tail imaginary")

    @property
    def algebra(self) -> FiniteBlockAlgebra:
        return self.operator.algebra

    def __add__(self, other: SkewAdjointOp) -> SkewAdjointOp:
        return SkewAdjointOp(self.operator + other.operator)

    def __mul__(self, alpha: float) -> SkewAdjointOp:
        return SkewAdjointOp(self.operator * float(alpha))

    __rmul__ = __mul__

    def bracket(self, other: SkewAdjointOp) -> SkewAdjointOp:
        return SkewAdjointOp(self.operator.commutator(other.operator))

    def exp(self, t: float = 1.0) -> BlockOperator:
        return self.operator.exp(t)


def _operator(x: SkewAdjointOp | BlockOperator) -> BlockOperator:
    return x.operator if isinstance(x, SkewAdjointOp) else x


# group membership


def _tail_unimodularity(formula: Formula, start: int) -> float:
    """How far ``|f(k)|`` is from 1 on ``k ≥ start``."""
    if len(formula.terms) == 1 and formula.terms[0][1] == 0:
        c, _, a = formula.terms[0]
        if abs(a.real) > GROWTH_TOL:
            return 1.0
        return abs(abs(c) - 1.0)
    ks = np.arange(start, start + TAIL_SAMPLE_WINDOW)
    residual = float(np.max(np.abs(np.abs(formula.values(ks)) - 1.0)))
    limit = formula.limit()
    if limit is not None:
        residual = max(residual, abs(abs(limit) - 1.0))
    return residual


def _tail_determinant(formula: Formula, start: int, power: int) -> float:
    """How far ``f(k)^power`` is from 1 on ``k ≥ start``."""
    if len(formula.terms) == 1 and formula.terms[0][1] == 0:
        c, _, a = formula.terms[0]
        return max(abs(c**power * np.exp(a * power * start) - 1.0), abs(np.exp(a * power) - 1.0))
    ks = np.arange(start, start + TAIL_SAMPLE_WINDOW)
    return float(np.max(np.abs(formula.values(ks) ** power - 1.0)))


def group_residual(u: BlockOperator, spec: SubgroupSpec) -> float:
    """
    Distance of ``u`` from the subgroup, as used by :func:`in_group`.

    The larger of the unitarity defect (prefix blocks and tail values) and the
    kind predicate: relative commutators with the fixed operators, the distance of
    every block determinant from 1, or the off-diagonal mass.

    Raises:
        Unbounded: If ``u`` is unbounded
    """
    if not u.is_bounded():
        raise Unbounded(f"group membership needs a bounded operator; tail {u.formula.to_text()} is unbounded")
    alg = u.algebra
    residual = max((linops.unitarity_residual(x) for x in u.prefix), default=0.0)
    if alg.has_tail:
        residual = max(residual, _tail_unimodularity(u.formula, u.tail_start))

    if spec.kind is SubgroupKind.COMMUTANT_FIXED:
        for s in spec.fixed:
            gap = (u @ s - s @ u).sup_norm()
            residual = max(residual, gap / (1.0 + s.sup_norm()))
    elif spec.kind is SubgroupKind.BLOCK_DETERMINANT_ONE:
        for x in u.prefix:
            residual = max(residual, abs(complex(np.linalg.det(x)) - 1.0))
        if alg.has_tail:
            residual = max(residual, _tail_determinant(u.formula, u.tail_start, alg.tail_dim))
    elif spec.kind is SubgroupKind.DIAGONAL_UNITARIES:
        for x in u.prefix:
            residual = max(residual, float(np.linalg.norm(x - np.diag(np.diag(x)))))
    return residual


def in_group(u: BlockOperator, spec: SubgroupSpec) -> bool:
    return group_residual(u, spec) <= spec.tol


def _generator_rule_residual(a: BlockOperator, spec: SubgroupSpec) -> float:
    """
    Tail membership decided from the generator when ``exp(t·f)`` has no closed form.

    An imaginary tail exponentiates to unimodular scalars, which lie in every
    bundled subgroup except the determinant-one one, where the tail must vanish.
    """
    if spec.kind is SubgroupKind.BLOCK_DETERMINANT_ONE:
        return a.formula.max_coefficient()
    return 0.0


def lie_residuals(
    x: SkewAdjointOp | BlockOperator, spec: SubgroupSpec, t_samples: Sequence[float] = DEFAULT_T_SAMPLES
) -> list[float]:
    """:func:`group_residual` of ``exp(t·A)`` for every sample ``t``."""
    if not t_samples:
        raise PreconditionFailed("at least one time sample is needed")
    a = _operator(x)
    if not a.is_skew_adjoint():
        raise NotHermitian("Lie algebra membership needs a skew-adjoint generator")
    extra = 0.0
    if a.algebra.has_tail and not a.formula.is_affine():
        logger.warning(
            "Tail formula has no closed-form exponential; using the generator rule",
            extra={"formula": a.formula.to_text(), "subgroup": spec.kind.value},
        )
        extra = _generator_rule_residual(a, spec)
        a = BlockOperator(algebra=a.algebra, prefix=a.prefix, tail=TailRule.zero())
    return [max(extra, group_residual(a.exp(t), spec)) for t in t_samples]


def in_lie_algebra(
    x: SkewAdjointOp | BlockOperator, spec: SubgroupSpec, t_samples: Sequence[float] = DEFAULT_T_SAMPLES
) -> bool:
    """Whether ``exp(t·A)`` lies in the subgroup for every sample ``t``."""
    return max(lie_residuals(x, spec, t_samples)) <= spec.tol


# product formulas


def _aligned(a: BlockOperator, b: BlockOperator) -> tuple[BlockOperator, BlockOperator]:
    count = max(a.tail_start, b.tail_start)
    return a.extend_prefix(count), b.extend_prefix(count)


def trotter_product(
    x: SkewAdjointOp | BlockOperator, y: SkewAdjointOp | BlockOperator, t: float, n: int
) -> BlockOperator:
    """
    ``(e^{tA/n} e^{tB/n})^n``.

    Prefix blocks are multiplied densely. Tail scalars commute, so the tail is
    ``e^{t(f_A + f_B)}`` in closed form.

    Raises:
        GrammarOverflow: If ``f_A + f_B`` is not affine
    """
    if n < 1:
        raise PreconditionFailed(f"product index must be ≥ 1, got {n}")
    a, b = _aligned(_operator(x), _operator(y))
    blocks = tuple(
        np.linalg.matrix_power(linops.matrix_exp(t * p / n) @ linops.matrix_exp(t * q / n), n)
        for p, q in zip(a.prefix, b.prefix, strict=True)
    )
    tail = TailRule((a.formula + b.formula).exp(t)) if a.algebra.has_tail else TailRule.zero()
    return BlockOperator(algebra=a.algebra, prefix=blocks, tail=tail)


def nelson_product(
    x: SkewAdjointOp | BlockOperator, y: SkewAdjointOp | BlockOperator, t: float, n: int
) -> BlockOperator:
    """
    ``(e^{−sA} e^{−sB} e^{sA} e^{sB})^{n²}`` with ``s = √t/n``.

    Converges to ``e^{t[A,B]}``. The tail commutator vanishes, so the tail is
    exactly 1.

    Raises:
        PreconditionFailed: If ``t ≤ 0`` or ``n < 1``
    """
    if t <= 0.0:
        raise PreconditionFailed(f"the commutator formula needs t > 0, got {t}")
    if n < 1:
        raise PreconditionFailed(f"product index must be ≥ 1, got {n}")
    a, b = _aligned(_operator(x), _operator(y))
    s = math.sqrt(t) / n
    blocks = []
    for p, q in zip(a.prefix, b.prefix, strict=True):
        back = linops.matrix_exp(-s * p) @ linops.matrix_exp(-s * q)
        step = back @ linops.matrix_exp(s * p) @ linops.matrix_exp(s * q)
        blocks.append(np.linalg.matrix_power(step, n * n))
    tail = TailRule((a.formula * b.formula - b.formula * a.formula).exp(t)) if a.algebra.has_tail else TailRule.zero()
    return BlockOperator(algebra=a.algebra, prefix=tuple(blocks), tail=tail)


def trotter_limit(x: SkewAdjointOp | BlockOperator, y: SkewAdjointOp | BlockOperator, t: float) -> BlockOperator:
    """``e^{t(A+B)}``."""
    return (_operator(x) + _operator(y)).exp(t)


def nelson_limit(x: SkewAdjointOp | BlockOperator, y: SkewAdjointOp | BlockOperator, t: float) -> BlockOperator:
    """``e^{t[A,B]}``."""
    return _operator(x).commutator(_operator(y)).exp(t)


def product_error(approx: BlockOperator, exact: BlockOperator) -> float:
    """Blockwise operator-norm distance ``sup_k ‖approx_k − exact_k‖``."""
    return (approx - exact).sup_norm()


def empirical_order(ns: Sequence[int], errors: Sequence[float]) -> float:
    """
    Convergence order ``p`` from a least-squares fit of ``log error ≈ c − p·log n``.

    Exact (all-zero) errors give ``inf``.

    Raises:
        PreconditionFailed: If fewer than two positive errors are available
    """
    pairs = [(n, e) for n, e in zip(ns, errors, strict=True) if e > 0.0]
    if not pairs and errors:
        return math.inf
    if len(pairs) < 2:
        raise PreconditionFailed("an order fit needs at least two positive errors")
    log_n = np.log([float(n) for n, _ in pairs])
    log_e = np.log([e for _, e in pairs])
    slope = np.polyfit(log_n, log_e, 1)[0]
    return float(-slope)


def product_report(
    kind: str,
    x: SkewAdjointOp | BlockOperator,
    y: SkewAdjointOp | BlockOperator,
    t: float,
    ns: Sequence[int],
    tol: float,
    element: str = "A,B",
) -> PropertyReport:
    """
    Errors of the Trotter or Nelson approximants against the exact exponential.

    One ``error`` row per ``n``, then a ``monotone`` row. An error row passes when the
    srt distance to the limit is within ``tol`` or has not increased since the previous
    ``n``. The first row has no predecessor: it passes within ``tol``, or when the next
    ``n`` does not increase the error. A single ``n`` is judged by ``tol`` alone.
    """
    product, limit_fn = {"trotter": (trotter_product, trotter_limit), "nelson": (nelson_product, nelson_limit)}[kind]
    exact = limit_fn(x, y, t)
    report = PropertyReport()
    errors = [srt_dist(product(x, y, t, n), exact).upper for n in ns]
    for i, (n, error) in enumerate(zip(ns, errors)):
        if i > 0:
            settled = error <= errors[i - 1]
        else:
            settled = len(errors) > 1 and errors[1] <= error
        report.add(f"{element} n={n}", f"{kind}_srt_error", error <= tol or settled, error, t=t)
    increases = max([0.0] + [b - a for a, b in zip(errors, errors[1:])])
    report.add(element, f"{kind}_monotone", increases <= 0.0, increases, t=t)
    logger.info("Product formula", extra={"kind": kind, "t": t, "final_error": errors[-1] if errors else math.inf})
    return report


# closure


def lie_closure_check(
    x: SkewAdjointOp,
    y: SkewAdjointOp,
    spec: SubgroupSpec,
    t_samples: Sequence[float] = DEFAULT_T_SAMPLES,
    alphas: Sequence[float] = DEFAULT_ALPHAS,
) -> PropertyReport:
    """
    Check that ``A + B``, ``αA`` and ``[A, B]`` stay in ``Lie(G)``.

    Raises:
        PreconditionFailed: If ``A`` or ``B`` is not in ``Lie(G)``
    """
    for name, generator in (("A", x), ("B", y)):
        worst = max(lie_residuals(generator, spec, t_samples))
        if worst > spec.tol:
            raise PreconditionFailed(f"{name} is not in Lie({spec.kind.value}): residual {worst:.3e}")
    elements = [("A+B", x + y)] + [(f"{alpha!r}*A", x * alpha) for alpha in alphas] + [("[A,B]", x.bracket(y))]
    report = PropertyReport()
    for name, element in elements:
        for t, residual in zip(t_samples, lie_residuals(element, spec, t_samples), strict=True):
            report.add(name, "in_lie_algebra", residual <= spec.tol, residual, t=t)
    logger.info("Lie closure", extra={"subgroup": spec.kind.value, "passed": report.passed})
    return report


def unitary_algebra_check(
    x: SkewAdjointOp, y: SkewAdjointOp, spec: SubgroupSpec, t_samples: Sequence[float] = DEFAULT_T_SAMPLES
) -> PropertyReport:
    """
    Whether ``Lie(G)`` looks like ``u(N)`` for a von Neumann subalgebra ``N``.

    Checks ``i·1 ∈ Lie(G)`` and ``i(AB + BA) ∈ Lie(G)``.
    """
    a, b = x.operator, y.operator
    jordan = (a @ b + b @ a) * 1j
    report = PropertyReport()
    for name, element in (("i*1", BlockOperator.scalar(a.algebra, 1j)), ("i(AB+BA)", jordan)):
        residual = max(lie_residuals(element, spec, t_samples))
        report.add(name, "in_lie_algebra", residual <= spec.tol, residual)
    return report


def stone_residual(a: BlockOperator, xi: BlockVector, h: float = 1e-6) -> float:
    """``‖(e^{hA}ξ − ξ)/h − Aξ‖`` for finitely supported ``ξ``."""
    total = 0.0
    for k, v in xi.components.items():
        block = a.block(k)
        derivative = (linops.matrix_exp(h * block) @ v - v) / h
        total += float(np.linalg.norm(derivative - block @ v)) ** 2
    return math.sqrt(total)


# induced homomorphisms


def induced_lie_hom(phi: MorphismDescriptor, x: SkewAdjointOp) -> SkewAdjointOp:
    """
    ``Φ(X)`` for the Lie homomorphism with ``φ(e^X) = e^{Φ(X)}``.

    Raises:
        BadMorphism: If ``φ`` fails the unital *-homomorphism checks
    """
    validate(phi)
    return SkewAdjointOp(phi.apply(x.operator))


def lie_hom_check(
    phi: MorphismDescriptor,
    x: SkewAdjointOp,
    y: SkewAdjointOp,
    t_samples: Sequence[float] = DEFAULT_T_SAMPLES,
) -> PropertyReport:
    """Exponential equivariance, bracket preservation and linearity of the induced map."""
    fx, fy = induced_lie_hom(phi, x), induced_lie_hom(phi, y)
    report = PropertyReport()
    for t in t_samples:
        residual = product_error(phi.apply(x.exp(t)), fx.exp(t))
        report.add("X", "exp_equivariance", residual <= HOM_EXP_TOL, residual, t=t)
    bracket = product_error(phi.apply(x.bracket(y).operator), fx.bracket(fy).operator)
    report.add("[X,Y]", "bracket_preserved", bracket <= HOM_BRACKET_TOL, bracket)
    linear = product_error(phi.apply((x + y * 2.0).operator), (fx + fy * 2.0).operator)
    report.add("X+2Y", "linearity", linear <= HOM_BRACKET_TOL, linear)
    return report


# exponential map


def injectivity_radius(algebra: FiniteBlockAlgebra) -> float | None:
    """``π`` for finite-dimensional algebras, None when there are infinitely many blocks."""
    return None if algebra.has_tail else math.pi


def exp_injectivity_probe(
    algebra: FiniteBlockAlgebra, samples: int = 16, witnesses: int = 8, seed: int = 0
) -> PropertyReport:
    """
    Probe local injectivity of ``exp`` on skew-adjoint operators.

    Finite-dimensional algebras: ``exp`` is injective on ``‖X‖ < π``; random
    generators inside that ball are recovered from their exponentials by the
    principal logarithm. Infinitely many blocks: ``x_n = 2πi·p_n`` satisfies
    ``exp(x_n) = 1`` exactly (its spectrum over ``2πi`` is integral) while
    ``srt_dist(x_n, 0) ≤ 2^{-n+2}``.
    """
    report = PropertyReport()
    radius = injectivity_radius(algebra)
    if radius is not None:
        rng = np.random.default_rng(seed)
        report.add("algebra", "injectivity_radius", radius > 0.0, radius)
        for j in range(samples):
            norm = radius * rng.uniform(0.05, 0.95)
            residual = 0.0
            for n in algebra.shape:
                x = with_norm(random_skew_hermitian(rng, n), norm)
                recovered = linops.matrix_log_unitary(linops.matrix_exp(x))
                residual = max(residual, float(np.linalg.norm(recovered - x)))
            report.add(f"sample {j}", "log_exp_round_trip", residual <= 1e-8, residual)
        full_turn = BlockOperator.scalar(algebra, 2j * math.pi)
        collision = product_error(full_turn.exp(), BlockOperator.identity(algebra))
        report.add("2*pi*i*1", "collision_outside_radius", collision <= 1e-12, collision)
        return report

    zero = BlockOperator.zero(algebra)
    for n in range(1, witnesses + 1):
        unit = BlockOperator.block_unit(algebra, n)
        spectrum = np.concatenate([linops.hermitian_eig(b).eigenvalues for b in unit.prefix])
        integrality = float(np.max(np.abs(spectrum - np.round(spectrum))))
        report.add(f"x_{n}", "exp_equals_identity", integrality <= 1e-12, integrality)
        witness = unit * (2j * math.pi)
        numeric = product_error(witness.exp(), BlockOperator.identity(algebra))
        report.add(f"x_{n}", "exp_numeric", numeric <= 1e-12, numeric)
        distance = srt_dist(witness, zero, eps=2.0 ** -(n + 3)).upper
        report.add(f"x_{n}", "srt_bound", distance <= 2.0 ** (-n + 2), distance)
    logger.info("Exp injectivity probe", extra={"finite": radius is not None, "rows": len(report.rows)})
    return report


# random generators


def commutant_basis(matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Basis (as columns of ``vec X``, column-major) of ``{X : Xs = sX}`` for ``s`` and ``s*``."""
    n = matrices[0].shape[0]
    eye = np.eye(n, dtype=np.complex128)
    rows = []
    for s in matrices:
        for m in (s, linops.dagger(s)):
            rows.append(np.kron(m.T, eye) - np.kron(eye, m))
    return la.null_space(np.vstack(rows))


def random_lie_element(
    rng: np.random.Generator, spec: SubgroupSpec, algebra: FiniteBlockAlgebra, norm: float = 1.0
) -> SkewAdjointOp:
    """Random generator in ``Lie(G)``; infinite tails get an imaginary affine formula (zero for determinant one)."""
    count = algebra.prefix_len
    if spec.kind is SubgroupKind.COMMUTANT_FIXED and algebra.has_tail:
        count = max([count] + [s.tail_start for s in spec.fixed])
    blocks = []
    for k in range(count):
        n = algebra.block_dim(k)
        if spec.kind is SubgroupKind.DIAGONAL_UNITARIES:
            x = np.diag(1j * rng.uniform(-1.0, 1.0, n))
        elif spec.kind is SubgroupKind.COMMUTANT_FIXED:
            basis = commutant_basis([s.block(k) for s in spec.fixed])
            coeffs = rng.standard_normal(basis.shape[1]) + 1j * rng.standard_normal(basis.shape[1])
            c = (basis @ coeffs).reshape((n, n), order="F")
            x = (c - linops.dagger(c)) / 2.0
        else:
            x = random_skew_hermitian(rng, n)
            if spec.kind is SubgroupKind.BLOCK_DETERMINANT_ONE:
                x = x - np.trace(x) / n * np.eye(n)
        blocks.append(with_norm(x, norm))
    tail = Formula()
    if algebra.has_tail and spec.kind is not SubgroupKind.BLOCK_DETERMINANT_ONE:
        r0, r1 = rng.uniform(-1.0, 1.0, 2)
        tail = (Formula.constant(r0) + Formula.index() * r1) * 1j
    return SkewAdjointOp(BlockOperator.from_blocks(algebra, blocks, tail=tail if algebra.has_tail else None))


def random_lie_pair(
    rng: np.random.Generator, spec: SubgroupSpec, algebra: FiniteBlockAlgebra, norm: float = 1.0
) -> tuple[SkewAdjointOp, SkewAdjointOp]:
    return random_lie_element(rng, spec, algebra, norm), random_lie_element(rng, spec, algebra, norm)


__all__ = [
    "DEFAULT_T_SAMPLES",
    "DEFAULT_ALPHAS",
    "GROUP_TOL",
    "SubgroupKind",
    "SubgroupSpec",
    "SkewAdjointOp",
    "default_commutant",
    "subgroup_spec",
    "group_residual",
    "in_group",
    "lie_residuals",
    "in_lie_algebra",
    "trotter_product",
    "nelson_product",
    "trotter_limit",
    "nelson_limit",
    "product_error",
    "empirical_order",
    "product_report",
    "lie_closure_check",
    "unitary_algebra_check",
    "stone_residual",
    "induced_lie_hom",
    "lie_hom_check",
    "injectivity_radius",
    "exp_injectivity_probe",
    "commutant_basis",
    "random_lie_element",
    "random_lie_pair",
]
