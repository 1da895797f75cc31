"""
Finite von Neumann algebras as weighted direct sums of matrix blocks.

An algebra is a finite list of blocks ``M_{n_k}(ℂ)`` with trace weights, optionally
continued by an infinite tail of equal-size blocks whose weights decay geometrically.
Affiliated operators are block-diagonal: explicit matrices on a prefix of blocks and
a scalar formula of the block index on everything after it. Sums, products, adjoints,
exponentials, the trace and operator norms are all computed blockwise, with the tail
handled in closed form.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from mvnlab import linops
from mvnlab.exceptions import (
    AlgebraMismatch,
    BadWeights,
    DimensionMismatch,
    SpectralObstruction,
    TailConflict,
    Unbounded,
)
from mvnlab.grammar import Formula, parse_formula
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("blockvn")

MASS_TOL = 1e-12


@dataclass(frozen=True)
class FiniteBlockAlgebra:
    """
    The algebra ``⊕_k M_{n_k}(ℂ)`` with tracial state ``τ(x) = Σ_k w_k·tr(x_k)/n_k``.

    Attributes:
        shape: Dimensions of the explicit prefix blocks
        weights: Trace weights of the prefix blocks
        tail_ratio: Geometric ratio of the tail weights, None for a finite block list
        tail_mass: Total weight carried by the tail
        tail_dim: Dimension of every tail block
    """

    shape: tuple[int, ...]
    weights: tuple[float, ...]
    tail_ratio: float | None = None
    tail_mass: float = 0.0
    tail_dim: int = 1

    @property
    def prefix_len(self) -> int:
        return len(self.shape)

    @property
    def has_tail(self) -> bool:
        return self.tail_ratio is not None

    @property
    def is_finite(self) -> bool:
        return not self.has_tail

    @property
    def total_dim(self) -> int:
        if self.has_tail:
            raise TailConflict("an algebra with an infinite tail has no finite total dimension")
        return sum(self.shape)

    def block_dim(self, k: int) -> int:
        if 0 <= k < self.prefix_len:
            return self.shape[k]
        if k >= self.prefix_len and self.has_tail:
            return self.tail_dim
        raise DimensionMismatch(f"block {k} does not exist in an algebra with {self.prefix_len} blocks")

    def weight(self, k: int) -> float:
        if 0 <= k < self.prefix_len:
            return self.weights[k]
        if k >= self.prefix_len and self.tail_ratio is not None:
            return self.tail_mass * (1.0 - self.tail_ratio) * self.tail_ratio ** (k - self.prefix_len)
        raise DimensionMismatch(f"block {k} does not exist in an algebra with {self.prefix_len} blocks")

    def weights_upto(self, count: int) -> np.ndarray:
        """Weights of the first ``count`` blocks (clipped to the block list for finite algebras)."""
        return np.array([self.weight(k) for k in range(self.blocks_available(count))], dtype=np.float64)

    def blocks_available(self, count: int) -> int:
        return count if self.has_tail else min(count, self.prefix_len)

    def tail_mass_from(self, start: int) -> float:
        """Total weight of the blocks ``k ≥ start``."""
        if start < self.prefix_len:
            return math.fsum(self.weights[start:]) + self.tail_mass
        if self.tail_ratio is None:
            return 0.0
        return self.tail_mass * self.tail_ratio ** (start - self.prefix_len)

    def describe(self) -> str:
        text = f"shapes={list(self.shape)} weights_prefix={list(self.weights)}"
        if self.tail_ratio is not None:
            text += f" tail_ratio={self.tail_ratio!r} tail_mass={self.tail_mass!r} tail_dim={self.tail_dim}"
        return text


def make_algebra(
    shape: Sequence[int],
    weights_prefix: Sequence[float],
    tail_ratio: float | None = None,
    tail_mass: float | None = None,
    tail_dim: int = 1,
) -> FiniteBlockAlgebra:
    """
    Build a normalized block algebra.

    Without a tail the prefix weights must sum to 1. With a tail the remaining mass
    ``1 − Σ prefix`` goes to the tail; a declared ``tail_mass`` must match it.

    Raises:
        BadWeights: If any weight is non-positive or the total mass is not 1
        DimensionMismatch: If shape and weights disagree or a block size is < 1
    """
    shape = tuple(int(n) for n in shape)
    weights = tuple(float(w) for w in weights_prefix)
    if len(shape) != len(weights):
        raise DimensionMismatch(f"{len(shape)} block shapes but {len(weights)} weights")
    if any(n < 1 for n in shape) or tail_dim < 1:
        raise DimensionMismatch(f"block dimensions must be ≥ 1, got {list(shape)} (tail {tail_dim})")
    if any(not math.isfinite(w) or w <= 0.0 for w in weights):
        raise BadWeights(f"weights must be positive, got {list(weights)}")
    prefix_mass = math.fsum(weights)

    if tail_ratio is None:
        if tail_mass:
            raise BadWeights("tail_mass given without a tail ratio")
        if not shape:
            raise DimensionMismatch("an algebra needs at least one block")
        if abs(prefix_mass - 1.0) > MASS_TOL:
            raise BadWeights(f"weights sum to {prefix_mass!r}, expected 1")
        normalized = tuple(w / prefix_mass for w in weights)
        return FiniteBlockAlgebra(shape=shape, weights=normalized)

    if not 0.0 < tail_ratio < 1.0:
        raise BadWeights(f"tail ratio must lie in (0, 1), got {tail_ratio!r}")
    remaining = 1.0 - prefix_mass
    if remaining <= MASS_TOL:
        raise BadWeights(f"prefix weights sum to {prefix_mass!r}; nothing is left for the tail")
    if tail_mass is not None and abs(prefix_mass + tail_mass - 1.0) > MASS_TOL:
        raise BadWeights(f"prefix mass {prefix_mass!r} plus tail mass {tail_mass!r} is not 1")
    return FiniteBlockAlgebra(
        shape=shape, weights=weights, tail_ratio=float(tail_ratio), tail_mass=remaining, tail_dim=int(tail_dim)
    )


def direct_sum_algebra(first: FiniteBlockAlgebra, second: FiniteBlockAlgebra, theta: float) -> FiniteBlockAlgebra:
    """The ``θ``-weighted direct sum; ``first`` must be a finite block list."""
    if not 0.0 < theta < 1.0:
        raise BadWeights(f"mass fraction must lie in (0, 1), got {theta!r}")
    if first.has_tail:
        raise TailConflict("only a finite block list can precede another algebra in a direct sum")
    return FiniteBlockAlgebra(
        shape=first.shape + second.shape,
        weights=tuple(theta * w for w in first.weights) + tuple((1.0 - theta) * w for w in second.weights),
        tail_ratio=second.tail_ratio,
        tail_mass=(1.0 - theta) * second.tail_mass,
        tail_dim=second.tail_dim,
    )


class TailKind(str, Enum):
    """How an operator acts on the blocks after its explicit prefix."""

    ZERO = "ZeroTail"
    SCALAR_FORMULA = "ScalarFormulaTail"


@dataclass(frozen=True)
class TailRule:
    """Scalar action ``f(k)·1`` on every block ``k`` past the prefix."""

    formula: Formula = field(default_factory=Formula)

    @property
    def kind(self) -> TailKind:
        return TailKind.ZERO if self.formula.is_zero else TailKind.SCALAR_FORMULA

    @classmethod
    def zero(cls) -> TailRule:
        return cls(Formula())

    @classmethod
    def of(cls, formula: Formula | str | complex | None) -> TailRule:
        if formula is None:
            return cls.zero()
        if isinstance(formula, str):
            return cls(parse_formula(formula))
        if isinstance(formula, Formula):
            return cls(formula)
        return cls(Formula.constant(formula))

    def to_text(self) -> str:
        return f"kind={self.kind.value} formula={self.formula.to_text()}"


def _frozen(matrix: np.ndarray) -> np.ndarray:
    out = np.array(matrix, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class BlockVector:
    """
    Finitely supported vector ``(ξ_k)`` with ``ξ_k ∈ ℂ^{n_k}``.

    Finitely supported vectors lie in the domain of every block operator.
    """

    components: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        frozen = {int(k): _frozen(np.ravel(v)) for k, v in sorted(self.components.items())}
        object.__setattr__(self, "components", frozen)

    @classmethod
    def unit(cls, algebra: FiniteBlockAlgebra, k: int, index: int = 0) -> BlockVector:
        """Standard basis vector ``e_index`` of block ``k``."""
        vector = np.zeros(algebra.block_dim(k), dtype=np.complex128)
        vector[index] = 1.0
        return cls({k: vector})

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.components)

    def component(self, k: int) -> np.ndarray | None:
        return self.components.get(k)

    def norm(self) -> float:
        return math.sqrt(math.fsum(float(np.vdot(v, v).real) for v in self.components.values()))

    def inner(self, other: BlockVector) -> complex:
        """``⟨self, other⟩``, conjugate-linear in ``self``."""
        return sum(
            (complex(np.vdot(v, other.components[k])) for k, v in self.components.items() if k in other.components),
            0j,
        )

    def __add__(self, other: BlockVector) -> BlockVector:
        merged = dict(self.components)
        for k, v in other.components.items():
            merged[k] = merged[k] + v if k in merged else v
        return BlockVector(merged)

    def __sub__(self, other: BlockVector) -> BlockVector:
        return self + other * -1.0

    def __mul__(self, alpha: complex) -> BlockVector:
        return BlockVector({k: alpha * v for k, v in self.components.items()})

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """
    Block-diagonal operator affiliated with a :class:`FiniteBlockAlgebra`.

    Blocks ``k < tail_start`` are explicit matrices; every block ``k ≥ tail_start``
    of an algebra with a tail acts as ``f(k)·1`` for the tail formula ``f``. The
    explicit prefix always covers the algebra's own prefix blocks.
    """

    algebra: FiniteBlockAlgebra
    prefix: tuple[np.ndarray, ...]
    tail: TailRule = field(default_factory=TailRule)

    def __post_init__(self) -> None:
        alg = self.algebra
        blocks = tuple(_frozen(np.atleast_2d(np.asarray(b, dtype=np.complex128))) for b in self.prefix)
        if alg.has_tail:
            if len(blocks) < alg.prefix_len:
                raise DimensionMismatch(
                    f"operator has {len(blocks)} explicit blocks but the algebra prefix has {alg.prefix_len}"
                )
        else:
            if len(blocks) != alg.prefix_len:
                raise DimensionMismatch(f"operator has {len(blocks)} blocks but the algebra has {alg.prefix_len}")
            if not self.tail.formula.is_zero:
                raise TailConflict("a finite block list admits no tail formula")
        for k, block in enumerate(blocks):
            n = alg.block_dim(k)
            if block.shape != (n, n):
                raise DimensionMismatch(f"block {k} has shape {block.shape}, expected ({n}, {n})")
            if not np.all(np.isfinite(block)):
                raise DimensionMismatch(f"block {k} has non-finite entries")
        object.__setattr__(self, "prefix", blocks)

    # constructors

    @classmethod
    def from_blocks(
        cls,
        algebra: FiniteBlockAlgebra,
        blocks: Sequence[np.ndarray | complex],
        tail: Formula | str | complex | None = None,
    ) -> BlockOperator:
        return cls(algebra=algebra, prefix=tuple(np.atleast_2d(b) for b in blocks), tail=TailRule.of(tail))

    @classmethod
    def from_formula(cls, algebra: FiniteBlockAlgebra, formula: Formula | str) -> BlockOperator:
        """The operator acting as ``f(k)·1`` on every block, prefix included."""
        if isinstance(formula, str):
            formula = parse_formula(formula)
        blocks = [formula(k) * np.eye(n, dtype=np.complex128) for k, n in enumerate(algebra.shape)]
        return cls(algebra=algebra, prefix=tuple(blocks), tail=TailRule(formula if algebra.has_tail else Formula()))

    @classmethod
    def scalar(cls, algebra: FiniteBlockAlgebra, c: complex) -> BlockOperator:
        return cls.from_formula(algebra, Formula.constant(c))

    @classmethod
    def zero(cls, algebra: FiniteBlockAlgebra) -> BlockOperator:
        return cls.from_formula(algebra, Formula())

    @classmethod
    def identity(cls, algebra: FiniteBlockAlgebra) -> BlockOperator:
        return cls.scalar(algebra, 1.0)

    @classmethod
    def block_unit(cls, algebra: FiniteBlockAlgebra, k: int) -> BlockOperator:
        """The central projection ``p_k`` onto block ``k``."""
        count = max(algebra.prefix_len, k + 1)
        blocks = [
            np.eye(algebra.block_dim(j), dtype=np.complex128) if j == k else np.zeros((algebra.block_dim(j),) * 2)
            for j in range(count)
        ]
        return cls(algebra=algebra, prefix=tuple(blocks))

    # structure

    @property
    def tail_start(self) -> int:
        return len(self.prefix)

    @property
    def formula(self) -> Formula:
        return self.tail.formula

    def block(self, k: int) -> np.ndarray:
        if k < self.tail_start:
            return self.prefix[k]
        n = self.algebra.block_dim(k)
        return self.formula(k) * np.eye(n, dtype=np.complex128)

    def blocks(self, count: int) -> Iterator[tuple[int, np.ndarray]]:
        for k in range(self.algebra.blocks_available(count)):
            yield k, self.block(k)

    def extend_prefix(self, count: int) -> BlockOperator:
        """Materialize tail blocks so that the tail starts at ``count``."""
        if count <= self.tail_start:
            return self
        if not self.algebra.has_tail:
            raise DimensionMismatch(f"cannot extend past the {self.algebra.prefix_len} blocks of a finite algebra")
        logger.debug("Extending prefix", extra={"from_blocks": self.tail_start, "to_blocks": count})
        blocks = self.prefix + tuple(self.block(k) for k in range(self.tail_start, count))
        return BlockOperator(algebra=self.algebra, prefix=blocks, tail=self.tail)

    def _aligned(self, other: BlockOperator) -> tuple[BlockOperator, BlockOperator]:
        if self.algebra != other.algebra:
            raise AlgebraMismatch("operands live over different block algebras")
        count = max(self.tail_start, other.tail_start)
        return self.extend_prefix(count), other.extend_prefix(count)

    # *-algebra

    def __add__(self, other: BlockOperator) -> BlockOperator:
        a, b = self._aligned(other)
        return BlockOperator(
            algebra=a.algebra,
            prefix=tuple(x + y for x, y in zip(a.prefix, b.prefix, strict=True)),
            tail=TailRule(a.formula + b.formula),
        )

    def __neg__(self) -> BlockOperator:
        return self * -1.0

    def __sub__(self, other: BlockOperator) -> BlockOperator:
        return self + (-other)

    def __mul__(self, alpha: complex) -> BlockOperator:
        if isinstance(alpha, BlockOperator):
            return NotImplemented
        return BlockOperator(
            algebra=self.algebra,
            prefix=tuple(alpha * x for x in self.prefix),
            tail=TailRule(self.formula * alpha),
        )

    __rmul__ = __mul__

    def __matmul__(self, other: BlockOperator) -> BlockOperator:
        a, b = self._aligned(other)
        return BlockOperator(
            algebra=a.algebra,
            prefix=tuple(x @ y for x, y in zip(a.prefix, b.prefix, strict=True)),
            tail=TailRule(a.formula * b.formula),
        )

    def adjoint(self) -> BlockOperator:
        return BlockOperator(
            algebra=self.algebra,
            prefix=tuple(linops.dagger(x) for x in self.prefix),
            tail=TailRule(self.formula.conjugate()),
        )

    def commutator(self, other: BlockOperator) -> BlockOperator:
        """``[A, B] = AB − BA``."""
        return self @ other - other @ self

    def re_part(self) -> BlockOperator:
        return BlockOperator(
            algebra=self.algebra,
            prefix=tuple(linops.re_im_split(x)[0] for x in self.prefix),
            tail=TailRule(self.formula.real_part()),
        )

    def im_part(self) -> BlockOperator:
        return BlockOperator(
            algebra=self.algebra,
            prefix=tuple(linops.re_im_split(x)[1] for x in self.prefix),
            tail=TailRule(self.formula.imag_part()),
        )

    def exp(self, t: complex = 1.0) -> BlockOperator:
        """
        ``exp(t·A)`` blockwise.

        Raises:
            GrammarOverflow: If the tail formula is not affine in ``k``
        """
        tail = TailRule(self.formula.exp(t)) if self.algebra.has_tail else TailRule.zero()
        return BlockOperator(
            algebra=self.algebra,
            prefix=tuple(linops.matrix_exp(t * x) for x in self.prefix),
            tail=tail,
        )

    # analysis

    def sup_norm(self) -> float:
        """``sup_k ‖A_k‖``; ``inf`` flags an unbounded operator."""
        prefix_norm = max((linops.op_norm(x) for x in self.prefix), default=0.0)
        if not self.algebra.has_tail:
            return prefix_norm
        return max(prefix_norm, self.formula.sup_abs(self.tail_start))

    def is_bounded(self) -> bool:
        return self.formula.is_bounded() or not self.algebra.has_tail

    def apply(self, xi: BlockVector) -> BlockVector:
        out: dict[int, np.ndarray] = {}
        for k, v in xi.components.items():
            if v.shape[0] != self.algebra.block_dim(k):
                raise DimensionMismatch(f"vector component {k} has length {v.shape[0]}")
            out[k] = self.block(k) @ v
        return BlockVector(out)

    def is_self_adjoint(self, tol: float = linops.HERMITIAN_TOL) -> bool:
        """
        Hermitian prefix blocks and a real tail formula.

        The Cayley transform of each prefix block must come out unitary.
        """
        if not all(linops.is_hermitian(x, tol) for x in self.prefix):
            return False
        if not self.formula.is_real(tol):
            return False
        return self.cayley_residual() <= linops.UNITARY_TOL

    def is_skew_adjoint(self, tol: float = linops.HERMITIAN_TOL) -> bool:
        return all(linops.is_skew_hermitian(x, tol) for x in self.prefix) and self.formula.is_imaginary(tol)

    def cayley_residual(self) -> float:
        """Largest unitarity residual of the Cayley transforms of the prefix blocks."""
        residuals = [
            linops.unitarity_residual(linops.cayley_transform((x + linops.dagger(x)) / 2.0)) for x in self.prefix
        ]
        return max(residuals, default=0.0)


# module-level entry points


def add(a: BlockOperator, b: BlockOperator) -> BlockOperator:
    return a + b


def scale(alpha: complex, a: BlockOperator) -> BlockOperator:
    return a * alpha


def multiply(a: BlockOperator, b: BlockOperator) -> BlockOperator:
    return a @ b


def adjoint(a: BlockOperator) -> BlockOperator:
    return a.adjoint()


def sup_norm(a: BlockOperator) -> float:
    return a.sup_norm()


def bounded_part_membership(a: BlockOperator) -> bool:
    """Whether ``a`` lies in the algebra itself (the bounded affiliated operators)."""
    return math.isfinite(a.sup_norm())


def apply(a: BlockOperator, xi: BlockVector) -> BlockVector:
    return a.apply(xi)


def tau(x: BlockOperator) -> complex:
    """
    Tracial state ``Σ_k w_k·tr(x_k)/n_k``.

    The prefix is summed in ascending block order; the tail in closed form.

    Raises:
        Unbounded: If ``x`` is unbounded
        DivergentTail: If the tail series does not converge
    """
    if not x.is_bounded():
        raise Unbounded(f"trace needs a bounded operator; tail {x.formula.to_text()} is unbounded")
    alg = x.algebra
    total = 0j
    for k, block in enumerate(x.prefix):
        total += alg.weight(k) * complex(np.trace(block)) / block.shape[0]
    if alg.tail_ratio is not None and not x.formula.is_zero:
        ratio = alg.tail_ratio
        total += alg.tail_mass_from(x.tail_start) * (1.0 - ratio) * x.formula.geometric_sum(ratio, x.tail_start)
    return total


def direct_sum(first: BlockOperator, second: BlockOperator, theta: float) -> BlockOperator:
    """
    ``first ⊕ second`` over the ``θ``-weighted direct-sum algebra.

    Raises:
        TailConflict: If ``first`` lives over an algebra with an infinite tail
    """
    algebra = direct_sum_algebra(first.algebra, second.algebra, theta)
    offset = first.algebra.prefix_len
    return BlockOperator(
        algebra=algebra,
        prefix=first.prefix + second.prefix,
        tail=TailRule(second.formula.shift(-offset)),
    )


def representation_residual(a: BlockOperator, b: BlockOperator) -> float:
    """
    Largest relative blockwise difference between two representations.

    Prefix blocks are compared in Frobenius norm relative to ``1 + ‖·‖_F``; tails by
    the largest coefficient of the formula difference.
    """
    x, y = a._aligned(b)
    worst = 0.0
    for p, q in zip(x.prefix, y.prefix, strict=True):
        scale_ = 1.0 + max(np.linalg.norm(p), np.linalg.norm(q))
        worst = max(worst, float(np.linalg.norm(p - q)) / scale_)
    if x.algebra.has_tail:
        scale_ = 1.0 + max(x.formula.max_coefficient(), y.formula.max_coefficient())
        worst = max(worst, (x.formula - y.formula).max_coefficient() / scale_)
    return worst


def star_algebra_residuals(
    a: BlockOperator, b: BlockOperator, c: BlockOperator, alpha: complex = 0.5 - 1.25j
) -> dict[str, float]:
    """Relative residuals of the *-algebra laws on one triple, keyed by law name."""
    ab = a @ b
    return {
        "associativity": representation_residual(ab @ c, a @ (b @ c)),
        "left_distributivity": representation_residual(a @ (b + c), ab + a @ c),
        "right_distributivity": representation_residual((a + b) @ c, a @ c + b @ c),
        "additive_commutativity": representation_residual(a + b, b + a),
        "adjoint_of_product": representation_residual(ab.adjoint(), b.adjoint() @ a.adjoint()),
        "adjoint_involution": representation_residual(a.adjoint().adjoint(), a),
        "adjoint_antilinear": representation_residual((a * alpha).adjoint(), a.adjoint() * alpha.conjugate()),
        "scalar_compatibility": representation_residual(ab * alpha, (a * alpha) @ b),
        "unit": representation_residual(a @ BlockOperator.identity(a.algebra), a),
        "re_im_recompose": representation_residual(a.re_part() + a.im_part() * 1j, a),
    }


@dataclass(frozen=True, eq=False)
class CayleyDemo:
    """Result of rebuilding a self-adjoint operator from its Cayley transform."""

    operator: BlockOperator
    hermiticity_residual: float
    round_trip_residual: float


def cayley_inverse_demo(s: BlockOperator) -> CayleyDemo:
    """
    Build ``T = i(1 + s)(1 − s)^{-1}`` from a unitary ``s`` without eigenvalue 1.

    Tails must be unimodular constants; the rebuilt ``T`` is checked for
    self-adjointness and its forward transform against ``s``.

    Raises:
        SpectralObstruction: If 1 is an eigenvalue of some block of ``s``
        GrammarOverflow: If the tail of ``s`` is not constant
    """
    blocks = tuple(linops.cayley_inverse(x) for x in s.prefix)
    tail = Formula()
    tail_residual = 0.0
    if s.algebra.has_tail:
        c = s.formula.constant_value()
        if abs(abs(c) - 1.0) > linops.UNITARY_TOL:
            raise SpectralObstruction(f"tail value {c!r} is not unimodular")
        if abs(c - 1.0) <= linops.CAYLEY_TOL:
            raise SpectralObstruction("tail value is 1; inverse Cayley transform undefined")
        value = 1j * (1.0 + c) / (1.0 - c)
        tail_residual = abs(value.imag)
        tail = Formula.constant(value.real)
    operator = BlockOperator(algebra=s.algebra, prefix=blocks, tail=TailRule(tail))
    hermiticity = max([linops.hermiticity_residual(x) for x in blocks] + [tail_residual])
    forward = [linops.cayley_transform(x) for x in blocks]
    round_trip = max((float(np.linalg.norm(f - x)) for f, x in zip(forward, s.prefix, strict=True)), default=0.0)
    logger.debug("Cayley inverse demo", extra={"hermiticity": hermiticity, "round_trip": round_trip})
    return CayleyDemo(operator=operator, hermiticity_residual=hermiticity, round_trip_residual=round_trip)


__all__ = [
    "FiniteBlockAlgebra",
    "TailKind",
    "TailRule",
    "BlockVector",
    "BlockOperator",
    "CayleyDemo",
    "make_algebra",
    "direct_sum_algebra",
    "add",
    "scale",
    "multiply",
    "adjoint",
    "sup_norm",
    "bounded_part_membership",
    "apply",
    "tau",
    "direct_sum",
    "representation_residual",
    "star_algebra_residuals",
    "cayley_inverse_demo",
]
