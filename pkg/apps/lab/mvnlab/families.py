"""
Bundled operator families and seeded random generators.

A family is a named sequence ``n ↦ A_n`` together with its candidate limit. The
convergent families have blockwise limits; the divergent ones stay a fixed distance
away from theirs. Families are used by the topology experiments and the test suites.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import unitary_group

from mvnlab.blockvn import BlockOperator, FiniteBlockAlgebra, make_algebra
from mvnlab.grammar import Formula, parse_formula

LINEAR_SCHEDULE = tuple(range(1, 25))
DYADIC_SCHEDULE = tuple(2**j for j in range(1, 15))

# w_k = 2^{-(k+1)} on 1×1 blocks
DIAGONAL_ALGEBRA = make_algebra((), (), tail_ratio=0.5)
MIXED_ALGEBRA = make_algebra((2, 3), (0.3, 0.2), tail_ratio=0.5)
FINITE_ALGEBRA = make_algebra((2, 3), (0.4, 0.6))
MATRIX_TAIL_ALGEBRA = make_algebra((), (), tail_ratio=0.5, tail_dim=2)


def random_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    m = random_matrix(rng, n)
    return (m + m.conj().T) / 2.0


def random_skew_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    return 1j * random_hermitian(rng, n)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return unitary_group.rvs(n, random_state=rng)


def with_norm(matrix: np.ndarray, norm: float) -> np.ndarray:
    current = np.linalg.norm(matrix, ord=2)
    return matrix if current == 0 else matrix * (norm / current)


def random_operator(
    rng: np.random.Generator,
    algebra: FiniteBlockAlgebra,
    tail: Formula | str | None = None,
    kind: str = "general",
    extra_blocks: int = 0,
    norm: float | None = None,
) -> BlockOperator:
    """
    Random block operator over ``algebra``.

    Args:
        rng: Seeded generator
        algebra: Target algebra
        tail: Tail formula (ignored for finite algebras)
        kind: ``general``, ``hermitian``, ``skew`` or ``unitary`` prefix blocks
        extra_blocks: Explicit tail blocks to draw past the algebra prefix
        norm: Rescale every prefix block to this operator norm
    """
    draw = {
        "general": random_matrix,
        "hermitian": random_hermitian,
        "skew": random_skew_hermitian,
        "unitary": random_unitary,
    }[kind]
    count = algebra.prefix_len + (extra_blocks if algebra.has_tail else 0)
    blocks = []
    for k in range(count):
        block = draw(rng, algebra.block_dim(k))
        blocks.append(with_norm(block, norm) if norm is not None else block)
    if isinstance(tail, str):
        tail = parse_formula(tail)
    return BlockOperator.from_blocks(algebra, blocks, tail=tail if algebra.has_tail else None)


RANDOM_TAILS = ("0", "1", "k", "exp(-k)", "2 - 0.5i*k", "0.25*k^2")


def random_algebra(
    rng: np.random.Generator, max_blocks: int = 8, max_dim: int = 6, with_tail: bool | None = None
) -> FiniteBlockAlgebra:
    """Random algebra with at most ``max_blocks`` prefix blocks of size at most ``max_dim``."""
    if with_tail is None:
        with_tail = bool(rng.integers(2))
    count = int(rng.integers(1, max_blocks + 1))
    shape = tuple(int(n) for n in rng.integers(1, max_dim + 1, size=count))
    raw = rng.uniform(0.5, 1.5, size=count)
    if with_tail:
        prefix_mass = rng.uniform(0.5, 0.9)
        return make_algebra(shape, tuple(raw / raw.sum() * prefix_mass), tail_ratio=float(rng.uniform(0.2, 0.8)))
    weights = raw / raw.sum()
    # exact unit mass for the finite case
    weights[-1] = 1.0 - float(np.sum(weights[:-1]))
    return make_algebra(shape, tuple(weights))


def random_triple(
    rng: np.random.Generator, max_blocks: int = 8, max_dim: int = 6
) -> tuple[BlockOperator, BlockOperator, BlockOperator]:
    """Three random operators over one random algebra, tails drawn from :data:`RANDOM_TAILS`."""
    alg = random_algebra(rng, max_blocks, max_dim)
    return tuple(  # type: ignore[return-value]
        random_operator(
            rng,
            alg,
            tail=RANDOM_TAILS[int(rng.integers(len(RANDOM_TAILS)))],
            extra_blocks=int(rng.integers(3)),
        )
        for _ in range(3)
    )


class FamilyKind(str, Enum):
    CONVERGENT = "convergent"
    DIVERGENT = "divergent"


SequenceFactory = Callable[[np.random.Generator], tuple[Callable[[int], BlockOperator], BlockOperator]]


@dataclass(frozen=True)
class OperatorFamily:
    """A named operator sequence with its limit candidate."""

    name: str
    kind: FamilyKind
    factory: SequenceFactory
    schedule: tuple[int, ...]
    bounded: bool
    self_adjoint: bool
    description: str

    def generate(
        self, seed: int = 0, schedule: tuple[int, ...] | None = None
    ) -> tuple[list[BlockOperator], BlockOperator, list[int]]:
        """Return ``(sequence, limit, indices)`` for the given seed and schedule."""
        element, limit = self.factory(np.random.default_rng(seed))
        indices = list(schedule or self.schedule)
        return [element(n) for n in indices], limit, indices


def _spike(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    return (lambda n: BlockOperator.block_unit(alg, n) * float(n)), BlockOperator.zero(alg)


def _moving_unit(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    return (lambda n: BlockOperator.block_unit(alg, n)), BlockOperator.zero(alg)


def _shrink(rng: np.random.Generator):
    a = random_operator(rng, MIXED_ALGEBRA, tail="k")
    b = random_operator(rng, MIXED_ALGEBRA, tail="1", norm=1.0)
    return (lambda n: a + b * (1.0 / n)), a


def _bounded_shrink(rng: np.random.Generator):
    a = random_operator(rng, MIXED_ALGEBRA, tail="exp(-k)", norm=1.0)
    b = random_operator(rng, MIXED_ALGEBRA, tail="1", norm=1.0)
    return (lambda n: a + b * (1.0 / n)), a


def _truncation(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    limit = BlockOperator.from_formula(alg, "k")

    def element(n: int) -> BlockOperator:
        return BlockOperator(algebra=alg, prefix=limit.extend_prefix(n + 1).prefix)

    return element, limit


def _conjugation(rng: np.random.Generator):
    a = random_operator(rng, MIXED_ALGEBRA, tail="exp(-k)", norm=1.0)
    x = random_operator(rng, MIXED_ALGEBRA, kind="skew", norm=0.5)

    def element(n: int) -> BlockOperator:
        w = x.exp(1.0 / n)
        return w @ a @ w.adjoint()

    return element, a


def _scalar_shift(rng: np.random.Generator):
    a = random_operator(rng, MIXED_ALGEBRA, tail="k", kind="hermitian")
    one = BlockOperator.identity(MIXED_ALGEBRA)
    return (lambda n: a + one * (1.0 / n)), a


def _imaginary_shift(rng: np.random.Generator):
    a = random_operator(rng, MIXED_ALGEBRA, tail="0.5", norm=1.0)
    one = BlockOperator.identity(MIXED_ALGEBRA)
    return (lambda n: a + one * (1j / n)), a


def _hermitian_base(rng: np.random.Generator, tail: str) -> BlockOperator:
    # known spectra: block 0 {-1, 1}, block 1 {-2, 0.5, 2}, tail integers k ≥ 2
    blocks = []
    for eigenvalues in ((-1.0, 1.0), (-2.0, 0.5, 2.0)):
        u = random_unitary(rng, len(eigenvalues))
        blocks.append(u @ np.diag(eigenvalues) @ u.conj().T)
    return BlockOperator.from_blocks(MIXED_ALGEBRA, blocks, tail=tail)


def _hermitian_shift(rng: np.random.Generator):
    h = _hermitian_base(rng, "k")
    perturbation = random_operator(rng, MIXED_ALGEBRA, tail="1", kind="hermitian", norm=1.0)
    return (lambda n: h + perturbation * 2.0**-n), h


def _bounded_hermitian(rng: np.random.Generator):
    h = _hermitian_base(rng, "exp(-k)")
    perturbation = random_operator(rng, MIXED_ALGEBRA, tail="exp(-k)", kind="hermitian", norm=1.0)
    return (lambda n: h + perturbation * 2.0**-n), h


def _matrix_spike(rng: np.random.Generator):
    alg = MATRIX_TAIL_ALGEBRA
    m = with_norm(random_matrix(rng, 2), 1.0)

    def element(n: int) -> BlockOperator:
        blocks = [np.zeros((2, 2)) for _ in range(n)] + [float(n) * m]
        return BlockOperator.from_blocks(alg, blocks)

    return element, BlockOperator.zero(alg)


def _nilpotent(rng: np.random.Generator):
    a = random_operator(rng, FINITE_ALGEBRA, norm=1.0)
    blocks = [with_norm(np.triu(random_matrix(rng, n), 1), 1.0) for n in FINITE_ALGEBRA.shape]
    nil = BlockOperator.from_blocks(FINITE_ALGEBRA, blocks)
    return (lambda n: a + nil * (1.0 / n)), a


def _dilation(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    limit = BlockOperator.from_formula(alg, "k")
    return (lambda n: limit * (1.0 + 2.0**-n)), limit


def _alternating(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    p0 = BlockOperator.block_unit(alg, 0)
    return (lambda n: p0 * float((-1) ** n)), BlockOperator.zero(alg)


def _constant_unit(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    p0 = BlockOperator.block_unit(alg, 0)
    return (lambda n: p0), BlockOperator.zero(alg)


def _swap(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    return (lambda n: BlockOperator.block_unit(alg, n % 2)), BlockOperator.zero(alg)


def _growing_scalar(rng: np.random.Generator):
    alg = MIXED_ALGEBRA
    return (lambda n: BlockOperator.scalar(alg, float(n))), BlockOperator.zero(alg)


def _phase_rotation(rng: np.random.Generator):
    alg = MIXED_ALGEBRA
    return (lambda n: BlockOperator.scalar(alg, np.exp(1j * n))), BlockOperator.zero(alg)


def _block_growth(rng: np.random.Generator):
    alg = DIAGONAL_ALGEBRA
    p0 = BlockOperator.block_unit(alg, 0)
    return (lambda n: p0 * float(n)), BlockOperator.zero(alg)


_C, _D = FamilyKind.CONVERGENT, FamilyKind.DIVERGENT

FAMILIES: dict[str, OperatorFamily] = {
    family.name: family
    for family in (
        OperatorFamily("spike", _C, _spike, LINEAR_SCHEDULE, False, True, "n·p_n, unbounded, limit 0"),
        OperatorFamily("moving_unit", _C, _moving_unit, LINEAR_SCHEDULE, True, True, "p_n, limit 0"),
        OperatorFamily("shrink", _C, _shrink, DYADIC_SCHEDULE, False, False, "A + B/n with tail k"),
        OperatorFamily("bounded_shrink", _C, _bounded_shrink, DYADIC_SCHEDULE, True, False, "A + B/n, bounded"),
        OperatorFamily("truncation", _C, _truncation, LINEAR_SCHEDULE, False, True, "tail k cut off after block n"),
        OperatorFamily("conjugation", _C, _conjugation, DYADIC_SCHEDULE, True, False, "e^{X/n} A e^{-X/n}"),
        OperatorFamily("scalar_shift", _C, _scalar_shift, DYADIC_SCHEDULE, False, True, "A + (1/n)·1"),
        OperatorFamily("imaginary_shift", _C, _imaginary_shift, DYADIC_SCHEDULE, True, False, "A + (i/n)·1"),
        OperatorFamily("hermitian_shift", _C, _hermitian_shift, LINEAR_SCHEDULE, False, True, "H + 2^{-n}K"),
        OperatorFamily(
            "bounded_hermitian", _C, _bounded_hermitian, LINEAR_SCHEDULE, True, True, "H + 2^{-n}K, bounded"
        ),
        OperatorFamily("matrix_spike", _C, _matrix_spike, LINEAR_SCHEDULE, False, False, "n·M on 2×2 block n"),
        OperatorFamily("nilpotent", _C, _nilpotent, DYADIC_SCHEDULE, True, False, "A + N/n, N nilpotent"),
        OperatorFamily("dilation", _C, _dilation, LINEAR_SCHEDULE, False, True, "(1 + 2^{-n})·k"),
        OperatorFamily("alternating", _D, _alternating, LINEAR_SCHEDULE, True, True, "(-1)^n p_0 against 0"),
        OperatorFamily("constant_unit", _D, _constant_unit, LINEAR_SCHEDULE, True, True, "p_0 against 0"),
        OperatorFamily("swap", _D, _swap, LINEAR_SCHEDULE, True, True, "p_{n mod 2} against 0"),
        OperatorFamily("growing_scalar", _D, _growing_scalar, LINEAR_SCHEDULE, False, True, "n·1 against 0"),
        OperatorFamily("phase_rotation", _D, _phase_rotation, LINEAR_SCHEDULE, True, False, "e^{in}·1 against 0"),
        OperatorFamily("block_growth", _D, _block_growth, LINEAR_SCHEDULE, False, True, "n·p_0 against 0"),
    )
}


def get_family(name: str) -> OperatorFamily:
    if name not in FAMILIES:
        raise ValueError(f"Unknown family: {name}. Available families: {sorted(FAMILIES)}")
    return FAMILIES[name]


def families_of(
    kind: FamilyKind, bounded: bool | None = None, self_adjoint: bool | None = None
) -> list[OperatorFamily]:
    return [
        f
        for f in FAMILIES.values()
        if f.kind is kind
        and (bounded is None or f.bounded == bounded)
        and (self_adjoint is None or f.self_adjoint == self_adjoint)
    ]


__all__ = [
    "LINEAR_SCHEDULE",
    "DYADIC_SCHEDULE",
    "DIAGONAL_ALGEBRA",
    "MIXED_ALGEBRA",
    "FINITE_ALGEBRA",
    "MATRIX_TAIL_ALGEBRA",
    "FamilyKind",
    "OperatorFamily",
    "FAMILIES",
    "get_family",
    "families_of",
    "random_matrix",
    "random_hermitian",
    "random_skew_hermitian",
    "random_unitary",
    "random_operator",
    "random_algebra",
    "random_triple",
    "RANDOM_TAILS",
    "with_norm",
]
