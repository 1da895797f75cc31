"""
Tensor products of block algebras and the functors between algebras and rings.

- ``tensor_algebra``/``tensor_op``: Kronecker products of finite block lists, blocks
  in lexicographic order
- ``functor_E``/``functor_F``: algebra ↦ ring of affiliated operators and back,
  on objects and on morphism descriptors
- ``coherence_check``: associator, unitors and braiding as permutations of matrix
  unit coordinates, with pentagon, triangle, hexagon and naturality checks
- ``center``/``is_factor``
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from mvnlab.blockvn import BlockOperator, FiniteBlockAlgebra, make_algebra, representation_residual
from mvnlab.exceptions import AlgebraMismatch, TailConflict
from mvnlab.families import RANDOM_TAILS, random_algebra, random_operator, random_unitary
from mvnlab.models.reports import CoherenceReport, PropertyReport
from mvnlab.morphisms import MorphismDescriptor, ampliation, block_permutation, compose, unitary_conjugation, validate
from mvnlab.morphisms import identity as identity_morphism
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("tensorcat")

TENSOR_TOL = 1e-12
UNIT_ALGEBRA = make_algebra((1,), (1.0,))


def _require_finite(*algebras: FiniteBlockAlgebra) -> None:
    for alg in algebras:
        if alg.has_tail:
            raise TailConflict("tensor products are defined for finite block lists only")


def tensor_algebra(m: FiniteBlockAlgebra, n: FiniteBlockAlgebra) -> FiniteBlockAlgebra:
    """
    ``M ⊗ N``: blocks ``n_i·m_j`` and weights ``w_i·v_j`` in lexicographic ``(i, j)`` order.

    Raises:
        TailConflict: If either algebra has an infinite tail
    """
    _require_finite(m, n)
    return FiniteBlockAlgebra(
        shape=tuple(a * b for a in m.shape for b in n.shape),
        weights=tuple(w * v for w in m.weights for v in n.weights),
    )


def tensor_op(a: BlockOperator, b: BlockOperator) -> BlockOperator:
    """Blockwise Kronecker product ``A_i ⊗ B_j``."""
    _require_finite(a.algebra, b.algebra)
    algebra = tensor_algebra(a.algebra, b.algebra)
    return BlockOperator(algebra=algebra, prefix=tuple(np.kron(x, y) for x in a.prefix for y in b.prefix))


def tensor_law_residuals(
    a: BlockOperator, b: BlockOperator, c: BlockOperator, d: BlockOperator, alpha: complex = 1.5 - 0.5j
) -> dict[str, float]:
    """
    Residuals of the *-algebra tensor laws for ``A, C`` over one algebra and ``B, D`` over another.

    - product: ``(A⊗B)(C⊗D) = AC ⊗ BD``
    - adjoint: ``(A⊗B)* = A*⊗B*``
    - bilinear: ``(A+C)⊗(B+D) = A⊗B + A⊗D + C⊗B + C⊗D``
    - scalar: ``(αA)⊗B = α(A⊗B) = A⊗(αB)``
    """
    ab = tensor_op(a, b)
    return {
        "product": representation_residual(ab @ tensor_op(c, d), tensor_op(a @ c, b @ d)),
        "adjoint": representation_residual(ab.adjoint(), tensor_op(a.adjoint(), b.adjoint())),
        "bilinear": representation_residual(
            tensor_op(a + c, b + d), ab + tensor_op(a, d) + tensor_op(c, b) + tensor_op(c, d)
        ),
        "scalar": max(
            representation_residual(tensor_op(a * alpha, b), ab * alpha),
            representation_residual(tensor_op(a, b * alpha), ab * alpha),
        ),
    }


def tensor_laws_report(
    pairs: Sequence[tuple[BlockOperator, BlockOperator, BlockOperator, BlockOperator]], tol: float = TENSOR_TOL
) -> PropertyReport:
    report = PropertyReport()
    for j, (a, b, c, d) in enumerate(pairs):
        for law, residual in tensor_law_residuals(a, b, c, d).items():
            report.add(f"pair {j}", f"tensor_{law}", residual <= tol, residual)
    return report


# functors


@dataclass(frozen=True)
class RingDescriptor:
    """The *-algebra of all operators affiliated with ``algebra``."""

    algebra: FiniteBlockAlgebra

    def contains(self, x: BlockOperator) -> bool:
        return x.algebra == self.algebra

    def bounded_part(self, x: BlockOperator) -> bool:
        """Whether ``x`` lies in the algebra, i.e. in ring ∩ bounded operators."""
        return self.contains(x) and x.is_bounded()


@dataclass(frozen=True)
class ExtendedMorphism:
    """Unique srt-continuous extension of a blockwise morphism to the affiliated operators."""

    base: MorphismDescriptor

    @property
    def source(self) -> RingDescriptor:
        return RingDescriptor(self.base.source)

    @property
    def target(self) -> RingDescriptor:
        return RingDescriptor(self.base.target)

    def __call__(self, x: BlockOperator) -> BlockOperator:
        # base was validated by functor_E or built from validated parts
        return self.base.apply(x)


def extend_morphism(phi: MorphismDescriptor, x: BlockOperator) -> BlockOperator:
    """
    ``Φ(X)`` for an operator over the source algebra, bounded or not.

    Raises:
        BadMorphism: If ``φ`` is invalid or ``X`` lives elsewhere
    """
    return validate(phi).apply(x)


def functor_E(item: FiniteBlockAlgebra | MorphismDescriptor) -> RingDescriptor | ExtendedMorphism:
    """Algebra ↦ ring of affiliated operators; morphism ↦ its extension."""
    if isinstance(item, MorphismDescriptor):
        return ExtendedMorphism(validate(item))
    return RingDescriptor(item)


def functor_F(item: RingDescriptor | ExtendedMorphism) -> FiniteBlockAlgebra | MorphismDescriptor:
    """Ring ↦ its bounded part; extended morphism ↦ its restriction."""
    if isinstance(item, ExtendedMorphism):
        return item.base
    return item.algebra


def compose_extended(phi: ExtendedMorphism, psi: ExtendedMorphism) -> ExtendedMorphism:
    return ExtendedMorphism(compose(phi.base, psi.base))


def identity_extended(ring: RingDescriptor) -> ExtendedMorphism:
    return ExtendedMorphism(identity_morphism(ring.algebra))


def tensor_ring(r: RingDescriptor, s: RingDescriptor) -> RingDescriptor:
    return RingDescriptor(tensor_algebra(r.algebra, s.algebra))


def _morphisms_of(rng: np.random.Generator, algebra: FiniteBlockAlgebra) -> list[MorphismDescriptor]:
    """One descriptor of each kind with source ``algebra``."""
    perm = tuple(int(i) for i in rng.permutation(algebra.prefix_len))
    unitaries = [random_unitary(rng, n) for n in algebra.shape]
    return [
        identity_morphism(algebra),
        block_permutation(algebra, perm),
        unitary_conjugation(algebra, unitaries),
        ampliation(algebra, 2),
    ]


def functor_round_trip_report(
    seed: int = 0, algebras: int = 20, max_blocks: int = 4, max_dim: int = 3, tol: float = 1e-11
) -> PropertyReport:
    """
    ``F∘E = id`` and ``E∘F = id`` on seeded algebras and morphisms of every kind.

    Object and morphism identities are exact descriptor comparisons. Each extended
    morphism is also checked against sums, products, adjoints and scalar multiples of
    random affiliated operators, bounded or not.
    """
    rng = np.random.default_rng(seed)
    report = PropertyReport()
    alpha = 0.75 + 2.0j
    for j in range(algebras):
        alg = random_algebra(rng, max_blocks, max_dim)
        ring = functor_E(alg)
        report.add(f"algebra {j}", "F_after_E_object", functor_F(ring) == alg, 0.0)
        report.add(f"algebra {j}", "E_after_F_object", functor_E(functor_F(ring)) == ring, 0.0)
        for phi in _morphisms_of(rng, alg):
            element = f"algebra {j} {phi.kind.value}"
            extended = functor_E(phi)
            report.add(element, "F_after_E_morphism", functor_F(extended) == phi, 0.0)
            report.add(element, "E_after_F_morphism", functor_E(functor_F(extended)) == extended, 0.0)
            x, y = (
                random_operator(rng, alg, tail=RANDOM_TAILS[int(rng.integers(len(RANDOM_TAILS)))], extra_blocks=1)
                for _ in range(2)
            )
            fx, fy = extended(x), extended(y)
            residuals = {
                "extension_additive": representation_residual(extended(x + y), fx + fy),
                "extension_multiplicative": representation_residual(extended(x @ y), fx @ fy),
                "extension_adjoint": representation_residual(extended(x.adjoint()), fx.adjoint()),
                "extension_scalar": representation_residual(extended(x * alpha), fx * alpha),
            }
            for test, residual in residuals.items():
                report.add(element, test, residual <= tol, residual)
    logger.info("Functor round trips", extra={"algebras": algebras, "passed": report.passed})
    return report


# coherence


@dataclass(frozen=True)
class TensorObject:
    """
    A tensor expression over named factors, linearized to matrix-unit coordinates.

    Coordinates run block by block, row-major inside each block. Each carries a
    label: one ``(factor, block, row, column)`` per factor, sorted by factor name.
    """

    name: str
    blocks: tuple[int, ...]
    labels: tuple[tuple, ...]

    @classmethod
    def leaf(cls, name: str, algebra: FiniteBlockAlgebra) -> TensorObject:
        _require_finite(algebra)
        labels = tuple(
            ((name, k, r, c),) for k, n in enumerate(algebra.shape) for r in range(n) for c in range(n)
        )
        return cls(name=name, blocks=algebra.shape, labels=labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, total = [], 0
        for n in self.blocks:
            out.append(total)
            total += n * n
        return tuple(out)

    def decode(self, index: int) -> tuple[int, int, int]:
        for k, (offset, n) in enumerate(zip(self.offsets, self.blocks, strict=True)):
            if index < offset + n * n:
                r, c = divmod(index - offset, n)
                return k, r, c
        raise IndexError(index)

    def index(self, k: int, r: int, c: int) -> int:
        return self.offsets[k] + r * self.blocks[k] + c

    def __matmul__(self, other: TensorObject) -> TensorObject:
        labels = []
        for bx, nx in enumerate(self.blocks):
            for by, ny in enumerate(other.blocks):
                for row in range(nx * ny):
                    for col in range(nx * ny):
                        rx, ry = divmod(row, ny)
                        cx, cy = divmod(col, ny)
                        merged = self.labels[self.index(bx, rx, cx)] + other.labels[other.index(by, ry, cy)]
                        labels.append(tuple(sorted(merged)))
        return TensorObject(
            name=f"({self.name}⊗{other.name})",
            blocks=tuple(nx * ny for nx in self.blocks for ny in other.blocks),
            labels=tuple(labels),
        )


def _strip_unit(label: tuple) -> tuple:
    return tuple(part for part in label if part[0] != "I")


def canonical_map(source: TensorObject, target: TensorObject) -> np.ndarray:
    """
    Coordinate permutation ``source → target`` matching labels, unit factors ignored.

    This realizes the associator, the unitors and the braiding.
    """
    where = {_strip_unit(label): i for i, label in enumerate(target.labels)}
    if len(where) != target.size or source.size != target.size:
        raise AlgebraMismatch(f"{source.name} and {target.name} are not reindexings of each other")
    return np.array([where[_strip_unit(label)] for label in source.labels], dtype=np.int64)


def tensor_maps(
    f: np.ndarray, g: np.ndarray, x: TensorObject, x2: TensorObject, y: TensorObject, y2: TensorObject
) -> np.ndarray:
    """``f ⊗ g : X⊗Y → X'⊗Y'`` computed from block structure alone."""
    source, target = x @ y, x2 @ y2
    out = np.empty(source.size, dtype=np.int64)
    for i in range(source.size):
        k, row, col = source.decode(i)
        bx, by = divmod(k, len(y.blocks))
        ny = y.blocks[by]
        (rx, ry), (cx, cy) = divmod(row, ny), divmod(col, ny)
        kx, rx2, cx2 = x2.decode(int(f[x.index(bx, rx, cx)]))
        ky, ry2, cy2 = y2.decode(int(g[y.index(by, ry, cy)]))
        ny2 = y2.blocks[ky]
        out[i] = target.index(kx * len(y2.blocks) + ky, rx2 * ny2 + ry2, cx2 * ny2 + cy2)
    return out


def then(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """``second ∘ first``."""
    return second[first]


def _identity_map(x: TensorObject) -> np.ndarray:
    return np.arange(x.size, dtype=np.int64)


def coordinate_vector(x: BlockOperator) -> np.ndarray:
    return np.concatenate([np.ravel(block) for block in x.prefix])


def transport(x: BlockOperator, permutation: np.ndarray, target: FiniteBlockAlgebra) -> BlockOperator:
    """The operator over ``target`` whose coordinates are those of ``x`` moved by ``permutation``."""
    moved = np.empty_like(coordinate_vector(x))
    moved[permutation] = coordinate_vector(x)
    blocks, offset = [], 0
    for n in target.shape:
        blocks.append(moved[offset : offset + n * n].reshape(n, n))
        offset += n * n
    return BlockOperator.from_blocks(target, blocks)


def _shapes(*algebras: FiniteBlockAlgebra) -> str:
    return "x".join(str(list(a.shape)) for a in algebras)


def coherence_check(
    m: FiniteBlockAlgebra,
    n: FiniteBlockAlgebra,
    p: FiniteBlockAlgebra,
    q: FiniteBlockAlgebra | None = None,
    seed: int = 0,
) -> CoherenceReport:
    """
    Check the tensor-category coherence axioms on ``M, N, P`` (and ``Q`` for the pentagon).

    Associator, unitors and braiding are coordinate permutations; pentagon,
    triangle, hexagon and the symmetry of the braiding are compared as integer
    arrays. Naturality is checked on seeded random operators within 1e-12. ``Q``
    defaults to the unit algebra ``ℂ``.
    """
    q = q or UNIT_ALGEBRA
    rng = np.random.default_rng(seed)
    report = CoherenceReport()
    M, N, P, Q = (TensorObject.leaf(name, alg) for name, alg in zip("MNPQ", (m, n, p, q), strict=True))
    unit = TensorObject.leaf("I", UNIT_ALGEBRA)

    # pentagon: ((M⊗N)⊗P)⊗Q → M⊗(N⊗(P⊗Q))
    mn, np_, pq = M @ N, N @ P, P @ Q
    start = (mn @ P) @ Q
    finish = M @ (N @ pq)
    top = then(canonical_map(start, mn @ pq), canonical_map(mn @ pq, finish))
    alpha_mnp = canonical_map(mn @ P, M @ np_)
    bottom = then(
        then(
            tensor_maps(alpha_mnp, _identity_map(Q), mn @ P, M @ np_, Q, Q),
            canonical_map((M @ np_) @ Q, M @ (np_ @ Q)),
        ),
        tensor_maps(_identity_map(M), canonical_map(np_ @ Q, N @ pq), M, M, np_ @ Q, N @ pq),
    )
    report.add("pentagon", _shapes(m, n, p, q), start.size, bool(np.array_equal(top, bottom)))

    # triangle: (M⊗I)⊗N → M⊗N
    left = canonical_map((M @ unit) @ N, M @ (unit @ N))
    rho = canonical_map(M @ unit, M)
    lam = canonical_map(unit @ N, N)
    via_rho = tensor_maps(rho, _identity_map(N), M @ unit, M, N, N)
    via_lambda = then(left, tensor_maps(_identity_map(M), lam, M, M, unit @ N, N))
    report.add("triangle", _shapes(m, UNIT_ALGEBRA, n), via_rho.size, bool(np.array_equal(via_rho, via_lambda)))

    # braiding symmetry and hexagon
    sigma_mn = canonical_map(M @ N, N @ M)
    sigma_nm = canonical_map(N @ M, M @ N)
    symmetric = np.array_equal(then(sigma_mn, sigma_nm), _identity_map(M @ N))
    report.add("braiding_symmetry", _shapes(m, n), sigma_mn.size, bool(symmetric))
    direct = canonical_map(M @ np_, np_ @ M)
    hexagon = then(
        then(
            then(canonical_map(M @ np_, mn @ P), tensor_maps(sigma_mn, _identity_map(P), mn, N @ M, P, P)),
            canonical_map((N @ M) @ P, N @ (M @ P)),
        ),
        then(
            tensor_maps(_identity_map(N), canonical_map(M @ P, P @ M), N, N, M @ P, P @ M),
            canonical_map(N @ (P @ M), np_ @ M),
        ),
    )
    report.add("hexagon", _shapes(m, n, p), direct.size, bool(np.array_equal(direct, hexagon)))

    # naturality on operators
    a, b, c = (_random_operator(rng, alg) for alg in (m, n, p))
    lhs = tensor_op(tensor_op(a, b), c)
    rhs = tensor_op(a, tensor_op(b, c))
    moved = transport(lhs, canonical_map(mn @ P, M @ np_), rhs.algebra)
    report.add(
        "associator_naturality", _shapes(m, n, p), (mn @ P).size, representation_residual(moved, rhs) <= TENSOR_TOL
    )
    swapped = transport(tensor_op(a, b), sigma_mn, tensor_algebra(n, m))
    report.add(
        "braiding_naturality",
        _shapes(m, n),
        sigma_mn.size,
        representation_residual(swapped, tensor_op(b, a)) <= TENSOR_TOL,
    )
    unit_op = BlockOperator.identity(UNIT_ALGEBRA)
    unitor = transport(tensor_op(unit_op, a), canonical_map(unit @ M, M), m)
    report.add("unitor_naturality", _shapes(UNIT_ALGEBRA, m), M.size, representation_residual(unitor, a) <= TENSOR_TOL)

    # E is strict monoidal: E(M⊗N) = E(M)⊗E(N) with identity structure maps
    strict = functor_E(tensor_algebra(m, n)) == tensor_ring(functor_E(m), functor_E(n))
    report.add("functor_monoidal", _shapes(m, n), (M @ N).size, bool(strict))
    logger.info("Coherence check", extra={"objects": _shapes(m, n, p, q), "passed": report.passed})
    return report


def _random_operator(rng: np.random.Generator, algebra: FiniteBlockAlgebra) -> BlockOperator:
    blocks = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for n in algebra.shape]
    return BlockOperator.from_blocks(algebra, blocks)


# center


@dataclass(frozen=True)
class CenterDescription:
    """The center ``span{p_k}`` of a block algebra."""

    dimension: int | None
    prefix_units: tuple[BlockOperator, ...]

    @property
    def is_trivial(self) -> bool:
        return self.dimension == 1


def center(algebra: FiniteBlockAlgebra) -> CenterDescription:
    """Center spanned by the block units; ``dimension`` is None with infinitely many blocks."""
    units = tuple(BlockOperator.block_unit(algebra, k) for k in range(algebra.prefix_len))
    return CenterDescription(dimension=None if algebra.has_tail else algebra.prefix_len, prefix_units=units)


def is_factor(algebra: FiniteBlockAlgebra) -> bool:
    return center(algebra).is_trivial


def ring_center_trivial(ring: RingDescriptor) -> bool:
    """The affiliated ring has trivial center exactly when its bounded part does."""
    return is_factor(functor_F(ring))


def central_element(rng: np.random.Generator, algebra: FiniteBlockAlgebra) -> BlockOperator:
    """Random ``Σ c_k·p_k``; infinite tails get a random constant."""
    blocks = [complex(*rng.standard_normal(2)) * np.eye(n) for n in algebra.shape]
    tail = complex(*rng.standard_normal(2)) if algebra.has_tail else None
    return BlockOperator.from_blocks(algebra, blocks, tail=tail)


__all__ = [
    "TENSOR_TOL",
    "UNIT_ALGEBRA",
    "tensor_algebra",
    "tensor_op",
    "tensor_law_residuals",
    "tensor_laws_report",
    "RingDescriptor",
    "ExtendedMorphism",
    "extend_morphism",
    "functor_E",
    "functor_F",
    "compose_extended",
    "identity_extended",
    "tensor_ring",
    "functor_round_trip_report",
    "TensorObject",
    "canonical_map",
    "tensor_maps",
    "then",
    "coordinate_vector",
    "transport",
    "coherence_check",
    "CenterDescription",
    "center",
    "is_factor",
    "ring_center_trivial",
    "central_element",
]
