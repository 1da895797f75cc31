"""
Blockwise unital *-homomorphisms between block algebras.

A morphism is described, not stored as a linear map:

- ``Identity``
- ``BlockPermutation``: block ``j`` of the target is block ``perm[j]`` of the source
- ``UnitaryConjugation``: ``X_k ↦ w_k X_k w_k*`` on the prefix blocks
- ``Ampliation``: ``X_k ↦ X_k ⊗ 1_m`` on every block
- ``Composite``: parts applied right to left

Tail blocks act by scalars, so every descriptor extends to the tail formula
unchanged. Applying a descriptor to an unbounded operator is its unique extension to
the affiliated operators.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from mvnlab import linops
from mvnlab.blockvn import BlockOperator, FiniteBlockAlgebra, representation_residual
from mvnlab.exceptions import BadMorphism
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("morphisms")

MORPHISM_TOL = 1e-11


class MorphismKind(str, Enum):
    IDENTITY = "Identity"
    BLOCK_PERMUTATION = "BlockPermutation"
    UNITARY_CONJUGATION = "UnitaryConjugation"
    AMPLIATION = "Ampliation"
    COMPOSITE = "Composite"


@dataclass(frozen=True, eq=False)
class MorphismDescriptor:
    """
    A blockwise morphism ``source → target``.

    Use the module constructors (:func:`identity`, :func:`block_permutation`,
    :func:`unitary_conjugation`, :func:`ampliation`, :func:`compose`); they validate.
    Equality is structural, with unitaries compared entrywise.
    """

    kind: MorphismKind
    source: FiniteBlockAlgebra
    target: FiniteBlockAlgebra
    permutation: tuple[int, ...] = ()
    unitaries: tuple[np.ndarray, ...] = ()
    multiplicity: int = 1
    parts: tuple[MorphismDescriptor, ...] = field(default=())

    def key(self) -> tuple:
        return (
            self.kind.value,
            self.source,
            self.target,
            self.permutation,
            tuple((u.shape, u.tobytes()) for u in self.unitaries),
            self.multiplicity,
            tuple(p.key() for p in self.parts),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MorphismDescriptor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def describe(self) -> str:
        if self.kind is MorphismKind.BLOCK_PERMUTATION:
            return f"{self.kind.value}({list(self.permutation)})"
        if self.kind is MorphismKind.AMPLIATION:
            return f"{self.kind.value}({self.multiplicity})"
        if self.kind is MorphismKind.COMPOSITE:
            return " ∘ ".join(p.describe() for p in self.parts)
        return self.kind.value

    def apply(self, x: BlockOperator) -> BlockOperator:
        """
        Image of ``x``, bounded or not.

        Raises:
            BadMorphism: If ``x`` does not live over the source algebra
        """
        if x.algebra != self.source:
            raise BadMorphism(f"{self.describe()} expects operators over {self.source.describe()}")
        if self.kind is MorphismKind.IDENTITY:
            return x
        if self.kind is MorphismKind.BLOCK_PERMUTATION:
            size = len(self.permutation)
            blocks = tuple(x.prefix[self.permutation[j]] for j in range(size)) + x.prefix[size:]
            return BlockOperator(algebra=self.target, prefix=blocks, tail=x.tail)
        if self.kind is MorphismKind.UNITARY_CONJUGATION:
            blocks = tuple(
                w @ block @ linops.dagger(w) for w, block in zip(self.unitaries, x.prefix, strict=False)
            ) + x.prefix[len(self.unitaries) :]
            return BlockOperator(algebra=self.target, prefix=blocks, tail=x.tail)
        if self.kind is MorphismKind.AMPLIATION:
            one = np.eye(self.multiplicity, dtype=np.complex128)
            return BlockOperator(algebra=self.target, prefix=tuple(np.kron(b, one) for b in x.prefix), tail=x.tail)
        for part in reversed(self.parts):
            x = part.apply(x)
        return x

    __call__ = apply


def _generators(algebra: FiniteBlockAlgebra) -> list[BlockOperator]:
    """Identity, block units and one off-diagonal matrix unit per prefix block."""
    gens = [BlockOperator.identity(algebra)]
    count = algebra.prefix_len + (1 if algebra.has_tail else 0)
    for k in range(count):
        gens.append(BlockOperator.block_unit(algebra, k))
        n = algebra.block_dim(k)
        if n > 1:
            blocks = [np.zeros((algebra.block_dim(j),) * 2, dtype=np.complex128) for j in range(max(count, k + 1))]
            blocks[k][0, n - 1] = 1.0
            prefix = blocks if algebra.has_tail else blocks[: algebra.prefix_len]
            gens.append(BlockOperator.from_blocks(algebra, prefix))
    return gens


def homomorphism_residual(phi: MorphismDescriptor) -> float:
    """Worst unital, *-preserving and multiplicative defect on the bounded generators."""
    gens = _generators(phi.source)
    images = [phi.apply(g) for g in gens]
    worst = representation_residual(images[0], BlockOperator.identity(phi.target))
    for g, image in zip(gens, images, strict=True):
        worst = max(worst, representation_residual(phi.apply(g.adjoint()), image.adjoint()))
        for h, h_image in zip(gens, images, strict=True):
            worst = max(worst, representation_residual(phi.apply(g @ h), image @ h_image))
    return worst


def validate(phi: MorphismDescriptor, tol: float = MORPHISM_TOL) -> MorphismDescriptor:
    """
    Check ``phi`` on the bounded generators of its source.

    Raises:
        BadMorphism: If the unital *-homomorphism residual exceeds ``tol``
    """
    residual = homomorphism_residual(phi)
    if residual > tol:
        raise BadMorphism(f"{phi.describe()} is not a unital *-homomorphism (residual {residual:.3e})")
    logger.debug("Validated morphism", extra={"morphism": phi.describe(), "residual": residual})
    return phi


def identity(algebra: FiniteBlockAlgebra) -> MorphismDescriptor:
    return MorphismDescriptor(kind=MorphismKind.IDENTITY, source=algebra, target=algebra)


def permuted_algebra(algebra: FiniteBlockAlgebra, permutation: Sequence[int]) -> FiniteBlockAlgebra:
    return FiniteBlockAlgebra(
        shape=tuple(algebra.shape[i] for i in permutation),
        weights=tuple(algebra.weights[i] for i in permutation),
        tail_ratio=algebra.tail_ratio,
        tail_mass=algebra.tail_mass,
        tail_dim=algebra.tail_dim,
    )


def block_permutation(
    source: FiniteBlockAlgebra, permutation: Sequence[int], target: FiniteBlockAlgebra | None = None
) -> MorphismDescriptor:
    """
    Reindex the prefix blocks: target block ``j`` receives source block ``permutation[j]``.

    The default target carries the permuted weights, so the trace is preserved.

    Raises:
        BadMorphism: If ``permutation`` is not a permutation of the prefix or the
            target block sizes disagree
    """
    perm = tuple(int(i) for i in permutation)
    if sorted(perm) != list(range(source.prefix_len)):
        raise BadMorphism(f"{list(perm)} is not a permutation of {source.prefix_len} blocks")
    expected = permuted_algebra(source, perm)
    target = target or expected
    if (
        target.shape != expected.shape
        or target.tail_ratio != expected.tail_ratio
        or target.tail_dim != expected.tail_dim
    ):
        raise BadMorphism(f"target {target.describe()} does not match the reindexed source {expected.describe()}")
    return MorphismDescriptor(kind=MorphismKind.BLOCK_PERMUTATION, source=source, target=target, permutation=perm)


def unitary_conjugation(source: FiniteBlockAlgebra, unitaries: Sequence[np.ndarray]) -> MorphismDescriptor:
    """
    Conjugate prefix block ``k`` by ``unitaries[k]``.

    Raises:
        BadMorphism: If a matrix has the wrong size or is not unitary
    """
    if len(unitaries) != source.prefix_len:
        raise BadMorphism(f"{len(unitaries)} unitaries for {source.prefix_len} prefix blocks")
    frozen = []
    for k, w in enumerate(unitaries):
        w = np.array(np.atleast_2d(w), dtype=np.complex128)
        if w.shape != (source.shape[k],) * 2:
            raise BadMorphism(f"unitary {k} has shape {w.shape}, block has size {source.shape[k]}")
        if not linops.is_unitary(w):
            raise BadMorphism(f"matrix {k} is not unitary (residual {linops.unitarity_residual(w):.3e})")
        w.setflags(write=False)
        frozen.append(w)
    return MorphismDescriptor(
        kind=MorphismKind.UNITARY_CONJUGATION, source=source, target=source, unitaries=tuple(frozen)
    )


def ampliated_algebra(algebra: FiniteBlockAlgebra, multiplicity: int) -> FiniteBlockAlgebra:
    return FiniteBlockAlgebra(
        shape=tuple(n * multiplicity for n in algebra.shape),
        weights=algebra.weights,
        tail_ratio=algebra.tail_ratio,
        tail_mass=algebra.tail_mass,
        tail_dim=algebra.tail_dim * multiplicity,
    )


def ampliation(source: FiniteBlockAlgebra, multiplicity: int) -> MorphismDescriptor:
    """``X ↦ X ⊗ 1_m`` on every block."""
    if multiplicity < 1:
        raise BadMorphism(f"multiplicity must be ≥ 1, got {multiplicity}")
    return MorphismDescriptor(
        kind=MorphismKind.AMPLIATION,
        source=source,
        target=ampliated_algebra(source, multiplicity),
        multiplicity=int(multiplicity),
    )


def compose(phi: MorphismDescriptor, psi: MorphismDescriptor) -> MorphismDescriptor:
    """
    ``phi ∘ psi`` (``psi`` applied first).

    Nested composites are flattened and identities dropped, so composition is
    associative and unital at descriptor level.

    Raises:
        BadMorphism: If the target of ``psi`` is not the source of ``phi``
    """
    if psi.target != phi.source:
        raise BadMorphism(f"cannot compose {phi.describe()} after {psi.describe()}: algebras differ")
    parts: list[MorphismDescriptor] = []
    for d in (phi, psi):
        parts.extend(d.parts if d.kind is MorphismKind.COMPOSITE else (d,))
    parts = [p for p in parts if p.kind is not MorphismKind.IDENTITY]
    if not parts:
        return identity(psi.source)
    if len(parts) == 1:
        return parts[0]
    return MorphismDescriptor(kind=MorphismKind.COMPOSITE, source=psi.source, target=phi.target, parts=tuple(parts))


__all__ = [
    "MORPHISM_TOL",
    "MorphismKind",
    "MorphismDescriptor",
    "homomorphism_residual",
    "validate",
    "identity",
    "permuted_algebra",
    "block_permutation",
    "unitary_conjugation",
    "ampliated_algebra",
    "ampliation",
    "compose",
]
