"""
Unit tests for tensor products, the E/F functors, coherence and centers (mvnlab.tensorcat).
"""

import numpy as np
import pytest

from mvnlab.blockvn import BlockOperator, make_algebra, representation_residual, tau
from mvnlab.exceptions import AlgebraMismatch, TailConflict
from mvnlab.families import random_operator, random_unitary
from mvnlab.morphisms import ampliation, identity, unitary_conjugation
from mvnlab.tensorcat import (
    RingDescriptor,
    TensorObject,
    canonical_map,
    center,
    central_element,
    coherence_check,
    compose_extended,
    extend_morphism,
    functor_E,
    functor_F,
    functor_round_trip_report,
    identity_extended,
    is_factor,
    ring_center_trivial,
    tensor_algebra,
    tensor_law_residuals,
    tensor_laws_report,
    tensor_op,
    tensor_ring,
)


class TestTensorProducts:
    """Test algebra and operator tensor products."""

    def test_matrix_algebras(self, m2):
        """M2 ⊗ M3 = M6 with weight 1."""
        product = tensor_algebra(m2, make_algebra((3,), (1.0,)))
        assert product.shape == (6,)
        assert product.weights == (1.0,)

    def test_weights_multiply(self):
        """Blocks and weights are taken in lexicographic order."""
        m = make_algebra((1, 2), (0.5, 0.5))
        n = make_algebra((1, 1), (0.25, 0.75))
        product = tensor_algebra(m, n)
        assert product.shape == (1, 1, 2, 2)
        assert product.weights == pytest.approx((0.125, 0.375, 0.125, 0.375))

    def test_trace_is_multiplicative(self, m2):
        """τ(p ⊗ q) = τ(p)·τ(q) = 1/4 for rank-one projections of M2."""
        p = BlockOperator.from_blocks(m2, [np.diag([1.0, 0.0])])
        q = BlockOperator.from_blocks(m2, [np.diag([0.0, 1.0])])
        assert tau(tensor_op(p, q)) == pytest.approx(0.25)

    def test_diagonal_kronecker(self, m2, scalar_algebra):
        """diag(1, 2) ⊗ 3 = diag(3, 6)."""
        op = tensor_op(BlockOperator.from_blocks(m2, [np.diag([1.0, 2.0])]), BlockOperator.scalar(scalar_algebra, 3.0))
        np.testing.assert_allclose(op.block(0), np.diag([3.0, 6.0]))

    def test_laws(self, rng, finite_algebra, m2):
        """Product, adjoint, bilinearity and scalars hold to rounding."""
        a, c = (random_operator(rng, finite_algebra) for _ in range(2))
        b, d = (random_operator(rng, m2) for _ in range(2))
        residuals = tensor_law_residuals(a, b, c, d)
        assert set(residuals) == {"product", "adjoint", "bilinear", "scalar"}
        assert max(residuals.values()) <= 1e-12

    def test_report_rows(self, rng, m2):
        """Four law rows per quadruple."""
        quad = tuple(random_operator(rng, m2) for _ in range(4))
        report = tensor_laws_report([quad, quad])
        assert len(report.rows) == 8
        assert report.passed

    def test_tails_rejected(self, mixed_algebra, m2):
        """Algebras with infinitely many blocks have no tensor product here."""
        with pytest.raises(TailConflict):
            tensor_algebra(mixed_algebra, m2)


class TestFunctors:
    """Test E (affiliated operators) and F (bounded part)."""

    def test_objects_round_trip(self, mixed_algebra):
        """F(E(M)) = M and E(F(R)) = R."""
        ring = functor_E(mixed_algebra)
        assert functor_F(ring) == mixed_algebra
        assert functor_E(functor_F(ring)) == ring

    def test_bounded_part(self, diagonal_algebra, tail_k_operator):
        """The ring holds k; its bounded part does not."""
        ring = RingDescriptor(diagonal_algebra)
        assert ring.contains(tail_k_operator)
        assert not ring.bounded_part(tail_k_operator)
        assert ring.bounded_part(BlockOperator.identity(diagonal_algebra))

    def test_extension_on_unbounded_operator(self, rng, mixed_algebra):
        """E(conjugation) maps an operator with tail k to w X w*."""
        unitaries = [random_unitary(rng, n) for n in mixed_algebra.shape]
        phi = unitary_conjugation(mixed_algebra, unitaries)
        x = random_operator(rng, mixed_algebra, tail="k")
        image = extend_morphism(phi, x)
        for k, w in enumerate(unitaries):
            np.testing.assert_allclose(image.block(k), w @ x.block(k) @ w.conj().T, atol=1e-12)
        assert image.formula == x.formula

    def test_composition_and_identity(self, mixed_algebra):
        """E preserves composition and identities."""
        phi = functor_E(ampliation(mixed_algebra, 2))
        ident = identity_extended(functor_E(mixed_algebra))
        assert compose_extended(phi, ident) == phi
        assert functor_F(ident) == identity(mixed_algebra)

    def test_tensor_ring(self, m2, finite_algebra):
        """E(M ⊗ N) = E(M) ⊗ E(N)."""
        assert tensor_ring(functor_E(m2), functor_E(finite_algebra)) == functor_E(tensor_algebra(m2, finite_algebra))

    def test_round_trip_report(self):
        """Seeded algebras and morphisms of every kind round-trip."""
        report = functor_round_trip_report(seed=0, algebras=5)
        assert report.passed
        assert {row.test for row in report.rows} >= {"F_after_E_object", "E_after_F_morphism", "extension_adjoint"}


class TestCoherence:
    """Test the permutation-level coherence checks."""

    def test_scalars(self, scalar_algebra):
        """ℂ ⊗ ℂ ⊗ ℂ passes every axiom."""
        report = coherence_check(scalar_algebra, scalar_algebra, scalar_algebra)
        assert report.passed
        assert [row.axiom for row in report.rows] == [
            "pentagon",
            "triangle",
            "braiding_symmetry",
            "hexagon",
            "associator_naturality",
            "braiding_naturality",
            "unitor_naturality",
            "functor_monoidal",
        ]

    def test_pentagon_size(self, m2):
        """((M2 ⊗ M2) ⊗ M2) ⊗ ℂ = M8 has 64 coordinates."""
        report = coherence_check(m2, m2, m2)
        pentagon = report.rows[0]
        assert pentagon.permutation_size == 64
        assert pentagon.objects == "[2]x[2]x[2]x[1]"

    @pytest.mark.parametrize(
        "shapes",
        [((2,), (1,), (3,)), ((1, 2), (2,), (1, 1)), ((2, 1), (1, 2), (2,))],
    )
    def test_mixed_shapes(self, shapes):
        """Multi-block algebras pass with seeded naturality operators."""
        algebras = [make_algebra(s, tuple(1.0 / len(s) for _ in s)) for s in shapes]
        assert coherence_check(*algebras, q=algebras[0], seed=3).passed

    def test_canonical_map_needs_same_factors(self, m2, scalar_algebra):
        """Objects over different factors have no canonical map."""
        a = TensorObject.leaf("M", m2)
        b = TensorObject.leaf("N", scalar_algebra)
        with pytest.raises(AlgebraMismatch):
            canonical_map(a, b)


class TestCenter:
    """Test centers and factors."""

    def test_full_matrix_algebra_is_factor(self):
        """M5 has trivial center."""
        assert is_factor(make_algebra((5,), (1.0,)))

    def test_direct_sum_is_not_factor(self, finite_algebra):
        """M2 ⊕ M3 has a two-dimensional center."""
        assert center(finite_algebra).dimension == 2
        assert not is_factor(finite_algebra)

    def test_infinitely_many_blocks(self, diagonal_algebra):
        """Infinitely many blocks give an infinite-dimensional center."""
        assert center(diagonal_algebra).dimension is None
        assert not ring_center_trivial(functor_E(diagonal_algebra))

    def test_central_elements_commute(self, rng, mixed_algebra):
        """Σ c_k p_k commutes with every operator."""
        z = central_element(rng, mixed_algebra)
        x = random_operator(rng, mixed_algebra, tail="2 - 0.5i*k")
        assert representation_residual(z @ x, x @ z) <= 1e-12
