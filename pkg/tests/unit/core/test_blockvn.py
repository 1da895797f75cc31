"""
Unit tests for block algebras and affiliated block operators (mvnlab.blockvn).
"""

import math

import numpy as np
import pytest

from mvnlab.blockvn import (
    BlockOperator,
    BlockVector,
    TailKind,
    bounded_part_membership,
    cayley_inverse_demo,
    direct_sum,
    make_algebra,
    representation_residual,
    star_algebra_residuals,
    sup_norm,
    tau,
)
from mvnlab.exceptions import (
    AlgebraMismatch,
    BadWeights,
    DimensionMismatch,
    GrammarOverflow,
    SpectralObstruction,
    TailConflict,
    Unbounded,
)
from mvnlab.families import random_operator, random_triple
from mvnlab.grammar import Formula


class TestMakeAlgebra:
    """Test algebra construction and weight validation."""

    def test_single_block(self, m2):
        """shape (2), weights (1) is M2."""
        assert m2.shape == (2,)
        assert m2.is_finite
        assert m2.total_dim == 2

    def test_geometric_diagonal_weights(self, diagonal_algebra):
        """The diagonal algebra has w_k = 2^{-(k+1)}."""
        for k in range(10):
            assert diagonal_algebra.weight(k) == pytest.approx(2.0 ** -(k + 1))
        assert diagonal_algebra.tail_mass_from(0) == pytest.approx(1.0)

    def test_weights_must_sum_to_one(self):
        """A finite block list with mass 0.8 is rejected."""
        with pytest.raises(BadWeights):
            make_algebra((1, 1), (0.5, 0.3))

    def test_declared_tail_mass_must_match(self):
        """Prefix 0.8 plus declared tail mass 0.3 is not 1."""
        with pytest.raises(BadWeights):
            make_algebra((1, 1), (0.5, 0.3), tail_ratio=0.5, tail_mass=0.3)

    def test_tail_takes_remaining_mass(self):
        """The tail receives 1 − Σ prefix."""
        alg = make_algebra((1, 1), (0.5, 0.3), tail_ratio=0.5)
        assert alg.tail_mass == pytest.approx(0.2)
        assert math.fsum(alg.weight(k) for k in range(200)) == pytest.approx(1.0)

    def test_nonpositive_weight(self):
        """Zero weights are rejected."""
        with pytest.raises(BadWeights):
            make_algebra((1, 1), (1.0, 0.0))

    def test_shape_weight_mismatch(self):
        """One shape with two weights is a dimension error."""
        with pytest.raises(DimensionMismatch):
            make_algebra((2,), (0.5, 0.5))

    def test_ratio_range(self):
        """The tail ratio must lie in (0, 1)."""
        with pytest.raises(BadWeights):
            make_algebra((1,), (0.5,), tail_ratio=1.0)

    def test_missing_block(self, finite_algebra):
        """Blocks past a finite list do not exist."""
        with pytest.raises(DimensionMismatch):
            finite_algebra.block_dim(2)

    def test_infinite_total_dim(self, diagonal_algebra):
        """An infinite tail has no total dimension."""
        with pytest.raises(TailConflict):
            _ = diagonal_algebra.total_dim


class TestBlockOperatorConstruction:
    """Test operator invariants."""

    def test_finite_algebra_rejects_tail(self, finite_algebra):
        """A finite block list admits no tail formula."""
        with pytest.raises(TailConflict):
            BlockOperator.from_blocks(finite_algebra, [np.eye(2), np.eye(3)], tail="k")

    def test_wrong_block_shape(self, finite_algebra):
        """Block sizes must match the algebra."""
        with pytest.raises(DimensionMismatch):
            BlockOperator.from_blocks(finite_algebra, [np.eye(2), np.eye(2)])

    def test_prefix_must_cover_algebra_prefix(self, mixed_algebra):
        """A tailed operator needs at least the algebra's explicit blocks."""
        with pytest.raises(DimensionMismatch):
            BlockOperator.from_blocks(mixed_algebra, [np.eye(2)], tail="1")

    def test_blocks_are_read_only(self, m2):
        """Stored blocks cannot be mutated."""
        op = BlockOperator.from_blocks(m2, [np.eye(2)])
        with pytest.raises(ValueError):
            op.prefix[0][0, 0] = 5.0

    def test_tail_kind(self, diagonal_algebra, tail_k_operator):
        """Zero and formula tails are told apart."""
        assert BlockOperator.zero(diagonal_algebra).tail.kind is TailKind.ZERO
        assert tail_k_operator.tail.kind is TailKind.SCALAR_FORMULA

    def test_block_unit(self, diagonal_algebra):
        """p_3 is 1 on block 3 and 0 elsewhere."""
        p = BlockOperator.block_unit(diagonal_algebra, 3)
        assert p.block(3)[0, 0] == 1.0
        assert p.block(2)[0, 0] == 0.0
        assert p.block(10)[0, 0] == 0.0


class TestStarAlgebra:
    """Test the *-algebra operations."""

    def test_unit_laws(self, rng, mixed_algebra):
        """A + 0 = A and A·1 = A."""
        a = random_operator(rng, mixed_algebra, tail="k")
        assert representation_residual(a + BlockOperator.zero(mixed_algebra), a) == 0.0
        assert representation_residual(a @ BlockOperator.identity(mixed_algebra), a) == 0.0

    def test_scalar_tail_product(self, diagonal_algebra, tail_k_operator):
        """Tail k times tail 1 has tail k."""
        product = tail_k_operator @ BlockOperator.identity(diagonal_algebra)
        assert product.formula == Formula.index()

    def test_random_laws(self, rng):
        """Every *-algebra law holds on random triples, bounded or not."""
        for _ in range(10):
            residuals = star_algebra_residuals(*random_triple(rng, 4, 4))
            assert max(residuals.values()) <= 1e-11, residuals

    def test_associativity_four_blocks(self, rng):
        """(AB)C = A(BC) blockwise on four blocks."""
        alg = make_algebra((2, 3, 1, 4), (0.1, 0.2, 0.3, 0.4))
        a, b, c = (random_operator(rng, alg) for _ in range(3))
        assert representation_residual((a @ b) @ c, a @ (b @ c)) <= 1e-11

    def test_mismatched_algebras(self, m2, finite_algebra):
        """Operators over different algebras do not combine."""
        with pytest.raises(AlgebraMismatch):
            _ = BlockOperator.identity(m2) + BlockOperator.identity(finite_algebra)

    def test_adjoint_conjugates_tail(self, diagonal_algebra):
        """The adjoint of (i·k) is (−i·k)."""
        op = BlockOperator.from_formula(diagonal_algebra, "i*k")
        assert op.adjoint().formula == Formula.index() * -1j

    def test_exp_of_imaginary_tail(self, diagonal_algebra):
        """exp of the tail i·k is e^{ik}."""
        op = BlockOperator.from_formula(diagonal_algebra, "i*k").exp()
        assert op.block(4)[0, 0] == pytest.approx(np.exp(4j))

    def test_exp_of_quadratic_tail(self, diagonal_algebra):
        """exp of a quadratic tail leaves the grammar."""
        with pytest.raises(GrammarOverflow):
            BlockOperator.from_formula(diagonal_algebra, "k^2").exp()

    def test_self_adjointness(self, rng, mixed_algebra, tail_k_operator):
        """Hermitian blocks with a real tail are self-adjoint; an imaginary tail is not."""
        assert tail_k_operator.is_self_adjoint()
        h = random_operator(rng, mixed_algebra, tail="1", kind="hermitian")
        assert h.is_self_adjoint()
        assert not random_operator(rng, mixed_algebra, tail="i", kind="hermitian").is_self_adjoint()

    def test_skew_adjointness(self, rng, mixed_algebra):
        """Skew-Hermitian blocks with an imaginary tail are skew-adjoint."""
        assert random_operator(rng, mixed_algebra, tail="i*k", kind="skew").is_skew_adjoint()


class TestNormsAndTrace:
    """Test sup_norm, bounded part membership and the trace."""

    def test_zero_norm(self, diagonal_algebra):
        """sup_norm(0) = 0."""
        assert sup_norm(BlockOperator.zero(diagonal_algebra)) == 0.0

    def test_prefix_norms(self):
        """Prefix norms (1, 3) with zero tail give 3."""
        alg = make_algebra((1, 1), (0.5, 0.3), tail_ratio=0.5)
        op = BlockOperator.from_blocks(alg, [1.0, 3.0])
        assert sup_norm(op) == pytest.approx(3.0)

    def test_unbounded_tail(self, tail_k_operator):
        """Tail k is flagged unbounded."""
        assert sup_norm(tail_k_operator) == math.inf
        assert not bounded_part_membership(tail_k_operator)

    def test_bounded_part(self, diagonal_algebra):
        """The identity and an exp(−k) tail lie in the algebra."""
        assert bounded_part_membership(BlockOperator.identity(diagonal_algebra))
        decaying = BlockOperator.from_formula(diagonal_algebra, "exp(-k)")
        assert bounded_part_membership(decaying)
        assert sup_norm(decaying) == pytest.approx(1.0)

    def test_trace_of_identity(self, diagonal_algebra, mixed_algebra, finite_algebra):
        """τ(1) = 1 on every algebra."""
        for alg in (diagonal_algebra, mixed_algebra, finite_algebra):
            assert tau(BlockOperator.identity(alg)) == pytest.approx(1.0)

    def test_trace_of_rank_one_projection(self, m2):
        """A rank-1 projection in M2 has trace 1/2."""
        p = BlockOperator.from_blocks(m2, [np.diag([1.0, 0.0])])
        assert tau(p) == pytest.approx(0.5)

    def test_trace_of_decaying_tail(self, diagonal_algebra):
        """τ(e^{−k}) = Σ 2^{-(k+1)} e^{−k} in closed form."""
        op = BlockOperator.from_formula(diagonal_algebra, "exp(-k)")
        assert tau(op) == pytest.approx(0.5 / (1.0 - 0.5 * math.exp(-1.0)))

    def test_trace_is_tracial(self, rng, mixed_algebra):
        """τ(xy) = τ(yx) on random bounded operators."""
        x = random_operator(rng, mixed_algebra, tail="exp(-k)", extra_blocks=1)
        y = random_operator(rng, mixed_algebra, tail="2 + exp(-0.5*k)")
        assert abs(tau(x @ y) - tau(y @ x)) <= 1e-12

    def test_trace_is_positive(self, rng, mixed_algebra):
        """τ(x*x) ≥ 0."""
        x = random_operator(rng, mixed_algebra, tail="exp(-k)")
        value = tau(x.adjoint() @ x)
        assert value.real >= 0.0
        assert abs(value.imag) <= 1e-12

    def test_trace_needs_bounded(self, tail_k_operator):
        """τ of an unbounded operator is undefined."""
        with pytest.raises(Unbounded):
            tau(tail_k_operator)


class TestDirectSum:
    """Test the weighted direct sum."""

    def test_zero_sum(self, m2):
        """0 ⊕ 0 = 0."""
        zero = BlockOperator.zero(m2)
        total = direct_sum(zero, zero, 0.5)
        assert sup_norm(total) == 0.0

    def test_trace_of_projection_sum(self, m2):
        """τ(p ⊕ 0) = 1/4 for a rank-1 p and θ = 1/2."""
        p = BlockOperator.from_blocks(m2, [np.diag([1.0, 0.0])])
        assert tau(direct_sum(p, BlockOperator.zero(m2), 0.5)) == pytest.approx(0.25)

    def test_products_split(self, rng, m2, finite_algebra):
        """(A⊕B)(C⊕D) = AC ⊕ BD."""
        a, c = random_operator(rng, m2), random_operator(rng, m2)
        b, d = random_operator(rng, finite_algebra), random_operator(rng, finite_algebra)
        lhs = direct_sum(a, b, 0.3) @ direct_sum(c, d, 0.3)
        assert representation_residual(lhs, direct_sum(a @ c, b @ d, 0.3)) <= 1e-12

    def test_tail_is_reindexed(self, m2, diagonal_algebra, tail_k_operator):
        """The tail of the second summand keeps acting on its own blocks."""
        total = direct_sum(BlockOperator.zero(m2), tail_k_operator, 0.5)
        assert total.block(1 + 5)[0, 0] == pytest.approx(5.0)

    def test_tailed_first_summand(self, diagonal_algebra, m2):
        """An infinite tail cannot precede another algebra."""
        with pytest.raises(TailConflict):
            direct_sum(BlockOperator.zero(diagonal_algebra), BlockOperator.zero(m2), 0.5)


class TestApply:
    """Test the action on finitely supported vectors."""

    def test_zero_operator(self, diagonal_algebra):
        """A·0 = 0 for A = 0."""
        xi = BlockVector.unit(diagonal_algebra, 2)
        assert BlockOperator.zero(diagonal_algebra).apply(xi).norm() == 0.0

    def test_tail_action(self, diagonal_algebra, tail_k_operator):
        """The tail-k operator maps e₁ of block 5 to 5·e₁."""
        out = tail_k_operator.apply(BlockVector.unit(diagonal_algebra, 5))
        np.testing.assert_allclose(out.component(5), [5.0])

    def test_adjoint_pairing(self, rng, mixed_algebra):
        """⟨ξ, Aη⟩ = ⟨A*ξ, η⟩."""
        a = random_operator(rng, mixed_algebra, tail="2 - 0.5i*k", extra_blocks=1)

        def vector() -> BlockVector:
            dims = {k: mixed_algebra.block_dim(k) for k in (0, 1, 4)}
            return BlockVector({k: rng.standard_normal(n) + 1j * rng.standard_normal(n) for k, n in dims.items()})

        xi, eta = vector(), vector()
        assert abs(xi.inner(a.apply(eta)) - a.adjoint().apply(xi).inner(eta)) <= 1e-12

    def test_vector_arithmetic(self, diagonal_algebra):
        """Sums, differences and norms of block vectors."""
        e0, e1 = BlockVector.unit(diagonal_algebra, 0), BlockVector.unit(diagonal_algebra, 1)
        v = e0 + e1 * 2.0
        assert v.support == (0, 1)
        assert v.norm() == pytest.approx(math.sqrt(5.0))
        assert (v - e0).norm() == pytest.approx(2.0)


class TestCayleyDemo:
    """Test rebuilding a self-adjoint operator from its Cayley transform."""

    def test_round_trip(self, rng, mixed_algebra):
        """A random unitary with a unimodular tail comes back Hermitian and consistent."""
        s = random_operator(rng, mixed_algebra, tail=Formula.constant(np.exp(0.7j)), kind="unitary")
        demo = cayley_inverse_demo(s)
        assert demo.hermiticity_residual <= 1e-8
        assert demo.round_trip_residual <= 1e-8
        assert demo.operator.formula.is_real()

    def test_tail_equal_to_one(self, mixed_algebra):
        """A tail value of 1 has no inverse Cayley transform."""
        s = BlockOperator.from_blocks(mixed_algebra, [-np.eye(2), -np.eye(3)], tail=1.0)
        with pytest.raises(SpectralObstruction):
            cayley_inverse_demo(s)
