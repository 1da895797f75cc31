"""
mvnlab - Affiliated Operators of Finite von Neumann Algebras, at Desk Scale

A finite von Neumann algebra is modelled as a weighted direct sum of matrix blocks,
possibly continued by infinitely many blocks with geometric weights. Its affiliated
(possibly unbounded) operators are block-diagonal: explicit matrices on a prefix and
a closed-form scalar formula of the block index on the tail. Every operation the
library offers is computed blockwise, with the tail handled exactly.

Key Components:
- Block algebras, the tracial state and the *-algebra of affiliated operators
- Strong resolvent, strong exponential, τ-measure and strong operator metrics
  with certified truncation bounds
- Lie algebras of unitary subgroups, Trotter and Nelson product formulas, and the
  local (non-)injectivity of the exponential map
- Tensor products, blockwise morphisms and the functors between algebras and rings
- A batch runner that writes CSV reports

Usage:
    from mvnlab.blockvn import BlockOperator, make_algebra
    from mvnlab.topologies import srt_dist

    algebra = make_algebra((), (), tail_ratio=0.5)
    spike = BlockOperator.block_unit(algebra, 5) * 5.0
    distance = srt_dist(spike, BlockOperator.zero(algebra))

    # or from the shell
    # mvnlab topology-compare --family spike --out results/spike.csv

Architecture:
- linops.py: dense matrix kernels (functional calculus, exponentials, Cayley transform)
- grammar.py: closed-form tail formulas of the block index
- blockvn.py / opformat.py: algebras, operators and their text format
- topologies.py / families.py: metrics, convergence reports, bundled sequences
- liealg.py / morphisms.py: Lie algebras, product formulas, blockwise morphisms
- tensorcat.py: tensor products, functors, coherence checks
- models/: request and report models
- orchestrators/: experiment dispatch and CSV output
- config/ and utils/: settings, bundled defaults, logging
"""

from mvnlab.blockvn import BlockOperator, BlockVector, FiniteBlockAlgebra, make_algebra
from mvnlab.models.reports import CoherenceReport, MetricReport, PropertyReport

# Export core types
__all__ = [
    "FiniteBlockAlgebra",
    "BlockOperator",
    "BlockVector",
    "make_algebra",
    "MetricReport",
    "PropertyReport",
    "CoherenceReport",
]

__version__ = "1.0.0"
