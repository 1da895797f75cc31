"""
Experiment Runner - batch experiments over the block-algebra library.

Each command maps to one handler in a dispatch table. A handler draws all of its
random inputs up front from a generator seeded by the request, evaluates its rows
(concurrently when ``MVNLAB_THREADS > 1``), and returns the reports to write plus
an overall pass/fail flag. Output assembly is always sequential and in draw order,
so a fixed seed gives byte-identical CSV files.

Exit codes:
- 0: every property held
- 1: a property failed or a precondition was violated
- 2: the input could not be used (missing file, parse error, bad weights, ...)
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import TypeVar

import numpy as np
import yaml
from pydantic import ValidationError

from mvnlab.blockvn import (
    BlockOperator,
    FiniteBlockAlgebra,
    cayley_inverse_demo,
    make_algebra,
    star_algebra_residuals,
)
from mvnlab.config.settings import LabSettings, get_settings
from mvnlab.exceptions import INPUT_ERRORS, AlgebraMismatch, MvnLabError, NotHermitian, PreconditionFailed
from mvnlab.families import (
    DIAGONAL_ALGEBRA,
    FamilyKind,
    get_family,
    random_algebra,
    random_operator,
    random_skew_hermitian,
    random_triple,
    with_norm,
)
from mvnlab.grammar import Formula
from mvnlab.liealg import (
    DEFAULT_T_SAMPLES,
    SkewAdjointOp,
    SubgroupKind,
    exp_injectivity_probe,
    lie_closure_check,
    product_report,
    random_lie_pair,
    subgroup_spec,
    unitary_algebra_check,
)
from mvnlab.models.experiment import Command, ExperimentConfig
from mvnlab.models.reports import CoherenceReport, CsvReport, MetricReport, PropertyReport, PropertyRow
from mvnlab.opformat import read_operator_file
from mvnlab.orchestrators.reporting import emit_report, sibling_path
from mvnlab.tensorcat import coherence_check, functor_round_trip_report, tensor_laws_report
from mvnlab.topologies import convergence_report
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("experiment_runner")

T = TypeVar("T")
R = TypeVar("R")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

# Exceptions reported as unusable input
INPUT_ERROR_TYPES: tuple[type[BaseException], ...] = INPUT_ERRORS + (
    AlgebraMismatch,
    ValidationError,
    yaml.YAMLError,
    OSError,
)

CAYLEY_TOL = 1e-8
TROTTER_RATE_RANGE = (0.4, 0.6)
COMMUTING_TOL = 1e-12
STDOUT = "-"


@dataclass
class RunOutcome:
    """Reports produced by one handler, in output order."""

    outputs: list[tuple[CsvReport, str | None]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(_report_passed(report) for report, _ in self.outputs)

    def failures(self) -> list[str]:
        messages = []
        for report, _ in self.outputs:
            if isinstance(report, PropertyReport):
                messages.extend(f"{row.element}: {row.test} (residual {row.residual:.3e})" for row in report.failures())
            elif isinstance(report, CoherenceReport):
                messages.extend(f"{row.axiom} on {row.objects}" for row in report.rows if row.verdict.value == "fail")
            elif isinstance(report, MetricReport) and not _report_passed(report):
                messages.append(f"family {report.family}: verdicts {[v.value for v in report.verdicts.values()]}")
        return messages


def _report_passed(report: CsvReport) -> bool:
    if isinstance(report, (PropertyReport, CoherenceReport)):
        return report.passed
    if isinstance(report, MetricReport):
        if report.family is not None:
            kind = get_family(report.family).kind
            return report.all_converging() if kind is FamilyKind.CONVERGENT else report.none_converging()
        # the metrics must agree with each other
        return report.all_converging() or report.none_converging()
    return True


def _parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int) -> list[R]:
    """``map`` over a thread pool capped at ``threads``; results keep input order."""
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _relabel(report: PropertyReport, prefix: str) -> list[PropertyRow]:
    return [row.model_copy(update={"element": f"{prefix} {row.element}"}) for row in report.rows]


def _operators(paths: Sequence[str]) -> list[BlockOperator]:
    items = [read_operator_file(path) for path in paths]
    for path, item in zip(paths, items, strict=True):
        if not isinstance(item, BlockOperator):
            raise AlgebraMismatch(f"{path} describes an algebra, an operator is required")
    return items  # type: ignore[return-value]


def _param_algebra(config: ExperimentConfig) -> FiniteBlockAlgebra:
    shapes = config.param("shapes", [2, 3])
    weights = config.param("weights", [1.0 / len(shapes)] * len(shapes))
    return make_algebra(shapes, weights, tail_ratio=config.param("tail_ratio"))


def _uniform_algebra(shape: Sequence[int]) -> FiniteBlockAlgebra:
    return make_algebra(shape, [1.0 / len(shape)] * len(shape))


# ops-check


def _cayley_rows(rng: np.random.Generator, algebra: FiniteBlockAlgebra, element: str) -> PropertyReport:
    tail = Formula.constant(complex(np.exp(1j * rng.uniform(0.1, 2.0 * math.pi - 0.1)))) if algebra.has_tail else None
    s = random_operator(rng, algebra, tail=tail, kind="unitary")
    demo = cayley_inverse_demo(s)
    report = PropertyReport()
    report.add(element, "cayley_hermitian", demo.hermiticity_residual <= CAYLEY_TOL, demo.hermiticity_residual)
    report.add(element, "cayley_round_trip", demo.round_trip_residual <= CAYLEY_TOL, demo.round_trip_residual)
    return report


def run_ops_check(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """*-algebra laws on seeded random triples (or on the given operator files)."""
    rng = np.random.default_rng(config.seed)
    tol = config.tol or settings.default_tol
    if config.inputs:
        ops = _operators(config.inputs)
        triples = [(ops[0], ops[1 % len(ops)], ops[2 % len(ops)])]
    else:
        triples = [
            random_triple(rng, config.param("max_blocks", 8), config.param("max_dim", 6))
            for _ in range(int(config.param("trials", 200)))
        ]
    cayley = [_cayley_rows(rng, triple[0].algebra, f"triple {j}") for j, triple in enumerate(triples)]

    residuals = _parallel_map(lambda triple: star_algebra_residuals(*triple), triples, settings.threads)
    report = PropertyReport()
    for j, (laws, extra) in enumerate(zip(residuals, cayley, strict=True)):
        for law, residual in laws.items():
            report.add(f"triple {j}", law, residual <= tol, residual)
        report.extend(extra)
    return RunOutcome([(report, config.out)])


# topology-compare


def run_topology_compare(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """Metric values along a bundled family, or along operator files whose last entry is the limit."""
    family_name = None
    if config.inputs:
        ops = _operators(config.inputs)
        if len(ops) < 2:
            raise PreconditionFailed("topology-compare needs at least one sequence element and a limit")
        sequence, limit = ops[:-1], ops[-1]
        indices = config.n_schedule or list(range(1, len(sequence) + 1))
    else:
        family = get_family(config.family or "spike")
        family_name = family.name
        sequence, limit, indices = family.generate(config.seed, tuple(config.n_schedule) or None)
    report = convergence_report(
        sequence,
        limit,
        indices=indices,
        threshold=float(config.param("threshold", 1e-3)),
        m_max=int(config.param("m_max", 8)),
        t_step=float(config.param("t_step", 0.01)),
        threads=settings.threads,
    )
    report.family = family_name
    return RunOutcome([(report, config.out)])


# product formulas


def _seeded_pairs(
    rng: np.random.Generator, count: int, dim: int, norm: float
) -> list[tuple[SkewAdjointOp, SkewAdjointOp]]:
    algebra = make_algebra((dim,), (1.0,))
    return [
        tuple(  # type: ignore[misc]
            SkewAdjointOp(BlockOperator.from_blocks(algebra, [with_norm(random_skew_hermitian(rng, dim), norm)]))
            for _ in range(2)
        )
        for _ in range(count)
    ]


def _rate_row(report: PropertyReport, kind: str, ns: Sequence[int], tol: float, element: str, t: float) -> None:
    """Mean error ratio between consecutive doubled indices."""
    errors = [row.residual for row in report.rows if row.test == f"{kind}_srt_error"]
    ratios = [
        errors[i + 1] / errors[i]
        for i in range(len(ns) - 1)
        if ns[i + 1] == 2 * ns[i] and errors[i] > tol and errors[i + 1] > tol
    ]
    if ratios:
        mean = float(np.mean(ratios))
        low, high = TROTTER_RATE_RANGE
        report.add(element, f"{kind}_halving_rate", low <= mean <= high, mean, t=t)


def commuting_pair(rng: np.random.Generator, dim: int) -> tuple[SkewAdjointOp, SkewAdjointOp]:
    """A seeded skew-adjoint ``A`` with ``A/2``; Trotter is exact for such a pair."""
    algebra = make_algebra((dim,), (1.0,))
    base = BlockOperator.from_blocks(algebra, [random_skew_hermitian(rng, dim)])
    return SkewAdjointOp(base), SkewAdjointOp(base * 0.5)


def run_trotter(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """Trotter errors for a commuting pair and seeded random pairs."""
    rng = np.random.default_rng(config.seed)
    tol = config.tol or settings.default_tol
    ns = config.n_schedule
    dim = int(config.param("dim", 4))
    pairs = _seeded_pairs(rng, int(config.param("pairs", 20)), dim, float(config.param("norm", 1.0)))
    commuting = commuting_pair(rng, dim)

    report = PropertyReport()
    for t in config.t_values:
        report.extend(product_report("trotter", *commuting, t, [1], COMMUTING_TOL, element="commuting"))

        def evaluate(item: tuple[int, tuple[SkewAdjointOp, SkewAdjointOp]], t: float = t) -> PropertyReport:
            j, (x, y) = item
            sub = product_report("trotter", x, y, t, ns, tol, element=f"pair {j}")
            _rate_row(sub, "trotter", ns, tol, f"pair {j}", t)
            return sub

        for sub in _parallel_map(evaluate, list(enumerate(pairs)), settings.threads):
            report.extend(sub)
    return RunOutcome([(report, config.out)])


def pauli_pair() -> tuple[SkewAdjointOp, SkewAdjointOp]:
    """``(iσ_x, iσ_y)`` on a single 2×2 block."""
    algebra = make_algebra((2,), (1.0,))
    sigma_x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sigma_y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    return (
        SkewAdjointOp(BlockOperator.from_blocks(algebra, [1j * sigma_x])),
        SkewAdjointOp(BlockOperator.from_blocks(algebra, [1j * sigma_y])),
    )


def run_nelson(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """Commutator-formula errors for the Pauli pair and seeded random pairs."""
    rng = np.random.default_rng(config.seed)
    tol = config.tol or settings.default_tol
    ns = config.n_schedule
    pairs = [("pauli", pauli_pair())] + [
        (f"pair {j}", pair)
        for j, pair in enumerate(
            _seeded_pairs(
                rng, int(config.param("pairs", 10)), int(config.param("dim", 4)), float(config.param("norm", 0.5))
            )
        )
    ]
    report = PropertyReport()
    for t in config.t_values:

        def evaluate(item: tuple[str, tuple[SkewAdjointOp, SkewAdjointOp]], t: float = t) -> PropertyReport:
            name, (x, y) = item
            sub = product_report("nelson", x, y, t, ns, tol, element=name)
            final = [row.residual for row in sub.rows if row.test == "nelson_srt_error"][-1]
            sub.add(name, "nelson_final_error", final <= tol, final, t=t)
            return sub

        for sub in _parallel_map(evaluate, pairs, settings.threads):
            report.extend(sub)
    return RunOutcome([(report, config.out)])


# lie-closure


def _skew(operator: BlockOperator, name: str) -> SkewAdjointOp:
    try:
        return SkewAdjointOp(operator)
    except NotHermitian as e:
        raise PreconditionFailed(f"{name} is not skew-adjoint: {e}") from e


def _spec_kinds(config: ExperimentConfig) -> list[SubgroupKind]:
    name = config.spec or "FullUnitary"
    if name.lower() == "all":
        return list(SubgroupKind)
    return [SubgroupKind(name)]


def run_lie_closure(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """Closure of Lie(G) under sums, real multiples and brackets."""
    rng = np.random.default_rng(config.seed)
    tol = config.tol or settings.default_tol
    t_samples = tuple(config.t_values) or DEFAULT_T_SAMPLES
    if config.inputs:
        if len(config.inputs) != 2:
            raise PreconditionFailed(f"lie-closure takes two operator files (A and B), got {len(config.inputs)}")
        a, b = _operators(config.inputs)
        algebra = a.algebra
        jobs = [(kind, 0, (_skew(a, "A"), _skew(b, "B"))) for kind in _spec_kinds(config)]
    else:
        algebra = _param_algebra(config)
        jobs = []
        for kind in _spec_kinds(config):
            spec = subgroup_spec(kind, algebra, tol)
            jobs.extend((kind, j, random_lie_pair(rng, spec, algebra)) for j in range(int(config.param("pairs", 20))))

    def evaluate(job: tuple[SubgroupKind, int, tuple[SkewAdjointOp, SkewAdjointOp]]) -> list[PropertyRow]:
        kind, j, (x, y) = job
        spec = subgroup_spec(kind, algebra, tol)
        rows = _relabel(lie_closure_check(x, y, spec, t_samples), f"{kind.value} pair {j}")
        if j == 0 and kind is not SubgroupKind.BLOCK_DETERMINANT_ONE:
            rows.extend(_relabel(unitary_algebra_check(x, y, spec, t_samples), kind.value))
        return rows

    report = PropertyReport()
    for rows in _parallel_map(evaluate, jobs, settings.threads):
        report.rows.extend(rows)
    return RunOutcome([(report, config.out)])


# tensor-laws


def run_tensor_laws(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """Kronecker laws, functor round trips, and coherence axioms (written to a ``.coherence`` sibling)."""
    rng = np.random.default_rng(config.seed)
    tol = config.tol or settings.default_tol
    max_dim = int(config.param("max_dim", 3))
    pairs = []
    for _ in range(int(config.param("pairs", 100))):
        m, n = (random_algebra(rng, 3, max_dim, with_tail=False) for _ in range(2))
        a, c = random_operator(rng, m), random_operator(rng, m)
        b, d = random_operator(rng, n), random_operator(rng, n)
        pairs.append((a, b, c, d))
    report = tensor_laws_report(pairs, tol)
    report.extend(functor_round_trip_report(seed=config.seed, algebras=int(config.param("functor_algebras", 20))))

    triples = [tuple(_uniform_algebra(shape) for shape in triple) for triple in config.param("triples", [])]
    coherence = CoherenceReport()
    for checked in _parallel_map(lambda triple: coherence_check(*triple, seed=config.seed), triples, settings.threads):
        coherence.rows.extend(checked.rows)

    coherence_out = STDOUT if config.out == STDOUT else sibling_path(config.out, "coherence")
    return RunOutcome([(report, config.out), (coherence, None if coherence_out is None else str(coherence_out))])


# exp-injectivity


def run_exp_injectivity(config: ExperimentConfig, settings: LabSettings) -> RunOutcome:
    """Positive injectivity radius on a finite algebra; collapsing witnesses on infinitely many blocks."""
    samples = int(config.param("samples", 16))
    witnesses = int(config.param("witnesses", 8))
    finite = make_algebra(config.param("shapes", [2, 3]), config.param("weights", [0.4, 0.6]))
    report = exp_injectivity_probe(finite, samples=samples, witnesses=witnesses, seed=config.seed)
    report.extend(exp_injectivity_probe(DIAGONAL_ALGEBRA, samples=samples, witnesses=witnesses, seed=config.seed))
    return RunOutcome([(report, config.out)])


Handler = Callable[[ExperimentConfig, LabSettings], RunOutcome]

HANDLERS: dict[Command, Handler] = {
    Command.OPS_CHECK: run_ops_check,
    Command.TOPOLOGY_COMPARE: run_topology_compare,
    Command.TROTTER: run_trotter,
    Command.NELSON: run_nelson,
    Command.LIE_CLOSURE: run_lie_closure,
    Command.TENSOR_LAWS: run_tensor_laws,
    Command.EXP_INJECTIVITY: run_exp_injectivity,
}


def resolve_output(config: ExperimentConfig, settings: LabSettings) -> ExperimentConfig:
    """Default the output to ``<output_dir>/<command>.csv``; ``-`` means stdout."""
    if config.out is not None:
        return config
    return config.model_copy(update={"out": str(Path(settings.output_dir) / f"{config.command.value}.csv")})


def run_experiment(config: ExperimentConfig, settings: LabSettings | None = None) -> int:
    """
    Run one experiment and write its CSV reports.

    Returns:
        0 when every property held, 1 on a failed property or precondition,
        2 when the input could not be used
    """
    settings = settings or get_settings()
    config = resolve_output(config, settings)
    run_id = Observability.set_run_id()
    context = {"run_id": run_id, "command": config.command.value, "seed": config.seed}
    logger.info("Starting experiment", extra={**context, "threads": settings.threads})
    try:
        outcome = HANDLERS[config.command](config, settings)
        for report, path in outcome.outputs:
            emit_report(report, None if path in (None, STDOUT) else path)
    except PreconditionFailed as e:
        logger.error("Precondition failed: %s", e, extra=context)
        return EXIT_FAILED
    except INPUT_ERROR_TYPES as e:
        logger.error("Input error: %s", e, extra=context)
        return EXIT_INPUT
    except MvnLabError as e:
        logger.error("Input not usable: %s", e, extra=context)
        return EXIT_INPUT
    finally:
        Observability.clear_run_id()

    if not outcome.passed:
        failures = outcome.failures()
        for message in failures[:10]:
            logger.error("Property failed: %s", message, extra=context)
        logger.error("Experiment failed", extra={**context, "failures": len(failures)})
        return EXIT_FAILED
    logger.info("Experiment passed", extra=context)
    return EXIT_OK


__all__ = [
    "EXIT_OK",
    "EXIT_FAILED",
    "EXIT_INPUT",
    "HANDLERS",
    "RunOutcome",
    "pauli_pair",
    "resolve_output",
    "run_experiment",
]
