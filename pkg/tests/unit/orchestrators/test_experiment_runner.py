"""
Unit tests for the experiment runner.

Handlers run with small parameter overrides; exit codes follow 0 = passed,
1 = failed property or precondition, 2 = unusable input.
"""

import numpy as np
import pytest

from mvnlab.blockvn import BlockOperator, make_algebra
from mvnlab.liealg import SkewAdjointOp
from mvnlab.config.settings import LabSettings, get_settings
from mvnlab.models.experiment import Command, ExperimentConfig
from mvnlab.models.reports import CoherenceReport, MetricReport, MetricVerdict, PropertyReport
from mvnlab.opformat import write_operator_file
from mvnlab.orchestrators.experiment_runner import (
    EXIT_FAILED,
    EXIT_INPUT,
    EXIT_OK,
    HANDLERS,
    RunOutcome,
    pauli_pair,
    resolve_output,
    run_experiment,
)
from mvnlab.utils.config_loader import ExperimentConfigLoader

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)


def build(command: str, tmp_path, **overrides) -> ExperimentConfig:
    overrides.setdefault("out", str(tmp_path / f"{command}.csv"))
    return ExperimentConfigLoader.build(command, overrides=overrides)


def csv_lines(path) -> list[str]:
    with open(path, encoding="utf-8", newline="") as f:
        return f.read().split("\r\n")[:-1]


@pytest.fixture
def m2_files(tmp_path):
    """Writes block operators over M2 and returns their paths."""
    algebra = make_algebra((2,), (1.0,))

    def write(**blocks):
        paths = []
        for name, block in blocks.items():
            path = tmp_path / f"{name}.txt"
            write_operator_file(path, BlockOperator.from_blocks(algebra, [block]))
            paths.append(str(path))
        return paths

    return write


class TestDispatch:
    """Test the handler table and output resolution."""

    def test_every_command_has_a_handler(self):
        """Each command dispatches somewhere."""
        assert set(HANDLERS) == set(Command)

    def test_default_output(self, tmp_path):
        """Without --out the report goes to <output_dir>/<command>.csv."""
        settings = LabSettings(output_dir=str(tmp_path / "reports"))
        config = resolve_output(ExperimentConfig(command="nelson"), settings)
        assert config.out == str(tmp_path / "reports" / "nelson.csv")

    def test_explicit_output_kept(self, tmp_path):
        """An explicit output path is left alone."""
        config = ExperimentConfig(command="nelson", out="-")
        assert resolve_output(config, get_settings()).out == "-"

    def test_pauli_pair(self):
        """The bundled pair is (iσ_x, iσ_y)."""
        x, y = pauli_pair()
        np.testing.assert_allclose(x.operator.block(0), 1j * SIGMA_X)
        np.testing.assert_allclose(y.operator.block(0), 1j * SIGMA_Y)


class TestRunOutcome:
    """Test the overall pass/fail flag."""

    def test_property_failures(self):
        """Failed property rows fail the run and are listed."""
        report = PropertyReport()
        report.add("A", "in_lie_algebra", False, 0.5)
        outcome = RunOutcome([(report, None)])
        assert not outcome.passed
        assert outcome.failures() == ["A: in_lie_algebra (residual 5.000e-01)"]

    def test_coherence_failures(self):
        """Failed axioms are listed with their objects."""
        report = CoherenceReport()
        report.add("hexagon", "[2]x[1]x[3]", 36, False)
        assert RunOutcome([(report, None)]).failures() == ["hexagon on [2]x[1]x[3]"]

    def test_divergent_family_passes_when_nothing_converges(self):
        """A divergent family is expected not to converge."""
        report = MetricReport(verdicts={"srt": MetricVerdict.NOT_CONVERGING}, family="alternating")
        assert RunOutcome([(report, None)]).passed

    def test_files_must_agree(self):
        """Without a family the metrics must agree."""
        split = MetricReport(verdicts={"srt": MetricVerdict.CONVERGING, "measure": MetricVerdict.NOT_CONVERGING})
        assert not RunOutcome([(split, None)]).passed


class TestHandlers:
    """Test commands end to end with small parameters."""

    def test_exp_injectivity(self, tmp_path):
        """Both probes pass and every row is written."""
        config = build("exp-injectivity", tmp_path, samples=4, witnesses=3)
        assert run_experiment(config) == EXIT_OK
        lines = csv_lines(config.out)
        assert lines[0] == "element,test,t,verdict,residual"
        assert len(lines) == 1 + 6 + 9
        assert all(line.split(",")[3] == "pass" for line in lines[1:])

    def test_default_output_dir(self, tmp_path):
        """The run honours MVNLAB_OUTPUT_DIR."""
        config = ExperimentConfigLoader.build("exp-injectivity", overrides={"samples": 2, "witnesses": 2})
        assert run_experiment(config) == EXIT_OK
        assert (tmp_path / "results" / "exp-injectivity.csv").exists()

    def test_stdout(self, tmp_path, capsys):
        """'-' writes the CSV to stdout."""
        config = build("exp-injectivity", tmp_path, out="-", samples=2, witnesses=2)
        assert run_experiment(config) == EXIT_OK
        assert capsys.readouterr().out.startswith("element,test,t,verdict,residual\r\n")

    def test_ops_check(self, tmp_path):
        """Seeded random triples satisfy the *-algebra laws."""
        config = build("ops-check", tmp_path, trials=3, max_blocks=3, max_dim=2)
        assert run_experiment(config) == EXIT_OK
        tests = {line.split(",")[1] for line in csv_lines(config.out)[1:]}
        assert {"associativity", "adjoint_of_product", "cayley_round_trip"} <= tests

    def test_topology_compare_convergent(self, tmp_path):
        """The spike family converges in every metric."""
        config = build("topology-compare", tmp_path, family="spike")
        assert run_experiment(config) == EXIT_OK
        assert csv_lines(config.out)[0] == "index,srt,srt_bound,set,set_bound,measure,sot,sot_bound"

    def test_topology_compare_divergent(self, tmp_path):
        """The alternating family is correctly reported as not converging."""
        config = build("topology-compare", tmp_path, family="alternating", n_schedule="1,2,3,4")
        assert run_experiment(config) == EXIT_OK
        assert len(csv_lines(config.out)) == 5

    def test_topology_compare_needs_a_limit(self, tmp_path, m2_files):
        """A single operator file gives no sequence."""
        config = build("topology-compare", tmp_path, inputs=m2_files(a=np.eye(2)))
        assert run_experiment(config) == EXIT_FAILED

    def test_topology_compare_from_files(self, tmp_path, m2_files):
        """The last file is the limit; a constant sequence converges everywhere."""
        paths = m2_files(a=SIGMA_X, b=SIGMA_X, limit=SIGMA_X)
        config = build("topology-compare", tmp_path, inputs=paths)
        assert run_experiment(config) == EXIT_OK
        assert len(csv_lines(config.out)) == 3

    def test_algebra_file_is_not_an_operator(self, tmp_path, mixed_algebra):
        """An algebra-only file where an operator is needed is an input error."""
        path = tmp_path / "algebra.txt"
        write_operator_file(path, mixed_algebra)
        config = build("topology-compare", tmp_path, inputs=[str(path), str(path)])
        assert run_experiment(config) == EXIT_INPUT

    def test_missing_input(self, tmp_path):
        """A missing operator file is an input error."""
        config = build("ops-check", tmp_path, inputs=[str(tmp_path / "absent.txt")])
        assert run_experiment(config) == EXIT_INPUT

    def test_lie_closure_from_files(self, tmp_path, m2_files):
        """iσ_x and iσ_y generate a closed Lie algebra in U(2)."""
        config = build("lie-closure", tmp_path, inputs=m2_files(a=1j * SIGMA_X, b=1j * SIGMA_Y))
        assert run_experiment(config) == EXIT_OK
        elements = {line.split(",")[0] for line in csv_lines(config.out)[1:]}
        assert "FullUnitary pair 0 [A,B]" in elements
        assert "FullUnitary i*1" in elements

    def test_lie_closure_rejects_hermitian_input(self, tmp_path, m2_files):
        """A Hermitian generator violates the skew-adjointness precondition."""
        config = build("lie-closure", tmp_path, inputs=m2_files(a=SIGMA_X, b=1j * SIGMA_Y))
        assert run_experiment(config) == EXIT_FAILED

    def test_lie_closure_generated(self, tmp_path):
        """Seeded pairs pass for every subgroup kind."""
        config = build("lie-closure", tmp_path, spec="all", pairs=1)
        assert run_experiment(config) == EXIT_OK
        kinds = {line.split(" ")[0] for line in csv_lines(config.out)[1:]}
        assert kinds == {"FullUnitary", "CommutantFixed", "BlockDeterminantOne", "DiagonalUnitaries"}

    def test_tensor_laws_writes_coherence_sibling(self, tmp_path):
        """Law rows go to --out and coherence rows to the .coherence sibling."""
        config = build("tensor-laws", tmp_path, pairs=2, functor_algebras=1, triples=[[[1], [2], [1]]])
        assert run_experiment(config) == EXIT_OK
        coherence = csv_lines(tmp_path / "tensor-laws.coherence.csv")
        assert coherence[0] == "axiom,objects,permutation_size,verdict"
        assert len(coherence) == 9


class TestTrotterCommutingCheck:
    """Test the exactness row for the commuting pair."""

    def test_commuting_pair_passes(self, tmp_path):
        """A pair and its half commute, so one Trotter step is exact."""
        config = build("trotter", tmp_path, pairs=0, n_schedule="1,2")
        assert run_experiment(config) == EXIT_OK
        rows = [line.split(",") for line in csv_lines(config.out)[1:]]
        assert rows[0][:4] == ["commuting n=1", "trotter_srt_error", "1.0", "pass"]

    def test_non_commuting_pair_fails(self, tmp_path, mocker):
        """A pair that does not commute fails the exactness row and the run."""
        algebra = make_algebra((2,), (1.0,))
        x = SkewAdjointOp(BlockOperator.from_blocks(algebra, [1j * SIGMA_X]))
        z = SkewAdjointOp(BlockOperator.from_blocks(algebra, [1j * np.diag([1.0, -1.0]).astype(np.complex128)]))
        mocker.patch("mvnlab.orchestrators.experiment_runner.commuting_pair", return_value=(x, z))
        config = build("trotter", tmp_path, pairs=0, n_schedule="1,2")
        assert run_experiment(config) == EXIT_FAILED
        rows = [line.split(",") for line in csv_lines(config.out)[1:]]
        assert rows[0][:4] == ["commuting n=1", "trotter_srt_error", "1.0", "fail"]
