"""
Integration tests for reproducible runs.

The same request must produce byte-identical CSV output regardless of the
worker thread count.
"""

import pytest

from mvnlab.cli import main

pytestmark = pytest.mark.integration

REQUESTS = [
    ["ops-check", "--seed", "7"],
    ["topology-compare", "--family", "dilation", "--n-schedule", "1,2,3,4,5,6,7,8"],
    ["nelson", "--seed", "11", "--n-schedule", "8,16,32"],
    ["lie-closure", "--spec", "all", "--seed", "3"],
]


def run(argv, out, threads, monkeypatch) -> bytes:
    monkeypatch.setenv("MVNLAB_THREADS", str(threads))
    monkeypatch.setenv("MVNLAB_LOG_LEVEL", "WARNING")
    main([*argv, "--out", str(out)])
    return out.read_bytes()


class TestDeterminism:
    """Test that seeded runs repeat exactly."""

    @pytest.mark.parametrize("argv", REQUESTS, ids=lambda argv: argv[0])
    def test_repeat_and_thread_count(self, argv, tmp_path, monkeypatch):
        """Two sequential runs and one threaded run write the same bytes."""
        first = run(argv, tmp_path / "first.csv", 1, monkeypatch)
        second = run(argv, tmp_path / "second.csv", 1, monkeypatch)
        threaded = run(argv, tmp_path / "threaded.csv", 4, monkeypatch)
        assert first == second == threaded
        assert first.count(b"\r\n") > 1

    def test_seed_changes_output(self, tmp_path, monkeypatch):
        """A different seed draws different inputs."""
        one = run(["ops-check", "--seed", "1"], tmp_path / "one.csv", 1, monkeypatch)
        two = run(["ops-check", "--seed", "2"], tmp_path / "two.csv", 1, monkeypatch)
        assert one != two
