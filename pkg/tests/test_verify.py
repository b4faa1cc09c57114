"""Suite runner plumbing: registry, reports and parallel dispatch."""

import pytest

from liediv.verify import SUITES, run_suite


def test_suite_registry():
    assert set(SUITES) == {"cocycle", "traces-oracle", "grt", "krv",
                           "depth2", "appendix"}


def test_unknown_suite_raises():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_report_shape_and_seed_echo():
    report = run_suite("appendix", seed=17)
    assert report["schema"] == 1
    assert report["seed"] == 17
    assert report["pass"] is True
    assert all(c["suite"] == "appendix" for c in report["checks"])


def test_parallel_dispatch_matches_serial():
    serial = run_suite("traces-oracle")
    parallel = run_suite("traces-oracle", jobs=2)
    assert serial == parallel
