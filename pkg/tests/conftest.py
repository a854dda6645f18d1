import numpy as np
import pytest

from trisol import (DescentOptions, EnergyModel, TruncationMode, build_preset,
                    eigenpairs, find_mountain_pass, initial_guess, minimize,
                    run_pipeline)

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_acceptance(label: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS.append((label, "PASS" if passed else "FAIL"))


@pytest.fixture(scope="session")
def p1():
    """Preset P1 (unit interval, cubic, n = 127) solved once for the suite."""
    spec, nl = build_preset("p1-interval")
    models = {mode: EnergyModel(spec, nl, mode) for mode in TruncationMode}
    phi1 = eigenpairs(spec, 1)[0]
    plus = minimize(models[TruncationMode.PLUS],
                    initial_guess(models[TruncationMode.PLUS], phi1))
    minus = minimize(models[TruncationMode.MINUS],
                     initial_guess(models[TruncationMode.MINUS], phi1))
    star = find_mountain_pass(models[TruncationMode.FULL], minus, plus)
    return {
        "spec": spec,
        "nl": nl,
        "models": models,
        "phi1": phi1,
        "minus": minus,
        "plus": plus,
        "star": star,
    }


@pytest.fixture(scope="session")
def p1_report(p1):
    return run_pipeline(p1["spec"], p1["nl"], preset="p1-interval")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {label}: {verdict}")
