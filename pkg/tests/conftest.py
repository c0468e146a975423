import sys

import pytest

from programs import ANCILLA, BELL_QSHARP, LAYOUT_CIRCUIT, MUX, ROTFOLD_IN, TELEPORT
from qasmkit.frontend import parse


@pytest.fixture
def teleport():
    return parse(TELEPORT)


@pytest.fixture
def mux():
    return parse(MUX)


@pytest.fixture
def ancilla_prog():
    return parse(ANCILLA)


@pytest.fixture
def rotfold_in():
    return parse(ROTFOLD_IN)


@pytest.fixture
def layout_circuit():
    return parse(LAYOUT_CIRCUIT)


@pytest.fixture
def bell_qsharp():
    return parse(BELL_QSHARP)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))
