import math

import numpy as np
import pytest

POLY_COEFFS = np.array([-1.0 / 3.0, math.sqrt(3.0) / 6.0, math.sqrt(5.0) / 6.0])

ACCEPTANCE_LINES = []


@pytest.fixture
def poly_coeffs():
    return POLY_COEFFS.copy()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
