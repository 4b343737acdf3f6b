import numpy as np
import pytest

from frechet_range import _backend

BACKENDS = ["python"] + (["compiled"] if _backend.compiled is not None else [])


def pytest_report_header(config):
    return f"frechet_range backend: {_backend.NAME} (available: {', '.join(BACKENDS)})"


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, title: str, ok: bool, detail: str, soft: bool = False) -> str:
    tag = "PASS" if ok else ("FAIL (soft, not gated)" if soft else "FAIL")
    line = f"[{tag}] criterion {number}: {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
