import pytest

from pufslot import _kernels
from pufslot._kernels import _pure

try:
    from pufslot._kernels import _fast
except ImportError:  # extension not built
    _fast = None

BACKENDS = [pytest.param(_pure, id="pure")]
if _fast is not None:
    BACKENDS.append(pytest.param(_fast, id="compiled"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param



@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
        terminalreporter.write_line(f"kernel backend: {_kernels.BACKEND}")
