import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

# derandomized so that repeated runs explore the same examples
settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def pytest_terminal_summary(terminalreporter):
    import suites

    if suites.RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in suites.RESULT_LINES:
            terminalreporter.write_line(line)
