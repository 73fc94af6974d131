from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from acceptance_registry import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        passed, title, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  [{detail}]")
