import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


def record(criterion: int, name: str, ok: bool):
    ACCEPTANCE.setdefault(criterion, []).append((name, ok))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        verdict = "PASS" if all(ok for _, ok in parts) else "FAIL"
        failed = [name for name, ok in parts if not ok]
        detail = f" ({', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {n}: {verdict}{detail}")
