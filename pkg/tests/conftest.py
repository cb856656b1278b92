import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = next((m for name, m in sys.modules.items()
                if name.endswith("test_acceptance") and hasattr(m, "ACCEPTANCE_REPORT")), None)
    if mod is None or not mod.ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.ACCEPTANCE_REPORT):
        terminalreporter.write_line(mod.ACCEPTANCE_REPORT[i])
