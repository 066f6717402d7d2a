import os
import sys

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, title, elapsed, limit = mod.RESULTS[n]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}  ({elapsed:.2f}s / {limit:.0f}s)")
    missing = sorted(set(range(1, 12)) - set(mod.RESULTS))
    for n in missing:
        tr.write_line(f"[FAIL] {n:2d}. not run")
