from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def rationals(lo=-5, hi=5, max_den=3):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def nonzero_rationals(lo=-5, hi=5, max_den=3):
    return rationals(lo, hi, max_den).filter(lambda x: x != 0)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
