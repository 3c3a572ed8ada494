from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weakclifford.freealg import Element

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
small_rationals = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))


def words(n=3, max_len=3):
    return st.lists(st.integers(1, n), max_size=max_len).map(tuple)


def elements(n=3, max_len=3, max_terms=4):
    return st.dictionaries(words(n, max_len), rationals, max_size=max_terms).map(lambda d: Element(d, n))


def homogeneous(k, n=3, max_terms=4):
    return st.dictionaries(st.lists(st.integers(1, n), min_size=k, max_size=k).map(tuple), rationals,
                           max_size=max_terms).map(lambda d: Element(d, n))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.VERDICTS):
        terminalreporter.write_line(mod.VERDICTS[n])
