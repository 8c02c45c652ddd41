import functools

import pytest

from cremona.catalog import Family, FamilySpec, build


@functools.lru_cache(maxsize=None)
def cached_build(family, **params):
    return build(FamilySpec(Family(family), **params))


@pytest.fixture
def make():
    return cached_build


_CRITERIA: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        _CRITERIA.setdefault(mark.args[0], []).append(status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        outcomes = _CRITERIA[k]
        verdict = "FAIL" if any(o in ("failed", "error") for o in outcomes) else "PASS"
        note = ""
        if "xfail" in outcomes:
            note = f" ({outcomes.count('xfail')} documented deviation(s) xfail)"
        if "skipped" in outcomes:
            note += f" ({outcomes.count('skipped')} skipped)"
        passed = outcomes.count("passed")
        terminalreporter.write_line(f"criterion {k:2d}: {verdict}  {passed}/{len(outcomes)} checks passed{note}")
