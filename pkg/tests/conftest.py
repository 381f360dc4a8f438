import random
from fractions import Fraction

import pytest

from latcurve.exact import Frame

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    cid, text = crit
    entry = _CRITERIA.setdefault(cid, {"text": text, "ok": True, "failed": []})
    if report.failed:
        entry["ok"] = False
        entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda c: int(c[2:]) if c[2:].isdigit() else 0
    for cid in sorted(_CRITERIA, key=key):
        e = _CRITERIA[cid]
        status = "PASS" if e["ok"] else "FAIL"
        extra = "" if e["ok"] else f"  (failing: {', '.join(e['failed'])})"
        terminalreporter.write_line(f"{cid:<5} {status}  {e['text']}{extra}")


@pytest.fixture
def unit():
    return Frame.unit()


def random_frame(rng: random.Random, span=30) -> Frame:
    while True:
        pts = [(Fraction(rng.randint(-span * 6, span * 6), rng.randint(1, 6)),
                Fraction(rng.randint(-span * 6, span * 6), rng.randint(1, 6))) for _ in range(3)]
        try:
            return Frame.from_points(*pts)
        except Exception:
            continue
