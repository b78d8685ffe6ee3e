import pytest

from ordtower.wellfounded import add_verdict_listener

# Every verdict produced anywhere in the session, re-verified by the evidence audit.
VERDICT_LOG = []


def _record(ord, a, verdict):
    VERDICT_LOG.append((ord, a, verdict))


add_verdict_listener(_record)


@pytest.fixture
def verdict_log():
    return VERDICT_LOG


def pytest_collection_modifyitems(session, config, items):
    # the evidence audit must see the verdicts of every other test
    last = [it for it in items if "evidence_audit" in it.name]
    rest = [it for it in items if "evidence_audit" not in it.name]
    items[:] = rest + last


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


@pytest.fixture
def report(capsys):
    """Record and echo the pass/fail line of an acceptance criterion."""
    def emit(n: int, ok: bool, detail: str):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE[n] = line
        with capsys.disabled():
            print("\n" + line)
    return emit
