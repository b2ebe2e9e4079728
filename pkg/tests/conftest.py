import pytest

from extlab.groups import preset

# criterion number -> (status, detail, seconds); filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = preset(name)
        return cache[name]
    return get


@pytest.fixture
def record():
    def rec(n, ok, detail, seconds):
        status = "PASS" if ok else "FAIL"
        prev = ACCEPTANCE.get(n)
        if prev is not None:
            # several tests may feed one criterion; any failure wins
            status = "FAIL" if "FAIL" in (prev[0], status) else "PASS"
            detail = f"{prev[1]}; {detail}"
            seconds += prev[2]
        ACCEPTANCE[n] = (status, detail, seconds)
        print(f"criterion {n}: {status} ({detail}) [{seconds:.1f}s]")
    return rec


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, detail, seconds = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {detail}  [{seconds:.1f}s]")
