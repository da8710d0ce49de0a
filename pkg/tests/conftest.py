ACCEPTANCE = {}


def record(n, desc, ok):
    """Register an acceptance criterion outcome and echo one line for it."""
    ACCEPTANCE[n] = (desc, bool(ok))
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {desc}")
    return ok


def pytest_terminal_summary(terminalreporter):
    # re-emit the criterion lines uncaptured so they land in the console log
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {desc}")
