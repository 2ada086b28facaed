from hypothesis import settings

settings.register_profile("workbench", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("workbench")

#: (criterion number, passed, description) rows filled in by test_acceptance
ACCEPTANCE_RESULTS: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, passed, description in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line("ACCEPTANCE %2d: %s -- %s" % (number, status, description))
