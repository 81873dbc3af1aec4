"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

_results: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _results.append((report.nodeid.split("::")[-1], status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in _results:
        line = f"{status}  {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
