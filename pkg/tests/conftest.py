ACCEPTANCE = {}


def record(number: int, passed: bool, detail: str = ""):
    ACCEPTANCE.setdefault(number, []).append((passed, detail))
    print(f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        status = "PASS" if all(p for p, _ in parts) else "FAIL"
        detail = " | ".join(f"{'ok' if p else 'FAILED'}: {d}" for p, d in parts)
        terminalreporter.write_line(f"criterion {k}: {status}  {detail}")
