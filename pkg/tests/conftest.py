import re

CRITERIA_TITLES = {
    1: "structure constants: antisymmetry, Jacobi, ideal property (g_2, g_3)",
    2: "weight 2d1: one generic branch, L1 = 3/4, factored kernel",
    3: "weight 2d2: one branch, L2 = 1/4, kernel (-2, 1)",
    4: "weight d1+d2: one branch, L1+L2 = 3/2, kernel pattern",
    5: "weight d1-d2: one branch, L2 = L1, kernel d+",
    6: "non-existence for d1, d2, 3d2 with stated ansatz sizes",
    7: "verification closure on every emitted branch",
    8: "oracle equivalence at random rational weight points",
    9: "representation property on 200 random triples",
    10: "byte-identical JSON across consecutive runs",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", rep.nodeid)
            if m:
                k = int(m.group(1))
                verdict = "PASS" if status == "passed" else "FAIL"
                lines[k] = f"criterion {k:2d}: {verdict}  {CRITERIA_TITLES.get(k, '')}"
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
