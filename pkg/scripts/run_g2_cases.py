#!/usr/bin/env python3
"""Run the seven worked g_2 weight cases and print the reports.

Usage: python scripts/run_g2_cases.py [--json]
"""

import json
import sys

from jacobiverma import JacobiAlgebra, find_singular_vectors
from jacobiverma.textio import (
    parse_weight,
    render_monomial,
    render_solved_form,
    render_vector,
    render_weight,
    report_to_json,
)

CASES = ["2d1", "2d2", "d1+d2", "d1-d2", "d1", "d2", "3d2"]


def main() -> int:
    as_json = "--json" in sys.argv[1:]
    alg = JacobiAlgebra(2)
    payload = {}
    for case in CASES:
        w = parse_weight(case, 2)
        report = find_singular_vectors(alg, w)
        if as_json:
            payload[case] = report_to_json(alg, report)
            continue
        print(f"=== weight {case} ({render_weight(w)})")
        mons = ", ".join(render_monomial(alg, m) for m in report.monomials)
        print(f"  ansatz ({len(report.monomials)}): {mons}")
        if not report.branches:
            print("  no singular vector")
        for k, br in enumerate(report.branches, start=1):
            eqs = ", ".join(p.to_text() + " = 0" for p in br.constraints.equations)
            print(f"  branch {k}: {eqs}   [{', '.join(render_solved_form(br.constraints))}]")
            for v in br.vectors:
                print(f"    v_s = ({render_vector(alg, v)}) v0")
            print(f"    verified against all lowering generators: {br.verified}")
        print()
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
