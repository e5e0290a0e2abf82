#!/usr/bin/env python3
"""Emit the full g_2 bracket table as JSON (frozen under tests/golden/)."""

import json
import sys
from pathlib import Path

from jacobiverma import JacobiAlgebra
from jacobiverma.textio import render_generator


def frac(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def main() -> int:
    alg = JacobiAlgebra(2)
    table = []
    for x in alg.generators:
        for y in alg.generators:
            br = alg.bracket(x, y)
            if br.is_zero:
                continue
            table.append(
                {
                    "x": render_generator(x, 2),
                    "y": render_generator(y, 2),
                    "scalar": frac(br.scalar),
                    "terms": {
                        render_generator(g, 2): frac(c)
                        for g, c in sorted(br.terms.items(), key=lambda t: alg.index[t[0]])
                    },
                }
            )
    out = json.dumps(table, indent=1, sort_keys=True)
    if len(sys.argv) > 1:
        Path(sys.argv[1]).write_text(out + "\n")
    else:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
