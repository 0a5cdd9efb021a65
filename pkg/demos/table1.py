"""Scan the standard instance list and print each verdict with its witness.

    python3 demos/table1.py
"""

import time

from thomcob.fpalg import format_element
from thomcob.liegroups import build_group
from thomcob.thom import DEFAULT_INSTANCES, surjectivity_scan

start = time.perf_counter()
for name in DEFAULT_INSTANCES:
    row = surjectivity_scan(build_group(name))
    line = f"{name:<10} {row.surjective:<4}"
    if row.verdict is not None:
        w = row.verdict.witnesses[0]
        pres = row.verdict.presentation
        line += (f" degree {row.min_degree} mod {row.prime}: [{w.word}]"
                 f"({format_element(pres, w.candidate)}) = {format_element(pres, w.value)}")
        if len(row.verdict.witnesses) > 1:
            line += f" (+{len(row.verdict.witnesses) - 1} more candidates)"
    elif row.surjective == "yes":
        line += f" {row.reason}"
    print(line)
    for c in row.caveats:
        print(f"{'':16}note: {c}")
print(f"\n{len(DEFAULT_INSTANCES)} groups in {time.perf_counter() - start:.2f}s")
