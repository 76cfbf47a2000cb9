#!/usr/bin/env python3
"""Print the dimension table of the automorphism subgroups for n = 4..10.

Each cell shows the closed-form value; a trailing '!' would mark disagreement
with the independent coordinate count (none is expected).
"""

import sys

from grassmann.dims import DIM_GROUPS, dim_by_coordinates, dim_formula


def main(argv=None) -> int:
    ns = [int(a) for a in (argv or sys.argv[1:])] or list(range(4, 11))
    header = ["group \\ n"] + [str(n) for n in ns]
    rows = [header]
    for g in DIM_GROUPS:
        row = [g]
        for n in ns:
            f = dim_formula(g, n)
            c = dim_by_coordinates(g, n)
            row.append(f"{f}" if f == c else f"{f}!={c}!")
        rows.append(row)
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    for r in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    print()
    print("ascents (closed form = coordinate count):")
    for n in ns:
        cells = []
        for s in range(1, n // 2 + 2):
            tag = f"gamma-asc:{2 * s}"
            f = dim_formula(tag, n)
            c = dim_by_coordinates(tag, n)
            cells.append(f"2s={2 * s}:{f}" + ("" if f == c else "!"))
        print(f"  n={n}: " + "  ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
