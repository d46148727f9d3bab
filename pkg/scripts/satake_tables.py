"""Print the b and d change-of-basis matrices for one datum as square tables."""

import argparse

from endowb import _linalg as la
from endowb.catalog import get_datum
from endowb.satake import satake_matrices


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("datum")
    ap.add_argument("--cutoff", type=int, default=3)
    ap.add_argument("--at-q", type=int, default=None, help="evaluate entries at this q")
    a = ap.parse_args()
    d = get_datum(a.datum)
    for m in satake_matrices(d, a.cutoff):
        labels = [",".join(str(x) for x in la.normalize(v)) for v in m.index]
        cells = [[str(m[r, c] if a.at_q is None else m[r, c].at_q(a.at_q)) for c in m.index] for r in m.index]
        width = max(len(x) for row in cells + [labels] for x in row)
        print(f"{m.side} ({d.label}, cutoff {a.cutoff})")
        print(" " * (width + 2) + " ".join(x.rjust(width) for x in labels))
        for lab, row in zip(labels, cells):
            print(lab.rjust(width) + "  " + " ".join(x.rjust(width) for x in row))
        print()


if __name__ == "__main__":
    main()
