"""Endoscopic data and hyperendoscopic paths for every catalog entry."""

import argparse

from endowb import _linalg as la
from endowb.catalog import load_catalog
from endowb.endoscopy import enumerate_endoscopic, enumerate_hyper_paths


def fmt(v):
    return "(" + ", ".join(str(x) for x in la.normalize(v)) + ")"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-denominator", type=int, default=None)
    a = ap.parse_args()
    for e in load_catalog():
        d = e.datum
        data = enumerate_endoscopic(d, a.max_denominator)
        paths = enumerate_hyper_paths(d, a.max_denominator)
        print(f"{e.name} [{d.type_label}, rank_ss {d.semisimple_rank}]: {len(data)} elliptic, {len(paths)} paths")
        for x in data:
            print(f"    s = {fmt(x.s_point):<14} H = {x.h_datum.type_label}")
        for p in paths:
            print(f"    path {p.label()}  (length {len(p)})")


if __name__ == "__main__":
    main()
