"""Run every lemma sweep and write one report file per lemma.

    python3 scripts/run_sweeps.py --out reports/ [--max-weight 5] [--catalog Sp4 G2]
"""

import argparse
from pathlib import Path

from endowb.verify import LEMMAS, Scope, report_emit, verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--catalog", nargs="+", default=None)
    ap.add_argument("--max-weight", type=int, default=None)
    ap.add_argument("--lemma", choices=LEMMAS, nargs="+", default=list(LEMMAS))
    a = ap.parse_args()
    a.out.mkdir(parents=True, exist_ok=True)
    scope = Scope(catalog=tuple(a.catalog) if a.catalog else None, max_weight=a.max_weight)
    status = 0
    for lemma in a.lemma:
        r = verify(lemma, scope)
        (a.out / f"{lemma}.jsonl").write_text(report_emit(r, "jsonl"))
        flag = "vacuous" if r.vacuous else ("ok" if r.passed else "FAILED")
        print(f"{lemma:<11} {len(r.cases):>5} cases  {len(r.failures):>3} failed  {r.wall_time:6.2f}s  {flag}")
        status |= not r.passed
    raise SystemExit(status)


if __name__ == "__main__":
    main()
