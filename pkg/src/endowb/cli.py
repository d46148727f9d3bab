"""Command-line entry point: ``endowb <command> ...`` or ``python -m endowb``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .arch import transfer_atlas
from .catalog import get_datum, get_entry, load_catalog, UnknownDatum
from .endoscopy import enumerate_endoscopic, enumerate_hyper_paths
from .rootdatum import datum_to_dict, serialize_datum
from .satake import satake_matrices
from .unram import CentralTwist, tau_transfer
from .verify import LEMMAS, Scope, report_emit, verify

SCHEMA = "endowb.cli/1"


class _Usage(Exception):
    pass


def _coords(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise _Usage(f"cannot parse coordinates {text!r}")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise _Usage(f"cannot parse integer list {text!r}")


def _v(v) -> str:
    return ",".join(str(x) for x in la.normalize(v))


def _emit(out, command: str, columns: Sequence[str], rows: Sequence[Sequence], fmt: str, summary: dict | None = None):
    """Pinned column order; the caller fixes the row order."""
    if fmt == "json":
        header = {"schema": SCHEMA, "command": command, "columns": list(columns), "rows": len(rows)}
        if summary:
            header["summary"] = summary
        print(json.dumps(header, sort_keys=True), file=out)
        for r in rows:
            print(json.dumps(dict(zip(columns, (str(x) for x in r))), sort_keys=True), file=out)
        return
    cells = [list(columns)] + [[str(x) for x in r] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(columns))]
    for c in cells:
        print("  ".join(x.ljust(w) for x, w in zip(c, widths)).rstrip(), file=out)
    for k, v in (summary or {}).items():
        print(f"# {k}: {v}", file=out)


# -- commands --------------------------------------------------------------------------------

def _datum_list(a, out):
    rows = [(e.name, ",".join(e.aliases), e.datum.type_label, e.datum.rank, e.datum.semisimple_rank,
             e.datum.weyl_order, "yes" if e.datum.is_split else "no", e.side, e.provenance)
            for e in load_catalog()]
    _emit(out, "datum list", ("name", "aliases", "type", "rank", "ss_rank", "weyl_order", "split", "side",
                              "provenance"), rows, a.format)


def _datum_check(a, out):
    d = get_datum(a.name)
    rows = [("name", d.label), ("type", d.type_label), ("rank", d.rank), ("semisimple_rank", d.semisimple_rank),
            ("positive_roots", len(d.positive_roots)), ("weyl_order", d.weyl_order),
            ("coxeter_number", d.coxeter_number), ("rho", _v(d.rho)), ("split", "yes" if d.is_split else "no"),
            ("status", "valid")]
    _emit(out, "datum check", ("field", "value"), rows, a.format)


def _datum_show(a, out):
    d = get_datum(a.name)
    if a.format == "json":
        print(json.dumps({"schema": SCHEMA, "command": "datum show", "datum": datum_to_dict(d)}, sort_keys=True),
              file=out)
    else:
        out.write(serialize_datum(d))


def _endoscopy_list(a, out):
    d = get_datum(a.datum)
    rows = [(i, _v(e.s_point), e.denominator, e.h_datum.type_label, len(e.h_datum.roots),
             "yes" if e.elliptic else "no") for i, e in enumerate(enumerate_endoscopic(d, a.max_denominator))]
    _emit(out, "endoscopy list", ("id", "s_point", "denominator", "h_type", "h_roots", "elliptic"), rows, a.format)


def _paths(a, out):
    d = get_datum(a.datum)
    rows = [(i, p.label(), len(p), " ".join(_v(e.s_point) for e in p.steps))
            for i, p in enumerate(enumerate_hyper_paths(d, a.max_denominator))]
    _emit(out, "endoscopy paths", ("id", "chain", "length", "s_points"), rows, a.format)


def _pick(items, idx: int, what: str):
    if not 0 <= idx < len(items):
        raise IndexError(f"{what} id {idx} out of range (0..{len(items) - 1})" if items else f"no {what}s available")
    return items[idx]


def _transfer_arch(a, out):
    d = get_datum(a.datum)
    path = _pick(enumerate_hyper_paths(d), a.path, "path")
    rows = [(r.chain, " ".join(r.omegas), r.sign, r.kappa_tag, _v(r.weight), r.dim, r.n, r.m)
            for r in transfer_atlas(d, path, _coords(a.weight), a.omega0)]
    _emit(out, "transfer arch", ("chain", "omegas", "sign", "kappa", "weight", "dim", "n", "m"), rows, a.format)


def _transfer_unram(a, out):
    d = get_datum(a.datum)
    endo = _pick(enumerate_endoscopic(d), a.endo, "endoscopic datum")
    twist = CentralTwist(d, _coords(a.t_eta)) if a.t_eta else None
    elem = tau_transfer(d, endo.h_datum, _coords(a.lam), twist)
    rows, best = [], None
    for xi, v in elem.items():
        row = [_v(xi), str(v)]
        if a.at_q is not None:
            m = v.modulus_bound(a.at_q)
            row.append(str(m))
            best = m if best is None or m > best else best
        rows.append(row)
    cols = ["xi", "coefficient"] + (["modulus"] if a.at_q is not None else [])
    summary = {"h_type": endo.h_datum.type_label, "support": len(rows)}
    if best is not None:
        summary.update({"q": a.at_q, "max_twist_stripped_modulus": str(best)})
    _emit(out, "transfer unram", cols, rows, a.format, summary)


def _satake_matrix(a, out):
    d = get_datum(a.datum)
    b, dm = satake_matrices(d, a.cutoff)
    rows = [(m.side, _v(lam), _v(mu), val) for m in (b, dm) for lam, mu, val in m.coordinate_list(a.at_q)]
    _emit(out, "satake matrix", ("matrix", "row", "col", "value"), rows, a.format)


def _verify(a, out) -> int:
    catalog = None
    if a.catalog:
        catalog = tuple(get_entry(n).name for n in a.catalog)
    scope = Scope(catalog=catalog, max_weight=a.max_weight, q_values=_ints(a.q) if a.q else (2, 3, 5))
    lemmas = LEMMAS if a.lemma == "all" else (a.lemma,)
    failed = 0
    for lemma in lemmas:
        r = verify(lemma, scope)
        out.write(report_emit(r, "jsonl" if a.format == "json" else "table", include_timing=a.timing))
        failed += len(r.failures)
    return 1 if failed else 0


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; the subcommand copy must not reset the default
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="endowb",
                                description="Root data, endoscopy, transfers, Satake matrices and lemma sweeps.")
    p.add_argument("--format", dest="global_format", choices=("table", "json"), default="table")
    sub = p.add_subparsers(dest="command", required=True)

    dat = sub.add_parser("datum", help="catalog management").add_subparsers(dest="action", required=True)
    dat.add_parser("list", parents=[fmt]).set_defaults(func=_datum_list)
    for name, func in (("check", _datum_check), ("show", _datum_show)):
        s = dat.add_parser(name, parents=[fmt])
        s.add_argument("name", help="catalog name, alias, or path to a datum file")
        s.set_defaults(func=func)

    endo = sub.add_parser("endoscopy", help="elliptic endoscopic data").add_subparsers(dest="action", required=True)
    s = endo.add_parser("list", parents=[fmt])
    s.add_argument("datum")
    s.add_argument("--max-denominator", type=int, default=None)
    s.set_defaults(func=_endoscopy_list)
    for parent, name in ((endo, "paths"), (sub, "paths")):
        s = parent.add_parser(name, parents=[fmt], help="hyperendoscopic paths")
        s.add_argument("datum")
        s.add_argument("--max-denominator", type=int, default=None)
        s.set_defaults(func=_paths)

    tr = sub.add_parser("transfer", help="transfer computations").add_subparsers(dest="action", required=True)
    s = tr.add_parser("arch", parents=[fmt])
    s.add_argument("datum")
    s.add_argument("--path", type=int, required=True)
    s.add_argument("--weight", required=True, help="comma-separated coordinates")
    s.add_argument("--omega0", type=int, default=0)
    s.set_defaults(func=_transfer_arch)
    s = tr.add_parser("unram", parents=[fmt])
    s.add_argument("datum")
    s.add_argument("--endo", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--t-eta", default=None)
    s.add_argument("--at-q", type=int, default=None)
    s.set_defaults(func=_transfer_unram)

    sat = sub.add_parser("satake", help="Satake change of basis").add_subparsers(dest="action", required=True)
    s = sat.add_parser("matrix", parents=[fmt])
    s.add_argument("datum")
    s.add_argument("--cutoff", type=int, required=True)
    s.add_argument("--at-q", type=int, default=None)
    s.set_defaults(func=_satake_matrix)

    s = sub.add_parser("verify", parents=[fmt], help="lemma sweeps")
    s.add_argument("lemma", nargs="?", default="all", choices=LEMMAS + ("all",))
    s.add_argument("--catalog", nargs="+", default=None)
    s.add_argument("--max-weight", type=int, default=None)
    s.add_argument("--q", default=None, help="comma-separated residue field sizes")
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-stability)")
    s.set_defaults(func=_verify)
    return p


COMPUTATION_ERRORS = (ValueError, ArithmeticError, RuntimeError, KeyError, IndexError, OSError)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not hasattr(a, "format"):
        a.format = a.global_format
    try:
        status = a.func(a, out)
    except _Usage as e:
        print(f"usage error: {e}", file=err)
        return 2
    except COMPUTATION_ERRORS as e:
        msg = e.args[0] if isinstance(e, (KeyError, UnknownDatum)) and e.args else e
        print(f"error: {type(e).__name__}: {' '.join(str(msg).split())}", file=err)
        return 1
    return status or 0


def main() -> None:
    sys.exit(run())
