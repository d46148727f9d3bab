"""Sweep-based checks of the bound lemmas and structural identities, with stable reports.

Asymptotic statements are checked as fit-then-hold: a constant is measured on a short
prefix of the sweep and must bound the rest of it.  Reports record only the finite
assertions that were executed.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import _linalg as la
from .arch import NotRegular, TransferContext, dimension_ratio, expected_term_count, pseudo_transfer
from .catalog import get_entry, load_catalog
from .endoscopy import enumerate_hyper_paths
from .qpoly import QPoly, Surd
from .reps import branch, dim_rep, lusztig_q_analog, n_value, weight_multiplicities
from .rootdatum import RootDatum, dominant_weights_in_box, graded_lex_key, norm_std
from .satake import dominant_coweights, is_identity, satake_matrices
from .unram import CentralTwist, tau_transfer, twist_stripped

SCHEMA = "endowb.verify/1"
LEMMAS = ("regbound", "dimbound", "dmu", "valuebound", "inversion", "qone", "branchdim", "pathlen")


class UnknownLemma(ValueError):
    pass


class ScopeEmpty(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, Surd):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass(frozen=True)
class Scope:
    catalog: tuple[str, ...] | None = None  # None: lemma default
    max_weight: int | None = None
    q_values: tuple[int, ...] = (2, 3, 5)
    fit_weight: int | None = None
    ray_length: int = 8
    fit_rays: int = 3

    def to_dict(self) -> dict:
        d = asdict(self)
        d["catalog"] = list(self.catalog) if self.catalog is not None else None
        d["q_values"] = list(self.q_values)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Scope":
        return cls(tuple(d["catalog"]) if d.get("catalog") is not None else None, d.get("max_weight"),
                   tuple(d.get("q_values", (2, 3, 5))), d.get("fit_weight"), d.get("ray_length", 8),
                   d.get("fit_rays", 3))


@dataclass(frozen=True)
class Case:
    """One executed assertion; params and witness are stored JSON-native."""

    datum: str
    target: str
    params: dict
    passed: bool
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "params", _jsonable(self.params))
        object.__setattr__(self, "witness", _jsonable(self.witness))
        object.__setattr__(self, "passed", bool(self.passed))


@dataclass
class VerificationReport:
    lemma: str
    scope: Scope
    cases: list[Case] = field(default_factory=list)
    fitted: dict = field(default_factory=dict)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def vacuous(self) -> bool:
        return not self.cases

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]


# -- serialization ---------------------------------------------------------------------------

def _vec(v) -> list[str]:
    return [str(x) for x in la.normalize(v)]


def report_emit(r: VerificationReport, format: str = "jsonl", include_timing: bool = False) -> str:
    """Line-delimited JSON (schema header, then one line per case) or a plain table."""
    if format == "table":
        lines = [f"# {r.lemma}: {len(r.cases)} cases, {len(r.failures)} failed"
                 + (" (vacuous)" if r.vacuous else "")]
        for k, v in sorted(r.fitted.items()):
            lines.append(f"# fitted {k} = {_jsonable(v)}")
        for c in r.cases:
            params = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(c.params.items()))
            lines.append(f"{'PASS' if c.passed else 'FAIL'}\t{c.datum}\t{c.target}\t{params}")
        return "\n".join(lines) + "\n"
    if format != "jsonl":
        raise ValueError(f"unknown report format {format!r}")
    header = {"schema": SCHEMA, "lemma": r.lemma, "scope": r.scope.to_dict(), "cases": len(r.cases),
              "failed": len(r.failures), "passed": r.passed, "vacuous": r.vacuous,
              "fitted": _jsonable(r.fitted)}
    if include_timing:
        header["wall_time"] = round(r.wall_time, 3)
    out = [json.dumps(header, sort_keys=True)]
    for c in r.cases:
        out.append(json.dumps({"datum": c.datum, "target": c.target, "params": _jsonable(c.params),
                               "passed": c.passed, "witness": _jsonable(c.witness)}, sort_keys=True))
    return "\n".join(out) + "\n"


def _fmt(v) -> str:
    v = _jsonable(v)
    return ",".join(map(str, v)) if isinstance(v, list) else str(v)


def report_parse(text: str) -> list[VerificationReport]:
    reports: list[VerificationReport] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        if "schema" in obj:
            if obj["schema"] != SCHEMA:
                raise ValueError(f"unsupported schema {obj['schema']!r}")
            reports.append(VerificationReport(obj["lemma"], Scope.from_dict(obj["scope"]), [], obj["fitted"],
                                              obj.get("wall_time", 0.0)))
        else:
            if not reports:
                raise ValueError("case line before any header")
            reports[-1].cases.append(Case(obj["datum"], obj["target"], obj["params"], obj["passed"], obj["witness"]))
    return reports


# -- shrinking -------------------------------------------------------------------------------

def shrink(witness, smaller: Callable[[object], Iterable], fails: Callable[[object], bool], limit: int = 1000):
    """Greedy shrink: move to any smaller candidate that still fails until none does."""
    current = witness
    for _ in range(limit):
        for cand in smaller(current):
            if fails(cand):
                current = cand
                break
        else:
            return current
    return current


def _smaller_weights(d: RootDatum, ok: Callable[[tuple], bool]):
    """Move one coordinate a step toward zero, keeping only weights accepted by ``ok``."""
    def gen(mu):
        for i, x in enumerate(mu):
            if x == 0:
                continue
            step = -1 if x > 0 else 1
            cand = la.vec(tuple(y + (step if j == i else 0) for j, y in enumerate(mu)))
            if ok(cand):
                yield cand
    return gen


# -- scopes ----------------------------------------------------------------------------------

DEFAULT_DATA = {
    "qone": ("A1", "A2", "Sp4", "G2"),
    "inversion": ("A1", "A2", "Sp4"),
    "dmu": ("A1", "A2", "Sp4"),
    "valuebound": ("Sp4", "SO5", "G2"),
}


def _data(lemma: str, scope: Scope) -> list[tuple[str, RootDatum]]:
    if scope.catalog is not None:
        names = list(scope.catalog)
    elif lemma in DEFAULT_DATA:
        names = list(DEFAULT_DATA[lemma])
    else:
        names = [e.name for e in load_catalog()]
    if not names:
        raise ScopeEmpty(f"no catalog data selected for {lemma}")
    return [(get_entry(n).name, get_entry(n).datum) for n in names]


def _paths(d: RootDatum):
    return enumerate_hyper_paths(d, check_length=False)


# -- lemma suites ----------------------------------------------------------------------------

def _pathlen(scope: Scope, r: VerificationReport):
    for name, d in _data("pathlen", scope):
        for i, p in enumerate(_paths(d)):
            r.cases.append(Case(name, f"path{i}:{p.label()}", {"length": len(p)},
                                len(p) <= d.semisimple_rank, {"semisimple_rank": d.semisimple_rank}))


def _kappa_table(d: RootDatum) -> dict:
    # deterministic unit values for the specialization check
    from .rootdatum import weyl_group
    return {w.label(): Fraction(i, 7) for i, w in enumerate(weyl_group(d))}


def _regbound_check(d: RootDatum, p, ctx, mu) -> dict:
    try:
        comb = pseudo_transfer(d, p, mu, 0, ctx)
    except (NotRegular, ArithmeticError) as exc:
        return {"error": f"{type(exc).__name__}: {exc}", "ok": False}
    h = p.terminal
    n_src = n_value(d, mu)
    regular = all(h.is_dominant_regular(t.weight) for t in comb.terms)
    n_min = min((n_value(h, t.weight) for t in comb.terms), default=None)
    growth = n_min is None or n_min >= n_src
    count_ok = len(comb) == expected_term_count(p)
    unit = all(t.coefficient_rotation() is not None and abs(abs(t.coefficient()) - 1) < 1e-12 for t in comb.terms)
    return {"regular": regular, "n_source": n_src, "n_terminal_min": n_min, "n_growth": growth,
            "terms": len(comb), "expected_terms": expected_term_count(p), "count": count_ok,
            "unit_modulus": unit, "ok": regular and growth and count_ok and unit}


def _regbound(scope: Scope, r: VerificationReport):
    bound = scope.max_weight if scope.max_weight is not None else 4
    for name, d in _data("regbound", scope):
        weights = dominant_weights_in_box(d, bound, regular=True)
        for i, p in enumerate(_paths(d)):
            bars = tuple(Fraction(j + 1, 5) for j in range(len(p)))
            ctx = TransferContext.default(p, _kappa_table(d), bars)
            for mu in weights:
                w = _regbound_check(d, p, ctx, mu)
                ok = w.pop("ok")
                if not ok:
                    def fails(m, p=p, ctx=ctx, d=d):
                        return not _regbound_check(d, p, ctx, m)["ok"]
                    w["shrunk"] = _vec(shrink(mu, _smaller_weights(d, d.is_dominant_regular), fails))
                r.cases.append(Case(name, f"path{i}:{p.label()}", {"mu": _vec(mu)}, ok, w))


def _ray_bases(d: RootDatum) -> list:
    """Regular dominant weights of smallest norm (at most two), used as ray directions."""
    for bound in range(1, 12):
        ws = dominant_weights_in_box(d, bound, regular=True)
        if ws:
            return ws[:2]
    return []


def _dimbound(scope: Scope, r: VerificationReport):
    kmax, kfit = scope.ray_length, scope.fit_rays
    for name, d in _data("dimbound", scope):
        rays = _ray_bases(d)
        for i, p in enumerate(_paths(d)):
            ctx = TransferContext.default(p)
            for mu0 in rays:
                ratios = [dimension_ratio(d, p, la.scale(k, mu0), ctx) for k in range(1, kmax + 1)]
                c = max(ratios[:kfit])
                key = f"{name}:path{i}:{','.join(_vec(mu0))}"
                r.fitted[key] = c
                for k, ratio in enumerate(ratios, start=1):
                    ok = ratio <= c
                    w = {"ratio": ratio, "constant": c}
                    if not ok:
                        w["shrunk_k"] = shrink(k, lambda kk: [kk - 1] if kk > 1 else [],
                                               lambda kk: ratios[kk - 1] > c)
                    r.cases.append(Case(name, f"path{i}:{p.label()}", {"mu0": _vec(mu0), "k": k}, ok, w))


def _fit_constant(values: Sequence[tuple[int, Surd]], n_exp: int, fit_to: int) -> Fraction:
    """Smallest C (rounded up to a rational with denominator 1000) with v <= C (1+n)^N on n <= fit_to."""
    best = Fraction(0)
    for n, v in values:
        if n <= fit_to:
            ratio = float(v) / (1 + n) ** n_exp
            best = max(best, Fraction(ratio).limit_denominator(1000) + Fraction(1, 1000))
    return best


def _dmu(scope: Scope, r: VerificationReport):
    bound = scope.max_weight if scope.max_weight is not None else 6
    fit = scope.fit_weight if scope.fit_weight is not None else 2
    for name, d in _data("dmu", scope):
        _, dm = satake_matrices(d, bound)
        dual = d.dual()
        n_exp = len(d.positive_roots) - d.semisimple_rank
        for q in scope.q_values:
            rows = []
            for lam in dm.index:
                vals = [abs(p.at_q(q)) for (l, mu), p in dm.entries.items() if l == lam]
                rows.append((lam, int(norm_std(dual, lam)), max(vals)))
            c = _fit_constant([(n, v) for _, n, v in rows], n_exp, fit)
            r.fitted[f"{name}:q={q}"] = {"C": c, "N": n_exp}
            for lam, n, v in rows:
                env = Surd(c * (1 + n) ** n_exp, 0, q)
                r.cases.append(Case(name, "d-entries", {"q": q, "lambda": _vec(lam), "norm": n},
                                    v <= env, {"max_abs": v, "envelope": env}))


def _value_pairs(scope: Scope):
    out = []
    for name, d in _data("valuebound", scope):
        if not d.is_split:
            continue
        seen = set()
        for p in _paths(d):
            h = p.groups[1]
            if h not in seen:
                seen.add(h)
                out.append((name, d, h))
    return out


def value_exponent(d: RootDatum, h: RootDatum) -> int:
    """Polynomial degree allowed in the value envelope, fixed before any data is seen."""
    pg, ph = len(d.positive_roots), len(h.positive_roots)
    return pg + 2 * d.semisimple_rank + (pg - d.semisimple_rank) + (ph - h.semisimple_rank)


def _valuebound(scope: Scope, r: VerificationReport):
    bound = scope.max_weight if scope.max_weight is not None else 6
    fit = scope.fit_weight if scope.fit_weight is not None else 2
    for name, d, h in _value_pairs(scope):
        n_exp = value_exponent(d, h)
        dual = d.dual()
        lams = dominant_coweights(d, bound)
        # q^{-<lam, rho_G>} a_lam(xi), still exact
        scaled = {}
        for lam in lams:
            shift = QPoly.q_power(-la.dot(lam, d.rho))
            scaled[lam] = [twist_stripped(v) * shift for _, v in tau_transfer(d, h, lam).items()]
        for q in scope.q_values:
            rows = [(lam, int(norm_std(dual, lam)), max(abs(p.at_q(q)) for p in scaled[lam])) for lam in lams]
            c = _fit_constant([(n, v) for _, n, v in rows], n_exp, fit)
            r.fitted[f"{name}>{h.type_label}:q={q}"] = {"C": c, "N": n_exp}
            for lam, n, v in rows:
                env = Surd(c * (1 + n) ** n_exp, 0, q)
                r.cases.append(Case(name, f"{d.type_label}>{h.type_label}",
                                    {"q": q, "lambda": _vec(lam), "norm": n}, v <= env,
                                    {"scaled_max_abs": v, "envelope": env, "support": len(scaled[lam])}))


def _inversion(scope: Scope, r: VerificationReport):
    bound = scope.max_weight if scope.max_weight is not None else 4
    for name, d in _data("inversion", scope):
        for k in range(bound + 1):
            b, dm = satake_matrices(d, k)
            ok = is_identity(b @ dm, b.index) and is_identity(dm @ b, b.index)
            r.cases.append(Case(name, "b.d", {"cutoff": k}, ok, {"size": len(b.index)}))


def _qone(scope: Scope, r: VerificationReport):
    bound = scope.max_weight if scope.max_weight is not None else 3
    for name, d in _data("qone", scope):
        for lam in dominant_weights_in_box(d, bound):
            table = weight_multiplicities(d, lam)
            dim_ok = table.total() == dim_rep(d, lam)
            bad = [mu for mu, m in table.entries.items() if lusztig_q_analog(d, lam, mu).at_one() != m]
            r.cases.append(Case(name, "q-analog", {"lambda": _vec(lam)}, dim_ok and not bad,
                                {"dim": dim_rep(d, lam), "weights": len(table.entries),
                                 "mismatch": [_vec(mu) for mu in sorted(bad, key=graded_lex_key)]}))


def _branchdim(scope: Scope, r: VerificationReport):
    bound = scope.max_weight if scope.max_weight is not None else 3
    for name, d in _data("branchdim", scope):
        gd = d.dual()
        targets = []
        for p in _paths(d):
            if p.groups[1] not in targets:
                targets.append(p.groups[1])
        for h in targets:
            hd = h.dual()
            for mu in dominant_weights_in_box(gd, bound):
                c = branch(gd, hd, mu)
                total = sum(m * dim_rep(hd, nu) for nu, m in c.items())
                r.cases.append(Case(name, f"{d.type_label}>{h.type_label}", {"mu": _vec(mu)},
                                    total == dim_rep(gd, mu), {"dim": dim_rep(gd, mu), "restricted": total}))


SUITES = {"regbound": _regbound, "dimbound": _dimbound, "dmu": _dmu, "valuebound": _valuebound,
          "inversion": _inversion, "qone": _qone, "branchdim": _branchdim, "pathlen": _pathlen}


def verify(lemma: str, scope: Scope | None = None) -> VerificationReport:
    if lemma not in SUITES:
        raise UnknownLemma(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    scope = scope or Scope()
    r = VerificationReport(lemma, scope)
    start = time.perf_counter()
    SUITES[lemma](scope, r)
    r.fitted = _jsonable(r.fitted)
    r.wall_time = time.perf_counter() - start
    return r


def verify_all(scope: Scope | None = None) -> list[VerificationReport]:
    return [verify(lemma, scope) for lemma in LEMMAS]
