"""Command-line surface and census machinery.

Commands: classify, index, enumerate, verify, zoo, psi, flag.
Global options: --seed, --trials, --bound, --exact, --format csv|json|md.
Exit codes: 0 ok, 1 formula/oracle disagreement, 2 usage error.

Census rows carry provenance for every oracle cell (seed, trials, bound,
Schwartz-Zippel failure bound) and are byte-stable given (version, seed,
flags): per-row seeds are derived from the master seed and the subset
name, so parallel execution cannot change the output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass
from multiprocessing import Pool

from .exactlin import SampleConfig, format_rat
from .liealg import (
    DomainError,
    algebra_from_json,
    center,
    index as algebra_index,
    index_certified,
    load_algebra,
    save_algebra,
)
from .jordan import analyze
from .classical import (
    MINUS,
    PLUS,
    Flag,
    ParabolicSpec,
    flag_stabilizer_sp,
    parabolic_from_roots,
    parabolic_so,
    parse_root_set,
    zoo,
    ZOO,
)
from .formulas import (
    classify_spec,
    defect_r_formula,
    h_from_root_complement,
    index_r_formula,
    qr_r_formula,
    reduced_flag_so,
)

# the fig-D5 caption row: the theorems say quasi-reductive, the remark's
# prose says otherwise; any formula/oracle disagreement here is reported
# as a paper ambiguity instead of failing the run.
AMBIGUOUS_ROWS = {(10, "1,5-")}


# ---------------------------------------------------------------------------
# parabolic census
# ---------------------------------------------------------------------------

@dataclass
class EnumRow:
    """One standard parabolic: closed-form values, optional oracle values."""

    q: int
    series: str
    n: int
    root_set: str
    flag_dims: tuple
    index_formula: int
    defect_formula: int
    qr_formula: bool
    index_oracle: int = None
    defect_oracle: int = None
    qr_oracle: bool = None
    agree: bool = None
    ambiguous: bool = False
    provenance: dict = None

    def verified(self):
        return self.index_oracle is not None


def iter_specs(q: int):
    """Standard parabolics of so(q) in deterministic (bitmask) order."""
    if q % 2:
        n = (q - 1) // 2
        ground = list(range(1, n + 1))
        series = "B"
    else:
        n = q // 2
        ground = list(range(1, n - 1)) + [PLUS, MINUS]
        series = "D"
    for mask in range(1 << len(ground)):
        subset = frozenset(g for i, g in enumerate(ground) if mask >> i & 1)
        yield ParabolicSpec(series, n, subset)


def row_seed(seed: int, q: int, set_str: str) -> int:
    digest = hashlib.sha256(f"{seed}:{q}:{set_str}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def build_row(spec: ParabolicSpec, verify: bool,
              cfg: SampleConfig) -> EnumRow:
    idx_f, def_f, qr_f = classify_spec(spec)
    row = EnumRow(
        q=spec.q, series=spec.series, n=spec.n, root_set=spec.set_str(),
        flag_dims=spec.flag_dims(), index_formula=idx_f,
        defect_formula=def_f, qr_formula=qr_f,
        ambiguous=(spec.q, spec.set_str()) in AMBIGUOUS_ROWS,
        provenance={"formula": "closed-form"})
    if verify:
        rcfg = SampleConfig(trials=cfg.trials, bound=cfg.bound,
                            seed=row_seed(cfg.seed, spec.q, spec.set_str()))
        _, L = parabolic_from_roots(spec)
        rep = analyze(L, rcfg)
        row.index_oracle = rep.index
        row.defect_oracle = rep.defect
        row.qr_oracle = rep.quasi_reductive
        row.agree = (rep.index == idx_f and rep.defect == def_f
                     and rep.quasi_reductive == qr_f)
        row.provenance["oracle"] = (
            f"seed={rcfg.seed},trials={rcfg.trials},bound={rcfg.bound},"
            f"sz_bound={rep.sampling['sz_bound']}")
    return row


def _row_worker(args):
    series, n, tokens, verify, trials, bound, seed = args
    spec = ParabolicSpec(series, n, frozenset(tokens))
    return build_row(spec, verify, SampleConfig(trials=trials, bound=bound,
                                                seed=seed))


def enumerate_rows(q_values, verify: bool, cfg: SampleConfig, jobs: int = 1):
    specs = [s for q in q_values for s in iter_specs(q)]
    if jobs > 1:
        payload = [(s.series, s.n, tuple(sorted(s.root_set, key=str)),
                    verify, cfg.trials, cfg.bound, cfg.seed) for s in specs]
        with Pool(jobs) as pool:
            rows = pool.map(_row_worker, payload)
        # deterministic order regardless of completion order
        return rows
    return [build_row(s, verify, cfg) for s in specs]


# ---------------------------------------------------------------------------
# output formats
# ---------------------------------------------------------------------------

CSV_COLUMNS = ["q", "series", "n", "set", "flag", "index_formula",
               "defect_formula", "qr_formula", "index_oracle",
               "defect_oracle", "qr_oracle", "agree", "ambiguous",
               "provenance"]


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return "(" + " ".join(str(x) for x in v) + ")"
    if isinstance(v, dict):
        return ";".join(f"{k}={v[k]}" for k in sorted(v))
    return str(v)


def row_cells(row: EnumRow):
    return [_cell(x) for x in (
        row.q, row.series, row.n, row.root_set, row.flag_dims,
        row.index_formula, row.defect_formula, row.qr_formula,
        row.index_oracle, row.defect_oracle, row.qr_oracle, row.agree,
        row.ambiguous, row.provenance)]


def emit_rows(rows, fmt, out):
    if fmt == "csv":
        out.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            out.write(",".join(c.replace(",", ";") for c in row_cells(row))
                      + "\n")
    elif fmt == "json":
        for row in rows:
            doc = asdict(row)
            doc["flag_dims"] = list(row.flag_dims)
            out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif fmt == "md":
        out.write("| " + " | ".join(CSV_COLUMNS) + " |\n")
        out.write("|" + "---|" * len(CSV_COLUMNS) + "\n")
        for row in rows:
            out.write("| " + " | ".join(row_cells(row)) + " |\n")
    else:
        raise DomainError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# ascii Dynkin rendering (filled node = root in the subset)
# ---------------------------------------------------------------------------

def render_dynkin(spec: ParabolicSpec) -> str:
    def sym(tok):
        return "*" if tok in spec.root_set else "o"

    if spec.series == "B":
        parts = []
        for i in range(1, spec.n + 1):
            parts.append(sym(i))
            if i < spec.n:
                parts.append("===" if i == spec.n - 1 else "---")
        labels = "".join(str(i).ljust(4) for i in range(1, spec.n + 1)).rstrip()
        return parts_line(parts) + "\n" + labels
    chain_parts = []
    for i in range(1, spec.n - 1):
        chain_parts.append(sym(i))
        if i < spec.n - 2:
            chain_parts.append("---")
    chain = parts_line(chain_parts)
    pad = " " * (len(chain) + 3)
    top = pad + f"/ {sym(PLUS)} {spec.n}+"
    mid = chain + "--<"
    bot = pad + f"\\ {sym(MINUS)} {spec.n}-"
    labels = "".join(str(i).ljust(4) for i in range(1, spec.n - 1)).rstrip()
    return "\n".join([top, mid, bot, labels])


def parts_line(parts):
    return "".join(parts)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cfg_from_args(args) -> SampleConfig:
    return SampleConfig(trials=args.trials, bound=args.bound, seed=args.seed)


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--bound", type=int, default=2 ** 31)
    p.add_argument("--format", choices=["csv", "json", "md", "text"],
                   default="text")


def cmd_classify(args) -> int:
    cfg = _cfg_from_args(args)
    spec = parse_root_set(args.type, args.n, args.set)
    row = build_row(spec, args.oracle, cfg)
    if args.format == "json":
        doc = asdict(row)
        doc["flag_dims"] = list(row.flag_dims)
        doc["diagram"] = render_dynkin(spec)
        print(json.dumps(doc, sort_keys=True))
    else:
        verdict = "quasi-reductive" if row.qr_formula else "non-quasi-reductive"
        print(f"so({row.q})  series {row.series}  n={row.n}  "
              f"I={{{row.root_set}}}")
        print(f"flag dims: {row.flag_dims}")
        vprime = reduced_flag_so(row.q, row.flag_dims)
        print(f"V': {tuple(vprime)}")
        if spec.series == "D":
            print(f"I~: {{{_set_str(spec.tilde_set(), spec.n)}}}   "
                  f"I0: {{{_set_str(spec.i_zero(), spec.n)}}}")
        print(f"formula: {verdict}, index {row.index_formula}, "
              f"defect {row.defect_formula}")
        if row.verified():
            overdict = ("quasi-reductive" if row.qr_oracle
                        else "non-quasi-reductive")
            print(f"oracle:  {overdict}, index {row.index_oracle}, "
                  f"defect {row.defect_oracle}  "
                  f"[{row.provenance['oracle']}]")
            print(f"agreement: {'yes' if row.agree else 'NO'}"
                  + ("  (whitelisted paper ambiguity)" if row.ambiguous else ""))
        print(render_dynkin(spec))
    if row.verified() and not row.agree and not row.ambiguous:
        return 1
    return 0


def _set_str(tokens, n):
    ints = sorted(t for t in tokens if isinstance(t, int))
    parts = [str(t) for t in ints]
    if PLUS in tokens:
        parts.append(f"{n}+")
    if MINUS in tokens:
        parts.append(f"{n}-")
    return ",".join(parts) if parts else "none"


def _load_target_algebra(args, cfg):
    if args.zoo:
        params = {}
        if args.e is not None:
            params["e"] = args.e
        if args.r is not None:
            params["r"] = args.r
        return zoo(args.zoo, **params)
    if args.algebra:
        return load_algebra(args.algebra)
    if args.q and args.flag is not None:
        dims = tuple(int(x) for x in args.flag.split(",")) if args.flag else ()
        return parabolic_so(args.q, dims)
    if args.type and args.n:
        spec = parse_root_set(args.type, args.n, args.set)
        return parabolic_from_roots(spec)[1]
    raise DomainError(
        "specify an algebra: --zoo NAME | --algebra FILE | --q Q --flag DIMS"
        " | --type B|D --n N --set S")


def cmd_index(args) -> int:
    cfg = _cfg_from_args(args)
    L = _load_target_algebra(args, cfg)
    if args.exact:
        ind = algebra_index(L, cfg, exact=True)
        doc = {"dim": L.dim, "index": ind, "method": "exact-elimination"}
    elif L.realization is not None and not args.index_only:
        rep = analyze(L, cfg)
        doc = {"dim": L.dim, **rep.to_json()}
    else:
        ind, cert = index_certified(L, cfg)
        doc = {"dim": L.dim, "index": ind, "method": "randomized",
               **cert.to_json()}
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print("  ".join(f"{k}={v}" for k, v in doc.items()))
    return 0


def cmd_enumerate(args) -> int:
    cfg = _cfg_from_args(args)
    if args.q:
        q_values = [args.q]
    else:
        q_values = list(range(args.q_min, args.q_max + 1))
    for q in q_values:
        if q < 7:
            raise DomainError("enumeration starts at q = 7")
    fmt = args.format if args.format != "text" else "csv"
    rows = enumerate_rows(q_values, args.verify, cfg, jobs=args.jobs)
    emit_rows(rows, fmt, sys.stdout)
    bad = [r for r in rows
           if r.verified() and not r.agree and not r.ambiguous]
    return 1 if bad else 0


def cmd_verify(args) -> int:
    cfg = _cfg_from_args(args)
    disagreements = []
    ambiguities = []

    rows = enumerate_rows(range(7, args.q_max + 1), True, cfg,
                          jobs=args.jobs)
    for row in rows:
        note = (f"so({row.q}) I={{{row.root_set}}}: formula "
                f"(ind {row.index_formula}, def {row.defect_formula}, "
                f"qr {row.qr_formula}) vs oracle (ind {row.index_oracle}, "
                f"def {row.defect_oracle}, qr {row.qr_oracle})")
        if row.ambiguous:
            ambiguities.append(note + "  [fig-D5 paper ambiguity row]")
        elif not row.agree:
            disagreements.append(note)
        # Dynkin-complement count must match the defect formula everywhere
        spec = parse_root_set(row.series, row.n, row.root_set)
        h = h_from_root_complement(row.series, row.n, spec.root_set)
        if h != row.defect_formula:
            disagreements.append(
                f"so({row.q}) I={{{row.root_set}}}: complement count {h} "
                f"!= defect formula {row.defect_formula}")

    for dim_v in range(2, args.dimv_max + 1):
        for mask in range(1 << (dim_v - 1)):
            dims = tuple(d for d in range(1, dim_v) if mask >> (d - 1) & 1)
            dims = dims + (dim_v,)
            rcfg = SampleConfig(trials=cfg.trials, bound=cfg.bound,
                                seed=row_seed(cfg.seed, dim_v, str(dims)))
            L = flag_stabilizer_sp(Flag.coordinate(dim_v, dims))
            rep = analyze(L, rcfg)
            if (rep.index, rep.defect) != (index_r_formula(dims),
                                           defect_r_formula(dims)):
                disagreements.append(
                    f"flag stabilizer dims {dims}: oracle (ind {rep.index}, "
                    f"def {rep.defect}) vs formula "
                    f"(ind {index_r_formula(dims)}, "
                    f"def {defect_r_formula(dims)})")

    print(f"{len(disagreements)} disagreements, "
          f"{len(ambiguities)} ambiguity row logged"
          if len(ambiguities) == 1 else
          f"{len(disagreements)} disagreements, "
          f"{len(ambiguities)} ambiguity rows logged")
    for note in ambiguities:
        print("ambiguity:", note)
    for note in disagreements:
        print("DISAGREEMENT:", note)
    return 1 if disagreements else 0


def cmd_zoo(args) -> int:
    cfg = _cfg_from_args(args)
    if args.list or not args.name:
        for name, (_, params) in sorted(ZOO.items()):
            print(name + (f"  (parameters: {', '.join(params)})"
                          if params else ""))
        return 0
    params = {}
    if args.e is not None:
        params["e"] = args.e
    if args.r is not None:
        params["r"] = args.r
    L = zoo(args.name, **params)
    rep = analyze(L, cfg)
    doc = {"name": args.name, "dim": L.dim, **rep.to_json()}
    if args.save:
        save_algebra(L, args.save)
        doc["saved"] = args.save
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print("  ".join(f"{k}={v}" for k, v in doc.items()))
    return 0


def cmd_psi(args) -> int:
    cfg = _cfg_from_args(args)
    from .liealg import psi_polynomial
    L = _load_target_algebra(args, cfg)
    p = psi_polynomial(L, cfg)
    if args.format == "json":
        print(json.dumps({"psi": str(p)}))
    else:
        print(str(p))
    return 0


def cmd_flag(args) -> int:
    cfg = _cfg_from_args(args)
    dims = tuple(int(x) for x in args.flag.split(",")) if args.flag else ()
    if not dims or dims[-1] != args.dim:
        dims = dims + (args.dim,) if (not dims or dims[-1] < args.dim) else dims
    L = flag_stabilizer_sp(Flag.coordinate(args.dim, dims))
    rep = analyze(L, cfg)
    doc = {
        "dim_V": args.dim, "flag": list(dims), "dim": L.dim,
        "index_formula": index_r_formula(dims),
        "defect_formula": defect_r_formula(dims),
        "qr_formula": qr_r_formula(dims),
        **rep.to_json(),
    }
    agree = (doc["index_formula"] == rep.index
             and doc["defect_formula"] == rep.defect)
    doc["agree"] = agree
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print("  ".join(f"{k}={v}" for k, v in doc.items()))
    return 0 if agree else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="qrlie",
        description="quasi-reductivity of algebraic Lie algebras, exactly")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one so(q) parabolic")
    p.add_argument("--type", choices=["B", "D"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", default="")
    p.add_argument("--oracle", action="store_true",
                   help="add the linear-algebra verdict")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("index", help="index / full report of an algebra")
    p.add_argument("--zoo", default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--algebra", default=None, help="algebra JSON file")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--flag", default=None)
    p.add_argument("--type", choices=["B", "D"], default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--set", default="")
    p.add_argument("--exact", action="store_true",
                   help="deterministic polynomial elimination")
    p.add_argument("--index-only", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("enumerate", help="census of standard parabolics")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--q-min", type=int, default=7)
    p.add_argument("--q-max", type=int, default=8)
    p.add_argument("--verify", action="store_true",
                   help="fill the oracle columns")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="formula/oracle cross-validation")
    p.add_argument("--q-max", type=int, default=10)
    p.add_argument("--dimv-max", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zoo", help="example algebras")
    p.add_argument("--list", action="store_true")
    p.add_argument("--name", default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--save", default=None, help="write algebra JSON here")
    _add_common(p)
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("psi", help="Pfaffian polynomial (prehomogeneous)")
    p.add_argument("--zoo", default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--algebra", default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--flag", default=None)
    p.add_argument("--type", choices=["B", "D"], default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--set", default="")
    _add_common(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("flag", help="flag stabilizer inside gl(V)(xi)")
    p.add_argument("--dim", type=int, required=True, help="dim V")
    p.add_argument("--flag", default="", help="flag dims, e.g. 1,3")
    _add_common(p)
    p.set_defaults(func=cmd_flag)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
