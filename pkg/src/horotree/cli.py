"""Command-line front end.

Every command is deterministic: identical inputs produce byte-identical JSON
and CSV.  Exact rationals cross the boundary as strings ("5/2", or the
"(num)/(den)" grammar for rational functions); nothing is ever printed as a
float except inside rendered figures.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import eisenstein, figures, oracle, report, roots, spectral, tree
from .exactalg import PoleError


@dataclass
class RunConfig:
    q: int = 2
    m: int = 2
    i: int = 1
    radius: int = 6
    degree: int = 8
    precision: int = None
    z0: str = "1/4"
    out: str = None
    format: str = "json"

    def validate(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if self.m < 2:
            raise ValueError("m must be >= 2")
        if self.i not in (1, 2):
            raise ValueError("i must be 1 or 2")
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")


def load_config_file(path) -> dict:
    """key = value lines; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("bad config line: %r" % raw.rstrip())
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------- commands

def cmd_roots_enum(cfg, args):
    A = roots.CartanMatrix(cfg.m)
    out = {
        "m": cfg.m,
        "i": cfg.i,
        "count": args.count,
        "positive": roots.delta_re_stream(cfg.i, args.count, A, "positive"),
        "negative": roots.delta_re_stream(cfg.i, args.count, A, "negative"),
    }
    _emit(_dump_json(out), cfg.out)
    return 0


def cmd_roots_inversions(cfg, args):
    A = roots.CartanMatrix(cfg.m)
    word = roots.reduce_word(args.word)
    S = sorted(roots.inversion_set(word, A))
    out = {"m": cfg.m, "word": word, "length": len(word), "roots": S,
           "containment_family": int(word[0]) if word else None,
           "containment_ok": roots.check_inversion_containment(word, A)}
    _emit(_dump_json(out), cfg.out)
    return 0 if out["containment_ok"] else 1


def cmd_roots_haar(cfg, args):
    A = roots.CartanMatrix(cfg.m)
    val = roots.haar_index_exponent(cfg.i, args.n, A)
    _emit(_dump_json({"i": cfg.i, "m": cfg.m, "n": args.n, "exponent": val}), cfg.out)
    return 0 if val == 2 * args.n else 1


def cmd_tree_build(cfg, args):
    T = tree.build_tree(cfg.q, cfg.radius, cfg.i)
    _emit(tree.to_jsonl(T), cfg.out)
    return 0


def cmd_tree_verify(cfg, args):
    T = tree.build_tree(cfg.q, cfg.radius, cfg.i)
    ok_words = tree.verify_bruhat_iwasawa(T)
    ok_edges = tree.label_transitions_ok(T)
    out = {"q": cfg.q, "radius": cfg.radius, "i": cfg.i,
           "bruhat_iwasawa_ok": ok_words, "edge_transitions_ok": ok_edges,
           "vertices": T.num_vertices()}
    if not ok_words:
        out["bad_vertices"] = tree.bruhat_iwasawa_failures(T)[:20]
    _emit(_dump_json(out), cfg.out)
    return 0 if ok_words and ok_edges else 1


def cmd_spectral_eigen(cfg, args):
    T = tree.build_tree(cfg.q, cfg.radius, cfg.i)
    ok, bad = spectral.eigen_check(T)
    out = {"q": cfg.q, "radius": cfg.radius, "i": cfg.i, "eigen_ok": ok,
           "eigenvalue": str(eisenstein.lambda_poly(cfg.q)),
           "exceptional_vertices": bad[:20]}
    _emit(_dump_json(out), cfg.out)
    return 0 if ok else 1


def _parse_kernel(text) -> dict:
    out = {}
    for part in text.split(","):
        n, _, coef = part.partition(":")
        out[int(n)] = Fraction(coef)
    return out


def cmd_spectral_radial(cfg, args):
    K = _parse_kernel(args.kernel)
    lam = spectral.radial_eigenvalue(cfg.q, K)
    T = tree.build_tree(cfg.q, cfg.radius, cfg.i)
    f = spectral.psi(T)
    Kf = spectral.radial_apply(K, T, f)
    bad = [v for v, val in Kf.items() if val != lam * f[v]]
    out = {"q": cfg.q, "radius": cfg.radius, "kernel": {str(k): str(v) for k, v in K.items()},
           "eigenvalue": str(lam), "eigen_ok": not bad, "exceptional_vertices": bad[:20]}
    _emit(_dump_json(out), cfg.out)
    return 0 if not bad else 1


def cmd_spectral_constant_term(cfg, args):
    T = tree.build_tree(cfg.q, cfg.radius, cfg.i)
    f = spectral.psi(T)
    vals = {}
    for D in range(args.depth + 1):
        vals[str(D)] = str(spectral.constant_term(T, f, args.level, D))
    distinct = sorted(set(vals.values()))
    out = {"q": cfg.q, "level": args.level, "depths": vals,
           "depth_independent": len(distinct) == 1}
    _emit(_dump_json(out), cfg.out)
    return 0 if out["depth_independent"] else 1


def _solve_report(q) -> dict:
    data = eisenstein.eisenstein_ray(q)
    pole_roots, den = eisenstein.poles(data)
    return {
        "q": q,
        "c1": str(data.c1),
        "c2": str(data.c2),
        "lambda": str(data.lam),
        "poles": [str(r) for r in pole_roots],
        "denominator": str(den),
        "functional_eq": eisenstein.functional_equation_check(data),
        "boundary_ok": data.boundary_ok(),
    }


def cmd_eisenstein_solve(cfg, args):
    rep = _solve_report(cfg.q)
    _emit(_dump_json(rep), cfg.out)
    return 0 if rep["functional_eq"] and rep["boundary_ok"] else 1


def cmd_eisenstein_values(cfg, args):
    data = eisenstein.eisenstein_ray(cfg.q)
    z0 = Fraction(cfg.z0) if args.numeric else None
    try:
        vals = eisenstein.eisenstein_values(data, args.count, z0)
    except PoleError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    text = _csv_text(["n", "value"], [(n, str(v)) for n, v in enumerate(vals)])
    _emit(text, cfg.out)
    if args.plot:
        base = cfg.out or "eisenstein_values.csv"
        png = os.path.splitext(base)[0] + ".png"
        ns = list(range(len(vals)))
        if z0 is None:
            sample = {str(zz): [data.value(n).evaluate(zz) for n in ns]
                      for zz in (Fraction(1, 4), Fraction(1, 8))}
        else:
            sample = {str(z0): vals}
        figures.plot_ray_values(png, cfg.q, ns, sample)
    return 0


def cmd_eisenstein_functional(cfg, args):
    data = eisenstein.eisenstein_ray(cfg.q)
    ok = eisenstein.functional_equation_check(data)
    _emit(_dump_json({"q": cfg.q, "functional_eq": ok, "c2": str(data.c2)}), cfg.out)
    return 0 if ok else 1


def cmd_eisenstein_poles(cfg, args):
    data = eisenstein.eisenstein_ray(cfg.q)
    pole_roots, den = eisenstein.poles(data)
    _emit(_dump_json({"q": cfg.q, "poles": [str(r) for r in pole_roots],
                      "denominator": str(den)}), cfg.out)
    return 0


def cmd_eisenstein_uniqueness(cfg, args):
    rep = eisenstein.uniqueness_system_check(cfg.q)
    out = {"q": cfg.q, "ok": rep.ok,
           "scaling_kills_dual_component": rep.scaling_kills_dual_component,
           "scaling_coefficient_ok": rep.scaling_coefficient_ok,
           "basis_eigenfunctions_ok": rep.basis_eigenfunctions_ok,
           "discrete_uniqueness_ok": rep.discrete_uniqueness_ok}
    _emit(_dump_json(out), cfg.out)
    return 0 if rep.ok else 1


def cmd_oracle_enumerate(cfg, args):
    rows = []
    for gamma in oracle.enumerate_cosets(cfg.q, args.deg):
        rows.append((oracle.poly_str(gamma.a), oracle.poly_str(gamma.b),
                     oracle.poly_str(gamma.c), oracle.poly_str(gamma.d)))
    text = _csv_text(["a", "b", "c", "d"], rows)
    _emit(text, cfg.out)
    return 0


def cmd_oracle_brute(cfg, args):
    z0 = Fraction(cfg.z0)
    series = oracle.brute_eisenstein(cfg.q, args.vertex, z0, args.deg)
    out = {"q": cfg.q, "vertex": "sigma_%d" % args.vertex, "z0": str(z0),
           "degree": args.deg, "value": str(series.value),
           "partial_sums": [str(s) for s in series.partial_sums],
           "tail_ratio": str(series.tail_ratio) if series.tail_ratio is not None else None}
    _emit(_dump_json(out), cfg.out)
    return 0


def cmd_oracle_compare(cfg, args):
    z0 = Fraction(cfg.z0)
    rows = oracle.compare_with_ray(cfg.q, z0, args.deg, n_max=args.vertices)
    text = _csv_text(["vertex", "brute", "ray_model", "ratio", "tail_bound"],
                     [(r.vertex, str(r.brute), str(r.ray_model), str(r.ratio),
                       str(r.tail_bound)) for r in rows])
    _emit(text, cfg.out)
    if args.plot:
        base = cfg.out or "oracle_compare.csv"
        figures.plot_compare_ratio(os.path.splitext(base)[0] + ".png", cfg.q, rows)
    base_ratio = rows[0].ratio
    deviation = max(abs(r.ratio / base_ratio - 1) for r in rows)
    return 0 if deviation < Fraction(1, 1000) else 1


def cmd_oracle_ray_check(cfg, args):
    rep = oracle.quotient_ray_check(cfg.q, cfg.radius, args.deg)
    out = {"q": cfg.q, "radius": cfg.radius, "degree": args.deg, "ok": rep.ok,
           "num_classes": rep.num_classes, "stable": rep.stable,
           "ray_indices_ok": rep.ray_indices_ok,
           "multiplicities_ok": rep.multiplicities_ok,
           "multiplicities": [list(m) for m in rep.multiplicities]}
    _emit(_dump_json(out), cfg.out)
    return 0 if rep.ok else 1


def cmd_report_all(cfg, args):
    selected = None
    if args.criteria:
        selected = sorted({int(x) for x in args.criteria.split(",")})
    results = report.run_all(selected)
    outdir = cfg.out or "report"
    os.makedirs(outdir, exist_ok=True)

    summary = {"criteria": [{"number": r.number, "title": r.title,
                             "passed": r.passed, "details": r.details}
                            for r in results],
               "all_passed": all(r.passed for r in results)}
    with open(os.path.join(outdir, "criteria_summary.json"), "w") as fh:
        fh.write(_dump_json(summary))

    q = 2
    z0 = Fraction(1, 4)
    data = eisenstein.eisenstein_ray(q)
    ns = list(range(13))
    vals_by_z0 = {str(zz): [data.value(n).evaluate(zz) for n in ns]
                  for zz in (Fraction(1, 4), Fraction(1, 8))}
    with open(os.path.join(outdir, "eisenstein_values.csv"), "w") as fh:
        fh.write(_csv_text(["n"] + ["E_z0_%s" % z.replace("/", "_") for z in vals_by_z0],
                           [(n,) + tuple(str(vals_by_z0[z][n]) for z in vals_by_z0)
                            for n in ns]))
    sums_by_z0 = {}
    for zz in (Fraction(1, 4), Fraction(1, 2)):
        sums_by_z0[str(zz)] = oracle.brute_eisenstein(q, 0, zz, 12).partial_sums
    with open(os.path.join(outdir, "partial_sums.csv"), "w") as fh:
        fh.write(_csv_text(["degree"] + ["sum_z0_%s" % z.replace("/", "_") for z in sums_by_z0],
                           [(k,) + tuple(str(sums_by_z0[z][k]) for z in sums_by_z0)
                            for k in range(13)]))
    rows = oracle.compare_with_ray(q, z0, 12, n_max=5)
    with open(os.path.join(outdir, "oracle_compare.csv"), "w") as fh:
        fh.write(_csv_text(["vertex", "brute", "ray_model", "ratio", "tail_bound"],
                           [(r.vertex, str(r.brute), str(r.ray_model), str(r.ratio),
                             str(r.tail_bound)) for r in rows]))
    if not args.no_figures:
        figures.render_report_figures(outdir, q, vals_by_z0, ns, sums_by_z0, rows, data)

    for r in results:
        line = r.line()
        if not r.passed and r.details.get("failures"):
            line += "  [%s]" % json.dumps(r.details["failures"][:3], sort_keys=True)
        print("%s (%.1fs)" % (line, r.elapsed))
    print("report written to %s" % outdir)
    return 0 if summary["all_passed"] else 1


# ---------------------------------------------------------------- wiring

def _add_common(p):
    p.add_argument("--config", help="key=value defaults file")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--i", type=int, choices=(1, 2))
    p.add_argument("--radius", type=int)
    p.add_argument("--degree", "--deg", dest="degree", type=int)
    p.add_argument("--precision", type=int)
    p.add_argument("--z0", type=str)
    p.add_argument("--out", type=str)
    p.add_argument("--format", choices=("json", "csv"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="horotree",
        description="exact spectral computations on (q+1)-regular trees")
    sub = ap.add_subparsers(dest="group", required=True)

    g = sub.add_parser("roots", help="root and Weyl-word combinatorics")
    gs = g.add_subparsers(dest="command", required=True)
    p = gs.add_parser("enum")
    p.add_argument("--count", type=int, default=10)
    _add_common(p)
    p.set_defaults(fn=cmd_roots_enum)
    p = gs.add_parser("inversions")
    p.add_argument("--word", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_roots_inversions)
    p = gs.add_parser("haar-index")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_roots_haar)

    g = sub.add_parser("tree", help="labeled tree construction")
    gs = g.add_subparsers(dest="command", required=True)
    p = gs.add_parser("build")
    _add_common(p)
    p.set_defaults(fn=cmd_tree_build)
    p = gs.add_parser("verify-labels")
    _add_common(p)
    p.set_defaults(fn=cmd_tree_verify)

    g = sub.add_parser("spectral", help="adjacency and radial operators")
    gs = g.add_subparsers(dest="command", required=True)
    p = gs.add_parser("eigen-check")
    _add_common(p)
    p.set_defaults(fn=cmd_spectral_eigen)
    p = gs.add_parser("radial")
    p.add_argument("--kernel", default="1:1", help='like "0:1,2:3/2"')
    _add_common(p)
    p.set_defaults(fn=cmd_spectral_radial)
    p = gs.add_parser("constant-term")
    p.add_argument("--level", type=int, default=-1)
    p.add_argument("--depth", type=int, default=2)
    _add_common(p)
    p.set_defaults(fn=cmd_spectral_constant_term)

    g = sub.add_parser("eisenstein", help="ray series, poles, continuation")
    gs = g.add_subparsers(dest="command", required=True)
    p = gs.add_parser("solve")
    _add_common(p)
    p.set_defaults(fn=cmd_eisenstein_solve)
    p = gs.add_parser("values")
    p.add_argument("--count", type=int, default=12)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--plot", action="store_true")
    _add_common(p)
    p.set_defaults(fn=cmd_eisenstein_values)
    p = gs.add_parser("functional-eq")
    _add_common(p)
    p.set_defaults(fn=cmd_eisenstein_functional)
    p = gs.add_parser("poles")
    _add_common(p)
    p.set_defaults(fn=cmd_eisenstein_poles)
    p = gs.add_parser("uniqueness")
    _add_common(p)
    p.set_defaults(fn=cmd_eisenstein_uniqueness)

    g = sub.add_parser("oracle", help="function-field brute-force cross-checks")
    gs = g.add_subparsers(dest="command", required=True)
    p = gs.add_parser("enumerate")
    p.add_argument("--deg", type=int, default=2)
    _add_common(p)
    p.set_defaults(fn=cmd_oracle_enumerate)
    p = gs.add_parser("brute")
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--deg", type=int, default=10)
    _add_common(p)
    p.set_defaults(fn=cmd_oracle_brute)
    p = gs.add_parser("compare")
    p.add_argument("--deg", type=int, default=12)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--plot", action="store_true")
    _add_common(p)
    p.set_defaults(fn=cmd_oracle_compare)
    p = gs.add_parser("ray-check")
    p.add_argument("--deg", type=int, default=4)
    _add_common(p)
    p.set_defaults(fn=cmd_oracle_ray_check)

    g = sub.add_parser("report", help="acceptance suite and bundled outputs")
    gs = g.add_subparsers(dest="command", required=True)
    p = gs.add_parser("all")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 3,9")
    p.add_argument("--no-figures", action="store_true")
    _add_common(p)
    p.set_defaults(fn=cmd_report_all)

    return ap


_CONFIG_INT_KEYS = {"q", "m", "i", "radius", "degree", "precision"}


def make_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, val in load_config_file(args.config).items():
            if not hasattr(cfg, key):
                raise ValueError("unknown config key %r" % key)
            setattr(cfg, key, int(val) if key in _CONFIG_INT_KEYS else val)
    for key in ("q", "m", "i", "radius", "degree", "precision", "z0", "out", "format"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = make_config(args)
    except ValueError as exc:
        sys.stderr.write("configuration error: %s\n" % exc)
        return 2
    try:
        return args.fn(cfg, args)
    except (ValueError, KeyError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
