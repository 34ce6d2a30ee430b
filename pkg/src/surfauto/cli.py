"""Command-line interface: verification suites and data emission.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or configuration error.  All numeric output uses fixed digit
counts so identical configurations produce byte-identical files.
"""

import argparse
import json
import math
import sys
from pathlib import Path

from .charts import CenterTable, fiber_transition_closed, fiber_transition_numeric
from .dynamics import fixed_points, iterate_orbit, unstable_manifold
from .errors import ParamError, SurfautoError
from .mapfamily import MapParams, admissible_c
from .picard import (
    char_poly,
    char_poly_factor_check,
    chi_poly,
    degree_sequence,
    pushforward_matrix,
    spectral_radius,
)
from .reflections import coxeter_factorization_check, reversibility_check, weyl_factorization_check
from .verify import chart_suite, factorization_suite, fixed_point_suite, lattice_suite, parabolic_suite

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _fmt(x, digits=12):
    return f"{x:.{digits}f}"


def _fmt_complex(z, digits=12):
    z = complex(z)
    return [float(_fmt(z.real, digits)), float(_fmt(z.imag, digits))]


def _poly_str(coeffs):
    return [str(c) for c in coeffs]


def _write_json(payload, path=None, stream=sys.stdout):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n")
    else:
        stream.write(text + "\n")


def _out_path(args, name):
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        return Path(args.out) / name
    return None


def _params_from(args, require=True):
    if args.params:
        try:
            p = MapParams.load(args.params)
        except (OSError, KeyError, ValueError) as exc:
            raise ParamError(f"cannot read parameter file: {exc}") from exc
        # flags override file values
        if args.n or args.k or args.c_j or args.a:
            d = p.to_json_dict()
            if args.n:
                d["n"] = args.n
            if args.k:
                d["k"] = args.k
            if args.c_j:
                d["c"] = {"j": args.c_j, "sign": args.c_sign or "+"}
            if args.a:
                d["a"] = _parse_a(args.a)
            if args.delta:
                d["delta"] = _parse_delta(args.delta)
            p = MapParams.from_json_dict(d)
        return p
    if args.n is None or args.k is None:
        if require:
            raise ParamError("need --params or both --n and --k")
        return None
    a = _parse_a(args.a) if args.a else {}
    c = {"j": args.c_j or 1, "sign": args.c_sign or "+"}
    d = {"n": args.n, "k": args.k, "c": c, "a": a,
         "delta": _parse_delta(args.delta) if args.delta else [1.0, 0.0]}
    return MapParams.from_json_dict(d)


def _parse_a(items):
    out = {}
    for item in items:
        idx, _, val = item.partition("=")
        parts = val.split(",")
        re_part = float(parts[0])
        im_part = float(parts[1]) if len(parts) > 1 else 0.0
        out[str(int(idx))] = [re_part, im_part]
    return out


def _parse_delta(text):
    parts = str(text).split(",")
    return [float(parts[0]), float(parts[1]) if len(parts) > 1 else 0.0]


# -- subcommands ------------------------------------------------------------------


def cmd_spectrum(args):
    n, k = args.n, args.k
    try:
        chi = chi_poly(n, k)
        lam = spectral_radius(n, k)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    M = pushforward_matrix(n, k)
    cp = char_poly(M)
    divides, cofactor, worst = char_poly_factor_check(n, k, cp)
    payload = {
        "n": n, "k": k,
        "entropy_polynomial": _poly_str(chi),
        "lambda": _fmt(lam),
        "entropy": _fmt(math.log(lam)),
        "char_poly": _poly_str(cp),
        "cofactor": _poly_str(cofactor),
        "cofactor_roots_unit_modulus_residual": _fmt(worst),
    }
    print(f"lambda = {_fmt(lam)}")
    print(f"entropy = {_fmt(math.log(lam))}")
    path = _out_path(args, f"spectrum_{n}_{k}.json")
    if path:
        _write_json(payload, path)
    return 0


def cmd_cn(args):
    vals = admissible_c(args.n)
    print(", ".join(f"{v:.11f}" for v in vals))
    path = _out_path(args, f"cn_{args.n}.json")
    if path:
        _write_json({"n": args.n, "c": [f"{v:.11f}" for v in vals]}, path)
    return 0


def cmd_verify(args):
    p = _params_from(args)
    table = CenterTable.build(p)
    suites = [
        lattice_suite(p.n, p.k),
        chart_suite(p, table=table, n_xi=args.n_xi, tol=args.tol or 1e-6),
        factorization_suite(p.n, p.k),
        parabolic_suite(p, table=table, points_per_fiber=args.points),
        fixed_point_suite(p),
    ]
    payload = {"params": p.to_json_dict(),
               "suites": [s.to_json_dict() for s in suites]}
    overall = all(s.overall == "pass" for s in suites)
    payload["overall"] = "pass" if overall else "fail"
    for s in suites:
        print(f"{s.suite}: {s.overall}")
        for c in s.checks:
            if c.status != "pass":
                res = "" if c.residual is None else f" residual={c.residual:.3e}"
                print(f"  [{c.status}] {c.id}{res} {c.detail}".rstrip())
    _write_json(payload, _out_path(args, "verify.json"))
    return 0 if overall else CHECK_FAILURE


def cmd_fixed_points(args):
    p = _params_from(args)
    recs = fixed_points(p)
    rows = [{
        "zeta": _fmt_complex(r.zeta),
        "trace": _fmt_complex(r.trace),
        "eigenvalues": [_fmt_complex(e) for e in r.eigenvalues],
        "type": r.type,
        "multiplicity": r.multiplicity,
    } for r in recs]
    payload = {"params": p.to_json_dict(), "fixed_points": rows,
               "real_count": sum(1 for r in recs if abs(r.zeta.imag) < 1e-9)}
    print(f"{len(recs)} fixed points, {payload['real_count']} real")
    for row in rows:
        print(f"  {row['type']:9s} zeta={row['zeta']} trace={row['trace']}")
    if args.format == "csv":
        lines = ["type,zeta_re,zeta_im,trace_re,trace_im,multiplicity"]
        for row in rows:
            lines.append(f"{row['type']},{row['zeta'][0]},{row['zeta'][1]},"
                         f"{row['trace'][0]},{row['trace'][1]},{row['multiplicity']}")
        path = _out_path(args, "fixed_points.csv")
        if path:
            path.write_text("\n".join(lines) + "\n")
        return 0
    path = _out_path(args, "fixed_points.json")
    if path:
        _write_json(payload, path)
    return 0


def _load_seeds(args, p):
    if args.seeds:
        data = json.loads(Path(args.seeds).read_text())
        return [(float(s[0]), float(s[1])) for s in data]
    recs = [r for r in fixed_points(p) if r.type == "elliptic"]
    if recs:
        z = recs[0].zeta.real
        return [(z + 1e-3 * i, z + 1.3e-3 * i) for i in range(1, 6)]
    return [(0.1, 0.1)]


def cmd_orbit(args):
    p = _params_from(args)
    seeds = _load_seeds(args, p)
    steps = args.steps or 1000
    lines = ["seed_id,step,x,y"]
    statuses = {}
    for sid, seed in enumerate(seeds):
        orb = iterate_orbit(p, seed, steps)
        statuses[sid] = orb.status
        for i, (x, y) in enumerate(orb.points):
            lines.append(f"{sid},{i},{x:.15e},{y:.15e}")
    text = "\n".join(lines) + "\n"
    path = _out_path(args, "orbits.csv")
    if path:
        path.write_text(text)
        print(f"wrote {path} ({len(lines) - 1} rows)")
    else:
        sys.stdout.write(text)
    print(json.dumps({"statuses": statuses}, sort_keys=True))
    return 0


def cmd_unstable(args):
    p = _params_from(args)
    saddles = [r for r in fixed_points(p)
               if r.type == "saddle" and abs(r.zeta.imag) < 1e-9]
    if not saddles:
        print("error: no real saddle fixed points", file=sys.stderr)
        return USAGE_ERROR
    payload = {"params": p.to_json_dict(), "manifolds": []}
    for r in saddles:
        line = unstable_manifold(p, r, arclen=args.arclen, spacing=args.spacing)
        payload["manifolds"].append({
            "meta": {key: (float(v) if isinstance(v, (int, float)) else v)
                     for key, v in line.meta.items()},
            "points": [[float(f"{x:.15e}"), float(f"{y:.15e}")] for x, y in line.points],
        })
        print(f"saddle at {r.zeta.real:.12f}: {len(line.points)} points, "
              f"arclength {line.arclength[-1]:.3f}")
    path = _out_path(args, "unstable.json")
    if path:
        _write_json(payload, path)
    return 0


def cmd_charts(args):
    p = _params_from(args)
    table = CenterTable.build(p)
    import random

    rng = random.Random(314)
    records = []
    worst = 0.0
    for s in range(p.n):
        for j in range(1, 2 * p.k + 2):
            xi = complex(rng.uniform(0.4, 2.0), rng.uniform(-0.6, 0.6))
            tgt, closed = fiber_transition_closed(table, s, j, xi)
            _, numeric, err = fiber_transition_numeric(p, table, s, j, xi)
            abs_err = abs(complex(closed) - complex(numeric))
            worst = max(worst, abs_err)
            records.append({
                "chart": [s, j],
                "xi": _fmt_complex(xi),
                "closed": _fmt_complex(closed),
                "numeric": _fmt_complex(numeric),
                "abs_err": float(f"{abs_err:.3e}"),
            })
    ok = worst < (args.tol or 1e-6)
    payload = {"params": p.to_json_dict(), "records": records,
               "worst": float(f"{worst:.3e}"), "overall": "pass" if ok else "fail"}
    print(f"{len(records)} transitions, worst |closed - numeric| = {worst:.3e}")
    _write_json(payload, _out_path(args, "charts.json"))
    return 0 if ok else CHECK_FAILURE


def cmd_parabolic(args):
    p = _params_from(args)
    rep = parabolic_suite(p, points_per_fiber=args.points)
    for c in rep.checks:
        res = "" if c.residual is None else f" residual={c.residual:.3e}"
        print(f"[{c.status}] {c.id}{res} {c.detail}".rstrip())
    _write_json(rep.to_json_dict(), _out_path(args, "parabolic.json"))
    return 0 if rep.overall == "pass" else CHECK_FAILURE


def cmd_weyl(args):
    n, k = args.n, args.k
    weyl = weyl_factorization_check(n, k)
    cox = coxeter_factorization_check(n, k)
    rev = reversibility_check(n, k)
    repaired = weyl["repaired"]
    verdict = {
        "literal_identity": weyl["literal_identity"],
        "repaired_phi": None if repaired is None else {
            "reflection_triples": [[list(t) for t in triple]
                                   for triple in repaired["reflection_triples"]],
            "residual_permutation": [[list(x) for x in cyc]
                                     for cyc in repaired["residual_permutation"]],
            "reflection_count": repaired["reflection_count"],
        },
        "coxeter_identity": cox["identity"],
        "dihedral": rev.get("dihedral", rev["conjugates_to_inverse"]),
    }
    _write_json(verdict, _out_path(args, f"weyl_{n}_{k}.json"))
    ok = (weyl["literal_identity"] or (repaired and repaired["verified"])) \
        and cox["identity"] and verdict["dihedral"]
    return 0 if ok else CHECK_FAILURE


def cmd_degrees(args):
    n, k = args.n, args.k
    m = args.m or 20
    d = degree_sequence(n, k, m)
    lam = spectral_radius(n, k)
    ratio = d[m] / d[m - 1] if m >= 1 else float("nan")
    payload = {"n": n, "k": k, "degrees": [str(x) for x in d],
               "ratio": _fmt(ratio), "lambda": _fmt(lam)}
    print("d =", ", ".join(str(x) for x in d[: min(len(d), 12)]),
          "..." if len(d) > 12 else "")
    print(f"growth ratio d_{m}/d_{m-1} = {_fmt(ratio)} (lambda = {_fmt(lam)})")
    path = _out_path(args, f"degrees_{n}_{k}.json")
    if path:
        _write_json(payload, path)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="surfauto",
                                 description="rational surface automorphism toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(sp, need_params=False):
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--c-j", dest="c_j", type=int)
        sp.add_argument("--c-sign", dest="c_sign", choices=["+", "-"])
        sp.add_argument("--a", action="append",
                        help="coefficient as idx=re[,im]; repeatable")
        sp.add_argument("--delta", help="re[,im]")
        sp.add_argument("--params", help="JSON parameter file")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--tol", type=float)

    sp = sub.add_parser("spectrum", help="entropy data for (n, k)")
    add_common(sp)
    sp.set_defaults(func=cmd_spectrum, need_nk=True)

    sp = sub.add_parser("cn", help="admissible rotation parameters for n")
    add_common(sp)
    sp.set_defaults(func=cmd_cn, need_n=True)

    sp = sub.add_parser("verify", help="run all verification suites")
    add_common(sp)
    sp.add_argument("--points", type=int, default=10)
    sp.add_argument("--n-xi", dest="n_xi", type=int, default=20)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fixed-points", help="fixed points and multipliers")
    add_common(sp)
    sp.set_defaults(func=cmd_fixed_points)

    sp = sub.add_parser("orbit", help="forward orbits to CSV")
    add_common(sp)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--seeds", help="JSON file with [[x, y], ...]")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("unstable", help="trace unstable manifolds of real saddles")
    add_common(sp)
    sp.add_argument("--arclen", type=float, default=20.0)
    sp.add_argument("--spacing", type=float, default=0.05)
    sp.set_defaults(func=cmd_unstable)

    sp = sub.add_parser("charts", help="fiber transitions: closed vs numeric")
    add_common(sp)
    sp.set_defaults(func=cmd_charts)

    sp = sub.add_parser("parabolic", help="tangent-to-identity suite")
    add_common(sp)
    sp.add_argument("--points", type=int, default=10)
    sp.set_defaults(func=cmd_parabolic)

    sp = sub.add_parser("weyl", help="reflection factorization verdict")
    add_common(sp)
    sp.set_defaults(func=cmd_weyl, need_nk=True)

    sp = sub.add_parser("degrees", help="degree growth sequence")
    add_common(sp)
    sp.add_argument("--m", type=int, default=20)
    sp.set_defaults(func=cmd_degrees, need_nk=True)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "need_nk", False) and (args.n is None or args.k is None):
        if args.params:
            p = MapParams.load(args.params)
            args.n, args.k = p.n, p.k
        else:
            print("error: this command needs --n and --k", file=sys.stderr)
            return USAGE_ERROR
    if getattr(args, "need_n", False) and args.n is None:
        print("error: this command needs --n", file=sys.stderr)
        return USAGE_ERROR
    try:
        return args.func(args)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SurfautoError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
