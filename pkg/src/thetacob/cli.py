"""Command-line front end: every computation as a deterministic emitter.

Output is wrapped in a fixed envelope {command, params, format_version,
payload}; identical inputs produce byte-identical output (fixed orderings,
no timestamps).  ``--format json`` emits the envelope, the default text
format prints aligned human-readable tables.  Exit codes: 0 success, 2
parameter/validation error, 3 tolerance failure in `weierstrass verify`;
`selftest` exits 1 when a criterion fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .core import parse_partition, partitions_of
from .gradedring import ExprSyntaxError, MissingGeneratorError, format_poly, parse_poly
from .series import fgl_axiom_residuals
from . import cobordism as cob
from . import landweber as ln
from . import genera
from . import weierstrass as ws
from .symfun import ChernVector
from .acceptance import run_all

FORMAT_VERSION = "1.0.0"


class CliError(ValueError):
    """Validation failure reported with exit code 2."""


def _default_weight() -> int:
    env = os.environ.get("THETA_MAX_WEIGHT")
    if env is None:
        return 12
    try:
        value = int(env)
    except ValueError:
        raise CliError(f"THETA_MAX_WEIGHT must be an integer, got {env!r}") from None
    if value < 2:
        raise CliError("THETA_MAX_WEIGHT must be >= 2")
    return value


def _emit(args, command: str, params: dict, payload, text_lines) -> None:
    if args.format == "json":
        envelope = {
            "command": command,
            "params": params,
            "format_version": FORMAT_VERSION,
            "payload": payload,
        }
        print(json.dumps(envelope, indent=2))
    else:
        for line in text_lines:
            print(line)


def _frac(x: Fraction) -> str:
    return str(x)


# -- subcommand handlers -------------------------------------------------------------


def cmd_beta(args):
    n = args.max_weight
    b = cob.beta(n + 1)
    coeffs = [format_poly(b[m]) for m in range(n + 2)]
    payload = {"max_weight": n, "coefficients": coeffs}
    lines = [f"beta(z) up to weight {n} (coefficient of z^m has weight m-1)"]
    lines += [f"  z^{m:<3} {coeffs[m]}" for m in range(1, n + 2)]
    _emit(args, "beta", {"max_weight": n}, payload, lines)


def cmd_logarithm(args):
    n = args.max_weight
    lg = cob.mischenko_log(n + 1)
    cps = cob.cp_classes(n + 1)
    coeffs = [format_poly(lg[m]) for m in range(n + 2)]
    payload = {
        "max_weight": n,
        "coefficients": coeffs,
        "cp_classes": [format_poly(cps[m]) for m in range(n + 1)],
    }
    lines = [f"beta^-1(u) up to weight {n}; cp_n = (n+1) * [u^(n+1)] beta^-1"]
    for m in range(1, n + 1):
        lines.append(f"  n={m:<3} coeff {coeffs[m + 1]:<40} cp_{m} = {payload['cp_classes'][m]}")
    _emit(args, "logarithm", {"max_weight": n}, payload, lines)


def cmd_classes(args):
    n = args.max_weight
    family = args.family
    rows = []
    if family == "vn":
        vs = cob.v_classes(n)
        for m in range(1, n + 1):
            rows.append({"n": m, "poly": format_poly(vs[m]), "q": cob.q_multiplier(m)})
        header = "v_n classes with minimal integral multipliers q_n"
        lines = [header] + [f"  v{r['n']} = {r['poly']}   (q_{r['n']} = {r['q']})" for r in rows]
    elif family == "wn":
        wcl = cob.w_classes(n)
        for m in range(1, n + 1):
            rows.append({
                "n": m,
                "poly": format_poly(wcl[m]),
                "q": genera.integrality_multiplier(wcl[m]),
            })
        header = "w_n classes with empirical minimal integral multipliers"
        lines = [header] + [f"  w{r['n']} = {r['poly']}   (q_{r['n']} = {r['q']})" for r in rows]
    else:
        cps = cob.cp_classes(n + 1)
        for m in range(1, n + 1):
            rows.append({"n": m, "poly": format_poly(cps[m]), "q": 1})
        header = "cp_n projective-space classes (already integral cobordism classes)"
        lines = [header] + [f"  cp{r['n']} = {r['poly']}" for r in rows]
    payload = {"family": family, "max_weight": n, "classes": rows}
    _emit(args, "classes", {"family": family, "max_weight": n}, payload, lines)


def cmd_ln_apply(args):
    lam = parse_partition(args.partition)
    poly = parse_poly(args.expr)
    result = ln.ln_apply(lam, poly)
    payload = {"partition": str(lam), "expr": format_poly(poly), "result": format_poly(result)}
    lines = [f"S_({lam}) applied to {payload['expr']}", f"  = {payload['result']}"]
    _emit(args, "ln apply", {"partition": str(lam), "expr": args.expr}, payload, lines)


def cmd_theta_intersect(args):
    n, k = args.n, args.k
    if not 0 <= k <= n:
        raise CliError("need 0 <= k <= n")
    cls = ln.intersection_class(n, k)
    payload = {"n": n, "k": k, "poly": format_poly(cls)}
    lines = [f"theta intersection class (n={n}, k={k}): {payload['poly']}"]
    _emit(args, "theta intersect", {"n": n, "k": k}, payload, lines)


def _load_genus(name: str, order: int) -> genera.GenusSpec:
    if name.startswith("file:"):
        path = name[5:]
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read genus file {path}: {exc}") from None
        if not isinstance(data, dict) or "coeffs" not in data:
            raise CliError('genus file must be {"coeffs": ["1", "-1/2", ...]}')
        coeffs = [Fraction(c) for c in data["coeffs"]]
        if not coeffs or coeffs[0] != 1:
            raise CliError("genus coefficient list must start with 1")
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return genera.custom_genus(coeffs, order, name=os.path.basename(path))
    try:
        return genera.genus_preset(name, order)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_genus(args):
    target = args.of
    if target.startswith("theta:"):
        n = int(target[6:])
        spec = _load_genus(args.name, max(n, 2))
        value = genera.genus_of_theta(spec, n)
        shown = f"theta:{n}"
    elif target.startswith("poly:"):
        poly = parse_poly(target[5:])
        order = max(poly.top_weight(), 2)
        spec = _load_genus(args.name, order)
        value = genera.genus_of_poly(spec, poly)
        shown = f"poly:{format_poly(poly)}"
    else:
        raise CliError('--of must be "theta:N" or "poly:EXPR"')
    payload = {"name": spec.name, "of": shown, "value": _frac(value)}
    lines = [f"{spec.name} genus of {shown} = {value}"]
    _emit(args, "genus", {"name": args.name, "of": target}, payload, lines)


def _chern_values_payload(vec: ChernVector) -> dict:
    return {str(lam): _frac(vec.values[lam]) for lam in partitions_of(vec.weight)}


def cmd_invariants(args):
    inv = genera.theta_invariants(args.n, args.k)
    payload = {
        "n": inv.n,
        "k": inv.k,
        "betti": list(inv.betti),
        "euler": inv.euler,
        "signature": _frac(inv.signature) if inv.signature is not None else None,
        "chern_tangent_products": _chern_values_payload(inv.chern_tangent)
        if inv.chern_tangent else None,
        "chern_normal_monomial": _chern_values_payload(inv.chern_normal)
        if inv.chern_normal else None,
    }
    lines = [
        f"theta locus n={inv.n}, degree k={inv.k}",
        f"  betti     {' '.join(str(b) for b in inv.betti)}",
        f"  euler     {inv.euler}",
        f"  signature {payload['signature'] if payload['signature'] is not None else '-'}",
    ]
    if inv.chern_tangent:
        lines.append(f"  tangent chern products  {payload['chern_tangent_products']}")
        lines.append(f"  normal chern (monomial) {payload['chern_normal_monomial']}")
    _emit(args, "invariants", {"n": args.n, "k": args.k}, payload, lines)


def _load_chern_vector(path: str) -> ChernVector:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read vector file {path}: {exc}") from None
    try:
        values = {parse_partition(k): Fraction(str(v)) for k, v in data["values"].items()}
        return ChernVector(int(data["weight"]), data["frame"], data["basis"], values)
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"malformed Chern vector file: {exc}") from None


def cmd_congruences(args):
    sys_n = genera.congruence_system(args.n)
    if args.check:
        vec = _load_chern_vector(args.check)
        ok, failing = genera.check_chern_vector(vec, sys_n)
        payload = {
            "weight": args.n,
            "pass": ok,
            "failing": [{"mu": str(mu), "value": _frac(v)} for mu, v in failing],
        }
        lines = [f"vector verdict at weight {args.n}: {'pass' if ok else 'FAIL'}"]
        lines += [f"  functional mu=({f['mu']}) evaluates to {f['value']}" for f in payload["failing"]]
        _emit(args, "congruences", {"n": args.n, "check": args.check}, payload, lines)
        return
    payload = {
        "weight": sys_n.weight,
        "functionals": [
            {"mu": str(mu), "coeffs": {str(lam): _frac(c) for lam, c in sorted(
                row.items(), key=lambda kv: (kv[0].weight, kv[0]), reverse=True)}}
            for mu, row in sys_n.functionals
        ],
        "elementary_divisors": list(sys_n.elementary_divisors),
    }
    lines = [f"congruence system at weight {args.n}"]
    lines.append(f"  elementary divisors: {list(sys_n.elementary_divisors)}")
    for f in payload["functionals"]:
        lines.append(f"  mu=({f['mu']}): {f['coeffs']}")
    lines.append(f"  hnf basis rows: {[list(r) for r in sys_n.basis_hnf]}")
    _emit(args, "congruences", {"n": args.n}, payload, lines)


def cmd_quantize(args):
    poly = parse_poly(args.expr)
    q = ln.quantize(poly)
    terms = [
        {"t": str(mu), "tp": str(nu), "coeff": _frac(c)}
        for (mu, nu), c in q.items()
    ]
    payload = {"expr": format_poly(poly), "tensor": terms}
    lines = [f"quantisation of {payload['expr']}", f"  = {q}"]
    if args.roundtrip:
        back = ln.dequantize(q)
        ok = back == poly
        payload["roundtrip"] = "ok" if ok else f"mismatch: {format_poly(back)}"
        lines.append(f"  dequantise-roundtrip: {payload['roundtrip']}")
        if not ok:
            _emit(args, "quantize", {"expr": args.expr}, payload, lines)
            raise CliError("quantisation roundtrip failed")
    _emit(args, "quantize", {"expr": args.expr, "roundtrip": bool(args.roundtrip)},
          payload, lines)


def cmd_fgl_check(args):
    order = args.order
    res = fgl_axiom_residuals(cob.beta(max(order, 2)), order=order,
                              assoc_order=min(order, 6))
    payload = {name: ("0" if ok else "nonzero") for name, ok in res.items()}
    payload["order"] = order
    payload["pass"] = all(res.values())
    lines = [f"formal group law axioms to total order {order}"]
    for name, ok in res.items():
        lines.append(f"  {name:<16} residual {'0' if ok else 'NONZERO'}")
    _emit(args, "fgl check", {"order": order}, payload, lines)
    if not payload["pass"]:
        raise CliError("formal group law residual nonzero")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise CliError(f"cannot parse complex number {text!r}") from None


def cmd_weierstrass_verify(args):
    if args.lemniscatic or (args.omega1 is None and args.omega2 is None):
        omega1, omega2 = complex(1.0), complex(0.0, 1.0)
    else:
        if args.omega1 is None or args.omega2 is None:
            raise CliError("provide both --omega1 and --omega2, or use --lemniscatic")
        omega1 = _parse_complex(args.omega1)
        omega2 = _parse_complex(args.omega2)
    # --tol overrides the per-check thresholds; the lattice construction
    # gate stays at its default (or looser) so absurdly tight tolerances
    # surface as check failures (exit 3), not parameter errors.
    build_tol = max(args.tol, 1e-10) if args.tol is not None else 1e-10
    try:
        lattice = ws.lattice_init(omega1, omega2, tol=build_tol)
    except (ws.LatticeError, ws.ConvergenceError) as exc:
        raise CliError(str(exc)) from None
    report = ws.verify_lattice(lattice)
    if args.tol is not None:
        for entry in report.values():
            entry["tol"] = args.tol
            entry["pass"] = entry["residual"] <= args.tol
    payload = {
        "omega1": repr(omega1),
        "omega2": repr(omega2),
        "checks": {
            name: {"residual": entry["residual"], "tol": entry["tol"], "pass": entry["pass"]}
            for name, entry in report.items()
        },
    }
    all_ok = all(entry["pass"] for entry in report.values())
    payload["pass"] = all_ok
    lines = [f"weierstrass verification for omega1={omega1}, omega2={omega2}"]
    for name, entry in report.items():
        status = "ok " if entry["pass"] else "FAIL"
        lines.append(f"  {status} {name:<26} residual {entry['residual']:.3e}  (tol {entry['tol']:.1e})")
    _emit(args, "weierstrass verify",
          {"omega1": repr(omega1), "omega2": repr(omega2), "tol": args.tol}, payload, lines)
    if not all_ok:
        sys.exit(3)


def cmd_selftest(args):
    results = run_all()
    payload = {"results": [{"criterion": name, "pass": ok, "detail": detail}
                           for name, ok, detail in results]}
    lines = ["acceptance criteria"]
    for name, ok, detail in results:
        lines.append(f"  {'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if not ok else ""))
    _emit(args, "selftest", {}, payload, lines)
    if not all(ok for _, ok, _ in results):
        sys.exit(1)


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetacob",
        description="Exact theta-divisor calculus for complex cobordism",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_weight(p):
        p.add_argument("--max-weight", type=int, default=None,
                       help="truncation weight (default: THETA_MAX_WEIGHT or 12)")

    p = sub.add_parser("beta", help="universal exponential series table")
    add_weight(p)
    p.set_defaults(handler=cmd_beta)

    p = sub.add_parser("logarithm", help="universal logarithm and projective classes")
    add_weight(p)
    p.set_defaults(handler=cmd_logarithm)

    p = sub.add_parser("classes", help="dual class family tables")
    p.add_argument("family", choices=("vn", "wn", "cpn"))
    add_weight(p)
    p.set_defaults(handler=cmd_classes)

    p = sub.add_parser("ln", help="Landweber-Novikov operations")
    lnsub = p.add_subparsers(dest="ln_command", required=True)
    pa = lnsub.add_parser("apply", help="apply S_lambda to a polynomial")
    pa.add_argument("--partition", required=True, help='e.g. "2,1"')
    pa.add_argument("--expr", required=True, help='e.g. "t3 - 4*t1*t2"')
    pa.set_defaults(handler=cmd_ln_apply)

    p = sub.add_parser("theta", help="theta intersection classes")
    thsub = p.add_subparsers(dest="theta_command", required=True)
    pi = thsub.add_parser("intersect", help="class of n-th divisor cut by k translates")
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--k", type=int, required=True)
    pi.set_defaults(handler=cmd_theta_intersect)

    p = sub.add_parser("genus", help="evaluate a Hirzebruch genus")
    p.add_argument("--name", required=True,
                   help="todd | l | euler | file:Q.json (custom characteristic series)")
    p.add_argument("--of", required=True, help='"theta:N" or \'poly:"t2 + t1^2"\'')
    p.set_defaults(handler=cmd_genus)

    p = sub.add_parser("invariants", help="Betti/Euler/signature/Chern tables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("congruences", help="Chern-number congruence systems")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", help="JSON Chern-vector file to test")
    p.set_defaults(handler=cmd_congruences)

    p = sub.add_parser("quantize", help="quantisation-map image of a polynomial")
    p.add_argument("--expr", required=True)
    p.add_argument("--roundtrip", action="store_true",
                   help="assert dequantise(quantise(x)) == x")
    p.set_defaults(handler=cmd_quantize)

    p = sub.add_parser("fgl", help="formal group law")
    fsub = p.add_subparsers(dest="fgl_command", required=True)
    pc = fsub.add_parser("check", help="axiom residuals (must vanish exactly)")
    pc.add_argument("--order", type=int, default=8)
    pc.set_defaults(handler=cmd_fgl_check)

    p = sub.add_parser("weierstrass", help="floating-point elliptic checks")
    wsub = p.add_subparsers(dest="weierstrass_command", required=True)
    pv = wsub.add_parser("verify", help="residual report for one lattice")
    pv.add_argument("--lemniscatic", action="store_true")
    pv.add_argument("--omega1", help='half-period, e.g. "1.3+0.2i"')
    pv.add_argument("--omega2")
    pv.add_argument("--tol", type=float, default=None,
                    help="uniform tolerance override for all checks")
    pv.set_defaults(handler=cmd_weierstrass_verify)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(handler=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "max_weight") and args.max_weight is None:
            args.max_weight = _default_weight()
        args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExprSyntaxError, MissingGeneratorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
