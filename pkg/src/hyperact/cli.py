"""Command-line front end.

Every command builds one JSON-ready dict; ``--format text`` renders that
same dict as plain tables.  Exit codes: 0 success, 1 internal error,
2 invalid input, 3 undecided verdict under ``--require-decision``.
"""

import argparse
import os
import sys
import warnings

from .errors import AlgebraValidationError, HyperactError
from .exactlin import ZERO, format_scalar, parse_scalar, unit_vec
from .geometry import act, action_formula, equation, orbit_dimension, orbit_table
from .hpair import degree, is_nondegenerate, reduce
from .limits import curve_of, generic_limit, limit_exponent, limit_probe, one_param_limit, projective_limit
from .models import CATALOG, FAMILIES, RANGES, build, parse_model_id
from .opcheck import DEFAULT_HEIGHT, DEFAULT_SAMPLES, DEFAULT_SEED, UNKNOWN, decide, replay
from .poly import ProjectivePoint, essential_variable_count
from .serialize import algebra_to_json, dumps, load_pair, pair_to_json

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_UNDECIDED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _vec(v):
    return [format_scalar(c) for c in v]


def _scalars(text):
    try:
        return tuple(parse_scalar(c) for c in text.split(","))
    except HyperactError as exc:
        raise InputError(str(exc)) from None


def load_input(path):
    """A pair from a JSON file, or from a model id when no such file exists."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return load_pair(fh.read(), path)
    try:
        model = parse_model_id(path)
    except HyperactError:
        raise InputError(f"{path}: no such file or model id") from None
    p = build(model)
    if not hasattr(p, "U"):
        raise InputError(f"{path}: names an algebra, not a pair")
    return p


# --- report pieces ------------------------------------------------------------


def pair_summary(p):
    return {
        "dim": p.dim,
        "basis_names": list(p.algebra.basis_names),
        "mode": p.mode,
        "U_basis": [_vec(v) for v in p.basis],
    }


def limit_rows(p):
    rows = []
    for v in p.basis:
        pt = one_param_limit(p, v)
        rows.append({
            "v": _vec(v),
            "k": limit_exponent(p, v),
            "limit": str(pt),
            "orbit_dimension": orbit_dimension(p, pt.coords),
        })
    return rows


def tree_json(node):
    # leading is v^k for v = sum s_j basis_j, in the stratum's own parameters
    return {
        "basis": [_vec(b) for b in node.basis],
        "conditions": list(node.conditions),
        "k": node.k,
        "leading": [str(c) for c in node.leading],
        "point": str(node.point) if node.point else None,
        "unresolved": list(node.unresolved),
        "children": [tree_json(c) for c in node.children],
    }


def search_options(args):
    return dict(samples=args.samples, height=args.height, seed=args.seed)


def verdict_json(p, args):
    v = decide(p, args.enable_quadratic_factoring, **search_options(args))
    out = v.to_json()
    out["replay"] = replay(p, v, quadratic_factoring=args.enable_quadratic_factoring, **search_options(args))
    return out


def analyze(p, args):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        d = degree(p) if p.mode == "hypersurface" else None
    report = {
        "pair": pair_summary(p),
        "degree": d,
        "warnings": [str(w.message) for w in caught],
        "action_formula": action_formula(p).strings(),
        "limits": limit_rows(p),
        "limit_tree": tree_json(generic_limit(p, args.enable_quadratic_factoring)),
    }
    if p.mode != "hypersurface":
        report["verdict"] = verdict_json(p, args)
        return report
    report["nondegenerate"] = is_nondegenerate(p)
    trace = reduce(p)
    report["reduction"] = {
        "steps": [{"ideal": [_vec(r) for r in s.ideal.basis]} for s in trace.steps],
        "core_dim": trace.core.dim,
    }
    if d == 1:
        report["equation"] = None
        report["essential_variables"] = None
        report["verdict"] = None
        return report
    F = equation(p)
    report["equation"] = str(F)
    report["essential_variables"] = essential_variable_count(F)
    report["verdict"] = verdict_json(p, args)
    return report


def limit_command(p, v, shift=None, probe=None):
    a = None
    if shift is not None:
        a = act(p, shift, unit_vec(p.dim, 0)).coords
    if a is None:
        point = one_param_limit(p, v)
    else:
        point = projective_limit(curve_of(p, v, a))
    out = {"v": _vec(v), "k": limit_exponent(p, v), "limit": str(point)}
    if a is not None:
        out["base_point"] = str(ProjectivePoint(a))
    if probe:
        ts = _scalars(probe)
        out["probe"] = [{"t": format_scalar(t), "point": str(q)} for t, q in zip(ts, limit_probe(p, v, ts, a))]
    return out


def catalog_verify(args):
    rows, ok = [], True
    for entry in CATALOG:
        p = entry.build()
        v = decide(p, args.enable_quadratic_factoring, **search_options(args))
        failures = replay(p, v, quadratic_factoring=args.enable_quadratic_factoring, **search_options(args))
        kind = v.certificate.kind if v.certificate else None
        match = v.outcome == entry.expected and kind == entry.certificate and not failures
        ok = ok and match
        rows.append({
            "pair": entry.key,
            "outcome": v.outcome,
            "certificate": kind,
            "expected": entry.expected,
            "paper_claim": entry.paper_claim or entry.expected,
            "replay": "ok" if not failures else failures,
            "match": match,
        })
    return {"pairs": rows, "all_match": ok}, ok


# --- text rendering -----------------------------------------------------------


def _cell(x):
    if isinstance(x, list):
        return "[" + ",".join(str(c) for c in x) + "]"
    return str(x)


def _table(rows, columns):
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def render_text(command, data):
    if command == "catalog-verify":
        return _table(data["pairs"], ["pair", "outcome", "certificate", "paper_claim", "replay", "match"])
    if command == "catalog-list":
        return _table(data["families"], ["name", "params", "range"])
    if command == "orbits":
        return _table(data["orbits"], ["element", "dimension", "boundary"])
    if command == "analyze":
        lines = [
            f"dim A            {data['pair']['dim']}  ({data['pair']['mode']})",
            f"degree           {data['degree']}",
        ]
        for w in data["warnings"]:
            lines.append(f"warning          {w}")
        if "nondegenerate" in data:
            lines.append(f"non-degenerate   {data['nondegenerate']}")
            lines.append(f"reduction steps  {len(data['reduction']['steps'])}")
            lines.append(f"equation         {data['equation']}")
            lines.append(f"essential vars   {data['essential_variables']}")
        lines.append("action           [" + " : ".join(data["action_formula"]) + "]")
        lines.append(_table(data["limits"], ["v", "k", "limit", "orbit_dimension"]))
        if data["verdict"]:
            lines.append(render_text("decide", data["verdict"]))
        return "\n".join(lines)
    if command == "decide":
        cert = data["certificate"]
        lines = [f"verdict          {data['outcome']}"]
        if cert:
            lines.append(f"certificate      {cert['kind']}")
            if "witness" in cert:
                lines.append(f"witness          [{','.join(cert['witness'])}]")
        for d in data["diagnostics"]:
            lines.append(f"note             {d}")
        lines.append(f"replay           {'ok' if not data['replay'] else '; '.join(data['replay'])}")
        return "\n".join(lines)
    if command == "act":
        return _cell(data["result"])
    if command == "limit":
        lines = [f"k = {data['k']}", f"limit {data['limit']}"]
        for row in data.get("probe", []):
            lines.append(f"t = {row['t']}: {row['point']}")
        return "\n".join(lines)
    if isinstance(data, dict) and len(data) == 1:
        (value,) = data.values()
        if isinstance(value, list):
            return "\n".join(str(x) for x in value)
        return str(value)
    return dumps(data).rstrip("\n")


# --- entry point --------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (same as --format json)")
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--height", type=int, default=DEFAULT_HEIGHT)
    common.add_argument("--require-decision", action="store_true")
    common.add_argument("--enable-quadratic-factoring", action="store_true")

    parser = argparse.ArgumentParser(prog="hyperact", description="Additive actions on projective hypersurfaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "equation", "orbits", "decide"):
        cmd = sub.add_parser(name, parents=[common])
        cmd.add_argument("inputs", nargs="+", help="pair JSON file or model id")
    lim = sub.add_parser("limit", parents=[common])
    lim.add_argument("input")
    lim.add_argument("--v", required=True, help="coordinates in the stored basis of U, comma separated")
    lim.add_argument("--shift", help="apply exp(u) to the base point first (coordinates in the basis of U)")
    lim.add_argument("--probe", help="comma separated parameter values t")
    ac = sub.add_parser("act", parents=[common])
    ac.add_argument("input")
    ac.add_argument("--u", required=True, help="coordinates of u in A")
    ac.add_argument("--a", required=True, help="coordinates of a in A")
    cat = sub.add_parser("catalog", parents=[common])
    cat.add_argument("action", choices=("list", "build", "verify"))
    cat.add_argument("id", nargs="?")
    return parser


def _in_u_basis(p, coeffs):
    if len(coeffs) != len(p.basis):
        raise InputError(f"expected {len(p.basis)} coordinates, one per basis vector of U")
    out = [ZERO] * p.dim
    for c, b in zip(coeffs, p.basis):
        out = [x + c * y for x, y in zip(out, b)]
    return tuple(out)


def run(argv, out):
    args = build_parser().parse_args(argv)
    fmt = "json" if args.json else (args.format or "text")
    code = EXIT_OK
    results = []
    if args.command == "catalog":
        if args.action == "list":
            data = {"families": [
                {"name": n, "params": ",".join(FAMILIES[n]) or "-", "range": RANGES[n]} for n in FAMILIES
            ]}
            results.append(("catalog-list", data))
        elif args.action == "build":
            if not args.id:
                raise InputError("catalog build needs a model id")
            obj = build(parse_model_id(args.id))
            data = pair_to_json(obj) if hasattr(obj, "U") else algebra_to_json(obj)
            out.write(dumps(data))
            return EXIT_OK
        else:
            data, ok = catalog_verify(args)
            results.append(("catalog-verify", data))
            code = EXIT_OK if ok else EXIT_INTERNAL
    elif args.command in ("limit", "act"):
        p = load_input(args.input)
        if args.command == "limit":
            v = _in_u_basis(p, _scalars(args.v))
            shift = _in_u_basis(p, _scalars(args.shift)) if args.shift else None
            results.append(("limit", limit_command(p, v, shift, args.probe)))
        else:
            r = act(p, _scalars(args.u), _scalars(args.a))
            results.append(("act", {"result": _vec(r.coords)}))
    else:
        for path in args.inputs:
            p = load_input(path)
            if args.command == "analyze":
                data = analyze(p, args)
                verdict = data["verdict"]
            elif args.command == "equation":
                data = {"equation": str(equation(p))}
                verdict = None
            elif args.command == "orbits":
                rows = orbit_table(p)
                data = {"orbits": [
                    {"element": "[" + ",".join(_vec(r["element"])) + "]", "dimension": r["dimension"],
                     "boundary": r["boundary"]} for r in rows
                ]}
                verdict = None
            else:
                data = verdict_json(p, args)
                verdict = data
            if verdict and verdict["outcome"] == UNKNOWN and args.require_decision:
                code = EXIT_UNDECIDED
            results.append((args.command, data))
    if fmt == "json":
        payload = results[0][1] if len(results) == 1 else [d for _, d in results]
        out.write(dumps(payload))
    else:
        for command, data in results:
            out.write(render_text(command, data) + "\n")
    return code


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return run(sys.argv[1:] if argv is None else argv, out)
    except AlgebraValidationError as exc:
        err.write("invalid algebra:\n")
        for v in exc.violations:
            err.write(f"  {v}\n")
        return EXIT_INVALID
    except (HyperactError, InputError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
