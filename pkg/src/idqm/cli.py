"""Command-line front end: computation commands and verification suites.

Output is machine readable: JSON documents carry a ``"schema": 1`` field,
CSV files use ``.`` decimals, ``,`` separators, complex numbers as two
columns and a single ``#``-prefixed metadata header line.  Identical
invocations produce byte-identical files.

Exit codes: 0 success / all checks passed, 1 numerical failure (structured
JSON error on stderr) or failed checks, 2 usage error.
"""

import argparse
import cmath
import json
import math
import sys

import numpy as np

from . import qdilog, qseries, reflectionless, scattering, solvable, verification
from ._backend import backend_name
from .errors import IdqmError

SCHEMA = 1


def _complex_arg(s: str) -> complex:
    """Parse 'RE,IM' or a plain real number."""
    parts = s.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {s!r}")


def _parse_grid(s: str, count: bool):
    """'A:B:N' (N points) if count else 'A:B:STEP'."""
    parts = s.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected A:B:{'N' if count else 'STEP'}, got {s!r}")
    a, b = float(parts[0]), float(parts[1])
    if count:
        n = int(parts[2])
        if n < 1:
            raise argparse.ArgumentTypeError("grid count must be >= 1")
        return np.linspace(a, b, n)
    step = float(parts[2])
    if step <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(n)


def _load_seeds(path: str, gamma: float) -> reflectionless.SeedSystem:
    """Seeds file: JSON array of {"k": float, "c_tilde": float}; '-' = stdin."""
    if path == "-":
        raw = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    data = json.loads(raw)
    if not isinstance(data, list):
        raise ValueError("seeds file must be a JSON array")
    ks = [float(d["k"]) for d in data]
    cts = [float(d["c_tilde"]) for d in data]
    return reflectionless.seeds_build(gamma, len(ks), ks, cts)


def _fmt(x: float) -> str:
    return repr(float(x))


def _emit_table(args, meta: str, header, rows):
    """Write CSV (meta line + header + rows) or the JSON equivalent."""
    out = sys.stdout if args.output is None else open(args.output, "w", encoding="utf-8")
    try:
        if args.out == "csv":
            out.write(f"# {meta}\n")
            out.write(",".join(header) + "\n")
            for row in rows:
                out.write(",".join(_fmt(v) for v in row) + "\n")
        else:
            doc = {
                "schema": SCHEMA,
                "meta": meta,
                "columns": list(header),
                "rows": [[float(v) for v in row] for row in rows],
            }
            json.dump(doc, out, indent=1)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _json_out(doc: dict):
    doc = {"schema": SCHEMA, **doc}
    json.dump(doc, sys.stdout, indent=1, default=_json_default)
    sys.stdout.write("\n")


def _json_default(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------


def cmd_qdilog_eval(args) -> int:
    p = qdilog.QdilogParam(args.gamma)
    v = qdilog.eval(p, args.z, tol=args.tol)
    _json_out(
        {
            "gamma": args.gamma,
            "z": v.z,
            "value": v.value,
            "method": v.method,
            "est_error": v.est_error,
        }
    )
    return 0


def cmd_qseries_phi21(args) -> int:
    base = qseries.Base(args.gamma, args.epsilon)
    params = qseries.Phi21Params.from_values(args.a, args.b, args.c)
    res = qseries.phi21(base, params, args.z, tol=args.tol)
    _json_out(
        {
            "gamma": args.gamma,
            "epsilon": args.epsilon,
            "a": args.a,
            "b": args.b,
            "c": args.c,
            "z": args.z,
            "value": res.value,
            "terms_used": res.terms_used,
            "converged": res.converged,
            "tail_bound": res.tail_bound,
        }
    )
    return 0 if res.converged else 1


def cmd_refless_table(args) -> int:
    seed = _load_seeds(args.seeds, args.gamma)
    xs = _parse_grid(args.x_range, count=False)
    header = ["x", "re_V", "im_V", "calU"]
    for j in range(1, seed.N + 1):
        header += [f"re_phi{j}", f"im_phi{j}"]
    rows = []
    for x in xs:
        V = reflectionless.potential_V(seed, float(x)) if seed.N else 1.0 + 0.0j
        U = reflectionless.potential_calU(seed, float(x))
        row = [x, V.real, V.imag, U.real]
        for j in range(1, seed.N + 1):
            ph = reflectionless.bound_state(seed, j, float(x))
            row += [ph.real, ph.imag]
        rows.append(row)
    meta = (
        f"refless table gamma={_fmt(args.gamma)} N={seed.N} "
        f"k={[float(v) for v in seed.k]} c_tilde={[float(v) for v in seed.c_tilde]}"
    )
    _emit_table(args, meta, header, rows)
    return 0


def cmd_solvable_eigen(args) -> int:
    c = solvable.Coupling(args.gamma, args.h)
    _, fn = solvable.eigenpair(c, args.n)
    xs = _parse_grid(args.x_range, count=False)
    rows = []
    for x in xs:
        val = fn(float(x))
        res = solvable.eigen_residual(c, args.n, float(x))
        rows.append([x, val.real, val.imag, res])
    meta = f"solvable eigen gamma={_fmt(args.gamma)} h={_fmt(args.h)} n={args.n}"
    _emit_table(args, meta, ["x", "re_phi", "im_phi", "residual"], rows)
    return 0


def cmd_solvable_identify(args) -> int:
    rep = solvable.reflectionless_identification(args.gamma, args.N)
    worst = max(
        rep["max_potential_deviation"],
        rep["max_polynomial_deviation"],
        rep["max_eigenvalue_deviation"],
    )
    rep["passed"] = bool(worst < args.tol)
    _json_out(rep)
    return 0 if rep["passed"] else 1


def cmd_scatter_amplitudes(args) -> int:
    c = solvable.Coupling(args.gamma, args.h)
    ks = _parse_grid(args.k_grid, count=True)
    rows = []
    for k in ks:
        a = scattering.amplitudes(c, float(k))
        rows.append([k, a.t.real, a.t.imag, a.r.real, a.r.imag, a.unitarity_defect])
    meta = f"scatter amplitudes gamma={_fmt(args.gamma)} h={_fmt(args.h)}"
    _emit_table(args, meta, ["k", "re_t", "im_t", "re_r", "im_r", "defect"], rows)
    return 0


def _suite_terminating(tol, rng):
    cases = []
    g = 0.4
    for n in range(7):
        ci = scattering.ConnectionInput(
            g,
            1j * n * g,
            complex(rng.uniform(-0.5, 0.3), rng.uniform(-0.5, 0.5)),
            complex(rng.uniform(-0.3, 0.7), rng.uniform(-0.5, 0.5)),
            complex(rng.uniform(-1.0, 0.5), rng.uniform(-0.5, 0.5)),
        )
        rep = scattering.connection_verify(ci, tol)
        cases.append(
            {
                "case": f"terminating n={n}",
                "params": {"lam": ci.lam, "mu": ci.mu, "nu": ci.nu, "z": ci.z},
                "abs_error": rep["abs_error"],
                "lhs_terms": rep["lhs_terms"],
                "passed": rep["passed"],
            }
        )
    return cases


def _suite_qeuler(tol, rng):
    cases = []
    g = 0.4
    for i in range(6):
        ci = scattering.ConnectionInput(
            g,
            complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.5, 0.5)),
            complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.5, 0.5)),
            complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.5, 0.5)),
            complex(rng.uniform(-1.5, -1.0), rng.uniform(-0.5, 0.5)),
        )
        lhs, rhs = scattering.qeuler_transform(ci)
        err = abs(lhs - rhs) / max(abs(lhs), 1.0)
        cases.append(
            {
                "case": f"qeuler {i}",
                "params": {"lam": ci.lam, "mu": ci.mu, "nu": ci.nu, "z": ci.z},
                "abs_error": err,
                "passed": bool(err < tol),
            }
        )
    return cases


def _suite_double(tol, rng):
    cases = []
    g = 0.4
    for i in range(6):
        ci = scattering.ConnectionInput(
            g,
            complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)),
            complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)),
            complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)),
            complex(rng.uniform(-1.5, 1.0), rng.uniform(-0.6, 0.6)),
        )
        s1, s2 = scattering.double_application_check(ci)
        err = max(abs(s1 - 1.0), abs(s2))
        cases.append(
            {
                "case": f"double {i}",
                "params": {"lam": ci.lam, "mu": ci.mu, "nu": ci.nu, "z": ci.z},
                "abs_error": err,
                "passed": bool(err < tol),
            }
        )
    return cases


def _suite_random(tol, rng):
    """Random parameters: each RHS branch must solve the 2phi1 q-difference
    equation; the empirical convergence domain is recorded per case."""
    cases = []
    g = 0.4
    base = qseries.Base(g)
    for i in range(5):
        lam = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.5, 0.5))
        mu = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.5, 0.5))
        nu = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.5, 0.5))
        z = complex(rng.uniform(2.5, 3.0), rng.uniform(-0.5, 0.5))
        p = qseries.Phi21Params(lam, mu, nu)
        err = 0.0
        domains = []
        for branch in (1, 2):

            def f(w, br=branch):
                ci = scattering.ConnectionInput(g, lam, mu, nu, cmath.log(w))
                coef = scattering.connection_coef(ci, br)
                return coef * scattering._branch_series(ci, br, 1e-10).value

            ci0 = scattering.ConnectionInput(g, lam, mu, nu, z)
            sr = scattering._branch_series(ci0, branch, 1e-10)
            domains.append(
                {"branch": branch, "terms": sr.terms_used, "converged": sr.converged}
            )
            res = qseries.q_difference_residual(base, p, f, cmath.exp(z))
            err = max(err, abs(res) / abs(f(cmath.exp(z))))
        cases.append(
            {
                "case": f"random {i}",
                "params": {"lam": lam, "mu": mu, "nu": nu, "z": z},
                "abs_error": err,
                "convergence": domains,
                "passed": bool(err < tol),
            }
        )
    return cases


_SUITES = {
    "terminating": _suite_terminating,
    "qeuler": _suite_qeuler,
    "double": _suite_double,
    "random": _suite_random,
}


def cmd_scatter_verify(args) -> int:
    rng = np.random.default_rng(2024)
    cases = _SUITES[args.suite](args.tol, rng)
    ok = all(c["passed"] for c in cases)
    _json_out(
        {
            "suite": args.suite,
            "tol": args.tol,
            "cases": cases,
            "passed": ok,
        }
    )
    return 0 if ok else 1


def cmd_verify_all(args) -> int:
    print(f"backend: {backend_name()}")
    results = verification.run_all(verbose=True, tol_conj=args.tol)
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed")
    return 0 if n_pass == len(results) else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_output_flags(sp):
    sp.add_argument("--out", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default=None, help="file path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="idqm",
        description="Shift-operator quantum mechanics: dilogarithms, q-series, "
        "reflectionless/solvable potentials, scattering amplitudes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qdilog", help="quantum dilogarithm")
    s2 = p.add_subparsers(dest="sub", required=True)
    e = s2.add_parser("eval", help="evaluate Phi_gamma(z)")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--z", type=_complex_arg, required=True, metavar="RE,IM")
    e.add_argument("--tol", type=float, default=1e-10)
    e.set_defaults(fn=cmd_qdilog_eval)

    p = sub.add_parser("qseries", help="basic hypergeometric series")
    s2 = p.add_subparsers(dest="sub", required=True)
    e = s2.add_parser("phi21", help="evaluate 2phi1(a,b;c|q;z)")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--epsilon", type=float, default=0.0)
    for name in ("a", "b", "c", "z"):
        e.add_argument(f"--{name}", type=_complex_arg, required=True, metavar="RE,IM")
    e.add_argument("--tol", type=float, default=1e-10)
    e.set_defaults(fn=cmd_qseries_phi21)

    p = sub.add_parser("refless", help="reflectionless potentials")
    s2 = p.add_subparsers(dest="sub", required=True)
    e = s2.add_parser("table", help="x, V, calU, bound states on a grid")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--seeds", required=True, help="JSON seeds file, '-' for stdin")
    e.add_argument("--x-range", required=True, metavar="A:B:STEP")
    _add_output_flags(e)
    e.set_defaults(fn=cmd_refless_table)

    p = sub.add_parser("solvable", help="generic-coupling solvable family")
    s2 = p.add_subparsers(dest="sub", required=True)
    e = s2.add_parser("eigen", help="eigenstate values and residuals on a grid")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--h", type=float, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--x-range", required=True, metavar="A:B:STEP")
    _add_output_flags(e)
    e.set_defaults(fn=cmd_solvable_eigen)
    e = s2.add_parser("identify", help="compare integer h = N with N solitons")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--tol", type=float, default=1e-8)
    e.set_defaults(fn=cmd_solvable_identify)

    p = sub.add_parser("scatter", help="scattering amplitudes and evidence suites")
    s2 = p.add_subparsers(dest="sub", required=True)
    e = s2.add_parser("amplitudes", help="t, r, unitarity defect on a k-grid")
    e.add_argument("--gamma", type=float, required=True)
    e.add_argument("--h", type=float, required=True)
    e.add_argument("--k-grid", required=True, metavar="A:B:N")
    _add_output_flags(e)
    e.set_defaults(fn=cmd_scatter_amplitudes)
    e = s2.add_parser("verify-conjecture", help="connection-formula evidence")
    e.add_argument("--suite", choices=sorted(_SUITES), required=True)
    e.add_argument("--tol", type=float, default=1e-6)
    e.set_defaults(fn=cmd_scatter_verify)

    p = sub.add_parser("verify-all", help="run the full verification suite")
    p.add_argument("--tol", type=float, default=1e-6, help="conjecture-check tolerance")
    p.set_defaults(fn=cmd_verify_all)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (IdqmError, ValueError, OSError) as exc:
        json.dump(
            {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}},
            sys.stderr,
        )
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
