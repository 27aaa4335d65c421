"""Command-line surface: dataset export and self-verification.

Every subcommand emits CSV or JSON records.  CSV uses ',' as delimiter,
'.' as decimal separator, and always carries a header row; floats are
written in shortest round-trip form, so CSV and JSON agree digit for
digit.  JSON output is a single object with a "records" array and a
"meta" object (tool version, command line, seed).  Exact integers and
rationals (degeneracy counts, cumulants) are serialized as strings:
they overflow common JSON number readers.

Exit codes: 0 success, 2 argument/domain errors, 3 resource-guard
violations (operations that would enumerate more than 10! sectors).
Commands are deterministic given their full flag set, seeds included.
Relative --out paths resolve under $ANYONFLOW_OUTDIR when it is set.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, interferometry, qsl, sectors, statfactor, wavelab

OUTDIR_ENV = "ANYONFLOW_OUTDIR"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _parse_grid(text: str) -> np.ndarray:
    """Parse 'start:stop:count' into an inclusive linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:count, got {text!r}")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1:
        raise ValueError(f"grid count must be >= 1, got {count}")
    return np.linspace(start, stop, count)


def _parse_int_range(text: str) -> range:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"range must be start:stop, got {text!r}")
    start, stop = int(parts[0]), int(parts[1])
    if stop < start:
        raise ValueError(f"empty range {text!r}")
    return range(start, stop + 1)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def _json_value(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def _resolve_out(path_arg: str | None) -> Path | None:
    if path_arg is None or path_arg == "-":
        return None
    path = Path(path_arg)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_records(records, columns, args, argv, extra_meta=None):
    meta = {
        "tool": "anyonflow",
        "version": __version__,
        "command": " ".join(argv),
        "seed": getattr(args, "seed", None),
    }
    if extra_meta:
        meta.update(extra_meta)
    fmt = getattr(args, "format", "csv")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_cell(rec[c]) for c in columns])
        text = buf.getvalue()
    else:
        obj = {
            "records": [{c: _json_value(rec[c]) for c in columns} for rec in records],
            "meta": meta,
        }
        text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    out = _resolve_out(getattr(args, "out", None))
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_omega(args, argv) -> int:
    n = args.n
    deltas = [args.delta] if args.delta is not None else list(_parse_grid(args.grid))
    if args.method == "closed":
        values = list(statfactor.omega_closed_form_grid(n, deltas))
    elif args.method == "recursion":
        values = [statfactor.omega_recursion(n, d) for d in deltas]
    elif args.method == "degeneracy":
        row = sectors.degeneracy_recursive(n)
        values = [statfactor.omega_degeneracy_sum(n, d, row) for d in deltas]
    else:
        values = [sectors.omega_bruteforce(n, d) for d in deltas]
    records = [{"delta": float(d), "omega": float(v), "method": args.method}
               for d, v in zip(deltas, values)]
    _write_records(records, ["delta", "omega", "method"], args, argv)
    return EXIT_OK


def _cmd_zeros(args, argv) -> int:
    zeros = statfactor.zero_set(args.n)
    first = statfactor.first_zero(args.n) if zeros else None
    records = [{"delta": z, "is_first": z == first} for z in zeros]
    _write_records(records, ["delta", "is_first"], args, argv)
    return EXIT_OK


def _cmd_qsl(args, argv) -> int:
    records = []
    for n in _parse_int_range(args.n_range):
        rep = qsl.qsl_report(n)
        records.append({
            "n": n,
            "kappa_ml": rep.kappa_ml,
            "kappa_mt": rep.kappa_mt,
            "kappa_perp": rep.kappa_perp,
            "variance": float(rep.variance),
            "fisher_info": float(rep.fisher_info),
        })
    _write_records(records, ["n", "kappa_ml", "kappa_mt", "kappa_perp",
                             "variance", "fisher_info"], args, argv)
    return EXIT_OK


def _cmd_cumulants(args, argv) -> int:
    records = []
    for order in range(1, args.max_order + 1):
        value = qsl.cumulant(args.n, order).value
        records.append({
            "order": order,
            "cumulant": value,          # exact rational, serialized as string
            "cumulant_float": float(value),
        })
    _write_records(records, ["order", "cumulant", "cumulant_float"], args, argv)
    return EXIT_OK


def _cmd_degeneracy(args, argv) -> int:
    row = sectors.degeneracy_recursive(args.n)
    columns = ["index", "count"]
    records = [{"index": i, "count": str(c)} for i, c in enumerate(row.counts)]
    if args.oracle:
        oracle = sectors.degeneracy_bruteforce(args.n)
        columns += ["count_bruteforce", "match"]
        for rec, c in zip(records, oracle.counts):
            rec["count_bruteforce"] = str(c)
            rec["match"] = rec["count"] == rec["count_bruteforce"]
    _write_records(records, columns, args, argv)
    return EXIT_OK


def _cmd_gauss(args, argv) -> int:
    trust = statfactor.gaussian_trust_interval(args.n, args.t)
    if args.grid is not None:
        grid = _parse_grid(args.grid)
    else:
        grid = np.linspace(-trust.half_width, trust.half_width, 201)
    exact = statfactor.omega_closed_form_grid(args.n, grid)
    records = []
    for d, om in zip(grid, exact):
        ga = statfactor.gaussian_approx(args.n, d)
        rel = abs(om - ga) / abs(om) if om != 0.0 else None
        records.append({
            "delta": float(d),
            "omega_exact": float(om),
            "gaussian": ga,
            "rel_error": rel,
            "in_trust_interval": float(d) in trust,
        })
    _write_records(records, ["delta", "omega_exact", "gaussian", "rel_error",
                             "in_trust_interval"], args, argv,
                   extra_meta={"half_width": trust.half_width,
                               "threshold": trust.threshold})
    return EXIT_OK


def _sigma_row(quantity, estimate, std_error, reference):
    dev = abs(estimate - reference) if reference is not None else None
    if dev is None:
        sigma = None
    elif std_error > 0.0:
        sigma = dev / std_error
    else:
        sigma = 0.0 if dev == 0.0 else None
    return {
        "quantity": quantity,
        "estimate": estimate.real,
        "estimate_imag": estimate.imag,
        "std_error": std_error,
        "reference": reference,
        "sigma_deviation": sigma,
    }


_MC_COLUMNS = ["quantity", "estimate", "estimate_imag", "std_error",
               "reference", "sigma_deviation", "n_samples",
               "acceptance_rate", "warning"]


def _mc_finish(rows, estimates, args, argv, extra_columns=()):
    for row, est in zip(rows, estimates):
        row["n_samples"] = est.n_samples
        row["acceptance_rate"] = est.acceptance_rate
        row["warning"] = est.warning
    _write_records(rows, _MC_COLUMNS + list(extra_columns), args, argv)


def _cmd_mc(args, argv) -> int:
    basis = wavelab.OrbitalBasis(args.basis, args.scale, args.n)
    if args.check == "overlap":
        if args.delta is None:
            raise ValueError("--delta is required for --check overlap")
        est = wavelab.mc_overlap(basis, args.n, args.delta, args.samples,
                                 args.seed, n_chains=args.threads)
        ref = statfactor.omega_closed_form(args.n, args.delta)
        rows = [_sigma_row("omega_mc", est.mean, est.std_error, ref)]
        _mc_finish(rows, [est], args, argv)
        return EXIT_OK
    if args.check == "sectors":
        ests = wavelab.sector_integral_check(basis, args.n, args.samples, args.seed)
        ref = 1.0 / math.factorial(args.n)
        perms = list(sectors.enumerate_sectors(args.n))
        rows = [_sigma_row("sector_" + "".join(map(str, perm)), est.mean,
                           est.std_error, ref)
                for perm, est in zip(perms, ests)]
        _mc_finish(rows, ests, args, argv)
        return EXIT_OK
    # factorization
    if args.delta is None:
        raise ValueError("--delta is required for --check factorization")
    if args.occupation_b is not None:
        occ_b = tuple(int(tok) for tok in args.occupation_b.split(","))
    else:
        occ_b = tuple(range(1, args.n)) + (args.n + 1,)
    result = wavelab.factorization_check(
        basis, occ_b, args.n, args.kappa, args.delta, args.samples, args.seed,
        scale_b=args.scale_b)
    sigma = math.hypot(result.lhs.std_error, result.rhs.std_error)
    rows = [
        _sigma_row("lhs", result.lhs.mean, sigma, result.rhs.mean.real),
        _sigma_row("rhs", result.rhs.mean, sigma, result.lhs.mean.real),
        _sigma_row("overlap", result.overlap.mean, result.overlap.std_error, None),
    ]
    for row in rows:
        row["degenerate"] = result.degenerate
    _mc_finish(rows, [result.lhs, result.rhs, result.overlap], args, argv,
               extra_columns=["degenerate"])
    return EXIT_OK


def _cmd_fringe(args, argv) -> int:
    grid = _parse_grid(args.grid)
    records = []
    for rec in interferometry.fringe_scan(args.n, grid, args.shots, args.seed):
        records.append({
            "delta": rec.delta,
            "p_plus_x": rec.p_plus_x,
            "p_plus_y": rec.p_plus_y,
            "shots": rec.shots,
            "omega_estimate": rec.omega_estimate,
            "std_error": rec.std_error,
            "seed": rec.seed,
        })
    _write_records(records, ["delta", "p_plus_x", "p_plus_y", "shots",
                             "omega_estimate", "std_error", "seed"], args, argv)
    return EXIT_OK


def _cmd_verify(args, argv) -> int:
    results = run_verification(args.n_max)
    width = max(len(name) for name, _, _ in results)
    failed = 0
    for name, ok, detail in results:
        status = "pass" if ok else "FAIL"
        if not ok:
            failed += 1
        print(f"{name:<{width}}  {status}  {detail}")
    print(f"{failed} of {len(results)} checks failed" if failed
          else f"all {len(results)} checks passed")
    out = _resolve_out(args.out)
    if out is not None:
        obj = {
            "records": [{"check": name, "status": "pass" if ok else "fail",
                         "detail": detail} for name, ok, detail in results],
            "meta": {"tool": "anyonflow", "version": __version__,
                     "command": " ".join(argv), "seed": None,
                     "n_max": args.n_max},
        }
        out.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if failed == 0 else 1


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

def run_verification(n_max: int = 8) -> list[tuple[str, bool, str]]:
    """Run the exact-arithmetic invariant suite plus a quick sampling check."""
    if n_max < 2:
        raise ValueError(f"--n-max must be >= 2, got {n_max}")
    n_enum = min(n_max, sectors.SECTOR_ENUM_LIMIT)
    results = []
    grid = np.linspace(0.0, 4.0 * math.pi, 181)

    worst = 0.0
    for n in range(1, n_enum + 1):
        closed = statfactor.omega_closed_form_grid(n, grid)
        row = sectors.degeneracy_recursive(n)
        for i, d in enumerate(grid):
            trio = (sectors.omega_bruteforce(n, d),
                    statfactor.omega_recursion(n, d),
                    statfactor.omega_degeneracy_sum(n, d, row))
            worst = max(worst, max(abs(closed[i] - v) for v in trio))
    results.append(("method_agreement", worst <= 1e-12,
                    f"N<={n_enum}, 181-point grid, max deviation {worst:.2e}"))

    worst = 0.0
    for n in range(1, n_max + 1):
        om = statfactor.omega_closed_form_grid(n, grid)
        worst = max(worst,
                    float(np.max(np.abs(om - statfactor.omega_closed_form_grid(n, -grid)))),
                    float(np.max(np.abs(om - statfactor.omega_closed_form_grid(
                        n, grid + 4.0 * math.pi)))),
                    max(0.0, float(np.max(np.abs(om))) - 1.0))
    results.append(("even_periodic_bounded", worst <= 1e-12,
                    f"max violation {worst:.2e}"))

    worst = 0.0
    ok = True
    for n in range(2, n_max + 1):
        zs = statfactor.zero_set(n)
        ok = ok and zs[0] == statfactor.first_zero(n) == 2.0 * math.pi * 1 / n
        worst = max(worst, max(abs(statfactor.omega_closed_form(n, z)) for z in zs))
    results.append(("zero_structure", ok and worst <= 1e-12,
                    f"N<={n_max}, max |omega| at zeros {worst:.2e}"))

    ok = all(statfactor.omega_closed_form(n, 2.0 * math.pi)
             == (-1.0) ** (n * (n - 1) // 2) for n in range(1, n_max + 1))
    results.append(("sign_at_two_pi", ok, f"exact through N={n_max}"))

    ok = all(sectors.degeneracy_recursive(n).counts
             == sectors.degeneracy_bruteforce(n).counts
             for n in range(1, n_enum + 1))
    detail = f"recursive == enumeration for N<={n_enum}"
    for n in range(1, 31):
        row = sectors.degeneracy_recursive(n)
        try:
            row.validate()
        except ValueError as exc:
            ok = False
            detail = str(exc)
            break
    results.append(("degeneracy_triangle", ok, detail + "; invariants to N=30"))

    ok = True
    for idx in range(5):
        for n in range(1, 31):
            if idx > n * (n - 1) // 2:
                continue
            if sectors.degeneracy_polynomial(idx, n) != sectors.degeneracy_recursive(n).counts[idx]:
                ok = False
    for n in range(5, 31):
        if sectors.degeneracy_polynomial(5, n) != sectors.degeneracy_recursive(n).counts[5]:
            ok = False
    results.append(("degeneracy_polynomials", ok,
                    "columns 0..4 all N<=30; column 5 for N>=5 "
                    "(N=4 boundary: enumeration authoritative)"))

    ok = True
    for n in range(1, min(n_max, 8) + 1):
        seen = sorted(set(sectors.sector_eigenvalue(p)
                          for p in sectors.enumerate_sectors(n)))
        ok = ok and seen == sectors.spectrum(n)
    results.append(("spectrum_vs_enumeration", ok, f"N<={min(n_max, 8)}"))

    ok = all(sectors.moments_exact(n, 1) == 0 for n in range(1, min(n_max, 8) + 1))
    ok = ok and all(sectors.moments_exact(n, 2) == qsl.variance_g(n)
                    for n in range(2, min(n_max, 8) + 1))
    results.append(("exact_moments", ok,
                    f"mean 0 and closed-form variance, N<={min(n_max, 8)}"))

    ok = all(qsl.cumulant(n, k).value == qsl.cumulant_oracle(n, k)
             for n in range(2, min(n_max, 8) + 1) for k in (2, 4, 6, 8, 10))
    results.append(("cumulant_closed_forms", ok,
                    f"orders 2..10 vs moment oracle, N<={min(n_max, 8)}"))

    ok = qsl.kappa_ml(2) == qsl.kappa_mt(2) == qsl.kappa_perp(2) == math.pi
    for n in range(3, 10_001):
        ml, mt, perp = qsl.squared_bounds_in_pi_units(n)
        if not ml < mt < perp:
            ok = False
            break
    results.append(("qsl_chain", ok,
                    "equality at N=2, strict order to N=10^4 (exact rationals)"))

    basis = wavelab.OrbitalBasis("box", 1.0, 2)
    est = wavelab.mc_overlap(basis, 2, math.pi / 3, 20_000, seed=20_260_809)
    ref = statfactor.omega_closed_form(2, math.pi / 3)
    dev = abs(est.mean - ref)
    ok = dev <= 4.0 * est.std_error and est.warning is None
    results.append(("mc_overlap_quick", ok,
                    f"N=2 box, deviation {dev:.2e} vs 4 sigma = "
                    f"{4 * est.std_error:.2e}"))

    return results


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def _add_output_options(sp):
    sp.add_argument("--out", default=None,
                    help="output file ('-' or omitted: stdout; relative paths "
                         f"resolve under ${OUTDIR_ENV} when set)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyonflow",
        description="Overlap factor, speed limits, and Monte Carlo checks for "
                    "statistics shifts of one-dimensional hard-core anyons.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("omega", help="overlap factor on a shift or a grid")
    sp.add_argument("--n", type=int, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta", type=float)
    group.add_argument("--grid", help="start:stop:count (inclusive endpoints)")
    sp.add_argument("--method", choices=("closed", "recursion", "degeneracy",
                                         "bruteforce"), default="closed")
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_omega)

    sp = sub.add_parser("zeros", help="zero set of the overlap factor")
    sp.add_argument("--n", type=int, required=True)
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_zeros)

    sp = sub.add_parser("qsl", help="orthogonality-shift bounds per N")
    sp.add_argument("--n-range", required=True, help="start:stop (inclusive)")
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_qsl)

    sp = sub.add_parser("cumulants", help="exact generator cumulants")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-order", type=int, default=10)
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_cumulants)

    sp = sub.add_parser("degeneracy", help="eigenvalue degeneracy row")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--oracle", action="store_true",
                    help="add the enumeration column (N <= 10)")
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_degeneracy)

    sp = sub.add_parser("gauss", help="Gaussian approximation vs exact factor")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=float, default=0.1,
                    help="relative-error threshold of the trust interval")
    sp.add_argument("--grid", default=None,
                    help="start:stop:count; default spans the trust interval")
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_gauss)

    sp = sub.add_parser("mc", help="Monte Carlo checks on explicit wavefunctions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--basis", choices=("box", "harmonic"), default="box")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--check", choices=("overlap", "sectors", "factorization"),
                    default="overlap")
    sp.add_argument("--kappa", type=float, default=0.0,
                    help="statistics parameter of the compared states "
                         "(factorization only)")
    sp.add_argument("--occupation-b", default=None,
                    help="comma-separated orbital indices of the second state "
                         "(factorization only; default 1..N-1,N+1)")
    sp.add_argument("--scale-b", type=float, default=None,
                    help="scale of the second basis (factorization only)")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker chains; estimates merge in fixed order")
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_mc)

    sp = sub.add_parser("fringe", help="simulated interferometry scan")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--grid", required=True, help="start:stop:count")
    sp.add_argument("--shots", type=int, default=100_000)
    sp.add_argument("--seed", type=int, required=True)
    _add_output_options(sp)
    sp.set_defaults(func=_cmd_fringe)

    sp = sub.add_parser("verify", help="run the invariant suite")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--out", default=None, help="JSON report path")
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except sectors.SectorCountLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
