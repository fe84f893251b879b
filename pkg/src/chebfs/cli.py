"""Command-line front end.

Every subcommand is deterministic: identical invocations produce
byte-identical output.  JSON is the canonical format; curve outputs can be
emitted as CSV.  Exit codes: 0 success, 1 for domain/definiteness/accuracy
errors (with an error object on stderr), 2 for usage errors.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bergman import (
    ChartGrid,
    bergman_exactness_defect,
    bergman_geodesic_eval,
    bergman_spectrum,
    level_constant,
)
from .chebyshev import (
    ChebyshevPotential,
    affine_in_t_test,
    cheb_closed_form,
    cheb_finite_m,
)
from .energy import energy_affine_along_geodesic, energy_okounkov, energy_report
from .errors import ChebfsError
from .gram import chebyshev_norms, gram_exact, gram_numeric
from .hermitian import mu_vector, path_eval
from .okounkov import lattice_points
from .potentials import counterexample_path, geodesic_from_endpoints
from .quadrature import PolarScheme, SobolScheme
from .serialization import (
    load_path_file,
    matrix_to_json,
    parse_matrix_arg,
    path_to_json,
)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2))
    sys.stdout.write("\n")


def _parse_ts(text: str) -> list[float]:
    """Times either as a comma list '0,0.5,1' or a range 'start:stop:count'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidUsage(f"bad time range {text!r}, expected start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 2:
            raise InvalidUsage("time range needs at least 2 points")
        return [float(v) for v in np.linspace(start, stop, count)]
    return [float(v) for v in text.split(",")]


def _parse_floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


class InvalidUsage(Exception):
    pass


def _scheme_from_args(args, n: int):
    if n == 1:
        return PolarScheme(radial=args.radial, angular=args.angular)
    return SobolScheme(samples=args.samples, seed=args.seed)


def _add_scheme_args(parser) -> None:
    parser.add_argument("--radial", type=int, default=200, help="radial node count (n=1)")
    parser.add_argument("--angular", type=int, default=64, help="angular node count (n=1)")
    parser.add_argument("--samples", type=int, default=1 << 16, help="sample count (n=2)")
    parser.add_argument("--seed", type=int, default=1905, help="scramble seed (n=2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebfs",
        description="Convex transforms, geodesics, spectra and energies of "
        "matrix potentials on projective space.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="trailing-minor ratio vector of a matrix")
    p.add_argument("--p", required=True, help="matrix: file, identityK, diag:..., counterexample[:t]")

    p = sub.add_parser("okounkov", help="lex-sorted degree-m exponent lattice")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("geodesic", help="geodesic path between two matrices, sampled")
    p.add_argument("--p0", required=True)
    p.add_argument("--p1", required=True)
    p.add_argument("--ts", required=True, help="comma list or start:stop:count")

    p = sub.add_parser("gram", help="Gram matrix of the degree-m monomial basis")
    p.add_argument("--p", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--numeric", action="store_true", help="use quadrature instead of the closed form")
    _add_scheme_args(p)

    p = sub.add_parser("cheb", help="convex transform values, pointwise or along a path")
    p.add_argument("--p", help="matrix (pointwise mode)")
    p.add_argument("--alpha", required=True, help="comma-separated simplex coordinates")
    p.add_argument("--m", type=int, help="finite level; closed form if omitted")
    p.add_argument("--curve", action="store_true", help="emit the curve t -> c(alpha, P(t))")
    p.add_argument("--path", help="path file (curve mode); 'counterexample' allowed")
    p.add_argument("--ts", help="times for curve mode")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("affine-test", help="is t -> c(alpha, P(t)) affine along a path?")
    p.add_argument("--path", required=True)
    p.add_argument("--alphas", required=True, help="semicolon-separated alpha vectors")
    p.add_argument("--ts", required=True)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("bergman", help="finite-level interpolating potential at (t, z)")
    p.add_argument("--p0", required=True)
    p.add_argument("--p1", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--z", required=True, help="chart point re,im[,re,im,...]")

    p = sub.add_parser("bergman-defect", help="exactness defect table for diagonal endpoints")
    p.add_argument("--d", required=True, help="comma-separated exponent diagonal")
    p.add_argument("--ms", required=True, help="comma-separated levels")
    p.add_argument("--t-points", type=int, default=11)
    p.add_argument("--z-points", type=int, default=11)
    p.add_argument("--z-radius", type=float, default=3.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("energy", help="energy of a matrix pair")
    p.add_argument("--p0", required=True)
    p.add_argument("--p1", required=True)
    p.add_argument("--chart", action="store_true", help="also run the chart quadrature")
    _add_scheme_args(p)

    p = sub.add_parser("counterexample", help="full report on the cosh/sinh geodesic")
    p.add_argument("--alpha", type=float, default=0.25)
    p.add_argument("--ts", default="0,1,2")
    p.add_argument("--tol", type=float, default=1e-6)

    return parser


def _run(args) -> None:
    if args.command == "mu":
        p = parse_matrix_arg(args.p)
        mu = mu_vector(p)
        _emit({
            "order": int(p.shape[0]),
            "mu": [float(v) for v in mu],
            "det": float(np.prod(mu)),
        })

    elif args.command == "okounkov":
        points = lattice_points(args.n, args.m)
        _emit({
            "n": args.n,
            "m": args.m,
            "count": len(points),
            "points": [list(pt) for pt in points],
        })

    elif args.command == "geodesic":
        p0 = parse_matrix_arg(args.p0)
        p1 = parse_matrix_arg(args.p1)
        ts = _parse_ts(args.ts)
        path = geodesic_from_endpoints(p0, p1)
        _emit({
            "path": path_to_json(path),
            "ts": ts,
            "matrices": [matrix_to_json(path_eval(path, t)) for t in ts],
        })

    elif args.command == "gram":
        p = parse_matrix_arg(args.p)
        n = p.shape[0] - 1
        if args.numeric:
            gram = gram_numeric(p, args.m, _scheme_from_args(args, n))
        else:
            gram = gram_exact(p, args.m)
        _emit({
            "n": gram.n,
            "m": gram.m,
            "basis": [list(idx) for idx in gram.basis],
            "entries": matrix_to_json(gram.entries),
            "cheb_norms": [float(v) for v in chebyshev_norms(gram)],
            "error_estimate": gram.error_estimate,
        })

    elif args.command == "cheb":
        alpha = _parse_floats(args.alpha)
        if args.curve:
            if not args.path or not args.ts:
                raise InvalidUsage("--curve needs --path and --ts")
            path = load_path_file(args.path)
            ts = _parse_ts(args.ts)
            values = [
                cheb_closed_form(
                    ChebyshevPotential.from_matrix(path_eval(path, t)), alpha
                )
                for t in ts
            ]
            if args.format == "csv":
                sys.stdout.write("t,value\n")
                for t, v in zip(ts, values):
                    sys.stdout.write(f"{t!r},{v!r}\n")
            else:
                _emit({"alpha": alpha, "ts": ts, "values": values})
        else:
            if not args.p:
                raise InvalidUsage("pointwise mode needs --p")
            p = parse_matrix_arg(args.p)
            if args.m is None:
                value = cheb_closed_form(ChebyshevPotential.from_matrix(p), alpha)
            else:
                value = cheb_finite_m(p, args.m, alpha)
            _emit({"alpha": alpha, "m": args.m, "value": value})

    elif args.command == "affine-test":
        path = load_path_file(args.path)
        alphas = [_parse_floats(chunk) for chunk in args.alphas.split(";")]
        ts = _parse_ts(args.ts)
        verdict = affine_in_t_test(path, alphas, ts, args.tol)
        _emit({
            "affine": verdict.affine,
            "tol": verdict.tol,
            "alphas": alphas,
            "defects": [float(v) for v in verdict.defects],
        })

    elif args.command == "bergman":
        p0 = parse_matrix_arg(args.p0)
        p1 = parse_matrix_arg(args.p1)
        coords = _parse_floats(args.z)
        if len(coords) % 2:
            raise InvalidUsage("--z needs an even count of re,im components")
        z = [complex(coords[2 * k], coords[2 * k + 1]) for k in range(len(coords) // 2)]
        spectrum = bergman_spectrum(p0, p1, args.m)
        _emit({
            "m": args.m,
            "t": args.t,
            "phi_m": bergman_geodesic_eval(spectrum, args.t, z),
            "lambdas": [float(v) for v in spectrum.lambdas],
        })

    elif args.command == "bergman-defect":
        d = _parse_floats(args.d)
        ms = [int(v) for v in args.ms.split(",")]
        grid = ChartGrid(
            t_points=args.t_points, z_points=args.z_points, z_radius=args.z_radius
        )
        n = len(d) - 1
        rows = [
            {
                "m": m,
                "defect": bergman_exactness_defect(np.asarray(d), m, grid),
                "level_constant": level_constant(n, m),
            }
            for m in ms
        ]
        if args.format == "csv":
            sys.stdout.write("m,defect,level_constant\n")
            for row in rows:
                sys.stdout.write(
                    f"{row['m']},{row['defect']!r},{row['level_constant']!r}\n"
                )
        else:
            _emit({"d": d, "rows": rows})

    elif args.command == "energy":
        p0 = parse_matrix_arg(args.p0)
        p1 = parse_matrix_arg(args.p1)
        if args.chart:
            n = p0.shape[0] - 1
            report = energy_report(p0, p1, _scheme_from_args(args, n))
        else:
            report = energy_report(p0, p1, include_chart=False)
        _emit({
            "okounkov_value": report.okounkov_value,
            "chart_value": report.chart_value,
            "sign": report.sign,
            "gap": report.gap,
            "quadrature_error_estimate": report.quadrature_error_estimate,
        })

    elif args.command == "counterexample":
        _emit(counterexample_report(args.alpha, _parse_ts(args.ts), args.tol))


def counterexample_report(alpha: float, ts, tol: float) -> dict:
    """One-shot report: geodesic data, mu curve, affineness and energy verdicts."""
    path = counterexample_path()
    mu_ts = [0.0, 0.5, 1.0, 2.0]
    mus = [mu_vector(path_eval(path, t)) for t in mu_ts]
    verdict = affine_in_t_test(path, [[alpha]], ts, tol)
    energy_defect = energy_affine_along_geodesic(path, ts)
    curve_alphas = [0.1, 0.25, 0.5, 0.75, 0.9]
    curve = {
        "alphas": curve_alphas,
        "ts": list(ts),
        "values": [
            [
                cheb_closed_form(
                    ChebyshevPotential.from_matrix(path_eval(path, t)), [a]
                )
                for t in ts
            ]
            for a in curve_alphas
        ],
    }
    p1 = path_eval(path, 1.0)
    endpoint_residual = float(
        np.abs(p1 - np.array([[np.cosh(1.0), np.sinh(1.0)], [np.sinh(1.0), np.cosh(1.0)]])).max()
    )
    return {
        "path": path_to_json(path),
        "mu": {
            "ts": mu_ts,
            "mu0": [float(m[0]) for m in mus],
            "mu1": [float(m[1]) for m in mus],
            "mu0_times_cosh": [float(m[0] * np.cosh(t)) for m, t in zip(mus, mu_ts)],
            "mu1_over_cosh": [float(m[1] / np.cosh(t)) for m, t in zip(mus, mu_ts)],
        },
        "endpoint_residual": endpoint_residual,
        "chebyshev_curve": curve,
        "affine_test": {
            "alpha": alpha,
            "ts": list(ts),
            "tol": tol,
            "defect": float(verdict.defects[0]),
            "affine": verdict.affine,
        },
        "energy_linearity": {
            "ts": list(ts),
            "defect": energy_defect,
            "affine": bool(energy_defect <= 1e-12),
        },
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _run(args)
    except InvalidUsage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"usage error: file not found: {exc}\n")
        return 2
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"usage error: malformed JSON input: {exc}\n")
        return 2
    except ChebfsError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
