"""Command-line entry point.

Exit codes: 0 on success, 1 when an input violates a precondition, 2 on I/O
failure, 64 on a usage error.  ``--A`` always lives in the first free copy
and ``--B`` in the second.  JSON outputs carry ``"schema": 1`` and encode
infinities as the string ``"inf"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import brown, freeprod, moments, spectra, verify
from .errors import FreespecError
from .mat2 import Mat2
from .matrixmodel import (ModelConfig, empirical_brown, empirical_singular_values)
from .measures import MeasureR, arcsine01, arcsine_sym
from .transforms import STransform

SCHEMA = 1
EXIT_PRECONDITION, EXIT_IO, EXIT_USAGE = 1, 2, 64
BUILTIN_MEASURES = {"arcsine01": arcsine01, "arcsine_sym": arcsine_sym}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ----------------------------------------------------------------------
# argument decoding


def parse_matrix(text: str) -> Mat2:
    """``[[a, b], [c, d]]`` with entries given as reals or ``[re, im]`` pairs."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"not JSON: {exc}") from None
    if not (isinstance(rows, list) and len(rows) == 2 and all(
            isinstance(r, list) and len(r) == 2 for r in rows)):
        raise argparse.ArgumentTypeError("expected a 2x2 JSON array")
    out = np.empty((2, 2), dtype=complex)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if isinstance(x, list) and len(x) == 2:
                out[i, j] = complex(float(x[0]), float(x[1]))
            elif isinstance(x, (int, float)):
                out[i, j] = float(x)
            else:
                raise argparse.ArgumentTypeError(f"bad entry {x!r}")
    return Mat2(out)


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list: {text!r}") from None


# ----------------------------------------------------------------------
# encoding


def _json_safe(x):
    if isinstance(x, dict):
        return {str(k): _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, np.ndarray):
        return _json_safe(x.tolist())
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_json_safe(float(np.real(x))), _json_safe(float(np.imag(x)))]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            raise ValueError("NaN in output")
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, Mat2):
        return _json_safe(x.a)
    return x


def to_json(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **_json_safe(payload)}, indent=2) + "\n"


def to_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\r\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ----------------------------------------------------------------------
# subcommands


def cmd_brown(args) -> str:
    if args.which == "product":
        _need(args, "A", "B")
        return brown.brown_product(args.A, args.B, n=args.grid).to_csv()
    _need(args, "alpha", "beta")
    if args.which == "sum-nilpotent":
        return brown.brown_sum_nilpotents(args.alpha, args.beta).to_csv()
    if args.which == "example65":
        return brown.brown_example_65(args.alpha, args.beta).to_csv()
    mix = brown.brown_example_64(args.alpha, args.beta)
    comp = mix.component
    return to_json({"support": mix.support_descriptor(),
                    "atoms": [[z, m] for z, m in mix.atoms],
                    "component": {"center": mix.center, "weight": mix.weight,
                                  "s": comp.s, "F": comp.F}})


def cmd_spectrum(args) -> str:
    if args.which == "product":
        _need(args, "A", "B")
        region = spectra.spectrum_product_traceless(args.A, args.B)
        return to_json({"region": region.to_json(),
                        "spectral_radius": spectra.spectral_radius_product(
                            args.A, args.B, mode="traceless")})
    if args.which == "sampler":
        _need(args, "A", "B")
        pts = spectra.representation_spectrum_sampler(args.A, args.B, grid=args.grid).points
        return _points_csv(pts)
    if args.which == "verify-ellipses":
        cmp = spectra.ellipse_families_equal(args.b1, args.b2)
        return to_json(cmp.to_json())
    _need(args, "alpha", "beta")
    region = spectra.spectrum_example_66(args.alpha, args.beta)
    if args.boundary:
        pts = region.boundary(args.boundary)
        return _points_csv(pts)
    return to_json({"region": region.to_json()})


def cmd_decompose(args) -> str:
    _need(args, "B")
    D = freeprod.decompose(args.B)
    payload = {"B": args.B, "entries": {f"b{i + 1}{j + 1}": str(D[i][j])
                                        for i in range(2) for j in range(2)}}
    if args.evaluate:
        M = freeprod.evaluate_matrix_model(D, args.N, seed=args.seed)
        k_max = 4
        rows = []
        P, Mk = freeprod.SymbolicMat2.identity(), np.eye(M.shape[0])
        for k in range(1, k_max + 1):
            P, Mk = P @ D, Mk @ M
            rows.append({"k": k, "exact": np.trace(np.linalg.matrix_power(args.B.a, k)) / 2,
                         "symbolic": freeprod.symbolic_trace(P),
                         "matrix_model": np.trace(Mk) / M.shape[0]})
        payload["traces"] = rows
    return to_json(payload)


def cmd_moments(args) -> str:
    _need(args, "A", "B")
    seq = moments.moment_sequence(args.kind, args.A, args.B, args.order)
    return to_json({"kind": args.kind, "moments": seq})


def cmd_classify(args) -> str:
    _need(args, "A", "B")
    res = moments.classify_support(args.kind, args.A, args.B)
    pred = moments.is_r_diagonal_product if args.kind == "product" else moments.is_r_diagonal_sum
    return to_json({"kind": args.kind, "r_diagonal": pred(args.A, args.B), **res})


def _load_measure(spec: str) -> MeasureR:
    if spec in BUILTIN_MEASURES:
        return BUILTIN_MEASURES[spec]()
    with open(spec, encoding="utf-8") as fh:
        return MeasureR.from_csv(fh.read())


def cmd_s_transform(args) -> str:
    S = STransform.of(_load_measure(args.measure))
    w = np.asarray(args.w, dtype=float)
    return to_json({"method": S.method, "domain": [S.lower, 0.0],
                    "w": w, "S": np.atleast_1d(S(w))})


def cmd_simulate(args) -> str:
    _need(args, "A", "B")
    cfg = ModelConfig(N=args.N, trials=args.trials, seed=args.seed, what=args.what)
    if args.what == "singular_values":
        spec = empirical_singular_values(args.A, args.B, args.kind, cfg)
        return to_csv(["trial", "sigma"],
                      ([int(t), repr(float(s))] for t, s in zip(spec.trial, spec.samples)))
    spec = empirical_brown(args.A, args.B, args.kind, cfg)
    return to_csv(["trial", "re", "im"],
                  ([int(t), repr(float(z.real)), repr(float(z.imag))]
                   for t, z in zip(spec.trial, spec.samples)))


def cmd_verify(args) -> str:
    results = verify.run_suite(args.suite, seed=args.seed, only=args.only,
                               report=lambda r: print(r.line(), file=sys.stderr, flush=True))
    args.failed = not all(r.passed for r in results)
    if args.json:
        return to_json({"suite": args.suite, "seed": args.seed,
                        "results": [r.to_json() for r in results],
                        "passed": not args.failed})
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} passed")
    return "\n".join(lines) + "\n"


def _points_csv(pts) -> str:
    return to_csv(["re", "im"], ([repr(float(z.real)), repr(float(z.imag))] for z in pts))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="freespec", description="Spectra and Brown measures in the free "
                "product of two copies of the 2x2 matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *flags):
        if "A" in flags:
            sp.add_argument("--A", type=parse_matrix, help="matrix in the first copy")
        if "B" in flags:
            sp.add_argument("--B", type=parse_matrix, help="matrix in the second copy")
        if "ab" in flags:
            sp.add_argument("--alpha", type=parse_complex)
            sp.add_argument("--beta", type=parse_complex)
        if "kind" in flags:
            sp.add_argument("--kind", choices=("product", "sum"), default="product")
        if "mc" in flags:
            sp.add_argument("--N", type=int, default=512)
            sp.add_argument("--trials", type=int, default=16)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    sp = sub.add_parser("brown", help="radial CDF of a Brown measure")
    sp.add_argument("which", choices=("product", "sum-nilpotent", "example64", "example65"))
    sp.add_argument("--grid", type=int, default=brown.RADIAL_POINTS)
    common(sp, "A", "B", "ab")
    sp.set_defaults(func=cmd_brown)

    sp = sub.add_parser("spectrum", help="spectral regions")
    sp.add_argument("which", choices=("product", "sampler", "example66", "verify-ellipses"))
    sp.add_argument("--boundary", type=int, default=0, help="boundary sample size")
    sp.add_argument("--grid", type=int, default=spectra.ANGLE_GRID)
    sp.add_argument("--b1", type=float, default=2.0)
    sp.add_argument("--b2", type=float, default=3.0)
    common(sp, "A", "B", "ab")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("decompose", help="write B in the first copy's matrix units")
    sp.add_argument("--evaluate", action="store_true",
                    help="compare traces against a random-matrix realization")
    sp.add_argument("--N", type=int, default=256)
    common(sp, "B")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("moments", help="tau(X^k) for k = 1..order")
    sp.add_argument("--n", "--order", dest="order", type=int, default=4)
    common(sp, "A", "B", "kind")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("classify", help="R-diagonality and Brown support type")
    common(sp, "A", "B", "kind")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("s-transform", help="evaluate an S-transform")
    sp.add_argument("--measure", required=True,
                    help="CSV file or one of: " + ", ".join(BUILTIN_MEASURES))
    sp.add_argument("--w", type=parse_floats, required=True, help="comma-separated points")
    common(sp)
    sp.set_defaults(func=cmd_s_transform)

    sp = sub.add_parser("simulate", help="random-matrix eigenvalue or singular value cloud")
    sp.add_argument("--what", choices=("eigenvalues", "singular_values"), default="eigenvalues")
    common(sp, "A", "B", "kind", "mc")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="run the reproduction suite")
    sp.add_argument("--suite", choices=("paper",), default="paper")
    sp.add_argument("--only", type=lambda s: {int(x) for x in s.split(",")}, default=None,
                    help="comma-separated check numbers")
    sp.add_argument("--json", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = args.func(args)
        _emit(text, args.out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"freespec: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FreespecError, ValueError, ArithmeticError) as exc:
        print(f"freespec: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return 1 if getattr(args, "failed", False) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
