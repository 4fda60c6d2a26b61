"""Command-line front end.

    corrtensor detect --state ghz:d=2,n=3 --criteria t1,t2
    corrtensor tolerance --state dicke:n=4,k=1 --criterion t3
    corrtensor tensor --state w:d=2 --norms
    corrtensor scan-region --family fig1 --d 4 --criteria t1 --out fig1.csv
    corrtensor scan-thermal --family h1 --out h1.csv

Exit codes: 0 ok, 2 usage, 3 criterion/dimension mismatch, 4 I/O.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import __version__
from .correlation import full_correlation_tensor, m_body_tensor, matricize
from .criteria import DECISION_TOL, DimensionMismatch, evaluate, white_noise_tolerance
from .io import fmt, read_density_csv, write_density_csv, write_tensor_csv
from .norms import frobenius_norm, ky_fan_norms, singular_values, standard_norm, trace_norm
from .scans import (
    REGION_COLUMNS, SUMMARY_COLUMNS, THERMAL_COLUMNS, Axis, ScanConfig, default_workers,
    scan_region, scan_thermal, thermal_summary, write_rows_csv,
)
from . import states

EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 2, 3, 4


class UsageError(Exception):
    pass


def _parse_params(text: str) -> dict[str, str]:
    """``a=1,b=2,dims=2,2,2`` -> ``{'a': '1', 'b': '2', 'dims': '2,2,2'}``."""
    params: dict[str, str] = {}
    last = None
    for token in filter(None, text.split(",")):
        if "=" in token:
            last, _, value = token.partition("=")
            params[last.strip()] = value.strip()
        elif last is not None:
            params[last] += "," + token.strip()
        else:
            raise UsageError(f"malformed parameter {token!r}")
    return params


def build_state(spec: str):
    """Construct a state from ``name:key=value,...`` or ``file:<path>``."""
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if name == "file":
        try:
            with open(rest) as fh:
                return read_density_csv(fh)
        except OSError as exc:
            raise OSError(f"cannot read {rest}: {exc}") from exc
    p = _parse_params(rest)

    def get(key, cast=int, default=None):
        if key not in p:
            if default is None:
                raise UsageError(f"state {name!r} needs parameter {key!r}")
            return default
        try:
            return cast(p[key])
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {p[key]!r}") from exc

    try:
        if name == "ghz":
            return states.ghz_state(get("d"), get("n"))
        if name == "w":
            return states.w_state(get("d"))
        if name == "dicke":
            return states.dicke_state(get("n"), get("k"))
        if name == "fig1":
            return states.figure1_family(get("alpha", float), get("beta", float), get("d"))
        if name == "fig3":
            return states.figure3_family(get("alpha", float), get("beta", float))
        if name in ("thermal-h1", "thermal-h2"):
            ham = states.hamiltonian_h1 if name == "thermal-h1" else states.hamiltonian_h2
            return states.thermal_state(ham(get("n", int, 4), get("h", float, 0.0)), get("kT", float))
        if name == "maxmixed":
            return states.maximally_mixed([int(x) for x in get("dims", str).split(",")])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown state {name!r}")


def _state_with_noise(args):
    state = build_state(args.state)
    if args.noise:
        try:
            state = states.white_noise_mix(state, args.noise)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return state


def _criteria_list(text: str) -> list[str]:
    return [c.strip().upper() for c in text.split(",") if c.strip()]


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_detect(args) -> int:
    state = _state_with_noise(args)
    results = [evaluate(state, c) for c in _criteria_list(args.criteria)]
    with _output(args.out) as fh:
        if args.format == "csv":
            fh.write("criterion,label,k,value,threshold,margin,violated\n")
            for r in results:
                for t in r.tests:
                    fh.write(f"{r.criterion},{t.label},{'' if t.k is None else t.k},{fmt(t.value)},"
                             f"{fmt(t.threshold)},{fmt(t.margin)},{str(t.margin > DECISION_TOL).lower()}\n")
        else:
            json.dump([r.to_dict() for r in results], fh, indent=2)
            fh.write("\n")
    return 0


def cmd_tolerance(args) -> int:
    state = build_state(args.state)
    labels = args.labels.split(";") if args.labels else None
    tol = white_noise_tolerance(state, args.criterion, group=args.group, labels=labels)
    with _output(args.out) as fh:
        if args.format == "json":
            json.dump(tol._asdict(), fh)
            fh.write("\n")
        else:
            fh.write(f"{tol.p:.6f}\n")
    if not tol.detected:
        print("state not detected without noise", file=sys.stderr)
    return 0


def cmd_tensor(args) -> int:
    state = _state_with_noise(args)
    if args.export_density:
        with open(args.export_density, "w", newline="") as fh:
            write_density_csv(state.density(), fh)
    if args.parties:
        t = m_body_tensor(state, [int(x) - 1 for x in args.parties.split(",")])
    else:
        t = full_correlation_tensor(state)
    if args.matricize or args.norms:
        report = {"parties": [p + 1 for p in t.parties], "standard_norm": standard_norm(t)}
        if args.matricize:
            rows = [int(ch) - 1 for ch in args.matricize.replace(",", "")]
            try:
                m = matricize(t, rows)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            s = singular_values(m)
            report.update(matricization=args.matricize, shape=list(m.shape), singular_values=s.tolist(),
                          ky_fan=ky_fan_norms(m).tolist(), trace_norm=trace_norm(m),
                          frobenius_norm=frobenius_norm(m))
        with _output(args.out) as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        return 0
    with _output(args.out) as fh:
        write_tensor_csv(t, fh)
    return 0


def _axis(name, lo, hi, points) -> Axis:
    try:
        return Axis(name, lo, hi, points)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_scan_region(args) -> int:
    config = ScanConfig(
        family=args.family,
        axes=[_axis("alpha", 0.0, 1.0, args.alpha_points), _axis("beta", 0.0, 1.0, args.beta_points)],
        criteria=_criteria_list(args.criteria),
        params={"d": args.d} if args.family == "fig1" else {},
        workers=args.workers, seed=args.seed,
    )
    rows = scan_region(config)
    with _output(args.out) as fh:
        write_rows_csv(rows, REGION_COLUMNS, fh, "scan-region config=" + _config_text(config))
    return 0


def _config_text(config: ScanConfig) -> str:
    # worker count does not change results, so it stays out of the provenance line
    text = json.loads(config.describe())
    text.pop("workers")
    return json.dumps(text, sort_keys=True, separators=(",", ":"))


def cmd_scan_thermal(args) -> int:
    config = ScanConfig(
        family=args.family,
        axes=[_axis("h", args.h_min, args.h_max, args.h_points),
              _axis("kT", args.kt_min, args.kt_max, args.kt_points)],
        criteria=["T4", "T3"], params={"n": args.n}, workers=args.workers, seed=args.seed,
    )
    if args.kt_min <= 0:
        raise UsageError("kT grid must be positive")
    rows = scan_thermal(config)
    comment = "scan-thermal config=" + _config_text(config)
    with _output(args.out) as fh:
        write_rows_csv(rows, THERMAL_COLUMNS, fh, comment)
    summary_path = args.summary
    if summary_path is None and args.out not in (None, "-"):
        stem = args.out[:-4] if args.out.endswith(".csv") else args.out
        summary_path = stem + "_summary.csv"
    if summary_path:
        with _output(summary_path) as fh:
            write_rows_csv(thermal_summary(rows), SUMMARY_COLUMNS, fh, comment)
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--workers", type=int, default=default_workers())
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="corrtensor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"corrtensor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[common], help="evaluate criteria on one state")
    p.add_argument("--state", required=True)
    p.add_argument("--criteria", default="t4")
    p.add_argument("--noise", type=float, default=0.0)
    p.set_defaults(func=cmd_detect, default_format="json")

    p = sub.add_parser("tolerance", parents=[common], help="white-noise tolerance of one criterion")
    p.add_argument("--state", required=True)
    p.add_argument("--criterion", required=True)
    p.add_argument("--group", help="restrict to one test group, e.g. unfolding")
    p.add_argument("--labels", help="restrict to tests with these labels, ';'-separated (e.g. '12|34')")
    p.set_defaults(func=cmd_tolerance, default_format="csv")

    p = sub.add_parser("tensor", parents=[common], help="dump a correlation tensor or its norms")
    p.add_argument("--state", required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--parties", help="1-based comma list for an m-body tensor (default: all)")
    p.add_argument("--matricize", help="1-based row parties, e.g. 1 or 13")
    p.add_argument("--norms", action="store_true")
    p.add_argument("--export-density", help="also write the density matrix as sparse CSV")
    p.set_defaults(func=cmd_tensor, default_format="csv")

    p = sub.add_parser("scan-region", parents=[common], help="criteria over an (alpha, beta) grid")
    p.add_argument("--family", choices=["fig1", "fig3"], required=True)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--criteria", default="t1")
    p.add_argument("--alpha-points", type=int, default=101)
    p.add_argument("--beta-points", type=int, default=101)
    p.set_defaults(func=cmd_scan_region, default_format="csv")

    p = sub.add_parser("scan-thermal", parents=[common], help="criteria over an (h, kT) grid")
    p.add_argument("--family", choices=["h1", "h2"], required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--h-min", type=float, default=0.0)
    p.add_argument("--h-max", type=float, default=2.0)
    p.add_argument("--h-points", type=int, default=41)
    p.add_argument("--kt-min", type=float, default=0.05)
    p.add_argument("--kt-max", type=float, default=3.0)
    p.add_argument("--kt-points", type=int, default=60)
    p.add_argument("--summary", help="per-h maximal detected kT (default: <out>_summary.csv)")
    p.set_defaults(func=cmd_scan_thermal, default_format="csv")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except (UsageError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
