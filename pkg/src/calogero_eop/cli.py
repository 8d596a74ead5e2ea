"""``eop`` command-line interface.

Subcommands: identities, spectrum, sample, tables, verify.  Options may also
come from a flat ``key=value`` config file (``--config``); command-line
flags override it.  Exit codes: 0 success, 1 verification failure,
2 usage/parameter error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__, reports
from .errors import EOPError, QuadratureError, SolverError
from .families import Couplings, FamilyId

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "family": "SCARF",
    "omega": 1.0,
    "g": 4.0,
    "f1": 0.0,
    "m": 1,
    "p": 1,
    "nmax": 3,
    "lmax": 2,
    "grid_points": 2048,
    "format": "json",
    "out": None,
    "seed": 0,
    "mode": "analytic",
    "target": "potential",
    "channel": "angular",
    "samples": 10000,
    "n": 0,
    "ell": None,
    "variant": "verified",
}

TYPES = {
    "family": str, "omega": float, "g": float, "f1": float, "m": int, "p": int,
    "nmax": int, "lmax": int, "grid_points": int, "format": str, "out": str, "seed": int,
    "mode": str, "target": str, "channel": str, "samples": int, "n": int, "ell": int,
    "variant": str,
}


class UsageError(Exception):
    pass


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", metavar="PATH", help="flat key=value file; flags override it")
    g.add_argument("--family", choices=[f.value for f in FamilyId],
                   help=f"potential family (default {DEFAULTS['family']})")
    g.add_argument("--omega", type=float, help=f"oscillator frequency (default {DEFAULTS['omega']})")
    g.add_argument("--g", type=float, help=f"Wolfes/Calogero coupling (default {DEFAULTS['g']})")
    g.add_argument("--f1", type=float, help=f"second coupling (default {DEFAULTS['f1']})")
    g.add_argument("--m", type=int, help=f"radial X_m index (default {DEFAULTS['m']})")
    g.add_argument("--p", type=int, help=f"angular X_p index (default {DEFAULTS['p']})")
    g.add_argument("--nmax", type=int, help=f"largest radial quantum number (default {DEFAULTS['nmax']})")
    g.add_argument("--lmax", type=int, help=f"largest angular quantum number (default {DEFAULTS['lmax']})")
    g.add_argument("--grid-points", dest="grid_points", type=int,
                   help=f"interior grid nodes (default {DEFAULTS['grid_points']})")
    g.add_argument("--format", choices=["json", "csv"], help="output format (default json; csv for sample)")
    g.add_argument("--out", help="output file (directory for tables); default stdout")
    g.add_argument("--seed", type=int, help=f"seed for random sweeps (default {DEFAULTS['seed']})")

    parser = argparse.ArgumentParser(
        prog="eop", description="Rationally extended Calogero-Wolfes three-body potentials: "
        "closed-form spectra, EOP eigenfunctions and their numerical verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", parents=[common], help="audit the trigonometric identities and xi forms")
    p.add_argument("--samples", type=int, help=f"random angles (default {DEFAULTS['samples']})")

    p = sub.add_parser("spectrum", parents=[common], help="analytic and/or numeric spectrum")
    p.add_argument("--mode", choices=["analytic", "numeric", "both"], help="default analytic")
    p.add_argument("--variant", choices=["verified", "printed", "squared"],
                   help="lambda_l^2 variant for the PT families (default verified)")

    p = sub.add_parser("sample", parents=[common], help="sample a potential or eigenfunction on a grid")
    p.add_argument("--target", choices=["potential", "wavefunction"], help="default potential")
    p.add_argument("--channel", choices=["radial", "angular"], help="default angular")
    p.add_argument("--n", type=int, help="radial quantum number for wavefunctions (default 0)")
    p.add_argument("--ell", type=int, help="angular quantum number (default: lowest valid)")

    sub.add_parser("tables", parents=[common], help="reproduce both tables with PASS/FAIL stamps")
    p = sub.add_parser("verify", parents=[common], help="run every numerical oracle")
    p.add_argument("--samples", type=int, help=f"identity sweep size (default {DEFAULTS['samples']})")
    return parser


def read_config(path):
    """Parse a flat key=value file (``#`` comments, dashes or underscores)."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in TYPES:
            raise UsageError(f"{path}:{num}: unknown key {key!r}")
        try:
            out[key] = TYPES[key](value)
        except ValueError:
            raise UsageError(f"{path}:{num}: bad value for {key}: {value!r}") from None
    return out


def resolve(args):
    """Defaults < config file < flags."""
    opts = dict(DEFAULTS)
    if args.config:
        opts.update(read_config(args.config))
    for key in TYPES:
        v = getattr(args, key, None)
        if v is not None:
            opts[key] = v
    opts["family"] = str(opts["family"]).upper()
    if opts["format"] not in ("json", "csv"):
        raise UsageError(f"unknown format {opts['format']!r}")
    return opts


def _couplings(o):
    return Couplings(o["omega"], o["g"], o["f1"], o["m"], o["p"])


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _require_json(o, command):
    if o["format"] != "json":
        raise UsageError(f"{command} only supports --format json")


def run(command, o):
    if command == "identities":
        _require_json(o, command)
        rep = reports.identities_report(o["samples"], o["seed"])
        _write(reports.dumps(rep), o["out"])
        return rep["passed"]
    if command == "spectrum":
        _require_json(o, command)
        rep = reports.spectrum_report(o["family"], _couplings(o), o["nmax"], o["lmax"], o["mode"],
                                      o["grid_points"], o["variant"])
        _write(reports.dumps(rep), o["out"])
        return rep["passed"]
    if command == "sample":
        c = _couplings(o)
        x, v = reports.sample_curve(o["family"], c, o["target"], o["channel"], o["grid_points"],
                                    o["n"], o["ell"])
        if o["format"] == "csv":
            _write(reports.sample_csv(x, v), o["out"])
        else:
            _write(reports.dumps(reports.sample_report(o["family"], c, o["target"], o["channel"],
                                                       o["grid_points"], o["n"], o["ell"], x, v)),
                   o["out"])
        return True
    if command == "tables":
        _require_json(o, command)
        docs = reports.tables_report(o["grid_points"], o["seed"])
        if o["out"] is None:
            _write(reports.dumps(docs), None)
        else:
            os.makedirs(o["out"], exist_ok=True)
            for name, doc in docs.items():
                _write(reports.dumps(doc), os.path.join(o["out"], f"{name}.json"))
        for doc in docs.values():
            for row in doc["rows"]:
                print(f"{doc['table']} {row['row']:<20} {row['family']:<10} {row['status']}",
                      file=sys.stderr)
        return all(d["passed"] for d in docs.values())
    if command == "verify":
        _require_json(o, command)
        rep = reports.verify_report(o["grid_points"], o["seed"], o["samples"])
        _write(reports.dumps(rep), o["out"])
        for ch in rep["checks"]:
            print(f"{'PASS' if ch['passed'] else 'FAIL'} {ch['name']}", file=sys.stderr)
        return rep["passed"]
    raise UsageError(f"unknown command {command!r}")


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        opts = resolve(args)
        ok = run(args.command, opts)
    except (SolverError, QuadratureError) as exc:
        print(f"eop: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, EOPError) as exc:
        print(f"eop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"eop: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
