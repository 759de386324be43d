"""Command-line front end emitting deterministic CSV/JSON artifacts.

Subcommands: spectrum-scan, flow-dist, cat-scan, ramp, witness, anticrossing.
Every output file starts with a header block recording the artifact version
and the fully resolved configuration, so identical config and seed reproduce
byte-identical files. Phases accept radians or symbolic multiples of pi
("pi/3", "2pi/3", "0.25pi"); grids are "start:stop:count" (phases) or
"start:stop:count[:log]" (J/U), or explicit comma lists.

A config file may mirror any long option one-to-one (key = value, '#'
comments, keys spelled like the option without leading dashes); flags
override file values. Exit codes: 0 success, 2 configuration, 3 numerical,
4 I/O.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import __version__
from .errors import (
    BracketingError,
    ConfigError,
    ContractError,
    ConvergenceError,
    DomainError,
    NumericalIntegrityError,
    OptimizationError,
    RingcatError,
    SizingError,
    UnsupportedConfigurationError,
)
from .dynamics import cat_scan_static, preparation_protocol
from .flow import flow_distribution
from .fock import DEFAULT_DIMENSION_CAP, build_basis
from .model import RingParams, build_site_hamiltonian
from .spectrum import find_anticrossing, lowest_eigenpairs, phase_scan
from .witness import minimize_separable_energy

_CONFIG_EXIT = 2
_NUMERICAL_EXIT = 3
_IO_EXIT = 4

_PI_RE = re.compile(r"^([+-]?\d*\.?\d*)\s*pi\s*(?:/\s*(\d+\.?\d*))?$")


def parse_phase(text: str) -> float:
    """Radians from a float literal or a symbolic multiple of pi."""
    s = str(text).strip().lower().replace(" ", "")
    m = _PI_RE.match(s)
    if m:
        coef_s, div_s = m.groups()
        coef = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef_s, None)
        if coef is None:
            coef = float(coef_s)
        div = float(div_s) if div_s else 1.0
        if div == 0:
            raise ValueError("division by zero in phase")
        return coef * np.pi / div
    return float(s)


def parse_phase_grid(text: str):
    s = str(text).strip()
    if ":" in s:
        parts = s.split(":")
        if len(parts) != 3:
            raise ValueError("phase grid must be start:stop:count")
        a, b = parse_phase(parts[0]), parse_phase(parts[1])
        n = int(parts[2])
        if n < 1:
            raise ValueError("grid count must be >= 1")
        if b < a:
            raise ValueError("grid stop must be >= start")
        return np.linspace(a, b, n)
    vals = [parse_phase(p) for p in s.split(",") if p.strip()]
    if not vals:
        raise ValueError("empty grid")
    return np.asarray(vals)


def parse_float_grid(text: str):
    s = str(text).strip()
    if ":" in s:
        parts = s.split(":")
        if len(parts) not in (3, 4):
            raise ValueError("grid must be start:stop:count[:log]")
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise ValueError("grid count must be >= 1")
        if len(parts) == 4:
            if parts[3] != "log":
                raise ValueError(f"unknown grid spacing {parts[3]!r}")
            if a <= 0 or b <= 0:
                raise ValueError("log grid needs positive endpoints")
            return np.logspace(np.log10(a), np.log10(b), n)
        return np.linspace(a, b, n)
    vals = [float(p) for p in s.split(",") if p.strip()]
    if not vals:
        raise ValueError("empty grid")
    return np.asarray(vals)


def _parse_floats(text: str):
    return tuple(float(p) for p in str(text).split(",") if p.strip())


def _parse_int(text: str) -> int:
    return int(str(text).strip())


def _parse_workers(text: str):
    s = str(text).strip()
    if s in ("", "auto"):
        return None
    n = int(s)
    if n < 1:
        raise ValueError("workers must be >= 1 or 'auto'")
    return n


class _Field:
    def __init__(self, parser, default=None, required=False, help=""):
        self.parser = parser
        self.default = default
        self.required = required
        self.help = help


_COMMON = {
    "sites": _Field(_parse_int, "3", help="ring sites M"),
    "atoms": _Field(_parse_int, required=True, help="atom count N"),
    "bond-factors": _Field(
        _parse_floats, help="comma list of per-bond multiplicative J factors"
    ),
    "dim-cap": _Field(
        _parse_int, str(DEFAULT_DIMENSION_CAP), help="basis dimension cap"
    ),
    "workers": _Field(_parse_workers, "auto", help="parallel workers or 'auto'"),
    "out": _Field(str, required=True, help="output file path"),
}

_FIELDS = {
    "spectrum-scan": {
        **_COMMON,
        "u-over-j": _Field(float, required=True, help="interaction over base tunneling"),
        "levels": _Field(_parse_int, "4", help="number of levels per grid point"),
        "phi-grid": _Field(parse_phase_grid, "0:2pi/3:241", help="phase grid"),
    },
    "flow-dist": {
        **_COMMON,
        "u-over-j": _Field(float, required=True),
        "phi": _Field(parse_phase, "pi/3", help="twist phase"),
    },
    "cat-scan": {
        **_COMMON,
        "j-over-u-grid": _Field(parse_float_grid, required=True, help="J/U grid"),
        "phi": _Field(parse_phase, "pi/3"),
    },
    "ramp": {
        **_COMMON,
        "target-j-over-u": _Field(float, required=True, help="final J/U of stage 3"),
        "stage-durations": _Field(
            _parse_floats, "50,50,50", help="three stage durations in hbar/U"
        ),
        "ramp-shape": _Field(str, "smooth", help="'smooth' or 'linear'"),
        "smooth-chunks": _Field(_parse_int, "32", help="linear chunks per smooth ramp"),
        "steps-per-segment": _Field(_parse_int, "64", help="time steps per segment"),
    },
    "witness": {
        **_COMMON,
        "u-over-j": _Field(float, required=True),
        "phi": _Field(parse_phase, "pi/3"),
        "restarts": _Field(_parse_int, "32", help="optimizer restarts"),
        "seed": _Field(_parse_int, "7", help="restart-draw seed"),
    },
    "anticrossing": {
        **_COMMON,
        "u-over-j": _Field(float, required=True),
        "bracket": _Field(str, "", help="phase bracket lo:hi (default around pi/3)"),
        "tol": _Field(float, "1e-6", help="phase tolerance in radians"),
    },
}


def load_config_file(path: str) -> dict:
    """Key = value file mirroring the long options; '#' starts a comment."""
    raw = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = stripped.split("=", 1)
            key, value = key.strip(), value.strip()
            if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
                value = value[1:-1]
            raw[key] = value
    return raw


def _resolve(subcommand: str, cli_values: dict, config_path: str | None):
    fields = _FIELDS[subcommand]
    file_values = load_config_file(config_path) if config_path else {}
    errors = [
        f"unknown config key {k!r}" for k in sorted(file_values) if k not in fields
    ]
    resolved = {}
    for name, spec in fields.items():
        raw = cli_values.get(name)
        if raw is None:
            raw = file_values.get(name, spec.default)
        if raw is None:
            if spec.required:
                errors.append(f"missing required option --{name}")
            else:
                resolved[name] = None
            continue
        try:
            resolved[name] = spec.parser(raw)
        except (ValueError, TypeError) as e:
            errors.append(f"--{name}: {e}")
    if not errors:
        errors.extend(_cross_validate(subcommand, resolved))
    if errors:
        raise ConfigError("; ".join(errors))
    return resolved


def _cross_validate(subcommand: str, r: dict):
    errors = []
    M = r.get("sites")
    if M is not None and M < 2:
        errors.append("--sites: need at least 2")
    if r.get("atoms") is not None and r["atoms"] < 1:
        errors.append("--atoms: need at least 1")
    if r.get("bond-factors") is None:
        r["bond-factors"] = (1.0,) * (M or 0)
    elif M is not None and len(r["bond-factors"]) != M:
        errors.append(
            f"--bond-factors: expected {M} comma-separated factors, "
            f"got {len(r['bond-factors'])}"
        )
    if r.get("u-over-j") is not None and r["u-over-j"] < 0:
        errors.append("--u-over-j: must be non-negative")
    if r.get("levels") is not None and r["levels"] < 1:
        errors.append("--levels: must be >= 1")
    if r.get("restarts") is not None and r["restarts"] < 1:
        errors.append("--restarts: must be >= 1")
    if subcommand == "ramp":
        if r.get("target-j-over-u") is not None and r["target-j-over-u"] <= 0:
            errors.append("--target-j-over-u: must be positive")
        if r.get("stage-durations") is not None and (
            len(r["stage-durations"]) != 3 or any(d <= 0 for d in r["stage-durations"])
        ):
            errors.append("--stage-durations: need three positive values")
        if r.get("ramp-shape") not in (None, "smooth", "linear"):
            errors.append("--ramp-shape: must be 'smooth' or 'linear'")
    if subcommand == "anticrossing":
        if r.get("bracket"):
            try:
                lo, hi = (parse_phase(p) for p in r["bracket"].split(":"))
                if hi <= lo:
                    errors.append("--bracket: hi must exceed lo")
                r["bracket"] = (lo, hi)
            except ValueError as e:
                errors.append(f"--bracket: {e}")
        else:
            r["bracket"] = (np.pi / 3 - 0.3, np.pi / 3 + 0.3)
        if r.get("tol") is not None and r["tol"] <= 0:
            errors.append("--tol: must be positive")
    return errors


def _fmt(x) -> str:
    if isinstance(x, (bool, int, np.integer)):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return f"{x:.17g}"
    if isinstance(x, (tuple, list, np.ndarray)):
        return ",".join(_fmt(v) for v in x)
    return str(x)


# execution details that do not determine the emitted values; kept out of
# the header so runs differing only in these stay byte-comparable
_NON_DATA_KEYS = ("out", "workers")


def _meta_lines(subcommand: str, resolved: dict):
    lines = [f"# ringcat {__version__}", f"# subcommand: {subcommand}"]
    for key in sorted(resolved):
        val = resolved[key]
        if val is None or key in _NON_DATA_KEYS:
            continue
        if key == "phi-grid" and len(val) > 8:
            desc = f"{_fmt(val[0])}..{_fmt(val[-1])} ({len(val)} points)"
        elif key == "j-over-u-grid" and len(val) > 8:
            desc = f"{_fmt(val[0])}..{_fmt(val[-1])} ({len(val)} points)"
        else:
            desc = _fmt(val)
        lines.append(f"# {key}: {desc}")
    return lines


def write_csv(path: str, subcommand: str, resolved: dict, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in _meta_lines(subcommand, resolved):
            fh.write(line + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _ring_params(r: dict, U: float, phi: float) -> RingParams:
    M = r["sites"]
    return RingParams(
        M=M,
        N=r["atoms"],
        U=U,
        J=tuple(f for f in r["bond-factors"]),
        phi=(phi,) * M,
    )


def _cmd_spectrum_scan(r: dict) -> None:
    k = r["levels"]
    params = _ring_params(r, U=r["u-over-j"], phi=0.0)
    scan = phase_scan(params, r["phi-grid"], k, workers=r["workers"])
    header = ["phi_rad", "phi_in_2pi_over_3"] + [f"E{i}" for i in range(k)]
    unit = 2.0 * np.pi / 3.0
    rows = (
        (phi, phi / unit) + tuple(levels)
        for phi, levels in zip(scan.phis, scan.levels)
    )
    write_csv(r["out"], "spectrum-scan", r, header, rows)


def _cmd_flow_dist(r: dict) -> None:
    params = _ring_params(r, U=r["u-over-j"], phi=r["phi"])
    basis = build_basis(params.M, params.N, dim_cap=r["dim-cap"])
    spec = lowest_eigenpairs(build_site_hamiltonian(params, basis), min(2, basis.dimension))
    from .dynamics import ground_state_representative

    ground = ground_state_representative(spec, basis)
    dist = flow_distribution(ground, basis)
    rows = [key + (p,) for key, p in sorted(dist.probabilities.items())]
    write_csv(r["out"], "flow-dist", r, ["n_beta", "n_gamma", "probability"], rows)


def _cmd_cat_scan(r: dict) -> None:
    template = _ring_params(r, U=1.0, phi=r["phi"])
    rows = cat_scan_static(template, r["j-over-u-grid"], r["phi"], workers=r["workers"])
    write_csv(
        r["out"], "cat-scan", r, ["j_over_u", "cat_fidelity", "theta_opt", "gap"], rows
    )


def _cmd_ramp(r: dict) -> None:
    template = _ring_params(r, U=1.0, phi=0.0)
    trace = preparation_protocol(
        template,
        durations=r["stage-durations"],
        target_j_over_u=r["target-j-over-u"],
        ramp_shape=r["ramp-shape"],
        smooth_chunks=r["smooth-chunks"],
        steps_per_segment=r["steps-per-segment"],
    )
    rows = zip(
        trace.times,
        trace.norm_errors,
        trace.gs_overlaps,
        trace.cat_fidelities,
        trace.energies,
    )
    write_csv(
        r["out"], "ramp", r, ["t", "norm_error", "gs_overlap", "cat_fidelity", "energy"], rows
    )


def _cmd_witness(r: dict) -> None:
    params = _ring_params(r, U=r["u-over-j"], phi=r["phi"])
    report = minimize_separable_energy(
        params, restarts=r["restarts"], seed=r["seed"], workers=r["workers"]
    )
    resolved = {
        k: v
        for k, v in sorted(r.items())
        if v is not None and k not in _NON_DATA_KEYS
    }
    payload = {
        "e_ground": report.e_ground,
        "e_sep_min": report.e_sep_min,
        "margin": report.margin,
        "certified": report.certified,
        "argmin_amplitudes": [
            [float(a.real), float(a.imag)] for a in report.argmin.amplitudes
        ],
        "seed": report.seed,
        "restarts_converged": report.restarts_converged,
        "meta": {
            "version": __version__,
            "subcommand": "witness",
            "config": {k: _fmt(v) for k, v in resolved.items()},
        },
    }
    write_json(r["out"], payload)


def _cmd_anticrossing(r: dict) -> None:
    params = _ring_params(r, U=r["u-over-j"], phi=0.0)
    phi_star, gap = find_anticrossing(params, bracket=r["bracket"], tol=r["tol"])
    unit = 2.0 * np.pi / 3.0
    write_csv(
        r["out"],
        "anticrossing",
        r,
        ["phi_star_rad", "phi_star_in_2pi_over_3", "gap"],
        [(phi_star, phi_star / unit, gap)],
    )


_DISPATCH = {
    "spectrum-scan": _cmd_spectrum_scan,
    "flow-dist": _cmd_flow_dist,
    "cat-scan": _cmd_cat_scan,
    "ramp": _cmd_ramp,
    "witness": _cmd_witness,
    "anticrossing": _cmd_anticrossing,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringcat",
        description="Exact diagonalization of bosons on a twisted ring lattice.",
    )
    parser.add_argument("--version", action="version", version=f"ringcat {__version__}")
    subs = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    for name, fields in _FIELDS.items():
        sp = subs.add_parser(name)
        sp.add_argument("--config", default=None, help="key = value config file")
        for fname, spec in fields.items():
            sp.add_argument(f"--{fname}", default=None, help=spec.help, type=str)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return _CONFIG_EXIT
    cli_values = {
        name: getattr(args, name.replace("-", "_"))
        for name in _FIELDS[args.subcommand]
    }
    try:
        resolved = _resolve(args.subcommand, cli_values, args.config)
        _DISPATCH[args.subcommand](resolved)
    except (
        ConfigError,
        DomainError,
        SizingError,
        UnsupportedConfigurationError,
        ContractError,
    ) as e:
        print(f"error: config: {e}", file=sys.stderr)
        return _CONFIG_EXIT
    except (
        ConvergenceError,
        BracketingError,
        OptimizationError,
        NumericalIntegrityError,
    ) as e:
        print(f"error: numerical: {e}", file=sys.stderr)
        return _NUMERICAL_EXIT
    except OSError as e:
        print(f"error: io: {e}", file=sys.stderr)
        return _IO_EXIT
    except RingcatError as e:  # safety net for future error classes
        print(f"error: {e}", file=sys.stderr)
        return _CONFIG_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
