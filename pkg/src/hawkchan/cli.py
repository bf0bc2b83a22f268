"""Command-line frontend.

Subcommands: ``geometry`` (geometry -> squeezing), ``channel``
(single-channel evaluation), ``protocol`` (superposition vs classical
mixture), ``phase`` (opposite-phase superposition), ``sweep``
(figure-reproduction grids to CSV/JSON).

Values may come from a JSON config file (``--config``); explicit flags
override it.  Reports print as human-readable text or, with
``--format json``, as a JSON object with sorted keys that echoes the
effective configuration under ``"config"``.

Exit codes: 0 success, 2 usage error, 1 internal invariant violation.
All angles are radians.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

import numpy as np

from . import metrics, protocol
from .channel import (
    BlackHoleGeometry,
    ChannelParams,
    channel_output_closed_form,
    kraus_pair,
    squeezing_from_geometry,
)
from .sweep import METRICS, SweepSpec, emit_csv, emit_json, run_sweep


class UsageError(Exception):
    """Bad invocation: unknown flag, missing value, out-of-domain input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"value must be finite, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {value}")
    return value


# Per-subcommand parameter tables: name -> (type, default, required).
# Defaults are applied after the config-file merge, so the parser itself
# always uses None as the "not provided" sentinel.
_PARAMS = {
    "geometry": {
        "mass": (_finite_float, None, True),
        "radius": (_finite_float, None, True),
        "k0": (_finite_float, None, True),
        "hbar": (_finite_float, 1.0, False),
    },
    "channel": {
        "r": (_finite_float, None, True),
        "phi": (_finite_float, 0.0, False),
        "state": (str, "bell", False),
    },
    "protocol": {
        "r1": (_finite_float, None, True),
        "r2": (_finite_float, None, True),
        "phi1": (_finite_float, 0.0, False),
        "phi2": (_finite_float, 0.0, False),
    },
    "phase": {
        "r": (_finite_float, None, True),
    },
    "sweep": {
        "metric": (str, None, True),
        "resolution": (_positive_int, 101, False),
        "min": (_finite_float, 0.0, False),
        "max": (_finite_float, math.pi / 4, False),
        "out": (str, None, True),
        "format": (str, "csv", False),
    },
}


def _build_parser() -> _Parser:
    # --format and --config are accepted both before and after the
    # subcommand; the post-subcommand occurrence wins.
    parser = _Parser(prog="hawkchan", description=__doc__.splitlines()[0])
    parser.add_argument("--format", type=str, default=None, dest="global_format")
    parser.add_argument("--config", type=str, default=None, dest="global_config")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    for name, params in _PARAMS.items():
        p = sub.add_parser(name, prog=f"hawkchan {name}")
        for flag, (ftype, _, _) in params.items():
            if name == "sweep" and flag == "metric":
                p.add_argument("--metric", type=str, choices=METRICS, default=None)
            elif name == "sweep" and flag == "format":
                p.add_argument("--format", type=str, choices=("csv", "json"), default=None)
            elif name == "channel" and flag == "state":
                p.add_argument("--state", type=str, choices=("bell",), default=None)
            else:
                p.add_argument(f"--{flag}", type=ftype, default=None)
        if name != "sweep":
            p.add_argument("--format", type=str, choices=("human", "json"), default=None)
        p.add_argument("--config", type=str, default=None)
    return parser


def load_config(path: str) -> dict:
    """Read a JSON config file; returns a flat flag-name -> value mapping."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path!r}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"--config: malformed JSON in {path!r} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        )
    if not isinstance(data, dict):
        raise UsageError(f"--config: {path!r} must contain a JSON object")
    return data


def _merge_config(subcommand: str, args: argparse.Namespace) -> dict:
    """Resolve effective values: explicit flag > config file > default."""
    params = dict(_PARAMS[subcommand])
    if subcommand != "sweep":
        params["format"] = (str, "human", False)
    if args.format is None:
        args.format = args.global_format
    config_path = args.config if args.config is not None else args.global_config
    config = load_config(config_path) if config_path is not None else {}

    for key in config:
        if key == "subcommand":
            if config[key] != subcommand:
                raise UsageError(
                    f"--config: subcommand {config[key]!r} does not match {subcommand!r}"
                )
            continue
        if key not in params:
            raise UsageError(f"--config: unknown key {key!r} for subcommand {subcommand!r}")

    effective = {"subcommand": subcommand}
    for flag, (ftype, default, required) in params.items():
        value = getattr(args, flag)
        if value is None and flag in config:
            raw = config[flag]
            try:
                value = ftype(raw) if isinstance(raw, str) else ftype(str(raw))
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"--config: key {flag!r}: {exc}")
        if value is None:
            value = default
        if value is None and required:
            raise UsageError(f"--{flag} is required for {subcommand!r}")
        effective[flag] = value

    fmt = effective.get("format")
    if subcommand == "sweep":
        if fmt not in ("csv", "json"):
            raise UsageError(f"--format: expected csv or json, got {fmt!r}")
    elif fmt not in ("human", "json"):
        raise UsageError(f"--format: expected human or json, got {fmt!r}")
    if subcommand == "channel" and effective["state"] != "bell":
        raise UsageError(f"--state: only 'bell' is supported, got {effective['state']!r}")
    if subcommand == "sweep" and effective["metric"] not in METRICS:
        raise UsageError(f"--metric: expected one of {METRICS}, got {effective['metric']!r}")
    return effective


def _matrix_payload(arr: Optional[np.ndarray]):
    """Complex matrix as nested [real, imag] pairs (JSON has no complex type)."""
    if arr is None:
        return None
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(arr)]


def _channel_params(cfg: dict, r_key: str, phi_key: Optional[str]) -> ChannelParams:
    phi = cfg[phi_key] if phi_key is not None else 0.0
    try:
        return ChannelParams(r=cfg[r_key], phi=phi)
    except ValueError as exc:
        raise UsageError(f"--{r_key}/--{phi_key or 'phi'}: {exc}")


def _run_geometry(cfg: dict) -> dict:
    try:
        geometry = BlackHoleGeometry(
            mass=cfg["mass"], radius=cfg["radius"], k0=cfg["k0"], hbar=cfg["hbar"]
        )
    except ValueError as exc:
        raise UsageError(f"--mass/--radius/--k0/--hbar: {exc}")
    params = squeezing_from_geometry(geometry)
    return {
        "r": params.r,
        "f0": geometry.redshift_factor,
        "kappa": geometry.surface_gravity,
        "horizon_radius": geometry.horizon_radius,
    }


def _run_channel(cfg: dict) -> dict:
    params = _channel_params(cfg, "r", "phi")
    pair = kraus_pair(params)
    output = protocol.classical_scenario(params)
    closed = math.cos(params.r) ** 2 / 2.0
    report = metrics.report_for_state(output, closed_form=closed)
    return {
        "kraus_m0": _matrix_payload(pair.m0),
        "kraus_m1": _matrix_payload(pair.m1),
        "output_state": _matrix_payload(output),
        "closed_form_state": _matrix_payload(channel_output_closed_form(params)),
        "negativity": report.negativity_numeric,
        "negativity_closed_form": report.negativity_closed_form,
        "coherent_information": report.coherent_information,
        "ppt": report.ppt,
    }


def _run_protocol(cfg: dict) -> dict:
    p1 = _channel_params(cfg, "r1", "phi1")
    p2 = _channel_params(cfg, "r2", "phi2")
    run_cfg = protocol.ProtocolConfig(p1, p2)
    stats = protocol.measure_control(run_cfg)
    mixture = protocol.classical_mixture(run_cfg)
    branches = [(stats.p_plus, stats.rho_plus), (stats.p_minus, stats.rho_minus)]
    payload = {
        "a_scalar": stats.a_scalar,
        "b_scalar": stats.b_scalar,
        "c_scalar": stats.c_scalar,
        "p_plus": stats.p_plus,
        "p_minus": stats.p_minus,
        "rho_plus": _matrix_payload(stats.rho_plus),
        "rho_minus": _matrix_payload(stats.rho_minus),
        "negativity_avg": metrics.average_branch_negativity(branches),
        "negativity_mixture": metrics.negativity(mixture),
        "negativity_mixture_closed": metrics.negativity_mixture_closed(p1.r, p2.r),
        "negativity_convex_avg": metrics.negativity_convex_avg(p1.r, p2.r),
        "coherent_info_ensemble": metrics.ensemble_coherent_information(branches),
        "coherent_info_plus_branch": metrics.coherent_information(stats.rho_plus),
        "coherent_info_mixture": metrics.coherent_information(mixture),
    }
    # The closed form assumes equal phases; suppress it otherwise.
    payload["negativity_avg_closed"] = (
        metrics.negativity_avg_closed(p1.r, p2.r) if p1.phi == p2.phi else None
    )
    return payload


def _run_phase(cfg: dict) -> dict:
    try:
        stats = protocol.phase_protocol(cfg["r"])
    except ValueError as exc:
        raise UsageError(f"--r: {exc}")
    branches = [(stats.p_plus, stats.rho_plus), (stats.p_minus, stats.rho_minus)]
    single = protocol.classical_scenario(ChannelParams(cfg["r"]))
    return {
        "p_plus": stats.p_plus,
        "p_minus": stats.p_minus,
        "rho_plus": _matrix_payload(stats.rho_plus),
        "rho_minus": _matrix_payload(stats.rho_minus),
        "negativity_plus": metrics.negativity(stats.rho_plus),
        "negativity_avg": metrics.average_branch_negativity(branches),
        "negativity_avg_closed": metrics.phase_avg_negativity(cfg["r"]),
        "negativity_single_channel": metrics.negativity(single),
    }


def _run_sweep(cfg: dict) -> None:
    try:
        spec = SweepSpec(
            metric=cfg["metric"],
            r1_range=(cfg["min"], cfg["max"]),
            r2_range=(cfg["min"], cfg["max"]),
            resolution=cfg["resolution"],
        )
    except ValueError as exc:
        raise UsageError(f"--metric/--min/--max/--resolution: {exc}")
    grid = run_sweep(spec)
    destination = None if cfg["out"] == "-" else cfg["out"]
    try:
        if cfg["format"] == "csv":
            emit_csv(grid, destination)
        else:
            emit_json(grid, destination)
    except OSError as exc:
        raise UsageError(f"--out: {exc}")


def _print_human(payload: dict, stream) -> None:
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list):  # matrix as nested [re, im] pairs
            stream.write(f"{key}:\n")
            for row in value:
                cells = ", ".join(f"{re!r}{im:+}j" for re, im in row)
                stream.write(f"  [{cells}]\n")
        elif isinstance(value, float):
            stream.write(f"{key} = {value!r}\n")
        else:
            stream.write(f"{key} = {value}\n")


_HANDLERS = {
    "geometry": _run_geometry,
    "channel": _run_channel,
    "protocol": _run_protocol,
    "phase": _run_phase,
}


def run(argv=None, stdout=None) -> int:
    """Parse ``argv``, execute the subcommand, and return the exit code."""
    stream = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand is None:
            raise UsageError("a subcommand is required (geometry, channel, protocol, phase, sweep)")
        effective = _merge_config(args.subcommand, args)
        if args.subcommand == "sweep":
            _run_sweep(effective)
            return 0
        payload = _HANDLERS[args.subcommand](effective)
        if effective["format"] == "json":
            payload["config"] = effective
            stream.write(json.dumps(payload, sort_keys=True) + "\n")
        else:
            _print_human(payload, stream)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # library invariant violations and I/O failures
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
