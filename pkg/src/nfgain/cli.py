"""Command-line front end.

Subcommands: gain (single evaluation), sweep (element count or aperture
area), ratio (reactive/radiating ratio versus aperture for several
distances), limits (closed-form limit values for the configuration), and
verify (the self-verification suite).

Exit codes: 0 success, 1 validation error, 2 verification failure,
3 quadrature tolerance not reached.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .closed_forms import (
    cap_asymptotic,
    ratio_spd,
    ratio_spd_threshold,
    ula_asymptotic,
    upa_asymptotic,
)
from .config import ScenarioConfig, dump_config, load_config
from .discrete import far_field_gain, spd_gain_sum
from .quadrature import QuadratureSpec, cap_gain_integral
from .sweeps import (
    aperture_sweep,
    elements_sweep,
    format_csv,
    make_record,
    ratio_sweep,
    validate_csv,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_UNCONVERGED = 3

_ARRAY_FLAG_TO_KIND = {"spd-upa": "spd_upa", "spd-ula": "spd_ula", "cap": "cap"}


def _add_scenario_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--array", choices=sorted(_ARRAY_FLAG_TO_KIND), help="array kind")
    parser.add_argument("--r", type=float, help="user distance in meters")
    parser.add_argument("--theta", type=float, help="elevation angle in radians")
    parser.add_argument("--phi", type=float, help="azimuth angle in radians")
    parser.add_argument("--d", type=float, help="element spacing in meters")
    parser.add_argument(
        "--lambda", dest="wavelength", type=float, help="wavelength in meters"
    )
    parser.add_argument("--area", type=float, help="element area in square meters")
    parser.add_argument("--factor", type=float, help="radiation factor eta/(8 R_rad)")
    parser.add_argument(
        "--tol", type=float, help="quadrature relative tolerance (default 1e-9)"
    )


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    config = load_config(args.config) if args.config else ScenarioConfig()
    if args.array is not None:
        config.array_kind = _ARRAY_FLAG_TO_KIND[args.array]
    for flag, field in (
        ("r", "r"),
        ("theta", "theta"),
        ("phi", "phi"),
        ("d", "d"),
        ("wavelength", "wavelength"),
        ("area", "element_area"),
        ("factor", "radiation_factor"),
    ):
        value = getattr(args, flag)
        if value is not None:
            setattr(config, field, value)
    config.validate_kind()
    return config


def _quad_spec(args: argparse.Namespace) -> QuadratureSpec | None:
    return QuadratureSpec(rel_tol=args.tol) if args.tol is not None else None


def _print_table(rows: list[tuple[str, str]]) -> None:
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")


def _write_csv(text: str, out_path: str | None) -> None:
    validate_csv(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_gain(args: argparse.Namespace) -> int:
    config = _scenario(args)
    user = config.user()
    medium = config.medium()
    reactive = not args.no_reactive
    unconverged = False

    if config.array_kind == "cap":
        side_x = args.lx if args.lx is not None else 25 * config.d
        side_z = args.lz if args.lz is not None else 25 * config.d
        aperture = config.cap_aperture(side_x, side_z)
        spec = _quad_spec(args)
        rad_res = cap_gain_integral(aperture, user, medium, spec, include_reactive=False)
        gain_rad = rad_res.value
        unconverged = not rad_res.converged
        if reactive:
            eva_res = cap_gain_integral(aperture, user, medium, spec, include_reactive=True)
            gain_eva = eva_res.value
            unconverged = unconverged or not eva_res.converged
        else:
            gain_eva = gain_rad
        area = aperture.area
        gain_far = (
            medium.radiation_factor
            * user.cosines.big_psi
            * area
            / (4.0 * math.pi * user.r**2)
        )
        limit_eva = cap_asymptotic(user, medium, True).value
        limit_rad = cap_asymptotic(user, medium, False).value
        var_name, var_value = "aperture", area
        size_line = f"cap {aperture.l_x:g} m x {aperture.l_z:g} m (area {area:g} m^2)"
    else:
        linear = config.array_kind == "spd_ula"
        m_x = args.mx if args.mx is not None else 25
        m_z = 1 if linear else (args.mz if args.mz is not None else 25)
        array = config.spd_array(m_x, m_z)
        gain_rad = spd_gain_sum(array, user, medium, include_reactive=False)
        gain_eva = (
            spd_gain_sum(array, user, medium, include_reactive=True)
            if reactive
            else gain_rad
        )
        gain_far = far_field_gain(array, user, medium)
        if linear:
            limit_eva = ula_asymptotic(user, medium, config.d, config.element_area, True).value
            limit_rad = ula_asymptotic(user, medium, config.d, config.element_area, False).value
        else:
            limit_eva = upa_asymptotic(user, medium, config.mu_oc, True).value
            limit_rad = upa_asymptotic(user, medium, config.mu_oc, False).value
        var_name, var_value = "elements", float(array.m_total)
        size_line = f"{config.array_kind} {array.m_x} x {array.m_z}, d = {config.d:g} m"

    ratio = gain_eva / gain_rad
    _print_table(
        [
            ("array", size_line),
            ("user", f"r = {config.r:g} m, theta = {config.theta:g}, phi = {config.phi:g}"),
            ("gain_eva", f"{gain_eva:.12e}"),
            ("gain_rad", f"{gain_rad:.12e}"),
            ("gain_far", f"{gain_far:.12e}"),
            ("limit_eva", f"{limit_eva:.12e}"),
            ("limit_rad", f"{limit_rad:.12e}"),
            ("ratio_eva_rad", f"{ratio:.12f}"),
            ("ratio_db", f"{10.0 * math.log10(ratio):.6e} dB"),
        ]
    )
    if args.out:
        record = make_record(
            var_name, var_value, gain_eva, gain_rad, gain_far, limit_eva, limit_rad
        )
        _write_csv(format_csv([record]), args.out)
    if unconverged:
        print("warning: quadrature tolerance not reached", file=sys.stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _scenario(args)
    if args.var == "elements":
        records = elements_sweep(config, int(args.min), int(args.max), args.steps)
        converged = True
    else:
        if config.array_kind != "cap":
            raise ValueError("aperture sweep requires --array cap")
        records, converged = aperture_sweep(
            config, args.min, args.max, args.steps, _quad_spec(args)
        )
    _write_csv(format_csv(records), args.out)
    if not converged:
        print("warning: quadrature tolerance not reached", file=sys.stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_ratio(args: argparse.Namespace) -> int:
    config = _scenario(args)
    distances = [float(tok) for tok in args.distances.split(",") if tok]
    if not distances:
        raise ValueError("--distances must name at least one distance in meters")
    records, converged = ratio_sweep(
        config, args.amin, args.amax, args.steps, distances, _quad_spec(args)
    )
    _write_csv(format_csv(records), args.out)
    if not converged:
        print("warning: quadrature tolerance not reached", file=sys.stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_limits(args: argparse.Namespace) -> int:
    config = _scenario(args)
    user = config.user()
    medium = config.medium()
    ratio = ratio_spd(user, medium)
    _print_table(
        [
            ("upa_eva", f"{upa_asymptotic(user, medium, config.mu_oc, True).value:.12e}"),
            ("upa_rad", f"{upa_asymptotic(user, medium, config.mu_oc, False).value:.12e}"),
            ("cap_eva", f"{cap_asymptotic(user, medium, True).value:.12e}"),
            ("cap_rad", f"{cap_asymptotic(user, medium, False).value:.12e}"),
            (
                "ula_eva",
                f"{ula_asymptotic(user, medium, config.d, config.element_area, True).value:.12e}",
            ),
            (
                "ula_rad",
                f"{ula_asymptotic(user, medium, config.d, config.element_area, False).value:.12e}",
            ),
            ("ratio_spd", f"{ratio:.12f}"),
            ("ratio_spd_db", f"{10.0 * math.log10(ratio):.6e} dB"),
            ("ratio_threshold_rpsi", f"{ratio_spd_threshold(medium):.12e} m"),
        ]
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_verification(perturb_n5=args.perturb)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'}  {res.name}: {res.detail}")
    summary = {
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "checks": {r.name: r.passed for r in results},
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK if summary["failed"] == 0 else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfgain",
        description="Near-field channel gain of discrete arrays and continuous "
        "apertures, with reactive-field terms",
    )
    parser.add_argument(
        "--defaults",
        action="store_true",
        help="print the default configuration as JSON and exit",
    )
    sub = parser.add_subparsers(dest="command")

    p_gain = sub.add_parser("gain", help="evaluate one scenario")
    _add_scenario_args(p_gain)
    p_gain.add_argument("--mx", type=int, help="elements along x (default 25)")
    p_gain.add_argument("--mz", type=int, help="elements along z (default 25; 1 for spd-ula)")
    p_gain.add_argument("--lx", type=float, help="aperture x-size in meters (cap)")
    p_gain.add_argument("--lz", type=float, help="aperture z-size in meters (cap)")
    p_gain.add_argument(
        "--no-reactive",
        action="store_true",
        help="drop the reactive terms (gain_eva then repeats the radiating value)",
    )
    p_gain.add_argument("--out", help="also write the result as a CSV row")
    p_gain.set_defaults(func=cmd_gain)

    p_sweep = sub.add_parser("sweep", help="sweep element count or aperture area")
    _add_scenario_args(p_sweep)
    p_sweep.add_argument("--var", choices=("elements", "aperture"), required=True)
    p_sweep.add_argument(
        "--min", type=float, required=True, help="first value (per-axis count or area)"
    )
    p_sweep.add_argument("--max", type=float, required=True, help="last value")
    p_sweep.add_argument("--steps", type=int, default=25, help="log-spaced steps")
    p_sweep.add_argument("--out", help="CSV output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_ratio = sub.add_parser(
        "ratio", help="reactive/radiating ratio versus aperture area"
    )
    _add_scenario_args(p_ratio)
    p_ratio.add_argument("--amin", type=float, default=0.1, help="first aperture area, m^2")
    p_ratio.add_argument("--amax", type=float, default=1e4, help="last aperture area, m^2")
    p_ratio.add_argument("--steps", type=int, default=20, help="log-spaced steps")
    p_ratio.add_argument(
        "--distances", default="1,5,25", help="comma-separated user distances in meters"
    )
    p_ratio.add_argument("--out", help="CSV output path (default stdout)")
    p_ratio.set_defaults(func=cmd_ratio)

    p_limits = sub.add_parser("limits", help="print the closed-form limit values")
    _add_scenario_args(p_limits)
    p_limits.set_defaults(func=cmd_limits)

    p_verify = sub.add_parser("verify", help="run the self-verification suite")
    _add_scenario_args(p_verify)
    p_verify.add_argument(
        "--perturb",
        type=float,
        default=1.0,
        help="multiply the order-5 kernel path by this factor (mutation sanity)",
    )
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.defaults:
        print(dump_config(ScenarioConfig()))
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
