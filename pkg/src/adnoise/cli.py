"""Command-line front end.

Subcommands: levels | spectrum | pink | validate | sweep.  Every output file
embeds the config hash and package version; runs are deterministic given
(config, seed).  Exit codes: 0 success, 1 validation failure, 2 physics or
solver error, 3 capacity/config error.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from . import basis as basis_mod
from . import master as master_mod
from . import spectrum as spectrum_mod
from . import validate as validate_mod
from .config import load_config
from .errors import (
    AdnoiseError,
    CapacityError,
    ConvergenceError,
    DomainError,
    InsufficientLevelsError,
    InvalidParametersError,
)
from .potential import (
    anharmonic_shift,
    coverage_parameter,
    harmonic_frequency,
    solve_bound_states,
)

EXIT_VALIDATION = 1
EXIT_PHYSICS = 2
EXIT_CAPACITY = 3

OUT_ENV_VAR = "ADNOISE_OUT"


def _fmt(x):
    return format(float(x), ".17g")


def _write_csv(path, header_cols, rows, meta):
    lines = [f"# {k}={v}" for k, v in meta.items()]
    lines.append(",".join(header_cols))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_json(path, payload, meta):
    payload = dict(payload)
    payload.update(meta)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _meta(cfg):
    return {"config_hash": cfg.content_hash(), "version": __version__}


def _solve_levels(cfg):
    return solve_bound_states(cfg.potential, cfg.material,
                              max_levels=cfg.levels_m)


def cmd_levels(cfg, out_dir, args):
    levels = _solve_levels(cfg)
    w0 = harmonic_frequency(cfg.potential)
    delta = anharmonic_shift(cfg.potential)
    cov = coverage_parameter(cfg.potential, cfg.material)

    payload = levels.to_dict()
    payload.update({"omega0": w0, "delta": delta, "coverage": cov})
    _write_json(os.path.join(out_dir, "levels.json"), payload, _meta(cfg))

    print(f"bound levels retained: {levels.count}")
    print(f"omega0 = {w0:.6e} 1/s   delta = {delta:.6e} 1/s")
    flag = " (correlated regime)" if cov >= 1 else ""
    print(f"coverage parameter = {cov:.4f}{flag}")
    print(f"{'mu':>3} {'E (meV)':>12} {'d (debye)':>12} {'Gamma0[mu,mu+1] (1/s)':>22}")
    for mu in range(levels.count):
        g = levels.rates[mu, mu + 1] if mu + 1 < levels.count else float("nan")
        print(f"{mu:>3} {levels.energies[mu]:>12.4f} "
              f"{levels.dipoles[mu]:>12.5f} {g:>22.6e}")
    return 0


def _spectrum_point(cfg, levels, n, ratio, out_dir, top_k):
    th = master_mod.ThermalParams(temperature_ratio=ratio,
                                  omega0=levels.omega(0, 1))
    b = basis_mod.enumerate_basis(n, levels.count)
    rm = master_mod.build_rate_matrix(b, levels, th,
                                      transition_set=cfg.transition_set)
    ed = master_mod.decompose(rm)
    sd = spectrum_mod.lorentzian_weights(
        ed, b, levels, extra_provenance={"temperature_ratio": ratio})
    gamma0 = levels.rates[0, 1]
    omegas = cfg.frequency_grid.omegas(gamma0)
    s = spectrum_mod.evaluate_spectrum(sd, omegas)

    tag = f"N{n}_T{ratio:g}"
    meta = _meta(cfg)
    _write_json(os.path.join(out_dir, f"decomposition_{tag}.json"),
                sd.to_dict(), meta)
    _write_csv(os.path.join(out_dir, f"spectrum_{tag}.csv"),
               ["omega_per_s", "omega_over_Gamma0", "S_debye2_s"],
               zip(omegas, omegas / gamma0, s), meta)
    if top_k:
        st = spectrum_mod.evaluate_spectrum(sd.truncated(top_k), omegas)
        _write_csv(os.path.join(out_dir, f"spectrum_{tag}_top{top_k}.csv"),
                   ["omega_per_s", "omega_over_Gamma0", "S_debye2_s"],
                   zip(omegas, omegas / gamma0, st), meta)
    # per-adatom white-noise row for the summary table
    return n, ratio, spectrum_mod.evaluate_spectrum(sd, 0.0)


def cmd_spectrum(cfg, out_dir, args, threads=1):
    levels = _solve_levels(cfg)
    points = [(n, t) for n in cfg.patch_sizes for t in cfg.temperature_ratios]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda p: _spectrum_point(cfg, levels, p[0], p[1], out_dir,
                                          args.top_k), points))
    else:
        rows = [_spectrum_point(cfg, levels, n, t, out_dir, args.top_k)
                for n, t in points]
    _write_csv(os.path.join(out_dir, "white_noise_per_adatom.csv"),
               ["N", "T_over_omega0", "S0_per_adatom_debye2_s"],
               [(n, t, s0 / n) for n, t, s0 in rows], _meta(cfg))
    print(f"wrote {len(rows)} spectrum point(s) to {out_dir}")
    return 0


def cmd_pink(cfg, out_dir, args):
    levels = _solve_levels(cfg)
    gamma0 = levels.rates[0, 1]
    th = master_mod.ThermalParams(
        temperature_ratio=min(cfg.temperature_ratios),
        omega0=levels.omega(0, 1))
    dist = cfg.patch_distribution()
    spectra = {n: spectrum_mod.low_temperature_spectrum(n, levels, th)
               for n in dist.sizes}
    omegas = cfg.frequency_grid.omegas(gamma0)
    s_tot = spectrum_mod.aggregate_patches(spectra, dist, omegas)
    slope = spectrum_mod.log_log_slope(omegas, s_tot)
    meta = _meta(cfg)
    _write_csv(os.path.join(out_dir, "pink_finite_sum.csv"),
               ["omega_per_s", "omega_over_Gamma0", "S_debye2_s", "loglog_slope"],
               zip(omegas, omegas / gamma0, s_tot, slope), meta)

    amp = 2.0 * (levels.dipoles[0] - levels.dipoles[1]) ** 2 * th.boltzmann_factor
    s_cf = spectrum_mod.pink_noise_closed_form(gamma0, amp, omegas)
    slope_cf = spectrum_mod.log_log_slope(omegas, s_cf)
    _write_csv(os.path.join(out_dir, "pink_closed_form.csv"),
               ["omega_per_s", "omega_over_Gamma0", "S_debye2_s", "loglog_slope"],
               zip(omegas, omegas / gamma0, s_cf, slope_cf), meta)
    print(f"wrote patch-aggregated spectra to {out_dir}")
    return 0


def cmd_validate(cfg, out_dir, args):
    checks = validate_mod.run_checks(seed=args.seed, fault=args.fault_inject)
    all_passed = all(c["passed"] for c in checks)
    payload = {"checks": checks, "all_passed": all_passed, "seed": args.seed}
    _write_json(os.path.join(out_dir, "validation.json"), payload, _meta(cfg))
    for c in checks:
        print(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}: {c['detail']}")
    if not all_passed:
        failed = [c["name"] for c in checks if not c["passed"]]
        print(f"validation failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VALIDATION
    return 0


def cmd_sweep(cfg, out_dir, args):
    return cmd_spectrum(cfg, out_dir, args, threads=max(args.threads, 1))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="adnoise",
        description="Electric-field noise spectra of correlated adatom fluctuators",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("levels", "solve bound levels, dipoles, and phonon rates"),
        ("spectrum", "exact Lorentzian spectra over the (N, T) grid"),
        ("pink", "patch-aggregated 1/f spectra (finite sum and closed form)"),
        ("validate", "run the self-validation suite"),
        ("sweep", "parallel spectrum sweep over the (N, T) grid"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="YAML config file")
        p.add_argument("--out", default=None,
                       help=f"output directory (default ${OUT_ENV_VAR} or '.')")
        p.add_argument("--seed", type=int, default=0, help="RNG seed")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for sweeps")
        p.add_argument("--top-k", type=int, default=0,
                       help="also emit a top-k truncated spectrum")
        p.add_argument("--fault-inject", default=None,
                       choices=list(validate_mod.FAULTS),
                       help="negative-control fault for validate")
    return parser


COMMANDS = {
    "levels": cmd_levels,
    "spectrum": cmd_spectrum,
    "pink": cmd_pink,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (DomainError, OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    out_dir = args.out or os.environ.get(OUT_ENV_VAR, ".")
    os.makedirs(out_dir, exist_ok=True)
    np.random.seed(args.seed % 2 ** 32)  # legacy consumers only; oracles spawn their own
    try:
        return COMMANDS[args.command](cfg, out_dir, args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvalidParametersError, InsufficientLevelsError, ConvergenceError,
            DomainError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except AdnoiseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
