"""Command-line front end.

Subcommands::

    simulate    Monte Carlo trials of both matrix means; JSON report
    density     closed-form density curves (harmonic mean vs MP); CSV
    threshold   crossover count n*(gamma); JSON
    fixedpoint  density of the conjugated harmonic mean or its error; CSV
    compare     empirical norm errors vs analytic limits with pass/fail; JSON

All outputs are deterministic for a fixed seed: trials use seeds derived
per trial index, CSV floats carry 17 significant digits, and JSON key
order is fixed.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from dataclasses import replace

import numpy as np

from wishmean.ensemble import EnsembleSpec, EntryModel, derive_seed, sample_wishart_set
from wishmean.freelaw import (
    HarmLawParams,
    arith_norm_limit,
    critical_n,
    harm_cdf_fn,
    harm_density,
    harm_norm_limit,
    mp_density,
)
from wishmean.matmeans import arithmetic_mean, harmonic_mean
from wishmean.spectral import edge_statistics, eigvalsh, ks_distance, operator_norm_error
from wishmean.transforms import (
    BranchAmbiguity,
    FixedPointConfig,
    NonConvergence,
    PopulationSpectrum,
    cov_error_solver,
    cov_harm_solver,
    plemelj_density,
)

__all__ = ["main", "load_spectrum"]


class CliError(Exception):
    """Input problem; `code` becomes the process exit status."""

    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _fmt(value: float) -> str:
    # 17 significant digits round-trips any 64-bit float.
    return f"{value:.17g}"


def _write_output(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _check_gamma(gamma: float) -> float:
    if not 0.0 < gamma < 1.0:
        raise CliError(f"--gamma must lie in (0, 1), got {gamma}")
    return gamma


def _resolve_spec(args) -> EnsembleSpec:
    gamma = _check_gamma(args.gamma)
    if args.p < 1:
        raise CliError(f"--p must be a positive integer, got {args.p}")
    big_n = args.bign if args.bign is not None else round(args.p / gamma)
    if big_n <= args.p:
        raise CliError(f"derived N = {big_n} must exceed P = {args.p}")
    try:
        model = EntryModel(args.model)
    except ValueError:
        raise CliError(f"unknown entry model {args.model!r}") from None
    if not 0 <= args.seed < 2**64:
        raise CliError("--seed must fit in an unsigned 64-bit integer")
    if args.nmats < 1:
        raise CliError(f"--nmats must be >= 1, got {args.nmats}")
    if args.trials < 0:
        raise CliError(f"--trials must be >= 0, got {args.trials}")
    return EnsembleSpec(P=args.p, N=big_n, n=args.nmats, entry_model=model, seed=args.seed)


def _spec_echo(spec: EnsembleSpec) -> dict:
    return {
        "P": spec.P,
        "N": spec.N,
        "n": spec.n,
        "gamma": spec.gamma,
        "entry_model": spec.entry_model.value,
        "seed": spec.seed,
    }


def _analytic_block(gamma: float, n: int) -> dict:
    params = HarmLawParams(gamma, n)
    crossing = critical_n(gamma)
    return {
        "harm_limit": harm_norm_limit(params),
        "arith_limit": arith_norm_limit(gamma, n),
        "e_minus": params.e_minus,
        "e_plus": params.e_plus,
        "n_star_int": None if crossing is None else crossing.n_int,
    }


def _one_trial(spec: EnsembleSpec, trial: int, with_ks: bool):
    tspec = replace(spec, seed=derive_seed(spec.seed, trial))
    ws = sample_wishart_set(tspec)
    a = arithmetic_mean(ws)
    h = harmonic_mean(ws)
    eye = np.eye(spec.P)
    eig_h = eigvalsh(h)
    lam_min, lam_max = edge_statistics(eig_h)
    record = {
        "trial": trial,
        "opnorm_A_error": operator_norm_error(a, eye),
        "opnorm_H_error": operator_norm_error(h, eye),
        "lambda_min_H": lam_min,
        "lambda_max_H": lam_max,
    }
    if with_ks:
        gamma = spec.gamma
        record["ks_H"] = ks_distance(eig_h, harm_cdf_fn(HarmLawParams(gamma, spec.n)))
        record["ks_A"] = ks_distance(eigvalsh(a), harm_cdf_fn(HarmLawParams(gamma / spec.n, 1.0)))
    return record, eig_h


def _run_trials(spec: EnsembleSpec, trials: int, with_ks: bool):
    """Run trials in a thread pool; rows come back ordered by trial index."""

    def task(trial: int):
        try:
            return _one_trial(spec, trial, with_ks)
        except Exception as exc:  # recorded per trial, run continues
            return {"trial": trial, "error": f"{type(exc).__name__}: {exc}"}, None

    if trials <= 1:
        results = [task(t) for t in range(trials)]
    else:
        workers = min(trials, os.cpu_count() or 1, 8)
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, range(trials)))
    records = [rec for rec, _ in results]
    spectra = [eig for _, eig in results]
    return records, spectra


def cmd_simulate(args) -> int:
    spec = _resolve_spec(args)
    records, spectra = _run_trials(spec, args.trials, with_ks=True)
    report = {
        "spec": _spec_echo(spec),
        "trials": records,
        "analytic": _analytic_block(spec.gamma, spec.n),
    }
    _write_output(args.out, _json_dump(report))
    if args.dump_eigs is not None:
        rows = []
        for trial, eig in enumerate(spectra):
            if eig is None:
                continue
            rows.extend([str(trial), str(i), _fmt(v)] for i, v in enumerate(eig))
        _write_output(args.dump_eigs, _csv_text(["trial", "index", "eigenvalue"], rows))
    return 0


def cmd_density(args) -> int:
    gamma = _check_gamma(args.gamma)
    if args.nmats < 1:
        raise CliError(f"--nmats must be >= 1, got {args.nmats}")
    grid = _make_grid(args)
    params = HarmLawParams(gamma, args.nmats)
    harm_vals = harm_density(params, grid)
    mp_vals = mp_density(gamma, grid)
    rows = [[_fmt(x), _fmt(h), _fmt(m)] for x, h, m in zip(grid, harm_vals, mp_vals)]
    _write_output(args.out, _csv_text(["x", "harm_density", "mp_density"], rows))
    return 0


def cmd_threshold(args) -> int:
    gamma = _check_gamma(args.gamma)
    crossing = critical_n(gamma)
    report = {
        "gamma": gamma,
        "n_star_real": None if crossing is None else crossing.n_real,
        "n_star_int": None if crossing is None else crossing.n_int,
        "harm_at_2": harm_norm_limit(HarmLawParams(gamma, 2.0)),
        "arith_at_2": arith_norm_limit(gamma, 2.0),
    }
    _write_output(args.out, _json_dump(report))
    return 0


def cmd_fixedpoint(args) -> int:
    gamma = _check_gamma(args.gamma)
    if args.nmats < 1:
        raise CliError(f"--nmats must be >= 1, got {args.nmats}")
    grid = _make_grid(args)
    spectrum = load_spectrum(args.spectrum)
    params = HarmLawParams(gamma, args.nmats)
    try:
        cfg = FixedPointConfig(eta=args.eta, tol=args.tol, max_iter=args.max_iter, damping=args.damping)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.which == "sh":
        solver = cov_harm_solver(params, spectrum, cfg)
    else:
        solver = cov_error_solver(params, spectrum, cfg)

    warm: dict[float, complex] = {}

    def m_eval(z: complex) -> complex:
        m = solver(z, warm.get(z.imag))
        warm[z.imag] = m
        return m

    rows = []
    for x in grid:
        try:
            density = plemelj_density(m_eval, float(x), cfg)
            rows.append([_fmt(float(x)), _fmt(density), "ok"])
        except (NonConvergence, BranchAmbiguity) as exc:
            rows.append([_fmt(float(x)), _fmt(math.nan), type(exc).__name__.lower()])
            warm.clear()  # do not warm-start the next point from a failed solve
    _write_output(args.out, _csv_text(["x", "density", "status"], rows))
    return 0


def cmd_compare(args) -> int:
    spec = _resolve_spec(args)
    if args.tolerance <= 0.0:
        raise CliError(f"--tolerance must be positive, got {args.tolerance}")
    records, _ = _run_trials(spec, args.trials, with_ks=False)
    params = HarmLawParams(spec.gamma, spec.n)
    analytic = {
        "harm_limit": harm_norm_limit(params),
        "arith_limit": arith_norm_limit(spec.gamma, spec.n),
    }
    good = [r for r in records if "error" not in r]
    failed = [r for r in records if "error" in r]
    report = {
        "spec": _spec_echo(spec),
        "trials": args.trials,
        "failed_trials": len(failed),
        "tolerance": args.tolerance,
        "analytic": analytic,
        "empirical": None,
        "pass": None,
    }
    if good:
        a_errors = np.array([r["opnorm_A_error"] for r in good])
        h_errors = np.array([r["opnorm_H_error"] for r in good])
        ddof = 1 if len(good) > 1 else 0
        empirical = {
            "opnorm_A_error_mean": float(a_errors.mean()),
            "opnorm_A_error_std": float(a_errors.std(ddof=ddof)),
            "opnorm_H_error_mean": float(h_errors.mean()),
            "opnorm_H_error_std": float(h_errors.std(ddof=ddof)),
        }
        pass_a = abs(empirical["opnorm_A_error_mean"] - analytic["arith_limit"]) < args.tolerance
        pass_h = abs(empirical["opnorm_H_error_mean"] - analytic["harm_limit"]) < args.tolerance
        report["empirical"] = empirical
        report["pass"] = {"A": pass_a, "H": pass_h, "overall": pass_a and pass_h}
    _write_output(args.out, _json_dump(report))
    return 0


def _make_grid(args) -> np.ndarray:
    if args.points < 2:
        raise CliError(f"--points must be >= 2, got {args.points}")
    if not args.min < args.max:
        raise CliError(f"grid bounds require --min < --max, got [{args.min}, {args.max}]")
    return np.linspace(args.min, args.max, args.points)


def load_spectrum(path: str) -> PopulationSpectrum:
    """Load a population spectrum file: a JSON array of ``{"x": .., "w": ..}``.

    Weights are normalized when they sum to 1 within 1e-9 and rejected
    otherwise; atom locations must be strictly positive.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read spectrum file {path!r}: {exc}", code=1) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"spectrum file {path!r} is not valid JSON: {exc}", code=1) from None
    if not isinstance(data, list) or not data:
        raise CliError("spectrum file must be a non-empty JSON array of {x, w} objects", code=1)
    atoms = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or "x" not in entry or "w" not in entry:
            raise CliError(f"spectrum entry {i} must be an object with keys 'x' and 'w'", code=1)
        try:
            x, w = float(entry["x"]), float(entry["w"])
        except (TypeError, ValueError):
            raise CliError(f"spectrum entry {i} has non-numeric fields", code=1) from None
        if x <= 0.0:
            raise CliError(f"spectrum entry {i} violates positivity: location {x} <= 0", code=1)
        if w <= 0.0:
            raise CliError(f"spectrum entry {i} violates positivity: weight {w} <= 0", code=1)
        atoms.append((x, w))
    total = math.fsum(w for _, w in atoms)
    if abs(total - 1.0) > 1e-9:
        raise CliError(
            f"spectrum weights must sum to 1 within 1e-9, got {total!r}; "
            "normalize the file explicitly",
            code=1,
        )
    return PopulationSpectrum.from_atoms([(x, w / total) for x, w in atoms])


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gamma", type=float, required=True, help="aspect ratio in (0, 1)")
    parser.add_argument("--nmats", type=int, default=2, help="number of matrices n (default 2)")
    parser.add_argument("--seed", type=int, default=0, help="unsigned 64-bit master seed")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def _add_simulate_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="matrix rows P")
    parser.add_argument("--bign", type=int, default=None, help="columns N (default round(P/gamma))")
    parser.add_argument("--trials", type=int, default=1, help="number of Monte Carlo trials")
    parser.add_argument(
        "--model",
        default="complex-gaussian",
        choices=[m.value for m in EntryModel],
        help="entry distribution",
    )


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min", type=float, required=True, help="grid lower bound")
    parser.add_argument("--max", type=float, required=True, help="grid upper bound")
    parser.add_argument("--points", type=int, required=True, help="number of grid points (>= 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wishmean",
        description="Limiting spectra of arithmetic and harmonic means of Wishart matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="Monte Carlo trials; JSON report")
    _add_common(p_sim)
    _add_simulate_flags(p_sim)
    p_sim.add_argument("--dump-eigs", default=None, help="CSV path for per-trial eigenvalues")
    p_sim.set_defaults(func=cmd_simulate)

    p_den = sub.add_parser("density", help="closed-form density curves; CSV")
    _add_common(p_den)
    _add_grid_flags(p_den)
    p_den.set_defaults(func=cmd_density)

    p_thr = sub.add_parser("threshold", help="crossover count n*(gamma); JSON")
    _add_common(p_thr)
    p_thr.set_defaults(func=cmd_threshold)

    p_fix = sub.add_parser("fixedpoint", help="fixed-point density curve; CSV")
    _add_common(p_fix)
    _add_grid_flags(p_fix)
    p_fix.add_argument("--spectrum", required=True, help="population spectrum JSON file")
    p_fix.add_argument("--which", required=True, choices=["sh", "e"],
                       help="sh: conjugated harmonic mean; e: its estimation error")
    p_fix.add_argument("--eta", type=float, default=1e-4, help="Plemelj imaginary offset")
    p_fix.add_argument("--tol", type=float, default=1e-12, help="fixed-point convergence tolerance")
    p_fix.add_argument("--max-iter", type=int, default=10000, help="fixed-point iteration cap")
    p_fix.add_argument("--damping", type=float, default=0.5, help="damping factor in (0, 1]")
    p_fix.set_defaults(func=cmd_fixedpoint)

    p_cmp = sub.add_parser("compare", help="empirical vs analytic norm errors; JSON")
    _add_common(p_cmp)
    _add_simulate_flags(p_cmp)
    p_cmp.add_argument("--tolerance", type=float, default=0.05, help="pass/fail tolerance")
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NonConvergence, BranchAmbiguity) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
