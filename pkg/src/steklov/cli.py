"""Command-line interface.

Subcommands: ``wigner``, ``eval``, ``triple``, ``matrix``, ``perturb``,
``sweep``, ``solve``, ``validate``.  Exit codes: 0 on success, 1 when a
validation suite fails, 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .perturbation import (
    PerturbationField,
    assemble_matrix,
    eigen_slopes,
    normalized_slope,
)
from .harmonics import real_sph, real_sph_grad
from .solver import SolverConfig, solve
from .triple import triple_real, triple_real_oracle
from .validation import default_seed, run_all
from .wigner import wigner3j


class ConfigError(Exception):
    pass


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config root must be a JSON object")
    return config


def _parse_rho(config: dict) -> PerturbationField:
    entries = config.get("rho", [])
    if not isinstance(entries, list):
        raise ConfigError("'rho' must be a list of {p, q, A} objects")
    try:
        return PerturbationField.from_entries(entries)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid rho coefficients: {exc}") from exc


def _parse_k_range(config: dict) -> list[int]:
    k = config.get("k", 1)
    if isinstance(k, list):
        if len(k) != 2 or k[0] > k[1]:
            raise ConfigError("'k' range must be [k_min, k_max]")
        lo, hi = int(k[0]), int(k[1])
    else:
        lo = hi = int(k)
    if lo < 1:
        raise ConfigError("group index k must be >= 1")
    return list(range(lo, hi + 1))


def _parse_eps_grid(config: dict) -> list[float]:
    if "eps_grid" in config:
        grid = config["eps_grid"]
        if isinstance(grid, list) and len(grid) == 3 and isinstance(grid[2], int):
            lo, hi, count = float(grid[0]), float(grid[1]), int(grid[2])
            if count < 2:
                raise ConfigError("eps grid needs at least two samples")
            return [lo + (hi - lo) * i / (count - 1) for i in range(count)]
        if isinstance(grid, list):
            return [float(e) for e in grid]
        raise ConfigError("'eps_grid' must be [lo, hi, count] or a list of values")
    eps = float(config.get("eps", 0.1))
    return [-eps + 2 * eps * i / 40 for i in range(41)]


def _solver_config(config: dict, rho: PerturbationField) -> SolverConfig:
    cfg = SolverConfig(
        l_max=int(config.get("l_max", 10)),
        rule_degree=int(config.get("rule_degree", 40)),
        eps=float(config.get("eps", 1e-3)),
    )
    if cfg.rule_degree < 2 * cfg.l_max + 2 * rho.degree + 4:
        raise ConfigError(
            f"rule_degree={cfg.rule_degree} below 2*l_max + 2*deg(rho) + 4 "
            f"= {2 * cfg.l_max + 2 * rho.degree + 4}"
        )
    return cfg


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_wigner(args) -> int:
    value = wigner3j(args.l1, args.l2, args.l3, args.m1, args.m2, args.m3)
    print(f"sign        {value.sign}")
    print(f"numerator   {value.radicand.numerator}")
    print(f"denominator {value.radicand.denominator}")
    print(f"float       {float(value):.17g}")
    return 0


def _cmd_eval(args) -> int:
    theta = args.theta
    phi = args.phi % (2 * math.pi)
    if not 0.0 <= theta <= math.pi:
        raise ConfigError("theta must lie in [0, pi]")
    y = real_sph(args.l, args.m, theta, phi)
    dth, dph = real_sph_grad(args.l, args.m, theta, phi)
    print(f"Y       {y:.17g}")
    print(f"dtheta  {dth:.17g}")
    print(f"dphi    {dph:.17g}")
    return 0


def _cmd_triple(args) -> int:
    closed = triple_real(args.p, args.k, args.q, args.m, args.n)
    oracle = triple_real_oracle(args.p, args.k, args.q, args.m, args.n)
    print(f"closed_form {closed:.17g}")
    print(f"oracle      {oracle:.17g}")
    print(f"difference  {abs(closed - oracle):.3e}")
    return 0


def _cmd_matrix(args) -> int:
    config = _load_config(args.config)
    rho = _parse_rho(config)
    payload = {"rho": rho.to_entries(), "groups": []}
    for k in _parse_k_range(config):
        mat = assemble_matrix(k, rho)
        payload["groups"].append({"k": k, "matrix": [[float(v) for v in row] for row in mat]})
    _emit(payload, args.output or config.get("output"))
    return 0


def _cmd_perturb(args) -> int:
    config = _load_config(args.config)
    rho = _parse_rho(config)
    payload = {"rho": rho.to_entries(), "groups": []}
    for k in _parse_k_range(config):
        result = eigen_slopes(k, rho)
        entry = result.to_dict()
        entry["normalized_slopes"] = [
            normalized_slope(k, rho, branch) for branch in range(2 * k + 1)
        ]
        payload["groups"].append(entry)
    _emit(payload, args.output or config.get("output"))
    return 0


def _sweep_rows(pairs, k_values) -> list[dict]:
    rows = []
    for p, q in pairs:
        rho = PerturbationField({(p, q): 1.0})
        for k in k_values:
            result = eigen_slopes(k, rho)
            for branch, slope in enumerate(result.slopes):
                rows.append(
                    {
                        "p": p,
                        "q": q,
                        "k": k,
                        "branch": branch,
                        "slope": float(slope),
                        "normalized_slope": normalized_slope(k, rho, branch),
                    }
                )
    return rows


def _cmd_sweep(args) -> int:
    config = _load_config(args.config)
    if "pairs" in config:
        try:
            pairs = [(int(p), int(q)) for p, q in config["pairs"]]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid 'pairs': {exc}") from exc
    else:
        pairs = [(entry["p"], entry["q"]) for entry in _parse_rho(config).to_entries()]
    if not pairs:
        raise ConfigError("sweep needs 'pairs' or a nonempty 'rho'")
    for p, q in pairs:
        if abs(q) > p:
            raise ConfigError(f"invalid pair (p={p}, q={q})")
    fmt = config.get("format", "csv")
    if fmt not in ("json", "csv", "svg"):
        raise ConfigError(f"unknown output format {fmt!r}")
    outdir = Path(args.output or config.get("output", "sweep_out"))
    outdir.mkdir(parents=True, exist_ok=True)

    rows = _sweep_rows(pairs, _parse_k_range(config))
    eps_grid = _parse_eps_grid(config)

    written = []
    if fmt == "json":
        path = outdir / "sweep.json"
        path.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    else:
        path = outdir / "sweep.csv"
        lines = ["p,q,k,branch,slope,normalized_slope"]
        for row in rows:
            lines.append(
                f"{row['p']},{row['q']},{row['k']},{row['branch']},"
                f"{row['slope']:.17g},{row['normalized_slope']:.17g}"
            )
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(path)
    if fmt == "svg":
        from .figures import render_fan_figures

        written.extend(render_fan_figures(rows, eps_grid, outdir, fmt="svg"))
    for path in written:
        print(path)
    return 0


def _cmd_solve(args) -> int:
    config = _load_config(args.config)
    rho = _parse_rho(config)
    cfg = _solver_config(config, rho)
    spectrum = solve(rho, cfg)
    payload = spectrum.to_dict()
    payload["rho"] = rho.to_entries()
    payload["config"] = {"l_max": cfg.l_max, "rule_degree": cfg.rule_degree, "eps": cfg.eps}
    _emit(payload, args.output or config.get("output"))
    return 0


def _cmd_validate(args) -> int:
    report = run_all(solver=args.solver, seed=default_seed())
    _emit(report, args.output)
    return 0 if report["passed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steklov",
        description="Steklov eigenvalue perturbation on nearly-spherical domains",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    wig = sub.add_parser("wigner", help="print one exact 3-j symbol")
    for name in ("l1", "l2", "l3", "m1", "m2", "m3"):
        wig.add_argument(name, type=int)
    wig.set_defaults(func=_cmd_wigner)

    ev = sub.add_parser("eval", help="evaluate a real harmonic and its gradient")
    ev.add_argument("l", type=int)
    ev.add_argument("m", type=int)
    ev.add_argument("theta", type=float)
    ev.add_argument("phi", type=float)
    ev.set_defaults(func=_cmd_eval)

    tri = sub.add_parser("triple", help="closed-form and oracle triple product")
    for name in ("p", "k", "q", "m", "n"):
        tri.add_argument(name, type=int)
    tri.set_defaults(func=_cmd_triple)

    for name, func, help_text in (
        ("matrix", _cmd_matrix, "assemble slope matrices"),
        ("perturb", _cmd_perturb, "eigenvalue slopes and eigenvectors"),
        ("sweep", _cmd_sweep, "batch slopes over (p, q) pairs with figures"),
        ("solve", _cmd_solve, "direct Steklov solve at finite eps"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="JSON job configuration")
        cmd.add_argument("--output", help="output file or directory")
        cmd.set_defaults(func=func)

    val = sub.add_parser("validate", help="run the validation suites")
    val.add_argument("--solver", action="store_true", help="include the direct-solver check")
    val.add_argument("--output", help="write the JSON report to a file")
    val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
