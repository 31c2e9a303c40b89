"""Command-line front end: equilibrium reports, sweeps, verification.

Subcommands: equilibria, sweep, verify, moderate, entropy.  Game setup
comes from a TOML config file, with flags overriding individual
values.  Angles accept radian floats or literal tokens like "pi/2".
Exit codes: 0 success, 1 oracle verification failure, 2 malformed
config or arguments, 3 output write failure.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .analysis import entanglement_entropy, entropy_of_lambda, moderated_operator
from .equilibria import (
    SELECTIONS,
    EquilibriumKind,
    GridSpec,
    SurfaceTable,
    equilibria_at,
    surface_rows,
)
from .errors import DomainError
from .operators import CorrelationParams, StrategyVector, build_conversion, joint_state
from .oracle import StrategyGrid, verify_nash
from .payoff import PayoffMatrix


class ConfigError(ValueError):
    """Malformed configuration or command-line input (exit code 2)."""


@dataclass(frozen=True)
class OracleConfig:
    n_amp: int = 51
    n_phase: int = 24
    tol: float = 1e-6


@dataclass(frozen=True)
class OutputConfig:
    format: Optional[str] = None
    path: Optional[str] = None


@dataclass(frozen=True)
class GameConfig:
    """Validated game setup loaded from TOML."""

    payoff: PayoffMatrix
    grid: Optional[GridSpec] = None
    oracle: OracleConfig = OracleConfig()
    output: OutputConfig = OutputConfig()


def parse_angle(value) -> float:
    """Radians from a float or a token like "pi", "pi/2", "3pi/4"."""
    if isinstance(value, bool):
        raise ConfigError(f"cannot parse angle {value!r}")
    if isinstance(value, (int, float)):
        result = float(value)
    else:
        text = str(value).strip().lower().replace(" ", "")
        if "pi" in text:
            head, _, tail = text.partition("pi")
            try:
                coefficient = {"": 1.0, "+": 1.0, "-": -1.0}.get(head)
                if coefficient is None:
                    coefficient = float(head)
                divisor = 1.0
                if tail:
                    if not tail.startswith("/"):
                        raise ValueError
                    divisor = float(tail[1:])
                result = coefficient * math.pi / divisor
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"cannot parse angle {value!r}") from None
        else:
            try:
                result = float(text)
            except ValueError:
                raise ConfigError(f"cannot parse angle {value!r}") from None
    if not math.isfinite(result):
        raise ConfigError(f"angle must be finite, got {value!r}")
    return result


def _section(raw: dict, name: str) -> dict:
    value = raw.get(name)
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"[{name}] must be a table")
    return value


def _number(table: dict, key: str, context: str) -> float:
    value = table.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{context}.{key} must be a number, got {value!r}")
    return float(value)


def _count(table: dict, key: str, context: str, default: Optional[int] = None) -> int:
    value = table.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{context}.{key} must be an integer, got {value!r}")
    return value


def load_config(path: str) -> GameConfig:
    """Parse and validate a TOML game configuration."""
    try:
        with open(path, "rb") as handle:
            raw = tomllib.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from None

    payoff_table = raw.get("payoff")
    if not isinstance(payoff_table, dict):
        raise ConfigError("config must contain a [payoff] table")
    try:
        payoff = PayoffMatrix(
            a00=_number(payoff_table, "a00", "payoff"),
            a01=_number(payoff_table, "a01", "payoff"),
            a10=_number(payoff_table, "a10", "payoff"),
            a11=_number(payoff_table, "a11", "payoff"),
        )
    except ValueError as exc:
        raise ConfigError(f"bad payoff matrix: {exc}") from None

    grid: Optional[GridSpec] = None
    grid_table = _section(raw, "grid")
    if grid_table:
        lo, hi = 0.0, 2.0 * math.pi
        bounds = grid_table.get("range")
        if bounds is not None:
            if not isinstance(bounds, list) or len(bounds) != 2:
                raise ConfigError("grid.range must be a [lo, hi] pair")
            lo, hi = (parse_angle(b) for b in bounds)
        endpoint = grid_table.get("endpoint", False)
        if not isinstance(endpoint, bool):
            raise ConfigError("grid.endpoint must be a boolean")
        try:
            grid = GridSpec(
                gamma1_steps=_count(grid_table, "gamma1_steps", "grid"),
                gamma2_steps=_count(grid_table, "gamma2_steps", "grid"),
                lo=lo,
                hi=hi,
                endpoint=endpoint,
            )
        except ValueError as exc:
            raise ConfigError(f"bad grid: {exc}") from None

    oracle = OracleConfig()
    oracle_table = _section(raw, "oracle")
    if oracle_table:
        n_amp = _count(oracle_table, "n_amp", "oracle", default=oracle.n_amp)
        n_phase = _count(oracle_table, "n_phase", "oracle", default=oracle.n_phase)
        tol = (
            _number(oracle_table, "tol", "oracle")
            if "tol" in oracle_table
            else oracle.tol
        )
        if n_amp < 2 or n_phase < 1:
            raise ConfigError("oracle grid needs n_amp >= 2 and n_phase >= 1")
        if not tol > 0.0:
            raise ConfigError(f"oracle.tol must be positive, got {tol}")
        oracle = OracleConfig(n_amp=n_amp, n_phase=n_phase, tol=tol)

    output = OutputConfig()
    output_table = _section(raw, "output")
    if output_table:
        fmt = output_table.get("format")
        if fmt is not None and fmt not in ("csv", "json"):
            raise ConfigError(f"output.format must be csv or json, got {fmt!r}")
        path_value = output_table.get("path")
        if path_value is not None and not isinstance(path_value, str):
            raise ConfigError("output.path must be a string")
        output = OutputConfig(format=fmt, path=path_value)

    return GameConfig(payoff=payoff, grid=grid, oracle=oracle, output=output)


def _parse_strategy(text: str, label: str) -> StrategyVector:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{label} must be 'a0,phase', got {text!r}")
    try:
        return StrategyVector.from_a0(float(parts[0]), parse_angle(parts[1]))
    except ValueError as exc:
        raise ConfigError(f"bad {label}: {exc}") from None


def _parse_candidate(text: str) -> Tuple[StrategyVector, StrategyVector]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ConfigError(f"candidate must be 'a0,xi,b0,chi', got {text!r}")
    try:
        alpha = StrategyVector.from_a0(float(parts[0]), parse_angle(parts[1]))
        beta = StrategyVector.from_a0(float(parts[2]), parse_angle(parts[3]))
    except ValueError as exc:
        raise ConfigError(f"bad candidate: {exc}") from None
    return alpha, beta


def _thread_count() -> int:
    raw = os.environ.get("QGAME_THREADS", "")
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise ConfigError(f"QGAME_THREADS must be an integer, got {raw!r}") from None
    return max(1, count)


def cmd_equilibria(
    config: GameConfig, gamma: CorrelationParams, log_base: str = "natural"
) -> Tuple[int, dict]:
    """Equilibrium report document at one gamma."""
    report = equilibria_at(config.payoff, gamma)
    functions = report.functions
    records = []
    for record in report.records:
        state = joint_state(record.alpha, record.beta, gamma)
        records.append(
            {
                "kind": record.kind.name,
                "a0": record.alpha.a0,
                "phase": record.phase_star,
                "payoff_a": record.payoff_a,
                "payoff_b": record.payoff_b,
                "boundary": record.boundary,
                "entropy": entanglement_entropy(state, base=log_base),
            }
        )
    document = {
        "gamma": [gamma.gamma1, gamma.gamma2],
        "tau": functions.tau,
        "g_plus": functions.g_plus,
        "g_minus": functions.g_minus,
        "h_plus": functions.h_plus,
        "h_minus": functions.h_minus,
        "delta": functions.delta,
        "records": records,
    }
    return 0, document


def cmd_sweep(config: GameConfig, selection: str) -> Tuple[int, SurfaceTable]:
    """Payoff surface over the configured grid."""
    if config.grid is None:
        raise ConfigError("sweep requires a [grid] table in the config")
    if selection not in SELECTIONS:
        raise ConfigError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    grid = config.grid
    workers = _thread_count()
    gamma1 = grid.gamma1_values()
    gamma2 = grid.gamma2_values()
    if workers <= 1 or len(gamma1) < 2 * workers:
        rows = surface_rows(config.payoff, gamma1, gamma2, selection)
    else:
        chunks = np.array_split(gamma1, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda chunk: surface_rows(config.payoff, chunk, gamma2, selection),
                    chunks,
                )
            )
        rows = [row for part in parts for row in part]
    return 0, SurfaceTable(grid=grid, selection=selection, rows=tuple(rows))


def cmd_verify(
    config: GameConfig,
    gamma: CorrelationParams,
    candidate: Optional[Tuple[StrategyVector, StrategyVector]] = None,
) -> Tuple[int, dict]:
    """Oracle-check the analytic equilibria (or an injected candidate)."""
    grid = StrategyGrid(config.oracle.n_amp, config.oracle.n_phase)
    tol = config.oracle.tol
    checks: List[Tuple[str, StrategyVector, StrategyVector, bool]] = []
    if candidate is not None:
        checks.append(("candidate", candidate[0], candidate[1], False))
    else:
        for record in equilibria_at(config.payoff, gamma).records:
            averaged = record.kind is EquilibriumKind.SYMMETRIC_PHASE_SCRAMBLED
            checks.append((record.kind.name, record.alpha, record.beta, averaged))

    results = []
    all_pass = True
    for name, alpha, beta, averaged in checks:
        report = verify_nash(
            config.payoff, gamma, alpha, beta, grid, tol, phase_averaged=averaged
        )
        all_pass = all_pass and report.is_nash
        results.append(
            {
                "kind": name,
                "max_gain_a": report.max_gain_a,
                "max_gain_b": report.max_gain_b,
                "allowance": report.allowance,
                "phase_averaged": averaged,
                "is_nash": report.is_nash,
            }
        )
    document = {
        "gamma": [gamma.gamma1, gamma.gamma2],
        "grid": {"n_amp": grid.n_amp, "n_phase": grid.n_phase},
        "tol": tol,
        "results": results,
        "all_pass": all_pass,
    }
    return (0 if all_pass else 1), document


def cmd_moderate(config: GameConfig, n_quad: int = 64) -> Tuple[int, dict]:
    """Average the payoff operator over gamma and compare to (A + CAC)/2."""
    averaged = moderated_operator(config.payoff, n_quad)
    diagonal = config.payoff.as_diagonal()
    conversion = build_conversion()
    closed_form = 0.5 * (diagonal + conversion @ diagonal @ conversion)
    residual = float(np.max(np.abs(averaged - closed_form)))
    document = {
        "n_quad": n_quad,
        "operator": [[float(v) for v in row] for row in averaged.real],
        "max_abs_imag": float(np.max(np.abs(averaged.imag))),
        "closed_form": [[float(v) for v in row] for row in closed_form],
        "residual": residual,
    }
    return 0, document


def cmd_entropy(args) -> Tuple[int, dict]:
    """Entropy of a Schmidt weight or of an explicit joint state."""
    base = args.log_base
    if args.lam is not None:
        if args.alpha or args.beta:
            raise ConfigError("give either --lambda or a strategy pair, not both")
        try:
            value = entropy_of_lambda(args.lam, base)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        return 0, {"lambda": args.lam, "base": base, "entropy": value}
    if args.alpha is None or args.beta is None or args.gamma1 is None:
        raise ConfigError(
            "entropy needs --lambda, or --gamma1/--gamma2 with --alpha and --beta"
        )
    gamma = CorrelationParams(parse_angle(args.gamma1), parse_angle(args.gamma2))
    alpha = _parse_strategy(args.alpha, "alpha")
    beta = _parse_strategy(args.beta, "beta")
    state = joint_state(alpha, beta, gamma)
    return 0, {
        "gamma": [gamma.gamma1, gamma.gamma2],
        "alpha": [alpha.a0, alpha.phase],
        "beta": [beta.a0, beta.phase],
        "base": base,
        "entropy": entanglement_entropy(state, base),
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgame",
        description="Correlated two-player quantum games: equilibria, sweeps, oracles.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub):
        sub.add_argument("--config", help="TOML game configuration file")
        sub.add_argument("--out", help="output file path (default: stdout)")
        sub.add_argument("--format", choices=("csv", "json"), help="output format")

    sub = commands.add_parser("equilibria", help="equilibrium report at one gamma")
    add_common(sub)
    sub.add_argument("--gamma1", required=True, help="radians or token like pi/2")
    sub.add_argument("--gamma2", required=True, help="radians or token like pi/2")
    sub.add_argument(
        "--log-base", choices=("natural", "two"), default="natural",
        help="entropy logarithm base",
    )

    sub = commands.add_parser("sweep", help="payoff surface over the gamma grid")
    add_common(sub)
    sub.add_argument(
        "--selection", choices=SELECTIONS, default="max",
        help="row choice per grid point",
    )

    sub = commands.add_parser("verify", help="oracle-check equilibria at one gamma")
    add_common(sub)
    sub.add_argument("--gamma1", required=True)
    sub.add_argument("--gamma2", required=True)
    sub.add_argument(
        "--candidate",
        help="verify this 'a0,xi,b0,chi' pair instead of the analytic records",
    )

    sub = commands.add_parser("moderate", help="gamma-averaged payoff operator")
    add_common(sub)
    sub.add_argument("--n-quad", type=int, default=64, help="quadrature points per axis")

    sub = commands.add_parser("entropy", help="entanglement entropy queries")
    add_common(sub)
    sub.add_argument("--lambda", dest="lam", type=float, help="Schmidt weight in [0,1]")
    sub.add_argument("--gamma1", help="correlation angle (with --alpha/--beta)")
    sub.add_argument("--gamma2", default="0", help="correlation angle")
    sub.add_argument("--alpha", help="player A strategy 'a0,phase'")
    sub.add_argument("--beta", help="player B strategy 'b0,phase'")
    sub.add_argument(
        "--log-base", choices=("natural", "two"), default="natural",
        help="entropy logarithm base",
    )
    return parser


def _render(payload, fmt: str) -> str:
    if isinstance(payload, SurfaceTable):
        if fmt == "json":
            rows = [
                {
                    "gamma1": r.gamma1,
                    "gamma2": r.gamma2,
                    "kind": r.kind.name,
                    "a0_star": r.a0_star,
                    "payoff_a": r.payoff_a,
                    "payoff_b": r.payoff_b,
                    "h_plus": r.h_plus,
                    "h_minus": r.h_minus,
                    "delta": r.delta,
                }
                for r in payload.rows
            ]
            return json.dumps(rows, indent=2) + "\n"
        return payload.to_csv()
    return json.dumps(payload, indent=2) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        config: Optional[GameConfig] = None
        if args.config is not None:
            config = load_config(args.config)

        if args.command == "entropy":
            code, payload = cmd_entropy(args)
        else:
            if config is None:
                raise ConfigError(f"{args.command} requires --config")
            if args.command == "equilibria":
                gamma = CorrelationParams(
                    parse_angle(args.gamma1), parse_angle(args.gamma2)
                )
                code, payload = cmd_equilibria(config, gamma, args.log_base)
            elif args.command == "sweep":
                code, payload = cmd_sweep(config, args.selection)
            elif args.command == "verify":
                gamma = CorrelationParams(
                    parse_angle(args.gamma1), parse_angle(args.gamma2)
                )
                candidate = (
                    _parse_candidate(args.candidate) if args.candidate else None
                )
                code, payload = cmd_verify(config, gamma, candidate)
            else:
                code, payload = cmd_moderate(config, args.n_quad)

        fmt = args.format or (config.output.format if config else None)
        if fmt is None:
            fmt = "csv" if args.command == "sweep" else "json"
        if fmt == "csv" and not isinstance(payload, SurfaceTable):
            raise ConfigError(f"{args.command} output is JSON only")
        text = _render(payload, fmt)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out_path = args.out or (config.output.path if config else None)
    try:
        if out_path:
            with open(out_path, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 3
    return code
