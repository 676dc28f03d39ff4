"""Command-line front end.

    tiltosc sweep         Q and g2 over the (N, m) grid, with oracle check
    tiltosc energy-table  closed-form levels against eigenvalues of H
    tiltosc verify        run every invariant family; exit 2 on failure

Settings come from flags, then an optional ``--config`` file of
``key=value`` lines, then the defaults (omega=4, lambda=0.5, psi=0, nmax=6,
cutoff=24).  Exit codes: 0 success, 1 invalid configuration, 2 failed
verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional

from . import hamiltonian, statistics, verify
from .algebra import quantum_number_grid
from .hamiltonian import ModelParams
from .validation import check_shadow

log = logging.getLogger("tiltosc")

DEFAULTS = {"omega": 4.0, "lambda": 0.5, "psi": 0.0, "nmax": 6, "cutoff": 24, "out": None}
CONFIG_TYPES = {"omega": float, "lambda": float, "psi": float, "nmax": int, "cutoff": int, "out": str}

SWEEP_COLUMNS = ["N", "m", "Q", "g2", "q_class", "g2_class", "oracle_Q", "oracle_abs_err"]
ENERGY_COLUMNS = ["N", "m", "E_closed", "E_numeric", "abs_err"]
VERIFY_COLUMNS = ["family", "status", "max_residual", "tolerance", "detail"]

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    command: str
    omega: float
    lam: float
    psi: float
    n_max: int
    cutoff: int
    out: Optional[str] = None

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.omega, self.lam, self.psi, self.cutoff)


def fmt(x) -> str:
    if x is None:
        return "undefined"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lstrip("-")
            if not sep or key not in CONFIG_TYPES:
                raise ConfigError(f"{path}:{lineno}: expected key=value with key in {sorted(CONFIG_TYPES)}")
            try:
                values[key] = CONFIG_TYPES[key](value.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return values


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors; exit 2 is reserved for verify
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--omega", type=float, help="free frequency (default 4)")
    common.add_argument("--lambda", dest="lambda", type=float, help="coupling magnitude (default 0.5)")
    common.add_argument("--psi", type=float, help="coupling phase in [0, 2pi] (default 0)")
    common.add_argument("--nmax", type=int, help="largest principal number N (default 6)")
    common.add_argument("--cutoff", type=int, help="per-mode Fock cutoff (default 24)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--config", help="file of key=value defaults")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="tiltosc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="Mandel Q and g2 over the (N, m) grid")
    sub.add_parser("energy-table", parents=[common], help="closed-form vs numerical levels")
    sub.add_parser("verify", parents=[common], help="run the invariant families")
    return parser


def resolve_config(args: argparse.Namespace) -> SweepConfig:
    merged = dict(DEFAULTS)
    if args.config:
        try:
            merged.update(read_config_file(args.config))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
    for key in DEFAULTS:
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    cfg = SweepConfig(args.command, float(merged["omega"]), float(merged["lambda"]), float(merged["psi"]),
                      int(merged["nmax"]), int(merged["cutoff"]), merged["out"])
    try:
        cfg.params  # validates omega, lambda, psi, cutoff
        if cfg.command != "verify":
            check_shadow(cfg.n_max, cfg.cutoff)
        elif cfg.n_max < 0:
            raise ValueError(f"N_max must be non-negative, got {cfg.n_max}")
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def _csv_writer(stream):
    return csv.writer(stream, lineterminator="\n")


def run_sweep(cfg: SweepConfig, stream) -> None:
    params = cfg.params
    transform = hamiltonian.eigenstate_transform(params)
    writer = _csv_writer(stream)
    writer.writerow(SWEEP_COLUMNS)
    for q in quantum_number_grid(cfg.n_max):
        rep = statistics.weak_report(params, q)
        oracle = statistics.statistics_oracle(params, q, "a", transform)
        if not oracle.reliable:
            log.warning("|N=%d, m=%d>: %.2e of the oracle state sits on the cutoff boundary",
                        q.N, q.m, oracle.edge_weight)
        err = None if rep.Q is None or oracle.Q is None else abs(rep.Q - oracle.Q)
        writer.writerow([q.N, q.m, fmt(rep.Q), fmt(rep.g2), rep.q_class, rep.g2_class,
                         fmt(oracle.Q), fmt(err)])


def run_energy_table(cfg: SweepConfig, stream) -> None:
    writer = _csv_writer(stream)
    writer.writerow(ENERGY_COLUMNS)
    for q, closed, numeric in hamiltonian.paired_spectrum(cfg.params, cfg.n_max):
        writer.writerow([q.N, q.m, fmt(closed), fmt(numeric), fmt(abs(closed - numeric))])


def run_verify(cfg: SweepConfig, stream) -> bool:
    vcfg = verify.VerifyConfig(cfg.omega, cfg.lam, cfg.psi, cfg.n_max, cfg.cutoff)
    results = verify.run_families(vcfg)
    writer = _csv_writer(stream)
    writer.writerow(VERIFY_COLUMNS)
    for r in results:
        writer.writerow([r.name, "pass" if r.passed else "FAIL", fmt(r.max_residual), fmt(r.tolerance), r.detail])
        if not r.passed and math.isinf(r.max_residual):
            log.error("%s could not run: %s", r.name, r.detail)
        elif not r.passed:
            log.error("%s failed: residual %s > %s %s", r.name, fmt(r.max_residual), fmt(r.tolerance), r.detail)
    return all(r.passed for r in results)


COMMANDS = {"sweep": run_sweep, "energy-table": run_energy_table, "verify": run_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"tiltosc: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    buffer = io.StringIO()
    ok = COMMANDS[cfg.command](cfg, buffer)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())
    if cfg.command == "verify" and not ok:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
