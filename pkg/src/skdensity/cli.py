"""``skdensity`` command-line driver.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import _fft, validation
from .density import evaluate_on_uniform_grid_fast, reconstruct_density
from .errors import ConfigError, NumericalError
from .kernels import Symbol
from .config import RunConfig, load_config
from .pricing import price

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _density(cfg: RunConfig, clamp: bool):
    symbol = Symbol(cfg.mesh, cfg.kernel, tol=cfg.truncation["symbol_tol"])
    kwargs = dict(
        phi_tol=cfg.truncation["phi_tol"],
        imag_tol=cfg.truncation["imag_tol"],
        floor=cfg.truncation["symbol_floor"],
    )
    run = evaluate_on_uniform_grid_fast if cfg.method == "fast" else reconstruct_density
    dens = run(cfg.model, cfg.mesh, symbol, cfg.grid, **kwargs)
    return dens.clamp_negative() if clamp else dens


def cmd_reconstruct(args) -> int:
    cfg = load_config(args.config)
    dens = _density(cfg, args.clamp_negative)
    out = Path(args.out)
    _write_atomic(out / cfg.output["csv"], dens.csv_text())
    diag = {**dens.diagnostics(), "clamped": dens.clamped, "config": cfg.resolved()}
    _write_atomic(out / cfg.output["diagnostics"], _dump(diag))
    return EXIT_OK


def cmd_price(args) -> int:
    cfg = load_config(args.config)
    if cfg.pricing is None:
        raise ConfigError("config has no pricing block")
    dens = _density(cfg, args.clamp_negative)
    result = price(cfg.pricing, dens, cfg.truncation["coverage_tol"]).to_dict()
    text = _dump(result)
    _write_atomic(Path(args.out) / cfg.output["result"], text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    suite = args.suite
    if args.config:
        try:
            suite = json.loads(Path(args.config).read_text()).get("suite", suite)
        except (OSError, json.JSONDecodeError, AttributeError) as exc:
            raise ConfigError(f"cannot read validate config: {exc}") from exc
    try:
        report = validation.run(suite)
    except KeyError:
        raise ConfigError(f"unknown suite {suite!r}; choose from all, {', '.join(validation.SUITES)}")
    text = _dump(report)
    _write_atomic(Path(args.out) / "validation.json", text)
    sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skdensity", description="Density reconstruction by cardinal sk-splines")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in (("reconstruct", cmd_reconstruct), ("price", cmd_price), ("validate", cmd_validate)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=name != "validate")
        p.add_argument("--out", default=".")
        p.add_argument("--clamp-negative", action="store_true")
        p.add_argument("--threads", type=int, default=None)
        if name == "validate":
            p.add_argument("--suite", default="all")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    threads = args.threads
    if threads is None and os.environ.get("SKDENSITY_THREADS"):
        threads = int(os.environ["SKDENSITY_THREADS"])
    try:
        _fft.set_threads(threads)
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        _fft.set_threads(None)


if __name__ == "__main__":
    sys.exit(main())
