"""Command-line interface: compute, verify and per-prime evaluation of Phi_ell."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .. import __version__
from ..crt import CrtConfig, height_bound, log_abs, modular_polynomial, modular_polynomial_mod_m, validate_grid
from ..errors import InternalInconsistency, ModPolyError
from ..modpoly import find_diamond_parameters, modular_polynomial_modp, next_suitable_prime
from ..ringarith import QuadExtField, is_probable_prime
from .formats import GridFormatError, flat_to_grid, grid_to_flat, grid_to_json, json_to_grid

THREADS_ENV = "MODPOLY_THREADS"
EXIT_OK, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2

log = logging.getLogger("modpoly_deform")


@dataclass
class RunConfig:
    ell: int
    mode: str = "full"
    modulus: Optional[int] = None
    prime: Optional[int] = None
    seed: int = 0
    threads: int = 1
    fmt: str = "flat"
    out: Optional[str] = None
    verbose: int = 0

    def __post_init__(self):
        if self.ell < 3 or self.ell % 2 == 0 or not is_probable_prime(self.ell):
            raise ValueError(f"--ell {self.ell} is not an odd prime")
        if self.mode == "mod-m" and (self.modulus is None or self.modulus < 2):
            raise ValueError("--mod must be at least 2")
        if self.fmt not in ("flat", "json"):
            raise ValueError(f"unknown format {self.fmt}")

    def crt_config(self) -> CrtConfig:
        return CrtConfig(seed=self.seed, threads=self.threads)


def _odd_prime(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 3 or v % 2 == 0 or not is_probable_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not an odd prime")
    return v


def _default_threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("flat", "json"), default="flat", dest="fmt")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help=f"worker processes (default from ${THREADS_ENV}, else 1)")
    common.add_argument("--verbose", "-v", action="count", default=0)
    parser = argparse.ArgumentParser(prog="modpoly", description="Classical modular polynomials.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", parents=[common], help="compute Phi_ell over Z or mod m")
    c.add_argument("--ell", type=_odd_prime, required=True)
    c.add_argument("--mod", type=int, dest="modulus", help="reduce modulo this integer")
    v = sub.add_parser("verify", parents=[common], help="check a coefficient file")
    v.add_argument("path")
    v.add_argument("--ell", type=_odd_prime, help="level (default: from the grid size)")
    v.add_argument("--spot-check", action="store_true",
                   help="also recompute modulo one suitable prime and compare")
    m = sub.add_parser("modp", parents=[common], help="phi_ell modulo one suitable prime")
    m.add_argument("--ell", type=_odd_prime, required=True)
    m.add_argument("--prime", type=int, help="suitable prime (default: the first one)")
    m.add_argument("--direct", action="store_true",
                   help="use the direct per-isogeny lift instead of isogeny diamonds")
    return parser


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _nonresidues(primes):
    # F_{p^2} = F_p[t]/(t^2 - d) for each prime; recorded so runs can be reproduced
    return {str(p): QuadExtField(p).d for p in primes}


def _render(grid, fmt, **meta):
    return grid_to_flat(grid) if fmt == "flat" else grid_to_json(grid, **meta)


def cmd_compute(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    if cfg.modulus is not None:
        grid, primes = modular_polynomial_mod_m(cfg.ell, cfg.modulus, cfg.crt_config())
        _emit(_render(grid, cfg.fmt, ell=cfg.ell, modulus=cfg.modulus, primes=primes,
                      nonresidues=_nonresidues(primes),
                      seed=cfg.seed, size=cfg.ell + 2), cfg.out)
        print(f"ell={cfg.ell} mod {cfg.modulus}: {len(primes)} primes, "
              f"{time.perf_counter() - t0:.1f}s", file=sys.stderr)
        return EXIT_OK
    res = modular_polynomial(cfg.ell, cfg.crt_config())
    _emit(_render(res.grid, cfg.fmt, ell=cfg.ell, primes=res.primes, seed=cfg.seed,
                  nonresidues=_nonresidues(res.primes),
                  skipped=[p for p, _ in res.skipped], size=cfg.ell + 2), cfg.out)
    print(f"ell={cfg.ell}: {len(res.primes)} primes used, {len(res.skipped)} skipped, "
          f"{res.seconds:.1f}s; max log|a| = {res.max_log_height():.2f}, "
          f"bound B - log 2 = {res.bound.B - 0.6931471805599453:.2f}", file=sys.stderr)
    return EXIT_OK


def read_grid(path: str):
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return json_to_grid(text)
    return flat_to_grid(text)


def cmd_verify(args) -> int:
    try:
        grid = read_grid(args.path)
    except (OSError, GridFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ell = args.ell or len(grid) - 2
    if ell < 3 or not is_probable_prime(ell):
        print(f"grid size {len(grid)} does not correspond to an odd prime level", file=sys.stderr)
        return EXIT_FAIL
    if len(grid) < ell + 2:
        grid = [row + [0] * (ell + 2 - len(row)) for row in grid]
        grid += [[0] * (ell + 2) for _ in range(ell + 2 - len(grid))]
    checks = validate_grid(grid, ell, height_bound(ell))
    if args.spot_check and all(ok for _, ok in checks):
        params = find_diamond_parameters(ell)
        p = next_suitable_prime(params, 10 ** 4)
        for _ in range(20):
            try:
                ref = modular_polynomial_modp(ell, p, params)
                break
            except ModPolyError:
                p = next_suitable_prime(params, p)
        reduced = [[c % p for c in row] for row in grid]
        checks.append((f"spot-prime-{p}", reduced == ref.grid))
    for name, ok in checks:
        print(f"{name}: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    failed = [name for name, ok in checks if not ok]
    if failed:
        print(f"verification failed: {failed[0]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_modp(cfg: RunConfig, direct: bool) -> int:
    params = find_diamond_parameters(cfg.ell)
    p = cfg.prime or next_suitable_prime(params)
    if (p + 1) % params.prime_modulus or not is_probable_prime(p):
        print(f"{p} is not a suitable prime for ell = {cfg.ell}", file=sys.stderr)
        return EXIT_FAIL
    if direct:
        from ..oracle import modp_direct
        res = modp_direct(cfg.ell, p, params, seed=cfg.seed)
    else:
        from ..modpoly import PipelineOptions
        res = modular_polynomial_modp(cfg.ell, p, params, PipelineOptions(seed=cfg.seed))
    _emit(_render(res.grid, cfg.fmt, ell=cfg.ell, prime=p, seed=cfg.seed,
                  nonresidues=_nonresidues([p]), size=cfg.ell + 2), cfg.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s",
                        level=logging.WARNING - 10 * min(args.verbose, 2))
    try:
        if args.command == "verify":
            return cmd_verify(args)
        mode = "per-prime" if args.command == "modp" else (
            "mod-m" if args.modulus is not None else "full")
        try:
            cfg = RunConfig(ell=args.ell, mode=mode, modulus=getattr(args, "modulus", None),
                            prime=getattr(args, "prime", None), seed=args.seed,
                            threads=args.threads, fmt=args.fmt, out=args.out, verbose=args.verbose)
        except ValueError as exc:
            parser.error(str(exc))
        if args.command == "compute":
            return cmd_compute(cfg)
        return cmd_modp(cfg, args.direct)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        for key, value in exc.diagnostics.items():
            print(f"  {key}: {value}", file=sys.stderr)
        return EXIT_INTERNAL
    except ModPolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
