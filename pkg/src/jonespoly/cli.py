"""Command line interface: ``jonespoly compute`` and ``jonespoly bench``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .bench import run_bench, to_csv, to_table
from .bracket import DEFAULT_CAP, normalize_engine
from .expected import expected_jones
from .geometry import DEFAULT_EPS
from .io import load_curve
from .reidemeister import parse_sequence

log = logging.getLogger("jonespoly")


@dataclass
class RunConfig:
    input: str
    format: str | None = None
    chain: str | None = None
    atom_limit: int | None = None
    closed: bool = False
    n: int = 1
    engine: str = "split_rm"
    direction: tuple[float, float, float] | None = None
    seed: int | None = None
    output: str = "t"  # "A", "t" or "json"
    rm_sequence: tuple[str, ...] | None = None
    cap: int = DEFAULT_CAP
    eps: float = DEFAULT_EPS
    workers: int = 1

    def __post_init__(self):
        if self.atom_limit is not None and self.atom_limit < 3:
            raise ValueError("--atoms must be at least 3")
        if self.n < 1:
            raise ValueError("--projections must be at least 1")
        self.engine = normalize_engine(self.engine)


def _vector(text: str) -> tuple[float, float, float]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def run_compute(cfg: RunConfig) -> str:
    curve = load_curve(cfg.input, cfg.format, cfg.chain, cfg.atom_limit, cfg.closed)
    res = expected_jones(
        curve, cfg.n, cfg.engine, seed=cfg.seed, direction=cfg.direction,
        eps=cfg.eps, cap=cfg.cap, rm_sequence=cfg.rm_sequence, workers=cfg.workers,
    )
    if cfg.output == "json":
        return json.dumps(res.to_dict(), indent=2)
    poly = res.poly_a if cfg.output == "A" else res.poly_t
    crossings = sorted({o.crossings for o in res.outcomes if o.accepted})
    lines = [
        f"jones ({cfg.output}): {poly}",
        f"projections accepted: {res.n_accepted}/{res.n_requested}",
        f"crossings: {', '.join(map(str, crossings))}",
        f"elapsed: {res.elapsed:.6f} s",
    ]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jonespoly", description="Jones polynomial of open and closed polygonal curves.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="Jones polynomial of one curve")
    c.add_argument("--input", required=True)
    c.add_argument("--format", choices=["xyz", "pdb"])
    c.add_argument("--chain")
    c.add_argument("--atoms", type=int, help="use only the first K points / CA atoms")
    c.add_argument("--closed", action="store_true", help="treat the curve as closed")
    c.add_argument("--projections", type=int, default=1, help="number of projection directions")
    c.add_argument("--engine", default="split-rm", choices=["oracle", "split", "split-rm", "split_rm"])
    g = c.add_mutually_exclusive_group()
    g.add_argument("--direction", type=_vector, help="explicit projection direction X,Y,Z")
    g.add_argument("--seed", type=int, help="use seeded random directions")
    c.add_argument("--var", choices=["A", "t"], default="t")
    c.add_argument("--json", action="store_true")
    c.add_argument("--rm-sequence", help="comma separated moves, default rm1,rm2,rm3,rm1,rm2")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle crossing cap")
    c.add_argument("--eps", type=float, default=DEFAULT_EPS)
    c.add_argument("--workers", type=int, default=1)

    b = sub.add_parser("bench", help="time the engines on several structures")
    b.add_argument("--input", required=True, help="comma separated paths")
    b.add_argument("--atoms", type=_ints, help="comma separated prefix lengths")
    b.add_argument("--engines", default="oracle,split,split-rm")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--csv", help="also write CSV here")
    b.add_argument("--chain")
    b.add_argument("--closed", action="store_true")
    b.add_argument("--cap", type=int, default=DEFAULT_CAP)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "compute":
            cfg = RunConfig(
                input=args.input, format=args.format, chain=args.chain, atom_limit=args.atoms,
                closed=args.closed, n=args.projections, engine=args.engine,
                direction=args.direction, seed=args.seed,
                output="json" if args.json else args.var,
                rm_sequence=parse_sequence(args.rm_sequence) if args.rm_sequence else None,
                cap=args.cap, eps=args.eps, workers=args.workers,
            )
            print(run_compute(cfg))
            return 0
        structures = []
        for path in [p for p in args.input.split(",") if p]:
            for k in args.atoms or [None]:
                label = Path(path).stem + (f"[:{k}]" if k else "")
                structures.append((label, load_curve(path, None, args.chain, k, args.closed)))
        engines = [e for e in args.engines.split(",") if e]
        cells = run_bench(structures, engines, args.reps, args.cap,
                          progress=lambda c: log.info("%s %s %s", c.structure, c.engine, c.status))
        print(to_table(cells))
        if args.csv:
            Path(args.csv).write_text(to_csv(cells), encoding="utf-8")
        return 0 if any(c.status == "ok" for c in cells) else 1
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
