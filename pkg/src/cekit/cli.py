"""Command-line surface: benchmark tables, sweeps, property suites.

Exit codes: 0 success, 2 validation or parse error, 3 property-suite
failure, 4 resource guard. Tables are emitted as CSV (fixed column order,
15 significant digits) or JSON; sweeps fan out across grid points under
the CEKIT_THREADS worker cap and are assembled in grid order, so a fixed
seed yields byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Iterable, Sequence

from .entropy import EntropyParams
from .errors import ResourceLimitError
from .measures import cce_pure, named_measures
from .parallel import parallel_map
from .states import StateRecipe, dicke, ghz, ghz_w_closed_forms, star, w
from .suites import DEFAULT_TRIALS, SUITES, run_suite
from .swaptest import (
    bounds_from_estimate,
    cce_from_distribution,
    estimate_from_shots,
    sample_shots,
    swap_test_distribution,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SUITE_FAILURE = 3
EXIT_RESOURCE = 4


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def _emit(rows: list[dict], columns: Sequence[str], fmt: str, out: str | None) -> None:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(row[c]) for c in columns) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"columns": list(columns), "rows": rows}, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_grid(text: str) -> list[float]:
    """Either a single float or 'start:stop:steps' inclusive of both ends."""
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must be a number or start:stop:steps, got {text!r}")
    start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1:
        raise ValueError(f"grid needs at least one step, got {steps}")
    if steps == 1:
        return [start]
    return [start + (stop - start) * i / (steps - 1) for i in range(steps)]


def _parse_subset(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def cmd_compute(args: argparse.Namespace) -> int:
    rows = []
    columns = ["state", "subset", "alpha", "beta", "value"]
    if args.named:
        columns += ["e", "r2", "t3", "c"]
    for recipe_text in args.state:
        recipe = StateRecipe.parse(recipe_text)
        psi = recipe.build()
        if not hasattr(psi, "amplitudes"):
            raise ValueError(f"compute needs a pure-state recipe, got {recipe_text!r}")
        subset = _parse_subset(args.s) if args.s else tuple(range(1, psi.n_subsystems + 1))
        grid = [(a, b) for a in _parse_grid(args.alpha) for b in _parse_grid(args.beta)]
        if len(subset) > 12:
            print(
                f"note: subset of {len(subset)} labels means 2^{len(subset)} = "
                f"{1 << len(subset)} reduced-state eigensolves per grid point",
                file=sys.stderr,
            )

        nm = named_measures(psi, subset) if args.named else None

        def one(point: tuple[float, float]) -> dict:
            a, b = point
            row = {
                "state": recipe.label(),
                "subset": "+".join(str(i) for i in subset),
                "alpha": a,
                "beta": b,
                "value": cce_pure(psi, subset, EntropyParams(a, b)).value,
            }
            if nm is not None:
                row.update({"e": nm.e, "r2": nm.r2, "t3": nm.t3, "c": nm.c})
            return row

        rows += parallel_map(one, grid)
    _emit(rows, columns, args.format, args.out)
    return EXIT_OK


def cmd_ghz_w_sweep(args: argparse.Namespace) -> int:
    if not 2 <= args.nmin <= args.nmax <= 30:
        raise ValueError(f"need 2 <= nmin <= nmax <= 30, got {args.nmin}..{args.nmax}")
    rows = []
    ok = True
    for n in range(args.nmin, args.nmax + 1):
        sizes = range(1, n + 1) if args.sizes == "all" else _parse_subset(args.sizes)
        exact = n <= 10  # statevectors up to n = 10, closed forms beyond
        if exact:
            psi_g, psi_w = ghz(n), w(n)
        for size in sizes:
            if not 1 <= size <= n:
                raise ValueError(f"subset size {size} out of range for n={n}")
            if exact:
                subset = tuple(range(1, size + 1))
                g = named_measures(psi_g, subset)._asdict()
                wv = named_measures(psi_w, subset)._asdict()
            else:
                g, wv = ghz_w_closed_forms(n, size)
            for measure in ("e", "r2", "t3", "c"):
                delta = g[measure] - wv[measure]
                rows.append(
                    {
                        "n": n,
                        "size": size,
                        "measure": measure,
                        "ghz": g[measure],
                        "w": wv[measure],
                        "delta": delta,
                    }
                )
                if n >= 3 and delta <= 0:
                    ok = False
                    print(f"separation violated at n={n}, size={size}, {measure}", file=sys.stderr)
    _emit(rows, ["n", "size", "measure", "ghz", "w", "delta"], args.format, args.out)
    return EXIT_OK if ok else EXIT_SUITE_FAILURE


def cmd_star_sweep(args: argparse.Namespace) -> int:
    thetas = _parse_grid(args.grid)
    if any(t < 0 or t > math.pi / 2 + 1e-12 for t in thetas):
        raise ValueError("star sweep grid must lie within [0, pi/2]")

    def one(theta: float) -> dict:
        nm = named_measures(star(theta), (1, 2, 3, 4))
        return {"theta": theta, "e": nm.e, "r2": nm.r2, "t3": nm.t3, "c": nm.c}

    rows = parallel_map(one, thetas)
    ok = True
    tol = 1e-10
    for row in rows:
        if not (row["e"] >= row["r2"] - tol and row["r2"] >= row["c"] - tol and row["c"] >= row["t3"] - tol):
            ok = False
            print(f"ordering chain violated at theta={row['theta']}", file=sys.stderr)
    nearest = min(range(len(thetas)), key=lambda i: abs(thetas[i] - math.pi / 4))
    for measure in ("e", "r2", "t3", "c"):
        peak = max(range(len(rows)), key=lambda i: rows[i][measure])
        if rows[peak][measure] > rows[nearest][measure] + tol:
            ok = False
            print(f"{measure} peaks away from pi/4 (theta={thetas[peak]})", file=sys.stderr)
    _emit(rows, ["theta", "e", "r2", "t3", "c"], args.format, args.out)
    return EXIT_OK if ok else EXIT_SUITE_FAILURE


def cmd_dicke_table(args: argparse.Namespace) -> int:
    rows = []
    for k in range(5):
        nm = named_measures(dicke(4, k), (1, 2, 3, 4))
        rows.append({"k": k, "e": nm.e, "r2": nm.r2, "t3": nm.t3, "c": nm.c})
    ok = True
    tol = 1e-10
    for measure in ("e", "r2", "t3", "c"):
        for k in range(5):
            if abs(rows[k][measure] - rows[4 - k][measure]) > tol:
                ok = False
                print(f"k <-> 4-k symmetry violated for {measure} at k={k}", file=sys.stderr)
            if k != 2 and rows[k][measure] >= rows[2][measure] + tol:
                ok = False
                print(f"k=2 is not maximal for {measure} (k={k})", file=sys.stderr)
    _emit(rows, ["k", "e", "r2", "t3", "c"], args.format, args.out)
    return EXIT_OK if ok else EXIT_SUITE_FAILURE


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_suite(args.suite, seed=args.seed, trials=args.trials)
    print(f"suite {result.name}: {result.trials} trials, {len(result.failures)} failures")
    for failure in result.failures:
        print(f"  FAIL {failure}")
    print("PASS" if result.passed else "FAIL")
    return EXIT_OK if result.passed else EXIT_SUITE_FAILURE


def cmd_swaptest(args: argparse.Namespace) -> int:
    recipe = StateRecipe.parse(args.state)
    psi = recipe.build()
    if not hasattr(psi, "amplitudes"):
        raise ValueError("swaptest needs a pure-state recipe")
    if any(d != 2 for d in psi.dims):
        raise ValueError(f"swaptest needs a qubit recipe, got dims {psi.dims}")
    subset = _parse_subset(args.s) if args.s else tuple(range(1, psi.n_subsystems + 1))
    dist = swap_test_distribution(psi)
    exact = cce_from_distribution(dist, subset)
    record = sample_shots(dist, args.shots, args.seed)
    estimate, sigma = estimate_from_shots(record, psi.n_subsystems, subset)
    bounds = bounds_from_estimate(estimate)
    print(f"state {recipe.label()}  subset {'+'.join(str(i) for i in subset)}")
    print(f"exact C = {_fmt(exact)}")
    print(f"estimate C = {_fmt(estimate)} +- {_fmt(sigma)}  ({args.shots} shots, seed {args.seed})")
    print(f"E lower bound  = {_fmt(bounds.e_lower)}")
    print(f"R2 lower bound = {_fmt(bounds.r2_lower)}")
    print(f"T3 upper bound = {_fmt(bounds.t3_upper)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cekit",
        description="Concentratable-entanglement tables, sweeps, SWAP-test estimates, and property suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="measure values for a state over an (alpha, beta) grid")
    p.add_argument("--state", action="append", required=True, help="recipe, e.g. ghz:3 or dicke:4:2")
    p.add_argument("--s", default=None, help="comma-separated subsystem labels, default all")
    p.add_argument("--alpha", default="1", help="value or start:stop:steps")
    p.add_argument("--beta", default="1", help="value or start:stop:steps")
    p.add_argument("--named", action="store_true", help="append the four benchmark measures")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("ghz-w-sweep", help="benchmark separation of GHZ and W states")
    p.add_argument("--nmin", type=int, default=3)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--sizes", default="all", help="comma-separated subset sizes, default all")
    p.set_defaults(func=cmd_ghz_w_sweep)

    p = sub.add_parser("star-sweep", help="four benchmark measures along the star-network angle")
    p.add_argument("--grid", default=f"0:{math.pi / 2}:100", help="theta grid start:stop:steps")
    p.set_defaults(func=cmd_star_sweep)

    p = sub.add_parser("dicke-table", help="four-qubit Dicke-state benchmark table")
    p.set_defaults(func=cmd_dicke_table)

    p = sub.add_parser("verify", help="run a randomized property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=None, help=f"default per suite: {DEFAULT_TRIALS}")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("swaptest", help="simulate the parallelized SWAP test and derived bounds")
    p.add_argument("--state", required=True, help="qubit recipe, n <= 5")
    p.add_argument("--s", default=None, help="comma-separated subsystem labels, default all")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_swaptest)

    for name, cmd in sub.choices.items():
        if name in ("compute", "ghz-w-sweep", "star-sweep", "dicke-table"):
            cmd.add_argument("--format", choices=("csv", "json"), default="csv")
            cmd.add_argument("--out", default=None, help="output path, default stdout")
        if name in ("compute",):
            cmd.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
