"""Command-line interface.

Subcommands: verify (multiset equality reports), project (Coxeter-plane
figure data), chain (gap sweeps / pseudo-critical scan), masses (closed
forms vs the Perron-Frobenius leg).  Exit codes: 0 success, 1
computational failure, 2 usage error.  All file output is deterministic.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import chain as chain_mod
from . import coxplane, spectra
from .rootsystems import SimpleTypeId, bicolor, coxeter_element, root_system

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2


def parse_grid(spec: str) -> list[float]:
    """Parse `start:stop:step` (endpoints inclusive within half a step) or a single value."""
    parts = spec.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must be 'start:stop:step' or a single number, got {spec!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("grid step must be positive")
    values = []
    x = start
    while x <= stop + step / 2:
        values.append(round(x, 12))
        x += step
    if not values:
        raise ValueError(f"grid {spec!r} is empty")
    return values


def _parse_types(raw: str) -> list[SimpleTypeId]:
    return [SimpleTypeId.from_string(tok) for tok in raw.split(",") if tok.strip()]


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        type_ids = _parse_types(args.types)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not type_ids:
        print("error: no types given", file=sys.stderr)
        return EXIT_USAGE
    for tid in type_ids:
        if tid.family == "A" and tid.rank == 1:
            print("error: A1 is excluded from verification", file=sys.stderr)
            return EXIT_USAGE
    all_passed = True
    for tid in type_ids:
        report = spectra.verify_correspondence(tid, tol=args.tol)
        print(report.to_json())
        all_passed = all_passed and report.passed
    return EXIT_OK if all_passed else EXIT_COMPUTATION


def cmd_project(args: argparse.Namespace) -> int:
    try:
        tid = SimpleTypeId.from_string(args.type)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if tid.rank < 2:
        print("error: projection needs rank >= 2", file=sys.stderr)
        return EXIT_USAGE
    if not args.svg and not args.csv:
        print("error: give --svg and/or --csv output paths", file=sys.stderr)
        return EXIT_USAGE

    rs = root_system(tid)
    w = coxeter_element(rs, bicolor(rs.cartan))
    orbits = spectra.orbit_decomposition(rs, w)
    basis = coxplane.coxeter_plane(w, rs.coxeter_number)
    points = coxplane.project(rs, basis, orbits)
    try:
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write(coxplane.emit_csv(points))
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(coxplane.emit_svg(points))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    circles = coxplane.distinct_circle_count(points)
    print(f"{len(points)} points on {circles} circles")
    return EXIT_OK


def cmd_chain(args: argparse.Namespace) -> int:
    try:
        grid = parse_grid(args.gx)
        params_probe = chain_mod.ChainParams(
            sites=args.n, coupling=args.k, gx=grid[0], gz=args.gz, boundary=args.boundary
        )
        if args.n > chain_mod.max_sites():
            raise ValueError(
                f"{args.n} sites exceeds the budget of {chain_mod.max_sites()} "
                f"(override with {chain_mod.MAX_SITES_ENV})"
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    del params_probe

    try:
        if args.scan_critical:
            if args.gz != 0.0:
                print("error: --scan-critical requires --gz 0", file=sys.stderr)
                return EXIT_USAGE
            gx_star = chain_mod.pseudo_critical_scan(args.n, args.k, grid, boundary=args.boundary)
            print(f"gx* = {gx_star:.12g}")
            return EXIT_OK
        table = chain_mod.ratio_sweep(
            args.n, args.k, args.gz, grid, k=args.levels, boundary=args.boundary
        )
    except chain_mod.EigensolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION

    try:
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write(table.to_csv())
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(table.to_json() + "\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    if not args.csv and not args.json:
        print(table.to_csv(), end="")
    return EXIT_OK


def cmd_masses(args: argparse.Namespace) -> int:
    masses = spectra.zamolodchikov_masses()
    e8 = root_system(SimpleTypeId("E", 8))
    _, v = spectra.pf_eigenvector(e8.cartan, e8.coxeter_number)
    pf_ordered = spectra.e8_masses_from_nodes(v)
    print("i   closed-form      eigenvector      |diff|")
    for i, (m, p) in enumerate(zip(masses.values, pf_ordered), start=1):
        print(f"m{i}  {m:<16.12g} {p:<16.12g} {abs(m - p):.3g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="e8ising",
        description="Root-system mass spectra and Ising-chain gap numerics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check the three-leg mass-spectrum equality")
    p_verify.add_argument("--types", required=True, help="comma-separated list, e.g. A2,D4,E8")
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.set_defaults(func=cmd_verify)

    p_project = sub.add_parser("project", help="project a root system onto its Coxeter plane")
    p_project.add_argument("--type", required=True, help="e.g. E8")
    p_project.add_argument("--svg", help="SVG output path")
    p_project.add_argument("--csv", help="CSV output path")
    p_project.set_defaults(func=cmd_project)

    p_chain = sub.add_parser("chain", help="gap sweep / pseudo-critical scan of the Ising chain")
    p_chain.add_argument("--n", type=int, required=True, help="site count")
    p_chain.add_argument("--k", type=float, default=1.0, help="overall coupling K")
    p_chain.add_argument("--gz", type=float, default=0.0, help="longitudinal field")
    p_chain.add_argument("--gx", required=True, help="transverse field grid start:stop:step or value")
    p_chain.add_argument("--levels", type=int, default=6, help="eigenvalues per grid point")
    p_chain.add_argument("--boundary", choices=("periodic", "open"), default="periodic")
    p_chain.add_argument("--csv", help="CSV output path")
    p_chain.add_argument("--json", help="JSON output path")
    p_chain.add_argument("--scan-critical", action="store_true", help="print the gap-minimizing gx")
    p_chain.set_defaults(func=cmd_chain)

    p_masses = sub.add_parser("masses", help="closed-form mass table vs the eigenvector leg")
    p_masses.set_defaults(func=cmd_masses)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize other codes
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except chain_mod.EigensolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
