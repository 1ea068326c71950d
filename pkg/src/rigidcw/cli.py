"""Command-line front end.

Primary results go to stdout and are deterministic; timings, warnings and
errors go to stderr.  Exit codes: 2 bad input, 3 rigidity, 4 rigid facets
hypothesis failure, 5 resource bound.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings

from . import complex as cx
from .bredon import bredon_homology, stabilizer_census, torsion_subcomplex
from .errors import GCWError
from .fixtures import FIXTURES
from .homalg import equivariant_euler_characteristic, euler_characteristic, format_homology, space_homology
from .subdivide import SubdivisionMethod, rigidify

_METHOD_LABEL = {
    SubdivisionMethod.RFS: "RFS",
    SubdivisionMethod.HYBRID: "HYBRID",
    SubdivisionMethod.VSS: "VSS",
    SubdivisionMethod.BARYCENTRIC: "BCS",
}


def _row(name, values) -> str:
    return f"{name}: " + " ".join(str(v) for v in values)


def counts_report(X: cx.EquivariantComplex, prefix: str = "") -> list[str]:
    cells = X.cell_counts()
    return [
        _row("dim", range(len(cells))),
        _row(f"{prefix}orbits", X.orbit_counts()),
        _row(f"{prefix}cells", cells),
    ]


def _rigidity_lines(X) -> list[str]:
    report = X.rigidity()
    if report.rigid:
        return ["rigid: yes"]
    n = len(report.offenders)
    return [f"rigid: no ({n} offender{'s' if n != 1 else ''})"] + [f"  {o}" for o in report.offenders]


def cmd_info(args, out):
    X = cx.load(args.file)
    lines = counts_report(X) + _rigidity_lines(X)
    out.write("\n".join(lines) + "\n")


def cmd_subdivide(args, out):
    X = cx.load(args.file)
    t0 = time.perf_counter()
    Y = rigidify(X, args.method, fallback=not args.no_fallback, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    lines = [f"method: {SubdivisionMethod.parse(args.method).value}"] + counts_report(Y)
    lines.append(f"{Y.cell_counts()[-1] if Y.cells else 0} top cells")
    lines += _rigidity_lines(Y)
    out.write("\n".join(lines) + "\n")
    print(f"subdivision time: {elapsed:.3f}s", file=sys.stderr)
    if args.output:
        cx.save(Y, args.output)


def cmd_homology(args, out):
    out.write("\n".join(format_homology(space_homology(cx.load(args.file)))) + "\n")


def cmd_euler(args, out):
    X = cx.load(args.file)
    out.write(f"chi: {euler_characteristic(X)}\nequivariant chi: {equivariant_euler_characteristic(X)}\n")


def cmd_bredon(args, out):
    out.write("\n".join(format_homology(bredon_homology(cx.load(args.file)))) + "\n")


def cmd_torsion(args, out):
    Y = torsion_subcomplex(cx.load(args.file), args.prime)
    out.write(f"{args.prime}-torsion subcomplex\n")
    out.write("\n".join(counts_report(Y)) + "\n")
    if args.output:
        cx.save(Y, args.output)


def cmd_census(args, out):
    out.write(stabilizer_census(cx.load(args.file)).format() + "\n")


def cmd_fixture(args, out):
    name = args.name
    if name in ("simplex", "polygon", "cube"):
        default = {"simplex": 2, "polygon": 4, "cube": 2}[name]
        n = args.n if args.n is not None else default
        X = FIXTURES[name](n, args.symmetry) if name == "cube" else FIXTURES[name](n)
    elif name == "tree":
        X = FIXTURES[name](args.variant)
    else:
        X = FIXTURES[name]()
    if args.output:
        cx.save(X, args.output)
    else:
        out.write(cx.dumps(X) + "\n")


def cmd_bench(args, out):
    X = cx.load(args.file)
    lines = counts_report(X, "X ")
    times = {}
    for method, label in _METHOD_LABEL.items():
        t0 = time.perf_counter()
        Y = rigidify(X, method, jobs=args.jobs)
        times[label] = time.perf_counter() - t0
        lines += counts_report(Y, f"{label} ")[1:]
    out.write("\n".join(lines) + "\n")
    base = min(times.values()) or 1e-9
    for label, t in times.items():
        print(f"{label}: {t:.4f}s (x{t / base:.2f})", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigidcw", description="Rigidify equivariant CW complexes and compute invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="complex in gcw-1 format")
        return sp

    with_file("info", "orbit and cell counts, rigidity").set_defaults(func=cmd_info)
    sp = with_file("subdivide", "rigidify a complex")
    sp.add_argument("--method", default="rfs", choices=[m.value for m in SubdivisionMethod])
    sp.add_argument("-o", "--output", help="write the result here")
    sp.add_argument("--no-fallback", action="store_true",
                    help="fail (exit 4) instead of falling back to virtually simplicial subdivision")
    sp.add_argument("--jobs", type=int, default=1, help="threads per dimension pass")
    sp.set_defaults(func=cmd_subdivide)
    with_file("homology", "integral homology of the enumerated cells").set_defaults(func=cmd_homology)
    with_file("euler", "ordinary and equivariant Euler characteristic").set_defaults(func=cmd_euler)
    with_file("bredon", "Bredon homology with complex representation ring coefficients").set_defaults(
        func=cmd_bredon)
    sp = with_file("torsion", "subcomplex of cells with stabilizer order divisible by a prime")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_torsion)
    with_file("census", "orbits sorted by stabilizer type").set_defaults(func=cmd_census)
    sp = sub.add_parser("fixture", help="write a built-in example complex")
    sp.add_argument("name", choices=sorted(FIXTURES))
    sp.add_argument("--n", type=int, help="dimension (simplex, cube) or number of sides (polygon)")
    sp.add_argument("--variant", default="t1", choices=["t1", "t2"], help="modular tree variant")
    sp.add_argument("--symmetry", default="full", choices=["full", "mirror"], help="cube symmetry")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_fixture)
    sp = with_file("bench", "run all four subdivision methods")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            args.func(args, sys.stdout)
            code = 0
        except GCWError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = exc.exit_code
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
