"""Command-line front end: ``pauli-cone check|rays|verify|scan|tables``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from . import combinatorics as comb
from .cone_geometry import enumerate_rays, rays_to_json, tensor_rays
from .decomposability import (
    is_decomposable,
    is_decomposable_n2_closed_form,
    region_lambda,
    region_starry,
    region_theta,
    tensor_square_decomposable,
    tensor_square_mu,
    tensor_square_positive,
    verify_certificate,
    verify_ppt_squared,
)
from .pauli_maps import (
    MultiplierTensor,
    NamedQubitMap,
    is_cocp,
    is_cp,
    mult_to_spectrum,
    realignment_sum,
    tensor,
)
from .svg import render
from .symmetry import label_rays, orbit_decompose

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# Reference values checked by ``verify --suite tables``.
EXPECTED_KOSTKA = [
    [1, 1, 1, 1, 1, 2, 2, 3],
    [0, 1, 1, 2, 2, 4, 5, 7],
    [0, 0, 1, 1, 1, 1, 3, 6],
    [0, 0, 0, 1, 0, 1, 2, 3],
    [0, 0, 0, 0, 1, 1, 2, 3],
    [0, 0, 0, 0, 0, 1, 1, 2],
    [0, 0, 0, 0, 0, 0, 1, 3],
    [0, 0, 0, 0, 0, 0, 0, 1],
]
EXPECTED_COUNTS = [
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 4],
    [0, 0, 0, 0, 0, 1, 2, 6],
    [0, 0, 0, 1, 0, 2, 5, 12],
    [0, 0, 0, 0, 1, 2, 5, 12],
    [0, 0, 1, 2, 2, 4, 12, 28],
    [0, 1, 2, 5, 5, 12, 24, 48],
    [1, 4, 6, 12, 12, 28, 48, 90],
]
# Number of representatives printed per cell of the published class table
# (crossed-out transposes included).
EXPECTED_CLASSES = [
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 1, 0, 1, 2, 1],
    [0, 0, 0, 0, 1, 1, 2, 1],
    [0, 0, 1, 1, 1, 1, 3, 2],
    [0, 1, 1, 2, 2, 3, 6, 2],
    [1, 1, 1, 1, 1, 2, 2, 2],
]


class UsageError(Exception):
    pass


def parse_rat(text: str) -> Fraction:
    try:
        if any(c in text for c in ".eE"):
            raise ValueError
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r}") from None


def _flag(value) -> object:
    return value if isinstance(value, str) else bool(value)


def _family(spec: str) -> MultiplierTensor:
    name, _, arg = spec.partition(":")
    kinds = {"depol": "depolarizing", "theta": "theta", "lambda": "lambda"}
    if name not in kinds or not arg:
        raise UsageError("family must be depol:t, theta:a or lambda:b")
    return NamedQubitMap(kinds[name], parse_rat(arg)).mu


def _load_mu(path: str) -> MultiplierTensor:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    try:
        return MultiplierTensor.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed multiplier file: {exc}") from None


def cmd_check(args) -> int:
    sources = [s for s in (args.mu, args.xyz, args.family) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --mu, --xyz, --family")
    if args.mu is not None:
        if args.tensor_square:
            raise UsageError("--tensor-square needs a one-qubit --xyz or --family input")
        mu = _load_mu(args.mu)
        qubit = None
    else:
        if args.xyz is not None:
            parts = args.xyz.split(",")
            if len(parts) != 3:
                raise UsageError("--xyz takes three comma-separated rationals")
            qubit = MultiplierTensor(1, (1, *[parse_rat(p) for p in parts]))
        else:
            qubit = _family(args.family)
        mu = tensor(qubit, qubit) if args.tensor_square else qubit
    pair = mult_to_spectrum(mu)
    report = {
        "n": mu.n,
        "mu": [str(c) for c in mu.coeffs],
        "p": [str(x) for x in pair.p],
        "q": [str(x) for x in pair.q],
        "cp": is_cp(mu),
        "cocp": is_cocp(mu),
        "ppt": is_cp(mu) and is_cocp(mu),
        "realignment_sum": str(realignment_sum(mu)) if mu.coeffs[0] == 1 else None,
    }
    if mu.n <= 2:
        verdict = is_decomposable(mu, enumerate_rays(mu.n))
        report["decomposable"] = verdict.decomposable
        if verdict.decomposable:
            report["certificate_verified"] = verify_certificate(mu, verdict.s1, verdict.s2)
        if mu.n == 2:
            report["decomposable_closed_form"] = is_decomposable_n2_closed_form(mu)
    else:
        report["decomposable"] = None
    if mu.n == 1:
        # one-qubit positivity coincides with decomposability
        report["positive"] = report["decomposable"]
    elif args.tensor_square:
        x, y, z = qubit.coeffs[1:]
        report["positive"] = tensor_square_positive(x, y, z)
    else:
        report["positive"] = True if report.get("decomposable") else "unknown"
    print(json.dumps(report, indent=1, sort_keys=True))
    return EXIT_OK


def cmd_rays(args) -> int:
    rays = label_rays(enumerate_rays(args.n))
    try:
        Path(args.out).write_text(rays_to_json(rays) + "\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"rays: {len(rays)}")
    if args.orbits:
        for report in orbit_decompose(rays):
            print(f"orbit {report.label}: {report.size}")
    return EXIT_OK


class Checks:
    def __init__(self):
        self.failed: List[str] = []

    def __call__(self, name: str, ok: bool, detail: str = "") -> None:
        print(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
        if not ok:
            self.failed.append(name)


def suite_rays(check: Checks) -> None:
    r1, r2 = enumerate_rays(1), enumerate_rays(2)
    check("one-qubit ray count", len(r1) == 6, str(len(r1)))
    check("two-qubit ray count", len(r2) == 252, str(len(r2)))
    sizes = {o.label: o.size for o in orbit_decompose(r2)}
    check("orbit sizes", sizes == {"Box": 36, "Diagonal": 24, "Cross": 192}, str(sizes))
    check("rank bound", all(r.pattern.size() >= 15 for r in r2))
    products = {(t.pair.p, t.pair.q) for a in r1 for b in r1 for t in [tensor_rays(a, b)]}
    boxes = {(r.pair.p, r.pair.q) for r in label_rays(r2) if r.orbit_label == "Box"}
    check("box orbit is the tensor products", products == boxes)


def suite_tables(check: Checks) -> None:
    check("kostka table", comb.kostka_table() == EXPECTED_KOSTKA)
    counts = comb.count_table()
    check("brualdi equals enumeration", counts == comb.enumeration_table())
    check("count table", counts == EXPECTED_COUNTS)
    classes = comb.classes_table()
    diff = [
        f"{comb.UNIVERSE[i]}x{comb.UNIVERSE[j]}: {classes[i][j]} vs {EXPECTED_CLASSES[i][j]}"
        for i in range(8) for j in range(8) if classes[i][j] != EXPECTED_CLASSES[i][j]
    ]
    check("class table", not diff, "; ".join(diff))
    print(f"classes without transpose merging: {sum(map(sum, classes))}; "
          f"with transposes merged: {comb.transpose_merged_count()}")


def suite_pptsq(check: Checks) -> None:
    rays = enumerate_rays(2)
    full = verify_ppt_squared(rays)
    reduced = verify_ppt_squared(rays, reduced=True)
    check("cross compositions in box-diagonal cone", full.ok, f"{full.pairs} pairs, {full.distinct} distinct")
    check("reduced sweep agrees", reduced.ok == full.ok)


def random_positive_xyz(rng: random.Random, den: int = 24) -> tuple:
    while True:
        x, y, z = (Fraction(rng.randint(-den, den), den) for _ in range(3))
        if tensor_square_positive(x, y, z):
            return x, y, z


def suite_main(check: Checks, samples: int = 1000, seed: int = 7) -> None:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        x, y, z = random_positive_xyz(rng)
        if not (tensor_square_decomposable(x, y, z)
                and is_decomposable_n2_closed_form(tensor_square_mu(x, y, z))):
            bad += 1
    check("positive tensor squares are decomposable", bad == 0, f"{samples} samples, {bad} failures")


SUITES = {"rays": suite_rays, "tables": suite_tables, "pptsq": suite_pptsq, "main": suite_main}


def cmd_verify(args) -> int:
    check = Checks()
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        SUITES[name](check)
    if check.failed:
        print("failed: " + ", ".join(check.failed))
        return EXIT_FAIL
    return EXIT_OK


def grid(lo: Fraction, hi: Fraction, step: Fraction) -> list:
    out = []
    k = 0
    while lo + k * step <= hi:
        out.append(lo + k * step)
        k += 1
    return out


def _threads() -> int:
    raw = os.environ.get("PAULI_CONE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError("PAULI_CONE_THREADS must be an integer") from None
    return os.cpu_count() or 1


def _eval(job):
    fn, params = job
    return fn(*params)


def ordered_map(fn: Callable, params: Sequence[tuple]) -> list:
    """Evaluate grid points, possibly in parallel, returning results in input order."""
    workers = _threads()
    jobs = [(fn, p) for p in params]
    if workers <= 1 or len(jobs) < 64:
        return [_eval(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval, jobs, chunksize=64))


STARRY_SLICES = 9


def cmd_scan(args) -> int:
    step = parse_rat(args.step)
    if not 0 < step <= Fraction(1, 4):
        raise UsageError("step must lie in (0, 1/4]")
    if args.region in ("theta", "lambda"):
        axis = grid(Fraction(0), Fraction(1), step)
        fn = region_theta if args.region == "theta" else region_lambda
        params = [(u, t) for u in axis for t in axis]
        points = ordered_map(fn, params)
        name = "a" if args.region == "theta" else "b"
        header = f"{name},t,positive,decomposable,cp,cocp,ppt"
        panels = [(f"{args.region}: horizontal {name}, vertical t", points, axis, axis,
                   lambda pt: pt.params)]
        columns = 1
    else:
        axis = grid(Fraction(-1), Fraction(1), step)
        zs = [Fraction(-1) + Fraction(2 * k, STARRY_SLICES - 1) for k in range(STARRY_SLICES)]
        params = [(x, y, z) for z in zs for x in axis for y in axis]
        points = ordered_map(region_starry, params)
        header = "x,y,z,positive,decomposable,cp,cocp,ppt"
        panels = [
            (f"z = {z}", [pt for pt in points if pt.params[2] == z], axis, axis,
             lambda pt: pt.params[:2])
            for z in zs
        ]
        columns = 3
    try:
        with open(args.csv, "w", newline="") as fh:
            fh.write(header + "\n")
            for pt in points:
                fh.write(pt.csv_row() + "\n")
        if args.svg:
            Path(args.svg).write_text(render(panels, columns=columns))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"points: {len(points)}")
    return EXIT_OK


def cmd_tables(args) -> int:
    table = {"kostka": comb.kostka_table, "counts": comb.count_table, "classes": comb.classes_table}[args.which]()
    labels = ["".join(map(str, p)) for p in comb.UNIVERSE]
    lines = ["r\\s," + ",".join(labels)]
    lines += [labels[i] + "," + ",".join(map(str, row)) for i, row in enumerate(table)]
    text = "\n".join(lines) + "\n"
    if args.csv:
        try:
            Path(args.csv).write_text(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pauli-cone", description="Exact tools for Pauli-diagonal qubit maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify one map")
    p.add_argument("--mu", help="JSON file with multipliers")
    p.add_argument("--xyz", help="one-qubit multipliers x,y,z (first one is 1)")
    p.add_argument("--family", help="depol:t, theta:a or lambda:b")
    p.add_argument("--tensor-square", action="store_true", help="use the tensor square of a one-qubit map")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rays", help="enumerate extremal rays")
    p.add_argument("--n", type=int, choices=(1, 2), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--orbits", action="store_true")
    p.set_defaults(func=cmd_rays)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="scan a parameter region")
    p.add_argument("--region", choices=("theta", "lambda", "starry"), required=True)
    p.add_argument("--step", required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("tables", help="emit a combinatorial table")
    p.add_argument("--which", choices=("kostka", "counts", "classes"), required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
