"""Command-line front end.

Exit codes: 0 all checks pass, 1 verification failure, 2 invalid input,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, kernels
from .errors import BadCongruence, BudgetExceeded, HemisystemError, InvalidInput
from .field import build_field, split_prime_power

log = logging.getLogger("hemisystems")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
EXPORT_DEFAULT_MAX_VERTICES = 1000

# option name -> (type, default) for everything a config file may set
_OPTIONS = {
    "q": (int, None),
    "p": (int, None),
    "f": (int, None),
    "d0": (int, None),
    "checks": (str, None),
    "out": (str, None),
    "cache_dir": (str, None),
    "sample": (int, 10_000),
    "seed": (int, 0),
    "force": (bool, False),
    "tolerance": (float, 1e-6),
    "descriptor": (str, None),
    "points": (str, None),
    "lines_out": (str, None),
}


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off", ""):
        return False
    raise InvalidInput(f"not a boolean: {text!r}")


def read_config(path) -> dict:
    """key = value lines; keys are long flag names with '-' or '_'."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidInput(f"cannot read config {path}: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _OPTIONS:
            raise InvalidInput(f"{path}:{n}: unknown key {key!r}")
        typ = _OPTIONS[key][0]
        try:
            out[key] = _bool(value) if typ is bool else typ(value)
        except ValueError as exc:
            raise InvalidInput(f"{path}:{n}: bad value for {key}: {value!r}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order q = p^f")
    common.add_argument("--p", type=int, help="characteristic (with --f)")
    common.add_argument("--f", type=int, help="extension degree of q over p")
    common.add_argument("--cache-dir", help="directory for cached log/Zech tables")
    common.add_argument("--config", help="key = value file; explicit flags win")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hemisystems",
        description="Cyclotomic hemisystems of the elliptic quadric Q^-(5, q), q = 3 (mod 4).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build the descriptor (JSON)")
    c.add_argument("--d0", type=int, help="base point of the conic (default: min I_Q)")

    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    v.add_argument("--d0", type=int)
    v.add_argument("--descriptor", help="descriptor JSON to verify instead of building one")
    v.add_argument("--points", help="verify this point-id file instead of M (lines and perp checks)")
    v.add_argument("--checks", help="comma list from lines,perp,chars,srg,group,conic,gauss")
    v.add_argument("--sample", type=int, help="sampled pairs for the SRG check (q >= 7)")
    v.add_argument("--seed", type=int)
    v.add_argument("--tolerance", type=float, help="relative tolerance for complex checks")
    v.add_argument("--lines-out", help="also write the totally singular lines to this file")

    g = sub.add_parser("charsums", parents=[common], help="Gauss-sum identities")
    g.add_argument("--seed", type=int)
    g.add_argument("--tolerance", type=float)

    e = sub.add_parser("export-graph", parents=[common], help="write the Cayley graph edge list")
    e.add_argument("--d0", type=int)
    e.add_argument("--descriptor")
    e.add_argument("--force", action="store_true", default=None, help="allow q^6 > 1000 vertices")

    sub.add_parser("info", parents=[common], help="field and construction parameters")
    return parser


def resolve(args) -> argparse.Namespace:
    """Merge config-file values under explicit flags and fill defaults."""
    conf = read_config(args.config) if getattr(args, "config", None) else {}
    for key, (_, default) in _OPTIONS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, conf.get(key, default))
    return args


def field_args(args):
    if args.q is not None:
        if args.p is not None or args.f is not None:
            if (args.p or 0) ** (args.f or 1) != args.q:
                raise InvalidInput("--q disagrees with --p/--f")
        return split_prime_power(args.q)
    if args.p is None:
        raise InvalidInput("give --q or --p (and optionally --f)")
    return args.p, args.f or 1


def _require_construction_q(p, f):
    q = p**f
    if q % 4 != 3:
        raise BadCongruence(f"q = {q}: q ≡ 3 (mod 4) required")
    return q


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _context(args):
    p, f = field_args(args)
    _require_construction_q(p, f)
    return build_field(p, f, cache_dir=args.cache_dir)


def _descriptor(args, ctx):
    from .construction import build_descriptor
    from .serialize import read_descriptor

    if getattr(args, "descriptor", None):
        desc = read_descriptor(args.descriptor)
        if (desc.p, desc.f) != (ctx.p, ctx.params.f) or desc.polynomial != ctx.polynomial:
            raise InvalidInput("descriptor was built for a different field or polynomial")
        return desc
    return build_descriptor(ctx, args.d0)


def cmd_construct(args) -> int:
    from .serialize import descriptor_to_dict, dumps

    ctx = _context(args)
    desc = _descriptor(args, ctx)
    _emit(args, dumps(descriptor_to_dict(desc)))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .construction import PointSet
    from .geometry import QuadricGeometry, write_lines
    from .report import VerificationReport
    from .serialize import dumps, provenance, read_point_ids
    from .verify import ALL_CHECKS, DEFAULT_CHECKS, check_line_intersections, check_perp_counts, verify_all

    if args.descriptor and args.q is None and args.p is None:
        raw = json.loads(Path(args.descriptor).read_text())
        args.p, args.f = raw.get("p"), raw.get("f")
    ctx = _context(args)
    desc = _descriptor(args, ctx)
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) if args.checks else DEFAULT_CHECKS
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise InvalidInput(f"unknown checks {sorted(unknown)}; choose from {','.join(ALL_CHECKS)}")
    geom = QuadricGeometry(ctx)
    if args.lines_out:
        write_lines(args.lines_out, geom.lines)

    if args.points:
        pset = PointSet.from_ids(read_point_ids(args.points), ctx.params.num_points)
        report = VerificationReport(ctx.p, ctx.params.f, ctx.q, ctx.polynomial)
        if "lines" in checks:
            report.add(check_line_intersections(geom, pset, desc.m))
        if "perp" in checks:
            report.add(check_perp_counts(geom, pset, desc.m, seed=args.seed))
        skipped = sorted(set(checks) - {"lines", "perp"})
    else:
        report = verify_all(
            ctx, desc, checks, sample=args.sample, seed=args.seed, tolerance=args.tolerance, geometry=geom
        )
        skipped = []

    out = report.to_dict()
    out["backend"] = kernels.BACKEND
    if skipped:
        out["skipped_checks"] = skipped
    out["provenance"] = provenance()
    _emit(args, dumps(out))
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name} ({c.elapsed:.2f}s){': ' + c.message if c.message else ''}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_charsums(args) -> int:
    from .charsums import run_charsum_suite
    from .conic import compute_singer_set
    from .serialize import dumps, provenance

    ctx = _context(args)
    rep = run_charsum_suite(ctx, singer_set=compute_singer_set(ctx), seed=args.seed, tol_scale=args.tolerance)
    out = rep.to_dict()
    out["polynomial"] = list(ctx.polynomial)
    out["provenance"] = provenance()
    _emit(args, dumps(out))
    print(
        f"[{'PASS' if rep.passed else 'FAIL'}] {len(rep.identities)} identities, "
        f"max deviation {rep.max_deviation:.3g}",
        file=sys.stderr,
    )
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_export_graph(args) -> int:
    from .serialize import write_edge_list

    p, f = field_args(args)
    q = _require_construction_q(p, f)
    if q**6 > EXPORT_DEFAULT_MAX_VERTICES and not args.force:
        raise BudgetExceeded(f"q^6 = {q ** 6} vertices; pass --force to export anyway")
    ctx = build_field(p, f, cache_dir=args.cache_dir)
    desc = _descriptor(args, ctx)
    if not args.out:
        raise InvalidInput("export-graph needs --out")
    n = write_edge_list(args.out, ctx, desc)
    print(f"wrote {n} edges to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_info(args) -> int:
    from .serialize import dumps

    p, f = field_args(args)
    ctx = build_field(p, f, cache_dir=args.cache_dir)
    q = ctx.q
    info = {
        "p": p,
        "f": f,
        "q": q,
        "N": ctx.N,
        "field_order": q**6,
        "num_points": ctx.params.num_points,
        "polynomial": list(ctx.polynomial),
        "backend": kernels.BACKEND,
        "construction_applies": q % 4 == 3,
    }
    if q % 4 == 3:
        from .construction import build_descriptor

        desc = build_descriptor(ctx, args.d0 if hasattr(args, "d0") else None)
        info.update({"m": desc.m, "sizes": desc.sizes, "I": list(desc.I), "J": list(desc.J)})
        info["conic"] = desc.conic.to_json()
    _emit(args, dumps(info))
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "charsums": cmd_charsums,
    "export-graph": cmd_export_graph,
    "info": cmd_info,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        resolve(args)
        return COMMANDS[args.command](args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HemisystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
