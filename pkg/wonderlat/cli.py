"""
Command-line interface for wonderlat.

    wonderlat describe --type A --rank 3
    wonderlat pair --type A --rank 3 --curve 1,1,1 --all
    wonderlat certify --type A --rank 3 --curve 1,1,1 --json
    wonderlat limit --type A --rank 3 --curve 1,1,1 --order 3,2,1
    wonderlat sweep --series A,B,C,D --max-rank 8 --coeff-bound 2

Exit codes: 0 success, 1 invariant failure, 2 usage or validation error,
3 unmet precondition (class not movable, datum not a group compactification).
"""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from wonderlat import __version__
from wonderlat.config import get_config, initialize_config
from wonderlat.core.lattice import (
    CurveClass,
    DivisorClass,
    basis_divisor_class,
    boundary_divisor,
    pair,
    require_movable,
)
from wonderlat.core.rootsys import DynkinType, build_root_system
from wonderlat.core.spherical import (
    SphericalDatum,
    closed_orbit_datum,
    exceptional_count,
    group_datum,
    picard_split,
    subvariety_datum,
)
from wonderlat.errors import (
    ConsistencyFailure,
    DatumValidationError,
    NotDominant,
    NotEffective,
    NotGroupKind,
    NotMovable,
    WonderlatError,
)
from wonderlat.procedures.limit import degeneration_chain
from wonderlat.procedures.reducibility import (
    check_certificate,
    expected_dimension,
    find_certificate,
    reducible_locus_dimension,
)
from wonderlat.sweep_config import load_sweep
from wonderlat.utils import (
    DatumLoader,
    ResultWriter,
    canonical_json,
    exact,
    load_datum,
    render_table,
    render_tsv,
)
from wonderlat.workflows.sweep_pipeline import SweepPipeline

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class _UsageError(WonderlatError, ValueError):
    """Bad flag values detected after argparse."""


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _status(text: str) -> None:
    print(text, file=sys.stderr)


def _parse_ints(text: str, flag: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _parse_mapping(text: Optional[str], flag: str) -> Dict[str, int]:
    """Parse "D1:2,D2:-1" into {"D1": 2, "D2": -1}."""
    result: Dict[str, int] = {}
    if not text:
        return result
    for part in text.split(","):
        key, sep, value = part.partition(":")
        if not sep:
            key, value = part, "1"
        try:
            result[key.strip()] = int(value)
        except ValueError:
            raise _UsageError(f"{flag} expects id:int pairs, got {part!r}") from None
    return result


# ---------------------------------------------------------------- datum selection


def _add_datum_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("datum")
    group.add_argument("--type", dest="type_name", help="Series letter, or a full type such as A3 or G2xA1")
    group.add_argument("--rank", type=int, help="Rank when --type is a series letter")
    group.add_argument(
        "--datum", help="Path to a datum JSON file, or a file name under WONDERLAT_DATA_DIR"
    )
    group.add_argument("--subvariety", help="Boundary labels I of X_I, e.g. 1,3")
    group.add_argument("--closed-orbit", action="store_true", help="Use the closed orbit X_{1..l}")


def _resolve_datum(args: argparse.Namespace) -> SphericalDatum:
    if args.datum and args.type_name:
        raise _UsageError("--datum and --type are mutually exclusive")
    if args.datum:
        if Path(args.datum).exists():
            datum = load_datum(args.datum)
        else:
            # bare names come from the configured data directory
            datum = DatumLoader().load(args.datum)
    elif args.type_name:
        if args.rank is not None:
            dynkin = DynkinType.simple(args.type_name, args.rank)
        else:
            dynkin = DynkinType.parse(args.type_name)
        datum = group_datum(build_root_system(dynkin))
    else:
        raise _UsageError("one of --type or --datum is required")

    if args.closed_orbit:
        return closed_orbit_datum(datum)
    if args.subvariety:
        return subvariety_datum(datum, _parse_ints(args.subvariety, "--subvariety"))
    return datum


def _curve(datum: SphericalDatum, text: str, flag: str = "--curve") -> CurveClass:
    return CurveClass(datum, tuple(_parse_ints(text, flag)))


def _result_tag(datum: SphericalDatum, eta: CurveClass) -> str:
    """File stem such as "group-A3_X_2_1-1-0-1"; no path separators."""
    name = re.sub(r"[^A-Za-z0-9.+-]+", "_", datum.name or datum.kind.value).strip("_")
    return f"{name}_{'-'.join(str(c) for c in eta.coefficients)}"


def _output_format(args: argparse.Namespace) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "tsv", False):
        return "tsv"
    return "table"


def _emit_frame(args: argparse.Namespace, frame: pd.DataFrame, payload: Dict[str, Any]) -> None:
    fmt = _output_format(args)
    if fmt == "json":
        _emit(canonical_json(payload))
    elif fmt == "tsv":
        _emit(render_tsv(frame))
    else:
        _emit(render_table(frame))


# ---------------------------------------------------------------- describe


def describe_payload(datum: SphericalDatum) -> Dict[str, Any]:
    base, fiber = picard_split(datum)
    types = datum.color_types
    payload: Dict[str, Any] = {
        "name": datum.name,
        "kind": datum.kind.value,
        "dynkin": str(datum.root_system.dynkin),
        "group": str(datum.top.group_dynkin) if datum.is_group_chain else None,
        "removed": sorted(datum.removed),
        "s_p": sorted(datum.s_p),
        "picard_rank": datum.picard_rank,
        "exceptional_count": exceptional_count(datum),
        "spherical_roots": [
            {"label": label, "root": list(gamma)}
            for label, gamma in zip(datum.boundary_labels, datum.spherical_roots)
        ],
        "colors": [
            {
                "id": c.id,
                "moved_by": list(c.moving_roots),
                "type": c.kind.value,
                "weight": list(c.weight),
                "role": c.role.value,
            }
            for c in datum.pic_basis
        ],
        "color_types": {str(alpha): t.value for alpha, t in sorted(types.items())},
        "picard_split": {"base": list(base), "fiber": list(fiber)},
    }
    if datum.is_group_chain:
        payload["nonpositive_rows"] = list(
            build_root_system(datum.top.group_dynkin).nonpositive_rows()
        )
    return payload


def cmd_describe(args: argparse.Namespace) -> int:
    datum = _resolve_datum(args)
    payload = describe_payload(datum)
    fmt = _output_format(args)
    if fmt == "json":
        _emit(canonical_json(payload))
        return EXIT_OK

    colors = pd.DataFrame(
        [
            {
                "id": c["id"],
                "moved_by": ",".join(str(a) for a in c["moved_by"]),
                "type": c["type"],
                "weight": ",".join(str(w) for w in c["weight"]),
                "role": c["role"],
            }
            for c in payload["colors"]
        ]
    )
    if fmt == "tsv":
        _emit(render_tsv(colors))
        return EXIT_OK

    lines = [
        f"Datum:        {payload['name']} ({payload['kind']})",
        f"Dynkin type:  {payload['dynkin']}",
        f"S^p:          {payload['s_p']}",
        f"Pic rank:     {payload['picard_rank']}",
        f"Exceptional:  {payload['exceptional_count']}",
        "Spherical roots:",
    ]
    lines += [f"  X{r['label']}: {r['root']}" for r in payload["spherical_roots"]] or ["  (none)"]
    lines.append("Pic basis:")
    _emit("\n".join(lines) + "\n")
    _emit(render_table(colors))
    types = ", ".join(f"{a}:{t}" for a, t in payload["color_types"].items())
    _emit(f"Color types:  {types}\n")
    if "nonpositive_rows" in payload:
        _emit(f"Nonpositive Cartan rows: {payload['nonpositive_rows']}\n")
    return EXIT_OK


# ---------------------------------------------------------------- pair


def _divisor_rows(args: argparse.Namespace, datum: SphericalDatum) -> List[tuple]:
    """(label, DivisorClass-or-BoundaryDivisor) rows to pair against."""
    if args.divisor:
        spec = _parse_mapping(args.divisor, "--divisor")
        divisor = DivisorClass(datum, tuple(0 for _ in datum.basis_ids))
        for divisor_id, value in spec.items():
            divisor = divisor + value * basis_divisor_class(datum, divisor_id)
        return [(args.divisor, divisor)]
    if args.boundary is not None:
        return [(f"X{args.boundary}", boundary_divisor(datum, args.boundary))]
    return [(f"X{label}", boundary_divisor(datum, label)) for label in datum.boundary_labels]


def cmd_pair(args: argparse.Namespace) -> int:
    datum = _resolve_datum(args)
    curves = [_curve(datum, text) for text in args.curve]
    rows = _divisor_rows(args, datum)
    table = [[exact(pair(d, c)) for c in curves] for _, d in rows]
    headers = [",".join(str(x) for x in c.coefficients) for c in curves]

    frame = pd.DataFrame(table, columns=headers)
    frame.insert(0, "divisor", [label for label, _ in rows])
    payload = {
        "datum": datum.name,
        "basis": list(datum.basis_ids),
        "curves": [list(c.coefficients) for c in curves],
        "divisors": [label for label, _ in rows],
        "table": table,
    }
    _emit_frame(args, frame, payload)
    return EXIT_OK


# ---------------------------------------------------------------- certify


def cmd_certify(args: argparse.Namespace) -> int:
    datum = _resolve_datum(args)
    eta = _curve(datum, args.curve)
    if args.eta1:
        require_movable(eta)
        eta1 = _curve(datum, args.eta1, "--eta1")
        certificate = check_certificate(eta, eta1, eta - eta1, args.assume_nonempty)
    else:
        certificate = find_certificate(
            eta, assume_nonempty=args.assume_nonempty, exhaustive_only=args.exhaustive_only
        )

    payload: Dict[str, Any] = certificate.to_dict() if certificate else {"certificate": None}
    if args.dim_x is not None or args.anticanonical:
        coeffs = _parse_mapping(args.anticanonical, "--anticanonical")
        report = expected_dimension(eta, args.points, coeffs, args.dim_x)
        payload["dimensions"] = {
            "dim_x": report.dim_x,
            "n": report.n,
            "pairing_minus_kx": exact(report.pairing_minus_kx),
            "expected_dim": exact(report.expected_dim),
            "m_circ_dim": exact(report.m_circ_dim),
            "reducible_locus_dim": exact(
                reducible_locus_dimension(certificate, coeffs, args.dim_x)
            )
            if certificate
            else None,
        }

    if args.out:
        tag = _result_tag(datum, eta)
        path = ResultWriter(args.out).save_certificate(tag, payload)
        _status(f"✓ Certificate saved to {path}")

    if _output_format(args) == "json":
        _emit(canonical_json(payload))
    elif certificate is None:
        _emit("No certificate found.\n")
    else:
        status = "valid" if certificate.valid else "INVALID"
        _emit(
            f"Certificate ({status}, {certificate.stage.value if certificate.stage else 'given'}):\n"
            f"  eta   = {list(eta.coefficients)}\n"
            f"  eta1  = {list(certificate.eta1.coefficients)}\n"
            f"  eta2  = {list(certificate.eta2.coefficients)}\n"
            f"  witness = X{certificate.witness}\n"
            f"  gap     = {exact(certificate.gap)}\n"
            f"  mode    = {certificate.mode.value}\n"
        )
        for violation in certificate.violations:
            _emit(f"  ✗ {violation}\n")
    return EXIT_OK


# ---------------------------------------------------------------- limit


def cmd_limit(args: argparse.Namespace) -> int:
    datum = _resolve_datum(args)
    eta = _curve(datum, args.curve)
    order = _parse_ints(args.order, "--order") if args.order else None
    chain = degeneration_chain(datum, eta, order)
    payload = chain.to_dict()

    if args.out:
        tag = _result_tag(datum, eta)
        path = ResultWriter(args.out).save_chain(tag, payload)
        _status(f"✓ Chain saved to {path}")

    frame = pd.DataFrame(
        [
            {
                "step": k + 1,
                "i0": step.i0,
                "target": ",".join(str(i) for i in sorted(step.target.removed)),
                "output": " ".join(f"{key}={v}" for key, v in step.output_class.as_dict().items()),
            }
            for k, step in enumerate(chain.steps)
        ]
    )
    _emit_frame(args, frame, payload)
    return EXIT_OK


# ---------------------------------------------------------------- sweep


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.profile:
        profile = load_sweep(args.profile)
        pipeline = SweepPipeline.from_profile(profile, quiet=args.quiet)
        tag = args.profile
    else:
        pipeline = SweepPipeline(
            series=[s.strip() for s in args.series.split(",") if s.strip()],
            max_rank=args.max_rank,
            coeff_bound=args.coeff_bound,
            workers=args.workers,
            quiet=args.quiet,
        )
        tag = f"sweep_{''.join(pipeline.series)}_r{args.max_rank}_k{args.coeff_bound}"

    result = pipeline.run()
    if args.out:
        for path in pipeline.save(result, tag, ResultWriter(args.out)):
            _status(f"✓ Saved {path}")

    frame = pd.DataFrame(result.summary)
    payload = {
        "summary": result.summary,
        "failures": result.failures,
        "violations": result.violations,
    }
    _emit_frame(args, frame, payload)

    if not result.ok:
        _status(f"✗ {result.violations} in-scope classes without certificate")
        return EXIT_INVARIANT
    if not args.quiet:
        _status("✓ Every in-scope movable class has a certificate")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    common.add_argument("--env-file", help="Read settings from this .env file instead of ./.env")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="Machine-readable JSON output")
    fmt.add_argument("--tsv", action="store_true", help="Tab-separated output")

    parser = argparse.ArgumentParser(
        prog="wonderlat",
        description="Lattice arithmetic and reducibility certificates on wonderful varieties.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[common], help="Describe a datum")
    _add_datum_flags(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("pair", parents=[common], help="Intersection pairings")
    _add_datum_flags(p)
    p.add_argument("--curve", action="append", required=True, help="Curve coefficients c1,...,cn")
    target = p.add_mutually_exclusive_group()
    target.add_argument("--divisor", help="Divisor as id:coeff pairs, e.g. D1:1,D2:-1")
    target.add_argument("--boundary", type=int, help="Boundary divisor label")
    target.add_argument("--all", action="store_true", help="All boundary divisors (default)")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("certify", parents=[common], help="Search or check a certificate")
    _add_datum_flags(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--eta1", help="Check this decomposition instead of searching")
    p.add_argument("--assume-nonempty", action="store_true", help="Take M°(X, eta) != {} as given")
    p.add_argument("--exhaustive-only", action="store_true", help="Skip the constructive stage")
    p.add_argument("--dim-x", type=int, help="dim X, for the dimension report")
    p.add_argument("--anticanonical", help="a_D coefficients of -K_X, e.g. D1:2,D2:2")
    p.add_argument("--points", type=int, default=0, help="Marked points n")
    p.add_argument("--out", help="Directory receiving the certificate file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("limit", parents=[common], help="Degeneration chain to the closed orbit")
    _add_datum_flags(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--order", help="Boundary labels in limit order (default r,...,1)")
    p.add_argument("--out", help="Directory receiving the chain file")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("sweep", parents=[common], help="Certificate sweep over simple types")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--series", default="A,B,C,D", help="Series letters, comma-separated")
    source.add_argument("--profile", help="Sweep profile under config/sweeps/")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--coeff-bound", type=int, default=1)
    p.add_argument("--workers", type=int, help="Worker processes")
    p.add_argument("-q", "--quiet", action="store_true", help="No progress bar")
    p.add_argument("--out", help="Directory receiving summary and failure TSVs")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        env_file = getattr(args, "env_file", None)
        if env_file:
            if not Path(env_file).is_file():
                raise FileNotFoundError(f"Env file not found: {env_file}")
            config = initialize_config(env_file)
        else:
            config = get_config()
        config.configure_logging(verbose=args.verbose)
        return args.func(args)
    except ConsistencyFailure as e:
        _status(f"✗ Invariant failure: {e}")
        return EXIT_INVARIANT
    except (NotMovable, NotGroupKind, NotDominant, NotEffective) as e:
        _status(f"✗ {e}")
        return EXIT_PRECONDITION
    except DatumValidationError as e:
        _status(f"✗ Invalid datum ({len(e.violations)} violations)")
        for path, message in e.violations:
            _status(f"  {path}: {message}")
        return EXIT_USAGE
    except (WonderlatError, FileNotFoundError) as e:
        _status(f"✗ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
