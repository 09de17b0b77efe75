"""Command line front end.

Exit codes: 0 success, 1 invalid lattice config, 2 invalid class or
arguments, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .acm import is_acm_line_bundle
from .clifford import clifford_index
from .cones import ConeOracle
from .errors import ConsistencyError, DomainError, K3LMError, LatticeError
from .lattice import PicardLattice
from .lm import (CERTIFIED_SEMISTABLE, dm_extension_scan, lm_invariants,
                 semistable_certificate)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ARGS = 2
EXIT_INTERNAL = 3


def load_config(path: str) -> PicardLattice:
    """Parse the JSON config {gram, polarization, names?}; integers only."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise LatticeError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise LatticeError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise LatticeError("config must be a JSON object")
    unknown = set(doc) - {"gram", "polarization", "names"}
    if unknown:
        raise LatticeError(f"unknown config keys: {sorted(unknown)}")
    try:
        gram = doc["gram"]
        polarization = doc["polarization"]
    except KeyError as exc:
        raise LatticeError(f"config is missing key {exc}") from exc
    _require_int_matrix(gram)
    _require_int_vector(polarization)
    names = doc.get("names")
    return PicardLattice.from_data(gram, polarization, names)


def _require_int_vector(v):
    if not isinstance(v, list) or not all(isinstance(x, int) and
                                          not isinstance(x, bool) for x in v):
        raise LatticeError("expected a list of integers (no floats accepted)")


def _require_int_matrix(m):
    if not isinstance(m, list):
        raise LatticeError("gram must be a list of rows")
    for row in m:
        _require_int_vector(row)


def parse_class(text: str, lattice: PicardLattice):
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"cannot parse class {text!r}: expected "
                          "comma-separated integers") from None
    return lattice.check_class(coords)


def _config_echo(lattice: PicardLattice) -> dict:
    doc = {"gram": [list(r) for r in lattice.gram],
           "polarization": list(lattice.polarization)}
    if lattice.basis_names:
        doc["names"] = list(lattice.basis_names)
    return doc


def _vec(v):
    return list(v) if v is not None else None


def _profile_dict(profile) -> dict:
    return {
        "h0": profile.h0,
        "h1": profile.h1,
        "h2": profile.h2,
        "fixed_part": _vec(profile.fixed_part),
        "mobile_part": _vec(profile.mobile_part),
        "elliptic_multiple": (
            [profile.elliptic_multiple[0], list(profile.elliptic_multiple[1])]
            if profile.elliptic_multiple else None),
    }


def _witness_jsonable(value):
    if value is None:
        return None
    if isinstance(value, tuple) and value and isinstance(value[0], str):
        return [value[0]] + [_witness_jsonable(v) for v in value[1:]]
    if isinstance(value, tuple) and all(isinstance(x, int) for x in value):
        return list(value)
    if isinstance(value, tuple):
        return [_witness_jsonable(v) for v in value]
    return value


def _candidate_dict(c) -> dict:
    return {
        "L1": list(c.L1),
        "L2": list(c.L2),
        "length_Zprime": c.length_Zprime,
        "L1_nef": c.L1_nef,
        "L1_acm_initialized": c.L1_acm_initialized,
        "h1_L2_zero": c.h1_L2_zero,
        "gonality_window": c.gonality_window,
        "witness_acm_line_bundle": _vec(c.witness_acm_line_bundle),
    }


def cmd_info(oracle: ConeOracle, args) -> dict:
    lat = oracle.lattice
    h = lat.polarization
    return {
        "rank": lat.rank,
        "h_square": lat.h_square,
        "sectional_genus": lat.genus(h),
        "polarization": list(h),
        "ample": oracle.is_ample(h),
        "very_ample": lat.square(h) >= 4 and oracle.is_very_ample(h),
    }


def cmd_class(oracle: ConeOracle, args) -> dict:
    lat = oracle.lattice
    d = parse_class(args.vector, lat)
    if lat.is_zero(d):
        raise DomainError("the zero class is not analyzable by cone tests")
    flags = oracle.cone_flags(d, full=args.all)
    profile = oracle.cohomology(d)
    return {
        "class": list(d),
        "degree": lat.degree(d),
        "square": lat.square(d),
        "euler_char": lat.euler_char(d),
        "flags": {
            "effective": flags.effective,
            "nef": flags.nef,
            "base_point_free": flags.base_point_free,
            "ample": flags.ample,
            "very_ample": flags.very_ample,
        },
        "witnesses": {k: _witness_jsonable(v)
                      for k, v in sorted(flags.witnesses.items())},
        "cohomology": _profile_dict(profile),
    }


def cmd_clifford(oracle: ConeOracle, args) -> dict:
    report = clifford_index(oracle, oracle.lattice.polarization)
    return {
        "genus": report.genus,
        "A_L": [list(d) for d in report.A_L],
        "mu": report.mu,
        "A0_L": [list(d) for d in report.A0_L],
        "cliff": report.cliff,
        "gonality_range": list(report.gonality_range),
        "witness": _vec(report.witness),
    }


def cmd_acm(oracle: ConeOracle, args) -> dict:
    d = parse_class(args.vector, oracle.lattice)
    report = is_acm_line_bundle(oracle, d)
    return {
        "class": list(d),
        "is_acm": report.is_acm,
        "is_initialized": report.is_initialized,
        "m_used": report.m_used,
        "h1_chain": [[k, h1] for k, h1 in report.h1_chain],
        "shortcut_used": report.shortcut_used,
        "conclusive": report.conclusive,
    }


def cmd_lm_scan(oracle: ConeOracle, args) -> dict:
    spec = lm_invariants(oracle, oracle.lattice.polarization, args.c2)
    cert = semistable_certificate(oracle, spec, strict=args.strict,
                                  gonality_mode=args.gonality,
                                  parallel=args.parallel)
    return {
        "spec": {
            "H": list(spec.H), "d": spec.d, "g": spec.g, "r": spec.r,
            "h0_E": spec.h0_E, "rho": spec.rho,
            "slope_numerator": spec.slope_numerator,
            "quotient_filter_valid": spec.quotient_filter_valid,
            "non_simple": spec.non_simple,
            "H_very_ample": spec.H_very_ample,
        },
        "verdict": cert.verdict,
        "stability_note": cert.stability_note,
        "filters_applied": cert.filters_applied,
        "degree_slices": list(cert.degree_slices),
        "candidates": [_candidate_dict(c) for c in cert.candidates],
    }


def cmd_dm_scan(oracle: ConeOracle, args) -> dict:
    spec = lm_invariants(oracle, oracle.lattice.polarization, args.c2)
    cands = dm_extension_scan(oracle, spec, parallel=args.parallel)
    return {
        "spec": {"H": list(spec.H), "d": spec.d, "g": spec.g,
                 "rho": spec.rho, "non_simple": spec.non_simple},
        "candidates": [{
            "M": list(c.M), "N": list(c.N),
            "M_degree": oracle.lattice.degree(c.M),
            "N_degree": oracle.lattice.degree(c.N),
            "length": c.length, "splits": c.splits,
        } for c in cands],
    }


def _emit(value, key: str, out) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _emit(v, f"{key}.{k}" if key else str(k), out)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, item in enumerate(value):
            _emit(item, f"{key}[{i}]", out)
    else:
        print(f"{key} = {value}", file=out)


def _print_text(command: str, result: dict, out) -> None:
    print(f"# k3lm {command}", file=out)
    _emit(result, "", out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3lm",
        description="Exact divisor-class calculus on K3 Picard lattices and "
                    "slope-semistability certificates for rank-2 "
                    "Lazarsfeld-Mukai bundles.")
    parser.add_argument("--config", required=True,
                        help="JSON file with keys gram, polarization, names")
    parser.add_argument("--json", action="store_true", dest="as_json",
                        help="emit one machine-readable JSON document")
    parser.add_argument("--parallel", action="store_true",
                        help="enumerate degree slices in a thread pool "
                             "(never changes output)")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", help="lattice and polarization summary")

    p = sub.add_parser("class", help="cone flags and cohomology of a class")
    p.add_argument("vector", help="comma-separated integers, e.g. 1,-1")
    p.add_argument("--all", action="store_true",
                   help="also run base-point-free and very-ample tests")

    sub.add_parser("clifford", help="Clifford index of the polarization")

    p = sub.add_parser("acm", help="ACM/initialized report for a class")
    p.add_argument("vector")

    p = sub.add_parser("lm-scan", help="destabilizer scan and certificate")
    p.add_argument("--c2", type=int, required=True, help="pencil degree d")
    p.add_argument("--strict", action="store_true",
                   help="also require h1(L2) = 0")
    p.add_argument("--gonality", action="store_true",
                   help="treat the pencil as a gonality pencil")

    p = sub.add_parser("dm-scan", help="Donagi-Morrison extension scan")
    p.add_argument("--c2", type=int, required=True, help="pencil degree d")
    return parser


_HANDLERS = {
    "info": cmd_info,
    "class": cmd_class,
    "clifford": cmd_clifford,
    "acm": cmd_acm,
    "lm-scan": cmd_lm_scan,
    "dm-scan": cmd_dm_scan,
}


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lattice = load_config(args.config)
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    oracle = ConeOracle(lattice)
    try:
        result = _HANDLERS[args.command](oracle, args)
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DomainError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    if args.as_json:
        document = {
            "tool": "k3lm",
            "version": __version__,
            "command": args.command,
            "config": _config_echo(lattice),
            "results": result,
        }
        print(json.dumps(document, indent=2, sort_keys=True), file=out)
    else:
        _print_text(args.command, result, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
