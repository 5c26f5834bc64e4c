"""Command line front end.

Every command writes one JSON document to stdout (or ``--output``) and a
short human summary to stderr (unless ``--quiet``).  Exit codes: 0 success or
equivalent, 1 a well-formed negative verdict, 2 bad input or a violated
precondition.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .configuration import (
    PreconditionError,
    affinely_equivalent,
    difference_lattice,
    is_affinely_generating,
    reduce,
    verify_witness,
)
from .embedding import (
    MonomialEmbedding,
    projectively_equivalent,
    relation_lattice,
    span_dimension,
    variety_dimension,
)
from .io import (
    InputError,
    certificate,
    dumps,
    load_document,
    load_json,
    parse_certificate,
)
from .linalg import elementary_divisors
from .polytope import is_solid, is_Z_solid

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


def _polytope_doc(path):
    doc = load_document(path)
    if doc.kind != "polytope":
        raise InputError(f"{path}: kind: this command needs a 'polytope' document")
    return doc


def cmd_is_generating(args) -> tuple[dict, int, str]:
    S = load_document(args.file).configuration()
    L = difference_lattice(S)
    gen = is_affinely_generating(S)
    out = {
        "command": "is-generating",
        "input": args.file,
        "dim": S.dim,
        "n_points": len(S),
        "generating": gen,
        "rank": L.rank,
        "divisors": elementary_divisors(L),
    }
    return out, EXIT_OK, f"affinely generating: {'yes' if gen else 'no'} (rank {L.rank})"


def cmd_reduce(args):
    S = load_document(args.file).configuration()
    red = reduce(S)
    out = {
        "command": "reduce",
        "input": args.file,
        "e": red.e,
        "base_point": list(red.base_point),
        "iso_matrix": [list(r) for r in red.iso_matrix],
        "points": [list(p) for p in red.config.points],
    }
    return out, EXIT_OK, f"reduced to {len(red.config)} points in Z^{red.e}"


def _equiv_inputs(args):
    S = load_document(args.file_a).configuration()
    T = load_document(args.file_b).configuration()
    return S, T


def _verify(mode_level: str, phi, S, T) -> bool:
    if mode_level == "reduced":
        return verify_witness(phi, reduce(S).config, reduce(T).config)
    return verify_witness(phi, S, T)


def cmd_equiv(args):
    S, T = _equiv_inputs(args)
    if args.verify_certificate:
        return _verify_cert_doc(args.file_a, args.file_b, args.verify_certificate, S, T)
    out = {"command": "equiv", "mode": args.mode, "inputs": [args.file_a, args.file_b]}
    if args.mode == "affine":
        verdict = affinely_equivalent(S, T)
        level = "ambient"
    else:
        N = args.N if args.N is not None else max(len(S), len(T)) - 1
        out["N"] = N
        verdict = projectively_equivalent(S, T, N)
        level = "reduced"
    out["equivalent"] = verdict.equivalent
    if verdict.witness is not None:
        out["certificate"] = certificate(verdict.witness, level)
    if verdict.obstruction is not None:
        out["obstruction"] = verdict.obstruction
    if verdict.equivalent:
        return out, EXIT_OK, f"{args.mode}ly equivalent"
    return out, EXIT_NEGATIVE, f"not {args.mode}ly equivalent: {verdict.obstruction}"


def _verify_cert_doc(file_a, file_b, cert_path, S, T):
    phi, level = parse_certificate(load_json(cert_path))
    ok = _verify(level, phi, S, T)
    out = {
        "command": "verify-certificate",
        "inputs": [file_a, file_b],
        "certificate": cert_path,
        "level": level,
        "valid": ok,
    }
    return out, EXIT_OK if ok else EXIT_NEGATIVE, f"certificate {'valid' if ok else 'INVALID'}"


def cmd_verify_certificate(args):
    S, T = _equiv_inputs(args)
    return _verify_cert_doc(args.file_a, args.file_b, args.certificate, S, T)


def cmd_zsolid(args):
    P = _polytope_doc(args.file).polytope()
    solid, zsolid = is_solid(P), is_Z_solid(P)
    out = {
        "command": "zsolid",
        "input": args.file,
        "solid": solid,
        "z_solid": zsolid,
        "n_lattice_points": len(P.lattice_points),
    }
    return out, EXIT_OK, f"solid: {solid}, Z-solid: {zsolid}"


def cmd_points(args):
    doc = _polytope_doc(args.file)
    P = doc.polytope()
    pts = P.lattice_points
    out = {
        "command": "points",
        "input": args.file,
        "n_lattice_points": len(pts),
        "points": [list(p) for p in pts.points],
    }
    if doc.lattice_basis is not None:
        out["ambient_points"] = [list(x) for x in P.ambient_points()]
    return out, EXIT_OK, f"{len(pts)} lattice points"


def cmd_fingerprint(args):
    S = load_document(args.file).configuration()
    E = MonomialEmbedding.from_configuration(S, args.N)
    rel = relation_lattice(E)
    out = {
        "command": "fingerprint",
        "input": args.file,
        "N": E.N,
        "points": [list(p) for p in E.points],
        "relations": [list(v) for v in rel.vectors()],
        "variety_dimension": variety_dimension(E),
        "span_dimension": span_dimension(E),
    }
    return out, EXIT_OK, f"dim X = {out['variety_dimension']}, span P^{out['span_dimension']}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the JSON document here instead of stdout")
    common.add_argument("--quiet", "-q", action="store_true", help="no summary on stderr")

    parser = argparse.ArgumentParser(
        prog="toricproj",
        description="Affine unimodular equivalence and projective toric varieties X(S).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("is-generating", parents=[common], help="do the differences generate Z^d?")
    p.add_argument("file")
    p.set_defaults(func=cmd_is_generating)

    p = sub.add_parser("reduce", parents=[common], help="re-embed as an affinely generating set")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("equiv", parents=[common], help="affine or projective equivalence")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--mode", choices=["affine", "projective"], default="affine")
    p.add_argument("--N", type=int, default=None, help="ambient P^N (projective mode)")
    p.add_argument("--verify-certificate", metavar="CERT", help="check a certificate instead of searching")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify-certificate", parents=[common], help="re-check an emitted certificate")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify_certificate)

    p = sub.add_parser("zsolid", parents=[common], help="solidity and Z-solidity of a polytope")
    p.add_argument("file")
    p.set_defaults(func=cmd_zsolid)

    p = sub.add_parser("points", parents=[common], help="lattice points of a polytope")
    p.add_argument("file")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("fingerprint", parents=[common], help="relation lattice and dimensions of X(S)")
    p.add_argument("file")
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_fingerprint)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code, summary = args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = dumps(doc)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.output} ({exc.strerror})", file=sys.stderr)
            return EXIT_ERROR
    else:
        sys.stdout.write(text)
    if not args.quiet:
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
