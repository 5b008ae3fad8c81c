"""Command line front end; one subcommand per capability.

Subcommands write machine-readable output (edge lists, facet lists, or
JSON with sorted keys) so runs can be chained and diffed.  ``-`` as an
output path means stdout.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .analytic import (
    dimension_estimate,
    expected_bad_pairs,
    expected_faces,
    expected_faces_second_moment,
    threshold_probe,
)
from .complexes import (
    build_clique_complex,
    read_facet_list,
    write_facet_list,
)
from .detectors import (
    CertificateError,
    build_retraction,
    find_sphere_certificate,
    vanishing_certificate,
    verify_retraction,
)
from .graphs import generate_gnp, read_edge_list, write_edge_list
from .homology import (
    DEFAULT_PRIME,
    CoefficientSpec,
    SizeGuardError,
    betti_crosscheck,
    integer_homology,
    reduced_betti,
)
from .morse import lex_gradient_field, random_matching_field, verify_acyclic
from .harness import (
    STREAM_DETECT,
    STREAM_GNP,
    STREAM_MORSE,
    SweepConfig,
    run_sweep,
    trial_stream_id,
)
from .rng import RandomSource

__all__ = ["main"]


def _resolve_p(n: int, p: float | None, alpha: float | None) -> float:
    if (p is None) == (alpha is None):
        raise ValueError("exactly one of --p and --alpha must be given")
    if p is None:
        p = float(n) ** alpha
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p!r} outside [0, 1]")
    return p


def _write_json(payload, out: str) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_complex(args):
    if getattr(args, "facets", False):
        return read_facet_list(args.infile)
    g = read_edge_list(args.infile)
    max_dim = args.max_dim if args.max_dim is not None else max(g.n - 1, 0)
    return build_clique_complex(g, max_dim, args.max_faces)


def _cmd_generate(args) -> int:
    p = _resolve_p(args.n, args.p, args.alpha)
    src = RandomSource(args.seed, stream_id=trial_stream_id(args.n, p, args.index))
    g = generate_gnp(args.n, p, src.substream(STREAM_GNP))
    write_edge_list(g, sys.stdout if args.out == "-" else args.out)
    return 0


def _cmd_complex(args) -> int:
    g = read_edge_list(args.infile)
    max_dim = args.max_dim if args.max_dim is not None else max(g.n - 1, 0)
    X = build_clique_complex(g, max_dim, args.max_faces)
    if not X.exhausted:
        print(f"warning: enumeration cut off above dimension {X.dim}",
              file=sys.stderr)
    write_facet_list(X, sys.stdout if args.out == "-" else args.out)
    return 0


def _cmd_homology(args) -> int:
    X = _load_complex(args)
    summary = reduced_betti(X, CoefficientSpec.prime_field(args.prime))
    payload = {
        "f_vector": list(X.f_vector()),
        "betti": list(summary.reduced),
        "exact": list(summary.exact),
        "prime": args.prime,
        "exhausted": X.exhausted,
    }
    if args.integers is not None:
        try:
            z = integer_homology(X, args.integers)
            payload["integer"] = {"k": args.integers, "rank": z.rank,
                                  "torsion": list(z.torsion)}
        except SizeGuardError as exc:
            payload["integer"] = {"k": args.integers, "skipped": str(exc)}
    if args.crosscheck:
        report = betti_crosscheck(X)
        payload["crosscheck"] = {
            "agreed": report.agreed,
            "betti_other": list(report.summaries[1].reduced),
            "skipped_dims": list(report.skipped_dims),
            "integer_checks": {
                str(k): {"rank": z.rank, "torsion": list(z.torsion)}
                for k, z in report.integer_checks.items()
            },
        }
    _write_json(payload, args.out)
    return 0


def _cmd_morse(args) -> int:
    X = _load_complex(args)
    payload = {"k": args.k, "strategy": args.strategy}
    if args.strategy == "lex":
        V = lex_gradient_field(X, args.k)
    else:
        src = RandomSource(args.seed).substream(STREAM_MORSE)
        V, repair = random_matching_field(X, args.k, src)
        payload["proposed"] = repair.proposed
        payload["conflict_dropped"] = repair.conflict_dropped
        payload["cycle_dropped"] = repair.cycle_dropped
    payload["pairs"] = V.pair_count
    payload["critical_lower"] = int(V.critical_lower.size)
    payload["critical_upper"] = int(V.critical_upper.size)
    payload["acyclic"] = verify_acyclic(V, X)
    _write_json(payload, args.out)
    return 0


def _cmd_detect(args) -> int:
    g = read_edge_list(args.infile)
    if args.sphere_k is not None:
        budget = args.budget if args.budget is not None else 50 * g.n
        src = RandomSource(args.seed).substream(STREAM_DETECT)
        cert = find_sphere_certificate(g, args.sphere_k, budget, src)
        payload = {"mode": "sphere", "k": args.sphere_k, "budget": budget,
                   "found": cert is not None}
        if cert is not None:
            payload["certificate"] = cert.to_json()
            try:
                r = build_retraction(g, cert)
                payload["verified"] = verify_retraction(g, r, cert)
            except CertificateError as exc:
                payload["verified"] = False
                payload["verify_error"] = str(exc)
    else:
        verdict = vanishing_certificate(g, args.vanish_k)
        payload = {"mode": "vanish", "k": args.vanish_k,
                   "guaranteed_zero": verdict.guaranteed_zero,
                   "reason": verdict.reason}
    _write_json(payload, args.out)
    return 0


def _cmd_analytic(args) -> int:
    p = _resolve_p(args.n, args.p, args.alpha)
    payload = {
        "n": args.n,
        "k": args.k,
        "p": p,
        "alpha": args.alpha,
        "expected_faces": expected_faces(args.n, p, args.k),
        "expected_faces_second_moment":
            expected_faces_second_moment(args.n, p, args.k),
        "expected_bad_pairs": expected_bad_pairs(args.n, p, args.k),
        "dimension_estimate":
            dimension_estimate(args.n, p) if 0.0 < p < 1.0 else None,
    }
    if args.k >= 1:
        payload["thresholds"] = threshold_probe(
            args.n, args.k, offset=args.offset, l=args.l, margin=args.margin)
    _write_json(payload, args.out)
    return 0


def _cmd_sweep(args) -> int:
    cfg = SweepConfig.from_json(Path(args.config).read_text())
    if args.out is not None:
        cfg = dataclasses.replace(cfg, out_dir=args.out)
    if args.jobs is not None:
        cfg = dataclasses.replace(cfg, jobs=args.jobs)
    result = run_sweep(cfg)
    payload = {
        "records": len(result.records),
        "errors": sum(1 for r in result.records if r.error is not None),
        "paths": result.paths,
    }
    if result.paths is None:
        payload["summary"] = [row.to_json_dict() for row in result.summary]
    _write_json(payload, "-")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquetop",
        description="random clique complexes: generation, homology, "
                    "matchings, certificates, sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    def out_arg(sp):
        sp.add_argument("--out", default="-", help="output path (- = stdout)")

    sp = sub.add_parser("generate", help="sample G(n, p) to an edge-list file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float)
    sp.add_argument("--alpha", type=float, help="use p = n^alpha")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--index", type=int, default=0,
                    help="trial index in the derived stream")
    out_arg(sp)
    sp.set_defaults(func=_cmd_generate)

    sp = sub.add_parser("complex", help="edge list to maximal-face list")
    sp.add_argument("infile")
    sp.add_argument("--max-dim", type=int, default=None)
    sp.add_argument("--max-faces", type=int, default=2_000_000)
    out_arg(sp)
    sp.set_defaults(func=_cmd_complex)

    sp = sub.add_parser("homology", help="Betti numbers (and torsion) as JSON")
    sp.add_argument("infile")
    sp.add_argument("--facets", action="store_true",
                    help="input is a facet list, not an edge list")
    sp.add_argument("--max-dim", type=int, default=None)
    sp.add_argument("--max-faces", type=int, default=2_000_000)
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--integers", type=int, default=None, metavar="K",
                    help="also compute integer homology at dimension K")
    sp.add_argument("--crosscheck", action="store_true",
                    help="recompute over a second prime")
    out_arg(sp)
    sp.set_defaults(func=_cmd_homology)

    sp = sub.add_parser("morse", help="discrete vector field statistics")
    sp.add_argument("infile")
    sp.add_argument("--facets", action="store_true")
    sp.add_argument("--max-dim", type=int, default=None)
    sp.add_argument("--max-faces", type=int, default=2_000_000)
    sp.add_argument("--k", type=int, required=True, help="target dimension")
    sp.add_argument("--strategy", choices=("lex", "random"), default="lex")
    sp.add_argument("--seed", type=int, default=0)
    out_arg(sp)
    sp.set_defaults(func=_cmd_morse)

    sp = sub.add_parser("detect", help="sphere or vanishing certificates")
    sp.add_argument("infile")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--sphere-k", type=int, default=None, metavar="K")
    group.add_argument("--vanish-k", type=int, default=None, metavar="K")
    sp.add_argument("--budget", type=int, default=None,
                    help="sphere search restarts (default 50n)")
    sp.add_argument("--seed", type=int, default=0)
    out_arg(sp)
    sp.set_defaults(func=_cmd_detect)

    sp = sub.add_parser("analytic", help="closed-form values as JSON")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--l", type=int, default=None)
    sp.add_argument("--offset", type=float, default=0.0)
    sp.add_argument("--margin", type=float, default=0.2)
    out_arg(sp)
    sp.set_defaults(func=_cmd_analytic)

    sp = sub.add_parser("sweep", help="run a Monte Carlo sweep from a config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", default=None, help="output directory override")
    sp.add_argument("--jobs", type=int, default=None)
    sp.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
