"""Command-line surface: JSON-lines outcome records on stdout, a short human
summary on stderr.

Exit codes: 0 success with a verified certificate, 1 input or contract
errors, 2 precondition violations and exhausted searches. Randomized verbs
require an explicit --seed; records are byte-identical across reruns with
the same inputs and seed (timings are only included with --timing).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .core import (
    OrderedGraph,
    complement,
    find_induced_embedding,
    is_biclique,
    m1_pattern,
    max_biclique_oracle,
    monotone_path,
)
from .curves import (
    CurveFamily,
    curves_ramsey,
    grounded_family,
    grounded_ordering_properties,
    intersection_graph,
    right_ordered_family,
)
from .errors import InputFormatError, OrdramError, RetryExhausted
from .generators import GenSpec, generate
from .jsonio import (
    curves_to_json,
    dump_record,
    graph_to_json,
    load_family,
    load_graph,
    make_record,
    sha256_file,
    validate_file,
)
from .magical import (
    double_magical_witness,
    extract_biclique_dense,
    is_magical,
    threshold_pipeline,
    verify_forcing_claim,
)
from .matchings import find_matching_or_cobiclique
from .outcomes import CoBicliqueFound, InducedPatternFound, PreconditionViolation
from .paths import find_path_or_cobiclique


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ordram")
    top.add_argument("--timing", action="store_true", help="include elapsed_ms in records")
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance file")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--segs", type=int, default=2)
    p.add_argument("--x0", default="0")
    p.add_argument("--amplitude", type=int, default=2)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("patterns", help="pattern search")
    ps = p.add_subparsers(dest="action", required=True)
    f = ps.add_parser("find")
    f.add_argument("--pattern", required=True, help="P<k>, M1, or a graph JSON path")
    f.add_argument("--input", required=True)

    p = sub.add_parser("ramsey", help="path / matching extraction")
    rs = p.add_subparsers(dest="action", required=True)
    rp = rs.add_parser("path")
    rp.add_argument("--k", type=int, required=True)
    rp.add_argument("--input", required=True)
    rp.add_argument("--seed", type=int, default=None)
    rm = rs.add_parser("matching")
    rm.add_argument("--pattern", required=True)
    rm.add_argument("--input", required=True)
    rm.add_argument("--seed", type=int, required=True)
    rm.add_argument("--retries", type=int, default=None)
    rm.add_argument("--deterministic", action="store_true")

    p = sub.add_parser("curves", help="curve-family operations")
    cs = p.add_subparsers(dest="action", required=True)
    cg = cs.add_parser("graph")
    cg.add_argument("--curves", required=True)
    cg.add_argument("--order", choices=["grounded", "right"], default="right")
    cc = cs.add_parser("check-grounded")
    cc.add_argument("--curves", required=True)
    cr = cs.add_parser("ramsey")
    cr.add_argument("--curves", required=True)
    cr.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("magical", help="multi-order machinery")
    ms = p.add_subparsers(dest="action", required=True)
    ms.add_parser("verify-claim")
    mc = ms.add_parser("check")
    mc.add_argument("--input", required=True)
    mc.add_argument("--perm2", required=True, help="comma-separated ranks")
    mc.add_argument("--perm3", required=True)
    me = ms.add_parser("extract")
    me.add_argument("--curves", required=True)
    me.add_argument("--line", required=True)

    sub.add_parser("verify-claim", help="alias for `magical verify-claim`")

    p = sub.add_parser("threshold", help="sparse-family pipeline")
    ts = p.add_subparsers(dest="action", required=True)
    tr = ts.add_parser("run")
    tr.add_argument("--curves", required=True)
    tr.add_argument("--epsilon", required=True)

    p = sub.add_parser("oracle", help="exhaustive maximum balanced bi-clique")
    p.add_argument("--input", required=True)
    p.add_argument("--complement", action="store_true")
    p.add_argument("--cap", type=int, default=16)

    p = sub.add_parser("validate", help="file format diagnostics")
    p.add_argument("--file", required=True)

    p = sub.add_parser("batch", help="run a suite of commands")
    p.add_argument("--spec", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    return top


def _parse_pattern(spec: str) -> OrderedGraph:
    if spec.upper() == "M1":
        return m1_pattern()
    if spec.upper().startswith("P") and spec[1:].isdigit():
        return monotone_path(int(spec[1:]))
    return load_graph(spec)


def _parse_perm(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _outcome_record(cmd, digest, outcome, g, seed, elapsed):
    if not outcome.verify(g):
        raise OrdramError(f"{outcome.variant} certificate failed re-verification")
    return make_record(
        cmd, digest, outcome.variant, outcome.to_json(), outcome.sizes(), seed, elapsed
    )


def _elapsed(t0, enabled):
    return int((time.monotonic() - t0) * 1000) if enabled else None


def execute(argv: list[str]) -> tuple[int, list[dict]]:
    """Run one command line; returns (exit code, outcome records)."""
    args = build_parser().parse_args(argv)
    timing = args.timing
    t0 = time.monotonic()
    cmd = list(argv)

    try:
        if args.verb == "gen":
            params = {
                "p": args.p,
                "epsilon": args.epsilon,
                "segs": args.segs,
                "x0": args.x0,
                "amplitude": args.amplitude,
            }
            spec = GenSpec(args.kind, args.n, args.seed, params)
            made = generate(spec)
            if isinstance(made, OrderedGraph):
                payload = graph_to_json(made)
            else:
                payload = curves_to_json(made)
            text = json.dumps(payload, separators=(",", ":"))
            Path(args.out).write_text(text + "\n")
            rec = make_record(
                cmd,
                sha256_file(args.out),
                "generated",
                spec.to_json(),
                {"n": args.n},
                args.seed,
                _elapsed(t0, timing),
            )
            return 0, [rec]

        if args.verb == "patterns":
            g = load_graph(args.input)
            pat = _parse_pattern(args.pattern)
            digest = sha256_file(args.input)
            emb = find_induced_embedding(g, pat)
            if emb is None:
                rec = make_record(
                    cmd, digest, "not-found", None, {"pattern_vertices": pat.n},
                    None, _elapsed(t0, timing),
                )
                return 0, [rec]
            out = InducedPatternFound(emb, pat)
            return 0, [_outcome_record(cmd, digest, out, g, None, _elapsed(t0, timing))]

        if args.verb == "ramsey" and args.action == "path":
            g = load_graph(args.input)
            out = find_path_or_cobiclique(g, args.k)
            rec = _outcome_record(
                cmd, sha256_file(args.input), out, g, args.seed, _elapsed(t0, timing)
            )
            return (2 if isinstance(out, PreconditionViolation) else 0), [rec]

        if args.verb == "ramsey" and args.action == "matching":
            g = load_graph(args.input)
            pat = _parse_pattern(args.pattern)
            try:
                out = find_matching_or_cobiclique(
                    g, pat, args.seed, args.retries, args.deterministic
                )
            except RetryExhausted as exc:
                rec = make_record(
                    cmd, sha256_file(args.input), "retry-exhausted",
                    {"trials": exc.trials, "densities": exc.densities},
                    {}, args.seed, _elapsed(t0, timing),
                )
                return 2, [rec]
            rec = _outcome_record(
                cmd, sha256_file(args.input), out, g, args.seed, _elapsed(t0, timing)
            )
            return (2 if isinstance(out, PreconditionViolation) else 0), [rec]

        if args.verb == "curves" and args.action == "graph":
            fam = load_family(args.curves)
            fam = (
                grounded_family(fam.curves)
                if args.order == "grounded"
                else right_ordered_family(fam.curves)
            )
            g = intersection_graph(fam)
            rec = make_record(
                cmd, sha256_file(args.curves), "graph", graph_to_json(g),
                {"n": g.n, "edges": g.edge_count()}, None, _elapsed(t0, timing),
            )
            return 0, [rec]

        if args.verb == "curves" and args.action == "check-grounded":
            fam = load_family(args.curves)
            report = grounded_ordering_properties(fam)
            rec = make_record(
                cmd, sha256_file(args.curves), "grounded-check",
                {
                    "ok": report.ok,
                    "m1_witness": list(report.m1_witness) if report.m1_witness else None,
                    "p4_witness": list(report.p4_witness) if report.p4_witness else None,
                },
                {}, None, _elapsed(t0, timing),
            )
            return (0 if report.ok else 2), [rec]

        if args.verb == "curves" and args.action == "ramsey":
            fam = load_family(args.curves)
            res = curves_ramsey(fam)
            g = intersection_graph(right_ordered_family(fam.curves))
            if not is_biclique(g, res.biclique):
                raise OrdramError("pipeline certificate failed re-verification")
            variant = "co-bi-clique" if res.biclique.in_complement else "bi-clique"
            rec = make_record(
                cmd, sha256_file(args.curves), variant, res.biclique.to_json(),
                {"size": res.biclique.size, "branch": res.branch},
                args.seed, _elapsed(t0, timing),
            )
            return 0, [rec]

        if args.verb == "verify-claim" or (
            args.verb == "magical" and args.action == "verify-claim"
        ):
            report = verify_forcing_claim()
            rec = make_record(
                cmd, None, "forcing-claim", report.to_json(),
                {"orderings": report.orderings_checked}, None, _elapsed(t0, timing),
            )
            return (0 if report.all_contain_forcing else 2), [rec]

        if args.verb == "magical" and args.action == "check":
            g = load_graph(args.input)
            v2 = is_magical(g, _parse_perm(args.perm2))
            v3 = is_magical(g, _parse_perm(args.perm3))
            rec = make_record(
                cmd, sha256_file(args.input), "magical-check",
                {
                    "violation_order2": list(v2) if v2 else None,
                    "violation_order3": list(v3) if v3 else None,
                },
                {}, None, _elapsed(t0, timing),
            )
            return 0, [rec]

        if args.verb == "magical" and args.action == "extract":
            fam = load_family(args.curves)
            x0 = Fraction(args.line)
            tg = double_magical_witness(fam, x0)
            cert = extract_biclique_dense(tg)
            if cert.size and not is_biclique(tg.base, cert):
                raise OrdramError("extraction certificate failed re-verification")
            rec = make_record(
                cmd, sha256_file(args.curves), "co-bi-clique",
                {"a": sorted(cert.side_a), "b": sorted(cert.side_b),
                 "in_complement": True, "relative_to": "intersection-graph"},
                {"size": cert.size}, None, _elapsed(t0, timing),
            )
            return 0, [rec]

        if args.verb == "threshold":
            fam = load_family(args.curves)
            res = threshold_pipeline(fam, Fraction(args.epsilon))
            rec = make_record(
                cmd, sha256_file(args.curves), "co-bi-clique",
                res.biclique.to_json(),
                {
                    "size": res.biclique.size,
                    "case": res.case,
                    "density": {"num": res.density.numerator, "den": res.density.denominator},
                },
                None, _elapsed(t0, timing),
            )
            return (0 if res.biclique.size else 2), [rec]

        if args.verb == "oracle":
            g = load_graph(args.input)
            cert = max_biclique_oracle(g, args.complement, args.cap)
            rec = make_record(
                cmd, sha256_file(args.input),
                "co-bi-clique" if args.complement else "bi-clique",
                cert.to_json(), {"size": cert.size}, None, _elapsed(t0, timing),
            )
            return 0, [rec]

        if args.verb == "validate":
            diags = validate_file(args.file)
            rec = make_record(
                cmd, None, "validation",
                {"ok": not diags, "diagnostics": diags}, {}, None,
                _elapsed(t0, timing),
            )
            return (0 if not diags else 1), [rec]

        if args.verb == "batch":
            return _run_batch(args, cmd, t0)

    except InputFormatError as exc:
        rec = make_record(cmd, None, "input-error",
                          {"diagnostics": exc.diagnostics}, {}, None, None)
        return 1, [rec]
    except OrdramError as exc:
        rec = make_record(cmd, None, "error",
                          {"message": str(exc), "type": type(exc).__name__},
                          {}, None, None)
        return 1, [rec]
    except OSError as exc:
        rec = make_record(cmd, None, "input-error", {"message": str(exc)}, {}, None, None)
        return 1, [rec]

    raise AssertionError(f"unhandled verb {args.verb}")


def _batch_job(argv: list[str]) -> tuple[int, list[dict]]:
    return execute(argv)


def _run_batch(args, cmd, t0) -> tuple[int, list[dict]]:
    spec = json.loads(Path(args.spec).read_text())
    runs = [r["argv"] for r in spec.get("runs", [])]
    results: list[tuple[int, list[dict]]]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_batch_job, runs))
    else:
        results = [execute(r) for r in runs]
    records: list[dict] = []
    worst = 0
    for code, recs in results:
        worst = max(worst, code)
        records.extend(recs)
    counts: dict[str, int] = {}
    sizes: list[int] = []
    for rec in records:
        counts[rec["variant"]] = counts.get(rec["variant"], 0) + 1
        size = (rec.get("sizes") or {}).get("size")
        if isinstance(size, int):
            sizes.append(size)
    agg = {
        "record": "aggregate",
        "runs": len(runs),
        "variants": dict(sorted(counts.items())),
        "size_min": min(sizes) if sizes else None,
        "size_mean": (sum(sizes) / len(sizes)) if sizes else None,
        "size_max": max(sizes) if sizes else None,
    }
    if args.format == "tsv":
        lines = ["variant\tcount"] + [f"{k}\t{v}" for k, v in sorted(counts.items())]
        agg = {"record": "aggregate", "runs": len(runs), "tsv": "\n".join(lines)}
    records.append(agg)
    return worst, records


def main(argv=None) -> int:
    code, records = execute(sys.argv[1:] if argv is None else list(argv))
    for rec in records:
        sys.stdout.write(dump_record(rec) + "\n")
    variants = ", ".join(r["variant"] if "variant" in r else r["record"] for r in records)
    sys.stderr.write(f"ordram {__version__}: exit {code} ({variants})\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
