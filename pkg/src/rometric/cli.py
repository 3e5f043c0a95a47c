"""``rometric`` command-line entry point.

Exit status: 0 on success or a true property, 1 when a checked property is
false or validation fails (report on stdout), 2 on usage or parse errors
(message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import documents as docs
from .distance import check_rometric_axioms, classify_axioms, generated_topology, rometric_violations
from .errors import (
    BudgetError,
    DomainError,
    GroundMismatchError,
    ParseError,
    PreconditionError,
    ValidationError,
)
from .finite_topology import is_t0, kolmogorov_quotient, t0_witness, validate_topology
from .generalized import (
    check_generalized_axioms,
    embedding_report,
    generalized_topology,
    generalized_violation,
    sierpinski_embed,
    universal_generalized_metrization,
)
from .metrization import EXAMPLE_NAMES, ExampleSpec, builtin_example, lift_from_quotient, metrize_finite, verify_metrization
from .oracle import SearchBudget, brute_force_metrize, cross_check_suite, enumerate_topologies, parse_values
from .real_line import LINE_METRICS, check_line_axioms, fmt, line_ball


class Failed(Exception):
    """A checked property is false; ``report`` is printed and the exit status is 1."""

    def __init__(self, report):
        self.report = report


def _violation_doc(v) -> dict:
    return {"kind": v.kind, "points": list(v.points), "values": [fmt(x) for x in v.values], "message": v.describe()}


def _topology(args):
    if not args.topology:
        raise ParseError("--topology FILE is required")
    return docs.topology_from_doc(docs.load_json(args.topology))


def _raw_metric(args):
    if not args.metric:
        raise ParseError("--metric FILE is required")
    return docs.matrix_from_doc(docs.load_json(args.metric))


def _metric(args):
    m = _raw_metric(args)
    bad = rometric_violations(m)
    if bad:
        raise Failed({"valid": False, "witnesses": [_violation_doc(v) for v in bad]})
    return check_rometric_axioms(m)


def _space(args):
    if not args.space:
        raise ParseError("--space FILE is required")
    return docs.space_from_doc(docs.load_json(args.space))


# -- subcommands ------------------------------------------------------------


def cmd_validate_topology(args):
    if not args.topology:
        raise ParseError("--topology FILE is required")
    g, fam = docs.family_from_doc(docs.load_json(args.topology))
    try:
        t = validate_topology(fam, g)
    except ValidationError as exc:
        raise Failed({"valid": False, "witnesses": [v.describe(g) for v in exc.violations]}) from None
    return {"valid": True, "topology": docs.topology_to_doc(t), "witnesses": []}


def cmd_validate_metric(args):
    m = _raw_metric(args)
    bad = rometric_violations(m)
    report = {"valid": not bad, "witnesses": [_violation_doc(v) for v in bad]}
    if bad:
        raise Failed(report)
    return report


def cmd_classify(args):
    m = _raw_metric(args)
    try:
        p = classify_axioms(m)
    except DomainError as exc:
        raise Failed({"error": str(exc), "witnesses": [_violation_doc(v) for v in rometric_violations(m)]}) from None
    return {
        "profile": p.flags(),
        "witnesses": [{"property": k, **v} for k, v in sorted(p.witnesses.items())],
    }


def cmd_topology(args):
    return docs.topology_to_doc(generated_topology(_metric(args)))


def cmd_metrize(args):
    return docs.matrix_to_doc(metrize_finite(_topology(args)))


def cmd_verify(args):
    t = _topology(args)
    m = _raw_metric(args)
    res = verify_metrization(t, m)
    g = t.ground
    report = {
        "ok": res.ok,
        "missing": [g.members(u) for u in res.missing],
        "extra": [g.members(u) for u in res.extra],
        "witnesses": [_violation_doc(v) for v in res.violations],
    }
    if not res.ok:
        raise Failed(report)
    return report


def cmd_quotient(args):
    t = _topology(args)
    q = kolmogorov_quotient(t)
    reps = q.quotient.ground.labels
    return {
        "classes": [t.ground.members(c) for c in q.classes],
        "class_map": {lab: reps[k] for lab, k in zip(t.ground.labels, q.class_map)},
        "quotient": docs.topology_to_doc(q.quotient),
        "t0": is_t0(t),
        "witnesses": [list(w)] if (w := t0_witness(t)) else [],
    }


def cmd_lift(args):
    t = _topology(args)
    q = kolmogorov_quotient(t)
    dq = _metric(args)
    if dq.ground != q.quotient.ground:
        raise GroundMismatchError(
            f"quotient metric must be over the class representatives {list(q.quotient.ground.labels)}"
        )
    return docs.matrix_to_doc(lift_from_quotient(t, q, dq))


def cmd_example(args):
    labels = tuple(args.points.split(",")) if args.points else None
    subset = tuple(args.subset.split(",")) if args.subset else None
    t, m = builtin_example(ExampleSpec(args.name, labels=labels, subset=subset))
    return {
        "name": args.name,
        "topology": docs.topology_to_doc(t),
        "metric": docs.matrix_to_doc(m),
        "verified": verify_metrization(t, m).ok,
    }


def cmd_gcheck(args):
    m, fam = _space(args)
    bad = rometric_violations(m)
    if bad:
        raise Failed({"valid": False, "witnesses": [_violation_doc(v) for v in bad]})
    w = generalized_violation(m, fam)
    if w is not None:
        raise Failed(
            {
                "valid": False,
                "witnesses": [{"alpha": w.alpha, "center": w.center, "radius": fmt(w.radius), "point": w.point}],
            }
        )
    return {"valid": True, "witnesses": []}


def cmd_gtopology(args):
    m, fam = _space(args)
    try:
        space = check_generalized_axioms(m, fam)
    except ValidationError as exc:
        raise Failed({"valid": False, "error": str(exc), "witnesses": []}) from None
    return docs.topology_to_doc(generalized_topology(space))


def cmd_embed(args):
    t = _topology(args)
    emb = sierpinski_embed(t, order=args.order)
    g = t.ground
    return {
        "closed_sets": [g.members(c) for c in emb.closed_index],
        "embedding": dict(zip(g.labels, emb.image_ground.labels)),
        "space": docs.space_to_doc(emb.induced_metric, emb.beta),
        "checks": embedding_report(emb),
        "witnesses": [],
    }


def cmd_universal(args):
    m, fam = universal_generalized_metrization(_topology(args))
    return docs.space_to_doc(m, fam)


def cmd_census(args):
    return [docs.topology_to_doc(t) for t in enumerate_topologies(args.n)]


def cmd_search(args):
    path = args.topology or args.topology_file
    if not path:
        raise ParseError("a topology file is required")
    t = docs.topology_from_doc(docs.load_json(path))
    budget = SearchBudget(parse_values(args.values), args.cap)
    res = brute_force_metrize(t, budget)
    report = {
        "found": res.found,
        "metric": docs.matrix_to_doc(res.metric) if res.metric else None,
        "candidates": res.candidates,
        "complete": res.complete,
        "witnesses": [],
    }
    if not res.found:
        raise Failed(report)
    return report


def cmd_crosscheck(args):
    report = cross_check_suite(args.n).to_dict()
    if not report["ok"]:
        raise Failed(report)
    return report


def cmd_line(args):
    if args.action == "ball":
        if len(args.rest) != 2:
            raise ParseError("usage: line ball <metric> <center> <radius>")
        center, radius = (docs.parse_rational(v) for v in args.rest)
        b = line_ball(args.metric_name, center, radius)
        if args.format == "json":
            return {
                "metric": b.metric,
                "center": fmt(b.center),
                "radius": fmt(b.radius),
                "set": str(b.members),
                "nominal": str(b.nominal),
                "matches_nominal": b.matches_nominal,
            }
        return str(b.members)
    if len(args.rest) != 1:
        raise ParseError("usage: line check <metric> <p1,p2,...>")
    bad = check_line_axioms(args.metric_name, parse_values(args.rest[0]))
    report = {"valid": not bad, "witnesses": [_violation_doc(v) for v in bad]}
    if bad:
        raise Failed(report)
    return report


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--topology", metavar="FILE")
    common.add_argument("--metric", metavar="FILE")
    common.add_argument("--space", metavar="FILE")
    common.add_argument("--format", choices=("text", "json"), default=None)

    p = argparse.ArgumentParser(prog="rometric", description="R.O-metrics on finite spaces")
    sub = p.add_subparsers(dest="command", required=True, metavar="<subcommand>")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("validate-topology", cmd_validate_topology, "check the topology axioms")
    add("validate-metric", cmd_validate_metric, "check the R.O-metric axioms")
    add("classify", cmd_classify, "which distance axiom systems hold")
    add("topology", cmd_topology, "topology generated by a metric's balls")
    add("metrize", cmd_metrize, "two-valued metric realizing a topology")
    add("verify", cmd_verify, "does a metric generate a topology")
    add("quotient", cmd_quotient, "Kolmogorov quotient")
    add("lift", cmd_lift, "lift a quotient metric to the original points")
    ex = add("example", cmd_example, "built-in worked examples")
    ex.add_argument("name", choices=EXAMPLE_NAMES)
    ex.add_argument("--points", help="comma-separated labels")
    ex.add_argument("--subset", help="distinguished set for particular_set")
    add("gcheck", cmd_gcheck, "check the generalized basis axiom")
    add("gtopology", cmd_gtopology, "topology of a generalized space")
    em = add("embed", cmd_embed, "Sierpinski-power embedding of a T0 space")
    em.add_argument("--order", choices=("canonical", "reverse"), default="canonical")
    add("universal", cmd_universal, "generalized metric and map family for any topology")
    ce = add("census", cmd_census, "all labeled topologies on n <= 4 points")
    ce.add_argument("n", type=int)
    se = add("search", cmd_search, "brute-force metric search")
    se.add_argument("topology_file", nargs="?")
    se.add_argument("--values", default="0,1")
    se.add_argument("--cap", type=int, default=1_000_000)
    cc = add("crosscheck", cmd_crosscheck, "run every guarantee over a census")
    cc.add_argument("n", type=int)
    li = add("line", cmd_line, "balls of the real-line metrics")
    li.add_argument("action", choices=("ball", "check"))
    li.add_argument("metric_name", choices=LINE_METRICS)
    li.add_argument("rest", nargs="*")
    return p


def render(result, fmt_: str) -> str:
    if fmt_ == "json" or not isinstance(result, (dict, list)):
        return docs.dumps(result) if fmt_ == "json" else f"{result}\n"
    if isinstance(result, list):
        return "".join(json.dumps(item, sort_keys=True, ensure_ascii=False) + "\n" for item in result)
    return "".join(f"{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}\n" for k, v in sorted(result.items()))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "order", None) == "canonical":
        args.order = None
    fmt_ = args.format or ("text" if args.command == "line" else "json")
    args.format = fmt_
    try:
        result = args.fn(args)
        code = 0
    except Failed as f:
        result, code = f.report, 1
    except (PreconditionError, DomainError, ValidationError) as exc:
        result, code = {"error": str(exc), "witnesses": []}, 1
    except (ParseError, GroundMismatchError, BudgetError) as exc:
        stderr.write(f"rometric: error: {exc}\n")
        return 2
    stdout.write(render(result, fmt_))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
