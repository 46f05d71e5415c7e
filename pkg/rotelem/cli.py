# -*- encoding: utf-8 -*-

"""Command-line interface

Each subcommand reads a spec file, runs one analysis and prints a
:class:`.Report`, as text or (with ``--json``) as JSON. The exit status is 0
on success, 1 for usage errors, 2 for invalid spec files, 3 when the
hypotheses of an analysis do not hold and 4 when an iterated path would
exceed the length cap.
"""

from argparse import ArgumentParser, ArgumentTypeError, RawDescriptionHelpFormatter
import json
import logging as log
import sys
from typing import List, Optional

from config import Config

from .detector import (
    classify_edge,
    detect_in_contraction,
    prediction_families,
    predicted_elements,
)
from .dot import emit_dot
from .errors import RotelemError
from .oracle import (
    deduplicate_records,
    enumerate_periodic,
    one_orbit_analysis,
    s_closure_check,
    verify_predictions,
)
from .reports import Report
from .specfile import echo, parse_spec
from .vmap import analysis_map, orbit, rotation_word
from .words import conjugacy_equal, normalize_rot

__all__ = ["build_parser", "run", "main"]

USAGE_EXAMPLES = """

Usage example:

    python3 program_rotelem.py rotation data/house.spec
    python3 program_rotelem.py periodic data/house.spec --edge E3 --period 1
    python3 program_rotelem.py verify data/three_vertex.spec --edge E3 --max-denom 4 --json
"""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError(f"invalid integer {text!r}")

    if value < 1:
        raise ArgumentTypeError(f"a positive integer is needed, got {value}")

    return value


def _add_common(parser: ArgumentParser):
    parser.add_argument("spec", metavar="SPEC", help="Path to the spec file")
    parser.add_argument(
        "--json",
        action="store_true",
        default=False,
        help="Write the report in JSON format instead of plain text",
    )
    parser.add_argument(
        "--output",
        "-o",
        metavar="FILENAME",
        type=str,
        dest="output_filename",
        default="",
        help="Name of the file where to write the report. "
        "If not provided, the output will be sent to stdout.",
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        default=False,
        help="Print debug messages on stderr",
    )
    parser.add_argument(
        "--max-path-length",
        metavar="N",
        type=_positive_int,
        default=None,
        help="Maximum number of steps of an iterated path",
    )
    parser.add_argument(
        "--progress",
        action="store_true",
        default=False,
        help="Show progress bars for long period sweeps",
    )


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="rotelem",
        description="Compute, predict and verify rotation elements of periodic "
        "points of vertex maps on graphs",
        formatter_class=RawDescriptionHelpFormatter,
        epilog=USAGE_EXAMPLES,
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    cmd = subparsers.add_parser("validate", help="Check the spec file and the map")
    _add_common(cmd)
    cmd.add_argument(
        "--echo", action="store_true", default=False, help="Print the canonical spec text"
    )

    cmd = subparsers.add_parser("label", help="Print the coherent labeling")
    _add_common(cmd)

    cmd = subparsers.add_parser("rotation", help="Rotation elements of the vertices")
    _add_common(cmd)
    cmd.add_argument("--vertex", metavar="V", default=None, help="Only this vertex")

    for name, helpstr in (
        ("classify", "Classify an edge according to the existence results"),
        ("predict", "List the rotation elements guaranteed on an edge"),
        ("detect", "Rotation elements read off the contraction witness"),
        ("periodic", "Enumerate periodic points of the linear model"),
        ("verify", "Check predictions against the periodic points"),
        ("sset", "Check the S-set closure of the periodic points of an edge"),
    ):
        cmd = subparsers.add_parser(name, help=helpstr)
        _add_common(cmd)
        cmd.add_argument(
            "--edge", metavar="E", required=(name != "periodic"), help="Edge to analyse"
        )
        if name in ("predict", "verify"):
            cmd.add_argument("--max-denom", metavar="Q", type=_positive_int, default=None)
            cmd.add_argument("--max-scale", metavar="C", type=_positive_int, default=None)
        if name in ("verify", "sset"):
            cmd.add_argument("--period-bound", metavar="N", type=_positive_int, default=None)

    subparsers.choices["detect"].add_argument(
        "--power", metavar="K", type=_positive_int, default=1, help="Power k of the witness"
    )
    subparsers.choices["periodic"].add_argument(
        "--period", metavar="N", type=_positive_int, required=True, help="Number of iterations"
    )
    sset = subparsers.choices["sset"]
    sset.add_argument("--max-len", metavar="L", type=_positive_int, default=None)
    sset.add_argument(
        "--vertex-mode", choices=("off", "initial", "terminal"), default="off"
    )

    cmd = subparsers.add_parser("one-orbit", help="Analyse a map with one vertex orbit")
    _add_common(cmd)
    cmd.add_argument("--max-denom", metavar="Q", type=_positive_int, default=None)
    cmd.add_argument("--period-bound", metavar="N", type=_positive_int, default=None)

    cmd = subparsers.add_parser("dot", help="Draw a ball of the universal cover")
    _add_common(cmd)
    cmd.add_argument("--radius", metavar="R", type=int, default=None)
    cmd.add_argument(
        "--out", metavar="FILENAME", default="", help="Write the DOT source to this file"
    )

    return parser


def _default(value, fallback):
    return fallback if value is None else value


def _generator_lines(labeling) -> List[str]:
    return [
        f"  {name} = {edge_id}, loop {loop}"
        for name, edge_id, loop in labeling.generator_table()
    ]


def _generators(labeling):
    return [
        {"generator": name, "edge": edge_id, "loop": str(loop)}
        for name, edge_id, loop in labeling.generator_table()
    ]


def _analysis(lifted, edge_id, report):
    result = analysis_map(lifted, edge_id)
    if result is not lifted:
        tree = sorted(result.labeling.tree.edges)
        report.results["relabeled"] = {"tree": tree, "generators": _generators(result.labeling)}
        report.lines.append(f"edge {edge_id} is not in the spanning tree, using tree {{{', '.join(tree)}}}")
        report.lines.extend(_generator_lines(result.labeling))

    return result


def _cmd_validate(args, spec, conf, report):
    lifted = spec.lifted()
    graph = spec.graph
    report.results.update(
        {
            "graph": graph.name,
            "vertices": graph.vertices,
            "edges": [list(e) for e in graph.edges],
            "rank": graph.rank,
            "sigma": dict(lifted.sigma),
            "images": {e.id: str(lifted.images[e.id]) for e in graph.edges},
            "valid": True,
        }
    )
    report.lines.append(
        f"{graph.name}: {len(graph.vertices)} vertices, {len(graph.edges)} edges, rank {graph.rank}"
    )
    report.lines.extend(f"  {e.id} -> {lifted.images[e.id]}" for e in graph.edges)
    report.lines.append("map is valid and homotopic to the identity")
    if args.echo:
        report.results["echo"] = echo(spec)
        report.lines.append("")
        report.lines.append(echo(spec).rstrip("\n"))


def _cmd_label(args, spec, conf, report):
    labeling = spec.labeling
    report.results.update(
        {
            "root": labeling.root,
            "tree": sorted(labeling.tree.edges),
            "theta": {e.id: str(labeling.theta[e.id]) for e in spec.graph.edges},
            "generators": _generators(labeling),
        }
    )
    report.lines.append(f"root {labeling.root}, tree {{{', '.join(sorted(labeling.tree.edges))}}}")
    report.lines.extend(f"  theta({e.id}) = {labeling.theta[e.id]}" for e in spec.graph.edges)
    report.lines.append("generators:")
    report.lines.extend(_generator_lines(labeling))


def _cmd_rotation(args, spec, conf, report):
    lifted = spec.lifted()
    vertices = spec.graph.vertices if args.vertex is None else [args.vertex]
    if args.vertex is not None:
        spec.graph.check_vertex(args.vertex)

    rotations = {}
    for vertex in vertices:
        w, m = rotation_word(lifted, vertex)
        element = normalize_rot(w, m)
        rotations[vertex] = {"word": str(w), "period": m, "element": str(element)}
        report.lines.append(f"{vertex}: {element} (word {w}, period {m})")

    orbits = []
    seen = set()
    for vertex in spec.graph.vertices:
        if vertex in seen:
            continue
        cycle = orbit(lifted, vertex)
        seen.update(cycle)
        elements = [normalize_rot(*rotation_word(lifted, v)) for v in cycle]
        conjugate = all(conjugacy_equal(elements[0], e) for e in elements)
        orbits.append({"vertices": cycle, "conjugate": conjugate})
        report.lines.append(
            f"orbit ({' '.join(cycle)}): elements "
            + ("pairwise conjugate" if conjugate else "NOT conjugate")
        )

    report.results.update({"rotations": rotations, "orbits": orbits})


def _cmd_classify(args, spec, conf, report):
    lifted = _analysis(spec.lifted(), args.edge, report)
    classification = classify_edge(lifted, args.edge)
    families = prediction_families(classification)
    report.results["classification"] = classification.to_dict()
    report.results["families"] = [f.to_dict() for f in families]

    c = classification
    report.lines.append(f"edge {c.edge}: {c.case.value}" + ("" if c.side is None else f" (side {c.side})"))
    report.lines.append(f"  w1 = {c.w1}, m = {c.m}, begins {c.begins1}, belongs {c.belongs1}")
    report.lines.append(f"  w2 = {c.w2}, n = {c.n}, begins {c.begins2}, belongs {c.belongs2}")
    if c.common_root is not None:
        root, k1, k2 = c.common_root
        low, high = c.bounds
        report.lines.append(f"  common root {root}: k1 = {k1}, k2 = {k2}, bounds {low} and {high}")
    if not families:
        report.lines.append("  no guaranteed rotation elements")
    for family in families:
        report.lines.append(f"  {family.source}: {family}")
        report.cite(family.source)


def _predictions(args, conf, lifted):
    classification = classify_edge(lifted, args.edge)
    predictions = predicted_elements(
        classification,
        _default(args.max_denom, conf.get_max_denominator()),
        _default(args.max_scale, conf.get_max_scale()),
    )
    return classification, predictions


def _cmd_predict(args, spec, conf, report):
    lifted = _analysis(spec.lifted(), args.edge, report)
    classification, predictions = _predictions(args, conf, lifted)
    report.results["case"] = classification.case.value
    report.results["predictions"] = [p.to_dict() for p in predictions]
    report.lines.append(f"edge {args.edge}: {classification.case.value}")
    for pred in predictions:
        report.lines.append(
            f"  {pred.element} (period {pred.period_witness}, gamma {pred.gamma}, {pred.source})"
            + ("" if pred.witnessed else ", not found in the contraction witness")
        )
        report.cite(pred.source)


def _cmd_detect(args, spec, conf, report):
    lifted = _analysis(spec.lifted(), args.edge, report)
    detections = detect_in_contraction(lifted, args.edge, args.power)
    report.results["detections"] = [
        {"gamma": str(d.gamma), "orientation": d.orientation.name.lower(), "element": str(d.element)}
        for d in detections
    ]
    for d in detections:
        report.lines.append(f"{d.gamma}·{args.edge} ({d.orientation.name.lower()}): {d.element}")


def _cmd_periodic(args, spec, conf, report):
    lifted = spec.lifted()
    cap = _default(args.max_path_length, conf.get_max_path_length())
    if args.edge is None:
        records = []
        for edge in spec.graph.edges:
            records.extend(enumerate_periodic(lifted, edge.id, args.period, cap))
        records = deduplicate_records(records)
    else:
        records = enumerate_periodic(lifted, args.edge, args.period, cap)

    report.results["records"] = [r.to_dict() for r in records]
    for r in records:
        report.lines.append(
            f"{r.edge} {r.kind.value} {r.location_str()}: period {r.period}, "
            f"word {r.rotation_word}, element {r.element}"
        )
    if not records:
        report.lines.append("no periodic points")
    report.cite("linear-model")


def _cmd_verify(args, spec, conf, report):
    lifted = _analysis(spec.lifted(), args.edge, report)
    _, predictions = _predictions(args, conf, lifted)
    verification = verify_predictions(
        lifted,
        args.edge,
        predictions,
        _default(args.period_bound, conf.get_period_bound()),
        _default(args.max_path_length, conf.get_max_path_length()),
        progress=args.progress,
    )
    report.results["verification"] = verification.to_dict()
    for outcome in verification.outcomes:
        pred = outcome.prediction
        where = ""
        if outcome.record is not None:
            where = f" at period {outcome.record.period}, {outcome.record.location_str()}"
        report.lines.append(f"{pred.element}: {outcome.status}{where}")
        report.cite(pred.source)
    report.lines.append(verification.summary())
    report.cite("linear-model")


def _cmd_sset(args, spec, conf, report):
    lifted = _analysis(spec.lifted(), args.edge, report)
    closure = s_closure_check(
        lifted,
        args.edge,
        _default(args.period_bound, conf.get_period_bound()),
        _default(args.max_len, conf.get_max_len()),
        args.vertex_mode,
        _default(args.max_path_length, conf.get_max_path_length()),
        progress=args.progress,
    )
    report.results["closure"] = closure.to_dict()
    report.lines.append(
        "representatives: " + ", ".join(str(r.element) for r in closure.representatives)
    )
    for outcome in closure.outcomes:
        status = "confirmed" if outcome.confirmed else "MISSING"
        report.lines.append(f"{outcome.element} at period {outcome.period}: {status}")
    report.cite("s-closure")


def _cmd_one_orbit(args, spec, conf, report):
    analysis = one_orbit_analysis(
        spec.lifted(),
        max_denominator=_default(args.max_denom, conf.get_max_denominator()),
        period_bound=_default(args.period_bound, conf.get_period_bound()),
        max_scale=conf.get_max_scale(),
        max_path_length=_default(args.max_path_length, conf.get_max_path_length()),
    )
    report.results["analysis"] = analysis.to_dict()
    report.lines.append(
        f"witness edge {analysis.edge}: fixed point at {analysis.witness.location_str()}"
    )
    report.lines.append(
        f"  endpoint words {analysis.w1} and {analysis.w2}"
        + (" differ" if analysis.distinct_words else " coincide")
    )
    missing = [e for e, flag in analysis.belonging.items() if not flag]
    if missing:
        report.lines.append(f"  edges not belonging to {analysis.w1}: {' '.join(missing)}")
    if analysis.verification is not None:
        report.lines.append(
            f"  {len(analysis.predictions)} predictions, "
            + analysis.verification.summary()
        )
    report.cite("one-orbit")


def _cmd_dot(args, spec, conf, report):
    source = emit_dot(spec.labeling, _default(args.radius, conf.get_dot_radius()))
    if args.out:
        with open(args.out, "wt") as outf:
            outf.write(source)
        report.lines.append(f"DOT source written to {args.out}")
    else:
        report.lines.append(source.rstrip("\n"))
    report.results["dot"] = source


COMMANDS = {
    "validate": _cmd_validate,
    "label": _cmd_label,
    "rotation": _cmd_rotation,
    "classify": _cmd_classify,
    "predict": _cmd_predict,
    "detect": _cmd_detect,
    "periodic": _cmd_periodic,
    "verify": _cmd_verify,
    "sset": _cmd_sset,
    "one-orbit": _cmd_one_orbit,
    "dot": _cmd_dot,
}


def _write(text: str, output_filename: str):
    if not output_filename:
        print(text)
    else:
        with open(str(output_filename), "wt") as outf:
            outf.write(text + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """Run the command line ``argv`` and return the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    log.basicConfig(
        level=log.DEBUG if args.verbose else log.WARNING,
        format="[%(asctime)s %(levelname)s] %(message)s",
    )

    conf = Config()
    try:
        spec = parse_spec(args.spec)
        report = Report(args.command, spec.digest)
        COMMANDS[args.command](args, spec, conf, report)
    except RotelemError as exc:
        log.error("%s", exc)
        if args.json:
            _write(json.dumps({"error": str(exc), "exit_status": exc.exit_status}, indent=4), args.output_filename)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_status
    except OSError as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1

    _write(report.to_json() if args.json else report.to_text(), args.output_filename)
    return 0


def main():
    sys.exit(run())
