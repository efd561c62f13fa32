"""Command line front end: parse a semigroup description, analyze, report, draw.

Input grammar (UTF-8, LF or CRLF, `#` starts a comment):

    states: 3
    gen: 1 3 3        # one generator per line, 1-based images
    gen: 3 1 3
    monoid: true      # optional, default true: adjoin the identity
    extended: false   # optional: also adjoin missing singleton subsets

Subcommands: analyze, dot, verify, regrep, functorial.  Exit codes:
0 all verifications passed, 1 verification counterexample, 2 input error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace

from .core import ResourceLimitError, StateSubset, Transformation, TransformationSemigroup
from .green import ConsistencyError, d_classes, eggboxes, green_poset
from .maps import check_im_respects_orders, im_bar_S, verify_diagram
from .morphisms import admissible_partitions, functoriality_check, quotient_ts, validate
from .order import MalformedPreorderError, lattice_violation
from .skeleton import (
    extended_image_set,
    image_set,
    inclusion_preorder,
    skeleton_poset,
    subduction_preorder,
)

ALL_TASKS = ("green", "skeleton", "diagram", "regrep", "functorial")
DOT_KINDS = ("jposet", "lposet", "skeleton", "eggbox", "collapse")


class InputError(ValueError):
    """Malformed input document or unusable command arguments."""


class MissingAnalysisError(RuntimeError):
    """A rendering was requested for an analysis the bundle does not hold."""


@dataclass(frozen=True)
class InputDocument:
    """A parsed semigroup description."""

    n: int
    generators: tuple
    monoid: bool = True
    extended: bool = False


def _parse_bool(value, lineno):
    low = value.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise InputError(f"line {lineno}: expected true or false, got {value!r}")


def parse(text):
    """Parse a semigroup description; errors carry the offending line number."""
    n = None
    generators = []
    monoid = True
    extended = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'key: value', got {line!r}")
        key = key.strip().lower()
        rest = rest.strip()
        if n is None and key != "states":
            raise InputError(f"line {lineno}: the first significant line must be 'states: <n>'")
        if key == "states":
            if n is not None:
                raise InputError(f"line {lineno}: 'states' given twice")
            try:
                n = int(rest)
            except ValueError:
                raise InputError(f"line {lineno}: state count {rest!r} is not an integer") from None
            if n < 1:
                raise InputError(f"line {lineno}: state count must be at least 1")
        elif key == "gen":
            entries = rest.split()
            if len(entries) != n:
                raise InputError(f"line {lineno}: expected {n} entries, got {len(entries)}")
            try:
                values = tuple(int(e) for e in entries)
            except ValueError:
                raise InputError(f"line {lineno}: generator entries must be integers") from None
            for v in values:
                if not 1 <= v <= n:
                    raise InputError(f"line {lineno}: entry {v} outside 1..{n}")
            generators.append(values)
        elif key == "monoid":
            monoid = _parse_bool(rest, lineno)
        elif key == "extended":
            extended = _parse_bool(rest, lineno)
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    if n is None:
        raise InputError("missing 'states:' line")
    if not generators:
        raise InputError("no generators given")
    return InputDocument(n, tuple(generators), monoid, extended)


def serialize(doc):
    """Inverse of parse, up to comments and flag defaults."""
    lines = [f"states: {doc.n}"]
    lines.append(f"monoid: {'true' if doc.monoid else 'false'}")
    lines.append(f"extended: {'true' if doc.extended else 'false'}")
    for g in doc.generators:
        lines.append("gen: " + " ".join(str(v) for v in g))
    return "\n".join(lines) + "\n"


def build_semigroup(doc, max_elements=1_000_000):
    gens = [Transformation.from_one_based(g) for g in doc.generators]
    ts = TransformationSemigroup.generate(doc.n, gens, max_elements)
    return ts.adjoin_identity() if doc.monoid else ts


@dataclass
class AnalysisBundle:
    """Results of the requested analyses for one input document."""

    doc: InputDocument
    semigroup: TransformationSemigroup
    monoid: TransformationSemigroup
    tasks: tuple
    green: dict = None
    dclasses: tuple = None
    boxes: tuple = None
    images: object = None
    skeleton: object = None
    diagram: object = None
    corollary: object = None
    functorial: list = None

    @property
    def passed(self):
        if self.diagram is not None and not self.diagram.passed:
            return False
        if self.corollary is not None and not self.corollary.passed:
            return False
        if self.functorial is not None:
            for entry in self.functorial:
                if not entry["valid"] or not entry["report"].passed:
                    return False
        return True


def run(doc, tasks, max_elements=1_000_000):
    """Execute the requested analyses; 'diagram' implies green and skeleton."""
    tasks = set(tasks)
    unknown = tasks - set(ALL_TASKS)
    if unknown:
        raise InputError(f"unknown task {sorted(unknown)[0]!r}")
    if "diagram" in tasks:
        tasks |= {"green", "skeleton"}
    ts = build_semigroup(doc, max_elements)
    m = ts.adjoin_identity()
    bundle = AnalysisBundle(doc, ts, m, tuple(sorted(tasks)))
    if "green" in tasks:
        bundle.green = {kind: green_poset(m, kind) for kind in ("R", "L", "J", "H")}
        bundle.dclasses = d_classes(m)
        bundle.boxes = tuple(eggboxes(m))
    if "skeleton" in tasks:
        bundle.images = extended_image_set(m) if doc.extended else image_set(m)
        bundle.skeleton = skeleton_poset(m, doc.extended)
    if "diagram" in tasks:
        bundle.diagram = verify_diagram(m)
        if bundle.diagram.sizes["S1"] != len(m.elements):
            raise ConsistencyError("diagram carrier size disagrees with the monoid")
        if not doc.extended and bundle.diagram.sizes["skeleton"] != len(bundle.skeleton):
            raise ConsistencyError("skeleton size disagrees across views")
    if "regrep" in tasks:
        from .regrep import corollary_check

        bundle.corollary = corollary_check(ts, max_elements)
    if "functorial" in tasks:
        bundle.functorial = []
        for partition in admissible_partitions(ts):
            target, morphism = quotient_ts(ts, partition)
            ok, violation = validate(morphism)
            entry = {
                "partition": partition,
                "target": target,
                "valid": ok,
                "violation": violation,
                "report": functoriality_check(morphism) if ok else None,
            }
            bundle.functorial.append(entry)
    return bundle


def _one_based_blocks(partition):
    return [[x + 1 for x in block] for block in partition.blocks]


def report_text(bundle):
    """Human-readable summary; one fact per line, deterministic."""
    doc = bundle.doc
    m = bundle.monoid
    lines = [
        f"states: {doc.n}",
        f"generators: {len(doc.generators)}",
        f"monoid: {'true' if doc.monoid else 'false'}",
        f"elements: {len(bundle.semigroup)}",
        f"monoid elements: {len(m)}",
    ]
    if bundle.green is not None:
        counts = {kind: len(bundle.green[kind]) for kind in ("R", "L", "J", "H")}
        lines.append(
            "green classes: "
            + " ".join(f"{kind}={counts[kind]}" for kind in ("R", "L", "J", "H"))
        )
        lines.append(f"D-classes: {len(bundle.dclasses)} (D = J)")
        for i, box in enumerate(bundle.boxes):
            rows, cols = box.shape
            lines.append(
                f"egg-box {i} [{box.members[0]!r}]: {rows}x{cols}, {len(box.members)} element(s)"
            )
    if bundle.skeleton is not None:
        adjoined = len(getattr(bundle.images, "adjoined", ()))
        suffix = f" (+{adjoined} adjoined singleton(s))" if adjoined else ""
        lines.append(f"image sets: {len(bundle.images)}{suffix}")
        lines.append(f"skeleton classes: {len(bundle.skeleton)}")
        sizes = [len(cls) for cls in bundle.skeleton.classes]
        lines.append("skeleton class sizes: " + " ".join(str(s) for s in sizes))
        violation = lattice_violation(bundle.skeleton)
        if violation is None:
            lines.append("skeleton lattice: yes")
        else:
            kind, i, j = violation
            lines.append(f"skeleton lattice: no (no unique {kind} for classes {i} and {j})")
    if bundle.diagram is not None:
        lines.append("diagram:")
        lines.extend("  " + ln for ln in bundle.diagram.to_text().splitlines())
    if bundle.corollary is not None:
        rep = bundle.corollary.regrep.rep
        lines.append(f"regular representation: {rep.n} states, {len(rep)} elements")
        lines.append(
            "J-order vs skeleton isomorphism: "
            + ("ok" if bundle.corollary.j_is_iso and bundle.corollary.j_found else "FAIL")
        )
        lines.append(
            "L-order vs inclusion isomorphism: "
            + ("ok" if bundle.corollary.l_is_iso and bundle.corollary.l_found else "FAIL")
        )
    if bundle.functorial is not None:
        lines.append(f"admissible partitions: {len(bundle.functorial)}")
        for entry in bundle.functorial:
            blocks = "/".join(
                "".join(str(x) for x in block) for block in _one_based_blocks(entry["partition"])
            )
            verdict = "ok" if entry["valid"] and entry["report"].passed else "FAIL"
            lines.append(
                f"partition {blocks}: target {entry['target'].n} state(s) "
                f"{len(entry['target'])} element(s), {verdict}"
            )
    return "\n".join(lines) + "\n"


def _poset_data(poset, label):
    return {
        "classes": [[label(a) for a in cls] for cls in poset.classes],
        "covers": [list(c) for c in poset.covers],
    }


def report_data(bundle):
    """Structured report with every count and verdict; JSON-serializable."""
    doc = bundle.doc
    data = {
        "input": {
            "states": doc.n,
            "generators": [list(g) for g in doc.generators],
            "monoid": doc.monoid,
            "extended": doc.extended,
        },
        "counts": {
            "elements": len(bundle.semigroup),
            "monoid_elements": len(bundle.monoid),
        },
    }
    if bundle.green is not None:
        data["counts"].update(
            {f"{kind.lower()}_classes": len(bundle.green[kind]) for kind in ("R", "L", "J", "H")}
        )
        data["counts"]["d_classes"] = len(bundle.dclasses)
        data["green"] = {
            kind.lower(): _poset_data(bundle.green[kind], repr) for kind in ("R", "L", "J", "H")
        }
        data["green"]["eggboxes"] = [
            {
                "rows": box.shape[0],
                "cols": box.shape[1],
                "members": len(box.members),
                "col_images": [repr(p) for p in box.col_images],
            }
            for box in bundle.boxes
        ]
    if bundle.skeleton is not None:
        data["counts"]["image_sets"] = len(bundle.images)
        data["counts"]["skeleton_classes"] = len(bundle.skeleton)
        violation = lattice_violation(bundle.skeleton)
        data["skeleton"] = _poset_data(bundle.skeleton, repr)
        data["skeleton"]["adjoined"] = sorted(
            repr(p) for p in getattr(bundle.images, "adjoined", ())
        )
        data["skeleton"]["lattice"] = violation is None
        if violation is not None:
            data["skeleton"]["lattice_violation"] = {
                "kind": violation[0],
                "classes": [violation[1], violation[2]],
            }
    if bundle.diagram is not None:
        data["diagram"] = bundle.diagram.to_dict()
    if bundle.corollary is not None:
        c = bundle.corollary
        data["regrep"] = {
            "states": c.regrep.rep.n,
            "elements": len(c.regrep.rep),
            "j_map": list(c.j_map),
            "l_map": list(c.l_map),
            "j_is_iso": c.j_is_iso,
            "l_is_iso": c.l_is_iso,
            "j_found": c.j_found,
            "l_found": c.l_found,
            "passed": c.passed,
        }
    if bundle.functorial is not None:
        data["functorial"] = [
            {
                "blocks": _one_based_blocks(entry["partition"]),
                "target_states": entry["target"].n,
                "target_elements": len(entry["target"]),
                "valid": entry["valid"],
                "report": entry["report"].to_dict() if entry["report"] else None,
            }
            for entry in bundle.functorial
        ]
    data["passed"] = bundle.passed
    return data


def _dot_poset(poset, labels, name):
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(len(poset)):
        lines.append(f'  c{i} [label="{labels[i]}"];')
    for lo, hi in poset.covers:
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_collapse(bundle):
    """J-class Hasse diagram with a filled cluster per multi-class skeleton fiber."""
    m = bundle.monoid
    jq = green_poset(m, "J")
    fibers = im_bar_S(m).fibers()
    lines = ["digraph collapse {", "  rankdir=BT;", "  node [shape=box];"]
    clustered = set()
    for target, classes in enumerate(fibers):
        if len(classes) < 2:
            continue
        lines.append(f"  subgraph cluster_{target} {{")
        lines.append("    style=filled;")
        lines.append("    color=lightgrey;")
        for ci in classes:
            lines.append(f'    c{ci} [label="{jq.rep(ci)!r}"];')
            clustered.add(ci)
        lines.append("  }")
    for ci in range(len(jq)):
        if ci not in clustered:
            lines.append(f'  c{ci} [label="{jq.rep(ci)!r}"];')
    for lo, hi in jq.covers:
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_eggboxes(bundle):
    """One HTML-like table per D-class: column images on top, idempotent cells shaded."""
    m = bundle.monoid
    jq = green_poset(m, "J")
    lines = ["digraph eggbox {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, box in enumerate(bundle.boxes):
        rows = ['<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">']
        header = "".join(f'<TD BORDER="0">{p!r}</TD>' for p in box.col_images)
        rows.append(f"<TR>{header}</TR>")
        for r in range(box.shape[0]):
            cells = []
            for c in range(box.shape[1]):
                members = box.cells[r][c]
                flags = box.idempotent[r][c]
                text = " ".join(
                    f"{t!r}*" if star else f"{t!r}" for t, star in zip(members, flags)
                )
                shade = ' BGCOLOR="lightgrey"' if any(flags) else ""
                cells.append(f"<TD{shade}>{text}</TD>")
            rows.append("<TR>" + "".join(cells) + "</TR>")
        rows.append("</TABLE>")
        lines.append(f"  d{i} [label=<{''.join(rows)}>];")
    for lo, hi in jq.covers:
        lines.append(f"  d{lo} -> d{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(bundle, which):
    """Render one of the bundle's structures as deterministic DOT text."""
    if which == "jposet":
        if bundle.green is None:
            raise MissingAnalysisError("jposet rendering needs the green task")
        jq = bundle.green["J"]
        return _dot_poset(jq, [repr(jq.rep(i)) for i in range(len(jq))], "jposet")
    if which == "lposet":
        if bundle.green is None:
            raise MissingAnalysisError("lposet rendering needs the green task")
        lq = bundle.green["L"]
        return _dot_poset(lq, [repr(lq.rep(i)) for i in range(len(lq))], "lposet")
    if which == "skeleton":
        if bundle.skeleton is None:
            raise MissingAnalysisError("skeleton rendering needs the skeleton task")
        labels = [
            "\\n".join(repr(p) for p in cls) for cls in bundle.skeleton.classes
        ]
        return _dot_poset(bundle.skeleton, labels, "skeleton")
    if which == "eggbox":
        if bundle.boxes is None:
            raise MissingAnalysisError("eggbox rendering needs the green task")
        return _dot_eggboxes(bundle)
    if which == "collapse":
        if bundle.green is None or bundle.skeleton is None:
            raise MissingAnalysisError("collapse rendering needs green and skeleton tasks")
        return _dot_collapse(bundle)
    raise InputError(f"unknown dot kind {which!r}")


def verification_lines(bundle):
    """One line per verified law; returns (lines, all_ok)."""
    m = bundle.monoid
    lines = []
    checks = []

    ok, _witnesses = check_im_respects_orders(m)
    checks.append(("im respects both orders", ok))
    try:
        subduction_preorder(m).check()
        checks.append(("subduction reflexive and transitive", True))
    except MalformedPreorderError:
        checks.append(("subduction reflexive and transitive", False))
    same_size = all(
        len({len(p) for p in cls}) == 1 for cls in skeleton_poset(m).classes
    )
    checks.append(("mutual subduction implies equal size", same_size))
    incl = inclusion_preorder(m)
    subd = subduction_preorder(m)
    embeds = all(
        incl.rows[i] & ~subd.rows[i] == 0 for i in range(len(incl))
    )
    checks.append(("inclusion embeds into subduction", embeds))
    sq = skeleton_poset(m)
    full_class = sq.class_of[StateSubset.full(m.n)]
    checks.append(("full state set is the unique skeleton maximum", sq.maximal() == (full_class,)))
    try:
        d_classes(m)
        checks.append(("D partition equals J partition", True))
    except ConsistencyError:
        checks.append(("D partition equals J partition", False))
    checks.append(("diagram of induced maps", bundle.diagram.passed))

    all_ok = True
    for name, good in checks:
        lines.append(f"{name}: {'ok' if good else 'FAIL'}")
        all_ok = all_ok and good
    lines.append(f"verification: {'PASS' if all_ok else 'FAIL'}")
    return lines, all_ok


def _write_out(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="greenskel",
        description="Green's class orders, subduction skeletons, and their morphisms "
        "for finite transformation semigroups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="semigroup description file")
        p.add_argument("--max-elements", type=int, default=1_000_000, metavar="K")
        p.add_argument("--extended", action="store_true", help="adjoin missing singletons")
        p.add_argument("--out", help="also write the structured report (or DOT) here")

    p_analyze = sub.add_parser("analyze", help="run analyses and print a summary")
    common(p_analyze)
    p_analyze.add_argument(
        "--task", action="append", choices=ALL_TASKS, help="repeatable; default green+skeleton+diagram"
    )
    p_dot = sub.add_parser("dot", help="emit a DOT rendering")
    common(p_dot)
    p_dot.add_argument("--which", required=True, choices=DOT_KINDS)
    for name, helptext in (
        ("verify", "verify every law on this input"),
        ("regrep", "check the right regular representation isomorphisms"),
        ("functorial", "check every admissible quotient morphism"),
    ):
        common(sub.add_parser(name, help=helptext))

    args = parser.parse_args(argv)
    try:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise InputError(f"cannot read {args.input}: {err}") from None
        doc = parse(text)
        if args.extended:
            doc = replace(doc, extended=True)
        return _dispatch(args, doc)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ResourceLimitError as err:
        print(f"resource cap in stage {err.stage}: {err}", file=sys.stderr)
        return 3
    except ConsistencyError as err:
        print(f"internal verification failure: {err}", file=sys.stderr)
        return 1


def _dispatch(args, doc):
    if args.command == "analyze":
        tasks = tuple(args.task) if args.task else ("green", "skeleton", "diagram")
        bundle = run(doc, tasks, args.max_elements)
        sys.stdout.write(report_text(bundle))
        if args.out:
            _write_out(args.out, json.dumps(report_data(bundle), indent=2) + "\n")
        return 0 if bundle.passed else 1
    if args.command == "dot":
        needed = {
            "jposet": ("green",),
            "lposet": ("green",),
            "eggbox": ("green",),
            "skeleton": ("skeleton",),
            "collapse": ("green", "skeleton", "diagram"),
        }[args.which]
        bundle = run(doc, needed, args.max_elements)
        text = emit_dot(bundle, args.which)
        if args.out:
            _write_out(args.out, text)
        else:
            sys.stdout.write(text)
        return 0
    if args.command == "verify":
        bundle = run(doc, ("green", "skeleton", "diagram"), args.max_elements)
        lines, ok = verification_lines(bundle)
        sys.stdout.write("\n".join(lines) + "\n")
        if args.out:
            _write_out(args.out, json.dumps(report_data(bundle), indent=2) + "\n")
        return 0 if ok else 1
    if args.command == "regrep":
        bundle = run(doc, ("regrep",), args.max_elements)
        sys.stdout.write(report_text(bundle))
        if args.out:
            _write_out(args.out, json.dumps(report_data(bundle), indent=2) + "\n")
        return 0 if bundle.corollary.passed else 1
    if args.command == "functorial":
        bundle = run(doc, ("functorial",), args.max_elements)
        sys.stdout.write(report_text(bundle))
        if args.out:
            _write_out(args.out, json.dumps(report_data(bundle), indent=2) + "\n")
        return 0 if bundle.passed else 1
    raise InputError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
