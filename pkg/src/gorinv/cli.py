"""Command-line front end.

    gorinv construct    --input functional.json
    gorinv invariants   --input group.json --max-degree 4
    gorinv check-group  --input group.json
    gorinv replicate    ex34|ex35
    gorinv verify       --input instance.json
    gorinv sweep        [--input config.json] [--seed S] [--count N]

Exit codes: 0 success, 1 domain error (one JSON line on stderr), 2 usage
error, 3 replication mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import harness
from .action import GAction, check_equivariant, fixed_subspace
from .errors import GorinvError, SpecError
from .field import FieldSpec
from .groups import MatrixGroup, group_from_json, has_nontrivial_onedim_rep
from .invsys import build_inverse_system, check_g_invariance
from .poly import HPoly

log = logging.getLogger("gorinv")

EXIT_DOMAIN = 1
EXIT_MISMATCH = 3


def _load_input(arg: str | None):
    if arg is None:
        raise SpecError("--input is required for this command")
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith(("{", "[", '"')):
        text = Path(arg).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON input: {exc}") from None


def _group_from_input(obj) -> MatrixGroup:
    if isinstance(obj, dict) and isinstance(obj.get("group"), str):
        return harness.zoo_group(obj["group"], obj.get("field", "Q"))
    if isinstance(obj, dict) and isinstance(obj.get("group"), dict):
        return group_from_json(obj["group"])
    if not isinstance(obj, dict):
        raise SpecError("group spec must be a JSON object")
    return group_from_json(obj)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _yes(flag) -> str:
    return "-" if flag is None else ("YES" if flag else "NO")


def _fmt_seq(xs) -> str:
    return ",".join(str(x) for x in xs) if xs is not None else "-"


def cmd_construct(args) -> tuple[dict, str]:
    obj = _load_input(args.input)
    if not isinstance(obj, dict) or "functional" not in obj:
        raise SpecError("construct input needs 'functional' (and 'field', 'n' or a 'group')")
    group = None
    if "group" in obj:
        group = _group_from_input(obj)
        field, n = group.field, group.n
    else:
        field = FieldSpec.from_json(obj.get("field", "Q"))
        n = obj.get("n")
        if not isinstance(n, int):
            raise SpecError("construct input needs an integer 'n' when no group is given")
    phi = harness.functional_from_json(obj["functional"], field, n, group)
    ideal = build_inverse_system(phi)
    out = ideal.to_json()
    if group is not None:
        act = GAction(group)
        out["equivariant"] = check_equivariant(act, phi)
        out["g_invariant"] = check_g_invariance(ideal, act)
    rows = [[P["degree"], P["dim"], "; ".join(str(HPoly.from_terms(field, n, {
        tuple(json.loads(k)): v for k, v in b.items()})) for b in P["basis"]) or "0"]
        for P in out["pieces"]]
    text = _table(rows, ["degree", "dim", "basis"])
    text += f"\npieces above degree {ideal.top} are full"
    return out, text


def cmd_invariants(args) -> tuple[dict, str]:
    group = _group_from_input(_load_input(args.input))
    act = GAction(group)
    degrees = []
    for d in range(args.max_degree + 1):
        S = fixed_subspace(act, d)
        degrees.append({
            "degree": d,
            "dim": S.dim,
            "basis": [HPoly(group.field, group.n, d, row).to_json() for row in S.basis],
        })
    out = {"order": group.order, "field": group.field.to_json(), "degrees": degrees}
    rows = [[e["degree"], e["dim"], "; ".join(
        str(HPoly(group.field, group.n, e["degree"], row)) for row in fixed_subspace(act, e["degree"]).basis)
        or "0"] for e in degrees]
    return out, f"|G| = {group.order} over {group.field}\n" + _table(rows, ["degree", "dim", "basis"])


def cmd_check_group(args) -> tuple[dict, str]:
    group = _group_from_input(_load_input(args.input))
    verdict = has_nontrivial_onedim_rep(group)
    out = verdict.to_json()
    text = _table([[group.order, group.field, verdict.r, _yes(verdict.exists),
                    verdict.witness_prime or "-"]],
                  ["|G|", "field", "r", "nontrivial 1-dim rep", "witness p"])
    return out, text


def _verdict_rows(report: dict) -> list[list]:
    q, b = report.get("quotient"), report.get("invariant_quotient")
    return [
        ["hypothesis holds", _yes(report["hypothesis_holds"])],
        ["witness prime", report["witness_prime"] if report["witness_prime"] else "-"],
        ["functional equivariant", _yes(report["equivariant"])],
        ["ideal G-invariant", _yes(report["ideal_g_invariant"])],
        ["hilbert A/Q", _fmt_seq(q["hilbert"]) if q else "-"],
        ["A/Q Gorenstein", _yes(q["gorenstein"]) if q else "-"],
        ["a(A/Q)", q["a_invariant"] if q else "-"],
        ["invariant quotient dims", _fmt_seq(b["hilbert"]) if b else "-"],
        ["invariant quotient Gorenstein", _yes(b["gorenstein"]) if b else "-"],
        ["a(A^G/Q^G)", b["a_invariant"] if b else "-"],
        ["theorem satisfied", _yes(report["theorem_satisfied"])],
        ["counterexample", _yes(report["counterexample"])],
    ]


def cmd_replicate(args) -> tuple[dict, str]:
    out = harness.replicate_example(args.example, args.force_trivial_character)
    rows = _verdict_rows(out["report"])
    diff_rows = [[d["quantity"], json.dumps(d["expected"]), json.dumps(d["computed"]),
                  "ok" if d["match"] else "MISMATCH"] for d in out["diffs"]]
    text = f"example {args.example}\n" + _table(rows, ["quantity", "value"]) + "\n\n"
    text += _table(diff_rows, ["check", "expected", "computed", "status"])
    if "a_invariant_gap" in out:
        gap = out["a_invariant_gap"]
        text += f"\na-invariant gap: {gap['invariant_quotient']} < {gap['quotient']}"
    for note in out["notes"]:
        text += f"\nnote: {note}"
    text += f"\nall checks match: {_yes(out['match'])}"
    return out, text


def cmd_verify(args) -> tuple[dict, str]:
    obj = _load_input(args.input)
    if args.seed is not None:
        obj = dict(obj, seed=args.seed)
    spec = harness.InstanceSpec.from_json(obj)
    report = harness.verify_theorem(spec).to_json()
    if report["skipped"]:
        return report, f"instance skipped: {report['skipped']}"
    return report, _table(_verdict_rows(report), ["quantity", "value"])


def cmd_sweep(args) -> tuple[dict, str]:
    config = _load_input(args.input) if args.input else dict(harness.DEFAULT_SWEEP)
    if args.seed is not None:
        config["seed"] = args.seed
    if args.count is not None:
        config["count"] = args.count
    start = time.perf_counter()
    out = harness.sweep(config)
    elapsed = time.perf_counter() - start
    log.info("sweep finished in %.2f s", elapsed)
    rows = []
    for cell in out["cells"]:
        label = cell["cell"]
        run = sum(1 for r in out["instances"] if r["label"] == label)
        skip = sum(1 for r in out["skipped"] if r["cell"] == label)
        cex = sum(1 for r in out["instances"] if r["label"] == label and r["counterexample"])
        dist = out["a_invariant_distribution"].get(label, {})
        rows.append([label, cell["status"], _yes(cell.get("hypothesis_holds")), run, skip, cex,
                     " ".join(f"{a}:{c}" for a, c in dist.items()) or "-"])
    text = _table(rows, ["cell", "status", "hypothesis", "run", "skipped", "counterexamples",
                         "a-invariants"])
    text += (f"\ntotal run {out['instances_run']}, skipped {out['instances_skipped']}, "
             f"counterexamples {out['counterexamples']}, invariant quotient not Gorenstein "
             f"{out['invariant_quotient_not_gorenstein']}, wall time {elapsed:.2f} s")
    return out, text


COMMANDS = {
    "construct": cmd_construct,
    "invariants": cmd_invariants,
    "check-group": cmd_check_group,
    "replicate": cmd_replicate,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file, '-' for stdin, or inline JSON")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="gorinv", description="G-invariant Gorenstein ideals by exact computation")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common], help="build I(phi) from a functional")
    p = sub.add_parser("invariants", parents=[common], help="bases of A^G_d")
    p.add_argument("--max-degree", type=int, default=4)
    sub.add_parser("check-group", parents=[common], help="decide the one-dimensional rep hypothesis")
    p = sub.add_parser("replicate", parents=[common], help="re-run a worked example")
    p.add_argument("example", choices=sorted(harness.EXAMPLES))
    p.add_argument("--force-trivial-character", action="store_true")
    p = sub.add_parser("verify", parents=[common], help="verify one instance")
    p.add_argument("--seed", type=int)
    p = sub.add_parser("sweep", parents=[common], help="seeded randomized verification")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int)
    return parser


def _nonnegative(parser, args) -> None:
    for name in ("seed", "count", "max_degree"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be non-negative")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _nonnegative(parser, args)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        result, text = COMMANDS[args.command](args)
    except (GorinvError, OSError) as exc:
        kind = getattr(exc, "kind", "io_error")
        print(json.dumps({"error": str(exc), "kind": kind}), file=sys.stderr)
        return EXIT_DOMAIN
    payload = json.dumps(result, indent=2) + "\n" if args.format == "json" else text + "\n"
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    if args.command == "replicate" and not result["match"]:
        return EXIT_MISMATCH
    return 0


def main() -> None:
    sys.exit(run())
