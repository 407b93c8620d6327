"""Command-line entry point: ``hyperstab <command> [options]``.

Exit status is 0 whenever a report is produced, including reports whose
computed values disagree with the printed ones.  Malformed input gives 2,
a failed internal cross-check gives 3.
"""

from __future__ import annotations

import argparse
import sys

from . import bell, photonic, reporting
from .errors import HyperstabError, InvariantViolation
from .stabilizer import DEFAULT_GUARD_BITS, TWELVE_QUBIT_STATE, load_state

EXIT_INPUT = 2
EXIT_INVARIANT = 3


def _state(args):
    return load_state(args.state) if args.state else TWELVE_QUBIT_STATE


def cmd_count(args):
    doc = reporting.count_document(_state(args), args.guard_bits, args.partitions)
    if not doc["match"]:
        raise InvariantViolation("enumerated and closed-form counts differ")
    if args.format == "json":
        return reporting.to_json(doc)
    return reporting.render_mapping({k: v for k, v in doc.items() if k != "state"})


def cmd_closed_form(args):
    doc = reporting.closed_form_document(_state(args), args.ordering)
    if args.format == "json":
        return reporting.to_json(doc)
    out = reporting.render_table(doc["blocks"], ["m", "parity_mask", "negatives", "c_binomial", "c_cases"])
    out += reporting.render_mapping(
        {k: doc[k] for k in ("spec", "n", "negatives", "all_plus_bound")}
    )
    if "ordering" in doc:
        out += reporting.render_mapping({f"ordering.{k}": v for k, v in doc["ordering"].items()})
    return out


def cmd_bell(args):
    state = _state(args)
    doc = reporting.bell_document(
        state,
        exhaustive=args.exhaustive,
        seed=args.seed,
        restarts=args.restarts,
        steps=args.steps,
        heuristic=state.n <= bell.HEURISTIC_MAX_QUBITS,
        max_free=args.max_free,
        guard_bits=args.guard_bits,
    )
    if args.format == "json":
        return reporting.to_json(doc)
    return reporting.render_mapping(doc)


def cmd_simulate(args):
    scenario = photonic.Scenario.load(args.scenario)
    doc = reporting.simulate_document(scenario)
    if args.readout_csv:
        rows = [{"outcome": k, "probability": v} for k, v in doc["readout"].items()]
        with open(args.readout_csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(reporting.to_csv(rows, ("outcome", "probability")))
    if args.format == "json":
        return reporting.to_json(doc)
    if args.format == "csv":
        rows = [{"outcome": k, "probability": v} for k, v in doc["readout"].items()]
        return reporting.to_csv(rows, ("outcome", "probability"))
    out = "".join(f"{amp:>4}  {term}\n" for term, amp in doc["final_terms"])
    summary = {k: v for k, v in doc.items() if k not in ("final_terms", "readout")}
    return out + reporting.render_mapping(summary)


TABLE1_COLUMNS = [
    "state", "qm_value", "printed_max_lhvt", "computed_all_plus_bound",
    "heuristic_lhv_lower_bound", "printed_D", "computed_D", "bound_matches_printed",
]


def cmd_table1(args):
    doc = reporting.table1_document(seed=args.seed, restarts=args.restarts)
    if args.format == "json":
        return reporting.to_json(doc)
    if args.format == "csv":
        return reporting.to_csv(doc["rows"], list(doc["rows"][0]))
    out = reporting.render_table(doc["rows"], TABLE1_COLUMNS)
    out += "\nvariants (not in the printed table):\n"
    out += reporting.render_table(doc["variants"], list(doc["variants"][0]))
    return out


def cmd_cases(args):
    rows = reporting.cases_rows(args.x_max)
    if args.format == "json":
        return reporting.to_json({"command": "cases", "x_max": args.x_max, "rows": rows})
    if args.format == "table":
        return reporting.render_table(rows, list(reporting.CASES_HEADER))
    return reporting.to_csv(rows, reporting.CASES_HEADER)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperstab",
        description="Stabilizer-group counts and Bell bounds for GHZ-type hyperentangled states, plus the optical protocol simulation.",
    )
    parser.add_argument("--version", action="version", version="hyperstab 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, formats=("table", "json"), default="table"):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write the report here instead of stdout")
        return p

    state_help = 'blocks as "4:0000,4:0101,4:0000", a JSON document or a JSON file (default: the 12-qubit state)'

    p = add("count", cmd_count, "enumerate the group and count negative-sign elements")
    p.add_argument("--state", help=state_help)
    p.add_argument("--guard-bits", type=int, default=DEFAULT_GUARD_BITS)
    p.add_argument("--partitions", type=int, default=1, help="power of two; split work by high generator bits")

    p = add("closed-form", cmd_closed_form, "closed-form negative counts")
    p.add_argument("--state", help=state_help)
    p.add_argument("--ordering", type=int, metavar="Q", help="also compare 3/2/1-block states of Q qubits")

    p = add("bell", cmd_bell, "Bell operator values and local-hidden-variable maxima")
    p.add_argument("--state", help=state_help)
    p.add_argument("--exhaustive", action="store_true", help="exact search over all assignments")
    p.add_argument("--max-free", type=int, default=bell.EXHAUSTIVE_MAX_FREE,
                   help="override the free-variable guard of --exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=bell.DEFAULT_RESTARTS)
    p.add_argument("--steps", type=int)
    p.add_argument("--guard-bits", type=int, default=DEFAULT_GUARD_BITS)

    p = add("simulate", cmd_simulate, "run the optical protocol", formats=("table", "json", "csv"))
    p.add_argument("--scenario", help="scenario JSON (default: the shipped protocol)")
    p.add_argument("--readout-csv", help="also write the outcome distribution as CSV")

    p = add("table1", cmd_table1, "reproduce the violation-degree table", formats=("table", "json", "csv"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=bell.DEFAULT_RESTARTS)

    p = add("cases", cmd_cases, "closed-form case differences as CSV", formats=("csv", "json", "table"), default="csv")
    p.add_argument("--x-max", type=int, default=5)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except InvariantViolation as exc:
        print(f"hyperstab: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (HyperstabError, OSError) as exc:
        print(f"hyperstab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
