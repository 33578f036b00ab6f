"""Command-line front end: load a theory file, run analyses, emit reports.

Verbs: validate | coevents | tau | orders | complete | audit | topos |
report.  Reports are deterministic for a given input file and flag set;
the machine format is canonical JSON and round-trips byte-identically.

Exit codes: 0 = analyses ran (law failures are findings, not errors),
1 = usage error, 2 = parse/validation error, 3 = cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from . import beables, coevent, measure as measure_mod, topos
from .coevent import CoeventSpace
from .errors import (
    CapExceeded,
    CoeventsError,
    MismatchedSpace,
    ParseError,
    UnknownHistory,
    ValidationError,
)
from .eventalg import Event
from .theoryfile import HistoriesTheory, load

SET_CHOICES = ("all", "classical", "multiplicative", "scheme")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the documented usage exit code (1, not 2)."""

    def error(self, message: str):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="coevents",
        description="Analyze a finite histories theory: measures, coevents, "
        "order structure, completions, and the varying-set classifier.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    commands = {
        "validate": "sum rules, null sets, null cover",
        "coevents": "enumerate and classify a coevent set",
        "tau": "embed one history event into valuation events",
        "orders": "compare the pushed-forward and inclusion orders",
        "complete": "close the tau image under unions/intersections (and complements)",
        "audit": "compare AND/OR evaluation on both sides of tau",
        "topos": "dual-poset instance, classifier, characteristic maps",
        "report": "all of the above in one document",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("theory", help="path to a theory file")
        p.add_argument(
            "--set",
            choices=SET_CHOICES,
            default="multiplicative",
            help="which coevent space to use (default: multiplicative)",
        )
        p.add_argument(
            "--format",
            choices=("text", "machine"),
            default="text",
            help="output format (machine = canonical JSON)",
        )
        p.add_argument(
            "--include-empty-dual",
            action="store_true",
            help="admit the empty event's dual (the constant-one coevent)",
        )
        p.add_argument(
            "--cap",
            type=int,
            default=None,
            help="override enumeration caps with this size",
        )
        p.add_argument(
            "--event",
            default=None,
            help='history event as comma-separated labels, e.g. "1,2"; "" is empty',
        )
        p.add_argument(
            "--event-b",
            default=None,
            help="second history event (for a single-pair audit)",
        )
        p.add_argument(
            "--context",
            default=None,
            help="principal event of the context coevent (for topos/audit)",
        )
        if name == "complete":
            p.add_argument(
                "--mode",
                choices=("upper", "boolean"),
                default="upper",
                help="which completion to build (default: upper)",
            )
    return parser


def _parse_event(theory: HistoriesTheory, text: str) -> Event:
    labels = [part for part in text.split(",") if part != ""]
    return theory.algebra.event_from_labels(labels)


def _coevent_space(
    theory: HistoriesTheory, set_name: str, include_empty: bool, cap: Optional[int]
) -> CoeventSpace:
    alg = theory.algebra
    if set_name == "classical":
        return coevent.enumerate_classical(alg)
    if set_name == "multiplicative":
        return coevent.enumerate_multiplicative(alg, include_empty_dual=include_empty)
    if set_name == "scheme":
        return coevent.multiplicative_scheme(theory.measure)
    return coevent.enumerate_coevents(
        alg, cap=cap if cap is not None else theory.options.brute_force_cap
    )


# ---------------------------------------------------------------------------
# Section builders (plain JSON-able dicts, canonical ordering throughout)


def _violation_json(v: measure_mod.Violation) -> dict[str, Any]:
    return {
        "rule": v.rule,
        "events": [str(ev) for ev in v.events],
        "got": str(v.got),
        "expected": str(v.expected),
    }


def _report_json(rep: measure_mod.ValidationReport) -> dict[str, Any]:
    return {"ok": rep.ok, "violations": [_violation_json(v) for v in rep.violations]}


def section_theory(theory: HistoriesTheory) -> dict[str, Any]:
    return {
        "labels": list(theory.space.labels),
        "measure_kind": theory.measure_kind,
        "values": {
            str(theory.algebra.event(m)): str(theory.measure.values[m])
            for m in range(theory.algebra.size)
        },
        "options": {
            "include-empty-dual": theory.options.include_empty_dual,
            "brute-force-cap": theory.options.brute_force_cap,
        },
    }


def section_validate(theory: HistoriesTheory) -> dict[str, Any]:
    m = theory.measure
    return {
        "classical": _report_json(measure_mod.validate_classical(m)),
        "quantum": _report_json(measure_mod.validate_quantum(m)),
        "null_sets": [str(ev) for ev in measure_mod.null_sets(m)],
        "null_cover": measure_mod.null_cover_exists(m),
    }


def section_coevents(
    theory: HistoriesTheory, set_name: str, include_empty: bool, cap: Optional[int]
) -> dict[str, Any]:
    space = _coevent_space(theory, set_name, include_empty, cap)
    members = []
    for phi in space:
        members.append(
            {
                "coevent": str(phi),
                "classical": coevent.is_classical(phi),
                "multiplicative": coevent.is_multiplicative(
                    phi, include_empty_dual=include_empty
                ),
                "preclusive": coevent.is_preclusive(phi, theory.measure),
                "modus_ponens": coevent.check_modus_ponens(phi),
            }
        )
    return {"set": set_name, "count": len(space), "members": members}


def section_tau(
    theory: HistoriesTheory,
    set_name: str,
    include_empty: bool,
    cap: Optional[int],
    event: Event,
) -> dict[str, Any]:
    space = _coevent_space(theory, set_name, include_empty, cap)
    val = beables.tau(event, space)
    return {
        "set": set_name,
        "event": str(event),
        "valuation_event": str(val),
        "members": [str(phi) for phi in val.members],
    }


def section_orders(
    theory: HistoriesTheory, set_name: str, include_empty: bool, cap: Optional[int]
) -> dict[str, Any]:
    space = _coevent_space(theory, set_name, include_empty, cap)
    rep = beables.order_report(space)
    return {
        "set": set_name,
        "tau_injective": rep.tau_injective,
        "pushforward_well_defined": rep.pushforward_well_defined,
        "orders_agree": rep.orders_agree,
        "meet_agree": rep.meet_agree,
        "join_agree": rep.join_agree,
        "witnesses": {
            key: [[str(a), str(b)] for a, b in pairs]
            for key, pairs in rep.witnesses.items()
        },
        "notes": list(rep.notes),
    }


def section_complete(
    theory: HistoriesTheory,
    set_name: str,
    include_empty: bool,
    cap: Optional[int],
    mode: str,
) -> dict[str, Any]:
    space = _coevent_space(theory, set_name, include_empty, cap)
    completion = beables.complete(
        space, mode, cap=cap if cap is not None else beables.COMPLETION_CAP
    )
    member_set = set(completion.member_bits)
    full = (1 << len(space)) - 1
    non_boolean_witness = None
    for bits in completion.member_bits:
        if bits ^ full not in member_set:
            non_boolean_witness = str(beables.ValuationEvent(space, bits))
            break
    return {
        "set": set_name,
        "mode": mode,
        "size": len(completion),
        "members": [str(alpha) for alpha in completion.members],
        "boolean": non_boolean_witness is None,
        "non_boolean_witness": non_boolean_witness,
    }


def section_audit(
    theory: HistoriesTheory,
    include_empty: bool,
    context: Optional[Event],
    event_a: Optional[Event],
    event_b: Optional[Event],
) -> dict[str, Any]:
    space = coevent.enumerate_multiplicative(
        theory.algebra, include_empty_dual=include_empty
    )
    if context is not None and event_a is not None and event_b is not None:
        phi = coevent.dual_of_event(context, include_empty_dual=include_empty)
        record = beables.and_or_audit(phi, event_a, event_b, space)
        return {
            "mode": "single",
            "coevent": str(phi),
            "a": str(event_a),
            "b": str(event_b),
            "phi_a": record.phi_a,
            "phi_b": record.phi_b,
            "phi_meet": record.phi_meet,
            "phi_join": record.phi_join,
            "f_meet": record.f_meet,
            "f_join": record.f_join,
            "and_identity_holds": record.and_identity_holds,
            "or_discrepancy": record.or_discrepancy,
        }
    discrepancies = []
    checked = 0
    size = theory.algebra.size
    for phi in space:
        for a in range(size):
            for b in range(a, size):
                record = beables.and_or_audit(
                    phi, theory.algebra.event(a), theory.algebra.event(b), space
                )
                checked += 1
                if record.or_discrepancy:
                    discrepancies.append(
                        {"coevent": str(phi), "a": str(record.a), "b": str(record.b)}
                    )
    return {
        "mode": "all-pairs",
        "checked": checked,
        "and_identity_ok": True,
        "or_discrepancies": discrepancies,
    }


def section_topos(
    theory: HistoriesTheory,
    set_name: str,
    include_empty: bool,
    cap: Optional[int],
    context: Optional[Event],
    event: Optional[Event],
) -> dict[str, Any]:
    if set_name == "scheme":
        instance = topos.build_scheme_instance(
            theory.measure, cap=cap if cap is not None else topos.MCE_INSTANCE_CAP
        )
    else:
        instance = topos.build_mce_instance(
            theory.algebra,
            include_empty_dual=include_empty,
            cap=cap if cap is not None else topos.MCE_INSTANCE_CAP,
        )
    section: dict[str, Any] = {
        "set": "scheme" if set_name == "scheme" else "multiplicative",
        "poset": [str(phi) for phi in instance.poset.elements],
        "antichain": instance.is_antichain,
        "vsupp_is_subobject": topos.is_subobject(instance.support_subobject)[0],
    }
    notes = []
    if instance.is_antichain and len(instance.poset) > 0:
        notes.append(
            "base poset is an anti-chain: every context's sieves collapse to "
            "the two classical truth values"
        )
    sieve_cap = cap if cap is not None else topos.SIEVE_ENUMERATION_CAP
    if len(instance.poset) <= sieve_cap:
        omega = topos.classifier(instance.poset, cap=sieve_cap)
        failures = topos.classifier_functoriality_failures(omega)
        section["classifier"] = {
            "checked": True,
            "functorial": not failures,
            "sieve_counts": [len(omega.sieves(p)) for p in instance.poset.elements],
        }
    else:
        section["classifier"] = {"checked": False, "functorial": None}
        notes.append(
            f"classifier enumeration skipped: poset size {len(instance.poset)} "
            f"exceeds sieve cap {sieve_cap}"
        )
    if context is not None:
        phi = coevent.dual_of_event(context, include_empty_dual=include_empty)
        if event is None:
            raise _UsageError("topos single query needs --event together with --context")
        sieve = topos.chi_vsupp(instance, phi, event)
        section["chi"] = {
            "mode": "single",
            "context": str(phi),
            "event": str(event),
            "sieve": str(sieve),
        }
    else:
        rows = []
        for phi in instance.poset.elements:
            for mask in range(theory.algebra.size):
                ev = theory.algebra.event(mask)
                sieve = topos.chi_vsupp(instance, phi, ev)
                rows.append(
                    {"context": str(phi), "event": str(ev), "sieve": str(sieve)}
                )
        section["chi"] = {"mode": "table", "rows": rows}
    section["notes"] = notes
    return section


def _skippable(builder, *args, **kwargs) -> dict[str, Any]:
    try:
        return builder(*args, **kwargs)
    except CapExceeded as exc:
        return {"skipped": str(exc)}


def build_report(command: str, theory: HistoriesTheory, args) -> dict[str, Any]:
    include_empty = args.include_empty_dual or theory.options.include_empty_dual
    cap = args.cap
    event = _parse_event(theory, args.event) if args.event is not None else None
    event_b = _parse_event(theory, args.event_b) if args.event_b is not None else None
    context = _parse_event(theory, args.context) if args.context is not None else None

    sections: dict[str, Any] = {}
    if command == "validate":
        sections["validate"] = section_validate(theory)
    elif command == "coevents":
        sections["coevents"] = section_coevents(theory, args.set, include_empty, cap)
    elif command == "tau":
        if event is None:
            raise _UsageError("tau needs --event")
        sections["tau"] = section_tau(theory, args.set, include_empty, cap, event)
    elif command == "orders":
        sections["orders"] = section_orders(theory, args.set, include_empty, cap)
    elif command == "complete":
        sections["complete"] = section_complete(
            theory, args.set, include_empty, cap, args.mode
        )
    elif command == "audit":
        sections["audit"] = section_audit(theory, include_empty, context, event, event_b)
    elif command == "topos":
        sections["topos"] = section_topos(
            theory, args.set, include_empty, cap, context, event
        )
    elif command == "report":
        sections["validate"] = section_validate(theory)
        for set_name in ("classical", "multiplicative", "scheme"):
            sections[f"coevents-{set_name}"] = _skippable(
                section_coevents, theory, set_name, include_empty, cap
            )
        sections["orders"] = _skippable(
            section_orders, theory, "multiplicative", include_empty, cap
        )
        sections["complete-upper"] = _skippable(
            section_complete, theory, "multiplicative", include_empty, cap, "upper"
        )
        sections["complete-boolean"] = _skippable(
            section_complete, theory, "multiplicative", include_empty, cap, "boolean"
        )
        sections["audit"] = _skippable(section_audit, theory, include_empty, None, None, None)
        sections["topos"] = _skippable(
            section_topos, theory, "multiplicative", include_empty, cap, None, None
        )
    else:  # pragma: no cover - argparse restricts the choices
        raise _UsageError(f"unknown command {command!r}")

    return {
        "command": command,
        "theory": section_theory(theory),
        "sections": sections,
    }


# ---------------------------------------------------------------------------
# Rendering


def render_machine(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _render_lines(value: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)):
                out.append(f"{pad}{key}:")
                _render_lines(item, indent + 1, out)
            else:
                out.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        if not value:
            out.append(f"{pad}(none)")
        for item in value:
            if isinstance(item, (dict, list)):
                out.append(f"{pad}-")
                _render_lines(item, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(f"{pad}{_scalar(value)}")


def _scalar(value: Any) -> str:
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if value is None:
        return "-"
    return str(value)


def render_text(report: dict[str, Any]) -> str:
    out: list[str] = [f"command: {report['command']}"]
    theory = report["theory"]
    out.append(
        "theory: "
        + ",".join(theory["labels"])
        + f" ({theory['measure_kind']})"
    )
    out.append("")
    out.append("# measure")
    _render_lines(theory["values"], 1, out)
    for name in sorted(report["sections"]):
        out.append("")
        out.append(f"# {name}")
        _render_lines(report["sections"][name], 1, out)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Entry point


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("a command is required")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1

    try:
        theory = load(args.theory)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        report = build_report(args.command, theory, args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (UnknownHistory, MismatchedSpace) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CoeventsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = render_machine(report) if args.format == "machine" else render_text(report)
    sys.stdout.write(text)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
