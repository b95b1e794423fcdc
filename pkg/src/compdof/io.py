"""JSON and CSV interchange formats."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .assignment import MessageAssignment, ValidationReport, require_valid
from .certificates import CertificateSet
from .errors import ParseError
from .expansion import BoundResult, ExpansionProfile
from .search import ExpansionExperiment, SearchReport


def assignment_to_dict(a: MessageAssignment) -> dict:
    return {"k": a.k, "m": a.m, "transmit_sets": [sorted(t) for t in a.transmit_sets]}


def dumps(obj, indent=None) -> str:
    return json.dumps(obj, indent=indent)


def serialize_assignment(a: MessageAssignment) -> str:
    return json.dumps(assignment_to_dict(a))


def _int(x, where):
    if not isinstance(x, int) or isinstance(x, bool):
        raise ParseError(f"{where} must be an integer, got {x!r}")
    return x


def assignment_from_dict(doc) -> MessageAssignment:
    """Build an assignment from a decoded JSON document without validating it."""
    if not isinstance(doc, dict):
        raise ParseError("assignment document must be a JSON object")
    missing = [key for key in ("k", "m", "transmit_sets") if key not in doc]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")
    k = _int(doc["k"], "k")
    m = _int(doc["m"], "m")
    sets = doc["transmit_sets"]
    if not isinstance(sets, list):
        raise ParseError("transmit_sets must be a list of lists")
    parsed = []
    for i, t in enumerate(sets, start=1):
        if not isinstance(t, list):
            raise ParseError(f"transmit_sets[{i - 1}] must be a list")
        parsed.append(sorted({_int(j, f"transmit_sets[{i - 1}] entry") for j in t}))
    return MessageAssignment(k, m, parsed)


def parse_assignment(data) -> MessageAssignment:
    """Decode and validate an assignment document.

    ``data`` may be ``bytes`` or ``str``. Sets are sorted and deduplicated.
    Raises :class:`ParseError` (with the byte offset for malformed JSON) or
    :class:`~compdof.errors.InvalidAssignmentError`.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", offset=exc.start) from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {exc.msg}", offset=offset) from None
    return require_valid(assignment_from_dict(doc))


def parse_assignment_file(path) -> MessageAssignment:
    with open(path, "rb") as fh:
        return parse_assignment(fh.read())


def validation_to_dict(report: ValidationReport) -> dict:
    return {
        "valid": report.valid,
        "violations": [
            {"index": v.index, "rule": v.rule, "detail": v.detail} for v in report.violations
        ],
    }


def bound_to_dict(b: BoundResult) -> dict:
    return {"value": b.value, "witness": sorted(b.witness_set), "i_min": b.i_min, "mode": b.mode}


def certificate_to_dict(c: CertificateSet) -> dict:
    return {
        "kind": c.kind,
        "set_s": sorted(c.set_s),
        "carried": c.carried,
        "implied_bound": c.implied_bound,
        "trace": [{"added": s.added, "carried_after": s.carried_after} for s in c.trace.steps],
    }


def report_to_dict(r: SearchReport) -> dict:
    return {
        "k": r.k,
        "m": r.m,
        "best_value": r.best_value,
        "best_assignment": None if r.best_assignment is None else assignment_to_dict(r.best_assignment),
        "method": r.method,
        "trials_or_count": r.trials_or_count,
        "seed": r.seed,
        "elapsed": r.elapsed,
        "dedup_hits": r.dedup_hits,
    }


def format_number(x) -> str:
    """Plain integer, or the shortest decimal that round-trips through float."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return repr(float(x))


def json_number(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else float(x)


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def profile_to_csv(p: ExpansionProfile) -> str:
    return rows_to_csv(["i", "e_i", "candidate"], [(i, e, c) for i, (e, c) in enumerate(zip(p.e, p.candidates()))])


def profile_to_dict(p: ExpansionProfile) -> dict:
    return {"k": p.k, "e": list(p.e), "mode": p.mode, "samples_per_size": p.samples_per_size}


def experiment_to_csv(x: ExpansionExperiment) -> str:
    rows = [
        (t, int(ok), format_number(r))
        for t, (ok, r) in enumerate(zip(x.success_per_trial, x.min_ratio_per_trial))
    ]
    return rows_to_csv(["trial", "success", "min_ratio"], rows)


def experiment_to_dict(x: ExpansionExperiment) -> dict:
    return {
        "k": x.k,
        "m": x.m,
        "epsilon": str(x.epsilon),
        "trials": x.trials,
        "seed": x.seed,
        "successes": x.successes,
        "min_ratio_per_trial": [json_number(r) for r in x.min_ratio_per_trial],
    }
