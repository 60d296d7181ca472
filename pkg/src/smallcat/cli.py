"""Command-line front end.

    smallcat <command> [--in FILE]... [--out FILE] [--budget N] [--policy NAME] [--report FILE]

Inputs are structure documents (see :mod:`smallcat.documents`); standard input
is read when no ``--in`` is given.  Constructed structures go to ``--out`` (or
standard output) in the same format, and a run report goes to ``--report`` (or
standard error).  Exit status: 0 pass, 1 law violation or failed check,
2 parse or usage error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import yaml

from .action import (
    action_violations,
    gphi_category,
    groupoid_form_violations,
    inner_action,
    restricted_semidirect,
    semidirect_groupoid,
    semidirect_shared_units,
    transformation_groupoid,
)
from .bundle import (
    POLICIES,
    FiniteGroup,
    bundle_from_groupoid,
    group_as_groupoid,
    standard_groupoid,
    standardization_iso,
)
from .core import FiniteCategory, LawError, Violation, as_groupoid, is_groupoid, opposite
from .documents import Document, GroupAction, ParseError, document_from, emit_documents, parse_documents
from .iso import DEFAULT_BUDGET, BudgetExceeded, corollary_check, find_isomorphism

EXIT = {"pass": 0, "fail": 1, "unknown": 3}


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    verdict: str = "pass"
    witnesses: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    timing_ms: float = 0.0

    def fail(self, violations: Sequence[Violation]):
        self.verdict = "fail"
        self.violations.extend(_violation(v) for v in violations)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "violations": self.violations,
            "timing_ms": round(self.timing_ms, 3),
        }

    def emit(self) -> str:
        return yaml.safe_dump(self.as_dict(), sort_keys=False, default_flow_style=None)

    @property
    def exit_code(self) -> int:
        return EXIT[self.verdict]


def _violation(v: Violation) -> dict:
    return {"law": v.law, "witness": [int(x) if not isinstance(x, tuple) else list(x) for x in v.witness],
            "detail": v.detail}


@dataclass
class Options:
    budget: int = DEFAULT_BUDGET
    policy: str = "least-index"


# -- helpers -----------------------------------------------------------------


def _one(docs: list[Document], kinds: tuple[str, ...], count: int = 1) -> list[Document]:
    if len(docs) != count:
        raise UsageError(f"expected {count} input document(s), got {len(docs)}")
    for d in docs:
        if d.kind not in kinds:
            raise UsageError(f"document {d.name!r} has kind {d.kind!r}; expected {' or '.join(kinds)}")
    return docs


def _category(doc: Document) -> FiniteCategory:
    obj = doc.build()
    if isinstance(obj, FiniteGroup):
        return group_as_groupoid(obj)
    return obj


def _strip(nested: dict) -> Document:
    return Document(nested["kind"], "", {k: v for k, v in nested.items() if k != "kind"})


def _raw_action(doc: Document):
    """G, H, phi and the unchecked table of an action document."""
    p = doc.payload
    table = {(g, h): v for g, h, v in (map(int, str(r).split()) for r in p["table"])}
    return _category(_strip(p["G"])), _category(_strip(p["H"])), p["phi"], table


def _name(doc: Document, suffix: str) -> str:
    return f"{doc.name}.{suffix}" if doc.name else suffix


# -- commands ----------------------------------------------------------------


def _validate_one(doc: Document, report: RunReport):
    if doc.kind == "action":
        G, H, phi, table = _raw_action(doc)
        bad = action_violations(G, H, phi, table)
        if is_groupoid(G):
            bad_g = groupoid_form_violations(G, H, phi, table)
            if bool(bad) != bool(bad_g):
                raise RuntimeError("general and groupoid forms of the action axioms disagree")
        if bad:
            report.fail(bad)
        return
    try:
        obj = doc.build()
    except LawError as exc:
        report.fail(exc.violations)
        return
    report.witnesses.append({"document": doc.name, "kind": doc.kind,
                             "groupoid": bool(isinstance(obj, FiniteCategory) and is_groupoid(obj))})


def cmd_validate(docs, opts, report):
    if not docs:
        raise UsageError("validate needs at least one document")
    for d in docs:
        _validate_one(d, report)
    return []


def cmd_standardize(docs, opts, report):
    (doc,) = _one(docs, ("category", "groupoid", "group"))
    if opts.policy not in POLICIES:
        raise UsageError(f"unknown policy {opts.policy!r}; choose from {', '.join(POLICIES)}")
    h = as_groupoid(_category(doc))
    dec = bundle_from_groupoid(h, POLICIES[opts.policy])
    witness = standardization_iso(h, dec)
    report.witnesses.append({"representatives": list(dec.representatives),
                             "connectors": list(dec.connectors)})
    return [document_from(dec.bundle, _name(doc, "bundle")), document_from(witness, _name(doc, "phi"))]


def cmd_build_standard(docs, opts, report):
    (doc,) = _one(docs, ("bundle",))
    sg = standard_groupoid(doc.build())
    report.witnesses.append({"morphisms": sg.groupoid.n_morphisms,
                             "triples": [list(t) for t in sg.triples]})
    return [document_from(sg.groupoid, _name(doc, "standard"))]


def _pairs_witness(prod) -> dict:
    return {"morphisms": prod.category.n_morphisms, "pairs": [list(p) for p in prod.pairs]}


def _product_command(build: Callable, suffix: str):
    def run(docs, opts, report):
        (doc,) = _one(docs, ("action",))
        prod = build(doc.build())
        report.witnesses.append(_pairs_witness(prod))
        return [document_from(prod.category, _name(doc, suffix))]
    return run


def cmd_restricted(docs, opts, report):
    (doc,) = _one(docs, ("action",))
    res = restricted_semidirect(doc.build())
    report.witnesses.append({"tilde": [list(t) for t in res.tilde.triples], **_pairs_witness(res.product)})
    return [document_from(res.tilde.category, _name(doc, "tilde")),
            document_from(res.product.category, _name(doc, "restricted"))]


def cmd_opposite(docs, opts, report):
    (doc,) = _one(docs, ("category", "groupoid", "group"))
    return [document_from(opposite(_category(doc)), _name(doc, "op"))]


def cmd_inner(docs, opts, report):
    (doc,) = _one(docs, ("category", "groupoid", "group"))
    inner = inner_action(_category(doc))
    report.witnesses.append({"psi": list(inner.psi), "kernel": list(inner.kernel.morphisms),
                             "kernel_to_isotropy": list(inner.kernel_iso.morphism_map)})
    return [document_from(inner.action, _name(doc, "inner")),
            document_from(inner.product.category, _name(doc, "inner-product"))]


def cmd_transformation(docs, opts, report):
    (doc,) = _one(docs, ("group-action",))
    ga: GroupAction = doc.build()
    tg = transformation_groupoid(ga.group, ga.n_points, ga.beta)
    report.witnesses.append(_pairs_witness(tg.product))
    return [document_from(tg.groupoid, _name(doc, "transformation"))]


def cmd_iso_check(docs, opts, report):
    a, b = _one(docs, ("category", "groupoid", "group"), 2)
    w = find_isomorphism(_category(a), _category(b), opts.budget)
    if w is None:
        report.fail([Violation("isomorphism", (), f"no isomorphism between {a.name!r} and {b.name!r}; search exhausted")])
        return []
    report.witnesses.append({"object_map": list(w.object_map), "morphism_map": list(w.morphism_map)})
    return [document_from(w, f"{a.name}->{b.name}")]


def cmd_corollary(docs, opts, report):
    a, b = _one(docs, ("group-action",), 2)
    x, y = a.build(), b.build()
    v = corollary_check(x.group, x.n_points, x.beta, y.group, y.n_points, y.beta, opts.budget)
    report.witnesses.append({
        "isomorphic": v.isomorphic,
        "groupoid_iso": None if v.groupoid_iso is None else list(v.groupoid_iso.morphism_map),
        "orbit_bijection": None if v.orbit_bijection is None else list(v.orbit_bijection),
    })
    if not v.agree:
        report.fail([Violation("agreement", (), "direct search and orbit/stabilizer criterion disagree")])
    out = []
    if v.groupoid_iso is not None:
        out.append(document_from(v.groupoid_iso, f"{a.name}->{b.name}"))
    return out


_GENERAL = ("(0)", "(I)", "(II)", "(III)", "(IV)", "(V)", "(VI)")
_GROUPOID = ("(I')", "(II')", "(III')", "(IV)", "(V)", "(VI)")


def cmd_axioms(docs, opts, report):
    (doc,) = _one(docs, ("action",))
    G, H, phi, table = _raw_action(doc)
    forms = [("general", _GENERAL, action_violations(G, H, phi, table))]
    if is_groupoid(G):
        forms.append(("groupoid", _GROUPOID, groupoid_form_violations(G, H, phi, table)))
    for form, laws, bad in forms:
        failing = {v.law for v in bad}
        report.witnesses.append({"form": form, "axioms": {
            law: ("fail" if law in failing else "holds") for law in laws}})
        for v in bad:
            report.fail([v])
    return []




COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "standardize": cmd_standardize,
    "build-standard": cmd_build_standard,
    "semidirect": _product_command(semidirect_groupoid, "semidirect"),
    "semidirect-shared": _product_command(semidirect_shared_units, "semidirect-shared"),
    "restricted-semidirect": cmd_restricted,
    "opposite": cmd_opposite,
    "gphi": _product_command(gphi_category, "gphi"),
    "inner-action": cmd_inner,
    "transformation-groupoid": cmd_transformation,
    "iso-check": cmd_iso_check,
    "corollary-check": cmd_corollary,
    "axioms-report": cmd_axioms,
}


def run_command(command: str, inputs: Sequence[Document], options: Options | None = None
                ) -> tuple[RunReport, list[Document]]:
    """Run one command; law failures and budget overruns land in the report.

    Raises UsageError for an unknown command or unsuitable inputs.
    """
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    opts = options or Options()
    report = RunReport(command)
    start = time.perf_counter()
    outputs: list[Document] = []
    try:
        outputs = COMMANDS[command](list(inputs), opts, report) or []
    except BudgetExceeded as exc:
        report.verdict = "unknown"
        report.violations.append({"law": "budget", "witness": [exc.nodes],
                                  "detail": str(exc)})
    except LawError as exc:
        report.fail(exc.violations)
    except ValueError as exc:
        if isinstance(exc, (UsageError, ParseError)):
            raise
        report.fail([Violation("precondition", (), str(exc))])
    report.timing_ms = (time.perf_counter() - start) * 1000
    if report.verdict == "fail":
        outputs = []
    return report, outputs


# -- process entry -----------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smallcat", description="Finite categories, groupoids and actions.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--in", dest="inputs", action="append", default=[], metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="N")
    p.add_argument("--policy", default="least-index", choices=sorted(POLICIES))
    p.add_argument("--report", metavar="FILE")
    return p


def _write(path: str | None, text: str, stream):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif text:
        stream.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    report = RunReport(args.command)
    try:
        docs = []
        for path in args.inputs or ["-"]:
            text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
            try:
                docs.extend(parse_documents(text))
            except ParseError as exc:
                raise ParseError(f"{path}: {exc}") from None
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        report, outputs = run_command(args.command, docs, Options(args.budget, args.policy))
    except (ParseError, UsageError, OSError) as exc:
        report.verdict = "fail"
        report.violations.append({"law": "input", "witness": [], "detail": str(exc)})
        _write(args.report, report.emit(), sys.stderr)
        return 2
    _write(args.out, emit_documents(outputs), sys.stdout)
    _write(args.report, report.emit(), sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
