"""Command-line surface: verification reports over spec documents.

Every command reads a builtin name or a JSON document path, runs its checks
and writes a report to stdout.  Exit codes: 0 all checks passed, 1 a check
failed, 2 the input was unusable.  With --json the report is emitted as one
deterministic JSON object (no timing field, so byte-identical reruns);
human-readable output appends the elapsed time.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from random import Random

import click

from .builtins import BUILTINS, builtin_spec, so3_broken
from .charts import all_charts, describe_chart
from .construction import (
    build_poisson,
    build_schouten,
    chart_change_naturality,
    is_strict,
    total_weight_audit,
)
from .fields import NotHomological, commutator, is_homological
from .gradedpoly import GradedAlgebraError
from .homotopy import (
    FieldEngine,
    JacobiatorMismatch,
    higher_poisson_bracket,
    higher_schouten_bracket,
    jacobiator,
    leibniz_check,
    poisson_bracket_table,
    poisson_engine,
    schouten_bracket_table,
    schouten_engine,
    weight_one_restriction_check,
)
from .specdoc import SpecError, assemble_field, parse_spec, render_spec


@dataclass
class Report:
    command: str
    source: str
    checks: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, detail: str = "", witness: str = ""):
        entry = {"name": name, "ok": ok}
        if detail:
            entry["detail"] = detail
        if witness:
            entry["witness"] = witness
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def emit(self, as_json: bool, started: float) -> int:
        if as_json:
            doc = {
                "command": self.command,
                "source": self.source,
                "status": "pass" if self.ok else "fail",
                "checks": self.checks,
            }
            if self.extra:
                doc["extra"] = self.extra
            click.echo(json.dumps(doc, indent=2, sort_keys=True))
        else:
            for c in self.checks:
                mark = "PASS" if c["ok"] else "FAIL"
                line = f"[{mark}] {c['name']}"
                if c.get("detail"):
                    line += f": {c['detail']}"
                click.echo(line)
                if c.get("witness"):
                    click.echo(f"       witness: {c['witness']}")
            for k, v in self.extra.items():
                click.echo(f"{k}: {v}")
            status = "pass" if self.ok else "fail"
            elapsed = (time.perf_counter() - started) * 1000.0
            click.echo(f"status: {status}  ({elapsed:.1f} ms)")
        return 0 if self.ok else 1


def load_spec(source: str):
    """Resolve a builtin name or a JSON file path into a parsed spec."""
    if source in BUILTINS:
        return builtin_spec(source)
    if source == "so3-broken":
        return so3_broken()
    path = Path(source)
    if not path.exists():
        raise SpecError(
            f"{source!r} is neither a builtin ({', '.join(BUILTINS)}) nor a file"
        )
    return parse_spec(path.read_text())


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


source_argument = click.argument("source")
json_option = click.option("--json", "as_json", is_flag=True, help="structured output")


@click.group()
def main():
    """Exact checks for homological fields and their bracket structures."""


@main.command()
@source_argument
@json_option
def describe(source, as_json):
    """Print the charts, parities and weights for a spec."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
    except SpecError as exc:
        _fail_input(str(exc))
    charts = all_charts(spec.presentation)
    report = Report("describe", spec.name)
    report.add("charts constructed", True, detail=f"{len(charts)} charts")
    if as_json:
        report.extra = {
            name: [
                {"name": g.name, "parity": g.parity, "weight": list(g.weight)}
                for g in chart.generators
            ]
            for name, chart in charts.items()
        }
    else:
        for chart in charts.values():
            click.echo(describe_chart(chart))
            click.echo("")
    sys.exit(report.emit(as_json, started))


@main.command("check-q")
@source_argument
@json_option
def check_q(source, as_json):
    """Verify that the field is odd and supercommutes with itself."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
    except SpecError as exc:
        _fail_input(str(exc))
    report = Report("check-q", spec.name)
    report.add("q is odd", q.parity == 1)
    w = commutator(q, q)
    report.add(
        "[Q,Q] = 0",
        w.is_zero(),
        witness="" if w.is_zero() else repr(w),
    )
    report.extra = {"strict": is_strict(q)}
    sys.exit(report.emit(as_json, started))


def _run_build(flavor: str, source: str, as_json: bool):
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
    except SpecError as exc:
        _fail_input(str(exc))
    report = Report(f"build-{flavor}", spec.name)
    try:
        h = build_schouten(q) if flavor == "schouten" else build_poisson(q)
    except NotHomological as exc:
        report.add("homological input", False, witness=str(exc))
        sys.exit(report.emit(as_json, started))
    letter = "S" if flavor == "schouten" else "P"
    report.add(f"{letter} constructed", True)
    report.add(
        "self-bracket vanishes", h.is_self_commuting,
        witness="" if h.is_self_commuting else h.self_bracket.render(),
    )
    audit = total_weight_audit(h)
    report.add(
        "every term has total weight one", audit.ok,
        detail=str(audit.histogram),
        witness="; ".join(audit.violations),
    )
    report.extra = {
        letter: h.render(),
        "bi-weight histogram": {str(k): v for k, v in audit.histogram.items()},
    }
    sys.exit(report.emit(as_json, started))


@main.command("build-schouten")
@source_argument
@json_option
def build_schouten_cmd(source, as_json):
    """Construct S, check {S,S} = 0 and audit its weights."""
    _run_build("schouten", source, as_json)


@main.command("build-poisson")
@source_argument
@json_option
def build_poisson_cmd(source, as_json):
    """Construct P, check [[P,P]] = 0 and audit its weights."""
    _run_build("poisson", source, as_json)


@main.command()
@source_argument
@click.option("--flavor", type=click.Choice(["schouten", "poisson"]), required=True)
@click.option("--arity", type=int, required=True)
@json_option
def brackets(source, flavor, arity, as_json):
    """Tabulate the n-ary brackets on fibre coordinate tuples."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
        if arity < 0:
            raise SpecError("arity must be nonnegative")
    except SpecError as exc:
        _fail_input(str(exc))
    report = Report("brackets", spec.name)
    try:
        if flavor == "schouten":
            table = schouten_bracket_table(build_schouten(q), arity)
        else:
            table = poisson_bracket_table(build_poisson(q), arity)
    except NotHomological as exc:
        report.add("homological input", False, witness=str(exc))
        sys.exit(report.emit(as_json, started))
    report.add(f"{flavor} table arity {arity}", True)
    if as_json:
        report.extra = {
            "table": {
                ",".join(table.labels[i] for i in tup): poly.render()
                for tup, poly in sorted(table.entries.items())
            }
        }
    else:
        report.extra = {"table": "\n" + table.render()}
    sys.exit(report.emit(as_json, started))


@main.command("jacobiator")
@source_argument
@click.option("--arity", type=int, required=True)
@json_option
def jacobiator_cmd(source, arity, as_json):
    """Two-way Jacobiator report on fibre-coordinate tuples."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
        if arity < 0:
            raise SpecError("arity must be nonnegative")
    except SpecError as exc:
        _fail_input(str(exc))
    from itertools import combinations_with_replacement

    from .construction import build_poisson_unchecked, build_schouten_unchecked

    report = Report("jacobiator", spec.name)
    homological = is_homological(q)
    report.add("[Q,Q] = 0", homological, detail="informational" if homological else
               "nonzero: Jacobiators need not vanish, two-way equality still must hold")
    engines = [
        ("schouten", schouten_engine(build_schouten_unchecked(q))),
        ("poisson", poisson_engine(build_poisson_unchecked(q))),
    ]
    if q.chart.n_base == 0:
        engines.append(("field", FieldEngine(q)))
    all_zero = True
    for label, eng in engines:
        if label == "field":
            pool = list(range(len(q.chart.generators)))
            args_of = lambda tup, e=eng: [e.basis_field(i) for i in tup]
            render = repr
        else:
            parent = eng.parent
            names = parent.fibre_names()
            pool = list(range(len(names)))
            args_of = lambda tup, p=parent, ns=names: [p.gen(ns[i]) for i in tup]
            render = lambda v: v.render()
        try:
            worst = None
            for tup in combinations_with_replacement(pool, arity):
                value, _ = jacobiator(eng, args_of(tup))
                if not value.is_zero():
                    all_zero = False
                    worst = (tup, render(value))
            report.add(
                f"{label}: unshuffle sum equals squared-generator route", True,
                detail=f"arity {arity}",
                witness="" if worst is None else f"nonzero at {worst[0]}: {worst[1]}",
            )
        except JacobiatorMismatch as exc:
            report.add(f"{label}: two-way agreement", False, witness=str(exc))
    if homological:
        report.add("all Jacobiators vanish", all_zero)
    report.extra = {"all-zero": all_zero}
    sys.exit(report.emit(as_json, started))


@main.command()
@source_argument
@click.option("--arity", type=int, default=2, show_default=True)
@click.option("--trials", type=int, default=25, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@json_option
def leibniz(source, arity, trials, seed, as_json):
    """Multiderivation identity on random homogeneous inputs."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
        if arity < 1 or trials < 1:
            raise SpecError("arity and trials must be positive")
    except SpecError as exc:
        _fail_input(str(exc))
    report = Report("leibniz", spec.name)
    try:
        s = build_schouten(q)
        p = build_poisson(q)
    except NotHomological as exc:
        report.add("homological input", False, witness=str(exc))
        sys.exit(report.emit(as_json, started))
    rng = Random(seed)
    rep = leibniz_check(
        lambda args: higher_schouten_bracket(s, args),
        schouten_engine(s).parent, "schouten", arity, trials, rng,
    )
    report.add(
        f"schouten multiderivation rule, arity {arity}", rep.ok,
        detail=f"{trials} trials",
        witness="; ".join(rep.failures[:1]),
    )
    rep = leibniz_check(
        lambda args: higher_poisson_bracket(p, args),
        poisson_engine(p).parent, "poisson", arity, trials, rng,
    )
    report.add(
        f"poisson multiderivation rule, arity {arity}", rep.ok,
        detail=f"{trials} trials",
        witness="; ".join(rep.failures[:1]),
    )
    sys.exit(report.emit(as_json, started))


@main.command()
@source_argument
@click.option("--matrix", "matrix_path", type=click.Path(exists=True), required=True,
              help="JSON file: square matrix of rationals, rows = old fibre index")
@click.option("--seed", type=int, default=0, show_default=True)
@json_option
def naturality(source, matrix_path, seed, as_json):
    """Rebuild after a constant fibre change and compare with the lift."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
        raw = json.loads(Path(matrix_path).read_text())
        matrix = [[Fraction(str(v)) for v in row] for row in raw]
    except (SpecError, json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
        _fail_input(str(exc))
    report = Report("naturality", spec.name)
    try:
        result = chart_change_naturality(q, matrix, rng=Random(seed))
    except (GradedAlgebraError, NotHomological) as exc:
        _fail_input(str(exc))
    for name, ok, detail in result.checks:
        report.add(name, ok, detail=detail)
    sys.exit(report.emit(as_json, started))


@main.command("statement-check")
@source_argument
@click.option("--max-arity", type=int, default=4, show_default=True)
@json_option
def statement_check(source, max_arity, as_json):
    """Restriction of the derived brackets to weight-one functions."""
    started = time.perf_counter()
    try:
        spec = load_spec(source)
        q = assemble_field(spec)
        if q.chart.n_base != 0:
            raise SpecError("statement-check needs a point base (no base symbols)")
    except SpecError as exc:
        _fail_input(str(exc))
    report = Report("statement-check", spec.name)
    try:
        s = build_schouten(q)
        p = build_poisson(q)
    except NotHomological as exc:
        report.add("homological input", False, witness=str(exc))
        sys.exit(report.emit(as_json, started))
    result = weight_one_restriction_check(q, s, p, max_arity)
    for r, ok in result.per_arity.items():
        report.add(f"arity {r} restriction matches the input brackets", ok)
    if result.details:
        report.extra = {"details": result.details}
    sys.exit(report.emit(as_json, started))


@main.command()
@click.argument("name")
def example(name):
    """Emit a builtin spec document."""
    try:
        spec = builtin_spec(name) if name != "so3-broken" else so3_broken()
    except KeyError as exc:
        _fail_input(str(exc.args[0]))
    click.echo(render_spec(spec))
    sys.exit(0)


if __name__ == "__main__":
    main()
