"""Input documents describing a homological field by structure constants.

A document is JSON with the shape

    {
      "name": "so3",
      "base":  [{"name": "b1", "parity": "even"}, ...],
      "fibre": [{"name": "s1", "parity": "even"}, ...],
      "q_terms": [
        {"target": "s3", "coefficient": "1",
         "monomial": ["s1", "s2"], "base_monomial": [["b1", 2]]}
      ]
    }

``monomial`` lists fibre symbols in normal order (the fibre order of the
document, odd symbols at most once); ``base_monomial`` lists base symbols
with positive exponents, also in order.  Coefficients are exact rationals
written as strings.  Raw coefficients multiply the normal-ordered monomial
directly; no factorial prefactor is applied or expected, so the symmetrised
constants of any given presentation are recovered by differentiation rather
than bookkeeping.

Each term must be Grassmann-odd as a vector-field summand (monomial parity
equal to target parity plus one); this makes the assembled field odd by
construction, and parsing rejects anything else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .charts import BundlePresentation, chart_pi_e
from .fields import VectorField
from .gradedpoly import EVEN, ODD, GradedPoly


class SpecError(Exception):
    """Malformed or inconsistent input document."""


_PARITY = {"even": EVEN, "odd": ODD}
_PARITY_NAME = {EVEN: "even", ODD: "odd"}


@dataclass(frozen=True)
class QTerm:
    target: str
    coefficient: Fraction
    monomial: tuple[str, ...]
    base_monomial: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class AlgebroidSpec:
    name: str
    base: tuple[tuple[str, int], ...]
    fibre: tuple[tuple[str, int], ...]
    q_terms: tuple[QTerm, ...]

    @property
    def presentation(self) -> BundlePresentation:
        return BundlePresentation(
            tuple(p for _, p in self.base),
            tuple(p for _, p in self.fibre),
        )


def _parse_entry(entry, where: str) -> tuple[str, int]:
    if not isinstance(entry, dict) or "name" not in entry or "parity" not in entry:
        raise SpecError(f"{where}: expected an object with name and parity")
    name = entry["name"]
    parity = entry["parity"]
    if not isinstance(name, str) or not name:
        raise SpecError(f"{where}: bad generator name {name!r}")
    if parity not in _PARITY:
        raise SpecError(f"{where}: parity must be 'even' or 'odd', got {parity!r}")
    return name, _PARITY[parity]


def _parse_coefficient(raw, where: str) -> Fraction:
    try:
        c = Fraction(str(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: bad rational coefficient {raw!r}: {exc}") from None
    if c == 0:
        raise SpecError(f"{where}: zero coefficients are not stored")
    return c


def parse_spec(document) -> AlgebroidSpec:
    """Validate a document (dict or JSON text) into an AlgebroidSpec."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise SpecError("the document must be a JSON object")
    name = document.get("name")
    if not isinstance(name, str) or not name:
        raise SpecError("missing document name")

    base = tuple(
        _parse_entry(e, f"base[{i}]") for i, e in enumerate(document.get("base", []))
    )
    fibre = tuple(
        _parse_entry(e, f"fibre[{i}]") for i, e in enumerate(document.get("fibre", []))
    )
    if not fibre:
        raise SpecError("the fibre list is empty: no bundle to present")
    seen = set()
    for n, _ in base + fibre:
        if n in seen:
            raise SpecError(f"duplicate generator name {n!r}")
        seen.add(n)
    base_parity = dict(base)
    fibre_parity = dict(fibre)
    base_order = {n: i for i, (n, _) in enumerate(base)}
    fibre_order = {n: i for i, (n, _) in enumerate(fibre)}

    terms = []
    for i, t in enumerate(document.get("q_terms", [])):
        where = f"q_terms[{i}]"
        if not isinstance(t, dict):
            raise SpecError(f"{where}: expected an object")
        target = t.get("target")
        if target not in base_parity and target not in fibre_parity:
            raise SpecError(f"{where}: unknown target {target!r}")
        coeff = _parse_coefficient(t.get("coefficient", "0"), where)
        mono = tuple(t.get("monomial", []))
        parity_sum = 0
        last = -1
        for m in mono:
            if m not in fibre_order:
                raise SpecError(f"{where}: unknown fibre symbol {m!r} in monomial")
            pos = fibre_order[m]
            xi_parity = (fibre_parity[m] + 1) & 1
            if pos < last or (pos == last and xi_parity == ODD):
                raise SpecError(
                    f"{where}: monomial is not normal-ordered "
                    f"(fibre symbols in document order, odd ones at most once)"
                )
            last = pos
            parity_sum ^= xi_parity
        bmono = []
        blast = -1
        for pair in t.get("base_monomial", []):
            if (not isinstance(pair, (list, tuple))) or len(pair) != 2:
                raise SpecError(f"{where}: base_monomial entries are [name, exponent]")
            bname, exp = pair
            if bname not in base_order:
                raise SpecError(f"{where}: unknown base symbol {bname!r}")
            if not isinstance(exp, int) or exp < 1:
                raise SpecError(f"{where}: base exponent must be a positive integer")
            if base_parity[bname] == ODD and exp > 1:
                raise SpecError(f"{where}: odd base symbol squared")
            pos = base_order[bname]
            if pos <= blast:
                raise SpecError(f"{where}: base_monomial not in document order")
            blast = pos
            parity_sum ^= (base_parity[bname] * exp) & 1
            bmono.append((bname, exp))
        target_parity = (
            base_parity[target]
            if target in base_parity
            else (fibre_parity[target] + 1) & 1
        )
        if parity_sum != (target_parity + 1) & 1:
            raise SpecError(
                f"{where}: term parity {_PARITY_NAME[parity_sum]} does not make "
                f"the field odd on target {target!r}"
            )
        terms.append(QTerm(target, coeff, mono, tuple(bmono)))
    return AlgebroidSpec(name, base, fibre, tuple(terms))


def render_spec(spec: AlgebroidSpec) -> str:
    """Serialise back to the document format (stable key order)."""
    doc = {
        "name": spec.name,
        "base": [
            {"name": n, "parity": _PARITY_NAME[p]} for n, p in spec.base
        ],
        "fibre": [
            {"name": n, "parity": _PARITY_NAME[p]} for n, p in spec.fibre
        ],
        "q_terms": [
            {
                "target": t.target,
                "coefficient": str(t.coefficient),
                "monomial": list(t.monomial),
                "base_monomial": [[n, e] for n, e in t.base_monomial],
            }
            for t in spec.q_terms
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=False)


def assemble_field(spec: AlgebroidSpec) -> VectorField:
    """Build the odd vector field of a document on its PiE chart."""
    chart = chart_pi_e(spec.presentation)
    base_name = {n: f"x{i + 1}" for i, (n, _) in enumerate(spec.base)}
    fibre_name = {n: f"xi{i + 1}" for i, (n, _) in enumerate(spec.fibre)}
    comps: dict[str, GradedPoly] = {}
    for t in spec.q_terms:
        target = base_name.get(t.target) or fibre_name[t.target]
        expo: dict[str, int] = {}
        for m in t.monomial:
            g = fibre_name[m]
            expo[g] = expo.get(g, 0) + 1
        for bname, exp in t.base_monomial:
            expo[base_name[bname]] = exp
        poly = chart.monomial(expo, t.coefficient)
        comps[target] = comps.get(target, chart.zero()) + poly
    comps = {k: v for k, v in comps.items() if not v.is_zero()}
    return VectorField(chart, comps, ODD)


def spec_from_field(name: str, base: tuple[tuple[str, int], ...],
                    fibre: tuple[tuple[str, int], ...], q: VectorField) -> AlgebroidSpec:
    """Read a field on a PiE chart back into a document."""
    chart = q.chart
    base_names = [n for n, _ in base]
    fibre_names = [n for n, _ in fibre]
    terms: list[QTerm] = []
    for gi, g in enumerate(chart.generators):
        comp = q.components.get(g.name)
        if comp is None:
            continue
        target = (
            base_names[gi] if gi < chart.n_base else fibre_names[gi - chart.n_base]
        )
        for mono in sorted(comp.terms):
            coeff = comp.terms[mono]
            ximono: list[str] = []
            bmono: list[tuple[str, int]] = []
            for idx, exp in mono:
                if idx < chart.n_base:
                    bmono.append((base_names[idx], exp))
                else:
                    ximono.extend([fibre_names[idx - chart.n_base]] * exp)
            terms.append(QTerm(target, coeff, tuple(ximono), tuple(bmono)))
    return AlgebroidSpec(name, base, fibre, tuple(terms))
