"""Graded vector fields, the supercommutator, canonical brackets and symbols.

The two canonical brackets are fixed by their Darboux normalisation together
with the requirement that the principal symbols intertwine the commutator of
vector fields with them.  Writing (z, z') for a conjugate pair with a = parity
of z and all derivatives acting from the left:

even bracket on T*(.):    {z', z} = +1 and

    {f, g} = sum_pairs (-1)^(a(f+1)) d_{z'}f d_z g - (-1)^(a f) d_z f d_{z'} g

odd bracket on PiT*(.):   [[z*, z]] = +1 and

    [[f, g]] = sum_pairs (-1)^((a+1)(f+1)) d_{z*}f d_z g
               - (-1)^(a(f+1)) d_z f d_{z*} g

Both are extended bilinearly from parity-homogeneous f (the sign only reads
the parity of the first argument).  The property tests pin skew-symmetry,
Leibniz, Jacobi and the symbol identities sigma[X,Y] = {sigma X, sigma Y} and
varsigma[X,Y] = [[varsigma X, varsigma Y]] for these exact formulas.
"""

from __future__ import annotations

from fractions import Fraction

from .charts import (
    BASE_FIBRE,
    EVEN_COTANGENT,
    ODD_COTANGENT,
    Chart,
    chart_even_cotangent,
    chart_odd_cotangent,
    lift_to_phase,
)
from .gradedpoly import (
    EVEN,
    ODD,
    ChartMismatch,
    GradedAlgebraError,
    GradedPoly,
    ParityMismatch,
)


class NotHomological(GradedAlgebraError):
    """Raised when a construction requires [Q, Q] = 0 and it fails.

    Carries the offending field and the nonzero commutator as a witness.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class VectorField:
    """A derivation on a chart, one polynomial component per generator.

    Components are keyed by generator name; missing keys mean zero.  Fields
    must be parity-homogeneous: each nonzero component's parity equals the
    field parity plus the generator parity.  An all-zero field defaults to
    odd so that it counts as homological.
    """

    __slots__ = ("chart", "components", "parity")

    def __init__(self, chart: Chart, components: dict[str, GradedPoly], parity: int | None = None):
        self.chart = chart
        comps: dict[str, GradedPoly] = {}
        inferred = None
        for name, poly in components.items():
            idx = chart.index_of(name)
            if poly.chart != chart:
                raise ChartMismatch(f"component for {name} lives on another chart")
            if poly.is_zero():
                continue
            p = poly.parity()
            if p is None:
                raise ParityMismatch(f"component for {name} has mixed parity")
            fp = (p + chart.generators[idx].parity) & 1
            if inferred is None:
                inferred = fp
            elif inferred != fp:
                raise ParityMismatch("components disagree on the field parity")
            comps[name] = poly
        if parity is None:
            parity = inferred if inferred is not None else ODD
        elif inferred is not None and parity != inferred:
            raise ParityMismatch("declared parity contradicts the components")
        self.components = comps
        self.parity = parity

    def component(self, name: str) -> GradedPoly:
        return self.components.get(name, self.chart.zero())

    def is_zero(self) -> bool:
        return not self.components

    def __call__(self, f: GradedPoly) -> GradedPoly:
        """Derivation action: sum of component * left derivative."""
        if f.chart != self.chart:
            raise ChartMismatch("field and function live on different charts")
        out = self.chart.zero()
        for name, comp in self.components.items():
            out = out + comp * f.left_derivative(name)
        return out

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.chart != other.chart:
            raise ChartMismatch("cannot add fields on different charts")
        if not self.is_zero() and not other.is_zero() and self.parity != other.parity:
            raise ParityMismatch("cannot add fields of different parity")
        comps = {n: c for n, c in self.components.items()}
        for n, c in other.components.items():
            acc = comps.get(n, self.chart.zero()) + c
            if acc.is_zero():
                comps.pop(n, None)
            else:
                comps[n] = acc
        parity = self.parity if not self.is_zero() else other.parity
        return VectorField(self.chart, comps, parity if comps else self.parity)

    def scaled(self, value) -> "VectorField":
        c = Fraction(value)
        return VectorField(
            self.chart,
            {n: comp.scaled(c) for n, comp in self.components.items()},
            self.parity,
        )

    def __eq__(self, other):
        return (
            isinstance(other, VectorField)
            and self.chart == other.chart
            and self.components == other.components
        )

    def __repr__(self):
        if not self.components:
            return f"<VectorField 0 on {self.chart.space}>"
        parts = [f"({c.render()}) d/d{n}" for n, c in sorted(self.components.items())]
        return f"<VectorField {' + '.join(parts)}>"


def commutator(x: VectorField, y: VectorField) -> VectorField:
    """Graded commutator [X, Y] = X Y - (-1)^(XY) Y X, in components."""
    if x.chart != y.chart:
        raise ChartMismatch("fields live on different charts")
    sign = -1 if (x.parity & y.parity) else 1
    comps: dict[str, GradedPoly] = {}
    for gen in x.chart.generators:
        z = gen.name
        acc = x(y.component(z)) + y(x.component(z)).scaled(-sign)
        if not acc.is_zero():
            comps[z] = acc
    return VectorField(x.chart, comps, (x.parity + y.parity) & 1)


def is_homological(q: VectorField) -> bool:
    """True iff the field is odd and supercommutes with itself exactly."""
    return q.parity == ODD and commutator(q, q).is_zero()


def require_homological(q: VectorField):
    if q.parity != ODD:
        raise NotHomological("the field is not odd", witness=q)
    w = commutator(q, q)
    if not w.is_zero():
        raise NotHomological(f"[Q, Q] != 0, witness: {w!r}", witness=w)


# ---------------------------------------------------------------------------
# canonical brackets
# ---------------------------------------------------------------------------

def _require_kind(phase: Chart, kind: str):
    if phase.kind != kind:
        raise ChartMismatch(
            f"expected a {kind} chart, got {phase.kind} ({phase.space})"
        )


def canonical_poisson(f: GradedPoly, g: GradedPoly, phase: Chart | None = None) -> GradedPoly:
    """Even canonical bracket on an even cotangent chart ({p, x} = +1)."""
    phase = phase or f.chart
    _require_kind(phase, EVEN_COTANGENT)
    if f.chart != phase or g.chart != phase:
        raise ChartMismatch("arguments must live on the phase chart")
    out = phase.zero()
    gens = phase.generators
    for zi, ci in phase.conjugate_pairs():
        a = gens[zi].parity
        zn = gens[zi].name
        cn = gens[ci].name
        dg_z = g.left_derivative(zn)
        dg_c = g.left_derivative(cn)
        for p, fp in f.parity_parts().items():
            s1 = -1 if (a * ((p + 1) & 1)) & 1 else 1
            s2 = -1 if (a * p) & 1 else 1
            if not dg_z.is_zero():
                out = out + (fp.left_derivative(cn) * dg_z).scaled(s1)
            if not dg_c.is_zero():
                out = out - (fp.left_derivative(zn) * dg_c).scaled(s2)
    return out


def canonical_schouten(f: GradedPoly, g: GradedPoly, phase: Chart | None = None) -> GradedPoly:
    """Odd canonical bracket on an odd cotangent chart ([[x*, x]] = +1)."""
    phase = phase or f.chart
    _require_kind(phase, ODD_COTANGENT)
    if f.chart != phase or g.chart != phase:
        raise ChartMismatch("arguments must live on the phase chart")
    out = phase.zero()
    gens = phase.generators
    for zi, ci in phase.conjugate_pairs():
        a = gens[zi].parity
        zn = gens[zi].name
        cn = gens[ci].name
        dg_z = g.left_derivative(zn)
        dg_c = g.left_derivative(cn)
        for p, fp in f.parity_parts().items():
            e1 = ((a + 1) * ((p + 1) & 1)) & 1
            e2 = (a * ((p + 1) & 1)) & 1
            if not dg_z.is_zero():
                out = out + (fp.left_derivative(cn) * dg_z).scaled(-1 if e1 else 1)
            if not dg_c.is_zero():
                out = out - (fp.left_derivative(zn) * dg_c).scaled(-1 if e2 else 1)
    return out


# ---------------------------------------------------------------------------
# principal symbols
# ---------------------------------------------------------------------------

def even_symbol(x: VectorField, phase: Chart | None = None) -> GradedPoly:
    """sigma X = sum X^z z' as a momentum-linear function on T*(chart)."""
    if x.chart.kind != BASE_FIBRE:
        raise ChartMismatch("symbols are taken on base-fibre charts")
    phase = phase or chart_even_cotangent(x.chart)
    return _symbol(x, phase, EVEN_COTANGENT)


def odd_symbol(x: VectorField, phase: Chart | None = None) -> GradedPoly:
    """varsigma X = sum X^z z* on PiT*(chart)."""
    if x.chart.kind != BASE_FIBRE:
        raise ChartMismatch("symbols are taken on base-fibre charts")
    phase = phase or chart_odd_cotangent(x.chart)
    return _symbol(x, phase, ODD_COTANGENT)


def _symbol(x: VectorField, phase: Chart, kind: str) -> GradedPoly:
    _require_kind(phase, kind)
    if phase.parent_chart() != x.chart:
        raise ChartMismatch("phase chart was not built from the field's chart")
    out = phase.zero()
    for zi, ci in phase.conjugate_pairs():
        comp = x.component(phase.generators[zi].name)
        if comp.is_zero():
            continue
        out = out + lift_to_phase(comp, phase) * phase.gen(phase.generators[ci].name)
    return out
