"""Higher derived brackets, Jacobiators, Leibniz checks and bracket tables.

A derived-bracket engine packages (ambient Lie bracket, generator, projector
onto an abelian subalgebra).  Three instances are used:

* flavor "schouten": functions on T*(PiE*) under the even canonical bracket,
  generator S, projector = restriction to the zero section.  Brackets are
  the odd symmetric ones on functions of (x, eta).
* flavor "poisson": functions on PiT*(E*) under the odd canonical bracket,
  generator P, projector likewise.  Since the ambient bracket is odd, Koszul
  signs are computed with parities shifted by one (P itself counts as odd),
  which is how the odd-bracket algebra becomes a Lie superalgebra.
* flavor "field": vector fields on a point-base anti-bundle chart under the
  supercommutator, generator Q, projector = evaluation of components at the
  origin, abelian subalgebra = constant fields.

For every engine, the n-th Jacobiator computed as an unshuffle sum over the
derived brackets (inner bracket fed as the first outer argument, plain
Koszul exchange signs in the engine's parities) equals the n-th derived
bracket of half the self-bracket of the generator.  The equality is asserted
each time; it holds whether or not the generator squares to zero, which is
exactly what makes non-homological negative controls meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from .charts import (
    BASE_FIBRE,
    Chart,
    lift_to_phase,
    restrict_to_zero_section,
)
from .construction import HigherStructure
from .fields import (
    VectorField,
    canonical_poisson,
    canonical_schouten,
    commutator,
)
from .gradedpoly import (
    ChartMismatch,
    GradedAlgebraError,
    GradedPoly,
    ParityMismatch,
)


class JacobiatorMismatch(GradedAlgebraError):
    """The unshuffle sum and the squared-generator route disagree."""


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

class DerivedBracketEngine:
    """Nested-bracket evaluation (a1, ..., an) = project [...[D, a1], ..., an]."""

    flavor = "abstract"
    koszul_shift = 0

    def bracket(self, f, g):
        raise NotImplementedError

    def project(self, f):
        raise NotImplementedError

    def prepare(self, arg):
        """Lift an argument of the abelian subalgebra into the ambient algebra."""
        return arg

    def finish(self, value):
        """Map a projected ambient value back to the abelian subalgebra."""
        return value

    def parity_of(self, arg) -> int:
        raise NotImplementedError

    def koszul_parity(self, arg) -> int:
        return (self.parity_of(arg) + self.koszul_shift) & 1

    def generator(self):
        raise NotImplementedError

    def squared_generator(self):
        """Half the self-bracket of the generator."""
        raise NotImplementedError

    def derived(self, args, generator=None):
        gen = self.generator() if generator is None else generator
        cur = gen
        for a in args:
            cur = self.bracket(cur, self.prepare(a))
        return self.finish(self.project(cur))

    def zero_bracket(self):
        return self.derived([])


class PhaseEngine(DerivedBracketEngine):
    """Engine over a phase-space function algebra."""

    def __init__(self, structure: HigherStructure):
        self.structure = structure
        self.chart = structure.chart
        self.parent = self.chart.parent_chart()
        if structure.flavor == "schouten":
            self.flavor = "schouten"
            self.koszul_shift = 0
            self._bracket = canonical_poisson
        elif structure.flavor == "poisson":
            self.flavor = "poisson"
            self.koszul_shift = 1
            self._bracket = canonical_schouten
        else:
            raise GradedAlgebraError(f"unknown flavor {structure.flavor!r}")

    def bracket(self, f, g):
        return self._bracket(f, g, self.chart)

    def project(self, f):
        return lift_to_phase(restrict_to_zero_section(f), self.chart)

    def prepare(self, arg: GradedPoly):
        if arg.chart == self.parent:
            return lift_to_phase(arg, self.chart)
        if arg.chart == self.chart:
            if arg.contains_any(self.chart.conjugate_names()):
                raise ChartMismatch("argument is not a zero-section function")
            return arg
        raise ChartMismatch("argument lives on the wrong chart")

    def finish(self, value: GradedPoly):
        return restrict_to_zero_section(value)

    def parity_of(self, arg: GradedPoly) -> int:
        p = arg.parity()
        if p is None:
            raise ParityMismatch("arguments must be parity-homogeneous")
        return p

    def generator(self):
        return self.structure.value

    def squared_generator(self):
        return self.bracket(self.structure.value, self.structure.value).scaled(
            Fraction(1, 2)
        )


class FieldEngine(DerivedBracketEngine):
    """Engine over vector fields on a point-base chart.

    Arguments and values are constant fields; the projector evaluates every
    component at the origin.
    """

    flavor = "field"
    koszul_shift = 0

    def __init__(self, q: VectorField):
        if q.chart.kind != BASE_FIBRE or q.chart.n_base != 0:
            raise ChartMismatch(
                "the field engine expects a point-base (pure fibre) chart"
            )
        self.q = q
        self.chart = q.chart

    def bracket(self, f, g):
        return commutator(f, g)

    def project(self, x: VectorField) -> VectorField:
        names = [g.name for g in self.chart.generators]
        comps = {}
        for n, comp in x.components.items():
            c = comp.drop_generators(names).constant_term()
            if c != 0:
                comps[n] = self.chart.const(c)
        return VectorField(self.chart, comps, x.parity)

    def parity_of(self, arg: VectorField) -> int:
        return arg.parity

    def basis_field(self, i: int) -> VectorField:
        """The constant field d/dxi^(i+1), the image of the i-th basis vector."""
        name = self.chart.generators[i].name
        gen_parity = self.chart.generators[i].parity
        return VectorField(self.chart, {name: self.chart.one()}, gen_parity)

    def generator(self):
        return self.q

    def squared_generator(self):
        return commutator(self.q, self.q).scaled(Fraction(1, 2))

    def coefficients(self, x: VectorField) -> list[Fraction]:
        """Constant-field coefficients in the basis-field order."""
        out = []
        for g in self.chart.generators:
            out.append(x.component(g.name).constant_term())
        return out


def schouten_engine(s: HigherStructure) -> PhaseEngine:
    if s.flavor != "schouten":
        raise GradedAlgebraError("expected a schouten-flavor structure")
    return PhaseEngine(s)


def poisson_engine(p: HigherStructure) -> PhaseEngine:
    if p.flavor != "poisson":
        raise GradedAlgebraError("expected a poisson-flavor structure")
    return PhaseEngine(p)


# ---------------------------------------------------------------------------
# the user-facing bracket families
# ---------------------------------------------------------------------------

def higher_schouten_bracket(s: HigherStructure, args: list[GradedPoly]) -> GradedPoly:
    """(X1, ..., Xr)_S: nested even brackets with S, then zero-section."""
    return schouten_engine(s).derived(args)


def poisson_sign_exponent(parities: list[int]) -> int:
    """Skew-symmetrising exponent F1(r-1) + F2(r-2) + ... + F_{r-1} + r."""
    r = len(parities)
    e = r
    for i, p in enumerate(parities[:-1], start=1):
        e += p * (r - i)
    return e & 1


def higher_poisson_bracket(p: HigherStructure, args: list[GradedPoly]) -> GradedPoly:
    """{F1, ..., Fr}_P: nested odd brackets with P, sign-corrected, restricted."""
    eng = poisson_engine(p)
    raw = eng.derived(args)
    e = poisson_sign_exponent([eng.parity_of(a) for a in args])
    return raw.scaled(-1) if e else raw


# ---------------------------------------------------------------------------
# Jacobiators via unshuffles
# ---------------------------------------------------------------------------

def koszul_sign(order: list[int], parities: list[int]) -> int:
    """Sign (+-1) for permuting homogeneous elements into ``order``.

    ``order`` lists original positions; each inverted pair contributes
    (-1)^(p_i p_j).
    """
    e = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                e += parities[order[a]] * parities[order[b]]
    return -1 if e & 1 else 1


def jacobiator(engine: DerivedBracketEngine, args: list) -> tuple:
    """The n-th Jacobiator, computed two independent ways.

    Returns (value, via_squared_generator).  Raises JacobiatorMismatch when
    the unshuffle sum disagrees with the derived bracket of the squared
    generator, which would signal a sign-convention bug.
    """
    n = len(args)
    parities = [engine.koszul_parity(a) for a in args]
    total = None
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            rest = [i for i in range(n) if i not in subset]
            sign = koszul_sign(list(subset) + rest, parities)
            inner = engine.derived([args[i] for i in subset])
            term = engine.derived([inner] + [args[i] for i in rest])
            term = term.scaled(sign)
            total = term if total is None else total + term
    via_square = engine.derived(args, generator=engine.squared_generator())
    if total != via_square:
        raise JacobiatorMismatch(
            f"unshuffle sum disagrees with the squared-generator route "
            f"for arity {n}"
        )
    return total, via_square


# ---------------------------------------------------------------------------
# Leibniz (multiderivation) checks
# ---------------------------------------------------------------------------

@dataclass
class LeibnizReport:
    flavor: str
    arity: int
    trials: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def leibniz_exponent(flavor: str, parities: list[int]) -> int:
    """Exponent in the multiderivation rule for the last slot.

    parities = [a1, ..., a_{r-1}, a_r]; the rule reads
    (a1, ..., a_r a_{r+1}) = (a1, ..., a_r) a_{r+1}
        + (-1)^(a_r (a1 + ... + a_{r-1} + s)) a_r (a1, ..., a_{r+1})
    with s = 1 for the odd (schouten) family and s = r for the poisson one.
    """
    *front, last = parities
    s = 1 if flavor == "schouten" else len(parities)
    return (last * (sum(front) + s)) & 1


def leibniz_check(bracket, chart: Chart, flavor: str, arity: int,
                  trials: int, rng) -> LeibnizReport:
    """Test the multiderivation identity on random homogeneous inputs.

    ``bracket`` maps a list of polynomials on ``chart`` to a polynomial.
    Reports the first witness per failed trial.
    """
    from .randgen import random_poly

    failures: list[str] = []
    for t in range(trials):
        front = [
            random_poly(rng, chart, max_degree=2, n_terms=2, parity=rng.randint(0, 1))
            for _ in range(arity - 1)
        ]
        ar = random_poly(rng, chart, max_degree=2, n_terms=2, parity=rng.randint(0, 1))
        ar1 = random_poly(rng, chart, max_degree=2, n_terms=2, parity=rng.randint(0, 1))
        parities = [f.parity() for f in front] + [ar.parity()]
        lhs = bracket(front + [ar * ar1])
        e = leibniz_exponent(flavor, parities)
        second = (ar * bracket(front + [ar1])).scaled(-1 if e else 1)
        rhs = bracket(front + [ar]) * ar1 + second
        if lhs != rhs:
            failures.append(
                f"trial {t}: args {[f.render() for f in front]}, "
                f"a_r = {ar.render()}, a_r+1 = {ar1.render()}, "
                f"difference = {(lhs - rhs).render()}"
            )
    return LeibnizReport(flavor, arity, trials, failures)


# ---------------------------------------------------------------------------
# structure constants, closed formulas, tables
# ---------------------------------------------------------------------------

def fibre_indices(chart: Chart) -> list[int]:
    return list(range(chart.n_base, len(chart.generators)))


def structure_constant(q: VectorField, target: str, tup: tuple[int, ...]) -> GradedPoly:
    """The graded-symmetric coefficient of the field for one index tuple.

    Computed by iterated left derivatives in tuple order applied to the
    target component, then evaluation at zero fibre coordinates.  On a chart
    with base coordinates the result is a base function.
    """
    comp = q.component(target)
    names = [q.chart.generators[i].name for i in tup]
    for name in reversed(names):
        comp = comp.left_derivative(name)
    return comp.drop_generators(q.chart.fibre_names())


def fibre_parity_of_index(chart: Chart, i: int) -> int:
    """The underlying fibre parity a for a PiE-chart generator xi (parity a+1)."""
    return (chart.generators[i].parity + 1) & 1


def fundamental_schouten_value(q: VectorField, dual_chart: Chart,
                               tup: tuple[int, ...]) -> GradedPoly:
    """(eta_a1, ..., eta_ar)_S from the structure constants directly.

    Equals (-1)^(sum of fibre parities) * sum_b Q^b_(a1...ar) eta_b, with the
    base-target part dropped (it does not survive the zero-section
    restriction at this weight).
    """
    chart = q.chart
    sign_e = sum(fibre_parity_of_index(chart, i) for i in tup) & 1
    out = dual_chart.zero()
    for j, i in enumerate(fibre_indices(chart)):
        c = structure_constant(q, chart.generators[i].name, tup)
        if c.is_zero():
            continue
        coeff = _base_function_on(c, dual_chart)
        out = out + coeff * dual_chart.gen(f"eta{j + 1}")
    return out.scaled(-1 if sign_e else 1)


def fundamental_poisson_value(q: VectorField, dual_chart: Chart,
                              tup: tuple[int, ...]) -> GradedPoly:
    """{e_a1, ..., e_ar}_P from the structure constants directly.

    Equals (-1)^(sum_i a_i (r - i + 1) + 1) * sum_b Q^b_(a1...ar) e_b.
    """
    chart = q.chart
    r = len(tup)
    e = 1
    for pos, i in enumerate(tup, start=1):
        e += fibre_parity_of_index(chart, i) * (r - pos + 1)
    out = dual_chart.zero()
    for j, i in enumerate(fibre_indices(chart)):
        c = structure_constant(q, chart.generators[i].name, tup)
        if c.is_zero():
            continue
        coeff = _base_function_on(c, dual_chart)
        out = out + coeff * dual_chart.gen(f"e{j + 1}")
    return out.scaled(-1 if e & 1 else 1)


def _base_function_on(f: GradedPoly, target: Chart) -> GradedPoly:
    """Transport a base-coordinate function onto another chart over the same base."""
    images = {name: target.gen(name) for name in f.chart.base_names()}
    return f.substitute(images, target)


def lie_schouten_closed_form(q: VectorField, dual_chart: Chart,
                             args: list[GradedPoly]) -> GradedPoly:
    """Closed evaluation of (X1, ..., Xr)_S over a point base.

    Sums over index tuples (a1..ar):
        (-1)^eps Q^b_(ar...a1) eta_b  d X1/d eta_a1 ... d Xr/d eta_ar
    with eps = sum_j Xj (a_{j+1} + ... + a_r + r + j)  +  sum_i a_i,
    parities of X read per homogeneous argument.
    """
    if q.chart.n_base != 0:
        raise ChartMismatch("the closed formulas apply over a point base")
    r = len(args)
    fidx = fibre_indices(q.chart)
    arg_par = []
    for a in args:
        p = a.parity()
        if p is None:
            raise ParityMismatch("closed-form arguments must be homogeneous")
        arg_par.append(p)
    out = dual_chart.zero()
    for tup in product(fidx, repeat=r):
        fp = [fibre_parity_of_index(q.chart, i) for i in tup]
        eps = sum(fp) & 1
        for j in range(r - 1):
            eps ^= (arg_par[j] * (sum(fp[j + 1:]) + r + j + 1)) & 1
        factor = dual_chart.one()
        dead = False
        for pos, i in enumerate(tup):
            eta = f"eta{fidx.index(i) + 1}"
            d = args[pos].left_derivative(eta)
            if d.is_zero():
                dead = True
                break
            factor = factor * d
            if factor.is_zero():
                dead = True
                break
        if dead:
            continue
        core = dual_chart.zero()
        for j, i in enumerate(fidx):
            c = structure_constant(q, q.chart.generators[i].name, tuple(reversed(tup)))
            if not c.is_zero():
                core = core + dual_chart.gen(f"eta{j + 1}").scaled(c.constant_term())
        if core.is_zero():
            continue
        out = out + (core * factor).scaled(-1 if eps else 1)
    return out


def lie_poisson_closed_form(q: VectorField, dual_chart: Chart,
                            args: list[GradedPoly]) -> GradedPoly:
    """Closed evaluation of {F1, ..., Fr}_P over a point base.

    Sums over index tuples:
        (-1)^eps Q^b_(ar...a1) e_b  d F1/d e_a1 ... d Fr/d e_ar
    with eps = 1 + r + r(r+1)/2 + sum_j Fj (a_{j+1} + ... + a_r)
               + sum_i i a_i   (1-based positions).
    """
    if q.chart.n_base != 0:
        raise ChartMismatch("the closed formulas apply over a point base")
    r = len(args)
    fidx = fibre_indices(q.chart)
    arg_par = []
    for a in args:
        p = a.parity()
        if p is None:
            raise ParityMismatch("closed-form arguments must be homogeneous")
        arg_par.append(p)
    base_eps = (1 + r + r * (r + 1) // 2) & 1
    out = dual_chart.zero()
    for tup in product(fidx, repeat=r):
        fp = [fibre_parity_of_index(q.chart, i) for i in tup]
        eps = base_eps
        for j in range(r - 1):
            eps ^= (arg_par[j] * sum(fp[j + 1:])) & 1
        for pos, p in enumerate(fp, start=1):
            eps ^= (pos * p) & 1
        factor = dual_chart.one()
        dead = False
        for pos, i in enumerate(tup):
            e = f"e{fidx.index(i) + 1}"
            d = args[pos].left_derivative(e)
            if d.is_zero():
                dead = True
                break
            factor = factor * d
            if factor.is_zero():
                dead = True
                break
        if dead:
            continue
        core = dual_chart.zero()
        for j, i in enumerate(fidx):
            c = structure_constant(q, q.chart.generators[i].name, tuple(reversed(tup)))
            if not c.is_zero():
                core = core + dual_chart.gen(f"e{j + 1}").scaled(c.constant_term())
        if core.is_zero():
            continue
        out = out + (core * factor).scaled(-1 if eps else 1)
    return out


# ---------------------------------------------------------------------------
# bracket tables
# ---------------------------------------------------------------------------

@dataclass
class BracketTable:
    """n-ary bracket values on tuples of fibre coordinate functions.

    ``parity`` is the common parity shift of the operation (value parity
    minus argument parities, None when every entry vanishes); ``weight`` is
    the drop 1 - arity in the natural fibre weight, checked entry by entry.
    """

    flavor: str
    arity: int
    labels: list[str]
    entries: dict[tuple[int, ...], GradedPoly]
    parity: int | None = None
    weight: int = 0

    def render(self) -> str:
        lines = [f"arity {self.arity} [{self.flavor}]"]
        for tup in sorted(self.entries):
            names = ",".join(self.labels[i] for i in tup)
            lines.append(f"  ({names}) -> {self.entries[tup].render()}")
        return "\n".join(lines)


def _table_metadata(chart: Chart, labels, entries, arity: int):
    """Common parity shift and checked fibre-weight drop of a table."""
    shift = None
    for tup, value in entries.items():
        if value.is_zero():
            continue
        vp = value.parity()
        if vp is None:
            raise GradedAlgebraError("bracket value has mixed parity")
        args_parity = sum(chart.generator(labels[i]).parity for i in tup) & 1
        this = (vp + args_parity) & 1
        if shift is None:
            shift = this
        elif shift != this:
            raise GradedAlgebraError("table entries disagree on operation parity")
        w = value.weight()
        args_w1 = sum(chart.generator(labels[i]).weight[0] for i in tup)
        if w is not None and w[0] != args_w1 + (1 - arity):
            raise GradedAlgebraError("table entry violates the weight drop")
    return shift, 1 - arity


def schouten_bracket_table(s: HigherStructure, arity: int) -> BracketTable:
    eng = schouten_engine(s)
    parent = eng.parent
    fibre = parent.fibre_names()
    entries = {}
    for tup in combinations_with_replacement(range(len(fibre)), arity):
        args = [parent.gen(fibre[i]) for i in tup]
        entries[tup] = higher_schouten_bracket(s, args)
    parity, weight = _table_metadata(parent, fibre, entries, arity)
    return BracketTable("schouten", arity, fibre, entries, parity, weight)


def poisson_bracket_table(p: HigherStructure, arity: int) -> BracketTable:
    eng = poisson_engine(p)
    parent = eng.parent
    fibre = parent.fibre_names()
    entries = {}
    for tup in combinations_with_replacement(range(len(fibre)), arity):
        args = [parent.gen(fibre[i]) for i in tup]
        entries[tup] = higher_poisson_bracket(p, args)
    parity, weight = _table_metadata(parent, fibre, entries, arity)
    return BracketTable("poisson", arity, fibre, entries, parity, weight)


def symmetric_field_table(q: VectorField, arity: int) -> BracketTable:
    """Symmetric brackets (s_a1, ..., s_ar) over a point base, as fields."""
    eng = FieldEngine(q)
    chart = q.chart
    n = len(chart.generators)
    entries = {}
    for tup in combinations_with_replacement(range(n), arity):
        args = [eng.basis_field(i) for i in tup]
        value = eng.derived(args)
        poly = chart.zero()
        for j, c in enumerate(eng.coefficients(value)):
            if c != 0:
                poly = poly + chart.gen(chart.generators[j].name).scaled(c)
        entries[tup] = poly
    labels = [g.name for g in chart.generators]
    return BracketTable("field", arity, labels, entries)


def skew_bracket_table(q: VectorField, arity: int) -> BracketTable:
    """Skew brackets {T_a1, ..., T_ar} on the unshifted space.

    Obtained from the symmetric table by the parity-shift sign
    (-1)^(a1 (r-1) + a2 (r-2) + ... + a_{r-1} + 1) with a_i the unshifted
    parities; skew-symmetry under adjacent exchanges is verified.
    """
    sym = symmetric_field_table(q, arity)
    chart = q.chart
    r = arity
    entries = {}
    for tup, value in sym.entries.items():
        e = 1
        for pos, i in enumerate(tup, start=1):
            if pos < r:
                e += fibre_parity_of_index(chart, i) * (r - pos)
        entries[tup] = value.scaled(-1 if e & 1 else 1)
    table = BracketTable("skew", arity, sym.labels, entries)
    _verify_skew(q, table)
    return table


def _verify_skew(q: VectorField, table: BracketTable):
    """Adjacent exchange must flip the sign by -(-1)^(a_i a_j)."""
    eng = FieldEngine(q)
    chart = q.chart
    for tup in table.entries:
        for k in range(len(tup) - 1):
            swapped = list(tup)
            swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
            pi_ = fibre_parity_of_index(chart, tup[k])
            pj = fibre_parity_of_index(chart, tup[k + 1])
            sign = -1 if not (pi_ and pj) else 1
            value = _skew_value(q, eng, tuple(swapped))
            expected = table.entries[tup].scaled(sign)
            if value != expected:
                raise GradedAlgebraError(
                    f"skew table fails antisymmetry on {tup} at slot {k}"
                )


def _skew_value(q: VectorField, eng: FieldEngine, tup: tuple[int, ...]):
    chart = q.chart
    r = len(tup)
    args = [eng.basis_field(i) for i in tup]
    value = eng.derived(args)
    poly = chart.zero()
    for j, c in enumerate(eng.coefficients(value)):
        if c != 0:
            poly = poly + chart.gen(chart.generators[j].name).scaled(c)
    e = 1
    for pos, i in enumerate(tup, start=1):
        if pos < r:
            e += fibre_parity_of_index(chart, i) * (r - pos)
    return poly.scaled(-1 if e & 1 else 1)


# ---------------------------------------------------------------------------
# anchors and the weight-one restriction statement
# ---------------------------------------------------------------------------

def higher_anchor(q: VectorField, tup: tuple[int, ...], f: GradedPoly) -> GradedPoly:
    """Action of the r-anchor on a base function.

    Defined through nested commutators of Q with the constant fibre fields,
    applied to the base function and then restricted to the base; this fixes
    the sign convention once and for all.
    """
    chart = q.chart
    if f.chart != chart:
        raise ChartMismatch("the base function must live on the field's chart")
    if f.contains_any(chart.fibre_names()):
        raise GradedAlgebraError("anchor arguments act on base functions only")
    cur = q
    for i in tup:
        name = chart.generators[i].name
        const = VectorField(chart, {name: chart.one()}, chart.generators[i].parity)
        cur = commutator(cur, const)
    return cur(f).drop_generators(chart.fibre_names())


@dataclass
class StatementReport:
    per_arity: dict[int, bool]
    details: list[str]

    @property
    def ok(self) -> bool:
        return all(self.per_arity.values())


def weight_one_restriction_check(q: VectorField, s: HigherStructure,
                                 p: HigherStructure, max_arity: int = 4) -> StatementReport:
    """Over a point base: restricted derived brackets = input brackets.

    For every tuple of weight-one coordinates eta (resp. e) up to the arity
    bound, the derived bracket with S (resp. the sign-corrected one with P)
    must match the symmetric (resp. skew) bracket table of Q transported
    through s_b -> eta_b (resp. T_b -> e_b).
    """
    if q.chart.n_base != 0:
        raise ChartMismatch("the restriction statement is for a point base")
    eng_s = schouten_engine(s)
    eng_p = poisson_engine(p)
    dual_pi = eng_s.parent
    dual_e = eng_p.parent
    n = len(q.chart.generators)
    per_arity: dict[int, bool] = {}
    details: list[str] = []
    for r in range(0, max_arity + 1):
        ok = True
        sym = symmetric_field_table(q, r) if r > 0 else None
        skew = skew_bracket_table(q, r) if r > 0 else None
        if r == 0:
            lhs_s = s.restricted()
            rhs_s = _transport_fibre(q, dual_pi, "eta", _zero_coefficients(q))
            lhs_p = higher_poisson_bracket(p, [])
            rhs_p = _transport_fibre(q, dual_e, "e", _zero_coefficients(q)).scaled(-1)
            if lhs_s != rhs_s:
                ok = False
                details.append("arity 0 schouten side differs")
            if lhs_p != rhs_p:
                ok = False
                details.append("arity 0 poisson side differs")
        else:
            for tup in combinations_with_replacement(range(n), r):
                args_s = [dual_pi.gen(f"eta{i + 1}") for i in tup]
                lhs = higher_schouten_bracket(s, args_s)
                rhs = _transport_value(sym.entries[tup], dual_pi, "eta")
                if lhs != rhs:
                    ok = False
                    details.append(f"arity {r} schouten tuple {tup} differs")
                args_p = [dual_e.gen(f"e{i + 1}") for i in tup]
                lhs_p = higher_poisson_bracket(p, args_p)
                rhs_p = _transport_value(skew.entries[tup], dual_e, "e")
                if lhs_p != rhs_p:
                    ok = False
                    details.append(f"arity {r} poisson tuple {tup} differs")
        per_arity[r] = ok
    return StatementReport(per_arity, details)


def _zero_coefficients(q: VectorField) -> list[Fraction]:
    out = []
    for g in q.chart.generators:
        out.append(
            q.component(g.name).drop_generators(q.chart.fibre_names()).constant_term()
        )
    return out


def _transport_fibre(q: VectorField, dual: Chart, family: str,
                     coeffs: list[Fraction]) -> GradedPoly:
    poly = dual.zero()
    for i, c in enumerate(coeffs):
        if c != 0:
            poly = poly + dual.gen(f"{family}{i + 1}").scaled(c)
    return poly


def _transport_value(value: GradedPoly, dual: Chart, family: str) -> GradedPoly:
    """Send a fibre-linear value sum c_b xi^b to sum c_b eta_b (or e_b)."""
    chart = value.chart
    images = {}
    for i, g in enumerate(chart.generators):
        images[g.name] = dual.gen(f"{family}{i + 1}")
    out = dual.zero()
    for m, c in value.terms.items():
        if len(m) != 1 or m[0][1] != 1:
            raise GradedAlgebraError("expected a fibre-linear bracket value")
        idx = m[0][0]
        out = out + dual.gen(f"{family}{idx + 1}").scaled(c)
    return out
