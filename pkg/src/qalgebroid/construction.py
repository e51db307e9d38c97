"""From a homological field to its higher Schouten and Poisson structures.

The pipeline: take the even (odd) principal symbol of Q on T*(PiE)
(PiT*(PiE)), then push it through the canonical double-vector-bundle exchange
onto T*(PiE*) (PiT*(E*)).  The exchanges substitute, on function algebras,

    even:  xi^a -> (-1)^{a} pi^a,   pi_a -> eta_a      (x, p fixed)
    odd:   xi^a -> estar^a,         xistar_a -> -e_a   (x, xstar fixed)

where a is the fibre parity.  Both exchanges preserve the respective
canonical brackets, so S = even_exchange(sigma Q) satisfies {S, S} = 0 and
P = odd_exchange(varsigma Q) satisfies [[P, P]] = 0 whenever [Q, Q] = 0.
Every term of S and P has total weight one, homogeneous pieces sitting in
bi-weight (1-n, n); the audit below checks that term by term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charts import (
    BASE_FIBRE,
    Chart,
    BundlePresentation,
    chart_e_star,
    chart_even_cotangent,
    chart_odd_cotangent,
    chart_pi_e,
    chart_pi_e_star,
    restrict_to_zero_section,
)
from .fields import (
    VectorField,
    canonical_poisson,
    canonical_schouten,
    even_symbol,
    odd_symbol,
    require_homological,
)
from .gradedpoly import (
    ODD,
    ChartMismatch,
    GradedAlgebraError,
    GradedPoly,
    ParityMismatch,
    total_weight,
)


@dataclass(frozen=True)
class MorphismR:
    """A signed generator substitution between two phase-space charts.

    ``images`` sends each generator name of ``domain`` to (coefficient, name
    on ``codomain``).  ``pullback`` applies it to functions; the map is a
    bijection on generators up to sign, so an exact inverse is available.
    """

    domain: Chart
    codomain: Chart
    images: tuple[tuple[str, Fraction, str], ...]

    def _image_polys(self) -> dict[str, GradedPoly]:
        return {
            src: self.codomain.gen(dst).scaled(c)
            for src, c, dst in self.images
        }

    def pullback(self, f: GradedPoly) -> GradedPoly:
        if f.chart != self.domain:
            raise ChartMismatch(
                f"pullback expects functions on {self.domain.space}"
            )
        return f.substitute(self._image_polys(), self.codomain)

    def inverse(self) -> "MorphismR":
        inv = tuple(
            (dst, Fraction(1) / c, src) for src, c, dst in self.images
        )
        return MorphismR(self.codomain, self.domain, inv)


def even_dual_exchange(b: BundlePresentation) -> MorphismR:
    """Identifies functions on T*(PiE) with functions on T*(PiE*)."""
    domain = chart_even_cotangent(chart_pi_e(b))
    codomain = chart_even_cotangent(chart_pi_e_star(b))
    images: list[tuple[str, Fraction, str]] = []
    for i in range(b.base_dim):
        images.append((f"x{i + 1}", Fraction(1), f"x{i + 1}"))
        images.append((f"p{i + 1}", Fraction(1), f"p{i + 1}"))
    for i, p in enumerate(b.fibre_parities):
        sign = Fraction(-1) if p == ODD else Fraction(1)
        images.append((f"xi{i + 1}", sign, f"pi{i + 1}"))
        images.append((f"pi{i + 1}", Fraction(1), f"eta{i + 1}"))
    return MorphismR(domain, codomain, tuple(images))


def odd_dual_exchange(b: BundlePresentation) -> MorphismR:
    """Identifies functions on PiT*(PiE) with functions on PiT*(E*)."""
    domain = chart_odd_cotangent(chart_pi_e(b))
    codomain = chart_odd_cotangent(chart_e_star(b))
    images: list[tuple[str, Fraction, str]] = []
    for i in range(b.base_dim):
        images.append((f"x{i + 1}", Fraction(1), f"x{i + 1}"))
        images.append((f"xstar{i + 1}", Fraction(1), f"xstar{i + 1}"))
    for i in range(len(b.fibre_parities)):
        images.append((f"xi{i + 1}", Fraction(1), f"estar{i + 1}"))
        images.append((f"xistar{i + 1}", Fraction(-1), f"e{i + 1}"))
    return MorphismR(domain, codomain, tuple(images))


@dataclass(frozen=True)
class HigherStructure:
    """A self-commuting generating function on a phase space.

    flavor "schouten": an odd function S on T*(PiE*) with {S, S} = 0.
    flavor "poisson": an even function P on PiT*(E*) with [[P, P]] = 0.
    The self-bracket is computed eagerly and cached as evidence.
    """

    value: GradedPoly
    flavor: str
    chart: Chart
    self_bracket: GradedPoly

    @property
    def is_self_commuting(self) -> bool:
        return self.self_bracket.is_zero()

    def restricted(self) -> GradedPoly:
        """The zero-bracket: the structure restricted to the zero section."""
        return restrict_to_zero_section(self.value)

    def render(self) -> str:
        return self.value.render()


def _presentation_of_pi_e(chart: Chart) -> BundlePresentation:
    if chart.kind != BASE_FIBRE or chart.space != "PiE":
        raise ChartMismatch("the homological field must live on a PiE chart")
    base = tuple(g.parity for g in chart.generators[: chart.n_base])
    fibre = tuple((g.parity + 1) & 1 for g in chart.generators[chart.n_base:])
    return BundlePresentation(base, fibre)


def build_schouten(q: VectorField) -> HigherStructure:
    """Even symbol then even exchange; verifies [Q,Q] = 0 and {S,S} = 0."""
    b = _presentation_of_pi_e(q.chart)
    require_homological(q)
    exchange = even_dual_exchange(b)
    sigma = even_symbol(q, exchange.domain)
    s = exchange.pullback(sigma)
    self_bracket = canonical_poisson(s, s, exchange.codomain)
    h = HigherStructure(s, "schouten", exchange.codomain, self_bracket)
    if not h.is_self_commuting:
        raise GradedAlgebraError(
            f"internal error: {{S,S}} != 0 for a homological field: "
            f"{self_bracket.render()}"
        )
    return h


def build_poisson(q: VectorField) -> HigherStructure:
    """Odd symbol then odd exchange; verifies [Q,Q] = 0 and [[P,P]] = 0."""
    b = _presentation_of_pi_e(q.chart)
    require_homological(q)
    exchange = odd_dual_exchange(b)
    varsigma = odd_symbol(q, exchange.domain)
    p = exchange.pullback(varsigma)
    self_bracket = canonical_schouten(p, p, exchange.codomain)
    h = HigherStructure(p, "poisson", exchange.codomain, self_bracket)
    if not h.is_self_commuting:
        raise GradedAlgebraError(
            f"internal error: [[P,P]] != 0 for a homological field: "
            f"{self_bracket.render()}"
        )
    return h


def build_schouten_unchecked(q: VectorField) -> HigherStructure:
    """The same pipeline without the homological gate (negative controls)."""
    b = _presentation_of_pi_e(q.chart)
    exchange = even_dual_exchange(b)
    s = exchange.pullback(even_symbol(q, exchange.domain))
    return HigherStructure(
        s, "schouten", exchange.codomain, canonical_poisson(s, s, exchange.codomain)
    )


def build_poisson_unchecked(q: VectorField) -> HigherStructure:
    b = _presentation_of_pi_e(q.chart)
    exchange = odd_dual_exchange(b)
    p = exchange.pullback(odd_symbol(q, exchange.domain))
    return HigherStructure(
        p, "poisson", exchange.codomain, canonical_schouten(p, p, exchange.codomain)
    )


# ---------------------------------------------------------------------------
# weight audit and strictness
# ---------------------------------------------------------------------------

@dataclass
class WeightAudit:
    histogram: dict[tuple[int, int], int]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def total_weight_audit(h: HigherStructure) -> WeightAudit:
    """Per-term bi-weight histogram; flags any term off the (1-n, n) line."""
    histogram: dict[tuple[int, int], int] = {}
    violations: list[str] = []
    poly = h.value
    for m in poly.terms:
        w = poly.monomial_weight(m)
        histogram[w] = histogram.get(w, 0) + 1
        if total_weight(w) != 1 or w[1] < 0:
            mono = GradedPoly(poly.chart, {m: poly.terms[m]})
            violations.append(f"term {mono.render()} has bi-weight {w}")
    return WeightAudit(dict(sorted(histogram.items())), violations)


def is_strict(q: VectorField) -> bool:
    """True iff every fibre component vanishes along the zero section."""
    if q.chart.kind != BASE_FIBRE:
        raise ChartMismatch("strictness is read off a base-fibre chart")
    fibre = q.chart.fibre_names()
    for name in fibre:
        comp = q.component(name)
        if not comp.drop_generators(fibre).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# constant fibre change and naturality
# ---------------------------------------------------------------------------

def invert_matrix(t: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(t)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(t)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise GradedAlgebraError("fibre change matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class FibreChange:
    """A constant invertible fibre transformation over the identity base map.

    ``matrix[b][a]`` is the coefficient of the old fibre index b in the new
    index a (new_xi^a = xi^b T_b^a).  The matrix must not mix parities.  The
    induced substitutions on each chart follow the coordinate tables: primal
    fibre coordinates (xi, estar) transform by T, dual ones (eta, e, pi on
    T*(PiE), xistar) by the inverse transpose rule, and base coordinates with
    their momenta stay fixed because T is constant.
    """

    def __init__(self, b: BundlePresentation, matrix):
        n = b.rank
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise GradedAlgebraError("fibre change matrix has the wrong shape")
        self.bundle = b
        self.t = [[Fraction(v) for v in row] for row in matrix]
        for i, pi_ in enumerate(b.fibre_parities):
            for j, pj in enumerate(b.fibre_parities):
                if self.t[i][j] != 0 and pi_ != pj:
                    raise ParityMismatch("fibre change mixes parities")
        self.t_inv = invert_matrix(self.t)

    def _by_t(self, chart: Chart, family: str, i: int, sign_rule=None) -> GradedPoly:
        # new coordinate i as a combination of old ones: sum_b old_b * T[b][i]
        out = chart.zero()
        for bidx in range(self.bundle.rank):
            c = self.t[bidx][i]
            if c == 0:
                continue
            if sign_rule is not None and sign_rule(bidx, i):
                c = -c
            out = out + chart.gen(f"{family}{bidx + 1}").scaled(c)
        return out

    def _by_t_inv(self, chart: Chart, family: str, i: int) -> GradedPoly:
        # dual rule: new_i = sum_b Tinv[i][b] old_b
        out = chart.zero()
        for bidx in range(self.bundle.rank):
            c = self.t_inv[i][bidx]
            if c != 0:
                out = out + chart.gen(f"{family}{bidx + 1}").scaled(c)
        return out

    def substitution(self, chart: Chart) -> dict[str, GradedPoly]:
        """Generator images implementing the change on a given chart."""
        par = self.bundle.fibre_parities
        images: dict[str, GradedPoly] = {}
        for g in chart.generators:
            fam = g.family
            suffix = int(g.name[len(fam):]) - 1
            if fam in ("x", "p", "xstar"):
                images[g.name] = chart.gen(g.name)
            elif fam in ("xi", "estar"):
                images[g.name] = self._by_t(chart, fam, suffix)
            elif fam in ("eta", "e", "xistar"):
                images[g.name] = self._by_t_inv(chart, fam, suffix)
            elif fam == "pi":
                if chart.parent_space == "PiE":
                    # conjugate of xi: dual rule
                    images[g.name] = self._by_t_inv(chart, fam, suffix)
                else:
                    # conjugate of eta on T*(PiE*): transforms by T with the
                    # parity sign (-1)^(a+b), trivial for a parity-preserving T
                    images[g.name] = self._by_t(
                        chart, fam, suffix,
                        sign_rule=lambda bi, ai: (par[bi] + par[ai]) & 1,
                    )
            else:
                raise GradedAlgebraError(f"no change rule for family {fam!r}")
        return images

    def apply(self, f: GradedPoly) -> GradedPoly:
        return f.substitute(self.substitution(f.chart), f.chart)

    def apply_inverse(self, f: GradedPoly) -> GradedPoly:
        return FibreChange(self.bundle, self.t_inv).apply(f)

    def transform_field(self, q: VectorField) -> VectorField:
        """Conjugate a field by the change: component_z = inv(Q(change(z)))."""
        comps: dict[str, GradedPoly] = {}
        sub = self.substitution(q.chart)
        for g in q.chart.generators:
            img = q(sub[g.name])
            comp = self.apply_inverse(img)
            if not comp.is_zero():
                comps[g.name] = comp
        return VectorField(q.chart, comps, q.parity)


@dataclass
class NaturalityReport:
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def chart_change_naturality(q: VectorField, matrix, rng=None, pairs: int = 25) -> NaturalityReport:
    """Transform Q by a constant fibre change and compare both build routes.

    Checks that building S and P from the transformed field agrees with
    applying the inverse lifted change to the original S and P, and that the
    lifted changes preserve the canonical brackets on random pairs.
    """
    from .randgen import random_poly  # local import to avoid a cycle

    b = _presentation_of_pi_e(q.chart)
    change = FibreChange(b, matrix)
    checks: list[tuple[str, bool, str]] = []

    q2 = change.transform_field(q)
    s1 = build_schouten(q)
    p1 = build_poisson(q)
    s2 = build_schouten(q2)
    p2 = build_poisson(q2)

    expected_s = change.apply_inverse(s1.value)
    ok = s2.value == expected_s
    checks.append((
        "schouten route equality", ok,
        "" if ok else f"got {s2.value.render()}, expected {expected_s.render()}",
    ))
    expected_p = change.apply_inverse(p1.value)
    ok = p2.value == expected_p
    checks.append((
        "poisson route equality", ok,
        "" if ok else f"got {p2.value.render()}, expected {expected_p.render()}",
    ))

    if rng is not None:
        for chart, bracket, label in (
            (s1.chart, canonical_poisson, "even lift symplectomorphism"),
            (p1.chart, canonical_schouten, "odd lift symplectomorphism"),
        ):
            good = True
            detail = ""
            for _ in range(pairs):
                f = random_poly(rng, chart, max_degree=3, n_terms=3)
                g = random_poly(rng, chart, max_degree=3, n_terms=3)
                lhs = bracket(change.apply(f), change.apply(g), chart)
                rhs = change.apply(bracket(f, g, chart))
                if lhs != rhs:
                    good = False
                    detail = f"failed on {f.render()} , {g.render()}"
                    break
            checks.append((label, good, detail))
    return NaturalityReport(checks)
