"""Exact supercommutative polynomial arithmetic over named graded generators.

Conventions used throughout the package:

* A generator carries a Grassmann parity (0 = even, 1 = odd) and a bi-weight
  in Z x Z.  Odd generators anticommute and square to zero; even generators
  are central.
* Polynomials are kept in normal form: within a monomial the generators
  appear in the chart's fixed order, odd generators with exponent one.  All
  reordering signs are produced during normalisation, so equality is a plain
  comparison of term maps.
* Coefficients are exact rationals (``fractions.Fraction``).  Nothing is ever
  rounded, which is what makes identity checks meaningful.
* Derivatives act from the left: d/dz moves z to the front of a monomial,
  picking up one minus sign per odd generator jumped over, then strikes it.
* The zero polynomial reports parity 0 and weight (0, 0) by convention.

Values are immutable after construction; every operation returns a new
polynomial, so instances can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class GradedAlgebraError(Exception):
    """Base class for errors raised by the graded-algebra layer."""


class ChartMismatch(GradedAlgebraError):
    """Two operands live on different charts."""


class ParityMismatch(GradedAlgebraError):
    """An operation received a value of the wrong Grassmann parity."""


class UnknownGenerator(GradedAlgebraError):
    """A generator name does not exist on the relevant chart."""


EVEN = 0
ODD = 1

Weight = tuple[int, int]
ZERO_WEIGHT: Weight = (0, 0)

# A monomial is a tuple of (generator index, exponent) pairs, sorted by index.
Monomial = tuple[tuple[int, int], ...]
ONE_MONOMIAL: Monomial = ()


def add_weights(a: Weight, b: Weight) -> Weight:
    return (a[0] + b[0], a[1] + b[1])


def total_weight(w: Weight) -> int:
    return w[0] + w[1]


@dataclass(frozen=True)
class Generator:
    """A named coordinate with fixed parity and bi-weight.

    ``family`` tags the coordinate role (x, xi, eta, e, p, pi, xstar, estar,
    xistar) and drives conjugate naming and rendering order.
    """

    name: str
    parity: int
    weight: Weight
    family: str = ""

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ParityMismatch(f"parity of {self.name} must be 0 or 1")


def _merge_monomials(m1: Monomial, m2: Monomial, odd: tuple[bool, ...]):
    """Merge two normal-form monomials, returning (sign_exponent, monomial).

    Returns None when the product vanishes (an odd generator squared).  The
    sign exponent counts transpositions of odd generators needed to sort the
    concatenation m1 * m2.
    """
    if not m1:
        return 0, m2
    if not m2:
        return 0, m1
    # number of odd factors of m1 at position >= i
    odd_suffix = [0] * (len(m1) + 1)
    for t in range(len(m1) - 1, -1, -1):
        odd_suffix[t] = odd_suffix[t + 1] + (1 if odd[m1[t][0]] else 0)
    out: list[tuple[int, int]] = []
    sign = 0
    i = j = 0
    while i < len(m1) and j < len(m2):
        gi, ei = m1[i]
        gj, ej = m2[j]
        if gi < gj:
            out.append((gi, ei))
            i += 1
        elif gi == gj:
            if odd[gi]:
                return None
            out.append((gi, ei + ej))
            i += 1
            j += 1
        else:
            if odd[gj]:
                sign += odd_suffix[i]
            out.append((gj, ej))
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return sign & 1, tuple(out)


class GradedPoly:
    """A supercommutative polynomial attached to a chart.

    ``terms`` maps normal-form monomials to nonzero Fractions.  Do not mutate;
    construct through chart helpers or arithmetic.
    """

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms: dict[Monomial, Fraction] | None = None):
        self.chart = chart
        self.terms: dict[Monomial, Fraction] = terms or {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(chart, value) -> "GradedPoly":
        c = Fraction(value)
        if c == 0:
            return GradedPoly(chart)
        return GradedPoly(chart, {ONE_MONOMIAL: c})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _gen(self, idx: int) -> Generator:
        return self.chart.generators[idx]

    def monomial_parity(self, m: Monomial) -> int:
        p = 0
        for idx, exp in m:
            p += self._gen(idx).parity * exp
        return p & 1

    def monomial_weight(self, m: Monomial) -> Weight:
        w1 = w2 = 0
        for idx, exp in m:
            gw = self._gen(idx).weight
            w1 += gw[0] * exp
            w2 += gw[1] * exp
        return (w1, w2)

    def parity(self) -> int | None:
        """Common parity of all terms, 0 for the zero polynomial, None if mixed."""
        if not self.terms:
            return EVEN
        parities = {self.monomial_parity(m) for m in self.terms}
        if len(parities) == 1:
            return parities.pop()
        return None

    def weight(self) -> Weight | None:
        """Common bi-weight of all terms, (0, 0) for zero, None if mixed."""
        if not self.terms:
            return ZERO_WEIGHT
        weights = {self.monomial_weight(m) for m in self.terms}
        if len(weights) == 1:
            return weights.pop()
        return None

    def parity_parts(self) -> dict[int, "GradedPoly"]:
        """Split into even and odd parts (only nonzero parts are returned)."""
        parts: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.monomial_parity(m), {})[m] = c
        return {p: GradedPoly(self.chart, t) for p, t in parts.items()}

    def max_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE_MONOMIAL, Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _require_same_chart(self, other: "GradedPoly"):
        if self.chart != other.chart:
            raise ChartMismatch(
                f"operands live on different charts: "
                f"{self.chart.space} vs {other.chart.space}"
            )

    def __add__(self, other):
        if not isinstance(other, GradedPoly):
            other = GradedPoly.constant(self.chart, other)
        self._require_same_chart(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m, Fraction(0)) + c
            if acc == 0:
                terms.pop(m, None)
            else:
                terms[m] = acc
        return GradedPoly(self.chart, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.chart, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedPoly):
            other = GradedPoly.constant(self.chart, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            return self.scaled(other)
        self._require_same_chart(other)
        odd = self.chart.odd_flags
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                merged = _merge_monomials(m1, m2, odd)
                if merged is None:
                    continue
                s, m = merged
                c = c1 * c2 if s == 0 else -c1 * c2
                acc = out.get(m, Fraction(0)) + c
                if acc == 0:
                    out.pop(m, None)
                else:
                    out[m] = acc
        return GradedPoly(self.chart, out)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scaled(other)

    def scaled(self, value) -> "GradedPoly":
        c = Fraction(value)
        if c == 0:
            return GradedPoly(self.chart)
        return GradedPoly(self.chart, {m: c * t for m, t in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise GradedAlgebraError("negative powers are not defined")
        acc = GradedPoly.constant(self.chart, 1)
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, GradedPoly):
            if other == 0:
                return self.is_zero()
            return self == GradedPoly.constant(self.chart, other)
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, tuple(sorted(self.terms.items()))))

    # -- calculus ----------------------------------------------------------

    def left_derivative(self, name: str) -> "GradedPoly":
        """Left partial derivative with respect to the named generator."""
        idx = self.chart.index_of(name)
        gen = self.chart.generators[idx]
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            pos = None
            for k, (g, _) in enumerate(m):
                if g == idx:
                    pos = k
                    break
            if pos is None:
                continue
            exp = m[pos][1]
            if gen.parity == ODD:
                preceding_odd = sum(
                    1 for g, _ in m[:pos] if self.chart.generators[g].parity == ODD
                )
                coeff = -c if preceding_odd & 1 else c
                new_m = m[:pos] + m[pos + 1:]
            else:
                coeff = c * exp
                if exp == 1:
                    new_m = m[:pos] + m[pos + 1:]
                else:
                    new_m = m[:pos] + ((idx, exp - 1),) + m[pos + 1:]
            acc = out.get(new_m, Fraction(0)) + coeff
            if acc == 0:
                out.pop(new_m, None)
            else:
                out[new_m] = acc
        return GradedPoly(self.chart, out)

    def substitute(self, images: dict[str, "GradedPoly"], target_chart) -> "GradedPoly":
        """Apply the algebra homomorphism sending each generator to its image.

        Every generator occurring in the polynomial must be mapped; images
        must be parity-homogeneous of the source generator's parity (the zero
        polynomial is accepted for any generator).
        """
        for name, img in images.items():
            src = self.chart.generators[self.chart.index_of(name)]
            if img.chart != target_chart:
                raise ChartMismatch(f"image of {name} is not on the target chart")
            if img.is_zero():
                continue
            p = img.parity()
            if p is None or p != src.parity:
                raise ParityMismatch(
                    f"image of {name} must be parity-homogeneous of parity "
                    f"{src.parity}"
                )
        out = GradedPoly(target_chart)
        for m, c in self.terms.items():
            acc = GradedPoly.constant(target_chart, c)
            for idx, exp in m:
                name = self.chart.generators[idx].name
                if name not in images:
                    raise UnknownGenerator(f"no image provided for {name}")
                acc = acc * (images[name] ** exp)
                if acc.is_zero():
                    break
            out = out + acc
        return out

    def drop_generators(self, names) -> "GradedPoly":
        """Delete every term containing one of the named generators.

        Equivalent to substituting zero for those generators while staying on
        the same chart.
        """
        idxs = {self.chart.index_of(n) for n in names}
        terms = {
            m: c
            for m, c in self.terms.items()
            if not any(g in idxs for g, _ in m)
        }
        return GradedPoly(self.chart, terms)

    def contains_any(self, names) -> bool:
        idxs = {self.chart.index_of(n) for n in names}
        return any(any(g in idxs for g, _ in m) for m in self.terms)

    # -- rendering ---------------------------------------------------------

    def _print_key(self, m: Monomial):
        factors = self._print_factors(m)
        group = 0 if any(g.family in ("p", "xstar") for g, _ in factors) else 1
        return (group, tuple((g.weight, self.chart.index_of(g.name), e) for g, e in factors))

    def _print_factors(self, m: Monomial) -> list[tuple[Generator, int]]:
        factors = [(self.chart.generators[g], e) for g, e in m]
        factors.sort(key=lambda fe: (fe[0].weight, self.chart.index_of(fe[0].name)))
        return factors

    def _display_sign(self, m: Monomial) -> int:
        """Sign of reordering the stored factors into display order."""
        display = self._print_factors(m)
        odd_sequence = [
            self.chart.index_of(g.name) for g, _ in display if g.parity == ODD
        ]
        inversions = 0
        for a in range(len(odd_sequence)):
            for b in range(a + 1, len(odd_sequence)):
                if odd_sequence[a] > odd_sequence[b]:
                    inversions += 1
        return -1 if inversions & 1 else 1

    def render(self) -> str:
        """Deterministic text form.

        Terms containing a base momentum (p or x*) come first, then the rest;
        within a monomial, factors print in increasing bi-weight so momenta
        lead and fibre coordinates trail, matching how the structures are
        usually written out.  Reordering odd factors for display folds the
        transposition sign into the printed coefficient.
        """
        if not self.terms:
            return "0"
        keyed = sorted(self.terms.items(), key=lambda mc: self._print_key(mc[0]))
        pieces: list[str] = []
        for n, (m, c) in enumerate(keyed):
            c = c * self._display_sign(m)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = [
                g.name if e == 1 else f"{g.name}^{e}"
                for g, e in self._print_factors(m)
            ]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if n == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"<GradedPoly {self.render()} on {self.chart.space}>"
