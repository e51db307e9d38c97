"""Built-in example documents.

Six fixtures exercise the whole construction:

* ``derham``           rank-2 tangent-style bundle, Q = xi^A d/dx^A.
* ``lie-algebroid-demo`` rank-2 algebroid over a line with polynomial anchor.
* ``so3``              the rotation algebra as a homological field at a point.
* ``lie-3-algebroid-demo`` a curved field over a line populating all four
  bi-weight layers (1,0), (0,1), (-1,2), (-2,3); the fibre mixes parities.
* ``graded-3-lie``     a single ternary bracket on a mixed rank-2 space.
  (A rank-2 space of a single parity admits no nonzero ternary structure:
  for an odd space the cubic coordinate monomials are even while the
  components must be odd, and for an even space the cubics vanish; so the
  fixture uses one even and one odd direction.)
* ``higher-poisson-on-algebroid``  a self-commuting bivector on the demo
  algebroid, turned into a homological field on the dual anti-bundle via its
  odd bracket and fed back through the construction.

Structure constants were found by requiring [Q, Q] = 0 exactly; each
document is re-verified by the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .charts import chart_pi_e
from .construction import build_schouten
from .fields import VectorField
from .gradedpoly import GradedPoly, ODD
from .homotopy import schouten_engine
from .specdoc import AlgebroidSpec, QTerm, assemble_field, spec_from_field

EVEN_P = "even"
ODD_P = "odd"


def _spec(name, base, fibre, terms) -> AlgebroidSpec:
    return AlgebroidSpec(
        name,
        tuple((n, 0 if p == EVEN_P else 1) for n, p in base),
        tuple((n, 0 if p == EVEN_P else 1) for n, p in fibre),
        tuple(
            QTerm(t[0], Fraction(t[1]), tuple(t[2]), tuple(tuple(b) for b in t[3]))
            for t in terms
        ),
    )


def derham(n: int = 2) -> AlgebroidSpec:
    base = [(f"x{i + 1}", EVEN_P) for i in range(n)]
    fibre = [(f"dx{i + 1}", EVEN_P) for i in range(n)]
    terms = [(f"x{i + 1}", "1", [f"dx{i + 1}"], []) for i in range(n)]
    return _spec("derham", base, fibre, terms)


def lie_algebroid_demo() -> AlgebroidSpec:
    # anchor u -> d/dx, v -> x d/dx, bracket [u, v] = u
    return _spec(
        "lie-algebroid-demo",
        [("x", EVEN_P)],
        [("u", EVEN_P), ("v", EVEN_P)],
        [
            ("x", "1", ["u"], []),
            ("x", "1", ["v"], [["x", 1]]),
            ("u", "-1", ["u", "v"], []),
        ],
    )


def so3() -> AlgebroidSpec:
    return _spec(
        "so3",
        [],
        [("s1", EVEN_P), ("s2", EVEN_P), ("s3", EVEN_P)],
        [
            ("s3", "1", ["s1", "s2"], []),
            ("s1", "1", ["s2", "s3"], []),
            ("s2", "-1", ["s1", "s3"], []),
        ],
    )


def so3_broken() -> AlgebroidSpec:
    """so3 with one extra constant: [Q, Q] != 0.  Negative-control fixture.

    Pure rescalings of the three standard constants keep the Jacobi identity
    on a rank-3 space, so the control perturbs an off-pattern entry instead.
    """
    return _spec(
        "so3-broken",
        [],
        [("s1", EVEN_P), ("s2", EVEN_P), ("s3", EVEN_P)],
        [
            ("s3", "1", ["s1", "s2"], []),
            ("s1", "1", ["s2", "s3"], []),
            ("s2", "-1", ["s1", "s3"], []),
            ("s3", "1", ["s2", "s3"], []),
        ],
    )


def lie_3_algebroid_demo() -> AlgebroidSpec:
    return _spec(
        "lie-3-algebroid-demo",
        [("x", EVEN_P)],
        [("f1", EVEN_P), ("f2", ODD_P), ("f3", EVEN_P)],
        [
            ("x", "1", ["f1"], []),
            ("x", "1", ["f1"], [["x", 1]]),
            ("f2", "1", ["f1"], []),
            ("f2", "-1", ["f1", "f2", "f2"], []),
            ("f3", "1", [], []),
            ("f3", "2", ["f2"], []),
            ("f3", "1", ["f2", "f2"], []),
            ("f3", "2", ["f1", "f3"], []),
            ("f3", "-2", ["f1", "f2", "f3"], []),
        ],
    )


def graded_3_lie() -> AlgebroidSpec:
    return _spec(
        "graded-3-lie",
        [],
        [("g1", EVEN_P), ("g2", ODD_P)],
        [("g2", "1", ["g1", "g2", "g2"], [])],
    )


def mixed_linfinity_algebra() -> AlgebroidSpec:
    """Point-base version of the Lie 3-algebroid fibre: arities 0 through 3.

    Used by the closed-formula cross-checks, which want a pure algebra with
    both even and odd directions and every bracket arity populated.
    """
    return _spec(
        "mixed-linfinity-algebra",
        [],
        [("f1", EVEN_P), ("f2", ODD_P), ("f3", EVEN_P)],
        [
            ("f2", "1", ["f1"], []),
            ("f2", "-1", ["f1", "f2", "f2"], []),
            ("f3", "1", [], []),
            ("f3", "2", ["f2"], []),
            ("f3", "1", ["f2", "f2"], []),
            ("f3", "2", ["f1", "f3"], []),
            ("f3", "-2", ["f1", "f2", "f3"], []),
        ],
    )


def higher_poisson_on_algebroid() -> AlgebroidSpec:
    """A bivector on the demo algebroid fed back through the construction.

    On a rank-2 fibre the odd self-bracket of any bivector is a 3-vector and
    vanishes identically, so p = (1 + x) eta1 eta2 generates a homological
    field Q_p = -[[p, . ]] on the dual anti-bundle, presented here on a fresh
    chart with even fibre symbols a1, a2.
    """
    demo = assemble_field(lie_algebroid_demo())
    s = build_schouten(demo)
    eng = schouten_engine(s)
    dual = eng.parent
    bivector = (dual.one() + dual.gen("x1")) * dual.gen("eta1") * dual.gen("eta2")
    if not eng.derived([bivector, bivector]).is_zero():
        raise AssertionError("the bivector no longer self-commutes")

    new_base = (("x", 0),)
    new_fibre = (("a1", 0), ("a2", 0))
    from .charts import BundlePresentation  # local to keep imports light

    new_chart = chart_pi_e(BundlePresentation((0,), (0, 0)))
    rename = {
        "x1": new_chart.gen("x1"),
        "eta1": new_chart.gen("xi1"),
        "eta2": new_chart.gen("xi2"),
    }
    comps: dict[str, GradedPoly] = {}
    for old, new in (("x1", "x1"), ("eta1", "xi1"), ("eta2", "xi2")):
        value = eng.derived([bivector, dual.gen(old)]).scaled(-1)
        if not value.is_zero():
            comps[new] = value.substitute(rename, new_chart)
    q = VectorField(new_chart, comps, ODD)
    return spec_from_field("higher-poisson-on-algebroid", new_base, new_fibre, q)


BUILTINS = {
    "derham": derham,
    "lie-algebroid-demo": lie_algebroid_demo,
    "so3": so3,
    "lie-3-algebroid-demo": lie_3_algebroid_demo,
    "graded-3-lie": graded_3_lie,
    "higher-poisson-on-algebroid": higher_poisson_on_algebroid,
}


def builtin_names() -> list[str]:
    return list(BUILTINS)


def builtin_spec(name: str) -> AlgebroidSpec:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise KeyError(
            f"unknown builtin {name!r}; available: {', '.join(BUILTINS)}"
        ) from None
    return factory()
