"""Executable model of the weighted projective cap: the closed
4-orbifold with two cyclic singular points that compactifies the
symplectic cone over a lens space, its two distinguished holomorphic
curves, the quadratic genus bound, and the Seifert Euler number.

All quantities are exact rationals; cone radii carry no invariant
content and do not appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chern_index import IndexReport, kawasaki_index
from .curvecalc import (
    AmbientModel,
    CurveClass,
    CurveConfig,
    adjunction_report,
    algebraic_intersection,
    c_pairing,
    embeddedness_verdict,
    intersection_report,
    station,
    virtual_genus,
)
from .errors import Disallowed, InvalidInput, InvalidParameters
from .exact import format_rational
from .germ import germ_from_polynomials
from .lens import CongruenceRecord, SingularityType, cobordism_congruence
from .surface import OrbifoldSurface, orbifold_genus

SCHEMA_VERSION = 1

POINT_X = "x"
POINT_X_PRIME = "x_prime"


@dataclass(frozen=True)
class WpsModel:
    """The cap for parameters (p, q, q'): one generator of H_2 with
    self-pairing p/(p+q), c1 value (2p+q+1)/(p+q), and singular points
    x of type (p+q, p) and x' of type (p, q')."""

    p: int
    q: int
    qprime: int
    ambient: AmbientModel

    @property
    def pairing(self) -> Fraction:
        return self.ambient.pairing[0][0]

    @property
    def c1_value(self) -> Fraction:
        return self.ambient.c1_vector[0]

    def congruence(self) -> CongruenceRecord:
        return cobordism_congruence(self.p, self.q, self.qprime)


def build_model(p: int, q: int, qprime: int) -> WpsModel:
    """Assemble the cap model; the congruence is not consulted here, so
    disallowed q' still produce a model (only c0prime_config objects)."""
    import math

    if p < 2:
        raise InvalidParameters(f"p must be >= 2, got {p}")
    for name, value in (("q", q), ("q'", qprime)):
        if not 0 < value < p:
            raise InvalidParameters(f"{name} must satisfy 0 < {name} < p, got {value}")
        if math.gcd(p, value) != 1:
            raise InvalidParameters(f"p and {name} must be coprime, got ({p}, {value})")
    ambient = AmbientModel(
        h2_rank=1,
        pairing=((Fraction(p, p + q),),),
        c1_vector=(Fraction(2 * p + q + 1, p + q),),
        singular_points=(
            (POINT_X, SingularityType(p + q, p)),
            (POINT_X_PRIME, SingularityType(p, qprime)),
        ),
    )
    return WpsModel(p=p, q=q, qprime=qprime, ambient=ambient)


def c0_config(m: WpsModel) -> CurveConfig:
    """The generating curve: a sphere with one cone point of order p+q,
    passing only through x along the first coordinate axis."""
    p, q = m.p, m.q
    germ = germ_from_polynomials(
        {1: 1}, {}, group=SingularityType(p + q, p), m=p + q
    )
    return CurveConfig(
        ambient=m.ambient,
        domain=OrbifoldSurface(m_sigma=1, genus=0, orders=(p + q,)),
        curve_class=CurveClass((Fraction(1),)),
        stations=(station(POINT_X, p + q, [("z0", germ)]),),
    )


def c0prime_cases(m: WpsModel) -> list[str]:
    """Which local forms at x' pass the integrality congruence, in
    preference order."""
    record = m.congruence()
    out = []
    if record.caseA_integral:
        out.append("A")
    if record.caseB_integral:
        out.append("B")
    return out


def c0prime_config(m: WpsModel, case: str | None = None) -> CurveConfig:
    """The (1/p)-fraction curve: a sphere with cone points of orders
    p+q and p, along the second coordinate axis at x, and at x' along
    the axis selected by the congruence case (A: second axis, B: first
    axis).  Case A is preferred when both pass.
    """
    cases = c0prime_cases(m)
    if not cases:
        record = m.congruence()
        raise Disallowed(
            f"no integral local form at x' for (p, q, q') = "
            f"({m.p}, {m.q}, {m.qprime}); congruence record {record.to_json()}"
        )
    if case is None:
        case = cases[0]
    if case not in ("A", "B"):
        raise InvalidInput(f"case must be 'A' or 'B', got {case!r}")
    if case not in cases:
        raise Disallowed(
            f"case {case} fails the integrality congruence for "
            f"(p, q, q') = ({m.p}, {m.q}, {m.qprime}); passing cases: {cases}"
        )
    p, q, qp = m.p, m.q, m.qprime
    germ_x = germ_from_polynomials(
        {}, {1: 1}, group=SingularityType(p + q, p), m=p + q
    )
    if case == "A":
        germ_xp = germ_from_polynomials({}, {1: 1}, group=SingularityType(p, qp), m=p)
    else:
        germ_xp = germ_from_polynomials({1: 1}, {}, group=SingularityType(p, qp), m=p)
    return CurveConfig(
        ambient=m.ambient,
        domain=OrbifoldSurface(m_sigma=1, genus=0, orders=(p + q, p)),
        curve_class=CurveClass((Fraction(1, p),)),
        stations=(
            station(POINT_X, p + q, [("w0", germ_x)]),
            station(POINT_X_PRIME, p, [("w1", germ_xp)]),
        ),
    )


def genus_bound(m: WpsModel, r) -> Fraction:
    """g(r) = ((p/(p+q)) r^2 - ((2p+q+1)/(p+q)) r) / 2 + 1, the virtual
    genus of a class r[C0] as a function of the fraction r."""
    r = Fraction(r)
    p, q = m.p, m.q
    return (Fraction(p, p + q) * r * r - Fraction(2 * p + q + 1, p + q) * r) / 2 + 1


@dataclass(frozen=True)
class GenusBoundProfile:
    """Sampled values of the genus bound plus the two exact checks: the
    bound decreases strictly over (0,1], and its value at r = 1/p equals
    (1 - 1/(p+q))/2 + (1 - 1/p)/2."""

    rows: tuple[tuple[Fraction, Fraction], ...]
    strictly_decreasing: bool
    value_at_inverse_p: Fraction
    peak_identity: bool

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "rows": [
                [format_rational(r), format_rational(g)] for r, g in self.rows
            ],
            "strictly_decreasing": self.strictly_decreasing,
            "value_at_inverse_p": format_rational(self.value_at_inverse_p),
            "peak_identity": self.peak_identity,
        }


def genus_bound_profile(m: WpsModel, samples) -> GenusBoundProfile:
    """Evaluate the genus bound on ascending samples in (0, 1]."""
    rs = [Fraction(r) for r in samples]
    if any(not 0 < r <= 1 for r in rs):
        raise InvalidInput("samples must lie in (0, 1]")
    if any(a >= b for a, b in zip(rs, rs[1:])):
        raise InvalidInput("samples must be strictly ascending")
    rows = tuple((r, genus_bound(m, r)) for r in rs)
    decreasing = all(ga > gb for (_, ga), (_, gb) in zip(rows, rows[1:]))
    p, q = m.p, m.q
    at_peak = genus_bound(m, Fraction(1, p))
    displayed = Fraction(1 - Fraction(1, p + q), 2) + Fraction(1 - Fraction(1, p), 2)
    return GenusBoundProfile(
        rows=rows,
        strictly_decreasing=decreasing,
        value_at_inverse_p=at_peak,
        peak_identity=at_peak == displayed,
    )


def uniqueness_inequality(m: WpsModel) -> bool:
    """The self-pairing of the fraction class stays below the cost of a
    second component: 1/(p(p+q)) < 1/(p+q) + 1/p."""
    p, q = m.p, m.q
    return Fraction(1, p * (p + q)) < Fraction(1, p + q) + Fraction(1, p)


def seifert_euler(m: WpsModel) -> Fraction:
    """Euler number of the Seifert fibration on the lens space boundary:
    1 + q/p."""
    return 1 + Fraction(m.q, m.p)


def c0_index(m: WpsModel) -> IndexReport:
    """Index count of the deformation operator for the C0 data: the c1
    pairing with [C0], a genus-0 domain, and the isotropy weights of
    the distinguished germ at x."""
    germ = c0_config(m).stations[0].points[0].germ
    return kawasaki_index(
        c1_pair=m.c1_value, genus=0, points=[(m.p + m.q, germ.weights())]
    )


def dossier(m: WpsModel) -> dict:
    """Every model quantity in one JSON-ready mapping with stable key
    order: homology data, congruence record, both curve reports, the
    genus bound profile on {1/p, 1/2, 1}, and the scalar invariants."""
    record = m.congruence()
    cases = c0prime_cases(m)
    c0 = c0_config(m)
    index = c0_index(m)
    out = {
        "schema": SCHEMA_VERSION,
        "p": m.p,
        "q": m.q,
        "q_prime": m.qprime,
        "pairing_C0_C0": format_rational(m.pairing),
        "c1_X_C0": format_rational(m.c1_value),
        "c1_KX_C0": format_rational(c_pairing(c0)),
        "singular_points": {
            POINT_X: [m.p + m.q, m.p],
            POINT_X_PRIME: [m.p, m.qprime],
        },
        "seifert_euler": format_rational(seifert_euler(m)),
        "uniqueness_inequality": uniqueness_inequality(m),
        "congruence": record.to_json(),
        "cases": cases,
        "index_C0": {
            "d": format_rational(index.d),
            "index": format_rational(index.index),
            "integral": index.integral,
        },
        "C0": {
            "virtual_genus": format_rational(virtual_genus(c0)),
            "domain_genus": format_rational(orbifold_genus(c0.domain)),
            "adjunction": adjunction_report(c0).to_json(),
            "verdict": str(embeddedness_verdict(c0)),
        },
    }
    samples = sorted({Fraction(1, m.p), Fraction(1, 2), Fraction(1)})
    profile = genus_bound_profile(m, samples)
    out["genus_bound"] = profile.to_json()
    if cases:
        cp = c0prime_config(m)
        out["case"] = cases[0]
        out["C0_prime"] = {
            "class_fraction": format_rational(cp.curve_class.coords[0]),
            "virtual_genus": format_rational(virtual_genus(cp)),
            "domain_genus": format_rational(orbifold_genus(cp.domain)),
            "self_pairing": format_rational(algebraic_intersection(cp, cp)),
            "adjunction": adjunction_report(cp).to_json(),
            "verdict": str(embeddedness_verdict(cp)),
        }
        out["intersection_C0_C0_prime"] = intersection_report(c0, cp).to_json()
    else:
        out["case"] = None
        out["C0_prime"] = None
        out["intersection_C0_C0_prime"] = None
    return out
