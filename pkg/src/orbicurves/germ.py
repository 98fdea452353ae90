"""Parametrized curve germs in a cyclic quotient chart and their exact
local invariants.

A germ is a pair of truncated power series (U(z), V(z)) with Gaussian
rational coefficients and zero constant terms, the two coordinates of a
holomorphic map of a disc into C^2, carried together with the local
group data: the chart's cyclic action (z1, z2) -> (mu_a z1, mu_a^b z2)
and the order m of the subgroup of Z_a preserving the image.

Exactness policy: truncation orders are tracked through every
operation, including the precision cost of divisions; any answer whose
value is not pinned down below the tracked truncation raises
PrecisionExhausted instead of guessing.  Coefficients never leave Q(i).
Group translates whose coefficients would need other roots of unity
are kept symbolic (an integer twist on the germ) and materialize only
when the needed root lies in {1, i, -1, -i}.

Set-level comparisons between translates (orbit distinctness, same
branch detection) use linear reparametrizations z -> c z with c a root
of unity, solved exactly as congruences on support exponents.  This is
complete for germs whose setwise symmetries are linear, which covers
every germ shape appearing here; germs engineered with nonlinear
symmetries could fool the distinctness check and are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce

from .errors import (
    DistinctBranchesRequired,
    EquivarianceViolated,
    InvalidInput,
    MultiplyCovered,
    NotNormalizable,
    PrecisionExhausted,
    UnrepresentableCoefficients,
    ZeroToPrecision,
)
from .exact import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    fourth_root_power,
    gaussian_nth_root,
    parse_rational,
)
from .lens import SingularityType

DEFAULT_TRUNCATION = 32
MAX_TRUNCATION = 256


def _tmin(*truncs):
    """Minimum of truncation orders, None meaning exact (infinite)."""
    finite = [t for t in truncs if t is not None]
    return min(finite) if finite else None


class PowerSeries:
    """Univariate power series over Q(i), either exact polynomial data
    (trunc None) or known only below a finite truncation order.

    Equality compares coefficients below the smaller truncation, which
    is the only comparison the data supports.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms, trunc=DEFAULT_TRUNCATION):
        if trunc is not None and trunc < 1:
            raise InvalidInput(f"truncation must be >= 1, got {trunc}")
        clean = {}
        for e, c in dict(terms).items():
            if e < 0:
                raise InvalidInput(f"negative exponent {e}")
            if (trunc is None or e < trunc) and not c.is_zero():
                clean[e] = c
        self.terms = clean
        self.trunc = trunc

    @staticmethod
    def zero(trunc=DEFAULT_TRUNCATION) -> "PowerSeries":
        return PowerSeries({}, trunc)

    @staticmethod
    def const(c: GaussianRational) -> "PowerSeries":
        return PowerSeries({0: c}, None)

    @staticmethod
    def monomial(exp: int, coeff=GR_ONE, trunc=DEFAULT_TRUNCATION) -> "PowerSeries":
        return PowerSeries({exp: coeff}, trunc)

    def support(self) -> list[int]:
        return sorted(self.terms)

    def coeff(self, e: int) -> GaussianRational:
        return self.terms.get(e, GR_ZERO)

    def is_zero_to_precision(self) -> bool:
        return not self.terms

    def order(self) -> int:
        if not self.terms:
            raise ZeroToPrecision(
                "series is identically zero"
                if self.trunc is None
                else f"series vanishes below truncation {self.trunc}"
            )
        return min(self.terms)

    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient (data degree)."""
        if not self.terms:
            raise ZeroToPrecision("series has no terms")
        return max(self.terms)

    def with_truncation(self, trunc) -> "PowerSeries":
        """Re-truncate.  Raising the truncation asserts the stored terms
        are exact polynomial data (the caller's responsibility)."""
        return PowerSeries(self.terms, trunc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        cut = _tmin(self.trunc, other.trunc)
        a = {e: c for e, c in self.terms.items() if cut is None or e < cut}
        b = {e: c for e, c in other.terms.items() if cut is None or e < cut}
        return a == b

    __hash__ = None

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, GR_ZERO) + c
        return PowerSeries(out, _tmin(self.trunc, other.trunc))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries({e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def _value_floor(self):
        """A lower bound for the order of the full (unknown) series."""
        if self.terms:
            return min(self.terms)
        return self.trunc  # None = exactly zero, order infinite

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        if (self.trunc is None and not self.terms) or (
            other.trunc is None and not other.terms
        ):
            return PowerSeries({}, None)
        va, vb = self._value_floor(), other._value_floor()
        # error terms: O(t^Na)*g = O(t^(Na+vb)) and f*O(t^Nb) = O(t^(Nb+va))
        cands = []
        if self.trunc is not None:
            cands.append(self.trunc + vb)
        if other.trunc is not None:
            cands.append(other.trunc + va)
        trunc = min(cands) if cands else None
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                prod = c1 * c2
                if e in out:
                    out[e] = out[e] + prod
                else:
                    out[e] = prod
        return PowerSeries(out, trunc)

    def scale(self, c: GaussianRational) -> "PowerSeries":
        if c.is_zero():
            return PowerSeries({}, self.trunc)
        return PowerSeries({e: k * c for e, k in self.terms.items()}, self.trunc)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by z^k (k may be negative if all exponents allow)."""
        trunc = None if self.trunc is None else self.trunc + k
        return PowerSeries({e + k: c for e, c in self.terms.items()}, trunc)

    def invert_unit(self) -> "PowerSeries":
        """Inverse of a unit (nonzero constant term)."""
        if self.coeff(0).is_zero():
            raise InvalidInput("only units (nonzero constant term) invert")
        if self.trunc is None and self.terms == {0: self.coeff(0)}:
            return PowerSeries({0: GR_ONE / self.coeff(0)}, None)
        if self.trunc is None:
            # the inverse of a nonconstant polynomial is an infinite series
            raise InvalidInput("truncate exact series before inverting")
        bound = self.trunc
        inv0 = GR_ONE / self.coeff(0)
        out = {0: inv0}
        for k in range(1, bound):
            acc = GR_ZERO
            for e, c in self.terms.items():
                if 0 < e <= k and (k - e) in out:
                    acc = acc + c * out[k - e]
            if not acc.is_zero():
                out[k] = -inv0 * acc
        return PowerSeries(out, self.trunc)

    def divide(self, other: "PowerSeries") -> "PowerSeries":
        """Exact division in the Laurent sense: requires ord(self) >=
        ord(other).  Costs ord(other) orders of truncation."""
        v = other.order()  # raises ZeroToPrecision for 0-to-precision divisor
        if self.terms and self.order() < v:
            raise InvalidInput("division would produce negative exponents")
        trunc = _tmin(self.trunc, other.trunc)
        if not self.terms:
            if self.trunc is None:
                return PowerSeries({}, None)
            if self.trunc - v < 1:
                raise ZeroToPrecision(
                    "quotient is zero to no significant precision"
                )
            return PowerSeries({}, self.trunc - v)
        num = self.shift(-v) if v else self
        den = other.shift(-v) if v else other
        if trunc is not None:
            num = num.with_truncation(trunc - v)
            den = den.with_truncation(trunc - v)
        return num * den.invert_unit()

    def nth_root_of_unit_series(self, n: int) -> "PowerSeries":
        """(1 + h)^(1/n) for a series with constant term exactly 1."""
        if self.coeff(0) != GR_ONE:
            raise InvalidInput("series must have constant term 1")
        h = self - PowerSeries.const(GR_ONE)
        if self.trunc is None:
            if not h.terms:
                return PowerSeries.const(GR_ONE)
            raise InvalidInput("truncate exact series before taking roots")
        bound = self.trunc
        out = PowerSeries.const(GR_ONE).with_truncation(self.trunc)
        power = PowerSeries.const(GR_ONE).with_truncation(self.trunc)
        binom = Fraction(1)
        alpha = Fraction(1, n)
        for k in range(1, bound):
            binom = binom * (alpha - (k - 1)) / k
            power = power * h
            if power.is_zero_to_precision():
                break
            out = out + power.scale(GaussianRational.of(binom))
        return out

    def __str__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"({self.coeff(e)})*z^{e}" for e in self.support())
        tail = "" if self.trunc is None else f" + O(z^{self.trunc})"
        return body + tail

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "trunc": self.trunc,
            "terms": [[e, self.coeff(e).to_json()] for e in self.support()],
        }

    @staticmethod
    def from_json(data: dict) -> "PowerSeries":
        if not isinstance(data, dict) or "terms" not in data:
            raise InvalidInput(f"series object needs a 'terms' list: {data!r}")
        terms = {}
        for item in data["terms"]:
            if not isinstance(item, list) or len(item) != 2:
                raise InvalidInput(f"series term must be [exp, coeff]: {item!r}")
            e, c = item
            terms[int(e)] = GaussianRational.from_json(c)
        return PowerSeries(terms, data.get("trunc", DEFAULT_TRUNCATION))


def order(series: PowerSeries) -> int:
    """Order (valuation) of a truncated series; raises ZeroToPrecision
    when no nonzero term is visible below the truncation."""
    return series.order()


def _solve_congruences(constraints, modulus):
    """Solve a system c*y = r (mod modulus) over the integers.

    Returns (y0, step) describing all solutions y = y0 (mod step), or
    None when the system is inconsistent.
    """
    y0, step = 0, 1
    for c, r in constraints:
        # substitute y = y0 + step*t:  c*step*t = r - c*y0 (mod modulus)
        a = (c * step) % modulus
        rhs = (r - c * y0) % modulus
        g = math.gcd(a, modulus)
        if rhs % g:
            return None
        mm = modulus // g
        t0 = (rhs // g) * pow(a // g, -1, mm) % mm
        y0 = y0 + step * t0
        step = step * mm
        y0 %= step
    return y0 % step, step


@dataclass(frozen=True)
class CurveGerm:
    """One branch through the origin of a chart with cyclic action data.

    U, V: coordinate series (zero constant term, not both zero).
    group: the chart action type (a, b); a = 1 means a regular point.
    m: order of the stabilizer of the image (divides a); the germ must
       be equivariant for an injective Z_m -> Z_a, which is checked
       symbolically on support exponents.
    twist: symbolic composition with the group element k, representing
       the translate (mu_a^k U, mu_a^{k b} V).
    """

    U: PowerSeries
    V: PowerSeries
    group: SingularityType = SingularityType(1, 0)
    m: int = 1
    twist: int = 0

    def __post_init__(self):
        if self.U.is_zero_to_precision() and self.V.is_zero_to_precision():
            raise InvalidInput("germ coordinates must not both vanish")
        for s in (self.U, self.V):
            if 0 in s.terms:
                raise InvalidInput("germ must pass through the origin")
            if s.trunc is None:
                raise InvalidInput("germ series carry a finite truncation")
        a = self.group.a
        if a < 1 or self.m < 1 or a % self.m != 0:
            raise EquivarianceViolated(
                f"stabilizer order {self.m} must divide the group order {a}"
            )
        if not 0 <= self.twist < max(a, 1):
            raise InvalidInput(f"twist must lie in [0, {a}), got {self.twist}")
        object.__setattr__(self, "_rho_exponent", self._solve_equivariance())

    def _solve_equivariance(self) -> int:
        """Exponent s with U(mu_m z) = mu_a^s U(z), V(mu_m z) = mu_a^{sb} V(z)
        and <mu_a^s> of order exactly m; raises EquivarianceViolated."""
        a, b = self.group.a, self.group.b
        if a == 1:
            if self.m != 1:
                raise EquivarianceViolated("trivial group admits only m = 1")
            return 0
        k = a // self.m
        constraints = [(1, (j * k) % a) for j in self.U.support()]
        constraints += [(b, (j * k) % a) for j in self.V.support()]
        sol = _solve_congruences(constraints, a)
        if sol is None:
            raise EquivarianceViolated(
                f"germ is not equivariant for group {self.group.to_json()} with m={self.m}"
            )
        s0, step = sol
        for s in range(s0 % step, a, step):
            if math.gcd(s, a) == a // self.m:
                return s
        raise EquivarianceViolated(
            f"no injective order-{self.m} action is compatible with the germ supports"
        )

    @property
    def rho_exponent(self) -> int:
        """s with rho(mu_m) = mu_a^s."""
        return self._rho_exponent

    def weights(self) -> tuple[int, int]:
        """Weights (w1, w2) of rho(mu_m) on the chart coordinates,
        reduced mod m: rho(mu_m) acts by (mu_m^{w1} z1, mu_m^{w2} z2)."""
        if self.group.a == 1:
            return (0, 0)
        sigma = self._rho_exponent // (self.group.a // self.m)
        return (sigma % self.m, (sigma * self.group.b) % self.m)

    def multiplicity(self) -> int:
        orders = []
        for s in (self.U, self.V):
            if not s.is_zero_to_precision():
                orders.append(s.order())
        return min(orders)

    def truncation(self) -> int:
        return _tmin(self.U.trunc, self.V.trunc)

    def with_truncation(self, trunc: int) -> "CurveGerm":
        """Re-truncate both coordinates.  Raising the truncation treats
        the stored terms as exact polynomial data."""
        return replace(
            self, U=self.U.with_truncation(trunc), V=self.V.with_truncation(trunc)
        )

    def materialize(self) -> tuple[PowerSeries, PowerSeries]:
        """Coordinate series of the twisted germ, when the twist's root
        of unity lies in Q(i)."""
        if self.twist == 0:
            return self.U, self.V
        a, b = self.group.a, self.group.b
        if (4 * self.twist) % a != 0:
            raise UnrepresentableCoefficients(
                f"translate by {self.twist} of a Z_{a} action needs a root of "
                "unity outside the Gaussian rationals"
            )
        quarter = (4 * self.twist) // a
        mu_u = fourth_root_power(quarter)
        mu_v = fourth_root_power(quarter * b)
        return self.U.scale(mu_u), self.V.scale(mu_v)

    def to_json(self) -> dict:
        out = {
            "U": self.U.to_json(),
            "V": self.V.to_json(),
            "group": self.group.to_json(),
            "m": self.m,
        }
        if self.twist:
            out["twist"] = self.twist
        return out

    @staticmethod
    def from_json(data: dict) -> "CurveGerm":
        if not isinstance(data, dict):
            raise InvalidInput(f"germ must be an object, got {data!r}")
        return CurveGerm(
            U=PowerSeries.from_json(data["U"]),
            V=PowerSeries.from_json(data["V"]),
            group=SingularityType.from_json(data.get("group", [1, 0])),
            m=data.get("m", 1),
            twist=data.get("twist", 0),
        )


def germ_from_polynomials(u_terms, v_terms, group=SingularityType(1, 0), m=1,
                          trunc=DEFAULT_TRUNCATION) -> CurveGerm:
    """Convenience constructor from {exp: coeff} dicts whose values may
    be ints, Fractions, strings, or GaussianRationals."""

    def conv(d):
        out = {}
        for e, c in d.items():
            if isinstance(c, GaussianRational):
                out[e] = c
            elif isinstance(c, str):
                out[e] = GaussianRational.of(parse_rational(c))
            else:
                out[e] = GaussianRational.of(Fraction(c))
        return PowerSeries(out, trunc)

    return CurveGerm(U=conv(u_terms), V=conv(v_terms), group=group, m=m)


def translate(germ: CurveGerm, k: int) -> CurveGerm:
    """The group translate by mu_a^k, kept symbolic in the twist."""
    a = germ.group.a
    return replace(germ, twist=(germ.twist + k) % max(a, 1))


def _twist_stabilizes(germ: CurveGerm, d: int) -> bool:
    """Whether the translate by d equals the germ as a set, testing
    linear reparametrizations z -> c z with c a root of unity."""
    a, b = germ.group.a, germ.group.b
    d %= a
    if d == 0:
        return True
    supports = set(germ.U.support()) | set(germ.V.support())
    if not supports:
        return True
    big = a * reduce(math.lcm, supports, 1)
    constraints = [(j, (d * (big // a)) % big) for j in germ.U.support()]
    constraints += [(j, (d * b * (big // a)) % big) for j in germ.V.support()]
    return _solve_congruences(constraints, big) is not None


@dataclass(frozen=True)
class GermOrbit:
    """The set of translates of one germ under the chart group, with
    |orbit| = a / m.  Translates are symbolic twists of the base germ;
    they materialize to Q(i) series only when the group order divides 4
    times the twist."""

    germs: tuple[CurveGerm, ...]
    group_order: int

    def __len__(self) -> int:
        return len(self.germs)

    @property
    def base(self) -> CurveGerm:
        return self.germs[0]


def germ_orbit(germ: CurveGerm, group: SingularityType | None = None,
               m: int | None = None) -> GermOrbit:
    """Orbit of a germ under its chart group.

    The stated stabilizer order m determines the orbit size a/m;
    pairwise set-level distinctness of the translates is verified
    symbolically and EquivarianceViolated is raised if the stated
    stabilizer is too small.
    """
    if group is not None and group != germ.group:
        raise InvalidInput("orbit group differs from the germ's chart group")
    if m is not None and m != germ.m:
        raise InvalidInput("orbit stabilizer order differs from the germ's")
    a = germ.group.a
    size = a // germ.m
    for d in range(1, size):
        if _twist_stabilizes(germ, d):
            raise EquivarianceViolated(
                f"translate by {d} fixes the germ; stated stabilizer order "
                f"{germ.m} is too small"
            )
    members = tuple(translate(germ, k) for k in range(size))
    return GermOrbit(germs=members, group_order=a)


def _same_data(g1: CurveGerm, g2: CurveGerm) -> bool:
    return (
        g1.group == g2.group
        and (g1.twist - g2.twist) % max(g1.group.a, 1) == 0
        and g1.U == g2.U
        and g1.V == g2.V
    )


def _series_det(matrix: list[list[PowerSeries]]) -> PowerSeries:
    """Determinant of a matrix of truncated series by elimination over
    formal Laurent series, pivoting on minimal valuation.  Truncation
    bookkeeping rides along every division, so the result's truncation
    honestly bounds what the input data determines."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    pivots: list[PowerSeries] = []
    for k in range(n):
        best, best_ord = None, None
        for i in range(k, n):
            entry = m[i][k]
            if entry.is_zero_to_precision():
                continue
            o = entry.order()
            if best_ord is None or o < best_ord:
                best, best_ord = i, o
        if best is None:
            # column vanished to precision: det is zero below the weakest
            # remaining truncation, scaled through the pivots found so far
            t = _tmin(*(m[i][k].trunc for i in range(k, n)))
            acc = PowerSeries.zero(t if t is not None else DEFAULT_TRUNCATION)
            for p in pivots:
                acc = acc * p
            return acc
        if best != k:
            m[k], m[best] = m[best], m[k]
            sign = -sign
        pivot = m[k][k]
        pivots.append(pivot)
        for i in range(k + 1, n):
            if m[i][k].is_zero_to_precision():
                continue
            factor = m[i][k].divide(pivot)
            for j in range(k + 1, n):
                m[i][j] = m[i][j] - factor * m[k][j]
    det = PowerSeries.const(GR_ONE if sign > 0 else -GR_ONE)
    for p in pivots:
        det = det * p
    return det


def _sylvester_rows(coeffs: dict[int, PowerSeries], deg: int, width: int):
    """Rows of the Sylvester block for a polynomial given as {power: series}."""
    ordered = [coeffs.get(deg - i, None) for i in range(deg + 1)]
    rows = []
    for shift in range(width):
        row = [_PS_ZERO_EXACT] * (deg + width)
        for i, c in enumerate(ordered):
            if c is not None:
                row[shift + i] = c
        rows.append(row)
    return rows


_PS_ZERO_EXACT = PowerSeries({}, None)


def intersection_multiplicity(g1: CurveGerm, g2: CurveGerm) -> int:
    """Local intersection multiplicity of two distinct branches.

    Computed as the t-order of the resultant in s of
    U1(t) - U2(s) and V1(t) - V2(s), with the resultant's Sylvester
    determinant evaluated over the truncated series ring.  Coordinate
    axes (a coordinate identically zero) are read off directly, since
    the resultant of truncated polynomial data would count zeros of the
    polynomial tail away from the origin.
    """
    if g1.group != g2.group:
        raise InvalidInput("germs live in different charts")
    if _same_data(g1, g2):
        raise DistinctBranchesRequired("the two germs carry identical data")
    rel = replace(g2, twist=(g2.twist - g1.twist) % max(g1.group.a, 1))
    u1, v1 = g1.U, g1.V
    u2, v2 = rel.materialize()

    if u1.is_zero_to_precision() and u2.is_zero_to_precision():
        raise DistinctBranchesRequired("both germs parametrize the z2 axis")
    if v1.is_zero_to_precision() and v2.is_zero_to_precision():
        raise DistinctBranchesRequired("both germs parametrize the z1 axis")

    # degree in s of the polynomial data; a coordinate with no visible
    # terms enters as the degree-0 polynomial U1(t) resp. V1(t)
    d_a = u2.degree() if u2.terms else 0
    d_b = v2.degree() if v2.terms else 0
    a_coeffs = {0: u1}
    for e in u2.support():
        a_coeffs[e] = PowerSeries.const(-u2.coeff(e))
    b_coeffs = {0: v1}
    for e in v2.support():
        b_coeffs[e] = PowerSeries.const(-v2.coeff(e))
    rows = _sylvester_rows(a_coeffs, d_a, d_b) + _sylvester_rows(b_coeffs, d_b, d_a)
    det = _series_det(rows)
    if det.is_zero_to_precision():
        raise PrecisionExhausted(
            "resultant vanishes to the available truncation; raise the "
            "precision or check that the branches are distinct"
        )
    return det.order()


def _normalized_second_coordinate(u: PowerSeries, v: PowerSeries, n: int) -> PowerSeries:
    """Rewrite the branch so the first coordinate is exactly t^n and
    return the second coordinate in the new parameter.

    Uses eta(t) = root * t * unit^(1/n) with eta^n = U, then solves
    V = W(eta) for W by a triangular pass; no series reversion needed.
    Raises NotNormalizable when the leading coefficient has no n-th
    root in Q(i).
    """
    lead = u.coeff(n)
    try:
        root = gaussian_nth_root(lead, n)
    except ArithmeticError as exc:
        raise NotNormalizable(f"cannot decide n-th root exactly: {exc}") from exc
    if root is None:
        raise NotNormalizable(
            f"leading coefficient {lead} has no {n}-th root in Q(i)"
        )
    unit = u.shift(-n).scale(GR_ONE / lead)  # constant term 1
    eta = unit.nth_root_of_unit_series(n).scale(root).shift(1)
    # eta is known mod t^(u.trunc - n + 1); the solve cannot see past that
    bound = _tmin(u.trunc - n + 1, v.trunc)
    if bound < 2:
        raise PrecisionExhausted(
            "truncation too small to renormalize the first coordinate"
        )
    eta_pows: list[PowerSeries] = [PowerSeries.const(GR_ONE).with_truncation(bound)]
    for _ in range(bound - 1):
        eta_pows.append(eta_pows[-1] * eta)
    residual = v.with_truncation(bound)
    out = {}
    for k in range(1, bound):
        c = residual.coeff(k)
        if c.is_zero():
            continue
        lead_k = eta_pows[k].coeff(k)
        b_k = c / lead_k
        out[k] = b_k
        residual = residual - eta_pows[k].scale(b_k)
    return PowerSeries(out, bound)


def characteristic_exponents(germ: CurveGerm) -> tuple[int, list[int]]:
    """Characteristic data (beta0; beta1..betag) of an irreducible
    branch, read from the support of the second coordinate after the
    first is normalized to a pure monomial."""
    u, v = germ.U, germ.V
    if u.is_zero_to_precision() or (
        not v.is_zero_to_precision() and v.order() < u.order()
    ):
        u, v = v, u
    n = u.order()
    if v.is_zero_to_precision():
        if n == 1:
            return 1, []
        if v.trunc is None and not v.terms:
            raise MultiplyCovered(
                f"degree-{n} cover of a coordinate axis is not reduced"
            )
        raise PrecisionExhausted(
            "second coordinate vanishes to precision; data cannot separate "
            "a high-contact branch from a multiple cover"
        )
    w = _normalized_second_coordinate(u, v, n)
    e = n
    betas = []
    for k in w.support():
        if e == 1:
            break
        if k % e:
            betas.append(k)
            e = math.gcd(e, k)
    if e != 1:
        raise PrecisionExhausted(
            "characteristic exponents do not resolve below the truncation"
        )
    return n, betas


def _delta_from_characteristic(beta0: int, betas: list[int]) -> int:
    e_prev = beta0
    mu = 1 - beta0
    for beta in betas:
        e_next = math.gcd(e_prev, beta)
        mu += (e_prev - e_next) * beta
        e_prev = e_next
    assert mu % 2 == 0, "branch Milnor number must be even"
    return mu // 2


def _delta_semigroup(germ: CurveGerm) -> int:
    """Fallback delta: count gaps of the value semigroup, detected by
    exact linear algebra over windows of attained orders."""
    u, v = germ.U, germ.V
    if u.is_zero_to_precision() or (
        not v.is_zero_to_precision() and v.order() < u.order()
    ):
        u, v = v, u
    n = u.order()
    bound = germ.truncation()
    window = bound - 1  # orders < bound are the ones the data certifies

    # rows: coefficient vectors of monomials U^a V^b below the window
    mons: list[PowerSeries] = []
    pu: list[PowerSeries] = [PowerSeries.const(GR_ONE).with_truncation(bound)]
    while True:
        nxt = pu[-1] * u
        if nxt.is_zero_to_precision() or nxt.order() > window:
            break
        pu.append(nxt)
    for base in pu:
        cur = base
        while True:
            mons.append(cur)
            cur = cur * v
            if cur.is_zero_to_precision() or cur.order() > window:
                break

    attained = _attained_orders(mons, window)
    # conductor: first point from which n consecutive orders are attained
    run, start = 0, None
    for k in range(window + 1):
        if k in attained:
            run += 1
            if run == n:
                start = k - n + 1
                break
        else:
            run = 0
    if start is None:
        raise PrecisionExhausted(
            "semigroup conductor not reached within the truncation window"
        )
    return sum(1 for k in range(start) if k not in attained)


def _attained_orders(series_list: list[PowerSeries], window: int) -> set[int]:
    """Orders attained by the linear span of the given series, found by
    echelon reduction with lowest-order pivoting."""
    rows = [dict(s.terms) for s in series_list if s.terms]
    pivots: dict[int, dict[int, GaussianRational]] = {}
    for row in rows:
        while row:
            o = min(row)
            if o > window:
                break
            if o not in pivots:
                pivots[o] = row
                break
            lead = pivots[o][o]
            factor = row[o] / lead
            for e, c in pivots[o].items():
                acc = row.get(e, GR_ZERO) - factor * c
                if acc.is_zero():
                    row.pop(e, None)
                else:
                    row[e] = acc
    return set(pivots)


def self_intersection(germ: CurveGerm) -> int:
    """Local self-intersection (delta invariant) of one branch: the
    number of double points concentrated at the singularity.

    Primary path: characteristic exponents of the normalized
    parametrization.  When the leading coefficient admits no n-th root
    in Q(i) the exact but slower semigroup-gap computation is used.
    Twists scale coordinates by units and never change delta.
    """
    exps = [e for s in (germ.U, germ.V) for e in s.support()]
    g = math.gcd(*exps)
    if g > 1:
        raise MultiplyCovered(
            f"parameter exponents share a factor {g}; not an irreducible branch"
        )
    if germ.multiplicity() == 1:
        return 0
    try:
        beta0, betas = characteristic_exponents(germ)
    except NotNormalizable:
        return _delta_semigroup(germ)
    return _delta_from_characteristic(beta0, betas)
