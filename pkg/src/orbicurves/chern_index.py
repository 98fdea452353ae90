"""First Chern numbers over orbifold surfaces and the elliptic index.

Two computations live here.  chern_split evaluates c_1 of an orbifold
complex bundle as a relative (de Rham) contribution plus one rational
correction per cone point, read off from the weights of the local group
action on the fiber.  kawasaki_index evaluates the index-theorem count
d = c_1 + 2 - 2g - sum_i (m_{i,1} + m_{i,2})/m_i
for a rank-2 pullback over a parametrized orbifold sphere/surface; the
real index of the associated operator is 2d.  Integrality of d is the
obstruction driving the lens-space congruence, and
index_integrality_scan reproduces that test purely through the index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameters, WeightOutOfRange
from .exact import Fraction, is_integer, mod_inverse


def _reduce_weights(m: int, weights, rank: int) -> tuple[int, ...]:
    if m < 1:
        raise InvalidParameters(f"point order must be >= 1, got {m}")
    ws = tuple(int(w) for w in weights)
    if len(ws) != rank:
        raise WeightOutOfRange(
            f"expected {rank} weights at a point of order {m}, got {len(ws)}"
        )
    return tuple(w % m for w in ws)


@dataclass(frozen=True)
class EquivariantTrivialization:
    """Bundle data over an orbifold surface: a trivialization away from
    the cone points, its relative first Chern number, and the isotropy
    weights on the fiber at each cone point.

    Weights are canonically reduced into [0, m_i) at construction.
    """

    rank: int
    relative_c1: int
    points: tuple[tuple[int, tuple[int, ...]], ...]

    def __init__(self, rank: int, relative_c1: int, points):
        if rank < 1:
            raise InvalidParameters(f"rank must be >= 1, got {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "relative_c1", int(relative_c1))
        reduced = tuple(
            (int(m), _reduce_weights(int(m), ws, rank)) for m, ws in points
        )
        object.__setattr__(self, "points", reduced)


def chern_split(triv: EquivariantTrivialization) -> Fraction:
    """c_1 of the bundle paired with the surface: the relative part plus
    sum_i sum_j m_{i,j}/m_i over cone points."""
    total = Fraction(triv.relative_c1)
    for m, ws in triv.points:
        for w in ws:
            total += Fraction(w, m)
    return total


@dataclass(frozen=True, slots=True)
class IndexReport:
    """d is the rational index count; index = 2d is the real-operator
    index and is meaningful when d is an integer."""

    d: Fraction
    index: Fraction

    @property
    def integral(self) -> bool:
        return is_integer(self.d)


def kawasaki_index(c1_pair, genus: int, points) -> IndexReport:
    """Index count for a rank-2 pullback over a parametrized surface.

    c1_pair: pairing of ambient c_1 with the image class (rational).
    genus: genus of the underlying domain surface.
    points: iterable of (m_i, (w1, w2)) orbifold point data; weights are
    reduced into [0, m_i).
    """
    if genus < 0:
        raise InvalidParameters(f"genus must be >= 0, got {genus}")
    d = Fraction(c1_pair) + 2 - 2 * genus
    for m, ws in points:
        w1, w2 = _reduce_weights(int(m), ws, 2)
        d -= Fraction(w1 + w2, m)
    return IndexReport(d=d, index=2 * d)


@dataclass(frozen=True, slots=True)
class ScanRow:
    qprime: int
    caseA_d: Fraction
    caseB_d: Fraction
    caseA_integral: bool
    caseB_integral: bool
    allowed: bool

    def to_json(self) -> dict:
        from .exact import format_rational

        return {
            "qprime": self.qprime,
            "caseA_d": format_rational(self.caseA_d),
            "caseB_d": format_rational(self.caseB_d),
            "caseA_integral": self.caseA_integral,
            "caseB_integral": self.caseB_integral,
            "allowed": self.allowed,
        }


def index_integrality_scan(p: int, q: int) -> list[ScanRow]:
    """Run kawasaki_index over every candidate q' for the covered-curve
    limit data between the two cone points of the model.

    The domain is a sphere with points of orders p+q and p.  At the
    first point the local representative forces weights (l, 1) with
    l = p^{-1} mod p+q; at the second the two candidate local forms give
    weights (l', 1) with l' = q'^{-1} mod p (case A) or (1, q') (case B).
    """
    import math

    if p < 2 or not 0 < q < p or math.gcd(p, q) != 1:
        raise InvalidParameters(f"need coprime 0 < q < p with p >= 2, got ({p}, {q})")
    l = mod_inverse(p, p + q)
    c1_pair = Fraction(2 * p + q + 1, p * (p + q))
    rows = []
    for qprime in range(1, p):
        if math.gcd(qprime, p) != 1:
            continue
        lprime = mod_inverse(qprime, p)
        d_a = kawasaki_index(c1_pair, 0, [(p + q, (l, 1)), (p, (lprime, 1))]).d
        d_b = kawasaki_index(c1_pair, 0, [(p + q, (l, 1)), (p, (1, qprime))]).d
        rows.append(
            ScanRow(
                qprime=qprime,
                caseA_d=d_a,
                caseB_d=d_b,
                caseA_integral=is_integer(d_a),
                caseB_integral=is_integer(d_b),
                allowed=is_integer(d_a) or is_integer(d_b),
            )
        )
    return rows
