"""Closed orbifold Riemann surfaces and their basic invariants.

A surface here is |Sigma| (genus g) with finitely many cone points of
orders m_i, carried with a global multiplicity m_Sigma >= 1 (the
generic isotropy: m_Sigma = 1 for a reduced surface).  Cone orders are
required to be proper multiples of m_Sigma, so the reduction of the
surface divides all local structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParameters
from .exact import Fraction


@dataclass(frozen=True)
class OrbifoldSurface:
    m_sigma: int
    genus: int
    orders: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.m_sigma < 1:
            raise InvalidParameters(f"multiplicity must be >= 1, got {self.m_sigma}")
        if self.genus < 0:
            raise InvalidParameters(f"genus must be >= 0, got {self.genus}")
        object.__setattr__(self, "orders", tuple(self.orders))
        for m in self.orders:
            if m <= self.m_sigma:
                raise InvalidParameters(
                    f"cone order {m} must exceed the surface multiplicity {self.m_sigma}"
                )
            if m % self.m_sigma != 0:
                raise InvalidParameters(
                    f"cone order {m} must be a multiple of the surface multiplicity {self.m_sigma}"
                )

    def is_reduced(self) -> bool:
        return self.m_sigma == 1

    def to_json(self) -> dict:
        return {
            "m_sigma": self.m_sigma,
            "genus": self.genus,
            "orders": list(self.orders),
        }

    @staticmethod
    def from_json(data: dict) -> "OrbifoldSurface":
        if not isinstance(data, dict):
            raise InvalidParameters(f"surface must be an object, got {data!r}")
        return OrbifoldSurface(
            m_sigma=data.get("m_sigma", 1),
            genus=data["genus"],
            orders=tuple(data.get("orders", ())),
        )


def orbifold_genus(surface: OrbifoldSurface) -> Fraction:
    """Genus of the orbifold surface as a rational number.

    g_Sigma = g/m_Sigma + sum_i (1/(2 m_Sigma) - 1/(2 m_i)); each cone
    point adds the defect between a generic point and its own order.
    """
    g = Fraction(surface.genus, surface.m_sigma)
    for m in surface.orders:
        g += Fraction(1, 2 * surface.m_sigma) - Fraction(1, 2 * m)
    return g


def tangent_c1(surface: OrbifoldSurface) -> Fraction:
    """Pairing of c_1 of the orbifold tangent bundle with the surface.

    Equal to 2/m_Sigma - 2*g_Sigma; for a reduced surface this is the
    familiar 2 - 2g - sum_i (1 - 1/m_i).
    """
    return Fraction(2, surface.m_sigma) - 2 * orbifold_genus(surface)
