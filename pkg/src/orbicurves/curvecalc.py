"""Curve configurations in a 4-dimensional cyclic-quotient orbifold and
their exact invariants: the adjunction identity, the intersection
identity, and the embeddedness criterion.

A configuration is the combinatorial shadow of a parametrized curve:
the ambient homology data (basis, intersection pairing, c1 values), the
domain orbifold surface, the curve's class and multiplicity, and one
station per image point that carries local branch data.  Homology is
always user-supplied; nothing here computes H_2 of an orbifold.

All reports are pure functions of immutable configurations and return
exact rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    AdjunctionViolated,
    AmbientMismatch,
    InvalidInput,
)
from .exact import format_rational, parse_rational
from .germ import CurveGerm, GermOrbit, germ_orbit, intersection_multiplicity, self_intersection
from .lens import SingularityType
from .surface import OrbifoldSurface, orbifold_genus

SCHEMA_VERSION = 1

REGULAR_PREFIX = "regular"


def _is_regular_marker(point_id: str) -> bool:
    return point_id == REGULAR_PREFIX or point_id.startswith(REGULAR_PREFIX + ":")


@dataclass(frozen=True)
class AmbientModel:
    """Ambient 4-orbifold data: an H_2 basis of given rank, the
    intersection pairing on it, the value of c1 of the tangent bundle on
    each basis class, and the cyclic singular points.

    Station ids resolve against singular_points; the id "regular" (or
    any id "regular:<tag>") marks a point with trivial isotropy and
    needs no listing.
    """

    h2_rank: int
    pairing: tuple[tuple[Fraction, ...], ...]
    c1_vector: tuple[Fraction, ...]
    singular_points: tuple[tuple[str, SingularityType], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "pairing", tuple(tuple(Fraction(x) for x in row) for row in self.pairing)
        )
        object.__setattr__(self, "c1_vector", tuple(Fraction(x) for x in self.c1_vector))
        object.__setattr__(self, "singular_points", tuple(self.singular_points))
        n = self.h2_rank
        if n < 1:
            raise InvalidInput(f"h2_rank must be >= 1, got {n}")
        if len(self.pairing) != n or any(len(row) != n for row in self.pairing):
            raise InvalidInput(f"pairing must be a {n}x{n} matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise InvalidInput("pairing matrix must be symmetric")
        if len(self.c1_vector) != n:
            raise InvalidInput(f"c1_vector must have length {n}")
        seen = set()
        for pid, stype in self.singular_points:
            if pid in seen:
                raise InvalidInput(f"duplicate singular point id {pid!r}")
            seen.add(pid)
            if _is_regular_marker(pid) and not stype.is_trivial():
                raise InvalidInput(
                    f"id {pid!r} is reserved for trivial isotropy markers"
                )
            if not isinstance(stype, SingularityType):
                raise InvalidInput(f"singular point {pid!r} needs a SingularityType")

    def point_type(self, point_id: str) -> SingularityType:
        for pid, stype in self.singular_points:
            if pid == point_id:
                return stype
        if _is_regular_marker(point_id):
            return SingularityType(1, 0)
        raise InvalidInput(
            f"ambient point id {point_id!r} is not listed and is not a "
            f"'{REGULAR_PREFIX}' marker"
        )

    def to_json(self) -> dict:
        return {
            "h2_rank": self.h2_rank,
            "pairing": [[format_rational(x) for x in row] for row in self.pairing],
            "c1_vector": [format_rational(x) for x in self.c1_vector],
            "singular_points": [[pid, t.to_json()] for pid, t in self.singular_points],
        }

    @staticmethod
    def from_json(data: dict) -> "AmbientModel":
        if not isinstance(data, dict):
            raise InvalidInput(f"ambient must be an object, got {data!r}")
        return AmbientModel(
            h2_rank=data["h2_rank"],
            pairing=tuple(
                tuple(parse_rational(x) for x in row) for row in data["pairing"]
            ),
            c1_vector=tuple(parse_rational(x) for x in data["c1_vector"]),
            singular_points=tuple(
                (pid, SingularityType.from_json(t))
                for pid, t in data.get("singular_points", ())
            ),
        )


@dataclass(frozen=True)
class CurveClass:
    """A class in the ambient H_2 basis together with the curve's
    multiplicity m_C (the order of the generic stabilizer of its
    parametrization; m_C = 1 exactly for type I curves)."""

    coords: tuple[Fraction, ...]
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if not any(self.coords):
            raise InvalidInput("curve class must be nonzero")
        if self.multiplicity < 1:
            raise InvalidInput(f"multiplicity must be >= 1, got {self.multiplicity}")

    @property
    def is_type_one(self) -> bool:
        return self.multiplicity == 1

    def to_json(self) -> dict:
        return {
            "coords": [format_rational(x) for x in self.coords],
            "multiplicity": self.multiplicity,
        }

    @staticmethod
    def from_json(data: dict) -> "CurveClass":
        return CurveClass(
            coords=tuple(parse_rational(x) for x in data["coords"]),
            multiplicity=data.get("multiplicity", 1),
        )


@dataclass(frozen=True)
class StationPoint:
    """One domain point of a station: its label, the order of the
    domain orbifold point there, and the orbit of local branches with
    the distinguished germ first."""

    label: str
    order: int
    orbit: GermOrbit

    @property
    def germ(self) -> CurveGerm:
        return self.orbit.base

    def to_json(self) -> dict:
        return {"label": self.label, "order": self.order, "germ": self.germ.to_json()}


@dataclass(frozen=True)
class Station:
    """All domain points of one curve lying over a single ambient point,
    with the isotropy order of that point."""

    ambient_point: str
    isotropy_order: int
    points: tuple[StationPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.isotropy_order < 1:
            raise InvalidInput(
                f"isotropy order must be >= 1, got {self.isotropy_order}"
            )
        if not self.points:
            raise InvalidInput("a station needs at least one domain point")
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            raise InvalidInput(f"duplicate point labels in station: {labels}")
        for p in self.points:
            if p.orbit.group_order != self.isotropy_order:
                raise InvalidInput(
                    f"orbit at {p.label!r} lives in a group of order "
                    f"{p.orbit.group_order}, station isotropy is {self.isotropy_order}"
                )
            if p.order != p.germ.m:
                raise InvalidInput(
                    f"domain point {p.label!r} has order {p.order} but its germ "
                    f"has stabilizer order {p.germ.m}"
                )

    def point(self, label: str) -> StationPoint:
        for p in self.points:
            if p.label == label:
                return p
        raise InvalidInput(f"no point labeled {label!r} in station {self.ambient_point!r}")

    def to_json(self) -> dict:
        return {
            "ambient_point": self.ambient_point,
            "isotropy_order": self.isotropy_order,
            "points": [p.to_json() for p in self.points],
        }


def station(ambient_point: str, isotropy_order: int, points) -> Station:
    """Build a station from (label, germ) pairs, generating each point's
    branch orbit; the domain point order is the germ's stabilizer order."""
    built = tuple(
        StationPoint(label=label, order=germ.m, orbit=germ_orbit(germ))
        for label, germ in points
    )
    return Station(ambient_point=ambient_point, isotropy_order=isotropy_order, points=built)


@dataclass(frozen=True)
class RegularDoublePoint:
    """Two domain points meeting at a trivial-isotropy ambient point,
    each carrying a single branch germ (the node shortcut)."""

    labels: tuple[str, str]
    germs: tuple[CurveGerm, CurveGerm]

    def __post_init__(self):
        if len(self.labels) != 2 or self.labels[0] == self.labels[1]:
            raise InvalidInput("a double point needs two distinct labels")
        for g in self.germs:
            if g.group.a != 1:
                raise InvalidInput(
                    "regular double points carry trivial-isotropy germs; "
                    "use a station for singular ambient points"
                )

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "germs": [g.to_json() for g in self.germs],
        }

    @staticmethod
    def from_json(data: dict) -> "RegularDoublePoint":
        return RegularDoublePoint(
            labels=tuple(data["labels"]),
            germs=tuple(CurveGerm.from_json(g) for g in data["germs"]),
        )


@dataclass(frozen=True)
class CurveConfig:
    """The combinatorial shadow of one parametrized curve."""

    ambient: AmbientModel
    domain: OrbifoldSurface
    curve_class: CurveClass
    stations: tuple[Station, ...] = ()
    regular_double_points: tuple[RegularDoublePoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "stations", tuple(self.stations))
        object.__setattr__(
            self, "regular_double_points", tuple(self.regular_double_points)
        )
        if len(self.curve_class.coords) != self.ambient.h2_rank:
            raise InvalidInput(
                f"class has {len(self.curve_class.coords)} coordinates, "
                f"ambient rank is {self.ambient.h2_rank}"
            )
        if self.curve_class.multiplicity != self.domain.m_sigma:
            raise InvalidInput(
                f"curve multiplicity {self.curve_class.multiplicity} must equal "
                f"the domain surface multiplicity {self.domain.m_sigma}"
            )
        for s in self.stations:
            stype = self.ambient.point_type(s.ambient_point)
            if s.isotropy_order != stype.order:
                raise InvalidInput(
                    f"station at {s.ambient_point!r} declares isotropy "
                    f"{s.isotropy_order}, ambient point has order {stype.order}"
                )
            for p in s.points:
                if p.germ.group != stype:
                    raise InvalidInput(
                        f"germ at {p.label!r} lives in chart {p.germ.group.to_json()}, "
                        f"ambient point {s.ambient_point!r} has type {stype.to_json()}"
                    )
        # the domain's orbifold points must be covered exactly once
        need = sorted(self.domain.orders)
        have = sorted(
            p.order for s in self.stations for p in s.points if p.order > 1
        )
        if need != have:
            raise InvalidInput(
                f"station points of orders {have} do not match the domain "
                f"orbifold points {need}"
            )
        labels = [p.label for s in self.stations for p in s.points]
        labels += [lab for d in self.regular_double_points for lab in d.labels]
        if len(set(labels)) != len(labels):
            raise InvalidInput(f"domain point labels must be unique: {labels}")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "ambient": self.ambient.to_json(),
            "domain": self.domain.to_json(),
            "class": self.curve_class.to_json(),
            "stations": [s.to_json() for s in self.stations],
            "regular_double_points": [d.to_json() for d in self.regular_double_points],
        }

    @staticmethod
    def from_json(data: dict) -> "CurveConfig":
        if not isinstance(data, dict):
            raise InvalidInput(f"config must be an object, got {data!r}")
        schema = data.get("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise InvalidInput(f"unsupported schema version {schema!r}")
        stations = []
        for s in data.get("stations", ()):
            points = [
                (p["label"], CurveGerm.from_json(p["germ"])) for p in s["points"]
            ]
            st = station(s["ambient_point"], s["isotropy_order"], points)
            declared = [p.get("order") for p in s["points"]]
            for built, want in zip(st.points, declared):
                if want is not None and built.order != want:
                    raise InvalidInput(
                        f"point {built.label!r} declares order {want}, germ "
                        f"stabilizer gives {built.order}"
                    )
            stations.append(st)
        return CurveConfig(
            ambient=AmbientModel.from_json(data["ambient"]),
            domain=OrbifoldSurface.from_json(data["domain"]),
            curve_class=CurveClass.from_json(data["class"]),
            stations=tuple(stations),
            regular_double_points=tuple(
                RegularDoublePoint.from_json(d)
                for d in data.get("regular_double_points", ())
            ),
        )


def load_config(path: str) -> CurveConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return CurveConfig.from_json(json.load(fh))


def with_precision(config: CurveConfig, trunc: int) -> CurveConfig:
    """Rebuild every germ of the configuration at the given series
    truncation.  Raising the truncation treats the stored terms as
    exact polynomial data, which is what file-loaded configs are."""
    stations = tuple(
        station(
            s.ambient_point,
            s.isotropy_order,
            [(p.label, p.germ.with_truncation(trunc)) for p in s.points],
        )
        for s in config.stations
    )
    doubles = tuple(
        RegularDoublePoint(
            d.labels, tuple(g.with_truncation(trunc) for g in d.germs)
        )
        for d in config.regular_double_points
    )
    return CurveConfig(
        ambient=config.ambient,
        domain=config.domain,
        curve_class=config.curve_class,
        stations=stations,
        regular_double_points=doubles,
    )


def config_truncation(config: CurveConfig) -> int | None:
    """The smallest series truncation among the germs, or None when the
    configuration carries no germs."""
    truncs = [p.germ.truncation() for s in config.stations for p in s.points]
    truncs += [g.truncation() for d in config.regular_double_points for g in d.germs]
    return min(truncs) if truncs else None


def algebraic_intersection(c1: CurveConfig, c2: CurveConfig) -> Fraction:
    """(m_C m_C')^{-1} [C]^T P [C']: the pairing of the classes with the
    multiplicity normalization."""
    if c1.ambient != c2.ambient:
        raise AmbientMismatch("configurations live in different ambient models")
    total = Fraction(0)
    pairing = c1.ambient.pairing
    for i, a in enumerate(c1.curve_class.coords):
        if not a:
            continue
        for j, b in enumerate(c2.curve_class.coords):
            if b:
                total += a * b * pairing[i][j]
    return total / (c1.curve_class.multiplicity * c2.curve_class.multiplicity)


def c_pairing(c: CurveConfig) -> Fraction:
    """Value of c = -c1(TX) on the curve, with the 1/m_C normalization
    of the class pairing."""
    total = Fraction(0)
    for x, a in zip(c.ambient.c1_vector, c.curve_class.coords):
        total += x * a
    return -total / c.curve_class.multiplicity


def virtual_genus(c: CurveConfig) -> Fraction:
    """g(C) = (C.C + c(C))/2 + 1/m_C."""
    cc = algebraic_intersection(c, c)
    return (cc + c_pairing(c)) / 2 + Fraction(1, c.curve_class.multiplicity)


def _orbit_cross_sum(o1: GermOrbit, o2: GermOrbit) -> int:
    """Sum of pairwise intersection multiplicities over two branch
    orbits (all ordered pairs, distinct germs assumed)."""
    total = 0
    for g1 in o1.germs:
        for g2 in o2.germs:
            total += intersection_multiplicity(g1, g2)
    return total


def local_pair_contribution(s: Station, z: str, zprime: str) -> Fraction:
    """k for an unordered pair of distinct domain points over one
    ambient point: (1/|G|) sum over both orbits of pairwise
    intersection multiplicities."""
    if z == zprime:
        raise InvalidInput("pair contribution needs two distinct labels")
    p1, p2 = s.point(z), s.point(zprime)
    return Fraction(_orbit_cross_sum(p1.orbit, p2.orbit), s.isotropy_order)


def local_point_contribution(s: Station, z: str) -> Fraction:
    """k for a single domain point z over an ambient point:
    (1/2|G|) (sum of branch deltas + sum over ordered branch pairs),
    where the pair sum's diagonal term is the branch's delta.

    With s the orbit size this is (1/2|G|)(2 s delta + cross), using
    that delta is twist-invariant; the cross sum needs the pairwise
    relative twists to be materializable over Q(i).
    """
    point = s.point(z)
    orbit = point.orbit
    size = len(orbit)
    delta = self_intersection(orbit.base)
    cross = 0
    for a in range(size):
        for b in range(size):
            if a != b:
                cross += intersection_multiplicity(orbit.germs[a], orbit.germs[b])
    return Fraction(2 * size * delta + cross, 2 * s.isotropy_order)


@dataclass(frozen=True)
class Contribution:
    """One itemized term of the adjunction right-hand side."""

    kind: str  # "domain_genus" | "pair" | "point" | "double_point"
    station: str
    labels: tuple[str, ...]
    value: Fraction

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "station": self.station,
            "labels": list(self.labels),
            "value": format_rational(self.value),
        }


@dataclass(frozen=True)
class AdjunctionReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    contributions: tuple[Contribution, ...]

    def local_total(self) -> Fraction:
        return sum(
            (c.value for c in self.contributions if c.kind != "domain_genus"),
            Fraction(0),
        )

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "holds": self.holds,
            "contributions": [c.to_json() for c in self.contributions],
        }


def adjunction_report(c: CurveConfig) -> AdjunctionReport:
    """Check g(C) = g_Sigma + sum of pair terms + sum of point terms,
    itemizing every local contribution."""
    items: list[Contribution] = [
        Contribution("domain_genus", "", (), orbifold_genus(c.domain))
    ]
    for s in c.stations:
        labels = [p.label for p in s.points]
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                items.append(
                    Contribution(
                        "pair",
                        s.ambient_point,
                        (labels[i], labels[j]),
                        local_pair_contribution(s, labels[i], labels[j]),
                    )
                )
        for lab in labels:
            items.append(
                Contribution(
                    "point", s.ambient_point, (lab,), local_point_contribution(s, lab)
                )
            )
    for d in c.regular_double_points:
        value = Fraction(intersection_multiplicity(*d.germs))
        items.append(Contribution("double_point", "", d.labels, value))
    rhs = sum((it.value for it in items), Fraction(0))
    lhs = virtual_genus(c)
    return AdjunctionReport(lhs=lhs, rhs=rhs, holds=lhs == rhs, contributions=tuple(items))


@dataclass(frozen=True)
class IntersectionReport:
    algebraic: Fraction
    local_sum: Fraction
    holds: bool
    contributions: tuple[Contribution, ...]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "algebraic": format_rational(self.algebraic),
            "local_sum": format_rational(self.local_sum),
            "holds": self.holds,
            "contributions": [c.to_json() for c in self.contributions],
        }


def infer_meetings(c1: CurveConfig, c2: CurveConfig) -> list[tuple[int, int]]:
    """Station index pairs whose ambient ids coincide (where the two
    curves can meet)."""
    out = []
    for i, s1 in enumerate(c1.stations):
        for j, s2 in enumerate(c2.stations):
            if s1.ambient_point == s2.ambient_point:
                out.append((i, j))
    return out


def intersection_report(
    c1: CurveConfig, c2: CurveConfig, meetings: list[tuple[int, int]] | None = None
) -> IntersectionReport:
    """Check C.C' = sum over meeting points of (1/|G|) sum of pairwise
    branch intersection multiplicities."""
    if c1.ambient != c2.ambient:
        raise AmbientMismatch("configurations live in different ambient models")
    if meetings is None:
        meetings = infer_meetings(c1, c2)
    items: list[Contribution] = []
    for i, j in meetings:
        s1, s2 = c1.stations[i], c2.stations[j]
        if s1.ambient_point != s2.ambient_point:
            raise InvalidInput(
                f"meeting ({i},{j}) pairs stations over different ambient "
                f"points {s1.ambient_point!r}, {s2.ambient_point!r}"
            )
        for p1 in s1.points:
            for p2 in s2.points:
                value = Fraction(
                    _orbit_cross_sum(p1.orbit, p2.orbit), s1.isotropy_order
                )
                items.append(
                    Contribution(
                        "pair", s1.ambient_point, (p1.label, p2.label), value
                    )
                )
    local_sum = sum((it.value for it in items), Fraction(0))
    algebraic = algebraic_intersection(c1, c2)
    return IntersectionReport(
        algebraic=algebraic,
        local_sum=local_sum,
        holds=algebraic == local_sum,
        contributions=tuple(items),
    )


@dataclass(frozen=True)
class EmbeddednessVerdict:
    embedded: bool
    defect: Fraction

    def __str__(self) -> str:
        if self.embedded:
            return "EmbeddedSuborbifold"
        return f"Singular(defect={format_rational(self.defect)})"

    def to_json(self) -> dict:
        return {
            "verdict": "EmbeddedSuborbifold" if self.embedded else "Singular",
            "defect": format_rational(self.defect),
        }


def embeddedness_verdict(c: CurveConfig) -> EmbeddednessVerdict:
    """EmbeddedSuborbifold when every local contribution vanishes (so
    the virtual genus equals the domain genus); otherwise the defect is
    the total local contribution rhs - g_Sigma."""
    report = adjunction_report(c)
    if not report.holds:
        raise AdjunctionViolated(
            f"adjunction fails on this configuration: lhs {report.lhs} != "
            f"rhs {report.rhs}; the input data is inconsistent"
        )
    defect = report.local_total()
    if defect < 0:
        raise AdjunctionViolated(
            f"negative local contribution total {defect}; the input data is "
            "inconsistent"
        )
    return EmbeddednessVerdict(embedded=defect == 0, defect=defect)
