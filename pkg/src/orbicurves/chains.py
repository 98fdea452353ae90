"""Weighted simplicial chains for orbifold complexes: complexes of
finite groups over a simplicial complex, the order-weighted boundary
operator, rational homology, and the comparison map to ordinary
simplicial chains.

The boundary operator depends only on the group orders, so the working
type is WeightedComplex (simplices plus an order per simplex, subject
to divisibility along faces).  Full group data with homomorphisms and
twist cocycles is carried by GroupComplexFull and only validated.

Orientation convention: a simplex is its sorted vertex tuple; the i-th
face omits vertex i and enters the boundary with sign (-1)^i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInput, MalformedTable, UnsupportedSimplex

Simplex = tuple[int, ...]

MAX_GROUP_ORDER = 64


def _as_simplex(vertices) -> Simplex:
    vs = tuple(vertices)
    if not vs:
        raise InvalidInput("a simplex needs at least one vertex")
    if any(not isinstance(v, int) or v < 0 for v in vs):
        raise InvalidInput(f"vertices must be non-negative integers: {vs}")
    if len(set(vs)) != len(vs):
        raise InvalidInput(f"repeated vertex in simplex {vs}")
    return tuple(sorted(vs))


def faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, indexed by omitted vertex."""
    return [simplex[:i] + simplex[i + 1 :] for i in range(len(simplex))]


def _simplex_key(simplex: Simplex) -> str:
    return ",".join(str(v) for v in simplex)


def _parse_simplex_key(key: str) -> Simplex:
    try:
        return _as_simplex(int(part) for part in key.split(","))
    except ValueError as exc:
        raise InvalidInput(f"bad simplex key {key!r}") from exc


@dataclass(frozen=True)
class WeightedComplex:
    """A finite simplicial complex with a positive group order per
    simplex.  The complex is closed under faces on construction; orders
    of unlisted faces default to 1.  For every face relation tau < sigma
    the order of sigma must divide the order of tau."""

    simplices: tuple[Simplex, ...]
    orders: dict

    def __init__(self, simplices, orders=None):
        closed: set[Simplex] = set()
        for s in simplices:
            s = _as_simplex(s)
            closed.add(s)
            stack = [s]
            while stack:
                cur = stack.pop()
                if len(cur) == 1:
                    continue
                for f in faces(cur):
                    if f not in closed:
                        closed.add(f)
                        stack.append(f)
        ordered = tuple(sorted(closed, key=lambda s: (len(s), s)))
        table = {}
        for key, value in (orders or {}).items():
            s = _as_simplex(key) if not isinstance(key, str) else _parse_simplex_key(key)
            if s not in closed:
                raise InvalidInput(f"order given for missing simplex {s}")
            if not isinstance(value, int) or value < 1:
                raise InvalidInput(f"order of {s} must be a positive integer, got {value!r}")
            if value != 1:
                table[s] = value
        object.__setattr__(self, "simplices", ordered)
        object.__setattr__(self, "orders", table)
        for s in ordered:
            if len(s) == 1:
                continue
            for f in faces(s):
                if self.order(s) and self.order(f) % self.order(s) != 0:
                    raise InvalidInput(
                        f"order {self.order(s)} of {s} must divide order "
                        f"{self.order(f)} of its face {f}"
                    )

    def order(self, simplex: Simplex) -> int:
        return self.orders.get(simplex, 1)

    def __contains__(self, simplex) -> bool:
        return _as_simplex(simplex) in set(self.simplices)

    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def of_dimension(self, r: int) -> list[Simplex]:
        return [s for s in self.simplices if len(s) == r + 1]

    def underlying(self) -> "WeightedComplex":
        """The same complex with all orders 1."""
        return WeightedComplex(self.simplices)

    def to_json(self) -> dict:
        return {
            "simplices": [list(s) for s in self.simplices],
            "orders": {
                _simplex_key(s): self.orders[s] for s in sorted(self.orders)
            },
        }

    @staticmethod
    def from_json(data: dict) -> "WeightedComplex":
        if not isinstance(data, dict) or "simplices" not in data:
            raise InvalidInput("complex file must be an object with a 'simplices' list")
        return WeightedComplex(data["simplices"], data.get("orders", {}))


def load_complex(path: str) -> WeightedComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return WeightedComplex.from_json(json.load(fh))


@dataclass(frozen=True)
class Chain:
    """A finite formal sum of simplices of one dimension with rational
    coefficients.  Zero chains of any degree are allowed."""

    coeffs: dict
    degree: int

    def __init__(self, coeffs, degree=None):
        clean = {}
        for s, c in dict(coeffs).items():
            s = _as_simplex(s)
            c = Fraction(c)
            if c:
                clean[s] = c
        dims = {len(s) - 1 for s in clean}
        if len(dims) > 1:
            raise InvalidInput(f"mixed dimensions in chain: {sorted(dims)}")
        if degree is None:
            if not dims:
                raise InvalidInput("degree required for an empty chain")
            degree = dims.pop()
        elif dims and dims != {degree}:
            raise InvalidInput(
                f"chain declared degree {degree} but has simplices of dimension {dims.pop()}"
            )
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "degree", degree)

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise InvalidInput("cannot add chains of different degrees")
        merged = dict(self.coeffs)
        for s, c in other.coeffs.items():
            merged[s] = merged.get(s, Fraction(0)) + c
        return Chain(merged, self.degree)

    def scale(self, factor) -> "Chain":
        factor = Fraction(factor)
        return Chain({s: c * factor for s, c in self.coeffs.items()}, self.degree)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    @staticmethod
    def of(simplex, coeff=1) -> "Chain":
        s = _as_simplex(simplex)
        return Chain({s: Fraction(coeff)}, len(s) - 1)


def boundary(chain: Chain, w: WeightedComplex) -> Chain:
    """The weighted boundary: each simplex maps to the alternating sum
    of its faces with weights |G_face| / |G_simplex|, which the
    divisibility invariant makes positive integers."""
    have = set(w.simplices)
    out: dict[Simplex, Fraction] = {}
    for s, c in chain.coeffs.items():
        if s not in have:
            raise UnsupportedSimplex(f"simplex {s} is not in the complex")
        if len(s) == 1:
            continue
        g = w.order(s)
        for i, f in enumerate(faces(s)):
            weight = Fraction(w.order(f), g)
            term = c * weight * (-1) ** i
            out[f] = out.get(f, Fraction(0)) + term
    return Chain(out, chain.degree - 1)


def boundary_squared_is_zero(w: WeightedComplex) -> bool:
    """Exact check of the identity on every basis simplex."""
    for s in w.simplices:
        if len(s) < 3:
            continue
        twice = boundary(boundary(Chain.of(s), w), w)
        if not twice.is_zero():
            return False
    return True


def _rank(rows: list[list[Fraction]]) -> int:
    """Rank over Q by Gaussian elimination."""
    if not rows or not rows[0]:
        return 0
    m = [row[:] for row in rows]
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def _boundary_matrix(w: WeightedComplex, r: int) -> list[list[Fraction]]:
    """Matrix of the weighted boundary from r-simplices to (r-1)-simplices,
    one row per r-simplex."""
    source = w.of_dimension(r)
    target = {s: j for j, s in enumerate(w.of_dimension(r - 1))}
    rows = []
    for s in source:
        row = [Fraction(0)] * len(target)
        image = boundary(Chain.of(s), w)
        for f, c in image.coeffs.items():
            row[target[f]] = c
        rows.append(row)
    return rows


def homology_betti(w: WeightedComplex) -> list[int]:
    """Rational Betti numbers of the weighted chain complex, dimension
    by dimension, via exact elimination."""
    dim = w.dimension()
    ranks = [0] * (dim + 2)
    for r in range(1, dim + 1):
        ranks[r] = _rank(_boundary_matrix(w, r))
    betti = []
    for r in range(dim + 1):
        betti.append(len(w.of_dimension(r)) - ranks[r] - ranks[r + 1])
    return betti


def to_singular(chain: Chain, w: WeightedComplex) -> Chain:
    """The comparison map to ordinary simplicial chains: each simplex is
    rescaled by 1/|G_simplex|.  This intertwines the weighted boundary
    with the standard one."""
    have = set(w.simplices)
    out = {}
    for s, c in chain.coeffs.items():
        if s not in have:
            raise UnsupportedSimplex(f"simplex {s} is not in the complex")
        out[s] = c / w.order(s)
    return Chain(out, chain.degree)


def teardrop_complex(p: int) -> WeightedComplex:
    """The boundary of the tetrahedron on vertices 0..3 with one cone
    point of order p at vertex 0: a triangulated p-teardrop sphere."""
    if p < 1:
        raise InvalidInput(f"cone order must be >= 1, got {p}")
    triangles = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return WeightedComplex(triangles, {(0,): p})


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a multiplication table; element 0 is the
    identity.  table[i][j] is the index of the product i * j."""

    table: tuple[tuple[int, ...], ...]

    def __init__(self, table):
        rows = tuple(tuple(row) for row in table)
        n = len(rows)
        if n < 1 or n > MAX_GROUP_ORDER:
            raise MalformedTable(f"group order must be in 1..{MAX_GROUP_ORDER}, got {n}")
        for row in rows:
            if len(row) != n or any(not isinstance(x, int) or not 0 <= x < n for x in row):
                raise MalformedTable("table must be square with entries in range")
        for i in range(n):
            if rows[0][i] != i or rows[i][0] != i:
                raise MalformedTable("element 0 must be the identity")
        for i in range(n):
            if len(set(rows[i])) != n or len({rows[j][i] for j in range(n)}) != n:
                raise MalformedTable("rows and columns must be permutations")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if rows[rows[i][j]][k] != rows[i][rows[j][k]]:
                        raise MalformedTable(
                            f"multiplication is not associative at ({i},{j},{k})"
                        )
        object.__setattr__(self, "table", rows)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.table[i].index(0)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def _edge_key(big: Simplex, small: Simplex) -> str:
    return f"{_simplex_key(big)}|{_simplex_key(small)}"


def _proper_faces(simplex: Simplex) -> list[Simplex]:
    out = []
    n = len(simplex)
    for mask in range(1, 2**n - 1):
        out.append(tuple(simplex[i] for i in range(n) if mask >> i & 1))
    return out


@dataclass(frozen=True)
class GroupComplexFull:
    """Full complex-of-groups data over a weighted complex: one group
    per simplex, one homomorphism psi_a per face relation (from the
    bigger simplex's group into the face's group), and one twist element
    g_{a,b} per composable pair of face relations.

    homs keys are "big|small" simplex key pairs; twists keys are
    "big|mid|small" triples and the element lives in the smallest
    simplex's group.  Missing twists default to the identity.
    """

    complex: WeightedComplex
    groups: dict
    homs: dict
    twists: dict = field(default_factory=dict)

    def __post_init__(self):
        groups = {}
        for key, table in self.groups.items():
            s = _parse_simplex_key(key) if isinstance(key, str) else _as_simplex(key)
            groups[s] = table if isinstance(table, FiniteGroup) else FiniteGroup(table)
        object.__setattr__(self, "groups", groups)
        for s in self.complex.simplices:
            if s not in groups:
                raise MalformedTable(f"no group table for simplex {s}")
            if groups[s].order != self.complex.order(s):
                raise MalformedTable(
                    f"group at {s} has order {groups[s].order}, complex "
                    f"declares {self.complex.order(s)}"
                )

    def group(self, simplex: Simplex) -> FiniteGroup:
        return self.groups[simplex]

    def hom(self, big: Simplex, small: Simplex) -> list[int]:
        key = _edge_key(big, small)
        if key not in self.homs:
            raise MalformedTable(f"missing homomorphism for face relation {key}")
        images = list(self.homs[key])
        if len(images) != self.group(big).order or any(
            not isinstance(x, int) or not 0 <= x < self.group(small).order
            for x in images
        ):
            raise MalformedTable(f"homomorphism {key} has the wrong shape")
        return images

    def twist(self, big: Simplex, mid: Simplex, small: Simplex) -> int:
        key = f"{_simplex_key(big)}|{_simplex_key(mid)}|{_simplex_key(small)}"
        value = self.twists.get(key, 0)
        if not isinstance(value, int) or not 0 <= value < self.group(small).order:
            raise MalformedTable(f"twist {key} is out of range")
        return value


def _face_relations(w: WeightedComplex) -> list[tuple[Simplex, Simplex]]:
    have = set(w.simplices)
    out = []
    for s in w.simplices:
        if len(s) == 1:
            continue
        for f in _proper_faces(s):
            if f in have:
                out.append((s, f))
    return out


def validate_group_complex(g: GroupComplexFull) -> bool:
    """True iff every psi_a is an injective homomorphism and both twist
    cocycle identities hold on all composable pairs and triples.
    Structurally broken tables raise MalformedTable; values that merely
    fail the identities return False.
    """
    w = g.complex
    relations = _face_relations(w)
    psi = {}
    for big, small in relations:
        images = g.hom(big, small)
        gb, gs = g.group(big), g.group(small)
        if len(set(images)) != len(images):
            return False
        if images[0] != 0:
            return False
        for i in range(gb.order):
            for j in range(gb.order):
                if images[gb.mul(i, j)] != gs.mul(images[i], images[j]):
                    return False
        psi[(big, small)] = images
    rel_set = set(relations)
    chains2 = [
        (big, mid, small)
        for big, mid in relations
        for mid2, small in relations
        if mid2 == mid and (big, small) in rel_set
    ]
    for big, mid, small in chains2:
        gsm = g.group(small)
        t = g.twist(big, mid, small)
        t_inv = gsm.inverse(t)
        a = psi[(mid, small)]
        b = psi[(big, mid)]
        ab = psi[(big, small)]
        for x in range(g.group(big).order):
            lhs = gsm.mul(gsm.mul(t, ab[x]), t_inv)
            rhs = a[b[x]]
            if lhs != rhs:
                return False
    for big, mid, small in chains2:
        for mid2, tiny in relations:
            if mid2 != small or (big, tiny) not in rel_set or (mid, tiny) not in rel_set:
                continue
            gt = g.group(tiny)
            lhs = gt.mul(
                psi[(small, tiny)][g.twist(big, mid, small)],
                g.twist(big, small, tiny),
            )
            rhs = gt.mul(g.twist(mid, small, tiny), g.twist(big, mid, tiny))
            if lhs != rhs:
                return False
    return True


def cyclic_group_complex(w: WeightedComplex) -> GroupComplexFull:
    """The canonical full structure on a weighted complex: cyclic groups
    of the declared orders, index-scaling inclusions, identity twists."""
    groups = {_simplex_key(s): FiniteGroup.cyclic(w.order(s)) for s in w.simplices}
    homs = {}
    for big, small in _face_relations(w):
        nb, ns = w.order(big), w.order(small)
        step = ns // nb
        homs[_edge_key(big, small)] = [(i * step) % ns for i in range(nb)]
    return GroupComplexFull(complex=w, groups=groups, homs=homs)


def load_group_complex(path: str) -> GroupComplexFull:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InvalidInput("group complex file must be an object")
    w = WeightedComplex.from_json(data)
    if "groups" not in data:
        return cyclic_group_complex(w)
    return GroupComplexFull(
        complex=w,
        groups=data["groups"],
        homs=data.get("homs", {}),
        twists=data.get("twists", {}),
    )
