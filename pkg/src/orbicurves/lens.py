"""Lens spaces, cyclic quotient singularity types, and the cobordism
congruence obstruction.

A lens space L(p, q) is the quotient of the 3-sphere by the Z_p action
(z1, z2) -> (mu z1, mu^q z2).  The cone on it is the cyclic quotient
singularity of type (p, q), whose isolated singular point has local
group Z_p acting on C^2 with weights (1, q).

The obstruction computed here answers: for which q' can the standard
singular symplectic filling machinery connect L(p, q) to L(p, q')?  The
answer is an integrality test on a rational index (see chern_index for
the index itself); this module packages the congruence arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameters
from .exact import Fraction, is_integer, mod_inverse


@dataclass(frozen=True, slots=True)
class SingularityType:
    """Cyclic quotient singularity data (a, b): Z_a acting on C^2 by
    (z1, z2) -> (mu_a z1, mu_a^b z2).  a = 1 means a regular point."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1:
            raise InvalidParameters(f"group order must be >= 1, got a={self.a}")
        if not 0 <= self.b < self.a:
            raise InvalidParameters(
                f"weight must satisfy 0 <= b < a, got (a, b)=({self.a}, {self.b})"
            )
        if self.a > 1 and self.b > 0 and math.gcd(self.a, self.b) != 1:
            raise InvalidParameters(
                f"weights of an isolated singularity must be coprime, got ({self.a}, {self.b})"
            )

    @property
    def order(self) -> int:
        return self.a

    def is_trivial(self) -> bool:
        return self.a == 1

    def to_json(self):
        return [self.a, self.b]

    @staticmethod
    def from_json(data) -> "SingularityType":
        if (
            not isinstance(data, (list, tuple))
            or len(data) != 2
            or not all(isinstance(v, int) for v in data)
        ):
            raise InvalidParameters(f"singularity type must be [a, b], got {data!r}")
        return SingularityType(data[0], data[1])


TRIVIAL_TYPE = SingularityType(1, 0)


def _check_lens_params(p: int, q: int, name: str = "q") -> None:
    if p < 2:
        raise InvalidParameters(f"lens space order must be >= 2, got p={p}")
    if not 0 < q < p:
        raise InvalidParameters(f"{name} must satisfy 0 < {name} < p, got {q}")
    if math.gcd(p, q) != 1:
        raise InvalidParameters(f"p and {name} must be coprime, got ({p}, {q})")


@dataclass(frozen=True, slots=True)
class LensSpace:
    """L(p, q) with the canonical parameter range 0 < q < p, gcd(p,q)=1."""

    p: int
    q: int

    def __post_init__(self):
        _check_lens_params(self.p, self.q)

    def cone_type(self) -> SingularityType:
        return SingularityType(self.p, self.q)


def lens_equivalent(l1: LensSpace, l2: LensSpace, oriented: bool = False) -> bool:
    """Diffeomorphism classification of lens spaces.

    Unoriented: L(p, q) ~ L(p, q') iff q' = +-q^{+-1} (mod p).
    Oriented (orientation-preserving): only q' = q^{+-1} (mod p).
    """
    if l1.p != l2.p:
        return False
    p, q, qp = l1.p, l1.q, l2.q
    candidates = {q % p, mod_inverse(q, p)}
    if not oriented:
        candidates |= {(-q) % p, (-mod_inverse(q, p)) % p}
    return qp % p in candidates


@dataclass(frozen=True, slots=True)
class CongruenceRecord:
    """Result of the cobordism congruence test for (p, q, q').

    l is the inverse of p mod p+q, r the exact integer (1 - l*p)/(p+q),
    l' the inverse of q' mod p.  caseA/caseB record integrality of the
    index with the two candidate local weight patterns at the second
    singular point; allowed means at least one case passes.
    """

    p: int
    q: int
    qprime: int
    l: int
    r: int
    lprime: int
    caseA_integral: bool
    caseB_integral: bool
    allowed: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "qprime": self.qprime,
            "l": self.l,
            "r": self.r,
            "lprime": self.lprime,
            "caseA_integral": self.caseA_integral,
            "caseB_integral": self.caseB_integral,
            "allowed": self.allowed,
        }


def cobordism_congruence(p: int, q: int, qprime: int) -> CongruenceRecord:
    """Integrality obstruction for connecting L(p, q) to L(p, q').

    The two cases correspond to the two candidate local forms of a
    holomorphic annulus limit at the second cone point: case A with
    weights (l', 1) where l'*q' = 1 (mod p), case B with weights (1, q').
    """
    _check_lens_params(p, q)
    _check_lens_params(p, qprime, name="q'")
    l = mod_inverse(p, p + q)
    num = 1 - l * p
    assert num % (p + q) == 0, "1 - l*p must be divisible by p+q"
    r = num // (p + q)
    lprime = mod_inverse(qprime, p)

    base = (
        Fraction(2 * p + q + 1, p * (p + q))
        + 2
        - Fraction(l + 1, p + q)
    )
    case_a = is_integer(base - Fraction(lprime + 1, p))
    case_b = is_integer(base - Fraction(1 + qprime, p))
    return CongruenceRecord(
        p=p,
        q=q,
        qprime=qprime,
        l=l,
        r=r,
        lprime=lprime,
        caseA_integral=case_a,
        caseB_integral=case_b,
        allowed=case_a or case_b,
    )


def allowed_q_set(p: int, q: int) -> list[int]:
    """All q' in (0, p) passing the congruence test, ascending."""
    _check_lens_params(p, q)
    out = []
    for qprime in range(1, p):
        if math.gcd(qprime, p) != 1:
            continue
        if cobordism_congruence(p, q, qprime).allowed:
            out.append(qprime)
    return out
