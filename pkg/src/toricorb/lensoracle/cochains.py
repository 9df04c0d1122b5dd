"""Cochain-level operations on ordered simplicial complexes."""

from __future__ import annotations

from dataclasses import dataclass

from ..cellmodel import INF
from .cohomology import Cohomology, coboundary_rows
from .simplicial import OrderedSimplicialComplex


@dataclass(frozen=True, eq=False)
class Cochain:
    complex: OrderedSimplicialComplex
    degree: int
    modulus: object
    values: tuple

    def __init__(self, complex, degree, modulus, values):
        values = tuple(int(v) for v in values)
        if len(values) != complex.count(degree):
            raise ValueError(f"expected {complex.count(degree)} values, got {len(values)}")
        if modulus != INF:
            values = tuple(v % modulus for v in values)
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "values", values)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.complex is other.complex
                and (self.degree, self.modulus, self.values)
                == (other.degree, other.modulus, other.values))

    def __hash__(self):
        return hash((id(self.complex), self.degree, self.modulus, self.values))

    def _like(self, values):
        return Cochain(self.complex, self.degree, self.modulus, values)

    def __add__(self, other):
        _same_slot(self, other)
        return self._like([a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        _same_slot(self, other)
        return self._like([a - b for a, b in zip(self.values, other.values)])

    def __rmul__(self, k: int):
        return self._like([k * a for a in self.values])

    def is_zero(self) -> bool:
        return not any(self.values)


def _same_slot(x, y):
    if x.complex is not y.complex or x.degree != y.degree or x.modulus != y.modulus:
        raise ValueError("cochains live in different groups")


def zero(K, degree, modulus) -> Cochain:
    return Cochain(K, degree, modulus, [0] * K.count(degree))


def _rows(K, k):
    cache = K.__dict__.setdefault("_coboundary_rows", {})
    if k not in cache:
        cache[k] = coboundary_rows(K, k)
    return cache[k]


def coboundary(x: Cochain) -> Cochain:
    K, k = x.complex, x.degree
    if k >= K.dim:
        return zero(K, k + 1, x.modulus)
    vals = x.values
    return Cochain(K, k + 1, x.modulus,
                   [sum(v * vals[s] for s, v in row.items()) for row in _rows(K, k)])


def is_cocycle(x: Cochain) -> bool:
    return coboundary(x).is_zero()


def cup_AW(x: Cochain, y: Cochain) -> Cochain:
    """Front face / back face cup product."""
    if x.complex is not y.complex:
        raise ValueError("cochains on different complexes")
    if x.modulus != y.modulus:
        raise ValueError(f"modulus mismatch: {x.modulus} vs {y.modulus}")
    K, p, q = x.complex, x.degree, y.degree
    if p + q > K.dim:
        raise ValueError(f"degree {p + q} exceeds the dimension {K.dim}")
    out = []
    for s in K.simplices(p + q):
        out.append(x.values[K.index(s[:p + 1])] * y.values[K.index(s[p:])])
    return Cochain(K, p + q, x.modulus, out)


def bockstein(x: Cochain, target) -> Cochain:
    """Connecting map of 0 -> Z/target -> Z/(target * m) -> Z/m -> 0, m = x.modulus.

    target = INF gives the integral Bockstein.  The input must be a cocycle.
    """
    m = x.modulus
    if m == INF:
        raise ValueError("bockstein needs finite coefficients")
    lift = Cochain(x.complex, x.degree, INF, x.values)
    d = coboundary(lift)
    if any(v % m for v in d.values):
        raise ValueError("bockstein of a non-cocycle")
    return Cochain(x.complex, x.degree + 1, target, [v // m for v in d.values])


def postnikov_square(x: Cochain) -> Cochain:
    """2^(s-1) iota(x u beta_s x) for a degree-1 cocycle x over Z/2^s, as a cochain mod 2^(s+1)."""
    if x.degree != 1:
        raise ValueError(f"postnikov_square needs a degree-1 class, got degree {x.degree}")
    m = x.modulus
    if m == INF or m < 2 or m & (m - 1):
        raise ValueError(f"postnikov_square needs coefficients Z/2^s, got {m}")
    if not is_cocycle(x):
        raise ValueError("postnikov_square of a non-cocycle")
    z = cup_AW(x, bockstein(x, m))
    return Cochain(x.complex, 3, 2 * m, [m * v for v in z.values])


def classify_order(coh: Cohomology, x: Cochain) -> str:
    """'zero', 'order2' or 'order<k>' for the class of the cocycle x."""
    order = coh.group(x.degree, x.modulus).element_order(list(x.values))
    if order == 1:
        return "zero"
    return f"order{order}"


def class_of(coh: Cohomology, x: Cochain) -> tuple:
    return coh.group(x.degree, x.modulus).coordinates(list(x.values))


def generator(coh: Cohomology, degree: int, modulus, i: int = 0) -> Cochain:
    G = coh.group(degree, modulus)
    return Cochain(coh.K, degree, modulus, G.generator(i))
