"""Cohomology rings of complexes (S^2 v ... v S^2 v P^3(g)) u e^4.

A model is given by its attaching-map coefficients (A, b, c).  Every
cohomology slot is computed from the minimal cellular cochain complex

    C^2 = Z<u_1..u_n> + Z<e>,   C^3 = Z<f>,   C^4 = Z<v>,   delta(e) = g f,

so with Z/t coefficients a degree-2 class is ``sum s_i u_i + alpha e`` with
``g * alpha == 0 (mod t)``.  That subgroup is cyclic, generated by
``alpha0 = t / gcd(g, t)``; the public coordinate of the torsion-linked
basis vector is ``alpha / alpha0``.  With t = g this generator is w, with
t = 2g it is iota(w), with t = 2^r it is w_r and with t = 2^(r+1) it is the
reduction of iota(w).  Reductions and inclusions act on (s, alpha) by
residue reduction and by multiplication with to/from, which gives the
bookkeeping rho(iota(w)) = 2w for free.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional

from .exactalg import check_modulus, nu2

INF = math.inf


class DomainError(ValueError):
    pass


def _tag(t):
    t = check_modulus(t)
    return INF if t is None else t


@dataclass(frozen=True)
class CellModel:
    n: int
    g: int
    A: tuple  # n x n, upper triangular
    b: tuple
    c: int

    def __init__(self, n, g, A, b, c):
        if n < 0 or g < 1:
            raise ValueError(f"need n >= 0 and g >= 1, got n={n}, g={g}")
        rows = [list(map(int, row)) for row in A]
        if len(rows) != n:
            raise ValueError(f"A must have {n} rows")
        full = []
        for j, row in enumerate(rows):
            if len(row) == n - j:  # ragged upper-triangular rows
                row = [0] * j + row
            if len(row) != n:
                raise ValueError(f"row {j} of A has the wrong length")
            if any(row[k] for k in range(j)):
                raise ValueError("A must be upper triangular")
            full.append(tuple(row))
        if len(b) != n:
            raise ValueError(f"b must have {n} entries")
        cmod = 2 * g if g % 2 == 0 else g
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "g", int(g))
        object.__setattr__(self, "A", tuple(full))
        object.__setattr__(self, "b", tuple(int(x) % g for x in b))
        object.__setattr__(self, "c", int(c) % cmod)

    @property
    def r(self) -> int:
        return nu2(self.g)[1]

    @property
    def two_r(self) -> int:
        return 1 << self.r

    @property
    def c_modulus(self) -> int:
        return 2 * self.g if self.g % 2 == 0 else self.g

    def M(self, j: int, k: int) -> int:
        """Symmetrised cup-product matrix: u_j u_k = M(j, k) v."""
        return self.A[j][k] if j <= k else self.A[k][j]

    @property
    def sym(self) -> list:
        return [[self.M(j, k) for k in range(self.n)] for j in range(self.n)]

    def key(self) -> tuple:
        return (self.n, self.g, self.A, self.b, self.c)

    def to_dict(self) -> dict:
        return {"n": self.n, "g": self.g, "A": [list(r) for r in self.A],
                "b": list(self.b), "c": self.c}

    @classmethod
    def from_dict(cls, data) -> "CellModel":
        try:
            return cls(data["n"], data["g"], data["A"], data["b"], data["c"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad model description: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "CellModel":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    # coefficient bookkeeping

    def supported(self) -> set:
        slots = {INF, self.g, 2 * self.g}
        if self.g % 2 == 0:
            slots |= {self.two_r, 2 * self.two_r}
        return slots

    def _check_slot(self, t):
        t = _tag(t)
        if t not in self.supported():
            raise DomainError(f"coefficient Z/{t} not supported for g={self.g}")
        return t

    def torsion_order(self, t) -> int:
        """Order of the torsion-linked degree-2 generator over Z/t (1 if absent)."""
        return 1 if t == INF else math.gcd(self.g, t)

    def alpha0(self, t) -> int:
        return t // math.gcd(self.g, t)


def cohomology_group(model: CellModel, coefficient, degree: int) -> list:
    """Cyclic orders of H^degree(X; Z/t); INF stands for a copy of Z."""
    t = model._check_slot(coefficient)
    tor = model.torsion_order(t)
    if degree in (0, 4):
        return [t]
    if degree == 2:
        return [t] * model.n + ([tor] if tor > 1 else [])
    if degree == 3:
        k = model.g if t == INF else tor
        return [k] if k > 1 else []
    if degree == 1 or degree > 4:
        return []
    raise DomainError(f"bad degree {degree}")


@dataclass(frozen=True)
class CohElement:
    model: CellModel
    coefficient: object
    degree: int
    coords: tuple

    def _same(self, other):
        if (self.model, self.coefficient, self.degree) != (
                other.model, other.coefficient, other.degree):
            raise ValueError("elements live in different cohomology slots")

    def __add__(self, other):
        self._same(other)
        return element(self.model, self.coefficient, self.degree,
                       [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return element(self.model, self.coefficient, self.degree,
                       [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return element(self.model, self.coefficient, self.degree,
                       [k * a for a in self.coords])

    def is_zero(self) -> bool:
        return not any(self.coords)

    # cochain-level view of a degree-2 class: (s, alpha)
    def split(self):
        m = self.model
        s = list(self.coords[:m.n])
        if self.coefficient == INF or len(self.coords) == m.n:
            return s, 0
        return s, self.coords[m.n] * m.alpha0(self.coefficient)


def element(model: CellModel, coefficient, degree: int, coords) -> CohElement:
    t = model._check_slot(coefficient)
    orders = cohomology_group(model, t, degree)
    coords = list(coords)
    if len(coords) != len(orders):
        raise ValueError(f"expected {len(orders)} coordinates, got {len(coords)}")
    coords = tuple(int(x) if o == INF else int(x) % o for x, o in zip(coords, orders))
    return CohElement(model, t, degree, coords)


def _from_split(model, t, s, alpha) -> CohElement:
    coords = list(s)
    if t != INF and model.torsion_order(t) > 1:
        a0 = model.alpha0(t)
        alpha %= t
        if alpha % a0:
            raise AssertionError("torsion coefficient outside the cocycle subgroup")
        coords.append(alpha // a0)
    return element(model, t, 2, coords)


def basis(model: CellModel, coefficient, degree: int = 2) -> list:
    t = model._check_slot(coefficient)
    k = len(cohomology_group(model, t, degree))
    return [element(model, t, degree, [int(i == j) for j in range(k)]) for i in range(k)]


def u(model, coefficient, i) -> CohElement:
    """Image of u_i in the given slot (u_i, its reduction, or mu_i)."""
    return basis(model, coefficient)[i]


def w(model, coefficient) -> CohElement:
    """Torsion-linked generator: w, iota(w), w_r, ... depending on the slot."""
    t = model._check_slot(coefficient)
    if t == INF or model.torsion_order(t) == 1:
        raise DomainError(f"no torsion-linked class over Z/{t}")
    return basis(model, t)[model.n]


def top(model, coefficient, k: int = 1) -> CohElement:
    return element(model, coefficient, 4, [k])


def cup(model: CellModel, x: CohElement, y: CohElement) -> CohElement:
    """Cup product H^2 x H^2 -> H^4 from the structure constants (A, b, c)."""
    if x.coefficient != y.coefficient:
        raise ValueError("cup of classes with different coefficients")
    if x.degree != 2 or y.degree != 2:
        raise ValueError("cup is implemented for degree-2 classes only")
    t = x.coefficient
    s, a = x.split()
    s2, a2 = y.split()
    n = model.n
    val = sum(s[j] * s2[k] * model.M(j, k) for j in range(n) for k in range(n))
    if t != INF:
        val += sum((s[l] * a2 + s2[l] * a) * model.b[l] for l in range(n))
        val += a * a2 * model.c
    return top(model, t, val)


def coefficient_map(model: CellModel, kind: str, frm, to, x: CohElement) -> CohElement:
    frm, to = model._check_slot(frm), model._check_slot(to)
    if x.coefficient != frm:
        raise ValueError("element does not live in the source slot")
    if kind == "reduce":
        if to == INF or not (frm == INF or frm % to == 0):
            raise ValueError(f"cannot reduce Z/{frm} -> Z/{to}")
        scale = 1
    elif kind == "include":
        if frm == INF or to == INF or to % frm:
            raise ValueError(f"cannot include Z/{frm} -> Z/{to}")
        scale = to // frm
    else:
        raise ValueError(f"unknown coefficient map {kind!r}")
    if x.degree == 2:
        s, a = x.split()
        return _from_split(model, to, [scale * v for v in s], scale * a)
    if x.degree == 3:
        # coordinate is the cochain value on the 3-cell
        return element(model, to, 3, [scale * v for v in x.coords])
    return element(model, to, x.degree, [scale * v for v in x.coords])


def reduce(model, x: CohElement, to) -> CohElement:
    return coefficient_map(model, "reduce", x.coefficient, to, x)


def include(model, x: CohElement, to) -> CohElement:
    return coefficient_map(model, "include", x.coefficient, to, x)


def _require_even(model):
    if model.g % 2:
        raise DomainError(f"g = {model.g} is odd; the operation needs r >= 1")


def pontryagin_value(model: CellModel, s, alpha) -> int:
    """Quadratic form behind P_r, on integer lifts; caller reduces mod 2^(r+1)."""
    n = model.n
    val = sum(s[i] * s[i] * model.M(i, i) for i in range(n)) + alpha * alpha * model.c
    cross = sum(s[j] * s[k] * model.M(j, k) for j in range(n) for k in range(j + 1, n))
    cross += sum(s[l] * alpha * model.b[l] for l in range(n))
    return val + 2 * cross


def pontryagin(model: CellModel, x: CohElement) -> CohElement:
    """P_r: H^2(X; Z/2^r) -> H^4(X; Z/2^(r+1))."""
    _require_even(model)
    if x.coefficient != model.two_r or x.degree != 2:
        raise ValueError(f"pontryagin needs a degree-2 class over Z/{model.two_r}")
    s, a = x.split()
    return top(model, 2 * model.two_r, pontryagin_value(model, s, a))


def bockstein(model: CellModel, x: CohElement) -> CohElement:
    """beta_t: H^2(X; Z/t) -> H^3(X; Z/t) for a finite slot t."""
    t = x.coefficient
    if t == INF or x.degree != 2:
        raise ValueError("bockstein needs a degree-2 class with finite coefficients")
    _, a = x.split()
    # lift, apply delta(e) = g f, divide by t
    return element(model, t, 3, [model.g * a // t] if model.torsion_order(t) > 1 else [])


def bockstein_w(model: CellModel, x: CohElement) -> CohElement:
    _require_even(model)
    if x.coefficient != model.two_r:
        raise ValueError(f"bockstein_w needs a class over Z/{model.two_r}")
    return bockstein(model, x)


def toric_witness(model: CellModel) -> Optional[CohElement]:
    """A class x over Z/2^r with odd w_r-coordinate and P_r(x) == 2^r, if any."""
    _require_even(model)
    q = model.two_r
    for s in itertools.product(range(q), repeat=model.n):
        for sw in range(1, q, 2):
            if pontryagin_value(model, s, sw) % (2 * q) == q:
                return element(model, q, 2, list(s) + [sw])
    return None


def toric_witness_exists(model: CellModel) -> bool:
    return toric_witness(model) is not None


def all_elements(model: CellModel, coefficient, degree: int = 2):
    t = model._check_slot(coefficient)
    orders = cohomology_group(model, t, degree)
    if INF in orders:
        raise ValueError("cannot enumerate an infinite group")
    for coords in itertools.product(*(range(o) for o in orders)):
        yield element(model, t, degree, coords)


def models_in_range(n: int, g: int, a_values, offdiag_values=None) -> list:
    """All models with diagonal entries in a_values, every b and every c.

    Off-diagonal entries of A range over offdiag_values (default: a_values).
    """
    if offdiag_values is None:
        offdiag_values = a_values
    cmod = 2 * g if g % 2 == 0 else g
    upper = [(j, k) for j in range(n) for k in range(j + 1, n)]
    out = []
    for diag in itertools.product(a_values, repeat=n):
        for off in itertools.product(offdiag_values, repeat=len(upper)):
            A = [[0] * n for _ in range(n)]
            for i in range(n):
                A[i][i] = diag[i]
            for (j, k), v in zip(upper, off):
                A[j][k] = v
            for b in itertools.product(range(g), repeat=n):
                for c in range(cmod):
                    out.append(CellModel(n, g, A, b, c))
    return out
