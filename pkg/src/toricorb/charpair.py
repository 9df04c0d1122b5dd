"""Characteristic pairs (P, lambda) of 4-dimensional toric orbifolds.

Only the cyclic order of the facets matters, so a pair is stored as the
list of facet vectors lambda_1, ..., lambda_m (1-based in all reports,
indices taken mod m).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .exactalg import gcd_list, nu2


class InvalidPairError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class CharacteristicPair:
    facet_vectors: tuple

    def __init__(self, facet_vectors):
        vecs = tuple(tuple(int(x) for x in v) for v in facet_vectors)
        object.__setattr__(self, "facet_vectors", vecs)

    @property
    def m(self) -> int:
        return len(self.facet_vectors)

    def vec(self, i: int):
        """lambda_i with 1-based cyclic indexing."""
        return self.facet_vectors[(i - 1) % self.m]

    @classmethod
    def from_json(cls, text: str) -> "CharacteristicPair":
        data = json.loads(text)
        if not isinstance(data, dict) or "facets" not in data:
            raise ValueError('expected an object with a "facets" list')
        facets = data["facets"]
        if not isinstance(facets, list) or not all(
            isinstance(v, list) and len(v) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
            for v in facets
        ):
            raise ValueError("facets must be a list of integer pairs")
        return cls(facets)

    def to_json(self) -> str:
        return json.dumps({"facets": [list(v) for v in self.facet_vectors]})


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations


def validate(pair: CharacteristicPair) -> ValidationReport:
    report = ValidationReport()
    m = pair.m
    if m < 3:
        report.violations.append(f"need at least 3 facets, got {m}")
    for i, v in enumerate(pair.facet_vectors, start=1):
        if len(v) != 2:
            report.violations.append(f"facet {i}: not a 2-vector")
        elif math.gcd(*v) != 1:
            report.violations.append(f"facet {i}: vector {list(v)} is not primitive")
    if m >= 2 and all(len(v) == 2 for v in pair.facet_vectors):
        for i in range(1, m + 1):
            if det2(pair.vec(i), pair.vec(i + 1)) == 0:
                j = i % m + 1
                report.violations.append(f"facets {i},{j}: det(lambda_{i}, lambda_{j}) = 0")
    return report


@dataclass(frozen=True)
class OrbifoldInvariants:
    m: int
    n: int
    g: int
    r: int
    vertex_dets: tuple  # |det(lambda_{i-1}, lambda_i)| for vertex i = 1..m


def _require_valid(pair):
    report = validate(pair)
    if not report.valid:
        raise InvalidPairError(report.violations)


def pairwise_gcd(pair: CharacteristicPair) -> int:
    vecs = pair.facet_vectors
    dets = [det2(vecs[i], vecs[j])
            for i in range(len(vecs)) for j in range(i + 1, len(vecs))]
    return gcd_list(dets)


def invariants(pair: CharacteristicPair) -> OrbifoldInvariants:
    _require_valid(pair)
    m = pair.m
    g = pairwise_gcd(pair)
    _, r = nu2(g)
    vdets = tuple(abs(det2(pair.vec(i - 1), pair.vec(i))) for i in range(1, m + 1))
    return OrbifoldInvariants(m=m, n=m - 2, g=g, r=r, vertex_dets=vdets)


class AnomalyError(RuntimeError):
    """Raised when no special vertex exists for a valid pair with g even."""


def find_special_vertex(pair: CharacteristicPair) -> Optional[int]:
    """Smallest i with nu2(det(lambda_i, lambda_{i+1})) == nu2(g).

    The index i names the vertex F_i n F_{i+1}.  Returns None when no vertex
    qualifies; callers surface that as an anomaly since it should not happen
    for a valid pair.
    """
    inv = invariants(pair)
    if inv.g % 2:
        raise ValueError(f"g = {inv.g} is odd; special vertices need g even")
    target = nu2(inv.g)[0]
    for i in range(1, pair.m + 1):
        if nu2(abs(det2(pair.vec(i), pair.vec(i + 1))))[0] == target:
            return i
    return None


def analyze(pair: CharacteristicPair) -> dict:
    """Invariants plus special vertex, as a JSON-ready dict."""
    inv = invariants(pair)
    out = {
        "m": inv.m, "n": inv.n, "g": inv.g, "r": inv.r,
        "vertex_dets": list(inv.vertex_dets),
        "special_vertex": None,
    }
    if inv.g % 2 == 0:
        sv = find_special_vertex(pair)
        if sv is None:
            raise AnomalyError(f"no special vertex for {list(pair.facet_vectors)}")
        out["special_vertex"] = sv
    return out


def parse_analysis(data: dict) -> tuple:
    """Re-parse an analyze() report into (OrbifoldInvariants, special_vertex)."""
    keys = {"m", "n", "g", "r", "vertex_dets", "special_vertex"}
    if not isinstance(data, dict) or set(data) != keys:
        raise ValueError(f"expected keys {sorted(keys)}")
    inv = OrbifoldInvariants(int(data["m"]), int(data["n"]), int(data["g"]), int(data["r"]),
                             tuple(int(x) for x in data["vertex_dets"]))
    if inv.n != inv.m - 2 or len(inv.vertex_dets) != inv.m or nu2(inv.g)[1] != inv.r:
        raise ValueError("inconsistent invariants")
    sv = data["special_vertex"]
    if (sv is None) != (inv.g % 2 == 1) or (sv is not None and not 1 <= sv <= inv.m):
        raise ValueError("special_vertex inconsistent with g")
    return inv, sv


def random_valid_pair(rng, max_m=8, bound=6, require_even_g=False) -> CharacteristicPair:
    """Rejection-sample a valid pair with 3 <= m <= max_m, entries in [-bound, bound]."""
    while True:
        m = rng.randint(3, max_m)
        vecs = []
        while len(vecs) < m:
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            if math.gcd(*v) == 1:
                vecs.append(v)
        pair = CharacteristicPair(vecs)
        if not validate(pair).valid:
            continue
        if require_even_g and pairwise_gcd(pair) % 2:
            continue
        return pair
