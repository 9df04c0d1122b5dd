"""Ordered simplicial complexes, barycentric subdivision and free quotients."""

from __future__ import annotations

import itertools
import math
from typing import Optional

from ..cellmodel import DomainError


class OrderedSimplicialComplex:
    """Simplices are strictly increasing vertex tuples in the global order 0 < 1 < ..."""

    def __init__(self, num_vertices: int, facets):
        self.num_vertices = int(num_vertices)
        seen = set()
        for f in facets:
            f = tuple(sorted(int(v) for v in f))
            if len(set(f)) != len(f):
                raise ValueError(f"repeated vertex in {f}")
            if f and (f[0] < 0 or f[-1] >= self.num_vertices):
                raise ValueError(f"vertex out of range in {f}")
            for k in range(1, len(f) + 1):
                seen.update(itertools.combinations(f, k))
        seen.update((v,) for v in range(self.num_vertices))
        dim = max(len(s) for s in seen) - 1 if seen else -1
        self._simplices = [sorted(s for s in seen if len(s) == d + 1) for d in range(dim + 1)]
        self._index = [{s: i for i, s in enumerate(ss)} for ss in self._simplices]

    @property
    def dim(self) -> int:
        return len(self._simplices) - 1

    def simplices(self, d: int) -> list:
        return self._simplices[d] if 0 <= d <= self.dim else []

    def count(self, d: int) -> int:
        return len(self.simplices(d))

    def index(self, simplex) -> int:
        return self._index[len(simplex) - 1][tuple(simplex)]

    def f_vector(self) -> list:
        return [len(s) for s in self._simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def check(self) -> list:
        """Structural violations (face closure, ordering, duplicates)."""
        out = []
        for d, ss in enumerate(self._simplices):
            if len(set(ss)) != len(ss):
                out.append(f"duplicate {d}-simplices")
            for s in ss:
                if any(a >= b for a, b in zip(s, s[1:])):
                    out.append(f"{s} is not strictly increasing")
                if d > 0:
                    for face in itertools.combinations(s, d):
                        if face not in self._index[d - 1]:
                            out.append(f"face {face} of {s} missing")
        return out

    def pseudomanifold_violations(self) -> list:
        """For a closed 3-manifold every triangle lies in exactly two tetrahedra."""
        if self.dim != 3:
            return [f"dimension {self.dim} != 3"]
        counts = dict.fromkeys(self.simplices(2), 0)
        for t in self.simplices(3):
            for face in itertools.combinations(t, 3):
                counts[face] += 1
        return [f"triangle {f} lies in {c} tetrahedra" for f, c in counts.items() if c != 2]


# complexes with a simplicial Z/b action, given by a vertex permutation

def _all_simplices(facets) -> list:
    seen = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            seen.update(itertools.combinations(f, k))
    return sorted(seen, key=lambda s: (len(s), s))


def barycentric_subdivision(num_vertices: int, facets, perm):
    """Subdivide; vertices become simplices, ordered by (dimension, vertex tuple).

    Returns the new vertex count, facets, and the induced vertex permutation.
    """
    simplices = _all_simplices(facets)
    index = {s: i for i, s in enumerate(simplices)}
    new_facets = []
    for f in facets:
        f = tuple(sorted(f))
        for order in itertools.permutations(f):
            chain = [index[tuple(sorted(order[:k]))] for k in range(1, len(f) + 1)]
            new_facets.append(tuple(sorted(chain)))
    new_perm = [index[tuple(sorted(perm[v] for v in s))] for s in simplices]
    return len(simplices), new_facets, new_perm


def quotient(num_vertices: int, facets, perm) -> Optional[OrderedSimplicialComplex]:
    """The orbit complex of a free cyclic action, or None when it is not simplicial.

    The quotient is accepted when the orbit map is injective on every closed
    simplex and distinct simplex orbits have distinct image vertex sets.
    Orbit vertices are ordered by their smallest preimage.
    """
    orbit = [-1] * num_vertices
    reps = []
    for v in range(num_vertices):
        if orbit[v] >= 0:
            continue
        k = len(reps)
        reps.append(v)
        x = v
        while orbit[x] < 0:
            orbit[x] = k
            x = perm[x]
    images = {}
    for s in _all_simplices(facets):
        img = tuple(sorted({orbit[v] for v in s}))
        if len(img) != len(s):
            return None
        # canonical representative of the simplex orbit
        cur, key = s, s
        while True:
            cur = tuple(sorted(perm[v] for v in cur))
            if cur == s:
                break
            key = min(key, cur)
        if images.setdefault(img, key) != key:
            return None
    return OrderedSimplicialComplex(len(reps), [tuple(sorted({orbit[v] for v in f})) for f in facets])


def _cycle_join(b: int, a: int):
    """S^3 as the join of two 3b-cycles, with the generator of the Z/b action."""
    N = 3 * b
    facets = [(i, (i + 1) % N, N + j, N + (j + 1) % N) for i in range(N) for j in range(N)]
    perm = [(i + 3) % N for i in range(N)] + [N + (j + 3 * a) % N for j in range(N)]
    return 2 * N, facets, perm


def build_lens_complex(b: int, a: int, max_subdivisions: int = 3) -> OrderedSimplicialComplex:
    """A triangulation of L(b; a) as the quotient of a subdivided S^3."""
    if b < 2:
        raise DomainError(f"need b >= 2, got {b}")
    if math.gcd(a, b) != 1:
        raise DomainError(f"gcd(a, b) = gcd({a}, {b}) != 1")
    nv, facets, perm = _cycle_join(b, a % b)
    for _ in range(max_subdivisions + 1):
        K = quotient(nv, facets, perm)
        if K is not None:
            return K
        nv, facets, perm = barycentric_subdivision(nv, facets, perm)
    raise RuntimeError(f"quotient not simplicial after {max_subdivisions} subdivisions")


def rp2() -> OrderedSimplicialComplex:
    """The six-vertex real projective plane."""
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
              (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return OrderedSimplicialComplex(6, facets)
