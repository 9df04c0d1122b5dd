"""Proper isomorphisms between cell models and the homotopy decision procedure.

A proper isomorphism ``phi: X' --> X`` is a compatible triple of ring
isomorphisms ``H*(X; Z/t) -> H*(X'; Z/t)`` for t in {oo, 2g, g}.  In the
cellular bases it is pinned down by

* ``S``      images of the integral classes, column j = phi(u_j),
* ``eps``    phi(v) = eps v',
* ``t, d``   phi_g(w) = t w' + sum d_i u'_i,
* ``tprime, e``  phi_2g(iota w) = iota(tprime w') + sum e_i mu'_i,

with degree-3 components canonicalised to 1 (no cup product lands there).
Composition follows the contravariant convention: for ``phi: X' --> X``
and ``phi2: X'' --> X'`` the composite ``X'' --> X`` acts as phi2 after phi.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import cellmodel as cm
from .cellmodel import INF, CellModel, CohElement, DomainError
from .exactalg import det, inverse_unimodular, matmul, matvec, transpose


def units(g: int) -> list:
    return [x for x in range(g) if math.gcd(x, g) == 1] if g > 1 else [0]


@dataclass(frozen=True)
class ProperIso:
    n: int
    g: int
    S: tuple
    eps: int
    t: int
    d: tuple
    tprime: int
    e: tuple

    def __init__(self, n, g, S, eps, t, d, tprime, e):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "g", int(g))
        object.__setattr__(self, "S", tuple(tuple(int(x) for x in row) for row in S))
        object.__setattr__(self, "eps", int(eps))
        object.__setattr__(self, "t", int(t) % g)
        object.__setattr__(self, "d", tuple(int(x) % g for x in d))
        object.__setattr__(self, "tprime", int(tprime) % g)
        object.__setattr__(self, "e", tuple(int(x) % (2 * g) for x in e))

    @classmethod
    def identity(cls, n: int, g: int) -> "ProperIso":
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(n, g, eye, 1, 1, [0] * n, 1, [0] * n)

    def to_dict(self) -> dict:
        return {"S": [list(r) for r in self.S], "eps": self.eps, "t": self.t,
                "d": list(self.d), "tprime": self.tprime, "e": list(self.e)}

    def parameter_violations(self) -> list:
        out = []
        g, n = self.g, self.n
        if len(self.S) != n or any(len(r) != n for r in self.S):
            out.append("S has the wrong shape")
            return out
        if abs(det([list(r) for r in self.S])) != 1:
            out.append("S is not invertible over Z")
        if self.eps not in (1, -1):
            out.append("eps must be +1 or -1")
        if math.gcd(self.t, g) != 1:
            out.append("t is not a unit mod g")
        if math.gcd(self.tprime, g) != 1:
            out.append("tprime is not a unit mod g")
        if (2 * (self.tprime - self.t)) % g:
            out.append("tprime != t (mod g/2): reduction 2g -> g does not commute")
        for i, (ei, di) in enumerate(zip(self.e, self.d)):
            if (ei - 2 * di) % g:
                out.append(f"e_{i + 1} != 2 d_{i + 1} (mod g)")
            if (g * ei) % (2 * g):
                out.append(f"e_{i + 1} is odd: image of iota(w) would not have order g")
        return out

    # action on cohomology classes of the source model

    def apply(self, x: CohElement, target: CellModel) -> CohElement:
        """phi_t(x) for x in H^*(X; Z/t), landing in H^*(X'; Z/t)."""
        t = x.coefficient
        if x.degree in (0, 3):
            return cm.element(target, t, x.degree, x.coords)
        if x.degree == 4:
            return cm.element(target, t, 4, [self.eps * x.coords[0]])
        if x.degree != 2:
            raise ValueError(f"no degree-{x.degree} component")
        s, alpha = x.split()
        s2 = matvec([list(r) for r in self.S], s) if self.n else []
        if t == INF:
            return cm.element(target, t, 2, s2)
        g = self.g
        if g % t == 0:
            # lift to Z/g (alpha0 = 1 on both sides), then apply phi_g
            s2 = [a + alpha * di for a, di in zip(s2, self.d)]
            return cm._from_split(target, t, s2, alpha * self.t)
        if (2 * g) % t == 0:
            # lift to Z/2g, alpha is even
            k = alpha // 2
            s2 = [a + k * ei for a, ei in zip(s2, self.e)]
            return cm._from_split(target, t, s2, alpha * self.tprime)
        raise DomainError(f"no component over Z/{t}")


def compose(phi: ProperIso, phi2: ProperIso) -> ProperIso:
    """phi: X' --> X and phi2: X'' --> X' give X'' --> X (phi2 after phi)."""
    if (phi.n, phi.g) != (phi2.n, phi2.g):
        raise ValueError("cannot compose isomorphisms of different shapes")
    n, g = phi.n, phi.g
    S1 = [list(r) for r in phi.S]
    S2 = [list(r) for r in phi2.S]
    S = matmul(S2, S1) if n else []
    d = [a + phi.t * b for a, b in zip(matvec(S2, phi.d), phi2.d)] if n else []
    e = [a + phi.tprime * b for a, b in zip(matvec(S2, phi.e), phi2.e)] if n else []
    return ProperIso(n, g, S, phi.eps * phi2.eps, phi.t * phi2.t, d,
                     phi.tprime * phi2.tprime, e)


def invert(phi: ProperIso) -> ProperIso:
    n, g = phi.n, phi.g
    Si = inverse_unimodular([list(r) for r in phi.S]) if n else []
    ti = pow(phi.t, -1, g) if g > 1 else 0
    tpi = pow(phi.tprime, -1, g) if g > 1 else 0
    d = [-x * ti for x in matvec(Si, phi.d)] if n else []
    e = [-x * tpi for x in matvec(Si, phi.e)] if n else []
    return ProperIso(n, g, Si, phi.eps, ti, d, tpi, e)


def _check_shapes(X: CellModel, X2: CellModel, iso: Optional[ProperIso] = None):
    if (X.n, X.g) != (X2.n, X2.g):
        raise ValueError(f"models differ in (n, g): {(X.n, X.g)} vs {(X2.n, X2.g)}")
    if iso is not None and (iso.n, iso.g) != (X.n, X.g):
        raise ValueError("isomorphism shape does not match the models")


def check_proper_iso(iso: ProperIso, X: CellModel, X2: CellModel) -> list:
    """Violations of phi: X2 --> X being a proper isomorphism (empty = pass)."""
    _check_shapes(X, X2, iso)
    out = iso.parameter_violations()
    if out:
        return out
    n, g = X.n, X.g
    S = [list(r) for r in iso.S]
    if n:
        lhs = matmul(matmul(transpose(S), X2.sym), S)
        rhs = [[iso.eps * v for v in row] for row in X.sym]
        if lhs != rhs:
            out.append(f"integral cup products: S^T M' S = {lhs} != eps M = {rhs}")
    names = {}
    for t in (g, 2 * g):
        bs = cm.basis(X, t)
        for i, x in enumerate(bs):
            names[(t, i)] = f"u{i + 1}" if i < n else "w"
        for i, j in itertools.combinations_with_replacement(range(len(bs)), 2):
            x, y = bs[i], bs[j]
            got = cm.cup(X2, iso.apply(x, X2), iso.apply(y, X2))
            want = iso.apply(cm.cup(X, x, y), X2)
            if got != want:
                out.append(f"Z/{t} product ({names[(t, i)]}, {names[(t, j)]}): "
                           f"{got.coords[0]} != {want.coords[0]}")
    for frm, to in ((INF, 2 * g), (2 * g, g)):
        for x in cm.basis(X, frm):
            if iso.apply(cm.reduce(X, x, to), X2) != cm.reduce(X2, iso.apply(x, X2), to):
                out.append(f"reduction Z/{frm} -> Z/{to} does not commute")
    return out


def _integral_solutions(X, X2, eps, bound):
    """Matrices S with entries in [-bound, bound], S^T M' S = eps M, det S = +-1."""
    n = X.n
    if n == 0:
        yield []
        return
    vals = [1, -1] if n == 1 else range(-bound, bound + 1)
    M, M2 = X.sym, X2.sym
    vectors = list(itertools.product(vals, repeat=n))

    def form(x, y):
        return sum(x[i] * M2[i][k] * y[k] for i in range(n) for k in range(n))

    cols_by_j = [[v for v in vectors if form(v, v) == eps * M[j][j]] for j in range(n)]

    def extend(cols):
        j = len(cols)
        if j == n:
            S = [[cols[k][i] for k in range(n)] for i in range(n)]
            if abs(det(S)) == 1:
                yield S
            return
        for v in cols_by_j[j]:
            if all(form(cols[k], v) == eps * M[k][j] for k in range(j)):
                yield from extend(cols + [v])

    yield from extend([])


def enumerate_proper_isos(X: CellModel, X2: CellModel, bound: int = 3) -> Iterator[ProperIso]:
    """Every proper isomorphism X2 --> X with S-entries bounded by ``bound``.

    For n <= 1 the integral part ranges over {+-1}, so the stream is exhaustive.
    """
    _check_shapes(X, X2)
    n, g = X.n, X.g
    for eps in (1, -1):
        for S in _integral_solutions(X, X2, eps, bound):
            for t in units(g):
                for d in itertools.product(range(g), repeat=n):
                    head = ProperIso(n, g, S, eps, t, d, t, [2 * x for x in d])
                    if not _mod_g_ok(head, X, X2):
                        continue
                    for tp in units(g):
                        if (2 * (tp - t)) % g:
                            continue
                        lifts = [[(2 * x) % g + k * g for k in range(2)] for x in d]
                        for e in itertools.product(*lifts):
                            iso = ProperIso(n, g, S, eps, t, d, tp, e)
                            if not check_proper_iso(iso, X, X2):
                                yield iso


def _mod_g_ok(iso, X, X2) -> bool:
    g = X.g
    bs = cm.basis(X, g)
    for x, y in itertools.combinations_with_replacement(bs, 2):
        if cm.cup(X2, iso.apply(x, X2), iso.apply(y, X2)) != iso.apply(cm.cup(X, x, y), X2):
            return False
    return True


def commutator(X: CellModel, X2: CellModel, iso: ProperIso, x: CohElement) -> CohElement:
    """[P_r, phi](x) = P_r(phi_2^r x) - phi_2^(r+1)(P_r x), in H^4(X'; Z/2^(r+1))."""
    return cm.pontryagin(X2, iso.apply(x, X2)) - iso.apply(cm.pontryagin(X, x), X2)


def commutator_on_w(X: CellModel, X2: CellModel, iso: ProperIso) -> int:
    if X.g % 2:
        raise DomainError(f"g = {X.g} is odd; there is no Pontryagin square to commute with")
    return commutator(X, X2, iso, cm.w(X, X.two_r)).coords[0]


@dataclass
class Verdict:
    properly_isomorphic: bool
    homotopy_equivalent: bool
    complete: bool
    witness: Optional[ProperIso] = None

    def to_dict(self) -> dict:
        return {"properly_isomorphic": self.properly_isomorphic,
                "homotopy_equivalent": self.homotopy_equivalent,
                "complete": self.complete,
                "witness": self.witness.to_dict() if self.witness else None}


def decide(X: CellModel, X2: CellModel, bound: int = 3) -> Verdict:
    _check_shapes(X, X2)
    first = None
    for iso in enumerate_proper_isos(X, X2, bound):
        if first is None:
            first = iso
        if X.g % 2 or commutator_on_w(X, X2, iso) == 0:
            return Verdict(True, True, True, iso)
    return Verdict(first is not None, False, X.n <= 1, first)


# classification

def iso_parameters(n: int, g: int, bound: int = 3) -> list:
    """All parameter tuples satisfying the non-ring constraints, S-entries bounded."""
    vals = [1, -1] if n == 1 else range(-bound, bound + 1)
    mats = [S for S in ([list(c[i * n:(i + 1) * n]) for i in range(n)]
                        for c in itertools.product(vals, repeat=n * n))
            if n == 0 or abs(det(S)) == 1]
    out = []
    for S in mats:
        for eps in (1, -1):
            for t in units(g):
                for d in itertools.product(range(g), repeat=n):
                    for tp in units(g):
                        if (2 * (tp - t)) % g:
                            continue
                        lifts = [[(2 * x) % g + k * g for k in range(2)
                                  if ((2 * x) % g + k * g) % 2 == 0] for x in d]
                        for e in itertools.product(*lifts):
                            out.append(ProperIso(n, g, S, eps, t, d, tp, e))
    return out


def pullback(X2: CellModel, iso: ProperIso):
    """Data (A, b, c mod g) of the model X making iso: X2 --> X proper, or None.

    The Z and Z/g ring conditions determine A, b and c mod g; the Z/2g
    conditions are then constraints that may fail.
    """
    n, g = X2.n, X2.g
    S = [list(r) for r in iso.S]
    eps = iso.eps
    M2 = X2.sym
    M = [[eps * v for v in row] for row in matmul(matmul(transpose(S), M2), S)] if n else []
    Md = [sum(M2[i][k] * iso.d[k] for k in range(n)) for i in range(n)]
    b = [eps * sum(S[i][j] * (iso.t * X2.b[i] + Md[i]) for i in range(n)) % g
         for j in range(n)]
    c_g = eps * (iso.t ** 2 * X2.c + 2 * iso.t * sum(di * bi for di, bi in zip(iso.d, X2.b))
                 + sum(iso.d[i] * Md[i] for i in range(n))) % g
    # Z/2g: mu_j . iota(w) and iota(w)^2
    Me = [sum(M2[i][k] * iso.e[k] for k in range(n)) for i in range(n)]
    for j in range(n):
        lhs = sum(S[i][j] * (Me[i] + 2 * iso.tprime * X2.b[i]) for i in range(n))
        if (lhs - 2 * eps * b[j]) % (2 * g):
            return None
    lhs = (sum(iso.e[i] * Me[i] for i in range(n))
           + 4 * iso.tprime * sum(ei * bi for ei, bi in zip(iso.e, X2.b))
           + 4 * iso.tprime ** 2 * X2.c)
    if (lhs - 4 * eps * c_g) % (2 * g):
        return None
    A = [[M[j][k] if k >= j else 0 for k in range(n)] for j in range(n)]
    return A, b, c_g


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        a, b = self.find(i), self.find(j)
        if a != b:
            # smaller index (lexicographically smaller model) stays root
            if b < a:
                a, b = b, a
            self.parent[b] = a

    def classes(self):
        groups = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return sorted(groups.values())


@dataclass
class ClassificationReport:
    models: list
    pi_classes: list  # lists of indices into models
    he_classes: list
    h_values: list  # per pi class
    complete: bool = True
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.models[0].n, "g": self.models[0].g,
            "models": [m.to_dict() for m in self.models],
            "pi_classes": self.pi_classes,
            "he_classes": self.he_classes,
            "h_values": self.h_values,
            "max_h": max(self.h_values),
            "complete": self.complete,
            "theorem_violations": self.violations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        """Re-parse the output of to_dict, checking its internal consistency."""
        models = [CellModel.from_dict(m) for m in data["models"]]
        rep = cls(models, [list(c) for c in data["pi_classes"]],
                  [list(c) for c in data["he_classes"]], list(data["h_values"]),
                  bool(data["complete"]), list(data["theorem_violations"]))
        for parts in (rep.pi_classes, rep.he_classes):
            if sorted(i for c in parts for i in c) != list(range(len(models))):
                raise ValueError("classes do not partition the models")
        if len(rep.h_values) != len(rep.pi_classes) or data["max_h"] != max(rep.h_values):
            raise ValueError("h values inconsistent with the classes")
        return rep

    def pi_class_of(self, model: CellModel) -> int:
        i = self.models.index(model)
        return next(k for k, cls in enumerate(self.pi_classes) if i in cls)


def _pullback_rank1(a2, b2, c2, g, S, eps, t, d, tp, e):
    """pullback() specialised to n = 1 on plain integers."""
    a = eps * a2
    b = eps * S * (t * b2 + a2 * d) % g
    c_g = eps * (t * t * c2 + 2 * t * d * b2 + d * d * a2) % g
    g2 = 2 * g
    if (S * (e * a2 + 2 * tp * b2) - 2 * eps * b) % g2:
        return None
    if (e * e * a2 + 4 * tp * e * b2 + 4 * tp * tp * c2 - 4 * eps * c_g) % g2:
        return None
    return a, b, c_g


def proper_iso_triples(models: list, bound: int = 3):
    """Yield (i, j, iso) with iso: models[j] --> models[i] proper.

    Every proper isomorphism into a family member is produced by pulling the
    member's structure back along each admissible parameter tuple; the
    pulled-back data is then looked up in the family.
    """
    index = {}
    for i, X in enumerate(models):
        index.setdefault((X.A, X.b, X.c % X.g), []).append(i)
    n = models[0].n
    params = iso_parameters(n, models[0].g, bound)
    for j, X2 in enumerate(models):
        for iso in params:
            if n == 1:
                data = _pullback_rank1(X2.A[0][0], X2.b[0], X2.c, X2.g, iso.S[0][0],
                                       iso.eps, iso.t, iso.d[0], iso.tprime, iso.e[0])
                if data is None:
                    continue
                key = (((data[0],),), (data[1],), data[2])
            else:
                data = pullback(X2, iso)
                if data is None:
                    continue
                A, b, c_g = data
                key = (tuple(tuple(r) for r in A), tuple(b), c_g)
            for i in index.get(key, ()):
                yield i, j, iso


def _commutator_w_fast(X, X2, iso) -> int:
    if X.n == 1:
        q2 = 2 * X.two_r
        a2, b2 = X2.A[0][0], X2.b[0]
        d, t = iso.d[0], iso.t
        return (d * d * a2 + t * t * X2.c + 2 * d * t * b2 - iso.eps * X.c) % q2
    return commutator_on_w(X, X2, iso)


def classify(family: list, bound: int = 3, method: str = "auto") -> ClassificationReport:
    if not family:
        raise ValueError("empty family")
    n, g = family[0].n, family[0].g
    if any((X.n, X.g) != (n, g) for X in family):
        raise ValueError("all models must share (n, g)")
    models = sorted(set(family), key=CellModel.key)
    pi = _UnionFind(len(models))
    he = _UnionFind(len(models))
    complete = True
    if method == "auto":
        method = "orbit" if n <= 1 else "pairwise"
    if method == "orbit":
        for i, j, iso in proper_iso_triples(models, bound):
            pi.union(i, j)
            if g % 2 or _commutator_w_fast(models[i], models[j], iso) == 0:
                he.union(i, j)
    elif method == "pairwise":
        for i, j in itertools.combinations(range(len(models)), 2):
            if he.find(i) == he.find(j):
                continue
            v = decide(models[i], models[j], bound)
            complete &= v.complete or v.homotopy_equivalent
            if v.properly_isomorphic:
                pi.union(i, j)
            if v.homotopy_equivalent:
                he.union(i, j)
    else:
        raise ValueError(f"unknown method {method!r}")
    pi_classes = pi.classes()
    he_classes = he.classes()
    he_root = {i: he.find(i) for i in range(len(models))}
    h_values = [len({he_root[i] for i in cls}) for cls in pi_classes]
    violations = []
    for cls, h in zip(pi_classes, h_values):
        rep = models[cls[0]].to_dict()
        if g % 2 and h != 1:
            violations.append(f"g odd but h = {h} for class of {rep}")
        if h > 2:
            violations.append(f"h = {h} > 2 for class of {rep}")
    for cls in he_classes:
        if len({pi.find(i) for i in cls}) != 1:
            violations.append("homotopy class not contained in one proper class")
    return ClassificationReport(models, pi_classes, he_classes, h_values, complete, violations)
