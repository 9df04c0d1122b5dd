"""Integral cochain complexes of ordered simplicial complexes and their cohomology.

The simplicial cochain complex is first shrunk by cancelling pairs of cells
joined by a coboundary coefficient +-1.  Each cancellation is recorded, so a
cochain on the big complex can be pushed to the small one (``push``) and a
cochain on the small one pulled back to an honest cochain on the big one
(``pull``); both are integral chain maps, mutually inverse up to homotopy.
Cohomology of the small complex then comes from Smith normal forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..cellmodel import INF
from ..exactalg import inverse_unimodular, matmul, matvec, smith_normal_form
from .simplicial import OrderedSimplicialComplex


def coboundary_rows(K: OrderedSimplicialComplex, k: int) -> list:
    """delta_k as a list over (k+1)-simplices of {k-simplex index: coefficient}."""
    rows = []
    for tau in K.simplices(k + 1):
        row = {}
        for i in range(k + 2):
            face = tau[:i] + tau[i + 1:]
            row[K.index(face)] = (-1) ** i
        rows.append(row)
    return rows


@dataclass
class _Cancellation:
    k: int
    x: int        # cancelled k-cell
    y: int        # cancelled (k+1)-cell
    unit: int     # coefficient of y in delta(x), +-1
    column: dict  # delta(x) without y
    row: dict     # coefficients of y in delta(sigma), sigma != x


class ReducedComplex:
    def __init__(self, K: OrderedSimplicialComplex):
        self.K = K
        top = K.dim
        self.alive = [set(range(K.count(k))) for k in range(top + 1)]
        self.rows = []
        self.cols = []
        for k in range(top):
            rows = coboundary_rows(K, k)
            cols = {}
            for y, row in enumerate(rows):
                for x, v in row.items():
                    cols.setdefault(x, {})[y] = v
            self.rows.append(dict(enumerate(rows)))
            self.cols.append(cols)
        self.log = []
        for k in range(top):
            self._reduce(k)
        self.basis = [sorted(a) for a in self.alive]
        self.position = [{c: i for i, c in enumerate(b)} for b in self.basis]
        self.matrices = []
        for k in range(top):
            M = [[self.rows[k].get(y, {}).get(x, 0) for x in self.basis[k]]
                 for y in self.basis[k + 1]]
            self.matrices.append(M)

    def _drop_row(self, k, y):
        for x in self.rows[k].pop(y, {}):
            self.cols[k][x].pop(y, None)

    def _drop_col(self, k, x):
        for y in self.cols[k].pop(x, {}):
            self.rows[k][y].pop(x, None)

    def _reduce(self, k):
        rows, cols = self.rows[k], self.cols[k]
        for x in sorted(cols):
            col = cols.get(x)
            if not col:
                continue
            units = [y for y, v in col.items() if v in (1, -1)]
            if not units:
                continue
            y = min(units, key=lambda y: (len(rows[y]), y))
            lam = col[y]
            column = {t: v for t, v in col.items() if t != y}
            row = {s: v for s, v in rows[y].items() if s != x}
            for t, dtx in column.items():
                r = rows[t]
                for s, dys in row.items():
                    nv = r.get(s, 0) - dtx * lam * dys
                    if nv:
                        r[s] = nv
                        cols[s][t] = nv
                    else:
                        r.pop(s, None)
                        cols[s].pop(t, None)
            self._drop_row(k, y)
            self._drop_col(k, x)
            if k > 0:
                self._drop_row(k - 1, x)
            if k + 1 < len(self.rows):
                self._drop_col(k + 1, y)
            self.alive[k].discard(x)
            self.alive[k + 1].discard(y)
            self.log.append(_Cancellation(k, x, y, lam, column, row))

    def size(self, k: int) -> int:
        return len(self.basis[k])

    def push(self, k: int, values, m=INF) -> list:
        """Image of a degree-k cochain (list over k-simplices) in the small complex."""
        c = dict(enumerate(values))
        for op in self.log:
            if op.k + 1 == k:
                cy = c.pop(op.y, 0)
                if cy:
                    for t, v in op.column.items():
                        c[t] = c.get(t, 0) - v * op.unit * cy
            elif op.k == k:
                c.pop(op.x, None)
        out = [c.get(i, 0) for i in self.basis[k]]
        return out if m == INF else [v % m for v in out]

    def pull(self, k: int, vector, m=INF) -> list:
        """A cochain on the simplicial complex representing a small-complex cochain."""
        c = {i: v for i, v in zip(self.basis[k], vector)}
        for op in reversed(self.log):
            if op.k == k:
                c[op.x] = -op.unit * sum(v * c.get(s, 0) for s, v in op.row.items())
        out = [c.get(i, 0) for i in range(self.K.count(k))]
        return out if m == INF else [v % m for v in out]


def _smith(M, rows, cols):
    if rows == 0 or cols == 0:
        return [[int(i == j) for j in range(rows)] for i in range(rows)], [], \
               [[int(i == j) for j in range(cols)] for i in range(cols)]
    snf = smith_normal_form(M)
    return snf.U, [x for x in snf.invariant_factors if x], snf.V


def _gcd_mod(d, m):
    return d if m == INF else math.gcd(d, m)


@dataclass
class _Summand:
    order: object       # int or INF
    generator: list     # small-complex vector
    part: str           # "torsion" or "free"
    index: int
    step: int


class CohomologyGroup:
    """H^k(K; Z/m) with generators and a coordinate map."""

    def __init__(self, R: ReducedComplex, k: int, m=INF):
        self.R, self.k, self.m = R, k, m
        n_k = R.size(k)
        n_prev = R.size(k - 1) if k > 0 else 0
        n_next = R.size(k + 1) if k + 1 <= R.K.dim else 0
        D_prev = R.matrices[k - 1] if k > 0 else [[] for _ in range(n_k)]
        U, d, _ = _smith(D_prev, n_k, n_prev)
        self.U = U
        self.Uinv = inverse_unimodular(U) if n_k else []
        r1 = len(d)
        D_next = R.matrices[k] if k + 1 <= R.K.dim else []
        W = matmul(D_next, self.Uinv) if n_next and n_k else [[0] * n_k for _ in range(n_next)]
        rest = n_k - r1
        tail = [row[r1:] for row in W]
        P, e, Q = _smith(tail, n_next, rest)
        self.r1, self.Q = r1, Q
        self.Qinv = inverse_unimodular(Q) if rest else []
        self.summands = []
        for i, di in enumerate(d):
            order = _gcd_mod(di, m)
            if order != 1:
                y = [int(j == i) for j in range(n_k)]
                self.summands.append(_Summand(order, matvec(self.Uinv, y), "torsion", i, 1))
        for j in range(rest):
            ej = e[j] if j < len(e) else 0
            if m == INF:
                if ej:
                    continue
                order, step = INF, 1
            else:
                order = math.gcd(ej, m)
                step = m // order
                if order == 1:
                    continue
            z = [step * int(i == j) for i in range(rest)]
            y = [0] * r1 + matvec(Q, z)
            self.summands.append(_Summand(order, matvec(self.Uinv, y), "free", j, step))

    @property
    def orders(self) -> list:
        return [s.order for s in self.summands]

    def generator(self, i: int) -> list:
        """Representative cocycle on K of the i-th generator."""
        return self.R.pull(self.k, self.summands[i].generator, self.m)

    def coordinates_small(self, vector) -> tuple:
        y = matvec(self.U, vector) if vector else []
        z = matvec(self.Qinv, y[self.r1:]) if len(y) > self.r1 else []
        out = []
        for s in self.summands:
            v = y[s.index] if s.part == "torsion" else z[s.index]
            if v % s.step:
                raise ValueError("not a cocycle")
            v //= s.step
            out.append(v if s.order == INF else v % s.order)
        return tuple(out)

    def coordinates(self, values) -> tuple:
        """Class of a cocycle on K, in the generator coordinates."""
        return self.coordinates_small(self.R.push(self.k, values, self.m))

    def element_order(self, values):
        coords = self.coordinates(values)
        order = 1
        for c, o in zip(coords, self.orders):
            if c == 0:
                continue
            if o == INF:
                return INF
            order = math.lcm(order, o // math.gcd(c, o))
        return order


class Cohomology:
    """Cached cohomology groups of one complex."""

    def __init__(self, K: OrderedSimplicialComplex):
        self.K = K
        self.R = ReducedComplex(K)
        self._groups = {}

    def group(self, k: int, m=INF) -> CohomologyGroup:
        key = (k, m)
        if key not in self._groups:
            self._groups[key] = CohomologyGroup(self.R, k, m)
        return self._groups[key]

    def orders(self, m=INF) -> list:
        return [self.group(k, m).orders for k in range(self.K.dim + 1)]
