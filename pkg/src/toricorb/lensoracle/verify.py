"""Check Postnikov squares and the cohomology table of lens spaces L(b; a)."""

from __future__ import annotations

import math

from ..cellmodel import INF, DomainError
from ..exactalg import nu2
from .cochains import classify_order, generator, postnikov_square
from .cohomology import Cohomology
from .simplicial import build_lens_complex


def expected_table(b: int, s: int) -> list:
    """Orders of H^i(L(b; a); Z/2^s) for i = 0..3, b even."""
    _, r = nu2(b)
    low = 2 ** min(r, s)
    return [[2 ** s], [low], [low], [2 ** s]]


def _check_args(b, a):
    if b < 2 or b % 2:
        raise DomainError(f"b = {b} must be even")
    if math.gcd(a, b) != 1:
        raise DomainError(f"gcd(a, b) = gcd({a}, {b}) != 1")


def lens_cohomology(b: int, a: int) -> Cohomology:
    return Cohomology(build_lens_complex(b, a))


def verify_lens_proposition(b: int, a: int, s_max: int = 3, coh: Cohomology = None) -> dict:
    """Postnikov square of a generator of H^1(L; Z/2^s) for s = 1..s_max.

    Each result is "zero" or "order2" (the unique element of order two in
    the cyclic group H^3(L; Z/2^(s+1))); anything else is reported verbatim.
    Expected: order2 exactly when 2^s is the 2-part of b.
    """
    _check_args(b, a)
    _, r = nu2(b)
    if s_max < r:
        raise ValueError(f"s_max = {s_max} is below r = {r}")
    coh = coh or lens_cohomology(b, a)
    results = []
    table_ok = coh.orders(INF) == [[INF], [], [b], [INF]]
    for s in range(1, s_max + 1):
        m = 2 ** s
        table = coh.orders(m)
        table_ok &= table == expected_table(b, s)
        G = coh.group(1, m)
        if len(G.orders) != 1:
            results.append({"s": s, "value": "no-generator", "expected": _want(s, r),
                            "pass": False})
            continue
        value = classify_order(coh, postnikov_square(generator(coh, 1, m)))
        want = _want(s, r)
        results.append({"s": s, "value": value, "expected": want, "pass": value == want})
    return {"b": b, "a": a, "results": results, "cohomology_ok": table_ok,
            "pass": table_ok and all(x["pass"] for x in results)}


def _want(s, r):
    return "order2" if s == r else "zero"
