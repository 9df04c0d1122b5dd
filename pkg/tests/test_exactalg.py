import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from toricorb.exactalg import (
    det, gcd_list, inverse_unimodular, matmul, matvec, nu2, smith_normal_form,
    solve_mod,
)


@pytest.mark.parametrize("values, expected", [
    ([2, 0, -4, 2], 2),
    ([1, -1, 1], 1),
    ([6, 15, 21], 3),
    ([0, 0], 0),
    ([0, -7], 7),
])
def test_gcd_list(values, expected):
    assert gcd_list(values) == expected


def test_gcd_list_empty():
    with pytest.raises(ValueError):
        gcd_list([])


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8), st.randoms())
def test_gcd_list_permutation_and_sign(values, rnd):
    shuffled = [v * rnd.choice([1, -1]) for v in values]
    rnd.shuffle(shuffled)
    assert gcd_list(shuffled) == gcd_list(values)


@pytest.mark.parametrize("a, expected", [(12, (4, 2)), (7, (1, 0)), (8, (8, 3)), (1, (1, 0))])
def test_nu2(a, expected):
    assert nu2(a) == expected


@pytest.mark.parametrize("a", [0, -4])
def test_nu2_rejects_nonpositive(a):
    with pytest.raises(ValueError):
        nu2(a)


def diag_of(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def check_snf(M):
    snf = smith_normal_form(M)
    assert matmul(matmul(snf.U, M), snf.V) == snf.D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    r, c = len(M), len(M[0])
    for i in range(r):
        for j in range(c):
            if i != j:
                assert snf.D[i][j] == 0
    d = diag_of(snf.D)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    return snf


def test_snf_examples():
    assert diag_of(check_snf([[2, 0], [0, 4]]).D) == [2, 4]
    assert diag_of(check_snf([[2, 1], [0, 2]]).D) == [1, 4]
    assert check_snf([[0, 0, 0], [0, 0, 0]]).D == [[0, 0, 0], [0, 0, 0]]
    assert diag_of(check_snf([[2, 0], [0, 3]]).D) == [1, 6]


def test_snf_random_matrices():
    rng = random.Random(20261016)
    for _ in range(300):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        check_snf(M)


def test_snf_deterministic():
    M = [[4, 6, 2], [3, -1, 7], [0, 5, 5]]
    assert smith_normal_form(M) == smith_normal_form(M)


def test_snf_invariant_factors_match_minor_gcds():
    # d1 * ... * dk = gcd of k x k minors (independent check)
    rng = random.Random(3)
    for _ in range(60):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        d = diag_of(smith_normal_form(M).D)
        prod = 1
        for k in range(1, min(r, c) + 1):
            minors = [det([[M[i][j] for j in cs] for i in rs])
                      for rs in itertools.combinations(range(r), k)
                      for cs in itertools.combinations(range(c), k)]
            prod *= d[k - 1]
            assert gcd_list(minors) == prod


def test_inverse_unimodular():
    A = [[2, 1], [1, 1]]
    assert matmul(A, inverse_unimodular(A)) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        inverse_unimodular([[2, 0], [0, 1]])


def test_solve_mod_examples():
    x = solve_mod([[2]], [2], 4)
    assert x is not None and (2 * x[0] - 2) % 4 == 0
    assert solve_mod([[2]], [1], 4) is None
    for m in (2, 5, 12):
        r = [3, 7, 11]
        assert solve_mod([[1, 0, 0], [0, 1, 0], [0, 0, 1]], r, m) == [v % m for v in r]


def test_solve_mod_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_mod([[1, 2]], [1, 2], 3)


def brute_solvable(M, rhs, m):
    cols = len(M[0])
    for x in itertools.product(range(m), repeat=cols):
        if all((a - b) % m == 0 for a, b in zip(matvec(M, x), rhs)):
            return True
    return False


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from([2, 3, 4, 6, 8]), st.data())
def test_solve_mod_matches_brute_force(r, c, m, data):
    M = data.draw(st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c),
                           min_size=r, max_size=r))
    rhs = data.draw(st.lists(st.integers(0, m - 1), min_size=r, max_size=r))
    x = solve_mod(M, rhs, m)
    assert (x is not None) == brute_solvable(M, rhs, m)
    if x is not None:
        assert all((a - b) % m == 0 for a, b in zip(matvec(M, x), rhs))
