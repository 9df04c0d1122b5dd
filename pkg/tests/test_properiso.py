import random

import pytest

from toricorb.cellmodel import CellModel, DomainError, models_in_range
from toricorb.properiso import (
    ProperIso, check_proper_iso, classify, commutator_on_w, compose, decide,
    enumerate_proper_isos, invert, proper_iso_triples,
)

G2 = dict(n=1, g=2, A=[[0]], b=[0])
X1 = CellModel(c=1, **G2)
X3 = CellModel(c=3, **G2)
Y0 = CellModel(1, 3, [[0]], [0], 0)
Y1 = CellModel(1, 3, [[0]], [0], 1)


def ident(X):
    return ProperIso.identity(X.n, X.g)


def test_identity_passes():
    for X in [X1, Y0, CellModel(2, 4, [[2, 1], [0, -2]], [1, 3], 5)]:
        assert check_proper_iso(ident(X), X, X) == []


def test_orientation_reversal_passes_on_g2():
    iso = ProperIso(1, 2, [[1]], -1, 1, [0], 1, [0])
    assert check_proper_iso(iso, X1, X1) == []


def test_odd_g_counterexample_fails_at_w_w():
    for iso in [ident(Y0), ProperIso(1, 3, [[-1]], -1, 2, [1], 2, [2])]:
        bad = check_proper_iso(iso, Y0, Y1)
        assert any("(w, w)" in v for v in bad)
    assert list(enumerate_proper_isos(Y0, Y1)) == []


def test_shape_mismatch():
    with pytest.raises(ValueError):
        check_proper_iso(ident(X1), X1, Y0)


def test_sixteen_self_isos():
    isos = list(enumerate_proper_isos(X1, X1))
    assert len(isos) == 16
    assert len(set(isos)) == 16
    assert {(i.S[0][0], i.eps, i.t, i.d[0], i.tprime, i.e[0]) for i in isos} == {
        (S, eps, 1, d, 1, e) for S in (1, -1) for eps in (1, -1) for d in (0, 1)
        for e in (2 * d, (2 * d + 2) % 4)}
    assert ident(X1) in isos
    # inversion permutes the set
    assert {invert(i) for i in isos} == set(isos)


def test_enumeration_is_deterministic():
    X = CellModel(1, 4, [[2]], [1], 3)
    assert list(enumerate_proper_isos(X, X)) == list(enumerate_proper_isos(X, X))


def test_compose_and_invert_identities():
    X = CellModel(1, 6, [[2]], [1], 3)
    isos = list(enumerate_proper_isos(X, X))
    rng = random.Random(3)
    e = ident(X)
    for phi in rng.sample(isos, 10):
        assert compose(e, phi) == phi == compose(phi, e)
        assert compose(phi, invert(phi)) == e
        assert invert(invert(phi)) == phi
    assert invert(e) == e


def test_compose_multiplies_integral_parts():
    X = CellModel(2, 2, [[0, 1], [0, 0]], [0, 0], 0)
    isos = list(enumerate_proper_isos(X, X, bound=1))
    rng = random.Random(8)
    for _ in range(20):
        p, q = rng.choice(isos), rng.choice(isos)
        comp = compose(p, q)
        S1, S2 = p.S, q.S
        assert comp.S == tuple(tuple(sum(S2[i][k] * S1[k][j] for k in range(2))
                                     for j in range(2)) for i in range(2))
        assert check_proper_iso(comp, X, X) == []


def test_composites_and_inverses_between_models_are_proper():
    models = sorted(set(models_in_range(1, 4, [0, 2])), key=CellModel.key)
    triples = list(proper_iso_triples(models))
    rng = random.Random(2)
    out_of = {}
    for i, j, iso in triples:
        out_of.setdefault(i, []).append((j, iso))
    for i, j, phi in rng.sample(triples, 60):
        assert check_proper_iso(phi, models[i], models[j]) == []
        assert check_proper_iso(invert(phi), models[j], models[i]) == []
        k, phi2 = rng.choice(out_of[j])
        assert check_proper_iso(compose(phi, phi2), models[i], models[k]) == []


def test_commutator_examples():
    assert commutator_on_w(X1, X3, ident(X1)) == 2
    assert commutator_on_w(X1, X3, ProperIso(1, 2, [[1]], 1, 1, [1], 1, [2])) == 2
    X = CellModel(1, 4, [[2]], [3], 5)
    assert commutator_on_w(X, X, ident(X)) == 0
    with pytest.raises(DomainError):
        commutator_on_w(Y0, Y0, ident(Y0))


def test_commutator_values_over_all_isos_between_c1_and_c3():
    vals = {}
    for iso in enumerate_proper_isos(X1, X3):
        vals.setdefault(iso.eps, set()).add(commutator_on_w(X1, X3, iso))
    # reversing the top cell sends c to -c, which is 3 mod 4
    assert vals == {1: {2}, -1: {0}}


def test_decide_examples():
    assert decide(X1, X1).homotopy_equivalent
    v = decide(X1, X3)
    assert v.properly_isomorphic and v.homotopy_equivalent and v.complete
    assert v.witness.eps == -1
    v = decide(Y0, Y1)
    assert not v.properly_isomorphic and not v.homotopy_equivalent
    assert v.to_dict()["witness"] is None
    X0, X2 = CellModel(c=0, **G2), CellModel(c=2, **G2)
    v = decide(X0, X2)
    assert v.properly_isomorphic and not v.homotopy_equivalent and v.complete


def test_odd_counterexample_has_integral_isomorphism():
    # S = +-1 preserves the (zero) integral form, but no proper iso exists
    assert Y0.sym == Y1.sym == [[0]]
    assert not decide(Y0, Y1).properly_isomorphic


def test_decide_is_symmetric():
    models = sorted(set(models_in_range(1, 4, [0, 2])), key=CellModel.key)
    rng = random.Random(4)
    for _ in range(40):
        X, Y = rng.choice(models), rng.choice(models)
        a, b = decide(X, Y), decide(Y, X)
        assert (a.properly_isomorphic, a.homotopy_equivalent) == (
            b.properly_isomorphic, b.homotopy_equivalent)
        assert a.homotopy_equivalent <= a.properly_isomorphic


@pytest.mark.parametrize("g, a_values", [(2, [0, 2, -2]), (3, [0, 2, -2]),
                                         (4, [0, 2, -2]), (6, [0, 2])])
def test_orbit_classification_matches_pairwise(g, a_values):
    family = models_in_range(1, g, a_values)
    a = classify(family, method="orbit")
    b = classify(family, method="pairwise")
    assert a.pi_classes == b.pi_classes
    assert a.he_classes == b.he_classes
    assert a.violations == [] and a.complete


def test_classification_invariants():
    rep = classify(models_in_range(1, 2, [0, 2, -2]))
    pi_of = {i: k for k, cls in enumerate(rep.pi_classes) for i in cls}
    for cls in rep.he_classes:
        assert len({pi_of[i] for i in cls}) == 1
    assert all(1 <= h <= 2 for h in rep.h_values)
    assert max(rep.h_values) == 2
    assert rep.h_values[rep.pi_class_of(CellModel(c=0, **G2))] == 2
    assert rep.h_values[rep.pi_class_of(X1)] == 1
    assert rep.pi_class_of(X1) == rep.pi_class_of(X3)


def test_he_is_transitive_through_composed_witnesses():
    models = sorted(set(models_in_range(1, 4, [0, 2])), key=CellModel.key)
    rng = random.Random(6)
    he = [(i, j, iso) for i, j, iso in proper_iso_triples(models)
          if commutator_on_w(models[i], models[j], iso) == 0]
    out_of = {}
    for i, j, iso in he:
        out_of.setdefault(i, []).append((j, iso))
    for i, j, phi in rng.sample(he, 50):
        k, phi2 = rng.choice(out_of[j])
        comp = compose(phi, phi2)
        assert check_proper_iso(comp, models[i], models[k]) == []
        assert commutator_on_w(models[i], models[k], comp) == 0


def test_odd_g_classes_have_h_one():
    rep = classify([CellModel(1, 3, [[a]], [0], 0) for a in (0, 1, -1, 2, -2)])
    assert set(rep.h_values) == {1}


def test_singleton_and_errors():
    rep = classify([X1])
    assert rep.pi_classes == [[0]] and rep.h_values == [1]
    with pytest.raises(ValueError):
        classify([X1, Y0])
    with pytest.raises(ValueError):
        classify([])


def test_rank_two_search_is_bounded():
    X = CellModel(2, 2, [[0, 1], [0, 0]], [0, 0], 1)
    Y = CellModel(2, 2, [[2, 1], [0, 0]], [1, 0], 1)
    v = decide(X, Y, bound=1)
    assert v.homotopy_equivalent and v.complete
    assert check_proper_iso(v.witness, X, Y) == []
    # negative answers for n >= 2 are flagged as incomplete
    v = decide(X, CellModel(2, 2, [[2, 1], [0, 2]], [1, 0], 1), bound=1)
    assert not v.properly_isomorphic and not v.complete
