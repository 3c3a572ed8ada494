import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from weakclifford.freealg import Element, MetricSpace, concat, wedge
from weakclifford.geometry import (
    BivectorTransform,
    Endomorphism,
    adjoint_parts,
    basis_bivector,
    bivector_action,
    blade_coordinates,
    cauchy_binet,
    check_f_constraint,
    conformal_reflection,
    decompose_null,
    derivation_action,
    g_adjoint,
    j_image,
    keeps_vectors,
    lambda_metric,
    lambda_metric_via_mon,
    reflection_formula,
    scale_map,
    solve_f_constraint,
    t_map,
)
from weakclifford.quotient import build_context, weak_relations
from weakclifford.scalar import CasimirPoly, substitute_casimir

from conftest import small_rationals

E = MetricSpace.euclidean(3)
C = CasimirPoly.C()
HALF = Fraction(1, 2)
SPACES = [MetricSpace.signature(3, 0), MetricSpace.signature(1, 1), MetricSpace.signature(1, 3)]


def vectors(space):
    return st.lists(small_rationals, min_size=space.dim, max_size=space.dim).map(tuple)


def e(i, space=E):
    return tuple(Fraction(int(j == i)) for j in range(1, space.dim + 1))


# endomorphisms ------------------------------------------------------------------------
def test_g_adjoint_examples():
    I = Endomorphism.identity(E)
    assert g_adjoint(I) == I
    A = Endomorphism(E, ((1, 2, 3), (4, 5, 6), (7, 8, 10)))
    assert g_adjoint(A).matrix == tuple(zip(*A.matrix))
    for sp in SPACES:
        a, b = e(1, sp), tuple(Fraction(1) for _ in range(sp.dim))
        assert g_adjoint(t_map(sp, a, b)) == t_map(sp, a, b).scale(-1)


def test_adjoint_parts_examples():
    S = Endomorphism(E, ((1, 2, 0), (2, 3, 0), (0, 0, 1)))
    A = Endomorphism(E, ((0, 2, 0), (-2, 0, 1), (0, -1, 0)))
    assert adjoint_parts(S) == (S, Endomorphism.zero(E))
    assert adjoint_parts(A) == (Endomorphism.zero(E), A)


def test_scale_map_examples():
    assert scale_map(E, 1, e(1)) == Endomorphism.identity(E)
    assert scale_map(E, -1, e(1))(e(1)) == (-1, 0, 0)
    assert scale_map(E, 3, e(1))((1, 1, 0)) == (3, 1, 0)
    with pytest.raises(ValueError):
        scale_map(MetricSpace.signature(1, 1), 2, (1, 1))


def test_conformal_reflection_examples():
    assert conformal_reflection(E, e(1))(e(2)) == e(2)
    assert conformal_reflection(E, e(1))(e(1)) == (-1, 0, 0)
    M = MetricSpace.signature(1, 1)
    R = conformal_reflection(M, (1, 0))
    for v, w in itertools.product([(1, 2), (3, -1), (0, 5)], repeat=2):
        assert M.inner(R(v), R(w)) == M.inner(v, w)
    with pytest.raises(ValueError):
        conformal_reflection(M, (2, 2))


def test_t_map_examples():
    a = (1, 2, 3)
    assert t_map(E, a, a).is_zero()
    assert t_map(E, e(1), e(2))(e(1)) == e(2)


def test_decompose_null_examples():
    M = MetricSpace.signature(1, 1)
    assert decompose_null(M, (1, 1)) == ((1, 0), (0, 1))
    L = MetricSpace.signature(1, 3)
    assert decompose_null(L, (1, 1, 0, 0)) == ((1, 0, 0, 0), (0, 1, 0, 0))
    with pytest.raises(ValueError):
        decompose_null(M, (1, 0))
    with pytest.raises(ValueError):
        decompose_null(M, (0, 0))


NULLS = {1: [(1, 1), (2, -2), (3, 3)], 3: [(1, 1, 0, 0), (5, 3, 4, 0), (3, 0, -2, 1 + 1), (9, 4, 4, 7)]}


@pytest.mark.parametrize("space", SPACES[1:], ids=["(1,1)", "(1,3)"])
def test_decompose_null_conditions(space):
    g = space.inner
    for b in NULLS[space.dim - 1]:
        if g(b, b) != 0:
            continue
        p, n = decompose_null(space, b)
        assert g(p, p) == -g(n, n) > 0
        assert g(p, n) == 0
        assert tuple(x + y for x, y in zip(p, n)) == tuple(Fraction(x) for x in b)
        c = tuple(x - y for x, y in zip(p, n))
        assert g(c, c) == 0 and g(b, c) != 0
        for a in itertools.product((-1, 0, 2), repeat=space.dim):
            assert t_map(space, a, b) == t_map(space, a, p) + t_map(space, a, n)


@pytest.mark.parametrize("space", SPACES, ids=["(3,0)", "(1,1)", "(1,3)"])
@settings(max_examples=200)
@given(data=st.data())
def test_reflection_identities(space, data):
    g = space.inner
    a, b, c, d = (data.draw(vectors(space)) for _ in range(4))
    assume(g(a, a) and g(b, b) and g(c, c))
    R, t = (lambda x: conformal_reflection(space, x)), (lambda x, y: t_map(space, x, y))
    I = Endomorphism.identity(space)
    Ra = R(a)
    assert g_adjoint(Ra) == Ra
    for v, w in itertools.product([e(i, space) for i in range(1, space.dim + 1)], repeat=2):
        assert g(Ra(v), Ra(w)) == g(a, a) ** 2 * g(v, w)
    assert R(a) @ R(b) - R(b) @ R(a) == t(a, b).scale(-4 * g(a, b))
    plus, minus = adjoint_parts(R(a) @ R(b))
    assert minus == t(a, b).scale(-2 * g(a, b))
    assert plus == I.scale(g(a, a) * g(b, b)) + (t(a, b) @ t(a, b)).scale(2)
    plus, minus = adjoint_parts(R(a) @ t(b, c))
    assert minus == (t(R(a)(b), c) + t(b, R(a)(c))).scale(HALF)
    Rf = lambda x: reflection_formula(space, x)  # noqa: E731
    rhs = (Rf(b).scale(g(a, c) ** 2) - Rf(c).scale(g(a, b) ** 2) - Rf(t(a, b)(c)) + Rf(t(a, c)(b))).scale(HALF)
    assert plus.scale(g(b, c)) == rhs
    assert t(a, b) @ t(c, d) - t(c, d) @ t(a, b) == t(t(a, b)(c), d) + t(c, t(a, b)(d))
    assert t(b, a) == t(a, b).scale(-1)


@settings(max_examples=100)
@given(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4)), vectors(E))
def test_scale_map_conformal_only_for_unit_k(k, a):
    assume(E.inner(a, a))
    S = scale_map(E, k, a)
    gaa = E.inner(a, a)
    conformal = all(E.inner(S(v), S(w)) == gaa ** 2 * E.inner(v, w)
                    for v, w in itertools.product([e(1), e(2), e(3)], repeat=2))
    assert conformal == (k * k == 1)


# transforms and the bivector action ------------------------------------------------------
@pytest.mark.parametrize("strong", [False, True])
def test_bivector_transform_round_trip(strong):
    T = BivectorTransform(strong)
    for p in (1, 2, 3):
        assert T.roundtrip_j(p) == Element({(p,): 1})
    for a, b in ((1, 2), (1, 3), (2, 3)):
        back = Element(dim=3)
        for p, c in T.inverse(a, b).terms.items():
            back = back + T.forward(p[0]).scale(c)
        assert back == basis_bivector(a, b)
    assert j_image(3) == basis_bivector(1, 2)
    assert j_image(3, strong=True) == basis_bivector(1, 2).scale(Fraction(-1, 2))


WEAK = build_context(E, weak_relations(E), 4)


def test_bivector_action_examples():
    B = basis_bivector(1, 2)
    assert bivector_action(B, E.basis(1), WEAK) == E.basis(2)
    assert bivector_action(B, E.basis(3), WEAK).is_zero()
    for x, y in itertools.product((1, 2, 3), repeat=2):
        X, Y = E.basis(x), E.basis(y)
        lhs = bivector_action(B, concat(X, Y), WEAK)
        rhs = concat(bivector_action(B, X, WEAK), Y) + concat(X, bivector_action(B, Y, WEAK))
        assert WEAK.reduce(lhs - rhs).is_zero()
    with pytest.raises(ValueError):
        bivector_action(Element({(1, 2): 1}, 3), E.basis(1), WEAK)


def test_bivector_action_on_tensors_is_the_derivation():
    for (a, b), w in itertools.product(((1, 2), (1, 3), (2, 3)), itertools.product((1, 2, 3), repeat=2)):
        x = Element({w: 1}, 3)
        t = t_map(E, e(a), e(b))
        assert bivector_action(basis_bivector(a, b), x, WEAK) == WEAK.reduce(derivation_action(t, x))


# f-constraint ---------------------------------------------------------------------------
def test_check_f_constraint_examples():
    assert not check_f_constraint(HALF, -HALF, 0, E)
    assert not check_f_constraint(0, 0, 0, E)
    assert check_f_constraint(1, 1, 0, E)


def test_solve_f_constraint():
    sol = solve_f_constraint(E)
    assert sol.directions == ((1, -1, 0),)
    for d in sol.directions + sol.degenerate:
        assert not check_f_constraint(*d, E)
    # the other line passes the constraint but collapses V in the quotient
    assert sol.degenerate == ((1, 1, -1),)
    assert not keeps_vectors(E, (1, 1, -1))
    assert keeps_vectors(E, (HALF, -HALF, 0))


def test_no_nontrivial_solution_with_k3():
    grid = [Fraction(p, q) for p in range(-3, 4) for q in (1, 2)]
    for k3 in (1, -1, HALF, -HALF):
        for k1, k2 in itertools.product(sorted(set(grid)), repeat=2):
            if not check_f_constraint(k1, k2, k3, E):
                assert (k1, k2) == (-k3, -k3)
                assert not keeps_vectors(E, (k1, k2, k3))


def test_solve_f_constraint_four_dimensions():
    sol = solve_f_constraint(MetricSpace.euclidean(4))
    assert sol.directions == ((1, -1, 0),) and sol.degenerate == ()


# metrics on blades ------------------------------------------------------------------------
def blade(*I):
    return wedge(*[E.basis(i) for i in I]) if I else Element.scalar(1, 3)


def test_cauchy_binet_examples():
    assert cauchy_binet(E, [e(1), e(2)], [e(1), e(2)]) == 1
    assert cauchy_binet(E, [e(1), e(2)], [e(1), e(3)]) == 0
    assert cauchy_binet(E, [e(1), e(2), e(3)], [e(1), e(2), e(3)]) == 1
    assert cauchy_binet(E, [e(1)], [e(1), e(2)]) == 0
    M = MetricSpace.signature(1, 1)
    assert cauchy_binet(M, [(1, 0), (0, 1)], [(1, 0), (0, 1)]) == -1


def test_lambda_metric_examples():
    assert lambda_metric(blade(1), blade(1)) == CasimirPoly.constant(1)
    assert lambda_metric(blade(1, 2), blade(1, 2)) == C / 3
    assert lambda_metric(blade(1), blade(1, 2)).is_zero()
    assert lambda_metric(blade(1, 2, 3), blade(1, 2, 3)) == C * Fraction(-1, 3)
    assert lambda_metric(blade(), blade().scale(5)) == CasimirPoly.constant(5)
    with pytest.raises(ValueError):
        lambda_metric(Element({(1, 2): 1}, 3), blade(1, 2))


def test_lambda_metric_spin_values():
    assert substitute_casimir(lambda_metric(blade(1, 2), blade(1, 2)), HALF) == Fraction(-1, 4)
    assert substitute_casimir(lambda_metric(blade(1, 2), blade(1, 2)), 1) == Fraction(-2, 3)
    assert substitute_casimir(lambda_metric(blade(1, 2, 3), blade(1, 2, 3)), 1) == Fraction(2, 3)
    for I in ((1, 2), (1, 2, 3)):
        assert substitute_casimir(lambda_metric(blade(*I), blade(*I)), 0) == 0


BLADES = [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def test_lambda_metric_matches_mon_formulas():
    for I, K in itertools.product(BLADES, repeat=2):
        if len(I) == len(K) and len(I) in (2, 3):
            assert lambda_metric_via_mon(I, K) == lambda_metric(blade(*I), blade(*K))


def test_lambda_metric_symmetric_and_invariant():
    for I, K in itertools.product(BLADES, repeat=2):
        x, y = blade(*I), blade(*K)
        assert lambda_metric(x, y) == lambda_metric(y, x)
        for a, b in ((1, 2), (1, 3), (2, 3)):
            t = t_map(E, e(a), e(b))
            assert (lambda_metric(derivation_action(t, x), y) + lambda_metric(x, derivation_action(t, y))).is_zero()


def test_blade_coordinates():
    assert blade_coordinates(blade(1, 2) + blade(3).scale(2)) == {(1, 2): 1, (3,): 2}
