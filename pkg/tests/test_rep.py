import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakclifford.freealg import Element
from weakclifford.rep import (
    evaluate,
    evaluate_vectors,
    multipole_span_rank,
    spin_matrices,
    verify_spin_ideal,
)
from weakclifford.uea import casimir, multipole, multipole_words, pbw_normal_form

from conftest import rationals, words

HALF = Fraction(1, 2)
SPINS = [0, HALF, 1, Fraction(3, 2), 2, Fraction(5, 2), 3]
PAULI = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]


@pytest.mark.parametrize("s", SPINS, ids=str)
def test_construction_invariants(s):
    rep = spin_matrices(s)
    assert rep.size == 2 * s + 1
    r = rep.invariant_residuals()
    assert r["bracket"] < 1e-12 and r["casimir"] < 1e-12


def test_spin_matrices_examples():
    zero = spin_matrices(0)
    assert all(m.shape == (1, 1) and not m.any() for m in zero.matrices)
    half = spin_matrices(HALF)
    for m, sigma in zip(half.matrices, PAULI):
        assert np.allclose(m, -0.5j * sigma, atol=1e-12)
    one = spin_matrices(1)
    assert np.allclose(one.casimir(), -2 * np.eye(3), atol=1e-12)


def test_evaluate_examples():
    for s in SPINS:
        rep = spin_matrices(s)
        assert np.allclose(evaluate(Element.scalar(1), rep), rep.identity())
        assert np.allclose(evaluate(Element({(2, 1): 1, (1, 2): -1, (3,): 1}), rep), 0)
    assert np.allclose(evaluate(casimir(), spin_matrices(HALF)), -0.75 * np.eye(2))


@settings(max_examples=50)
@given(st.dictionaries(words(3, 4), rationals, max_size=4), st.sampled_from(SPINS[1:5]))
def test_evaluate_respects_normal_form(terms, s):
    x = Element(terms)
    rep = spin_matrices(s)
    assert np.max(np.abs(evaluate(pbw_normal_form(x), rep) - evaluate(x, rep)), initial=0) < 1e-10


def test_vector_matrices_satisfy_weak_relation():
    for s in (HALF, 1, Fraction(3, 2)):
        rep = spin_matrices(s)
        from weakclifford.freealg import MetricSpace
        from weakclifford.quotient import weak_relations

        for r in weak_relations(MetricSpace.euclidean(3)).generators():
            assert np.max(np.abs(evaluate_vectors(r, rep))) < 1e-12


def test_verify_spin_ideal_examples():
    for s, n in ((HALF, 2), (1, 3), (0, 1)):
        report = verify_spin_ideal(s)
        assert set(report) == {"s", "checks"}
        assert all(set(c) == {"name", "max_residual", "tolerance", "pass"} for c in report["checks"])
        assert all(c["pass"] for c in report["checks"])
        assert len(report["checks"]) == 3 + n
    names = [c["name"] for c in verify_spin_ideal(1)["checks"]]
    assert "order 3 multipoles vanish" in names and "order 2 multipoles survive" in names


@pytest.mark.parametrize("s, r", [(0, 1), (HALF, 4), (1, 9), (Fraction(3, 2), 16)], ids=str)
def test_multipole_span_rank(s, r):
    assert multipole_span_rank(s) == r


def _numeric_multipole_checks(s, k):
    rep = spin_matrices(s)
    mats = rep.matrices
    images = {w: evaluate(multipole(k, w), rep) for w in multipole_words(k)}
    worst = 0.0
    for w, M in images.items():
        eig = sum(A @ (A @ M - M @ A) - (A @ M - M @ A) @ A for A in mats) + k * (k + 1) * M
        worst = max(worst, np.max(np.abs(eig)))
        worst = max(worst, np.max(np.abs(images[tuple(sorted(w))] - M)))
    for m, n in itertools.combinations(range(k), 2):
        for w in itertools.product((1, 2, 3), repeat=k - 2):
            acc = 0
            for a in (1, 2, 3):
                full = list(w)
                full.insert(m, a)
                full.insert(n, a)
                acc = acc + images[tuple(full)]
            worst = max(worst, np.max(np.abs(acc)))
    return worst


@pytest.mark.parametrize("s", SPINS[1:], ids=str)
def test_multipole_properties_numerically(s):
    for k in range(int(2 * s + 2)):
        assert _numeric_multipole_checks(s, k) < 1e-9


def test_monopole_component_is_the_trace_part():
    from weakclifford.scalar import substitute_casimir
    from weakclifford.uea import monopole_part

    for w in itertools.chain.from_iterable(itertools.product((1, 2, 3), repeat=k) for k in range(4)):
        A = pbw_normal_form(Element({w: 1}))
        mon = monopole_part(A)
        for s in (HALF, 1, Fraction(3, 2)):
            rep = spin_matrices(s)
            rest = evaluate(A, rep) - float(substitute_casimir(mon, s)) * rep.identity()
            assert abs(np.trace(rest)) < 1e-9
