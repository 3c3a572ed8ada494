"""Named check suites over the whole library.

Each suite returns a list of :class:`Check` records.  The CLI ``verify``
command and the acceptance tests both run these, so a suite is the single
definition of what each acceptance criterion means.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .freealg import Element, MetricSpace, concat, wedge
from .geometry import (
    Endomorphism,
    adjoint_parts,
    basis_bivector,
    basis_vector,
    bivector_action,
    check_f_constraint,
    conformal_reflection,
    g_adjoint,
    j_image,
    jword_image,
    lambda_metric,
    lambda_metric_via_mon,
    pbw_image,
    scale_map,
    solve_f_constraint,
    t_map,
)
from .linalg import rank
from .quotient import (
    QuotientContext,
    algebra_family,
    build_context,
    stabilization_audit,
)
from .scalar import CasimirPoly, casimir_value, format_rational, half_integer, substitute_casimir
from .uea import (
    PBWElement,
    ad_shifted_casimir,
    casimir,
    levi_civita,
    monopole_part,
    multipole,
    multipole_words,
    pbw_normal_form,
)

E3 = MetricSpace.euclidean(3)
HALF = Fraction(1, 2)


@dataclass
class Check:
    name: str
    anchor: str
    value: object
    passed: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        if isinstance(d["value"], Fraction):
            d["value"] = format_rational(d["value"])
        return d


def _count_check(name: str, anchor: str, failures: int, total: int) -> Check:
    return Check(name, anchor, f"{total - failures}/{total} hold", failures == 0)


@lru_cache(maxsize=None)
def context(selector: str, D: int, H: int = 2) -> QuotientContext:
    family, _ = algebra_family(selector, E3)
    return build_context(E3, family, D, H)


def _coords(x: Element) -> dict:
    return dict(x.terms)


def _span_rank(elements: list[Element]) -> int:
    keys = sorted({w for x in elements for w in x.terms}, key=lambda w: (len(w), w))
    return rank([[x.coefficient(w) for w in keys] for x in elements]) if keys else 0


def _bivector_bracket(space: MetricSpace, a: int, b: int, c: int, d: int, factor: int = 1) -> Element:
    g = space.g
    n = space.dim
    return (
        basis_bivector(b, d, n).scale(g(a, c))
        - basis_bivector(a, d, n).scale(g(b, c))
        - basis_bivector(b, c, n).scale(g(a, d))
        + basis_bivector(a, c, n).scale(g(b, d))
    ).scale(factor)


def _t_vector(space: MetricSpace, a: int, b: int, v: int) -> Element:
    return space.vector(list(t_map(space, basis_vector(space, a), basis_vector(space, b))(basis_vector(space, v))))


BIVECTOR_PAIRS = ((1, 2), (1, 3), (2, 3))


# 1. multipoles --------------------------------------------------------------------
def suite_multipoles(kmax: int = 4, **_) -> list[Check]:
    anchor = "totally-symmetric and contractionless"
    checks = []
    for k in range(kmax + 1):
        words = multipole_words(k)
        table = {w: multipole(k, w) for w in words}
        eig = sum(1 for w in words if not ad_shifted_casimir(k * (k + 1), table[w]).is_zero())
        checks.append(_count_check(f"k={k}: ad(C+k(k+1)) annihilates every multipole", anchor, eig, len(words)))
        sym = 0
        total = 0
        for w in words:
            for tau in set(itertools.permutations(w)):
                total += 1
                sym += table[tau] != table[w]
        checks.append(_count_check(f"k={k}: invariant under every slot permutation", anchor, sym, total))
        bad = 0
        total = 0
        for m, n in itertools.combinations(range(k), 2):
            for w in itertools.product((1, 2, 3), repeat=k - 2):
                total += 1
                acc = PBWElement()
                for a in (1, 2, 3):
                    full = list(w)
                    full.insert(m, a)
                    full.insert(n, a)
                    acc = acc + table[tuple(full)]
                bad += not acc.is_zero()
        if k >= 2:
            checks.append(_count_check(f"k={k}: every metric trace vanishes", anchor, bad, total))
    return checks


# 2. strong Clifford, spin 1/2 -------------------------------------------------------
def suite_clifford_spin_half(**_) -> list[Check]:
    ctx = context("clifford", 4)
    J = {p: j_image(p, strong=True) for p in (1, 2, 3)}
    checks = []
    bad = 0
    for p, q in itertools.product((1, 2, 3), repeat=2):
        sym = (concat(J[p], J[q]) + concat(J[q], J[p])).scale(HALF)
        bad += ctx.reduce(sym) != Element.scalar(Fraction(-1, 4) * (p == q), 3)
    checks.append(_count_check("1/2 {J'_p, J'_q} = -1/4 delta_pq", "To see this, we note that", bad, 9))
    cas = ctx.reduce(pbw_image(casimir(), strong=True))
    checks.append(Check("sum J'_p J'_p = -3/4", "the Casimir element", str(cas.scalar_part()),
                        cas == Element.scalar(Fraction(-3, 4), 3)))
    bad = sum(not ctx.reduce(pbw_image(multipole(2, w), strong=True)).is_zero() for w in multipole_words(2))
    checks.append(_count_check("quadrupole images vanish", "imply that the spin quadrupole", bad, 9))
    bad = 0
    for p, q in itertools.product((1, 2, 3), repeat=2):
        lhs = concat(J[p], J[q]) - concat(J[q], J[p])
        rhs = sum((J[r].scale(levi_civita(p, q, r)) for r in (1, 2, 3)), Element(dim=3))
        bad += not ctx.reduce(lhs - rhs).is_zero()
    checks.append(_count_check("[J'_p, J'_q] = eps_pqr J'_r", "we may introduce the transformation", bad, 9))
    low = [ctx.reduce(jword_image(w, strong=True)) for k in range(2) for w in itertools.product((1, 2, 3), repeat=k)]
    both = low + [ctx.reduce(jword_image(w, strong=True)) for w in itertools.product((1, 2, 3), repeat=2)]
    r_low, r_all = _span_rank(low), _span_rank(both)
    checks.append(Check("unital bivector subalgebra has dimension 4 and is closed", "is algebra isomorphic to",
                        r_all, r_low == r_all == 4))
    bad = 0
    for a, b, c, d in itertools.product((1, 2, 3), repeat=4):
        B1, B2 = basis_bivector(a, b), basis_bivector(c, d)
        lhs = concat(B1, B2) - concat(B2, B1)
        bad += not ctx.reduce(lhs - _bivector_bracket(E3, a, b, c, d, -2)).is_zero()
    checks.append(_count_check("bivector bracket is -2 times the weak one", "the Lie product between bivectors",
                               bad, 81))
    bad = 0
    for a, b, c in itertools.product((1, 2, 3), repeat=3):
        B, X = basis_bivector(a, b), E3.basis(c)
        bad += ctx.reduce((concat(X, B) - concat(B, X)).scale(HALF)) != _t_vector(E3, a, b, c)
    checks.append(_count_check("1/2 (c B - B c) = t(a,b)(c)", "identical to", bad, 27))
    return checks


# 3. f-constraint ---------------------------------------------------------------------
def _random_k(rng: random.Random) -> tuple:
    return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3))


def _on_line(k: tuple, d: tuple) -> bool:
    return all(k[i] * d[j] == k[j] * d[i] for i in range(3) for j in range(3))


def suite_f_constraint(seed: int = 0, cases: int = 20, **_) -> list[Check]:
    anchor = "only non-trivial solution to"
    sol = solve_f_constraint(E3)
    checks = [Check("solution family", anchor, sol.describe(), sol.directions == ((1, -1, 0),))]
    checks.append(Check("(1/2, -1/2, 0) satisfies the constraint", anchor, "residual 0",
                        not check_f_constraint(HALF, -HALF, 0, E3)))
    checks.append(Check("(0, 0, 0) satisfies the constraint", anchor, "residual 0",
                        not check_f_constraint(0, 0, 0, E3)))
    rng = random.Random(seed)
    lines = sol.directions + sol.degenerate
    draws = []
    while len(draws) < cases:
        k = _random_k(rng)
        if any(k) and not any(_on_line(k, d) for d in lines):
            draws.append(k)
    fails = sum(1 for k in draws if not check_f_constraint(*k, E3))
    checks.append(_count_check(f"{cases} random other triples violate the constraint", anchor, fails, cases))
    return checks


# 4. reflections ----------------------------------------------------------------------
SIGNATURES = ((3, 0), (1, 1), (1, 3))


def _rand_vec(rng: random.Random, n: int) -> tuple:
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))


def _is_conformal_with(A: Endomorphism, factor: Fraction) -> bool:
    sp = A.space
    n = sp.dim
    cols = [A(basis_vector(sp, j)) for j in range(1, n + 1)]
    return all(sp.inner(cols[i], cols[j]) == factor * sp.g(i + 1, j + 1) for i in range(n) for j in range(n))


def suite_reflections(seed: int = 0, cases: int = 200, **_) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for p, q in SIGNATURES:
        sp = MetricSpace.signature(p, q)
        n = sp.dim
        g = sp.inner
        R = lambda x: conformal_reflection(sp, x)  # noqa: E731
        t = lambda x, y: t_map(sp, x, y)  # noqa: E731
        I = Endomorphism.identity(sp)
        fails = {k: 0 for k in ("iso", "only", "comm", "anti", "mixminus", "mixplus", "closure", "adj")}
        for _ in range(cases):
            while True:
                a, b, c, d = (_rand_vec(rng, n) for _ in range(4))
                if g(a, a) and g(b, b) and g(c, c):
                    break
            k = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            fails["iso"] += not _is_conformal_with(R(a), g(a, a) ** 2)
            expect = k * k == 1
            fails["only"] += _is_conformal_with(scale_map(sp, k, a), g(a, a) ** 2) != expect
            fails["comm"] += (R(a) @ R(b) - R(b) @ R(a)) != t(a, b).scale(-4 * g(a, b))
            plus, minus = adjoint_parts(R(a) @ R(b))
            fails["anti"] += plus != I.scale(g(a, a) * g(b, b)) + (t(a, b) @ t(a, b)).scale(2) \
                or minus != t(a, b).scale(-2 * g(a, b))
            plus, minus = adjoint_parts(R(a) @ t(b, c))
            fails["mixminus"] += minus != (t(R(a)(b), c) + t(b, R(a)(c))).scale(HALF)
            Rf = lambda x: I.scale(g(x, x)) - Endomorphism.from_function(  # noqa: E731
                sp, lambda v: tuple(2 * g(x, v) * xi for xi in x))
            rhs = (Rf(b).scale(g(a, c) ** 2) - Rf(c).scale(g(a, b) ** 2) - Rf(t(a, b)(c)) + Rf(t(a, c)(b))).scale(HALF)
            fails["mixplus"] += plus.scale(g(b, c)) != rhs
            lhs = t(a, b) @ t(c, d) - t(c, d) @ t(a, b)
            fails["closure"] += lhs != t(t(a, b)(c), d) + t(c, t(a, b)(d))
            fails["adj"] += g_adjoint(t(a, b)) != t(a, b).scale(-1) or g_adjoint(R(a)) != R(a)
        sig = f"({p},{q})"
        checks += [
            _count_check(f"{sig} R(a) scales g by g(a,a)^2", "precisely when", fails["iso"], cases),
            _count_check(f"{sig} S(k,a) conformal exactly for k = +-1", "precisely when", fails["only"], cases),
            _count_check(f"{sig} [R(a), R(b)] = -4 g(a,b) t(a,b)", "a repeated pattern within", fails["comm"], cases),
            _count_check(f"{sig} a+/a- parts of R(a)R(b)", "a repeated pattern within", fails["anti"], cases),
            _count_check(f"{sig} a-(R(a) t(b,c))", "generating set for the algebra", fails["mixminus"], cases),
            _count_check(f"{sig} g(b,c) a+(R(a) t(b,c))", "generating set for the algebra", fails["mixplus"], cases),
            _count_check(f"{sig} [t(a,b), t(c,d)] closes", "which is closed", fails["closure"], cases),
            _count_check(f"{sig} t anti-self-adjoint, R self-adjoint", "It is also antisymmetric", fails["adj"], cases),
        ]
    return checks


# 5. spinless weak algebra ------------------------------------------------------------
def weak_algebra_checks(ctx: QuotientContext, label: str = "") -> list[Check]:
    """Identities every weak context (spinless or spin-s) must satisfy."""
    checks = []
    bad = 0
    for a, b, c in itertools.product((1, 2, 3), repeat=3):
        bad += bivector_action(basis_bivector(a, b), E3.basis(c), ctx) != _t_vector(E3, a, b, c)
    checks.append(_count_check(f"{label}l(a^b)(c) = g(a,c) b - g(b,c) a", "a bivector-action on a vector", bad, 27))
    bad = 0
    for (a, b), x, y in itertools.product(BIVECTOR_PAIRS, (1, 2, 3), (1, 2, 3)):
        B, X, Y = basis_bivector(a, b), E3.basis(x), E3.basis(y)
        lhs = bivector_action(B, concat(X, Y), ctx)
        rhs = concat(bivector_action(B, X, ctx), Y) + concat(X, bivector_action(B, Y, ctx))
        bad += not ctx.reduce(lhs - rhs).is_zero()
    checks.append(_count_check(f"{label}l(B) is a derivation", "is naturally a derivation", bad, 27))
    bad = 0
    for a, b, c, d in itertools.product((1, 2, 3), repeat=4):
        B1, B2 = basis_bivector(a, b), basis_bivector(c, d)
        bad += not ctx.reduce(concat(B1, B2) - concat(B2, B1) - _bivector_bracket(E3, a, b, c, d)).is_zero()
    checks.append(_count_check(f"{label}bivector Lie product", "determines the Lie product of", bad, 81))
    bad = 0
    for (a, b), (c, d), v in itertools.product(BIVECTOR_PAIRS, BIVECTOR_PAIRS, (1, 2, 3)):
        B1, B2, V = basis_bivector(a, b), basis_bivector(c, d), E3.basis(v)
        lhs = bivector_action([B1, B2], V, ctx) - bivector_action([B2, B1], V, ctx)
        bad += lhs != bivector_action(_bivector_bracket(E3, a, b, c, d), V, ctx)
    checks.append(_count_check(f"{label}l is a Lie algebra action", "showing that", bad, 27))
    J = {p: j_image(p) for p in (1, 2, 3)}
    bad = 0
    for p, q in itertools.product((1, 2, 3), repeat=2):
        rhs = sum((J[r].scale(levi_civita(p, q, r)) for r in (1, 2, 3)), Element(dim=3))
        bad += not ctx.reduce(concat(J[p], J[q]) - concat(J[q], J[p]) - rhs).is_zero()
    checks.append(_count_check(f"{label}[J_p, J_q] = eps_pqr J_r", "Using an orthonormal basis", bad, 9))
    return checks


def pbw_monomials(max_degree: int) -> list[PBWElement]:
    return [PBWElement({m: 1}) for m in itertools.product(range(max_degree + 1), repeat=3) if sum(m) <= max_degree]


def suite_spinless_weak(D: int = 6, H: int = 2, **_) -> list[Check]:
    ctx = context("weak", D, H)
    checks = weak_algebra_checks(ctx)
    mons = pbw_monomials(2)
    r = _span_rank([ctx.reduce(pbw_image(m)) for m in mons])
    checks.append(Check("PBW monomials of J-degree <= 2 stay independent", "no spin structure whatsoever",
                        f"rank {r} of {len(mons)}", r == len(mons)))
    audit = stabilization_audit(E3, algebra_family("weak")[0], D, H, ctx=ctx)
    checks.append(Check(f"stabilization audit D={D} H={H} vs H={H + 2}", "filtered truncation",
                        " ".join(map(str, audit.dims)), audit.stabilized))
    return checks


# 6. spin-s weak algebras -------------------------------------------------------------
SPIN_DEGREE = {HALF: 6, Fraction(1): 8}


def spin_context(s, H: int = 2) -> QuotientContext:
    s = half_integer(s)
    return context(f"spin:{format_rational(s)}", SPIN_DEGREE.get(s, int(4 * s + 4)), H)


def suite_spin_weak(spins=(HALF, 1), **_) -> list[Check]:
    checks = []
    weak = context("weak", 3)
    for s in map(half_integer, spins):
        ctx = spin_context(s)
        tag = f"s={format_rational(s)}: "
        cas = ctx.reduce(pbw_image(casimir()))
        checks.append(Check(tag + "Casimir image reduces to -s(s+1)", "As before, the quotient",
                            format_rational(cas.scalar_part()), cas == Element.scalar(casimir_value(s), 3)))
        if s == HALF:
            bad = 0
            for (a, b), (c, d) in itertools.product(BIVECTOR_PAIRS, repeat=2):
                B1, B2 = basis_bivector(a, b), basis_bivector(c, d)
                value = substitute_casimir(lambda_metric(B1, B2), s)
                bad += ctx.reduce((concat(B1, B2) + concat(B2, B1)).scale(HALF)) != Element.scalar(value, 3)
            checks.append(_count_check(tag + "1/2 {B1, B2} = g_Lambda(B1, B2)", "In the language of bivectors", bad, 9))
        bad = 0
        for (a, b), v in itertools.product(BIVECTOR_PAIRS, (1, 2, 3)):
            B = basis_bivector(a, b)
            bad += bivector_action(B, E3.basis(v), ctx) != bivector_action(B, E3.basis(v), weak)
        checks.append(_count_check(tag + "bivector action on vectors matches the spinless algebra",
                                   "constrains only totally symmetric combinations", bad, 9))
        family, _ = algebra_family(f"spin:{format_rational(s)}")
        audit = stabilization_audit(E3, family, ctx.max_degree, ctx.headroom, ctx=ctx)
        checks.append(Check(tag + f"stabilization audit D={ctx.max_degree} H={ctx.headroom} vs H={ctx.headroom + 2}",
                            "Spin-s Weak Clifford Algebra", " ".join(map(str, audit.dims)),
                            audit.stabilized and audit.dims[-1] == audit.dims[-2]))
    return checks


# 7. metric values ----------------------------------------------------------------------
def _blades(k: int) -> list[tuple]:
    return list(itertools.combinations((1, 2, 3), k))


def blade(I) -> Element:
    return wedge(*[E3.basis(i) for i in I]) if I else Element.scalar(1, 3)


def suite_metric(spins=(0, HALF, 1, Fraction(3, 2), 2), **_) -> list[Check]:
    anchor = "naturally spin dependent"
    checks = []
    C = CasimirPoly.C()
    for s in map(half_integer, spins):
        ss = s * (s + 1)
        bad = 0
        total = 0
        for k, sign in ((2, -1), (3, 1)):
            for I, K in itertools.product(_blades(k), repeat=2):
                total += 1
                value = substitute_casimir(lambda_metric(blade(I), blade(K)), s)
                bad += value != sign * ss / 3 * (I == K)
        checks.append(_count_check(f"s={format_rational(s)}: bivector -s(s+1)/3, trivector +s(s+1)/3",
                                   anchor, bad, total))
    b = substitute_casimir(lambda_metric(blade((1, 2)), blade((1, 2))), HALF)
    checks.append(Check("spin 1/2 bivector norm", anchor, b, b == Fraction(-1, 4)))
    b1 = substitute_casimir(lambda_metric(blade((1, 2)), blade((1, 2))), 1)
    t1 = substitute_casimir(lambda_metric(blade((1, 2, 3)), blade((1, 2, 3))), 1)
    checks.append(Check("spin 1 bivector / trivector norms", anchor, f"{b1} {t1}",
                        (b1, t1) == (Fraction(-2, 3), Fraction(2, 3))))
    z = [substitute_casimir(lambda_metric(blade(I), blade(I)), 0) for I in ((1, 2), (1, 2, 3))]
    checks.append(Check("spin 0 bivector / trivector norms", "edge-case requiring separate treatment",
                        " ".join(map(str, z)), z == [0, 0]))
    bad = 0
    for p, q in itertools.product((1, 2, 3), repeat=2):
        bad += monopole_part(pbw_normal_form(Element({(p, q): 1}))) != C * Fraction(p == q, 3)
    checks.append(_count_check("Mon(J_p J_q) = 1/3 delta_pq C", "invariant tensors at second-order", bad, 9))
    bad = 0
    for p, q, r in itertools.product((1, 2, 3), repeat=3):
        bad += monopole_part(pbw_normal_form(Element({(p, q, r): 1}))) != C * Fraction(levi_civita(p, q, r), 6)
    checks.append(_count_check("Mon(J_p J_q J_r) = 1/6 eps_pqr C", "invariant tensors at second-order", bad, 27))
    bad = 0
    total = 0
    for k in (2, 3):
        for I, K in itertools.product(_blades(k), repeat=2):
            total += 1
            bad += lambda_metric_via_mon(I, K) != lambda_metric(blade(I), blade(K))
    checks.append(_count_check("g_Lambda from the definition agrees with the Mon formulas",
                               "to extend the metric", bad, total))
    return checks


# 8. spin 0 -----------------------------------------------------------------------------
def suite_spin_zero(**_) -> list[Check]:
    family, note = algebra_family("spin:0")
    ctx = build_context(E3, family, 3)
    bad = sum(not ctx.reduce(concat(E3.basis(x), E3.basis(y)) - concat(E3.basis(y), E3.basis(x))).is_zero()
              for x, y in itertools.product((1, 2, 3), repeat=2))
    checks = [_count_check("x y = y x for all basis vectors", "iff it has a spin-0 structure", bad, 9)]
    checks.append(Check("dims at D=3", "edge-case requiring separate treatment", " ".join(map(str, ctx.dims())),
                        ctx.dims() == [1, 4, 10, 20]))
    vals = [substitute_casimir(lambda_metric(blade(I), blade(K)), 0)
            for k in (2, 3) for I, K in itertools.product(_blades(k), repeat=2)]
    checks.append(Check("g_Lambda vanishes on bivectors and trivectors", "edge-case requiring separate treatment",
                        "all zero" if not any(vals) else "nonzero", not any(vals)))
    checks.append(Check("spin:0 routes to the symmetric algebra", "edge-case requiring separate treatment",
                        note or "", family.name == "sym"))
    return checks


# 9. numeric representation oracle --------------------------------------------------------
REP_SPINS = (0, HALF, 1, Fraction(3, 2), 2, Fraction(5, 2), 3)


def suite_rep(spins=REP_SPINS, **_) -> list[Check]:
    from .rep import multipole_span_rank, verify_spin_ideal

    checks = []
    for s in map(half_integer, spins):
        report = verify_spin_ideal(s)
        for c in report["checks"]:
            checks.append(Check(f"s={report['s']}: {c['name']}", "entirely in terms of", c["max_residual"], c["pass"]))
        r = multipole_span_rank(s)
        want = int((2 * s + 1) ** 2)
        checks.append(Check(f"s={report['s']}: multipole span rank", "entirely in terms of", r, r == want))
    return checks


# 10. symbolic vs numeric ----------------------------------------------------------------------
def random_expression(rng: random.Random, max_degree: int = 4, letters: int = 3) -> Element:
    out = Element(dim=letters)
    for _ in range(rng.randint(1, 4)):
        k = rng.randint(0, max_degree)
        w = tuple(rng.randint(1, letters) for _ in range(k))
        out = out + Element({w: Fraction(rng.randint(-5, 5), rng.randint(1, 4))}, letters)
    return out


def suite_cross_oracle(seed: int = 0, cases: int = 50, spins=(HALF, 1), **_) -> list[Check]:
    import numpy as np

    from .rep import evaluate, evaluate_vectors, spin_matrices

    checks = []
    for s in map(half_integer, spins):
        rep = spin_matrices(s)
        rng = random.Random(f"{seed}:{s}")
        ctx = spin_context(s)
        worst = 0.0
        for _ in range(cases):
            x = random_expression(rng)
            worst = max(worst, float(np.max(np.abs(evaluate_vectors(x, rep) - evaluate_vectors(ctx.reduce(x), rep)))))
        checks.append(Check(f"s={format_rational(s)}: vector expressions, reduce vs matrices",
                            "Spin-s Weak Clifford Algebra", worst, worst < 1e-9))
        jctx = _spin_algebra_context(s)
        worst = 0.0
        for _ in range(cases):
            x = random_expression(rng)
            worst = max(worst, float(np.max(np.abs(evaluate(x, rep) - evaluate(jctx.reduce(x), rep)))))
        checks.append(Check(f"s={format_rational(s)}: J expressions in A(s), reduce vs matrices",
                            "derived by quotient", worst, worst < 1e-9))
    return checks


@lru_cache(maxsize=None)
def _spin_algebra_context(s: Fraction, D: int = 4) -> QuotientContext:
    from .quotient import spin_algebra_relations

    return build_context(3, spin_algebra_relations(s), D)


SUITES: dict[str, Callable[..., list[Check]]] = {
    "multipoles": suite_multipoles,
    "clifford-spin-half": suite_clifford_spin_half,
    "f-constraint": suite_f_constraint,
    "reflections": suite_reflections,
    "spinless-weak": suite_spinless_weak,
    "spin-weak": suite_spin_weak,
    "metric": suite_metric,
    "spin-zero": suite_spin_zero,
    "rep": suite_rep,
    "cross-oracle": suite_cross_oracle,
}

# acceptance criterion number -> suite name
ACCEPTANCE = {i + 1: name for i, name in enumerate(SUITES)}


def run_suite(name: str, **options) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**{k: v for k, v in options.items() if v is not None})
