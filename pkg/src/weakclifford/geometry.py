"""Endomorphisms of (V, g), reflection calculus, bivector transforms and metrics on blades."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .freealg import Element, MetricSpace, antisymmetrize, concat, wedge
from .linalg import determinant, inverse
from .scalar import CasimirPoly, to_rational
from .uea import PBWElement, levi_civita, monomial_word


# J <-> bivector transforms (n = 3, orthonormal basis) ------------------------
WEAK_J_SCALE = Fraction(1, 2)
STRONG_J_SCALE = Fraction(-1, 4)


def basis_bivector(a: int, b: int, dim: int | None = 3) -> Element:
    return wedge(Element.word((a,), dim=dim), Element.word((b,), dim=dim))


def j_image(p: int, strong: bool = False) -> Element:
    """J_p = k * sum_ab eps_abp e_a ^ e_b, with k = 1/2 (weak) or -1/4 (strong Clifford)."""
    k = STRONG_J_SCALE if strong else WEAK_J_SCALE
    out = Element(dim=3)
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            eps = levi_civita(a, b, p)
            if eps:
                out = out + basis_bivector(a, b).scale(k * eps)
    return out


def jword_image(word: Sequence[int], strong: bool = False) -> Element:
    out = Element.scalar(1, dim=3)
    for p in word:
        out = concat(out, j_image(p, strong))
    return out


def pbw_image(x: PBWElement | Element, strong: bool = False) -> Element:
    """Image in T(E) of a J-polynomial (PBW element or free element over J letters)."""
    words = {monomial_word(m): c for m, c in x.terms.items()} if isinstance(x, PBWElement) else x.terms
    out = Element(dim=3)
    for w, c in words.items():
        out = out + jword_image(w, strong).scale(c)
    return out


def bivector_to_j(a: int, b: int) -> Element:
    """e_a ^ e_b = sum_p eps_abp J_p, as a free element over J letters."""
    return Element({(p,): levi_civita(a, b, p) for p in (1, 2, 3)})


def bivector_word_to_j(pairs: Sequence[tuple[int, int]]) -> Element:
    out = Element.scalar(1)
    for a, b in pairs:
        out = concat(out, bivector_to_j(a, b))
    return out


@dataclass(frozen=True)
class BivectorTransform:
    """Linear maps between span{J_p} and the basis bivectors of (E, delta)."""

    strong: bool = False

    def forward(self, p: int) -> Element:
        return j_image(p, self.strong)

    def inverse(self, a: int, b: int) -> Element:
        # e_a ^ e_b in J letters; the strong scale rescales the weak inverse
        k = STRONG_J_SCALE if self.strong else WEAK_J_SCALE
        return bivector_to_j(a, b).scale(WEAK_J_SCALE / k)

    def bivector_coordinates(self, x: Element) -> dict[tuple[int, int], Fraction]:
        """Coefficients of x on e_a ^ e_b, a < b (x must be a degree-2 antisymmetric element)."""
        return {(a, b): 2 * x.coefficient((a, b)) for a, b in ((1, 2), (1, 3), (2, 3))}

    def roundtrip_j(self, p: int) -> Element:
        out = Element()
        for (a, b), c in self.bivector_coordinates(self.forward(p)).items():
            out = out + self.inverse(a, b).scale(c)
        return out


# endomorphisms -------------------------------------------------------------------
Vector = tuple


def vec(space: MetricSpace, comps: Sequence) -> Vector:
    if len(comps) != space.dim:
        raise ValueError("component count does not match dimension")
    return tuple(to_rational(c) for c in comps)


def basis_vector(space: MetricSpace, i: int) -> Vector:
    return tuple(Fraction(int(j == i - 1)) for j in range(space.dim))


def _add(v, w):
    return tuple(a + b for a, b in zip(v, w))


def _scale(c, v):
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class Endomorphism:
    """A linear map of V given by its matrix (column vectors: (A v)_i = sum_j A_ij v_j)."""

    space: MetricSpace
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(to_rational(x) for x in row) for row in self.matrix)
        n = self.space.dim
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError(f"endomorphism matrix must be {n} x {n}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, space: MetricSpace) -> "Endomorphism":
        n = space.dim
        return cls(space, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, space: MetricSpace) -> "Endomorphism":
        return cls(space, tuple((0,) * space.dim for _ in range(space.dim)))

    @classmethod
    def from_function(cls, space: MetricSpace, f) -> "Endomorphism":
        cols = [f(basis_vector(space, j + 1)) for j in range(space.dim)]
        return cls(space, tuple(tuple(cols[j][i] for j in range(space.dim)) for i in range(space.dim)))

    def __call__(self, v: Sequence) -> Vector:
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.matrix)

    def _check(self, other: "Endomorphism"):
        if other.space != self.space:
            raise ValueError("endomorphisms act on different spaces")

    def __matmul__(self, other: "Endomorphism") -> "Endomorphism":
        """Composition self o other."""
        self._check(other)
        n = self.space.dim
        A, B = self.matrix, other.matrix
        return Endomorphism(
            self.space,
            tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n)),
        )

    def __add__(self, other: "Endomorphism") -> "Endomorphism":
        self._check(other)
        return Endomorphism(self.space, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self) -> "Endomorphism":
        return self.scale(-1)

    def __sub__(self, other: "Endomorphism") -> "Endomorphism":
        return self + (-other)

    def scale(self, c) -> "Endomorphism":
        c = to_rational(c)
        return Endomorphism(self.space, tuple(tuple(c * a for a in r) for r in self.matrix))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.matrix for a in r)


def g_adjoint(A: Endomorphism) -> Endomorphism:
    """The unique Abar with g(A v, w) = g(v, Abar w): G^-1 A^T G."""
    G = A.space.metric
    Ginv = inverse(G)
    n = A.space.dim
    At = [[A.matrix[j][i] for j in range(n)] for i in range(n)]
    M = [[sum((Ginv[i][k] * At[k][l] * G[l][j] for k in range(n) for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    return Endomorphism(A.space, tuple(tuple(r) for r in M))


def adjoint_parts(A: Endomorphism) -> tuple[Endomorphism, Endomorphism]:
    """(a+, a-) = (1/2 (A + Abar), 1/2 (A - Abar))."""
    Ab = g_adjoint(A)
    half = Fraction(1, 2)
    return (A + Ab).scale(half), (A - Ab).scale(half)


def _require_nonnull(space: MetricSpace, a: Sequence) -> Fraction:
    gaa = space.inner(a, a)
    if gaa == 0:
        raise ValueError("vector is null (g(a, a) = 0)")
    return gaa


def scale_map(space: MetricSpace, k, a: Sequence) -> Endomorphism:
    """S(k, a): v -> g(a, a) v + (k - 1) g(a, v) a."""
    gaa = _require_nonnull(space, a)
    k = to_rational(k)
    a = vec(space, a)
    return Endomorphism.from_function(space, lambda v: _add(_scale(gaa, v), _scale((k - 1) * space.inner(a, v), a)))


def conformal_reflection(space: MetricSpace, a: Sequence) -> Endomorphism:
    """R(a) = S(-1, a): v -> g(a, a) v - 2 g(a, v) a."""
    return scale_map(space, -1, a)


def reflection_formula(space: MetricSpace, a: Sequence) -> Endomorphism:
    """g(a, a) v - 2 g(a, v) a for any a, null or not (the closed form of R(a))."""
    a = vec(space, a)
    gaa = space.inner(a, a)
    return Endomorphism.from_function(space, lambda v: _add(_scale(gaa, v), _scale(-2 * space.inner(a, v), a)))


def t_map(space: MetricSpace, a: Sequence, b: Sequence) -> Endomorphism:
    """t(a, b): v -> g(a, v) b - g(b, v) a; defined for all a, b."""
    a, b = vec(space, a), vec(space, b)
    return Endomorphism.from_function(space, lambda v: _add(_scale(space.inner(a, v), b), _scale(-space.inner(b, v), a)))


def decompose_null(space: MetricSpace, b: Sequence) -> tuple[Vector, Vector]:
    """Split a nonzero null b as p + n with g(p,p) = -g(n,n) = 1 > 0 and g(p,n) = 0.

    A null partner c with g(b, c) = 2 is built from the first basis vector u
    not orthogonal to b, as a multiple of u - g(u,u)/(2 g(b,u)) b; then
    p = (b + c)/2 and n = (b - c)/2, so that c = p - n.
    """
    b = vec(space, b)
    if all(x == 0 for x in b):
        raise ValueError("cannot decompose the zero vector")
    if space.inner(b, b) != 0:
        raise ValueError("vector is not null")
    for i in range(1, space.dim + 1):
        u = basis_vector(space, i)
        gbu = space.inner(b, u)
        if gbu:
            break
    c = _add(u, _scale(-space.inner(u, u) / (2 * gbu), b))
    c = _scale(2 / space.inner(b, c), c)
    half = Fraction(1, 2)
    return _scale(half, _add(b, c)), _scale(half, _add(b, _scale(-1, c)))


# tensors in T(V) acted on by endomorphisms ----------------------------------------
def vector_element(space: MetricSpace, v: Sequence) -> Element:
    return space.vector(list(v))


def derivation_action(A: Endomorphism, x: Element) -> Element:
    """Extend a vector endomorphism to T(V) as a derivation (Leibniz over tensor slots)."""
    n = A.space.dim
    cols = [[A.matrix[i][j] for i in range(n)] for j in range(n)]  # image of e_{j+1}
    out: dict = {}
    for w, c in x.terms.items():
        for pos, letter in enumerate(w):
            for i, coef in enumerate(cols[letter - 1]):
                if coef:
                    nw = w[:pos] + (i + 1,) + w[pos + 1 :]
                    v = out.get(nw, 0) + c * coef
                    if v:
                        out[nw] = v
                    else:
                        out.pop(nw, None)
    return Element._raw(out, x.dim)


def bivector_action(B, x: Element, ctx) -> Element:
    """l(B)(x) = B x - x B in the quotient ``ctx``.

    ``B`` may be a scalar, a bivector element, or a sequence of such read as a
    tensor product acting by composition: l(B1 B2) = l(B1) o l(B2).
    """
    if isinstance(B, (list, tuple)):
        out = x
        for factor in reversed(B):
            out = bivector_action(factor, out, ctx)
        return out
    if not isinstance(B, Element):
        return ctx.reduce(x.scale(to_rational(B)))
    if B.degree <= 0:
        return ctx.reduce(x.scale(B.scalar_part()))
    if not B.is_homogeneous(2) or antisymmetrize(B, 2) != B:
        raise ValueError("bivector action needs a scalar or a bivector")
    return ctx.reduce(concat(B, x) - concat(x, B))


# the third-order tensor f and its closure constraint -----------------------------------
def f_tensor(k: Sequence, X: Element, Y: Element, Z: Element) -> Element:
    """k1 ((XY - YX) Z) + k2 (Z (XY - YX)) + k3 (X Z Y - Y Z X), multilinear over T(V)."""
    k1, k2, k3 = (to_rational(c) for c in k)
    comm = concat(X, Y) - concat(Y, X)
    out = Element()
    if k1:
        out = out + concat(comm, Z).scale(k1)
    if k2:
        out = out + concat(Z, comm).scale(k2)
    if k3:
        out = out + (concat(concat(X, Z), Y) - concat(concat(Y, Z), X)).scale(k3)
    return out


def _f_constraint_terms(k_outer, k_inner, a, b, c, d, e) -> Element:
    f_in = lambda x, y, z: f_tensor(k_inner, x, y, z)
    f_out = lambda x, y, z: f_tensor(k_outer, x, y, z)
    return (
        f_out(f_in(a, b, c), d, e)
        + f_out(c, f_in(a, b, d), e)
        + f_out(f_in(c, d, a), b, e)
        + f_out(a, f_in(c, d, b), e)
    )


_UNIT_K = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _f_quadratic_components(n: int) -> dict:
    """R[(i, j)][tuple] with residual(k) = sum_ij k_i k_j R[(i, j)][tuple]."""
    comps: dict = {}
    for t in itertools.product(range(1, n + 1), repeat=5):
        vecs = [Element.word((x,)) for x in t]
        for i in range(3):
            for j in range(3):
                r = _f_constraint_terms(_UNIT_K[i], _UNIT_K[j], *vecs)
                if not r.is_zero():
                    comps.setdefault((i, j), {})[t] = r
    return comps


_F_CACHE: dict = {}


def _f_components(n: int) -> dict:
    if n not in _F_CACHE:
        _F_CACHE[n] = _f_quadratic_components(n)
    return _F_CACHE[n]


def check_f_constraint(k1, k2, k3, space: MetricSpace) -> dict[tuple, Element]:
    """Residuals of f(f(a,b,c),d,e) + f(c,f(a,b,d),e) + f(f(c,d,a),b,e) + f(a,f(c,d,b),e).

    Keys are the basis 5-tuples (a, b, c, d, e) with a nonzero residual; an
    empty result means the constraint holds identically.
    """
    if space.dim < 2:
        raise ValueError("the f constraint needs dimension at least 2")
    k = [to_rational(x) for x in (k1, k2, k3)]
    total: dict = {}
    for (i, j), per_tuple in _f_components(space.dim).items():
        w = k[i] * k[j]
        if not w:
            continue
        for t, r in per_tuple.items():
            total[t] = total.get(t, Element()) + r.scale(w)
    return {t: r for t, r in total.items() if not r.is_zero()}


@dataclass(frozen=True)
class FSolution:
    """Solution lines of the closure constraint.

    ``directions`` are the lines whose algebra T(V)/<f(a,b,c) - t(a,b)(c)>
    keeps V (the non-trivial solutions); ``degenerate`` lines satisfy the
    constraint but collapse every vector to zero in that quotient.
    """

    directions: tuple
    degenerate: tuple
    equations: tuple

    @property
    def trivial_only(self) -> bool:
        return not self.directions

    def describe(self) -> str:
        def fam(ds):
            return ", ".join("k*(" + ", ".join(str(x) for x in d) + ")" for d in ds)

        text = "only k = (0, 0, 0)" if self.trivial_only else fam(self.directions)
        if self.degenerate:
            text += f"; degenerate (vectors collapse): {fam(self.degenerate)}"
        return text


def f_constraint_equations(space: MetricSpace) -> list[dict]:
    """Independent quadratic equations in (k1, k2, k3) from every residual coefficient."""
    from .linalg import rref

    monos = [(i, j) for i in range(3) for j in range(i, 3)]
    rows = {}
    for (i, j), per_tuple in _f_components(space.dim).items():
        m = (min(i, j), max(i, j))
        for t, r in per_tuple.items():
            for w, c in r.terms.items():
                row = rows.setdefault((t, w), {})
                row[m] = row.get(m, Fraction(0)) + c
    mat = [[row.get(m, Fraction(0)) for m in monos] for row in rows.values()]
    mat = [r for r in mat if any(r)]
    red, _ = rref(mat)
    return [{m: c for m, c in zip(monos, r) if c} for r in red]


def f_action_relations(space: MetricSpace, k: Sequence) -> list[Element]:
    """f(a, b, c) - t(a, b)(c) on basis triples."""
    out = []
    n = space.dim
    for a, b, c in itertools.product(range(1, n + 1), repeat=3):
        tv = t_map(space, basis_vector(space, a), basis_vector(space, b))(basis_vector(space, c))
        r = f_tensor(k, space.basis(a), space.basis(b), space.basis(c)) - space.vector(list(tv))
        if not r.is_zero():
            out.append(r)
    return out


def keeps_vectors(space: MetricSpace, k: Sequence, headroom: int = 2) -> bool:
    """Whether T(V)/<f_k(a,b,c) - t(a,b)(c)> keeps all of V in degree one."""
    from .quotient import QuotientContext

    ctx = QuotientContext(space.dim, f_action_relations(space, k), 1, headroom)
    return ctx.dims()[-1] == 1 + space.dim


def _normalize_direction(d: Sequence[Fraction]) -> tuple:
    lead = next(x for x in d if x)
    return tuple(x / abs(lead) if lead > 0 else -x / abs(lead) for x in d)


def solve_f_constraint(space: MetricSpace) -> FSolution:
    """All (k1, k2, k3) satisfying the closure constraint on basis 5-tuples, as lines."""
    import sympy

    ks = sympy.symbols("k1 k2 k3")
    eqs = f_constraint_equations(space)
    polys = [sum(sympy.Rational(c.numerator, c.denominator) * ks[i] * ks[j] for (i, j), c in e.items()) for e in eqs]
    lines = set()
    for sol in sympy.solve(polys, list(ks), dict=True):
        free = [s for s in ks if s not in sol]
        if not free:
            continue  # homogeneous equations: an isolated solution is the origin
        subs = {free[0]: 1, **{f: 0 for f in free[1:]}}
        point = [sympy.Rational(sympy.sympify(sol.get(s, s)).subs(subs)) for s in ks]
        point = [Fraction(int(x.p), int(x.q)) for x in point]
        if any(point):
            lines.add(_normalize_direction(point))
    for d in lines:
        if check_f_constraint(*d, space):
            raise AssertionError(f"solver returned {d}, which fails the constraint")
    good = tuple(sorted(d for d in lines if keeps_vectors(space, d)))
    bad = tuple(sorted(d for d in lines if d not in good))
    return FSolution(good, bad, tuple(eqs))


# metrics on blades ------------------------------------------------------------------
def cauchy_binet(space: MetricSpace, blade1: Sequence[Sequence], blade2: Sequence[Sequence]) -> Fraction:
    """det(g(a_j, b_k)); zero for blades of different order."""
    if len(blade1) != len(blade2):
        return Fraction(0)
    if not blade1:
        return Fraction(1)
    gram = [[space.inner(vec(space, a), vec(space, b)) for b in blade2] for a in blade1]
    return determinant(gram)


def blade_coordinates(x: Element) -> dict[tuple, Fraction]:
    """Coordinates of an antisymmetric tensor on basis blades e_i1 ^ ... ^ e_ik (i1 < ... < ik).

    Raises ValueError when some homogeneous part is not totally antisymmetric.
    """
    coords: dict = {}
    for k in sorted({len(w) for w in x.terms}):
        part = x.homogeneous_part(k)
        if k >= 2 and antisymmetrize(part, k) != part:
            raise ValueError(f"degree-{k} part is not antisymmetric")
        for w, c in part.terms.items():
            if list(w) == sorted(w) and len(set(w)) == len(w):
                coords[w] = c * math.factorial(k)
    return coords


_LAMBDA_FACTOR = {2: Fraction(1, 3), 3: Fraction(-1, 3)}


def lambda_metric(x: Element, y: Element, space: MetricSpace | None = None) -> CasimirPoly:
    """g_Lambda on antisymmetric tensors over (E, delta), valued in Q[C].

    Scalars multiply, vectors use the metric, bivectors give C/3 times the
    Cauchy-Binet value and trivectors -C/3 times it; all other pairings vanish.
    """
    space = space or MetricSpace.euclidean(3)
    cx, cy = blade_coordinates(x), blade_coordinates(y)
    total = CasimirPoly()
    for I, a in cx.items():
        for K, b in cy.items():
            if len(I) != len(K):
                continue
            k = len(I)
            if k == 0:
                total = total + CasimirPoly.constant(a * b)
            elif k == 1:
                total = total + CasimirPoly.constant(a * b * space.g(I[0], K[0]))
            elif k in _LAMBDA_FACTOR:
                gcb = cauchy_binet(space, [basis_vector(space, i) for i in I], [basis_vector(space, j) for j in K])
                total = total + CasimirPoly.monomial(1, a * b * gcb * _LAMBDA_FACTOR[k])
    return total


def mon_of_bivector_product(pairs: Sequence[tuple[int, int]]) -> CasimirPoly:
    """Mon((e_a1 ^ e_b1)(e_a2 ^ e_b2)...) computed in U(so(3)) via e_a ^ e_b = sum eps J."""
    from .uea import monopole_part, pbw_normal_form

    return monopole_part(pbw_normal_form(bivector_word_to_j(pairs)))


def lambda_metric_via_mon(I: Sequence[int], K: Sequence[int]) -> CasimirPoly:
    """g_Lambda on basis bivectors or trivectors from the Mon definitions."""
    if len(I) != len(K):
        return CasimirPoly()
    if len(I) == 2:
        return mon_of_bivector_product([(I[0], I[1]), (K[0], K[1])])
    if len(I) == 3:
        a, b, c = I
        d, e, f = K
        return (
            mon_of_bivector_product([(a, b), (c, d), (e, f)])
            - mon_of_bivector_product([(a, b), (c, e), (d, f)])
            + mon_of_bivector_product([(a, b), (c, f), (d, e)])
        )
    raise ValueError("Mon form is defined for bivectors and trivectors")
