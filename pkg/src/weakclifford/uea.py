"""U(so(3)) in PBW normal form: J1^m1 J2^m2 J3^m3 with [J_a, J_b] = eps_abc J_c.

Coefficients are plain rationals; the Casimir C = J1^2 + J2^2 + J3^2 is kept
expanded.  Only ``monopole_part`` returns a polynomial in a formal C.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .freealg import Element, format_terms
from .linalg import SpanTracker, rref
from .scalar import CasimirPoly, Poly, RationalLike, to_rational

Exponents = tuple  # (m1, m2, m3)


def levi_civita(a: int, b: int, c: int) -> int:
    """eps_abc on 1-based indices."""
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1


def _bracket(a: int, b: int) -> tuple[int, int]:
    """[J_a, J_b] = sign * J_c, returned as (sign, c); sign 0 when a == b."""
    if a == b:
        return 0, 0
    c = 6 - a - b
    return levi_civita(a, b, c), c


class PBWElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = to_rational(c)
                m = tuple(m)
                if len(m) != 3 or any(x < 0 for x in m):
                    raise ValueError(f"bad PBW exponent triple {m}")
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self.terms: dict = clean

    @classmethod
    def _raw(cls, terms: dict) -> "PBWElement":
        e = cls.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def scalar(cls, c: RationalLike) -> "PBWElement":
        return cls({(0, 0, 0): c})

    @classmethod
    def generator(cls, a: int) -> "PBWElement":
        if a not in (1, 2, 3):
            raise ValueError(f"generator index must be 1, 2 or 3, got {a}")
        m = [0, 0, 0]
        m[a - 1] = 1
        return cls({tuple(m): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        _axpy(out, other.terms, 1)
        return PBWElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, c) -> "PBWElement":
        c = to_rational(c)
        return PBWElement._raw({m: c * v for m, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return left_mult(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / to_rational(c))

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == PBWElement.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_pbw(self)

    def __repr__(self):
        return f"PBWElement({format_pbw(self)!r})"


def _coerce(x) -> PBWElement:
    return x if isinstance(x, PBWElement) else PBWElement.scalar(x)


def _axpy(out: dict, terms: Mapping, f) -> None:
    for m, c in terms.items():
        v = out.get(m, 0) + f * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)


def monomial_word(m: Exponents) -> tuple:
    return (1,) * m[0] + (2,) * m[1] + (3,) * m[2]


def format_pbw(x: PBWElement) -> str:
    """Terms by descending (total degree, exponent triple), e.g. ``J1.J2 - J3``."""
    items = sorted(x.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    return format_terms(items, lambda m: ".".join(f"J{a}" for a in monomial_word(m)))


# multiplication -----------------------------------------------------------
@lru_cache(maxsize=None)
def _times_generator(m: Exponents, g: int) -> tuple:
    """Normal form of (monomial m) * J_g, as a tuple of (exponents, coeff)."""
    last = 3 if m[2] else 2 if m[1] else 1 if m[0] else 0
    if last <= g:
        n = list(m)
        n[g - 1] += 1
        return ((tuple(n), Fraction(1)),)
    # m = m' J_last with last > g:  m' J_last J_g = (m' J_g) J_last + m' [J_last, J_g]
    prefix = list(m)
    prefix[last - 1] -= 1
    prefix = tuple(prefix)
    out: dict = {}
    for n, c in _times_generator(prefix, g):
        _axpy(out, dict(_times_generator(n, last)), c)
    sign, h = _bracket(last, g)
    for n, c in _times_generator(prefix, h):
        _axpy(out, {n: c}, sign)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _monomial_product(m: Exponents, n: Exponents) -> tuple:
    cur = {m: Fraction(1)}
    for g in monomial_word(n):
        nxt: dict = {}
        for k, c in cur.items():
            _axpy(nxt, dict(_times_generator(k, g)), c)
        cur = nxt
    return tuple(cur.items())


def left_mult(A: PBWElement, B: PBWElement) -> PBWElement:
    """L_A(B): the product A B in normal form."""
    out: dict = {}
    for m, a in A.terms.items():
        for n, b in B.terms.items():
            _axpy(out, dict(_monomial_product(m, n)), a * b)
    return PBWElement._raw(out)


def pbw_normal_form(x: Element) -> PBWElement:
    """Normal form of a free-algebra element whose letters 1, 2, 3 stand for J1, J2, J3."""
    out: dict = {}
    for w, c in x.terms.items():
        if any(a not in (1, 2, 3) for a in w):
            raise ValueError(f"word {w} is not over the J basis")
        cur = {(0, 0, 0): Fraction(1)}
        for g in w:
            nxt: dict = {}
            for k, v in cur.items():
                _axpy(nxt, dict(_times_generator(k, g)), v)
            cur = nxt
        _axpy(out, cur, c)
    return PBWElement._raw(out)


def to_free(x: PBWElement) -> Element:
    """The ordered words of a PBW element, as a free-algebra element over J letters."""
    return Element({monomial_word(m): c for m, c in x.terms.items()})


def J(a: int) -> PBWElement:
    return PBWElement.generator(a)


def casimir() -> PBWElement:
    return PBWElement({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})


# adjoint action -----------------------------------------------------------
@lru_cache(maxsize=None)
def _ad_gen_monomial(g: int, m: Exponents) -> tuple:
    out = dict(_monomial_product(_unit(g), m))
    _axpy(out, dict(_times_generator(m, g)), -1)
    return tuple(out.items())


def _unit(g: int) -> Exponents:
    m = [0, 0, 0]
    m[g - 1] = 1
    return tuple(m)


def ad_generator(g: int, v: PBWElement) -> PBWElement:
    """[J_g, v]."""
    out: dict = {}
    for m, c in v.terms.items():
        _axpy(out, dict(_ad_gen_monomial(g, m)), c)
    return PBWElement._raw(out)


def ad_casimir(v: PBWElement) -> PBWElement:
    """ad(C) = sum_a ad(J_a) o ad(J_a)."""
    out = PBWElement()
    for a in (1, 2, 3):
        out = out + ad_generator(a, ad_generator(a, v))
    return out


def ad(u, v: PBWElement) -> PBWElement:
    """Adjoint action: scalars multiply, generators commute, products compose.

    ``u`` may be a scalar, a PBWElement, or a free Element over J letters
    (whose words are then read as compositions of generator actions).
    """
    if not isinstance(u, (PBWElement, Element)):
        return v.scale(to_rational(u))
    words = (
        {monomial_word(m): c for m, c in u.terms.items()} if isinstance(u, PBWElement) else u.terms
    )
    out = PBWElement()
    for w, c in words.items():
        cur = v
        for g in reversed(w):
            cur = ad_generator(g, cur)
        out = out + cur.scale(c)
    return out


def ad_shifted_casimir(shift: RationalLike, v: PBWElement) -> PBWElement:
    """ad(C + shift)(v) = ad(C)(v) + shift * v."""
    return ad_casimir(v) + v.scale(shift)


# multipoles ---------------------------------------------------------------
@lru_cache(maxsize=None)
def _multipole(word: tuple) -> PBWElement:
    k = len(word)
    if k == 0:
        return PBWElement.scalar(1)
    if k == 1:
        return J(word[0])
    k -= 1  # recursion from order k to k + 1
    x = left_mult(J(word[0]), _multipole(word[1:]))
    x = ad_shifted_casimir(k * (k + 1), x)
    x = ad_shifted_casimir(k * (k - 1), x)
    return x.scale(Fraction(1, 4 * (k + 1) * (2 * k + 1)))


def multipole(k: int, word: Sequence[int] = ()) -> PBWElement:
    """The order-k multipole T_{a1...ak}, from the ad(C)-projection recursion."""
    word = tuple(word)
    if k < 0 or len(word) != k:
        raise ValueError(f"multipole of order {k} needs a word of length {k}")
    if any(a not in (1, 2, 3) for a in word):
        raise ValueError(f"multipole indices must be in 1..3, got {word}")
    return _multipole(word)


def multipole_words(k: int) -> list[tuple]:
    return list(itertools.product((1, 2, 3), repeat=k))


# monopole part ------------------------------------------------------------
def _pbw_key(m: Exponents):
    return (sum(m), m)


def ad_stable_span(A: PBWElement, working_degree: int | None = None) -> list[PBWElement]:
    """Basis of the smallest subspace containing A that is stable under every ad(J_a)."""
    cap = A.degree if working_degree is None else working_degree
    if A.degree > cap:
        raise ValueError(f"element degree {A.degree} exceeds working degree {cap}")
    tracker = SpanTracker()
    basis: list[PBWElement] = []
    queue = [A]
    while queue:
        x = queue.pop()
        if x.degree > cap:
            raise ValueError("ad closure exceeded the working degree")
        red = tracker.reduce({_pbw_key(m): c for m, c in x.terms.items()})
        if not red:
            continue
        tracker.add(red)
        basis.append(x)
        queue.extend(ad_generator(g, x) for g in (1, 2, 3))
    return basis


def _coords(tracker_rows: list, x: PBWElement, keys: list) -> list[Fraction]:
    return [x.terms.get(k[1], Fraction(0)) for k in keys]


def operator_matrix(op: Callable[[PBWElement], PBWElement], space: Sequence[PBWElement]):
    """Matrix of ``op`` on span(space) in the basis ``space`` (assumed independent).

    Column j holds the coordinates of op(space[j]).  Raises ValueError when the
    span is not op-stable.
    """
    keys = sorted({m for x in space for m in x.terms}, key=_pbw_key)
    images = [op(x) for x in space]
    keys = sorted(set(keys) | {m for y in images for m in y.terms}, key=_pbw_key)
    n = len(space)
    # solve space-coordinates * X = images via rref on [space^T | images^T]
    rows = [[x.terms.get(k, Fraction(0)) for x in space] + [y.terms.get(k, Fraction(0)) for y in images] for k in keys]
    red, piv = rref(rows)
    if any(p >= n for p in piv):
        raise ValueError("space is not stable under the operator")
    if piv != list(range(n)):
        raise ValueError("space vectors are linearly dependent")
    return [[red[i][n + j] for j in range(n)] for i in range(n)]


def _matvec(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(M))]


def matrix_minimal_polynomial(M) -> Poly:
    """Monic minimal polynomial of a square rational matrix (lcm of Krylov polynomials)."""
    n = len(M)
    result = Poly([1])
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        # minimal polynomial of e under M, via the first dependency in its Krylov sequence
        krylov = [e]
        while True:
            nxt = _matvec(M, krylov[-1])
            cols = krylov + [nxt]
            rows = [[c[i] for c in cols] for i in range(n)]
            red, piv = rref(rows)
            if len(piv) < len(cols):
                # dependency: nxt = sum a_i krylov_i
                d = len(krylov)
                coeffs = [-red[i][d] for i in range(d)] + [Fraction(1)]
                local = Poly(coeffs)
                break
            krylov.append(nxt)
        result = _lcm(result, local)
    return result


def _gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def _lcm(a: Poly, b: Poly) -> Poly:
    q, r = (a * b).divmod(_gcd(a, b))
    return q.monic()


def minimal_polynomial(op: Callable[[PBWElement], PBWElement], space: Sequence[PBWElement]) -> Poly:
    """Monic least-degree polynomial annihilating ``op`` on span(space)."""
    tracker = SpanTracker()
    basis = []
    for x in space:
        if tracker.add({_pbw_key(m): c for m, c in x.terms.items()}):
            basis.append(x)
    if not basis:
        return Poly([1])
    return matrix_minimal_polynomial(operator_matrix(op, basis))


def apply_polynomial(p: Poly, op: Callable, x):
    """p(op)(x) by Horner's rule."""
    acc = None
    for c in reversed(p.coeffs):
        acc = x.scale(c) if acc is None else op(acc) + x.scale(c)
    return acc if acc is not None else x.scale(0)


def casimir_power(j: int) -> PBWElement:
    out = PBWElement.scalar(1)
    C = casimir()
    for _ in range(j):
        out = left_mult(out, C)
    return out


def as_casimir_polynomial(x: PBWElement) -> CasimirPoly:
    """Write a central element as a polynomial in C; raises if it is not one."""
    rest = PBWElement(dict(x.terms))
    coeffs: dict[int, Fraction] = {}
    while not rest.is_zero():
        d = rest.degree
        if d % 2:
            raise ValueError("element is not a polynomial in the Casimir")
        top = (0, 0, d)
        c = rest.terms.get(top, Fraction(0))
        if not c:
            raise ValueError("element is not a polynomial in the Casimir")
        coeffs[d // 2] = c
        rest = rest - casimir_power(d // 2).scale(c)
        if rest.degree >= d:
            raise ValueError("element is not a polynomial in the Casimir")
    return CasimirPoly([coeffs.get(i, 0) for i in range(max(coeffs, default=-1) + 1)])


def monopole_part(A: PBWElement, working_degree: int | None = None) -> CasimirPoly:
    """Mon(A): the ker ad(C) projection of A, as a polynomial in C.

    With m(x) the minimal polynomial of ad(C) on the ad-stable span of A:
    if m(x) = x n(x) the result is n(ad C)(A) / n(0), otherwise zero.
    """
    if A.is_zero():
        return CasimirPoly()
    space = ad_stable_span(A, working_degree)
    m = minimal_polynomial(ad_casimir, space)
    if m[0] != 0:
        return CasimirPoly()
    n, r = m.divmod(Poly([0, 1]))
    assert r.is_zero()
    proj = apply_polynomial(n, ad_casimir, A).scale(1 / n[0])
    return as_casimir_polynomial(proj)
