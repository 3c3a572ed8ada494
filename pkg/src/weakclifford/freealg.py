"""The free tensor algebra T(V) over a finite-dimensional metric space.

Elements are sparse maps from words (tuples of 1-based basis indices) to
exact rationals.  The empty word is the unit.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import determinant
from .scalar import RationalLike, format_rational, to_rational

Word = tuple


@dataclass(frozen=True)
class MetricSpace:
    dim: int
    metric: tuple

    def __post_init__(self):
        g = tuple(tuple(to_rational(x) for x in row) for row in self.metric)
        object.__setattr__(self, "metric", g)
        if self.dim < 1 or len(g) != self.dim or any(len(r) != self.dim for r in g):
            raise ValueError("metric must be a dim x dim matrix")
        for i in range(self.dim):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("metric must be symmetric")
        if determinant(g) == 0:
            raise ValueError("metric is degenerate")

    @classmethod
    def euclidean(cls, n: int = 3) -> "MetricSpace":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def signature(cls, p: int, q: int) -> "MetricSpace":
        n = p + q
        diag = [1] * p + [-1] * q
        return cls(n, tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def g(self, a: int, b: int) -> Fraction:
        """Metric on basis indices (1-based)."""
        return self.metric[a - 1][b - 1]

    def inner(self, v: Sequence, w: Sequence) -> Fraction:
        return sum(
            (v[i] * self.metric[i][j] * w[j] for i in range(self.dim) for j in range(self.dim) if v[i] and w[j]),
            Fraction(0),
        )

    def basis(self, i: int) -> "Element":
        if not 1 <= i <= self.dim:
            raise ValueError(f"basis index {i} outside 1..{self.dim}")
        return Element({(i,): 1}, dim=self.dim)

    def vector(self, comps: Sequence) -> "Element":
        if len(comps) != self.dim:
            raise ValueError("component count does not match dimension")
        return Element({(i + 1,): c for i, c in enumerate(comps)}, dim=self.dim)


class Element:
    """Finite rational combination of words.  Immutable by convention."""

    __slots__ = ("terms", "dim")

    def __init__(self, terms: Mapping | None = None, dim: int | None = None):
        clean: dict = {}
        if terms:
            for w, c in terms.items():
                c = to_rational(c)
                if c:
                    w = tuple(w)
                    if dim is not None and any(not 1 <= a <= dim for a in w):
                        raise ValueError(f"word {w} has an index outside 1..{dim}")
                    clean[w] = clean.get(w, 0) + c
                    if not clean[w]:
                        del clean[w]
        self.terms: dict = clean
        self.dim = dim

    @classmethod
    def _raw(cls, terms: dict, dim: int | None) -> "Element":
        e = cls.__new__(cls)
        e.terms = terms
        e.dim = dim
        return e

    @classmethod
    def scalar(cls, c: RationalLike, dim: int | None = None) -> "Element":
        return cls({(): c}, dim)

    @classmethod
    def word(cls, w: Iterable[int], c: RationalLike = 1, dim: int | None = None) -> "Element":
        return cls({tuple(w): c}, dim)

    # structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_part(self, k: int) -> "Element":
        return Element._raw({w: c for w, c in self.terms.items() if len(w) == k}, self.dim)

    def is_homogeneous(self, k: int | None = None) -> bool:
        lens = {len(w) for w in self.terms}
        if k is None:
            return len(lens) <= 1
        return lens <= {k}

    def coefficient(self, w: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def scalar_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))

    def __len__(self):
        return len(self.terms)

    # arithmetic -----------------------------------------------------------
    def _dim_with(self, other: "Element") -> int | None:
        if self.dim is not None and other.dim is not None and self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return self.dim if self.dim is not None else other.dim

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            return other
        return Element.scalar(to_rational(other), self.dim)

    def __add__(self, other):
        other = self._coerce(other)
        dim = self._dim_with(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Element._raw(out, dim)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw({w: -c for w, c in self.terms.items()}, self.dim)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: RationalLike) -> "Element":
        c = to_rational(c)
        if not c:
            return Element._raw({}, self.dim)
        return Element._raw({w: c * v for w, v in self.terms.items()}, self.dim)

    def __mul__(self, other):
        if isinstance(other, Element):
            return concat(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / to_rational(c))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Element.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def _sorted_terms(x: Element, descending: bool = False):
    return sorted(x.terms.items(), key=lambda t: (len(t[0]), t[0]), reverse=descending)


def format_terms(items, word_text) -> str:
    """Join ``(key, coefficient)`` pairs as ``c*word + ...``; empty means ``0``."""
    parts = []
    for key, c in items:
        mono = word_text(key)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"


def format_element(x: Element, letter: str = "e") -> str:
    """Canonical text: terms by (degree, lexicographic word), e.g. ``1/2*e1.e2 - 1/2*e2.e1``."""
    return format_terms(_sorted_terms(x), lambda w: ".".join(f"{letter}{a}" for a in w))


# operations ---------------------------------------------------------------
def concat(x: Element, y: Element) -> Element:
    """Tensor product: bilinear extension of word concatenation."""
    dim = x._dim_with(y)
    out: dict = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return Element._raw(out, dim)


def tensor(*factors: Element) -> Element:
    out = Element.scalar(1)
    for f in factors:
        out = concat(out, f)
    return out


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _project(x: Element, k: int, signed: bool) -> Element:
    perms = list(itertools.permutations(range(k)))
    weight = Fraction(1, math.factorial(k))
    out: dict = {}
    for w, c in x.terms.items():
        for p in perms:
            s = _perm_sign(p) if signed else 1
            pw = tuple(w[p[j]] for j in range(k))
            v = out.get(pw, 0) + s * weight * c
            if v:
                out[pw] = v
            else:
                out.pop(pw, None)
    return Element._raw(out, x.dim)


def _require_homogeneous(x: Element, k: int | None) -> int:
    degs = {len(w) for w in x.terms}
    if k is None:
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0
    if not degs <= {k}:
        raise ValueError(f"element is not homogeneous of degree {k}")
    return k


def symmetrize(x: Element, k: int | None = None) -> Element:
    """Average over all slot permutations of a homogeneous element."""
    return _project(x, _require_homogeneous(x, k), signed=False)


def antisymmetrize(x: Element, k: int | None = None) -> Element:
    """Signed average over slot permutations; the projector behind ``wedge``."""
    return _project(x, _require_homogeneous(x, k), signed=True)


def wedge(*vectors: Element) -> Element:
    """The k-blade of degree-0/1 arguments: (1/k!) sum_sigma sgn(sigma) v_sigma(1) ... v_sigma(k).

    Scalar (degree-0) arguments act as 0-blades and just scale the result.
    """
    if len(vectors) == 1 and isinstance(vectors[0], (list, tuple)):
        vectors = tuple(vectors[0])
    scale = Fraction(1)
    vecs = []
    for v in vectors:
        if v.degree > 1 or (v.degree == 1 and not v.is_homogeneous(1)):
            raise ValueError("wedge arguments must be scalars or vectors")
        if v.degree <= 0:
            scale *= v.scalar_part()
        else:
            vecs.append(v)
    dim = None
    for v in vectors:
        dim = v.dim if dim is None else dim
    if not vecs:
        return Element.scalar(scale, dim)
    return antisymmetrize(tensor(*vecs), len(vecs)).scale(scale)


def exterior(x: Element, y: Element) -> Element:
    """Wedge of arbitrary elements: antisymmetrized tensor product, degree by degree."""
    out = Element._raw({}, x._dim_with(y))
    for k in {len(w) for w in x.terms}:
        for m in {len(w) for w in y.terms}:
            out = out + antisymmetrize(concat(x.homogeneous_part(k), y.homogeneous_part(m)), k + m)
    return out


def apply_permutation(x: Element, tau: Sequence[int]) -> Element:
    """Permute slots: output slot j carries input slot tau[j] (0-based)."""
    k = len(tau)
    if sorted(tau) != list(range(k)):
        raise ValueError(f"{tuple(tau)} is not a permutation of {k} slots")
    _require_homogeneous(x, k)
    return Element._raw({tuple(w[tau[j]] for j in range(k)): c for w, c in x.terms.items()}, x.dim)


def contract(x: Element, slots: tuple[int, int], space: MetricSpace) -> Element:
    """Metric trace over 1-based slots ``m < n`` of a homogeneous element."""
    k = _require_homogeneous(x, None)
    m, n = slots
    if not (1 <= m < n <= k):
        raise ValueError(f"slots {slots} out of range for degree {k}")
    out: dict = {}
    for w, c in x.terms.items():
        g = space.g(w[m - 1], w[n - 1])
        if g:
            rest = w[: m - 1] + w[m : n - 1] + w[n:]
            v = out.get(rest, 0) + g * c
            if v:
                out[rest] = v
            else:
                out.pop(rest, None)
    return Element._raw(out, x.dim)
