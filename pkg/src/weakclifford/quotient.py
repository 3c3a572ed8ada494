"""Degree-truncated quotients of the free tensor algebra by two-sided ideals.

A context eliminates the ideal up to a truncation degree N = D + H using
deg-lex leading words (longer words are greater; equal lengths compare
lexicographically, higher indices greater).  Elimination is organised as an
overlap-driven Buchberger loop: every ambiguity whose overlap word has degree
at most N is resolved, which row-reduces all sandwiches x r y of degree at
most N and, in addition, the sandwiches of any lower-degree consequence found
along the way.  Everything retained lies in the ideal.  Words of degree at
most D that contain no leading word are the quotient basis.
"""
from __future__ import annotations

import heapq
import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .freealg import Element, MetricSpace, concat
from .geometry import basis_bivector, pbw_image
from .scalar import RationalLike, casimir_value, format_rational, half_integer
from .uea import casimir, levi_civita, multipole, multipole_words, to_free

log = logging.getLogger(__name__)

ONE = Fraction(1)


# relation families ----------------------------------------------------------
@dataclass(frozen=True)
class RelationFamily:
    name: str
    dim: int
    build: Callable[[], list[Element]] = field(repr=False)
    letter: str = "e"

    def generators(self, max_degree: int | None = None) -> list[Element]:
        gens = [g for g in self.build() if not g.is_zero()]
        if max_degree is not None:
            gens = [g for g in gens if g.degree <= max_degree]
        return gens


def free_relations(n: int = 3) -> RelationFamily:
    return RelationFamily(f"free({n})", n, lambda: [])


def clifford_relations(space: MetricSpace) -> RelationFamily:
    """v w + w v - 2 g(v, w) on basis pairs."""

    def build():
        out = []
        for a in range(1, space.dim + 1):
            for b in range(a, space.dim + 1):
                r = Element({(a, b): 1}, space.dim) + Element({(b, a): 1}, space.dim)
                out.append(r - Element.scalar(2 * space.g(a, b), space.dim))
        return out

    return RelationFamily("clifford", space.dim, build)


def weak_relation(space: MetricSpace, a: int, b: int, c: int) -> Element:
    """(a^b) c - c (a^b) - g(a,c) b + g(b,c) a on basis vectors."""
    B = basis_bivector(a, b, space.dim)
    ec = space.basis(c)
    return (
        concat(B, ec)
        - concat(ec, B)
        - space.basis(b).scale(space.g(a, c))
        + space.basis(a).scale(space.g(b, c))
    )


def weak_relations(space: MetricSpace) -> RelationFamily:
    def build():
        return [
            weak_relation(space, a, b, c)
            for a in range(1, space.dim + 1)
            for b in range(a + 1, space.dim + 1)
            for c in range(1, space.dim + 1)
        ]

    return RelationFamily("weak", space.dim, build)


def symmetric_relations(n: int = 3) -> RelationFamily:
    def build():
        return [
            Element({(a, b): 1, (b, a): -1}, n) for a in range(1, n + 1) for b in range(a + 1, n + 1)
        ]

    return RelationFamily("sym", n, build)


def casimir_relation(s: RationalLike, letters: str = "e") -> Element:
    """C + s(s+1), in vector words (weak transform) or J words."""
    shift = -casimir_value(s)
    if letters == "J":
        return to_free(casimir()) + Element.scalar(shift)
    return pbw_image(casimir()) + Element.scalar(shift, 3)


def multipole_generators(s: RationalLike, letters: str = "e") -> list[Element]:
    """Images of the order-(2s+1) multipoles for every index word."""
    s = half_integer(s)
    k = int(2 * s + 1)
    gens = []
    for w in multipole_words(k):
        mu = multipole(k, w)
        gens.append(to_free(mu) if letters == "J" else pbw_image(mu))
    return gens


def spin_ideal_relations(s: RationalLike) -> RelationFamily:
    """Generators added to the weak relations for the spin-s weak Clifford algebra.

    These are the order-(2s+1) multipoles in vector words plus the Casimir
    relation C + s(s+1); the multipoles alone would also admit every lower spin.
    """
    s = half_integer(s)
    if s == 0:
        raise ValueError(
            "spin 0 cannot be imposed through multipoles on the weak algebra "
            "(it collapses to the scalars); use symmetric_relations instead"
        )

    def build():
        return multipole_generators(s) + [casimir_relation(s)]

    return RelationFamily(f"spin-ideal({format_rational(s)})", 3, build)


def spin_weak_relations(s: RationalLike) -> RelationFamily:
    """The full relation set of the spin-s weak Clifford algebra (s >= 1/2)."""
    s = half_integer(s)
    weak = weak_relations(MetricSpace.euclidean(3))
    ideal = spin_ideal_relations(s)
    return RelationFamily(
        f"spin({format_rational(s)})", 3, lambda: weak.generators() + ideal.generators()
    )


def uea_relations() -> RelationFamily:
    """J_a J_b - J_b J_a - eps_abc J_c over J letters: U(so(3))."""

    def build():
        out = []
        for a, b in ((1, 2), (1, 3), (2, 3)):
            c = 6 - a - b
            out.append(Element({(a, b): 1, (b, a): -1, (c,): -levi_civita(a, b, c)}))
        return out

    return RelationFamily("uea", 3, build, letter="J")


def spin_algebra_relations(s: RationalLike, fix_casimir: bool = True) -> RelationFamily:
    """U(so(3)) modulo the order-(2s+1) multipoles (and, by default, C + s(s+1))."""
    s = half_integer(s)

    def build():
        gens = uea_relations().generators() + multipole_generators(s, "J")
        if fix_casimir:
            gens.append(casimir_relation(s, "J"))
        return gens

    tag = "" if fix_casimir else ",multipoles-only"
    return RelationFamily(f"A({format_rational(s)}{tag})", 3, build, letter="J")


# engine -------------------------------------------------------------------------
def _enc(w: Sequence[int]) -> str:
    return "".join(chr(48 + a) for a in w)


def _dec(w: str) -> tuple:
    return tuple(ord(ch) - 48 for ch in w)


def _key(w: str):
    return (len(w), w)


def _lead(p: dict) -> str:
    return max(p, key=_key)


def _axpy(out: dict, p: dict, f) -> None:
    for w, c in p.items():
        v = out.get(w, 0) + f * c
        if v:
            out[w] = v
        else:
            del out[w]


class _Reducer:
    """Leading-word table plus a memo of word normal forms for the current table."""

    def __init__(self):
        self.rules: dict[str, dict] = {}
        self.lengths: list[int] = []
        self.cache: dict[str, dict] = {}

    def add(self, p: dict) -> str:
        lead = _lead(p)
        c = p[lead]
        self.rules[lead] = {w: x / c for w, x in p.items()}
        self.lengths = sorted({len(w) for w in self.rules})
        self.cache.clear()
        return lead

    def remove(self, lead: str) -> dict:
        p = self.rules.pop(lead)
        self.lengths = sorted({len(w) for w in self.rules})
        self.cache.clear()
        return p

    def find(self, w: str):
        rules, n = self.rules, len(w)
        for i in range(n):
            for l in self.lengths:
                if i + l > n:
                    break
                if w[i : i + l] in rules:
                    return i, l
        return None

    def word_nf(self, w: str) -> dict:
        cache = self.cache
        got = cache.get(w)
        if got is not None:
            return got
        stack = [w]
        plans: dict[str, list] = {}
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            plan = plans.get(u)
            if plan is None:
                hit = self.find(u)
                if hit is None:
                    cache[u] = {u: ONE}
                    stack.pop()
                    continue
                i, l = hit
                x, y, lead = u[:i], u[i + l :], u[i : i + l]
                plan = [(x + t + y, -c) for t, c in self.rules[lead].items() if t != lead]
                plans[u] = plan
            missing = [v for v, _ in plan if v not in cache]
            if missing:
                stack.extend(missing)
                continue
            res: dict = {}
            for v, f in plan:
                _axpy(res, cache[v], f)
            cache[u] = res
            stack.pop()
        return cache[w]

    def nf(self, p: dict) -> dict:
        out: dict = {}
        for w, c in p.items():
            _axpy(out, self.word_nf(w), c)
        return out


def _overlaps(u: str, v: str):
    """Proper overlaps: nonempty suffix of u equal to a prefix of v, both words longer."""
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            yield k


def _mul_word_left(x: str, p: dict) -> dict:
    return {x + w: c for w, c in p.items()}


def _mul_word_right(p: dict, y: str) -> dict:
    return {w + y: c for w, c in p.items()}


@dataclass
class BuildStats:
    pairs: int = 0
    reductions_to_zero: int = 0
    rules_added: int = 0
    seconds: float = 0.0


class QuotientContext:
    """Normal forms modulo an ideal, valid for elements of degree at most ``max_degree``."""

    def __init__(self, dim: int, relations: Sequence[Element], max_degree: int, headroom: int = 2,
                 name: str = "", letter: str = "e"):
        if max_degree < 0 or headroom < 0:
            raise ValueError("degree bound and headroom must be nonnegative")
        self.dim = dim
        self.max_degree = max_degree
        self.headroom = headroom
        self.name = name
        self.letter = letter
        self.stats = BuildStats()
        self._red = _Reducer()
        t0 = time.perf_counter()
        self._eliminate([{_enc(w): c for w, c in r.terms.items()} for r in relations])
        self.stats.seconds = time.perf_counter() - t0
        self._basis = self._enumerate_basis()

    @property
    def truncation(self) -> int:
        return self.max_degree + self.headroom

    # elimination ------------------------------------------------------------
    def _eliminate(self, relations: list[dict]) -> None:
        N = self.truncation
        red = self._red
        pending: list = []  # heap of (degree, seq, polynomial)
        seq = itertools.count()
        alive: dict[str, int] = {}  # lead word -> generation id

        def push_poly(p: dict):
            if p:
                heapq.heappush(pending, (len(_lead(p)), next(seq), "poly", p))

        for r in relations:
            push_poly(dict(r))

        while pending:
            deg, _, kind, item = heapq.heappop(pending)
            if kind == "pair":
                l1, id1, l2, id2, k = item
                if alive.get(l1) != id1 or alive.get(l2) != id2:
                    continue
                self.stats.pairs += 1
                g1, g2 = red.rules[l1], red.rules[l2]
                s = _mul_word_right(g1, l2[k:])
                _axpy(s, _mul_word_left(l1[:-k], g2), -1)
                p = s
            else:
                p = item
            h = red.nf(p)
            if not h:
                self.stats.reductions_to_zero += 1
                continue
            lead = _lead(h)
            # rules whose leading word contains the new one are superseded
            for old in [w for w in red.rules if lead in w and w != lead]:
                q = red.remove(old)
                alive.pop(old, None)
                push_poly(q)
            red.add(h)
            gen_id = next(seq)
            alive[lead] = gen_id
            self.stats.rules_added += 1
            for other, oid in list(alive.items()):
                for k in _overlaps(lead, other):
                    d = len(lead) + len(other) - k
                    if d <= N:
                        heapq.heappush(pending, (d, next(seq), "pair", (lead, gen_id, other, oid, k)))
                if other != lead:
                    for k in _overlaps(other, lead):
                        d = len(lead) + len(other) - k
                        if d <= N:
                            heapq.heappush(pending, (d, next(seq), "pair", (other, oid, lead, gen_id, k)))
        # tail-reduce the rules so each is lead + normal words
        for lead in sorted(red.rules, key=_key):
            rule = red.rules[lead]
            tail = {w: c for w, c in rule.items() if w != lead}
            red.rules[lead] = {lead: ONE, **{w: c for w, c in red.nf(tail).items()}}
        red.cache.clear()

    def _enumerate_basis(self) -> list[list[tuple]]:
        red = self._red
        levels: list[list[str]] = [[""]]
        letters = [chr(48 + a) for a in range(1, self.dim + 1)]
        for d in range(1, self.max_degree + 1):
            nxt = []
            for w in levels[-1]:
                for ch in letters:
                    u = w + ch
                    if not any(u[len(u) - l :] in red.rules for l in red.lengths if l <= len(u)):
                        nxt.append(u)
            levels.append(nxt)
        return [[_dec(w) for w in lvl] for lvl in levels]

    # public surface ---------------------------------------------------------
    def reduce(self, x: Element) -> Element:
        if x.degree > self.max_degree:
            raise ValueError(f"degree {x.degree} exceeds the context bound {self.max_degree}")
        out = self._red.nf({_enc(w): c for w, c in x.terms.items()})
        return Element._raw({_dec(w): c for w, c in out.items()}, x.dim if x.dim is not None else self.dim)

    def dims(self) -> list[int]:
        """Cumulative quotient dimension in degrees 0..D."""
        return list(itertools.accumulate(len(lvl) for lvl in self._basis))

    def graded_dims(self) -> list[int]:
        return [len(lvl) for lvl in self._basis]

    def quotient_basis(self, degree: int | None = None) -> list[tuple]:
        if degree is None:
            return [w for lvl in self._basis for w in lvl]
        return list(self._basis[degree])

    def reduction_rules(self) -> dict[tuple, Element]:
        """The eliminated ideal segment: leading word -> monic rule (lead - normal tail)."""
        return {_dec(l): Element({_dec(w): c for w, c in r.items()}, self.dim) for l, r in self._red.rules.items()}

    def contains(self, x: Element) -> bool:
        return self.reduce(x).is_zero()

    def element(self, terms) -> Element:
        return Element(terms, self.dim)


def build_context(space_or_dim, relations: RelationFamily, D: int, H: int = 2) -> QuotientContext:
    dim = space_or_dim.dim if isinstance(space_or_dim, MetricSpace) else int(space_or_dim)
    if relations.dim != dim:
        raise ValueError(f"relation family is over dimension {relations.dim}, not {dim}")
    gens = relations.generators(D + H)
    return QuotientContext(dim, gens, D, H, name=relations.name, letter=relations.letter)


def reduce(ctx: QuotientContext, x: Element) -> Element:
    return ctx.reduce(x)


def dims(ctx: QuotientContext) -> list[int]:
    return ctx.dims()


@dataclass(frozen=True)
class AuditResult:
    stabilized: bool
    dims: list[int]
    dims_more_headroom: list[int]
    headroom: int

    def as_dict(self) -> dict:
        return {
            "stabilized": self.stabilized,
            "dims": self.dims,
            "dims_more_headroom": self.dims_more_headroom,
            "headroom": self.headroom,
        }


def stabilization_audit(space_or_dim, relations: RelationFamily, D: int, H: int = 2,
                        ctx: QuotientContext | None = None) -> AuditResult:
    """Compare dims at headroom H and H + 2; equal sequences mean the truncation has settled."""
    base = ctx if ctx is not None else build_context(space_or_dim, relations, D, H)
    more = build_context(space_or_dim, relations, D, H + 2)
    return AuditResult(base.dims() == more.dims(), base.dims(), more.dims(), H)


# algebra selectors ---------------------------------------------------------------
ALGEBRAS = ("free", "clifford", "weak", "spin:s", "sym")


def algebra_family(selector: str, space: MetricSpace | None = None) -> tuple[RelationFamily, str | None]:
    """Relation family for a selector string, plus an informational note (or None).

    ``spin:0`` is served by the symmetric relations: the multipole ideal on the
    weak algebra would collapse it to the scalars.
    """
    space = space or MetricSpace.euclidean(3)
    sel = selector.strip().lower()
    if sel == "free":
        return free_relations(space.dim), None
    if sel == "clifford":
        return clifford_relations(space), None
    if sel == "weak":
        return weak_relations(space), None
    if sel in ("sym", "symmetric"):
        return symmetric_relations(space.dim), None
    if sel.startswith("spin:"):
        s = half_integer(sel[5:])
        if space != MetricSpace.euclidean(3):
            raise ValueError("spin algebras are defined over three-dimensional Euclidean space")
        if s == 0:
            return symmetric_relations(3), "spin 0 uses the symmetric algebra Sym(E) (separate edge case)"
        return spin_weak_relations(s), None
    raise ValueError(f"unknown algebra {selector!r}; expected one of {', '.join(ALGEBRAS)}")
