"""Numeric spin-s representations of so(3), used as an independent oracle.

Everything here is double precision; the symbolic modules never import it.
Generators are anti-Hermitian, J_a = -i S_a, so that [J_a, J_b] = eps_abc J_c
and J_1^2 + J_2^2 + J_3^2 = -s(s+1).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .freealg import Element
from .scalar import RationalLike, casimir_value, format_rational, half_integer
from .uea import PBWElement, levi_civita, multipole, multipole_words

CONSTRUCTION_TOL = 1e-12
CHECK_TOL = 1e-9
SURVIVAL_TOL = 1e-6
RANK_TOL = 1e-9


@dataclass(frozen=True)
class SpinRep:
    s: Fraction
    matrices: tuple

    @property
    def size(self) -> int:
        return self.matrices[0].shape[0]

    def identity(self) -> np.ndarray:
        return np.eye(self.size, dtype=complex)

    def generator(self, a: int) -> np.ndarray:
        return self.matrices[a - 1]

    def casimir(self) -> np.ndarray:
        return sum(m @ m for m in self.matrices)

    def invariant_residuals(self) -> dict[str, float]:
        """Largest entry deviation from the bracket relations and from the Casimir value."""
        bracket = 0.0
        for a, b in itertools.combinations(range(1, 4), 2):
            A, B = self.generator(a), self.generator(b)
            expected = sum(levi_civita(a, b, c) * self.generator(c) for c in range(1, 4))
            bracket = max(bracket, float(np.max(np.abs(A @ B - B @ A - expected))))
        cas = self.casimir() - float(casimir_value(self.s)) * self.identity()
        return {"bracket": bracket, "casimir": float(np.max(np.abs(cas)))}


def spin_matrices(s: RationalLike) -> SpinRep:
    """Ladder-operator construction in the basis m = s, s-1, ..., -s."""
    s = half_integer(s)
    dim = int(2 * s + 1)
    ms = [float(s) - i for i in range(dim)]
    sf = float(s)
    raise_ = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        m = ms[i]
        raise_[i - 1, i] = math.sqrt(sf * (sf + 1) - m * (m + 1))
    lower = raise_.conj().T
    sx = (raise_ + lower) / 2
    sy = (raise_ - lower) / 2j
    sz = np.diag(ms).astype(complex)
    return SpinRep(s, tuple(-1j * m for m in (sx, sy, sz)))


def _word_product(mats: tuple, word, size: int) -> np.ndarray:
    out = np.eye(size, dtype=complex)
    for a in word:
        out = out @ mats[a - 1]
    return out


def evaluate(x, rep: SpinRep) -> np.ndarray:
    """Image of a PBW element, a J-word Element, or a scalar."""
    if isinstance(x, (int, Fraction)):
        return float(x) * rep.identity()
    out = np.zeros((rep.size, rep.size), dtype=complex)
    if isinstance(x, PBWElement):
        for m, c in x.terms.items():
            term = rep.identity()
            for a, e in zip(range(3), m):
                if e:
                    term = term @ np.linalg.matrix_power(rep.matrices[a], e)
            out += float(c) * term
        return out
    for w, c in x.terms.items():
        out += float(c) * _word_product(rep.matrices, w, rep.size)
    return out


def vector_matrices(rep: SpinRep) -> tuple:
    """e_a -> sqrt(2) J_a.

    With this choice e_a^e_b maps to eps_abc J_c, the weak bivector relation
    holds, and the weak J transform sends J_p to J_p, so these matrices
    represent the spin-s weak Clifford algebra.
    """
    return tuple(math.sqrt(2) * m for m in rep.matrices)


def evaluate_vectors(x: Element, rep: SpinRep) -> np.ndarray:
    """Image of an Element over vector letters e1, e2, e3."""
    mats = vector_matrices(rep)
    out = np.zeros((rep.size, rep.size), dtype=complex)
    for w, c in x.terms.items():
        out += float(c) * _word_product(mats, w, rep.size)
    return out


def _max_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def _unique_multipole_images(k: int, rep: SpinRep) -> dict[tuple, np.ndarray]:
    return {w: evaluate(multipole(k, w), rep) for w in multipole_words(k)}


def verify_spin_ideal(s: RationalLike) -> dict:
    """Check that the order-(2s+1) multipoles vanish on spin s while lower orders survive."""
    s = half_integer(s)
    rep = spin_matrices(s)
    top = int(2 * s + 1)
    checks = []
    inv = rep.invariant_residuals()
    for name, r in inv.items():
        checks.append({"name": f"construction:{name}", "max_residual": r,
                       "tolerance": CONSTRUCTION_TOL, "pass": r < CONSTRUCTION_TOL})
    vanishing = max(_max_norm(m) for m in _unique_multipole_images(top, rep).values())
    checks.append({"name": f"order {top} multipoles vanish", "max_residual": vanishing,
                   "tolerance": CHECK_TOL, "pass": vanishing < CHECK_TOL})
    for k in range(top):
        norm = max(_max_norm(m) for m in _unique_multipole_images(k, rep).values())
        # reported as the surviving norm; passing means it stays above the threshold
        checks.append({"name": f"order {k} multipoles survive", "max_residual": norm,
                       "tolerance": SURVIVAL_TOL, "pass": norm > SURVIVAL_TOL})
    return {"s": format_rational(s), "checks": checks}


def multipole_span_rank(s: RationalLike) -> int:
    """Real rank of all multipole images of orders 0..2s, stacked as real vectors."""
    s = half_integer(s)
    rep = spin_matrices(s)
    rows = []
    for k in range(int(2 * s + 1)):
        for m in _unique_multipole_images(k, rep).values():
            flat = m.reshape(-1)
            rows.append(np.concatenate([flat.real, flat.imag]))
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    return int(np.sum(sv > RANK_TOL))
