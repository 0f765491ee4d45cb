"""Conditional expectation onto the generator subalgebra and mixing coefficients.

Elements ``W(xi)`` of the algebra are handled through their vacuum vectors
``xi``.  The generator-subalgebra basis element ``v_N`` is never normalized:
``||W(e^{xN})||_2^2 = [N]_q!`` is rational while its square root usually is
not, so every coefficient divides a squared norm by ``[N]_q!`` instead.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .fock import (
    DEFAULT_DEGREE_CAP,
    Basis,
    FockVector,
    Word,
    format_word,
    inner_product,
    norm_sq,
    project_pure_e,
)
from .ops import apply_W, apply_W_vector
from .scalar import DomainError, QParam, Scalar, format_scalar, q_factorial

SUMMABLE = "summable-evidence"
INCONCLUSIVE = "inconclusive"


def cond_exp_vector(xi: FockVector) -> FockVector:
    """Vector symbol of ``E_A(W(xi))``."""
    return project_pure_e(xi)


def is_pure_e(word: Sequence[int]) -> bool:
    return all(x == 0 for x in word)


def mixing_coefficient(word_a: Sequence[int], word_b: Sequence[int], N: int, q: QParam,
                       dim: int = 2, cap: int = DEFAULT_DEGREE_CAP) -> Scalar:
    """``C_N = ||E_A(a v_N b) - E_A(a) v_N E_A(b)||_2^2`` for ``a = W(word_a)``, ``b = W(word_b)``."""
    basis = Basis(dim)
    basis.require_mixing()
    if N < 0:
        raise DomainError("N must be >= 0")
    word_a, word_b = tuple(word_a), tuple(word_b)
    for w in (word_a, word_b):
        if any(x < 0 or x >= dim for x in w):
            raise DomainError(f"word {format_word(w)!r} has letters outside dimension {dim}")

    eN = (0,) * N
    xb = FockVector.word(word_b, q.one())
    lhs = cond_exp_vector(apply_W(word_a, apply_W(eN, xb, q, cap), q, cap))

    ea = cond_exp_vector(FockVector.word(word_a, q.one()))
    eb = cond_exp_vector(xb)
    rhs = apply_W_vector(ea, apply_W(eN, eb, q, cap), q, cap) if ea and eb else FockVector()

    delta = lhs - rhs
    if not delta:
        return q.zero()
    return norm_sq(delta, q) / q_factorial(N, q)


def _coefficient_job(args):
    return mixing_coefficient(*args)


@dataclass
class MixingSeries:
    q: QParam
    word_a: Word
    word_b: Word
    n_max: int
    values: List[Scalar]
    partial_sums: List[Scalar] = field(default_factory=list)
    ratios: List[Optional[Scalar]] = field(default_factory=list)
    fitted_rate: Optional[float] = None
    eventual_n0: Optional[int] = None
    verdict: str = INCONCLUSIVE

    def to_json(self) -> dict:
        exact = self.q.exact
        entries = []
        for N, (c, s, r) in enumerate(zip(self.values, self.partial_sums, self.ratios)):
            entries.append({
                "N": N,
                "c_exact": format_scalar(c) if exact else None,
                "c_float": float(c),
                "partial_sum_exact": format_scalar(s) if exact else None,
                "partial_sum_float": float(s),
                "ratio_exact": format_scalar(r) if exact and r is not None else None,
                "ratio_float": None if r is None else float(r),
            })
        return {
            "q": str(self.q),
            "backend": self.q.backend,
            "a": format_word(self.word_a),
            "b": format_word(self.word_b),
            "entries": entries,
            "fitted_rate": self.fitted_rate,
            "eventual_n0": self.eventual_n0,
            "verdict": self.verdict,
        }


def fit_geometric_rate(values: Sequence[Scalar], n_max: int) -> Optional[float]:
    """Least-squares rate ``r`` with ``C_N ~ r^N`` over the tail.

    The tail is the last ``ceil(n_max / 2)`` indices; zero values are left
    out of the log fit.  Returns 0.0 for an identically zero tail and None
    when fewer than two nonzero points remain.
    """
    start = len(values) - math.ceil(n_max / 2)
    pts = [(N, float(values[N])) for N in range(max(start, 0), len(values))]
    nonzero = [(N, c) for N, c in pts if c > 0]
    if not nonzero:
        return 0.0
    if len(nonzero) < 2:
        return None
    xs = np.array([N for N, _ in nonzero], dtype=float)
    ys = np.log(np.array([c for _, c in nonzero]))
    slope, _ = np.polyfit(xs, ys, 1)
    return float(np.exp(slope))


def _eventual_n0(values: Sequence[Scalar]) -> Optional[int]:
    """Smallest N0 with C_{N+1} < C_N for every N0 <= N < N_max, ignoring 0 -> 0 steps."""
    n0 = 0
    for N in range(len(values) - 1):
        a, b = values[N], values[N + 1]
        if a == 0 and b == 0:
            continue
        if a == 0 or not b < a:
            n0 = N + 1
    return n0 if n0 < len(values) else None


def mixing_series(word_a: Sequence[int], word_b: Sequence[int], n_max: int, q: QParam,
                  dim: int = 2, cap: int = DEFAULT_DEGREE_CAP, workers: int = 1) -> MixingSeries:
    if n_max < 4:
        raise DomainError("mixing_series needs n_max >= 4")
    word_a, word_b = tuple(word_a), tuple(word_b)
    jobs = [(word_a, word_b, N, q, dim, cap) for N in range(n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_coefficient_job, jobs))
    else:
        values = [_coefficient_job(j) for j in jobs]

    partial, acc = [], q.zero()
    for c in values:
        acc += c
        partial.append(acc)
    ratios: List[Optional[Scalar]] = [
        values[N + 1] / values[N] if N + 1 < len(values) and values[N] != 0 else None
        for N in range(len(values))
    ]

    rate = fit_geometric_rate(values, n_max)
    n0 = _eventual_n0(values)
    verdict = INCONCLUSIVE
    if rate is not None and rate < 1:
        bound = (1 + rate) / 2
        quarter = math.ceil(n_max / 4)
        tail = range(n_max - quarter, n_max)
        ok = True
        for N in tail:
            if values[N] == 0:
                ok = ok and values[N + 1] == 0
            elif float(ratios[N]) > bound:
                ok = False
        if ok:
            verdict = SUMMABLE
    return MixingSeries(q, word_a, word_b, n_max, values, partial, ratios, rate, n0, verdict)


@dataclass
class OrthoReport:
    j_max: int
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def basis_orthonormality_check(j_max: int, q: QParam) -> OrthoReport:
    """Check ``<e^i, e^j> = delta_ij [j]_q!`` for ``0 <= i, j <= j_max``."""
    if j_max < 1:
        raise DomainError("j_max must be >= 1")
    vecs = [FockVector.word((0,) * j, q.one()) for j in range(j_max + 1)]
    violations = []
    for i in range(j_max + 1):
        for j in range(j_max + 1):
            got = inner_product(vecs[i], vecs[j], q)
            want = q_factorial(j, q) if i == j else q.zero()
            if got != want:
                violations.append((i, j, got, want))
    return OrthoReport(j_max, (j_max + 1) ** 2, violations)


def bimodularity_check(pure_word_a: Sequence[int], xi: FockVector, pure_word_b: Sequence[int],
                       q: QParam, cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    """``E_A(a x b) - a E_A(x) b`` at the vacuum, for ``a, b`` in the subalgebra."""
    if not (is_pure_e(pure_word_a) and is_pure_e(pure_word_b)):
        raise DomainError("bimodularity_check needs words in letter 0 only")
    b_vac = FockVector.word(pure_word_b, q.one())
    left = cond_exp_vector(apply_W(pure_word_a, apply_W_vector(xi, b_vac, q, cap), q, cap))
    right = apply_W(pure_word_a, apply_W_vector(cond_exp_vector(xi), b_vac, q, cap), q, cap)
    return left - right
