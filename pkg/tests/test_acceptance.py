"""Exit criteria, one test per criterion, each with its runtime budget.

All comparisons are exact (Fraction arithmetic); a summary table with one
PASS/FAIL line per criterion is printed at the end of the pytest run.
"""
import itertools
import math
import random
from fractions import Fraction

import pytest

from qfock.fock import (
    Basis,
    FockVector,
    gram_matrix,
    inner_product,
    inner_product_bruteforce,
    ldlt_pivots,
    norm_sq,
    random_vector,
)
from qfock.mixing import (
    SUMMABLE,
    bimodularity_check,
    cond_exp_vector,
    mixing_coefficient,
    mixing_series,
)
from qfock.ops import (
    apply_W,
    apply_W_recursive,
    apply_wick,
    q_commutation_defect,
    shuffle_representatives,
    trace,
    wick_expand,
)
from qfock.scalar import QParam, q_binomial, q_factorial, q_int

ALL_QS = [QParam(v) for v in (Fraction(0), Fraction(1, 2), Fraction(-1, 2),
                              Fraction(3, 10), Fraction(-3, 10))]
NONZERO_QS = ALL_QS[1:]
SMALL_QS = ALL_QS[:3]


def E(n):
    return FockVector.word((0,) * n)


@pytest.mark.criterion(1, "norm formula ||e^n||^2 = [n]_q!", 10)
def test_norm_formula():
    for q in ALL_QS:
        for n in range(11):
            want = q_factorial(n, q)
            assert inner_product(E(n), E(n), q) == want
            if n <= 8:
                assert inner_product_bruteforce(E(n), E(n), q) == want


@pytest.mark.criterion(2, "q-commutation defect is zero", 10)
def test_q_commutation():
    dim = 3
    for q in SMALL_QS:
        rng = random.Random(2024)
        for _ in range(100):
            v = random_vector(rng, dim, 6, q)
            for a in range(dim):
                for b in range(dim):
                    assert q_commutation_defect(a, b, v, q).is_zero()


@pytest.mark.criterion(3, "Wick expansion reproduces words; agrees with recursion", 30)
def test_wick_consistency():
    words = [w for w in Basis(2).words_upto(6)]
    assert len(words) == 2 ** 7 - 1
    for q in ALL_QS:
        for w in words:
            assert apply_wick(wick_expand(w, q), FockVector.vacuum(), q) == FockVector.word(w)
        rng = random.Random(3)
        for _ in range(50):
            word = tuple(rng.randrange(2) for _ in range(rng.randint(0, 5)))
            v = random_vector(rng, 2, 5, q)
            assert apply_wick(wick_expand(word, q), v, q) == apply_W_recursive(word, v, q)


@pytest.mark.criterion(4, "q-Hermite ladder and orthogonality of e^j", 5)
def test_hermite_and_orthogonality():
    for q in ALL_QS:
        for n in range(13):
            want = E(n + 1) + (q_int(n, q) * E(n - 1) if n else FockVector())
            assert apply_W((0,), E(n), q) == want
        for i in range(9):
            for j in range(9):
                want = q_factorial(j, q) if i == j else 0
                assert inner_product(E(i), E(j), q) == want


@pytest.mark.criterion(5, "mixing closed form C_N = q^(2N) and exact partial sums", 60)
def test_mixing_closed_form():
    for q in NONZERO_QS:
        x = q.value
        partial = Fraction(0)
        for N in range(13):
            c = mixing_coefficient((1,), (1,), N, q)
            assert c == x ** (2 * N)
            partial += c
            assert partial == (1 - x ** (2 * N + 2)) / (1 - x ** 2)
            assert abs(partial - 1 / (1 - x ** 2)) == x ** (2 * N + 2) / (1 - x ** 2)


@pytest.mark.criterion(6, "decay evidence for all matched word pairs of length <= 3", 600)
def test_decay_evidence():
    words = Basis(2).words_upto(3)
    pairs = [(a, b) for a in words for b in words if a.count(1) == b.count(1)]
    assert len(pairs) == 69
    for q in (QParam(Fraction(1, 2)), QParam(Fraction(-1, 2))):
        for a, b in pairs:
            s = mixing_series(a, b, 24, q)
            assert all(c >= 0 for c in s.values)
            assert s.verdict == SUMMABLE, (q, a, b)
            assert s.eventual_n0 is not None and s.eventual_n0 <= 16, (q, a, b, s.eventual_n0)
            if 1 not in a or 1 not in b:
                assert all(c == 0 for c in s.values)


@pytest.mark.criterion(7, "conditional expectation contract", 30)
def test_conditional_expectation():
    q = QParam(Fraction(1, 2))
    rng = random.Random(7)
    for _ in range(50):
        xi = random_vector(rng, 2, 5, q, n_terms=6)
        p = cond_exp_vector(xi)
        assert cond_exp_vector(p) == p
        assert trace(p) == trace(xi)
        assert norm_sq(p, q) <= norm_sq(xi, q)
        a = (0,) * rng.randint(0, 3)
        b = (0,) * rng.randint(0, 3)
        assert bimodularity_check(a, xi, b, q).is_zero()


@pytest.mark.criterion(8, "positivity: exact LDL^T pivots of the Gram matrix", 30)
def test_positivity():
    for q in NONZERO_QS:
        pivots = []
        for n in range(5):
            pivots += ldlt_pivots(gram_matrix(Basis(2).words(n), q))
        assert len(pivots) == 31
        assert all(p >= 0 for p in pivots)


@pytest.mark.criterion(9, "shuffle representatives vs q-binomials and coset counts", 5)
def test_combinatorics():
    for q in ALL_QS:
        for n in range(11):
            for i in range(n + 1):
                reps = shuffle_representatives(n, i)
                assert len(reps) == math.factorial(n) // (math.factorial(n - i) * math.factorial(i))
                assert sum(q.pow(r.inversions) for r in reps) == q_binomial(n, i, q)
