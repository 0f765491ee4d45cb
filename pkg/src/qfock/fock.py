"""Words, sparse Fock vectors and the q-deformed inner product.

A word is a tuple of basis-letter indices; letter 0 is the distinguished
generator ``e`` and the empty tuple is the vacuum.  Vectors live in the
algebraic direct sum of tensor powers, never in its completion.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from .scalar import DegreeCapError, DomainError, QParam, Scalar

Word = Tuple[int, ...]

VACUUM: Word = ()
DEFAULT_DEGREE_CAP = 64
BRUTEFORCE_DEGREE_CAP = 8


def parse_word(text: str, dim: int | None = None, cap: int = DEFAULT_DEGREE_CAP) -> Word:
    """``"0,1,1"`` -> ``(0, 1, 1)``; the empty string is the vacuum."""
    s = text.strip()
    if not s:
        return VACUUM
    try:
        word = tuple(int(tok) for tok in s.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse word {text!r}") from exc
    check_word(word, dim, cap)
    return word


def format_word(word: Word) -> str:
    return ",".join(map(str, word))


def check_word(word: Sequence[int], dim: int | None = None, cap: int = DEFAULT_DEGREE_CAP):
    if len(word) > cap:
        raise DegreeCapError(f"word degree {len(word)} exceeds cap {cap}")
    for letter in word:
        if letter < 0 or (dim is not None and letter >= dim):
            raise DomainError(f"letter {letter} out of range for dimension {dim}")


@dataclass(frozen=True)
class Basis:
    """Finite orthonormal basis; letter 0 is ``e``, the rest are orthogonal to it."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("basis dimension must be >= 1")

    def require_mixing(self):
        if self.dim < 2:
            raise DomainError("mixing computations need dimension >= 2")

    def words(self, degree: int) -> list[Word]:
        return list(itertools.product(range(self.dim), repeat=degree))

    def words_upto(self, max_degree: int) -> list[Word]:
        return [w for n in range(max_degree + 1) for w in self.words(n)]


class FockVector:
    """Immutable finite linear combination of words.

    Zero coefficients are never stored, and iteration follows
    (degree, lexicographic) word order so output is reproducible.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Word, Scalar] = {}
        for word, c in items:
            word = tuple(word)
            acc[word] = acc.get(word, 0) + c
        self._terms = {w: acc[w] for w in sorted(acc, key=_word_key) if acc[w] != 0}

    @classmethod
    def word(cls, word: Sequence[int], coeff: Scalar = Fraction(1)) -> "FockVector":
        return cls({tuple(word): coeff})

    @classmethod
    def vacuum(cls, coeff: Scalar = Fraction(1)) -> "FockVector":
        return cls({VACUUM: coeff})

    @classmethod
    def _raw(cls, terms: Dict[Word, Scalar]) -> "FockVector":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> Dict[Word, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, word: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(word), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest word length present (-1 for the zero vector)."""
        return max((len(w) for w in self._terms), default=-1)

    def by_degree(self) -> Dict[int, "FockVector"]:
        parts: Dict[int, Dict[Word, Scalar]] = {}
        for w, c in self._terms.items():
            parts.setdefault(len(w), {})[w] = c
        return {n: FockVector._raw(p) for n, p in parts.items()}

    def __add__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        return FockVector(itertools.chain(self._terms.items(), other._terms.items()))

    def __sub__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "FockVector":
        return FockVector._raw({w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar) -> "FockVector":
        if isinstance(scalar, FockVector):
            return NotImplemented
        if scalar == 0:
            return FockVector()
        return FockVector._raw({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "FockVector(0)"
        parts = [f"{c}*[{format_word(w)}]" for w, c in self._terms.items()]
        return "FockVector(" + " + ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        return [{"word": format_word(w), "coeff": str(c)} for w, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: list[dict], q: QParam, dim: int | None = None) -> "FockVector":
        terms = []
        for entry in data:
            word = parse_word(entry["word"], dim)
            terms.append((word, q.coerce(entry["coeff"])))
        return cls(terms)


def _word_key(word: Word):
    return (len(word), word)


def linear_combination(pairs: Iterable[tuple[Scalar, FockVector]]) -> FockVector:
    return FockVector((w, a * c) for a, v in pairs for w, c in v.items())


def inversions(perm: Sequence[int]) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def _word_ip_bruteforce(w1: Word, w2: Word, q: QParam) -> Scalar:
    if len(w1) != len(w2):
        return q.zero()
    if len(w1) > BRUTEFORCE_DEGREE_CAP:
        raise DegreeCapError(
            f"brute-force inner product limited to degree {BRUTEFORCE_DEGREE_CAP}"
        )
    total = q.zero()
    for sigma in itertools.permutations(range(len(w2))):
        if all(w1[k] == w2[sigma[k]] for k in range(len(w1))):
            total += q.pow(inversions(sigma))
    return total


def inner_product_bruteforce(v: FockVector, w: FockVector, q: QParam) -> Scalar:
    """Sum over the full symmetric group, weighting each permutation by q^inv."""
    total = q.zero()
    for w1, c1 in v.items():
        for w2, c2 in w.items():
            if len(w1) == len(w2):
                total += c1 * c2 * _word_ip_bruteforce(w1, w2, q)
    return total


def _word_ip_factory(q: QParam):
    # <f x xi, eta> = <xi, l*(f) eta>, peeling the first letter of the left word.
    @lru_cache(maxsize=None)
    def ip(w1: Word, w2: Word) -> Scalar:
        if not w1:
            return q.one()
        head, rest = w1[0], w1[1:]
        total = q.zero()
        for k, letter in enumerate(w2):
            if letter == head:
                sub = ip(rest, w2[:k] + w2[k + 1:])
                if sub:
                    total += q.pow(k) * sub
        return total

    return ip


def inner_product(v: FockVector, w: FockVector, q: QParam) -> Scalar:
    """q-inner product by recursive annihilation, memoized per call."""
    ip = _word_ip_factory(q)
    total = q.zero()
    w_parts = w.by_degree()
    for n, vpart in v.by_degree().items():
        wpart = w_parts.get(n)
        if wpart is None:
            continue
        for w1, c1 in vpart.items():
            for w2, c2 in wpart.items():
                if sorted(w1) == sorted(w2):
                    total += c1 * c2 * ip(w1, w2)
    return total


def norm_sq(v: FockVector, q: QParam) -> Scalar:
    return inner_product(v, v, q)


def project_pure_e(v: FockVector) -> FockVector:
    """Keep only terms whose word uses letter 0 exclusively (the vacuum included)."""
    return FockVector._raw({w: c for w, c in v.items() if all(x == 0 for x in w)})


class Contraction:
    """A linear map on the real basis space, stored as a d x d matrix.

    ``matrix[i][j]`` is the coefficient of ``e_i`` in ``T e_j``.
    """

    def __init__(self, matrix: Sequence[Sequence[Scalar]], tol: float = 1e-9):
        rows = tuple(tuple(r) for r in matrix)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DomainError("contraction must be a non-empty square matrix")
        smax = np.linalg.norm(np.array(rows, dtype=float), ord=2)
        if smax > 1 + tol:
            raise DomainError(f"not a contraction: largest singular value {smax:.6g}")
        self.matrix = rows
        self.dim = d

    @classmethod
    def identity(cls, dim: int, q: QParam | None = None) -> "Contraction":
        one, zero = (q.one(), q.zero()) if q else (Fraction(1), Fraction(0))
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)])

    @classmethod
    def projection_e(cls, dim: int, q: QParam | None = None) -> "Contraction":
        """Orthogonal projection onto the line spanned by letter 0."""
        one, zero = (q.one(), q.zero()) if q else (Fraction(1), Fraction(0))
        return cls([[one if i == j == 0 else zero for j in range(dim)] for i in range(dim)])

    def image(self, letter: int) -> list[tuple[int, Scalar]]:
        return [(i, self.matrix[i][letter]) for i in range(self.dim) if self.matrix[i][letter] != 0]


def first_quantization(T: Contraction, v: FockVector) -> FockVector:
    """Apply ``T`` factorwise to every tensor; the vacuum is fixed."""
    out: Dict[Word, Scalar] = {}
    for word, c in v.items():
        partial = [((), c)]
        for letter in word:
            if letter >= T.dim:
                raise DomainError(f"letter {letter} outside the contraction's dimension")
            img = T.image(letter)
            partial = [(w + (i,), a * t) for w, a in partial for i, t in img]
        for w, a in partial:
            out[w] = out.get(w, 0) + a
    return FockVector(out)


def gram_matrix(words: Sequence[Word], q: QParam) -> list[list[Scalar]]:
    vecs = [FockVector.word(w, q.one()) for w in words]
    return [[inner_product(a, b, q) for b in vecs] for a in vecs]


def ldlt_pivots(matrix: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Diagonal of the LDL^T factorization of a symmetric matrix.

    Exact when the entries are Fractions.  A zero pivot is allowed only if
    the rest of its column is zero too (semidefinite case); anything else
    means the matrix is indefinite and raises.
    """
    n = len(matrix)
    a = [list(row) for row in matrix]
    pivots = []
    for k in range(n):
        p = a[k][k]
        pivots.append(p)
        if p == 0:
            if any(a[i][k] != 0 for i in range(k + 1, n)):
                raise DomainError("zero pivot with nonzero column: matrix is indefinite")
            continue
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f == 0:
                continue
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return pivots


def random_vector(rng, dim: int, max_degree: int, q: QParam, n_terms: int = 4) -> FockVector:
    """Seeded sample with small rational coefficients, for property checks."""
    terms = []
    for _ in range(n_terms):
        n = rng.randint(0, max_degree)
        word = tuple(rng.randrange(dim) for _ in range(n))
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        terms.append((word, q.coerce(c) if q.exact else float(c)))
    return FockVector(terms)
