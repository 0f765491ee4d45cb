"""Creation/annihilation operators and the Wick expansion of W(xi).

Operators are never materialized as matrices; they act on
:class:`~qfock.fock.FockVector` values directly.  A ladder monomial is a
tuple of ``(kind, letter)`` factors written left to right and applied right
to left, ``kind`` being ``"c"`` (create) or ``"a"`` (annihilate).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .fock import (
    DEFAULT_DEGREE_CAP,
    Contraction,
    FockVector,
    Word,
    first_quantization,
    format_word,
    inversions,
)
from .scalar import DegreeCapError, DomainError, QParam, Scalar

CREATE = "c"
ANNIHILATE = "a"
WICK_DEGREE_CAP = 20

Factor = Tuple[str, int]


def create(letter: int, v: FockVector, cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    """Left creation: prepend ``letter`` to every word."""
    if v and v.degree + 1 > cap:
        raise DegreeCapError(f"creation would exceed degree cap {cap}")
    return FockVector._raw({(letter,) + w: c for w, c in v.items()})


def annihilate(letter: int, v: FockVector, q: QParam) -> FockVector:
    """Left annihilation: remove each matching position k with weight q^k (0-based)."""
    out: Dict[Word, Scalar] = {}
    for w, c in v.items():
        for k, x in enumerate(w):
            if x == letter:
                key = w[:k] + w[k + 1:]
                out[key] = out.get(key, 0) + c * q.pow(k)
    return FockVector(out)


def apply_monomial(factors: Sequence[Factor], v: FockVector, q: QParam,
                   cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    for kind, letter in reversed(factors):
        if not v:
            break
        v = create(letter, v, cap) if kind == CREATE else annihilate(letter, v, q)
    return v


@dataclass(frozen=True)
class ShuffleRep:
    """A minimal-length coset representative, as a 1-based permutation."""

    perm: Tuple[int, ...]
    inversions: int


def shuffle_representatives(n: int, i: int) -> List[ShuffleRep]:
    """All (n-i, i)-shuffles of ``1..n``.

    A shuffle lists the creation positions in increasing order followed by
    the annihilation positions in increasing order.  Representatives come out
    in ``itertools.combinations`` order over the annihilation positions.
    """
    if not 0 <= i <= n:
        raise DomainError(f"shuffle_representatives needs 0 <= i <= n, got n={n}, i={i}")
    if n > DEFAULT_DEGREE_CAP:
        raise DegreeCapError(f"n={n} exceeds degree cap {DEFAULT_DEGREE_CAP}")
    reps = []
    positions = range(1, n + 1)
    for ann in itertools.combinations(positions, i):
        ann_set = set(ann)
        perm = tuple(p for p in positions if p not in ann_set) + ann
        reps.append(ShuffleRep(perm, inversions(perm)))
    return reps


@dataclass(frozen=True)
class LadderMonomial:
    factors: Tuple[Factor, ...]
    weight: Scalar
    inversions: int = 0

    @property
    def n_annihilators(self) -> int:
        return sum(1 for kind, _ in self.factors if kind == ANNIHILATE)

    def render(self) -> str:
        body = " ".join(f"{kind}{letter}" for kind, letter in self.factors) or "1"
        return f"q^{self.inversions} · {body}"


@dataclass(frozen=True)
class WickExpansion:
    word: Word
    monomials: Tuple[LadderMonomial, ...]

    def collected(self) -> Dict[Tuple[Factor, ...], Scalar]:
        """Merge monomials with identical factor sequences."""
        out: Dict[Tuple[Factor, ...], Scalar] = {}
        for m in self.monomials:
            out[m.factors] = out.get(m.factors, 0) + m.weight
        return {k: c for k, c in out.items() if c != 0}

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "monomials": [
                {
                    "factors": [f"{k}{x}" for k, x in m.factors],
                    "inversions": m.inversions,
                    "weight": str(m.weight),
                }
                for m in self.monomials
            ],
        }


def wick_expand(word: Sequence[int], q: QParam, cap: int = WICK_DEGREE_CAP) -> WickExpansion:
    """Normal-ordered expansion of W(word), one monomial per shuffle (2^n of them)."""
    word = tuple(word)
    n = len(word)
    if n > cap:
        raise DegreeCapError(f"Wick expansion of degree {n} exceeds cap {cap}")
    monomials = []
    for i in range(n + 1):
        for rep in shuffle_representatives(n, i):
            factors = tuple(
                (CREATE if k < n - i else ANNIHILATE, word[p - 1])
                for k, p in enumerate(rep.perm)
            )
            monomials.append(LadderMonomial(factors, q.pow(rep.inversions), rep.inversions))
    return WickExpansion(word, tuple(monomials))


def wick_collected(word: Sequence[int], q: QParam) -> Dict[Tuple[Factor, ...], Scalar]:
    """Same operator as :func:`wick_expand`, with equal monomials already merged.

    Letters are dealt left to right into the creation or annihilation block;
    a letter sent to the creation block picks up one factor of q for every
    annihilated letter to its left.  For ``e^{xN}`` this leaves N+1 monomials
    weighted by Gaussian binomials instead of 2^N.
    """
    states: Dict[Tuple[Word, Word], Scalar] = {((), ()): q.one()}
    for letter in word:
        nxt: Dict[Tuple[Word, Word], Scalar] = {}
        for (cre, ann), c in states.items():
            k1 = (cre + (letter,), ann)
            nxt[k1] = nxt.get(k1, 0) + c * q.pow(len(ann))
            k2 = (cre, ann + (letter,))
            nxt[k2] = nxt.get(k2, 0) + c
        states = nxt
    out = {}
    for (cre, ann), c in states.items():
        if c != 0:
            out[tuple((CREATE, x) for x in cre) + tuple((ANNIHILATE, x) for x in ann)] = c
    return out


def _apply_collected(collected, v: FockVector, q: QParam, cap: int) -> FockVector:
    # share the annihilation suffix between monomials
    by_ann: Dict[Tuple[Factor, ...], list] = {}
    for factors, c in collected.items():
        split = next((k for k, (kind, _) in enumerate(factors) if kind == ANNIHILATE),
                     len(factors))
        by_ann.setdefault(factors[split:], []).append((factors[:split], c))
    out: Dict[Word, Scalar] = {}
    for ann, group in by_ann.items():
        base = apply_monomial(ann, v, q, cap)
        if not base:
            continue
        for cre, c in group:
            prefix = tuple(x for _, x in cre)
            if base.degree + len(prefix) > cap:
                raise DegreeCapError(f"Wick application exceeds degree cap {cap}")
            for w, a in base.items():
                key = prefix + w
                out[key] = out.get(key, 0) + c * a
    return FockVector(out)


def apply_wick(expansion: WickExpansion, v: FockVector, q: QParam,
               cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    return _apply_collected(expansion.collected(), v, q, cap)


def apply_W(word: Sequence[int], v: FockVector, q: QParam,
            cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    """``W(word) v`` through the merged normal-ordered expansion."""
    return _apply_collected(wick_collected(word, q), v, q, cap)


def apply_W_vector(xi: FockVector, v: FockVector, q: QParam,
                   cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    """``W(xi) v`` for a finite combination ``xi`` of words."""
    out: Dict[Word, Scalar] = {}
    for word, c in xi.items():
        for w, a in apply_W(word, v, q, cap).items():
            out[w] = out.get(w, 0) + c * a
    return FockVector(out)


def apply_W_recursive(word: Sequence[int], v: FockVector, q: QParam,
                      cap: int = DEFAULT_DEGREE_CAP) -> FockVector:
    """Independent evaluation of ``W(word) v``.

    Uses ``W(f x eta) = W(f) W(eta) - W(l*(f) eta)`` with ``W(f) = l(f) + l*(f)``
    and never touches shuffles or the normal-ordered form.
    """
    memo: Dict[Word, FockVector] = {}

    def w_of(eta: Word) -> FockVector:
        if eta in memo:
            return memo[eta]
        if not eta:
            res = v
        else:
            f, rest = eta[0], eta[1:]
            inner = w_of(rest)
            res = create(f, inner, cap) + annihilate(f, inner, q)
            for k, x in enumerate(rest):
                if x == f:
                    res = res - q.pow(k) * w_of(rest[:k] + rest[k + 1:])
        memo[eta] = res
        return res

    return w_of(tuple(word))


def q_commutation_defect(a: int, b: int, v: FockVector, q: QParam) -> FockVector:
    """``(l*(e_a) l(e_b) - q l(e_b) l*(e_a) - <e_a, e_b>) v``; always zero."""
    lhs = annihilate(a, create(b, v), q)
    rhs = q.value * create(b, annihilate(a, v, q))
    out = lhs - rhs
    if a == b:
        out = out - v
    return out


def second_quantization_vector(T: Contraction, xi: FockVector) -> FockVector:
    """Vector symbol of the second quantization applied to W(xi)."""
    return first_quantization(T, xi)


def trace(xi: FockVector) -> Scalar:
    """Trace of W(xi): the vacuum coefficient of xi."""
    return xi.coeff(())


def wick_monomial_counts(n: int) -> List[int]:
    return [math.comb(n, i) for i in range(n + 1)]
