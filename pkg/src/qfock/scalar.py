"""Scalar backends and q-combinatorics.

Two backends are supported.  The exact one stores every coefficient as a
:class:`fractions.Fraction` at a fixed rational ``q``; the float one uses
plain Python floats and exists for irrational ``q``.  Values from the two
backends never meet in one computation: every coefficient is produced from
``QParam`` helpers, which always return the backend's own type.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"


class QFockError(ValueError):
    """Base class for domain errors raised by this package."""


class DomainError(QFockError):
    pass


class DegreeCapError(QFockError):
    pass


@dataclass(frozen=True)
class QParam:
    """The deformation parameter, strictly inside (-1, 1)."""

    value: Scalar
    backend: str = EXACT

    def __post_init__(self):
        if self.backend == EXACT:
            if isinstance(self.value, float):
                raise DomainError("exact backend needs a rational q, got a float")
            object.__setattr__(self, "value", Fraction(self.value))
        elif self.backend == FLOAT:
            object.__setattr__(self, "value", float(self.value))
        else:
            raise DomainError(f"unknown backend {self.backend!r}")
        if not -1 < self.value < 1:
            raise DomainError(f"q must satisfy -1 < q < 1, got {self.value}")

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def coerce(self, x) -> Scalar:
        """Convert an int/Fraction/float/string to this backend's scalar type."""
        if self.exact:
            if isinstance(x, float):
                raise DomainError("float coefficient passed to the exact backend")
            return Fraction(x)
        return float(Fraction(x)) if isinstance(x, str) else float(x)

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    def pow(self, k: int) -> Scalar:
        if k < 0:
            raise DomainError("negative power of q")
        return self.value ** k if k else self.one()

    def __str__(self):
        return format_scalar(self.value)


def parse_q(text: str) -> QParam:
    """Parse ``"p/d"`` or an integer as exact, a decimal literal as float.

    >>> parse_q("1/2").value
    Fraction(1, 2)
    >>> parse_q("0.3").backend
    'float'
    """
    s = text.strip()
    try:
        if any(c in s for c in ".eE") and "/" not in s:
            return QParam(float(s), FLOAT)
        return QParam(Fraction(s), EXACT)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"cannot parse q from {text!r}") from exc


def format_scalar(x: Scalar) -> str:
    """Exact values print as ``p/d`` (or an integer), floats via ``repr``."""
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def q_int(n: int, q: QParam) -> Scalar:
    """``[n]_q = 1 + q + ... + q^(n-1)``, summed term by term."""
    if n < 0:
        raise DomainError("q_int needs n >= 0")
    total = q.zero()
    term = q.one()
    for _ in range(n):
        total += term
        term *= q.value
    return total


def q_factorial(n: int, q: QParam) -> Scalar:
    if n < 0:
        raise DomainError("q_factorial needs n >= 0")
    out = q.one()
    for k in range(1, n + 1):
        out *= q_int(k, q)
    return out


def q_binomial(n: int, k: int, q: QParam) -> Scalar:
    """Gaussian binomial ``[n choose k]_q``.

    Built as ``prod_{j=1..k} [n-k+j]_q / [j]_q``; every ``[j]_q`` is positive
    for ``|q| < 1`` so the divisions are safe.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    out = q.one()
    for j in range(1, k + 1):
        out = out * q_int(n - k + j, q) / q_int(j, q)
    return out
