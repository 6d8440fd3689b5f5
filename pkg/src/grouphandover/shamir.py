"""Polynomials over the scalar field and Lagrange interpolation at zero.

Scalars are plain ``int`` residues modulo the group order ``q``.  The
interpolation helpers reject ``x = 0`` outright: a share at zero *is* the
secret.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateEvaluationPoint,
    EncodingError,
    InvalidPolynomial,
    ZeroEvaluationPoint,
)
from .groups import GroupDescriptor, Point

DIGEST_SIZE = 32


def hash_to_digest(data: bytes) -> bytes:
    """SHA-256 digest of ``data``."""
    return hashlib.sha256(data).digest()


def hash_to_scalar(group: GroupDescriptor, data: bytes, nonzero: bool = True) -> int:
    """Map bytes to a scalar by counter-mode hashing and reduction mod q.

    Extra 16 bytes of digest output keep the modular bias below 2^-128.
    """
    width = group.scalar_bytes + 16
    out = b""
    counter = 0
    while len(out) < width:
        out += hashlib.sha256(counter.to_bytes(4, "big") + data).digest()
        counter += 1
    k = int.from_bytes(out[:width], "big")
    if nonzero:
        return 1 + k % (group.q - 1)
    return k % group.q


@dataclass(frozen=True)
class SecretPolynomial:
    """Degree ``t - 1`` polynomial over GF(q); ``coefficients[0]`` is the secret."""

    group: GroupDescriptor
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise InvalidPolynomial("polynomial needs at least one coefficient")
        q = self.group.q
        if any(not 0 <= c < q for c in self.coefficients):
            raise InvalidPolynomial("coefficients must be reduced modulo q")
        if len(self.coefficients) > 1 and self.coefficients[-1] == 0:
            raise InvalidPolynomial("leading coefficient must be nonzero")

    @property
    def threshold(self) -> int:
        return len(self.coefficients)

    @property
    def secret(self) -> int:
        return self.coefficients[0]

    def __call__(self, x: int) -> int:
        return evaluate_polynomial(self, x)

    def __repr__(self):
        # never print coefficients
        return f"SecretPolynomial(group={self.group.curve_id!r}, t={self.threshold})"

    def to_bytes(self) -> bytes:
        """``t`` (2 bytes) followed by fixed-width coefficients, constant term first."""
        return self.threshold.to_bytes(2, "big") + b"".join(
            self.group.encode_scalar(c) for c in self.coefficients
        )

    @classmethod
    def from_bytes(cls, group: GroupDescriptor, data: bytes) -> SecretPolynomial:
        if len(data) < 2:
            raise EncodingError("truncated polynomial")
        t = int.from_bytes(data[:2], "big")
        w = group.scalar_bytes
        if len(data) != 2 + t * w:
            raise EncodingError("polynomial length does not match its threshold")
        coeffs = tuple(group.decode_scalar(data[2 + i * w: 2 + (i + 1) * w]) for i in range(t))
        return cls(group, coeffs)


def evaluate_polynomial(poly: SecretPolynomial, x: int) -> int:
    """Horner evaluation of ``poly`` at ``x`` modulo q."""
    q = poly.group.q
    acc = 0
    for c in reversed(poly.coefficients):
        acc = (acc * x + c) % q
    return acc


def _check_points(xs: Sequence[int], q: int) -> list[int]:
    reduced = [x % q for x in xs]
    if any(x == 0 for x in reduced):
        raise ZeroEvaluationPoint("evaluation point x = 0 is not allowed")
    if len(set(reduced)) != len(reduced):
        raise DuplicateEvaluationPoint("evaluation points must be distinct")
    return reduced


def lagrange_coefficient(xs: Sequence[int], i: int, q: int) -> int:
    """Lagrange basis polynomial ``i`` over ``xs`` evaluated at zero, mod q.

    Equals prod_{r != i} (-x_r) / (x_i - x_r).
    """
    xs = _check_points(xs, q)
    if not 0 <= i < len(xs):
        raise IndexError(f"index {i} out of range for {len(xs)} points")
    num, den = 1, 1
    xi = xs[i]
    for r, xr in enumerate(xs):
        if r == i:
            continue
        num = num * (-xr) % q
        den = den * (xi - xr) % q
    return num * pow(den, -1, q) % q


def lagrange_coefficients(xs: Sequence[int], q: int) -> list[int]:
    return [lagrange_coefficient(xs, i, q) for i in range(len(xs))]


def interpolate_at_zero(shares: Iterable[tuple[int, int]], q: int) -> int:
    """Recover f(0) from scalar shares ``(x_i, f(x_i))``."""
    shares = list(shares)
    if not shares:
        raise ValueError("need at least one share")
    xs = [x for x, _ in shares]
    lams = lagrange_coefficients(xs, q)
    return sum(lam * y for lam, (_, y) in zip(lams, shares)) % q


def interpolate_in_exponent(shares: Iterable[tuple[int, Point]], group: GroupDescriptor) -> Point:
    """Sum of lambda_i * (f(x_i) P) over the shares, i.e. f(0) P for valid shares."""
    shares = list(shares)
    if not shares:
        raise ValueError("need at least one share")
    xs = [x for x, _ in shares]
    lams = lagrange_coefficients(xs, group.q)
    total = group.identity
    for lam, (_, pt) in zip(lams, shares):
        total = total + lam * pt
    return total
