"""Prime-order elliptic-curve groups used by the protocol modules.

Two instantiations ship with the package:

    - ``TOY``: y^2 = x^3 - 3x + 10 over GF(65521), prime order 65183.  Small
      enough for exhaustive and brute-force tests (including discrete logs).
    - ``P256``: the NIST P-256 curve, for realistic runs.

Both have cofactor 1, so every non-identity point generates the whole group.
Points are written additively: ``a + b``, ``-a``, ``k * a``.

Encodings are fixed width so digests and test vectors are reproducible:
scalars are big-endian over ``scalar_bytes`` octets, points use SEC1
compressed form (``0x02``/``0x03`` || x) and the identity is all zero bytes.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field

from .errors import EncodingError


def _sqrt_mod(n: int, p: int) -> int | None:
    """Square root modulo an odd prime (Tonelli-Shanks), or None."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True, eq=False)
class Curve:
    """Short Weierstrass curve y^2 = x^3 + a*x + b over GF(p) with prime order q."""

    name: str
    p: int
    a: int
    b: int
    q: int
    gx: int
    gy: int

    @property
    def field_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    def contains(self, x: int, y: int) -> bool:
        return (y * y - (x * x * x + self.a * x + self.b)) % self.p == 0

    # Jacobian arithmetic; (X, Y, Z) with Z == 0 meaning the identity.
    def _jdouble(self, P):
        X, Y, Z = P
        p = self.p
        if Z == 0 or Y == 0:
            return (1, 1, 0)
        YY = Y * Y % p
        S = 4 * X * YY % p
        ZZ = Z * Z % p
        M = (3 * X * X + self.a * ZZ * ZZ) % p
        X3 = (M * M - 2 * S) % p
        Y3 = (M * (S - X3) - 8 * YY * YY) % p
        Z3 = 2 * Y * Z % p
        return (X3, Y3, Z3)

    def _jadd(self, P, Q):
        if P[2] == 0:
            return Q
        if Q[2] == 0:
            return P
        p = self.p
        X1, Y1, Z1 = P
        X2, Y2, Z2 = Q
        Z1Z1 = Z1 * Z1 % p
        Z2Z2 = Z2 * Z2 % p
        U1 = X1 * Z2Z2 % p
        U2 = X2 * Z1Z1 % p
        S1 = Y1 * Z2 * Z2Z2 % p
        S2 = Y2 * Z1 * Z1Z1 % p
        if U1 == U2:
            if S1 != S2:
                return (1, 1, 0)
            return self._jdouble(P)
        H = (U2 - U1) % p
        R = (S2 - S1) % p
        HH = H * H % p
        HHH = H * HH % p
        V = U1 * HH % p
        X3 = (R * R - HHH - 2 * V) % p
        Y3 = (R * (V - X3) - S1 * HHH) % p
        Z3 = Z1 * Z2 * H % p
        return (X3, Y3, Z3)

    def _to_affine(self, P):
        X, Y, Z = P
        if Z == 0:
            return None, None
        zi = pow(Z, -1, self.p)
        zi2 = zi * zi % self.p
        return X * zi2 % self.p, Y * zi2 * zi % self.p


@dataclass(frozen=True)
class Point:
    """An element of the curve group; ``x is None`` encodes the identity."""

    curve: Curve = field(repr=False, compare=False)
    x: int | None
    y: int | None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates must be set, or neither")
        if self.x is not None and not self.curve.contains(self.x, self.y):
            raise ValueError(f"({self.x}, {self.y}) is not on {self.curve.name}")

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.curve is other.curve and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.curve.name, self.x, self.y))

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def _jac(self):
        return (1, 1, 0) if self.x is None else (self.x, self.y, 1)

    def __add__(self, other: Point) -> Point:
        if not isinstance(other, Point):
            return NotImplemented
        if other.curve is not self.curve:
            raise ValueError("points belong to different groups")
        c = self.curve
        return Point(c, *c._to_affine(c._jadd(self._jac(), other._jac())))

    def __neg__(self) -> Point:
        if self.x is None:
            return self
        return Point(self.curve, self.x, (-self.y) % self.curve.p)

    def __sub__(self, other: Point) -> Point:
        return self + (-other)

    def __rmul__(self, k: int) -> Point:
        if not isinstance(k, int):
            return NotImplemented
        c = self.curve
        k %= c.q
        acc = (1, 1, 0)
        base = self._jac()
        for bit in bin(k)[2:]:
            acc = c._jdouble(acc)
            if bit == "1":
                acc = c._jadd(acc, base)
        return Point(c, *c._to_affine(acc))

    __mul__ = __rmul__

    def to_bytes(self) -> bytes:
        n = self.curve.field_bytes
        if self.x is None:
            return bytes(n + 1)
        return bytes([2 | (self.y & 1)]) + self.x.to_bytes(n, "big")


@dataclass(frozen=True, eq=False)
class GroupDescriptor:
    """A concrete prime-order group: curve, generator and scalar field order."""

    curve: Curve

    @property
    def curve_id(self) -> str:
        return self.curve.name

    @property
    def q(self) -> int:
        return self.curve.q

    @property
    def generator(self) -> Point:
        return Point(self.curve, self.curve.gx, self.curve.gy)

    @property
    def identity(self) -> Point:
        return Point(self.curve, None, None)

    @property
    def scalar_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8

    @property
    def point_bytes(self) -> int:
        return self.curve.field_bytes + 1

    def base_mul(self, k: int) -> Point:
        return k * self.generator

    def random_scalar(self, rng=None, nonzero: bool = True) -> int:
        """Uniform scalar; ``rng`` is a ``random.Random`` for reproducible runs."""
        lo = 1 if nonzero else 0
        if rng is None:
            return lo + secrets.randbelow(self.q - lo)
        return rng.randrange(lo, self.q)

    def random_point(self, rng=None) -> Point:
        return self.base_mul(self.random_scalar(rng))

    def encode_scalar(self, k: int) -> bytes:
        if not 0 <= k < self.q:
            raise EncodingError(f"scalar {k} outside [0, q)")
        return k.to_bytes(self.scalar_bytes, "big")

    def decode_scalar(self, data: bytes) -> int:
        if len(data) != self.scalar_bytes:
            raise EncodingError(f"expected {self.scalar_bytes} scalar bytes, got {len(data)}")
        k = int.from_bytes(data, "big")
        if k >= self.q:
            raise EncodingError("scalar encoding out of range")
        return k

    def decode_point(self, data: bytes) -> Point:
        n = self.curve.field_bytes
        if len(data) != n + 1:
            raise EncodingError(f"expected {n + 1} point bytes, got {len(data)}")
        if not any(data):
            return self.identity
        if data[0] not in (2, 3):
            raise EncodingError(f"bad point prefix {data[0]:#x}")
        x = int.from_bytes(data[1:], "big")
        c = self.curve
        if x >= c.p:
            raise EncodingError("x coordinate out of range")
        y = _sqrt_mod(x * x * x + c.a * x + c.b, c.p)
        if y is None:
            raise EncodingError("x coordinate is not on the curve")
        if (y & 1) != (data[0] & 1):
            y = c.p - y
        return Point(c, x, y)

    def __repr__(self):
        return f"GroupDescriptor({self.curve_id!r}, q={self.q})"


TOY_CURVE = Curve(
    name="toy-65521",
    p=65521,
    a=65521 - 3,
    b=10,
    q=65183,
    gx=1,
    gy=724,
)

P256_CURVE = Curve(
    name="P-256",
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFC,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    q=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
    gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
    gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
)

TOY = GroupDescriptor(TOY_CURVE)
P256 = GroupDescriptor(P256_CURVE)

GROUPS = {"toy": TOY, "standard": P256}


def get_group(name: str) -> GroupDescriptor:
    """Look up a group by CLI name (``toy``/``standard``) or curve id."""
    if name in GROUPS:
        return GROUPS[name]
    for g in GROUPS.values():
        if g.curve_id == name:
            return g
    raise KeyError(f"unknown group {name!r}; choose from {sorted(GROUPS)}")
