"""Threshold group authentication: share issuance and the two verifiers.

The issuer (the AMF / group manager) holds a secret polynomial ``f`` with
``f(0) = s`` and publishes ``Q = s P``.  Each participant gets a public
evaluation point ``x_i`` and the private share ``f(x_i)``; it proves
membership by presenting ``f(x_i) P``.

Two verification paths exist:

    - :func:`verify_credential_gm` recomputes ``f(x_i) P`` with the polynomial.
    - :func:`verify_group_aggregate` needs only public data: Lagrange
      interpolation in the exponent over ``m >= t`` credentials must land on Q.

Canonical byte layouts (all integers big-endian):

    identifier       u16 length || UTF-8 bytes
    PublicCredential identifier || x (scalar_bytes) || point (point_bytes)
    KeyShare         PublicCredential || f(x) (scalar_bytes)
    GroupParams      u8 length || curve id || u16 t || Q || H(s) (32)
                     || u32 count || issued x values in ascending order
"""

from __future__ import annotations

import enum
import random
import warnings
from dataclasses import dataclass, field

from .errors import (
    DuplicateEvaluationPoint,
    DuplicateIdentity,
    EncodingError,
    EvaluationPointsExhausted,
    InvalidThreshold,
    ZeroEvaluationPoint,
)
from .groups import GroupDescriptor, Point, get_group
from .shamir import (
    DIGEST_SIZE,
    SecretPolynomial,
    evaluate_polynomial,
    hash_to_digest,
    hash_to_scalar,
    interpolate_in_exponent,
)


class ThresholdExposureWarning(UserWarning):
    """At least ``t`` base-station shares are out; together they reveal f."""


class AggregateVerdict(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    TOO_FEW = "too_few"


def _encode_id(ue_id: str) -> bytes:
    raw = ue_id.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise EncodingError("identifier longer than 65535 bytes")
    return len(raw).to_bytes(2, "big") + raw


def _decode_id(data: bytes, offset: int) -> tuple[str, int]:
    if len(data) < offset + 2:
        raise EncodingError("truncated identifier")
    n = int.from_bytes(data[offset:offset + 2], "big")
    end = offset + 2 + n
    if len(data) < end:
        raise EncodingError("truncated identifier")
    return data[offset + 2:end].decode("utf-8"), end


@dataclass(frozen=True)
class PublicCredential:
    ue_id: str
    public_x: int
    public_point: Point

    def to_bytes(self) -> bytes:
        g = GroupDescriptor(self.public_point.curve)
        return _encode_id(self.ue_id) + g.encode_scalar(self.public_x) + self.public_point.to_bytes()

    @classmethod
    def from_bytes(cls, group: GroupDescriptor, data: bytes) -> PublicCredential:
        cred, end = cls._parse(group, data, 0)
        if end != len(data):
            raise EncodingError("trailing bytes after credential")
        return cred

    @classmethod
    def _parse(cls, group: GroupDescriptor, data: bytes, offset: int):
        ue_id, off = _decode_id(data, offset)
        sw, pw = group.scalar_bytes, group.point_bytes
        if len(data) < off + sw + pw:
            raise EncodingError("truncated credential")
        x = group.decode_scalar(data[off:off + sw])
        pt = group.decode_point(data[off + sw:off + sw + pw])
        return cls(ue_id, x, pt), off + sw + pw


@dataclass(frozen=True)
class KeyShare:
    """A participant's full credential, including the private share."""

    ue_id: str
    public_x: int
    private_share: int = field(repr=False)
    public_point: Point

    @property
    def public(self) -> PublicCredential:
        return PublicCredential(self.ue_id, self.public_x, self.public_point)

    def to_bytes(self) -> bytes:
        g = GroupDescriptor(self.public_point.curve)
        return self.public.to_bytes() + g.encode_scalar(self.private_share)

    @classmethod
    def from_bytes(cls, group: GroupDescriptor, data: bytes) -> KeyShare:
        cred, off = PublicCredential._parse(group, data, 0)
        if len(data) != off + group.scalar_bytes:
            raise EncodingError("bad key share length")
        share = group.decode_scalar(data[off:])
        return cls(cred.ue_id, cred.public_x, share, cred.public_point)


@dataclass(frozen=True)
class GroupParams:
    """Everything the group manager publishes."""

    descriptor: GroupDescriptor
    commitment_Q: Point
    threshold_t: int
    secret_digest: bytes
    issued_points: frozenset[int] = frozenset()

    def to_bytes(self) -> bytes:
        g = self.descriptor
        cid = g.curve_id.encode("ascii")
        xs = sorted(self.issued_points)
        return b"".join([
            len(cid).to_bytes(1, "big"), cid,
            self.threshold_t.to_bytes(2, "big"),
            self.commitment_Q.to_bytes(),
            self.secret_digest,
            len(xs).to_bytes(4, "big"),
            *(g.encode_scalar(x) for x in xs),
        ])

    @classmethod
    def from_bytes(cls, data: bytes) -> GroupParams:
        try:
            n = data[0]
            cid = data[1:1 + n].decode("ascii")
            g = get_group(cid)
        except (IndexError, KeyError, UnicodeDecodeError) as exc:
            raise EncodingError(f"bad group id: {exc}") from None
        off = 1 + n
        t = int.from_bytes(data[off:off + 2], "big")
        off += 2
        Q = g.decode_point(data[off:off + g.point_bytes])
        off += g.point_bytes
        digest = data[off:off + DIGEST_SIZE]
        off += DIGEST_SIZE
        count = int.from_bytes(data[off:off + 4], "big")
        off += 4
        sw = g.scalar_bytes
        if len(data) != off + count * sw:
            raise EncodingError("issued point list length mismatch")
        xs = frozenset(g.decode_scalar(data[off + i * sw:off + (i + 1) * sw]) for i in range(count))
        return cls(g, Q, t, digest, xs)


class Issuer:
    """The group manager: holds f, publishes parameters, keeps the credential table.

    Issuance mutates state and must be serialized by the caller.
    """

    def __init__(self, polynomial: SecretPolynomial, rng: random.Random | None = None):
        self.polynomial = polynomial
        self._rng = rng
        self.registry: dict[str, PublicCredential] = {}
        self.uxnb_ids: set[str] = set()
        g = polynomial.group
        self._params = GroupParams(
            descriptor=g,
            commitment_Q=g.base_mul(polynomial.secret),
            threshold_t=polynomial.threshold,
            secret_digest=hash_to_digest(g.encode_scalar(polynomial.secret)),
        )
        self._issued: set[int] = set()
        self._free: list[int] | None = None

    def __repr__(self):
        return f"Issuer({self.group!r}, t={self.polynomial.threshold}, issued={len(self._issued)})"

    @property
    def group(self) -> GroupDescriptor:
        return self.polynomial.group

    @property
    def params(self) -> GroupParams:
        if len(self._params.issued_points) != len(self._issued):
            self._params = GroupParams(
                self._params.descriptor,
                self._params.commitment_Q,
                self._params.threshold_t,
                self._params.secret_digest,
                frozenset(self._issued),
            )
        return self._params

    def audit(self) -> bool:
        """Self-check: Q and H(s) still match the held polynomial."""
        g = self.group
        s = self.polynomial.secret
        return (g.base_mul(s) == self._params.commitment_Q
                and hash_to_digest(g.encode_scalar(s)) == self._params.secret_digest)

    def _fresh_x(self) -> int:
        q = self.group.q
        free = q - 1 - len(self._issued)
        if free <= 0:
            raise EvaluationPointsExhausted(f"all {q - 1} nonzero evaluation points are issued")
        if free > (q - 1) // 2:
            while True:
                x = self.group.random_scalar(self._rng)
                if x not in self._issued:
                    return x
        # Dense regime (toy groups only): draw from an explicit free list.
        if self._free is None:
            self._free = [x for x in range(1, q) if x not in self._issued]
        while True:
            rng = self._rng or random.SystemRandom()
            i = rng.randrange(len(self._free))
            x = self._free[i]
            self._free[i] = self._free[-1]
            self._free.pop()
            if x not in self._issued:
                return x

    def issue_share(self, ue_id: str, supi: str | None = None, uxnb: bool = False) -> KeyShare:
        """Register ``ue_id`` and hand back its key share.

        With ``supi`` set, ``x_i`` is derived from the subscription identifier by
        hash-to-scalar instead of being drawn at random.  ``uxnb`` marks shares
        handed to aerial base stations; once ``t`` of them exist a
        :class:`ThresholdExposureWarning` is emitted.
        """
        if ue_id in self.registry:
            raise DuplicateIdentity(f"{ue_id!r} is already registered")
        if supi is not None:
            x = hash_to_scalar(self.group, b"grouphandover/supi\x00" + supi.encode("utf-8"))
            if x in self._issued:
                raise DuplicateEvaluationPoint(f"SUPI-derived point for {ue_id!r} collides")
        else:
            x = self._fresh_x()
        y = evaluate_polynomial(self.polynomial, x)
        share = KeyShare(ue_id, x, y, self.group.base_mul(y))
        self._issued.add(x)
        self.registry[ue_id] = share.public
        if uxnb:
            self.uxnb_ids.add(ue_id)
            if len(self.uxnb_ids) >= self.polynomial.threshold:
                warnings.warn(
                    f"{len(self.uxnb_ids)} UxNB shares issued with threshold "
                    f"{self.polynomial.threshold}: a coalition can rebuild f",
                    ThresholdExposureWarning,
                    stacklevel=2,
                )
        return share

    def is_registered(self, cred: PublicCredential) -> bool:
        """Policy check: the credential is exactly the one in the table."""
        return self.registry.get(cred.ue_id) == cred


# the serialized polynomial stores t in two bytes
MAX_THRESHOLD = 0xFFFF


def initialize_group(descriptor: GroupDescriptor, t: int, rng_seed: int | None = None) -> Issuer:
    """Draw a random degree ``t - 1`` polynomial and return a fresh issuer.

    Both the secret and the leading coefficient are nonzero.  A fixed seed
    reproduces the issuer exactly, including later share issuance.
    """
    if not isinstance(t, int) or t < 1:
        raise InvalidThreshold(f"threshold must be an integer >= 1, got {t!r}")
    limit = min(descriptor.q - 1, MAX_THRESHOLD)
    if t > limit:
        raise InvalidThreshold(f"threshold {t} exceeds {limit} for {descriptor.curve_id}")
    rng = random.Random(rng_seed) if rng_seed is not None else None
    coeffs = [descriptor.random_scalar(rng) for _ in range(t)]
    return Issuer(SecretPolynomial(descriptor, tuple(coeffs)), rng)


def credential_matches(poly: SecretPolynomial, cred: PublicCredential) -> bool:
    """``f(x) P == point``; the shared check behind every polynomial-holder verifier."""
    if cred.public_point.curve is not poly.group.curve:
        return False
    if cred.public_x % poly.group.q == 0:
        return False
    return poly.group.base_mul(evaluate_polynomial(poly, cred.public_x)) == cred.public_point


def verify_credential_gm(issuer: Issuer, cred: PublicCredential) -> bool:
    """Group-manager path: recompute ``f(x_i) P`` directly.

    This is the mathematical check only; registry membership is
    :meth:`Issuer.is_registered`.
    """
    return credential_matches(issuer.polynomial, cred)


def verify_group_aggregate(params: GroupParams, creds: list[PublicCredential]) -> AggregateVerdict:
    """Public path: interpolate the credentials in the exponent and compare with Q.

    Raises :class:`DuplicateEvaluationPoint` (or :class:`ZeroEvaluationPoint`)
    for malformed batches rather than returning ``REJECT``.
    """
    if not creds:
        raise ValueError("need at least one credential")
    curve = params.descriptor.curve
    if any(c.public_point.curve is not curve for c in creds):
        return AggregateVerdict.REJECT
    total = interpolate_in_exponent([(c.public_x, c.public_point) for c in creds], params.descriptor)
    if len(creds) < params.threshold_t:
        return AggregateVerdict.TOO_FEW
    return AggregateVerdict.ACCEPT if total == params.commitment_Q else AggregateVerdict.REJECT


__all__ = [
    "AggregateVerdict",
    "DuplicateEvaluationPoint",
    "GroupParams",
    "Issuer",
    "KeyShare",
    "PublicCredential",
    "ThresholdExposureWarning",
    "ZeroEvaluationPoint",
    "credential_matches",
    "initialize_group",
    "verify_credential_gm",
    "verify_group_aggregate",
]
