"""UxNB admission and group handover.

A terrestrial base station that holds the group polynomial ``f`` admits an
arriving UxNB by checking its credential ``(x_i, f(x_i) P)`` and, on success,
ships ``f`` encrypted under a key derived from ``f(x_i)``; only the holder of
that private share can open it.  Once the UxNB has ``f`` it admits a whole
batch of UEs with one comparison, ``(sum f(x_i)) P == sum f(x_i) P``, and
falls back to per-UE checks only when the batch contains a bad credential.

Note that every admitted UxNB holds all of ``f`` and is therefore as capable
as the group manager; there is no containment if a UxNB is compromised.

Canonical layouts (big-endian):

    EncryptedPayload  key_hint (scalar_bytes) || nonce (12) || u32 length || ciphertext+tag
    ServiceRequest    sender_x (scalar_bytes) || EncryptedPayload

The key hint is bound into the AEAD associated data, so altering it makes
decryption fail.
"""

from __future__ import annotations

import enum
import os
import random
from dataclasses import dataclass, field

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from .auth import GroupParams, KeyShare, PublicCredential, credential_matches
from .errors import (
    DecryptionFailure,
    DuplicateEvaluationPoint,
    EncodingError,
    MissingSecretFunction,
    PolynomialMismatch,
)
from .groups import GroupDescriptor, Point
from .shamir import SecretPolynomial, evaluate_polynomial, hash_to_digest

NONCE_SIZE = 12
KEY_TAG = b"grouphandover/symmetric-key/v1"
_AAD_TAG = b"grouphandover/payload/v1"


class Role(enum.Enum):
    TERRESTRIAL = "terrestrial"
    UXNB = "uxnb"


def derive_symmetric_key(group: GroupDescriptor, share_value: int) -> bytes:
    """32-byte AEAD key: H(encode(f(x_i)) || tag)."""
    return hash_to_digest(group.encode_scalar(share_value % group.q) + KEY_TAG)


@dataclass(frozen=True)
class EncryptedPayload:
    ciphertext: bytes
    nonce: bytes
    key_hint: int

    def to_bytes(self, group: GroupDescriptor) -> bytes:
        return (group.encode_scalar(self.key_hint) + self.nonce
                + len(self.ciphertext).to_bytes(4, "big") + self.ciphertext)

    @classmethod
    def from_bytes(cls, group: GroupDescriptor, data: bytes) -> EncryptedPayload:
        payload, end = cls._parse(group, data, 0)
        if end != len(data):
            raise EncodingError("trailing bytes after payload")
        return payload

    @classmethod
    def _parse(cls, group: GroupDescriptor, data: bytes, off: int):
        sw = group.scalar_bytes
        head = off + sw + NONCE_SIZE + 4
        if len(data) < head:
            raise EncodingError("truncated payload header")
        hint = group.decode_scalar(data[off:off + sw])
        nonce = data[off + sw:off + sw + NONCE_SIZE]
        n = int.from_bytes(data[head - 4:head], "big")
        if len(data) < head + n:
            raise EncodingError("truncated ciphertext")
        return cls(data[head:head + n], nonce, hint), head + n


@dataclass(frozen=True)
class ServiceRequest:
    sender_x: int
    payload: EncryptedPayload

    def to_bytes(self, group: GroupDescriptor) -> bytes:
        return group.encode_scalar(self.sender_x) + self.payload.to_bytes(group)

    @classmethod
    def from_bytes(cls, group: GroupDescriptor, data: bytes) -> ServiceRequest:
        sw = group.scalar_bytes
        if len(data) < sw:
            raise EncodingError("truncated service request")
        x = group.decode_scalar(data[:sw])
        return cls(x, EncryptedPayload.from_bytes(group, data[sw:]))


def _aad(group: GroupDescriptor, key_hint: int) -> bytes:
    return _AAD_TAG + group.encode_scalar(key_hint)


def encrypt(group: GroupDescriptor, key: bytes, plaintext: bytes, key_hint: int,
            rng: random.Random | None = None) -> EncryptedPayload:
    """AES-256-GCM with a fresh nonce; pass ``rng`` for reproducible nonces."""
    nonce = rng.randbytes(NONCE_SIZE) if rng is not None else os.urandom(NONCE_SIZE)
    ct = AESGCM(key).encrypt(nonce, plaintext, _aad(group, key_hint))
    return EncryptedPayload(ct, nonce, key_hint)


def decrypt(group: GroupDescriptor, key: bytes, payload: EncryptedPayload) -> bytes:
    try:
        return AESGCM(key).decrypt(payload.nonce, payload.ciphertext, _aad(group, payload.key_hint))
    except (InvalidTag, ValueError) as exc:
        raise DecryptionFailure("authenticated decryption failed") from exc


@dataclass
class BaseStationState:
    """One simulated base station.

    ``served_ues`` maps UE id to its public x so that service requests, which
    carry only ``x``, can be matched against the served set.
    """

    bs_id: str
    role: Role
    params: GroupParams
    secret_fn: SecretPolynomial | None = field(default=None, repr=False)
    own_share: KeyShare | None = field(default=None, repr=False)
    served_ues: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.role is Role.TERRESTRIAL and self.secret_fn is None:
            raise MissingSecretFunction(f"terrestrial BS {self.bs_id} must hold f(x)")

    @property
    def group(self) -> GroupDescriptor:
        return self.params.descriptor

    def _require_secret(self) -> SecretPolynomial:
        if self.secret_fn is None:
            raise MissingSecretFunction(f"{self.bs_id} does not hold the secret function")
        return self.secret_fn


@dataclass
class HandoverBatch:
    """Running totals for the aggregate check.

    ``total_scalar`` can only be maintained by a holder of ``f``.
    """

    group: GroupDescriptor
    credentials: list[PublicCredential] = field(default_factory=list)
    total_point: Point | None = None
    total_scalar: int = 0

    def __post_init__(self):
        if self.total_point is None:
            self.total_point = self.group.identity

    def add(self, cred: PublicCredential, secret_fn: SecretPolynomial) -> None:
        self.credentials.append(cred)
        self.total_scalar = (self.total_scalar + evaluate_polynomial(secret_fn, cred.public_x)) % self.group.q
        self.total_point = self.total_point + cred.public_point


@dataclass(frozen=True)
class GroupResult:
    accepted: tuple[str, ...]
    rejected: tuple[str, ...]
    aggregate_hit: bool
    aggregate_comparisons: int = 1
    single_checks: int = 0


def authenticate_uxnb(terrestrial: BaseStationState, applicant: PublicCredential,
                      rng: random.Random | None = None) -> EncryptedPayload | None:
    """Check a UxNB credential; on success return ``f`` encrypted to its share.

    Returns None for an invalid UxNB.  A replayed valid credential *is*
    accepted here; the replaying party simply cannot open the payload.
    """
    f = terrestrial._require_secret()
    if not credential_matches(f, applicant):
        return None
    key = derive_symmetric_key(terrestrial.group, evaluate_polynomial(f, applicant.public_x))
    return encrypt(terrestrial.group, key, f.to_bytes(), applicant.public_x, rng)


def receive_secret_function(uxnb: BaseStationState, payload: EncryptedPayload) -> BaseStationState:
    """Open the payload with the UxNB's own share and install ``f``.

    The recovered polynomial must reproduce the UxNB's own credential.
    """
    share = uxnb.own_share
    if share is None:
        raise DecryptionFailure(f"{uxnb.bs_id} has no key share to decrypt with")
    if payload.key_hint != share.public_x:
        raise DecryptionFailure("payload is keyed to a different evaluation point")
    g = uxnb.group
    plain = decrypt(g, derive_symmetric_key(g, share.private_share), payload)
    try:
        poly = SecretPolynomial.from_bytes(g, plain)
    except (EncodingError, ValueError) as exc:
        raise PolynomialMismatch(f"payload is not a polynomial: {exc}") from exc
    if poly.group.q != g.q or not credential_matches(poly, share.public):
        raise PolynomialMismatch("recovered polynomial does not reproduce own credential")
    if g.base_mul(poly.secret) != uxnb.params.commitment_Q:
        raise PolynomialMismatch("recovered polynomial does not match the group commitment")
    uxnb.secret_fn = poly
    return uxnb


def verify_single_ue(uxnb: BaseStationState, cred: PublicCredential) -> bool:
    return credential_matches(uxnb._require_secret(), cred)


def group_handover(uxnb: BaseStationState, creds: list[PublicCredential]) -> GroupResult:
    """Admit a batch with one aggregate comparison, or fall back to per-UE checks.

    Accepted UEs are added to ``uxnb.served_ues``.
    """
    f = uxnb._require_secret()
    if not creds:
        raise ValueError("empty handover batch")
    xs = [c.public_x for c in creds]
    if len(set(xs)) != len(xs):
        raise DuplicateEvaluationPoint("handover batch repeats an evaluation point")
    g = uxnb.group
    batch = HandoverBatch(g)
    foreign = False
    for cred in reversed(creds):
        if cred.public_point.curve is not g.curve:
            foreign = True
            continue
        batch.add(cred, f)
    hit = not foreign and g.base_mul(batch.total_scalar) == batch.total_point
    if hit:
        accepted = [c.ue_id for c in creds]
        rejected: list[str] = []
        checks = 0
    else:
        accepted, rejected = [], []
        for cred in reversed(creds):
            (accepted if credential_matches(f, cred) else rejected).append(cred.ue_id)
        accepted.reverse()
        rejected.reverse()
        checks = len(creds)
    by_id = {c.ue_id: c.public_x for c in creds}
    for ue_id in accepted:
        uxnb.served_ues[ue_id] = by_id[ue_id]
    return GroupResult(tuple(accepted), tuple(rejected), hit, 1, checks)


def release_ues(terrestrial: BaseStationState, result: GroupResult) -> None:
    """Drop UEs that the UxNB accepted from the terrestrial BS's served set."""
    for ue_id in result.accepted:
        terrestrial.served_ues.pop(ue_id, None)


def ue_send_service_request(share: KeyShare, plaintext: bytes,
                            rng: random.Random | None = None) -> ServiceRequest:
    g = GroupDescriptor(share.public_point.curve)
    key = derive_symmetric_key(g, share.private_share)
    return ServiceRequest(share.public_x, encrypt(g, key, plaintext, share.public_x, rng))


def bs_handle_service_request(uxnb: BaseStationState, req: ServiceRequest) -> bytes | None:
    """Decrypt a UE request with the key recomputed from ``f(sender_x)``.

    Returns the plaintext, or None when the sender is not served here or the
    ciphertext does not authenticate.
    """
    f = uxnb._require_secret()
    if req.sender_x not in uxnb.served_ues.values():
        return None
    if req.payload.key_hint != req.sender_x:
        return None
    g = uxnb.group
    try:
        return decrypt(g, derive_symmetric_key(g, evaluate_polynomial(f, req.sender_x)), req.payload)
    except DecryptionFailure:
        return None
